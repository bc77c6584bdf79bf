#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cfb/radial.hpp"

namespace cfb {

enum class Shape { gaussian, chirped_gaussian, bump, box, damped_cosine };

/// A named member of the built-in test-function corpus.
///
///   gaussian:beta=B              e^{-B y^2}
///   chirped_gaussian:beta=B,chirp=C   e^{(i/2) C y^2} e^{-B y^2}
///   bump:R=R                     e^{-1/(1-(y/R)^2)} on [0, R), 0 beyond
///   box:R=R                      1 on [0, R], 0 beyond
///   damped_cosine:beta=B,omega=W e^{-B y^2} cos(W y)
struct FunctionSpec {
    Shape shape;
    std::map<std::string, double> params;

    double param(const std::string& key) const { return params.at(key); }
    std::string to_string() const;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses "name:key=value,key=value". Missing parameters take defaults
/// (beta=1, chirp=0, R=1, omega=1); unknown names or keys are rejected.
FunctionSpec parse_function(std::string_view text);

/// Throws ValidationError for out-of-range parameters.
void validate(const FunctionSpec& spec);

/// Builds the callable, with analytic derivatives for the smooth shapes.
RadialFunction make_function(const FunctionSpec& spec);

RadialFunction gaussian(double beta);
RadialFunction chirped_gaussian(double beta, double chirp);
RadialFunction bump(double R);
RadialFunction box(double R);
RadialFunction damped_cosine(double beta, double omega);
/// f = c everywhere; no decay radius.
RadialFunction constant(std::complex<double> c);
/// f = 0 everywhere.
RadialFunction zero_function();

}  // namespace cfb
