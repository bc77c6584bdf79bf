#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace cfb {

/// Adaptive integration ran out of budget before meeting its tolerance.
/// Carries the best estimate obtained so far.
class NonConvergent : public std::runtime_error {
public:
    NonConvergent(const std::string& what, std::complex<double> partial, double err_estimate)
        : std::runtime_error(what), partial_(partial), err_(err_estimate) {}

    std::complex<double> partial() const noexcept { return partial_; }
    double error_estimate() const noexcept { return err_; }

private:
    std::complex<double> partial_;
    double err_;
};

/// An operator needing analytic derivatives was handed a function without them.
class MissingDerivatives : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A smoothness-dependent identity was asked of a non-smooth function.
class MissingSmoothness : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace cfb
