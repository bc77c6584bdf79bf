#pragma once

#include <string_view>

namespace cfb {

struct ChirpRates {
    double d_over_b;
    double a_over_b;
};

/// m = (a, b; c, d) in SL(2, R) with b != 0.
class SLMatrix {
public:
    /// Throws std::invalid_argument if |ad - bc - 1| > 1e-12 or b is zero.
    SLMatrix(double a, double b, double c, double d);

    /// (cos phi, sin phi; -sin phi, cos phi).
    static SLMatrix rotation(double phi);
    /// (0, 1; -1, 0): the chirp-free Hankel case.
    static SLMatrix hankel();
    /// Parses "a,b,c,d".
    static SLMatrix parse(std::string_view text);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }

    /// (d, -b; -c, a); exact, so inverse().inverse() == *this.
    SLMatrix inverse() const noexcept;
    ChirpRates chirp_rates() const noexcept { return {d_ / b_, a_ / b_}; }

    friend bool operator==(const SLMatrix&, const SLMatrix&) = default;

private:
    struct Unchecked {};
    SLMatrix(double a, double b, double c, double d, Unchecked) noexcept : a_(a), b_(b), c_(c), d_(d) {}

    double a_, b_, c_, d_;
};

inline SLMatrix inverse(const SLMatrix& m) noexcept { return m.inverse(); }
inline ChirpRates chirp_rates(const SLMatrix& m) noexcept { return m.chirp_rates(); }

}  // namespace cfb
