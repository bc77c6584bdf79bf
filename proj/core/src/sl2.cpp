#include "cfb/sl2.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cfb {

SLMatrix::SLMatrix(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
        throw std::invalid_argument("matrix entries must be finite");
    const double det = a * d - b * c;
    if (det != 1.0 && std::abs(det - 1.0) > 1e-12)
        throw std::invalid_argument("matrix determinant is " + std::to_string(det) + ", expected 1");
    if (b == 0.0) throw std::invalid_argument("matrix entry b must be nonzero");
}

SLMatrix SLMatrix::rotation(double phi) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    if (std::abs(s) < 1e-12) throw std::invalid_argument("rotation angle is a multiple of pi, so b = 0");
    return SLMatrix(c, s, -s, c);
}

SLMatrix SLMatrix::hankel() { return SLMatrix(0.0, 1.0, -1.0, 0.0, Unchecked{}); }

SLMatrix SLMatrix::inverse() const noexcept { return SLMatrix(d_, -b_, -c_, a_, Unchecked{}); }

SLMatrix SLMatrix::parse(std::string_view text) {
    double v[4];
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        const char* first = text.data() + pos;
        const char* last = text.data() + text.size();
        if (*first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, v[i]);
        if (ec != std::errc()) throw std::invalid_argument("cannot parse matrix entry " + std::to_string(i + 1));
        pos = static_cast<std::size_t>(ptr - text.data());
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (i < 3) {
            if (pos >= text.size() || text[pos] != ',') throw std::invalid_argument("matrix must be given as a,b,c,d");
            ++pos;
        }
    }
    if (pos != text.size()) throw std::invalid_argument("trailing characters after matrix");
    return SLMatrix(v[0], v[1], v[2], v[3]);
}

}  // namespace cfb
