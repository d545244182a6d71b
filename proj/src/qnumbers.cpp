#include "nlsl2/qnumbers.hpp"

#include <cmath>

#include "nlsl2/error.hpp"

namespace nlsl2 {

double gauss_number(double m, double r) {
    if (!std::isfinite(m) || !std::isfinite(r)) throw DomainError("gauss_number: non-finite argument");
    if (r == 1.0) return m;
    // expm1 keeps precision near r = 1; elsewhere integer m goes through pow, exact for small integers
    if (r > 0.0 && (std::abs(r - 1.0) < 0.5 || m != std::floor(m))) return std::expm1(m * std::log(r)) / (r - 1.0);
    if (m != std::floor(m)) throw DomainError("gauss_number: non-integer exponent needs r > 0");
    return (std::pow(r, m) - 1.0) / (r - 1.0);
}

double bracket_q(double x, double q) {
    if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("bracket_q requires q > 0");
    if (q == 1.0) return x;
    const double lq = std::log(q);
    return std::sinh(x * lq) / std::sinh(lq);
}

}  // namespace nlsl2
