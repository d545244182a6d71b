#pragma once

namespace nlsl2 {

/// Gauss number [m]_r = (r^m - 1)/(r - 1); equals m at r = 1.
/// Non-integer m requires r > 0.
double gauss_number(double m, double r);

/// Symmetric q-number [x] = (q^x - q^-x)/(q - q^-1); equals x at q = 1. Requires q > 0.
double bracket_q(double x, double q);

}  // namespace nlsl2
