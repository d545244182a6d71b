#pragma once

#include <functional>
#include <span>
#include <vector>

namespace nlsl2::roots {

using ScalarFn = std::function<double(double)>;

/// Cauchy bound: every real root of the polynomial lies in [-B, B].
double cauchy_bound(std::span<const double> coeffs);

/// Ascending coefficients of p'.
std::vector<double> poly_derivative(std::span<const double> coeffs);

/**
 * All real roots of a polynomial in the closed interval [lo, hi], ascending.
 *
 * Roots of p are separated by the roots of p', so the derivative's roots
 * (found recursively) partition [lo, hi] into pieces where p is monotone;
 * each piece holds at most one root, found by bisection and a Newton polish.
 * A critical point where |p| vanishes to rounding is reported as a multiple
 * root. Meant for explicit polynomials of modest degree.
 */
std::vector<double> polynomial_real_roots(std::span<const double> coeffs, double lo, double hi);

/// Same, over the whole real line.
std::vector<double> polynomial_real_roots(std::span<const double> coeffs);

struct ScanOptions {
    int uniform_intervals = 1024;  ///< uniform subintervals over [lo, hi]
    int per_piece = 8;             ///< extra interior nodes between consecutive breakpoints
    double merge_tol = 1e-7;       ///< roots closer than this are merged
    double tangent_tol = 1e-12;    ///< |g| below this at a local extremum counts as a (double) root
};

/**
 * Real roots of a smooth function g on [lo, hi], ascending.
 *
 * Nodes are the union of a uniform grid and `breakpoints` (plus a few
 * interior nodes per breakpoint piece). Sign changes between nodes are
 * bisected then Newton-polished with `dg`; a node triple bracketing a local
 * extremum is refined by golden-section search, catching close root pairs
 * and tangencies the grid does not resolve. +-inf values count as signs;
 * NaN nodes are skipped.
 */
std::vector<double> scan_roots(const ScalarFn& g, const ScalarFn& dg, std::span<const double> breakpoints,
                               double lo, double hi, const ScanOptions& opts = {});

/// Bisection on a bracket with g(a), g(b) of opposite sign, followed by a
/// bracket-safeguarded Newton polish.
double refine_bracket(const ScalarFn& g, const ScalarFn& dg, double a, double b, double ga, double gb);

/// Newton polish starting at x; steps are accepted only while |g| decreases.
double newton_polish(const ScalarFn& g, const ScalarFn& dg, double x, int max_steps = 8);

}  // namespace nlsl2::roots
