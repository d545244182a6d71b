#include "nlsl2/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlsl2/error.hpp"

namespace nlsl2::roots {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<double> trimmed(std::span<const double> coeffs) {
    std::vector<double> c(coeffs.begin(), coeffs.end());
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    return c;
}

double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
}

// Magnitude of the rounding error Horner can make at x.
double horner_noise(const std::vector<double>& c, double x) {
    double acc = 0.0;
    double ax = std::abs(x);
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * ax + std::abs(c[k]);
    return 8.0 * static_cast<double>(c.size()) * kEps * acc;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

void merge_sorted(std::vector<double>& xs, double tol, const ScalarFn* g) {
    std::sort(xs.begin(), xs.end());
    std::vector<double> out;
    for (double x : xs) {
        if (!out.empty() && std::abs(x - out.back()) <= tol * std::max(1.0, std::abs(x))) {
            if (g && std::abs((*g)(x)) < std::abs((*g)(out.back()))) out.back() = x;
            continue;
        }
        out.push_back(x);
    }
    xs = std::move(out);
}

}  // namespace

double cauchy_bound(std::span<const double> coeffs) {
    auto c = trimmed(coeffs);
    if (c.size() < 2) return 0.0;
    double lead = std::abs(c.back());
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) m = std::max(m, std::abs(c[k]) / lead);
    return 1.0 + m;
}

std::vector<double> poly_derivative(std::span<const double> coeffs) {
    std::vector<double> d;
    for (std::size_t k = 1; k < coeffs.size(); ++k) d.push_back(static_cast<double>(k) * coeffs[k]);
    if (d.empty()) d.push_back(0.0);
    return d;
}

double newton_polish(const ScalarFn& g, const ScalarFn& dg, double x, int max_steps) {
    double gx = g(x);
    for (int i = 0; i < max_steps && gx != 0.0; ++i) {
        double d = dg(x);
        if (d == 0.0 || !std::isfinite(d)) break;
        double xn = x - gx / d;
        double gn = g(xn);
        if (!(std::abs(gn) < std::abs(gx))) break;
        x = xn;
        gx = gn;
    }
    return x;
}

double refine_bracket(const ScalarFn& g, const ScalarFn& dg, double a, double b, double ga, double gb) {
    if (ga == 0.0) return a;
    if (gb == 0.0) return b;
    const double a0 = a, b0 = b;
    int sa = sign_of(ga);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        double gm = g(mid);
        if (gm == 0.0) return mid;
        if (std::isnan(gm)) break;
        if (sign_of(gm) == sa) {
            a = mid;
        } else {
            b = mid;
        }
        if (b - a <= 2.0 * kEps * std::max(std::abs(a), std::abs(b))) break;
    }
    double x = 0.5 * (a + b);
    double polished = newton_polish(g, dg, x);
    if (polished < a0 || polished > b0) return x;
    return polished;
}

std::vector<double> polynomial_real_roots(std::span<const double> coeffs, double lo, double hi) {
    auto c = trimmed(coeffs);
    if (c.empty()) throw DomainError("identically zero polynomial has no isolated roots");
    if (!(lo <= hi)) throw DomainError("empty root interval");
    std::size_t n = c.size() - 1;
    if (n == 0) return {};

    ScalarFn p = [&c](double x) { return horner(c, x); };
    auto dc = poly_derivative(c);
    ScalarFn dp = [&dc](double x) { return horner(dc, x); };

    std::vector<double> found;
    if (n == 1) {
        double x = -c[0] / c[1];
        if (x >= lo && x <= hi) found.push_back(x);
        return found;
    }
    if (n == 2) {
        double a = c[2], b = c[1], cc = c[0];
        double disc = b * b - 4.0 * a * cc;
        double noise = 16.0 * kEps * (b * b + std::abs(4.0 * a * cc));
        std::vector<double> cand;
        if (disc < -noise) {
            return {};
        } else if (disc <= noise) {
            cand.push_back(-b / (2.0 * a));
        } else {
            double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
            cand.push_back(q / a);
            if (q != 0.0) cand.push_back(cc / q);
        }
        for (double x : cand) {
            x = newton_polish(p, dp, x, 4);
            if (x >= lo && x <= hi) found.push_back(x);
        }
        merge_sorted(found, 1e-14, nullptr);
        return found;
    }

    auto crit = polynomial_real_roots(dc, lo, hi);
    std::vector<double> nodes;
    nodes.push_back(lo);
    for (double x : crit)
        if (x > lo && x < hi) nodes.push_back(x);
    nodes.push_back(hi);

    std::vector<double> vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = p(nodes[i]);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (std::abs(vals[i]) <= horner_noise(c, nodes[i])) found.push_back(nodes[i]);
        if (i + 1 < nodes.size() && sign_of(vals[i]) * sign_of(vals[i + 1]) < 0)
            found.push_back(refine_bracket(p, dp, nodes[i], nodes[i + 1], vals[i], vals[i + 1]));
    }
    merge_sorted(found, 1e-10, &p);
    return found;
}

std::vector<double> polynomial_real_roots(std::span<const double> coeffs) {
    double b = cauchy_bound(coeffs);
    return polynomial_real_roots(coeffs, -b, b);
}

namespace {

// Minimum of sgn * g on [a, c] by golden-section search.
double golden_min(const ScalarFn& g, double sgn, double a, double c) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = c - invphi * (c - a);
    double x2 = a + invphi * (c - a);
    double f1 = sgn * g(x1), f2 = sgn * g(x2);
    for (int i = 0; i < 120 && (c - a) > 4.0 * kEps * std::max(1.0, std::abs(a)); ++i) {
        if (f1 < f2) {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - invphi * (c - a);
            f1 = sgn * g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (c - a);
            f2 = sgn * g(x2);
        }
        if (f1 < 0.0 || f2 < 0.0) break;
    }
    return f1 < f2 ? x1 : x2;
}

}  // namespace

std::vector<double> scan_roots(const ScalarFn& g, const ScalarFn& dg, std::span<const double> breakpoints,
                               double lo, double hi, const ScanOptions& opts) {
    if (!(lo < hi)) throw DomainError("scan_roots: empty interval");
    std::vector<double> nodes;
    const int n = std::max(1, opts.uniform_intervals);
    for (int i = 0; i <= n; ++i) nodes.push_back(lo + (hi - lo) * static_cast<double>(i) / n);
    nodes.back() = hi;

    std::vector<double> bps;
    bps.push_back(lo);
    for (double b : breakpoints)
        if (b > lo && b < hi) bps.push_back(b);
    bps.push_back(hi);
    std::sort(bps.begin(), bps.end());
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        nodes.push_back(bps[i]);
        for (int k = 1; k <= opts.per_piece; ++k)
            nodes.push_back(bps[i] + (bps[i + 1] - bps[i]) * static_cast<double>(k) / (opts.per_piece + 1));
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    std::vector<double> vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = g(nodes[i]);

    std::vector<double> found;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (std::isnan(vals[i])) continue;
        if (vals[i] == 0.0) {
            found.push_back(nodes[i]);
            continue;
        }
        if (i + 1 < nodes.size() && !std::isnan(vals[i + 1]) && sign_of(vals[i]) * sign_of(vals[i + 1]) < 0)
            found.push_back(refine_bracket(g, dg, nodes[i], nodes[i + 1], vals[i], vals[i + 1]));

        // Local extremum of |g| without a sign change between the grid nodes.
        if (i == 0 || i + 1 >= nodes.size()) continue;
        double gl = vals[i - 1], gm = vals[i], gr = vals[i + 1];
        if (!std::isfinite(gl) || !std::isfinite(gr) || !std::isfinite(gm)) continue;
        int s = sign_of(gm);
        if (sign_of(gl) != s || sign_of(gr) != s) continue;
        if (!(std::abs(gm) < std::abs(gl) && std::abs(gm) <= std::abs(gr))) continue;
        double sg = static_cast<double>(s);
        double xm = golden_min(g, sg, nodes[i - 1], nodes[i + 1]);
        double gx = g(xm);
        if (sg * gx < 0.0) {
            found.push_back(refine_bracket(g, dg, nodes[i - 1], xm, gl, gx));
            found.push_back(refine_bracket(g, dg, xm, nodes[i + 1], gx, gr));
        } else if (std::abs(gx) <= opts.tangent_tol) {
            found.push_back(xm);
        }
    }
    merge_sorted(found, opts.merge_tol, &g);
    return found;
}

}  // namespace nlsl2::roots
