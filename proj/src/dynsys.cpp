#include "nlsl2/dynsys.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlsl2/error.hpp"
#include "nlsl2/roots.hpp"

namespace nlsl2 {

std::string_view to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "stable";
        case Stability::Unstable: return "unstable";
        case Stability::Marginal: return "marginal";
    }
    return "unknown";
}

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::NoFixedPoint: return "no_fixed_point";
        case Regime::TangentFixedPoint: return "tangent_fixed_point";
        case Regime::StableOneCycle: return "stable_one_cycle";
        case Regime::StableTwoCycle: return "stable_two_cycle";
        case Regime::HigherCycles: return "higher_cycles";
    }
    return "unknown";
}

Stability classify_multiplier(double multiplier, double marginal_tol) {
    double a = std::abs(multiplier);
    if (std::abs(a - 1.0) < marginal_tol) return Stability::Marginal;
    return a < 1.0 ? Stability::Stable : Stability::Unstable;
}

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(a)); }

void require_quadratic(const CharFunc& f, const char* op) {
    if (!f.is_quadratic()) throw PreconditionError(std::string(op) + " requires a quadratic characteristic function");
}

void require_positive_t(const CharFunc& f, const char* op) {
    require_quadratic(f, op);
    if (!(f.t() > 0.0)) throw PreconditionError(std::string(op) + " requires t > 0");
}

// Real solutions y of f(y) = z.
std::vector<double> preimages(const CharFunc& f, double z) {
    std::vector<double> c(f.coeffs().begin(), f.coeffs().end());
    c[0] -= z;
    return roots::polynomial_real_roots(c);
}

// Critical points of F^d for F(y) = y^2 + c: the preimages of 0 up to depth d-1.
std::vector<double> normal_form_critical_points(double c, std::size_t d) {
    std::vector<double> all;
    if (d == 0) return all;
    std::vector<double> level{0.0};
    for (std::size_t k = 0; k < d; ++k) {
        all.insert(all.end(), level.begin(), level.end());
        if (k + 1 == d) break;
        std::vector<double> next;
        for (double z : level) {
            double w = z - c;
            if (w < 0.0) continue;
            double y = std::sqrt(w);
            next.push_back(y);
            if (y > 0.0) next.push_back(-y);
        }
        level = std::move(next);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

// Radius outside which |f(x)| > |x| and orbits escape.
double escape_radius(const CharFunc& f) {
    auto c = f.coeffs();
    double lead = std::abs(c.back());
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) sum += std::abs(c[k]);
    return std::max(1.0, (sum + 1.0) / lead);
}

std::size_t prime_period(const CharFunc& f, double x, std::size_t d, double tol) {
    double y = x;
    for (std::size_t k = 1; k <= d; ++k) {
        y = f.eval_unchecked(y);
        if (close(x, y, tol)) return k;
    }
    return 0;
}

// Roots of f^d(x) = x in original coordinates (degree >= 2 only).
std::vector<double> periodic_point_candidates(const CharFunc& f, std::size_t d) {
    if (f.is_quadratic()) {
        const double t = f.t(), r = f.r();
        const double c = normal_form(f);
        if (c > 0.25) return {};
        const double beta = 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * c));
        const double pad = 1e-9 * std::max(1.0, beta);
        CharFunc F = CharFunc::quadratic(1.0, 0.0, -c);
        auto bps = normal_form_critical_points(c, d);
        roots::ScalarFn g = [&](double y) { return iterate_value(F, y, d) - y; };
        roots::ScalarFn dg = [&](double y) { return iterate_derivative(F, y, d) - 1.0; };
        roots::ScanOptions opts;
        opts.uniform_intervals = std::max(1024, 16 << std::min<std::size_t>(d, 12));
        opts.merge_tol = 1e-10;
        auto ys = roots::scan_roots(g, dg, bps, -beta - pad, beta + pad, opts);
        std::vector<double> xs;
        xs.reserve(ys.size());
        for (double y : ys) xs.push_back((y - 0.5 * r) / t);
        return xs;
    }
    const double R = escape_radius(f) * (1.0 + 1e-9);
    auto bps = critical_points(f, d);
    roots::ScalarFn g = [&](double x) { return iterate_value(f, x, d) - x; };
    roots::ScalarFn dg = [&](double x) { return iterate_derivative(f, x, d) - 1.0; };
    roots::ScanOptions opts;
    opts.uniform_intervals = 4096;
    opts.merge_tol = 1e-10;
    return roots::scan_roots(g, dg, bps, -R, R, opts);
}

}  // namespace

std::size_t max_cycle_period(const CharFunc& f) {
    int n = f.degree();
    if (n <= 1) return static_cast<std::size_t>(-1);
    std::size_t d = 0;
    double size = 1.0;
    while (size * n <= 1024.0) {
        size *= n;
        ++d;
    }
    return d;
}

std::vector<double> critical_points(const CharFunc& f, std::size_t d) {
    if (f.degree() < 2 || d == 0) return {};
    if (f.is_quadratic()) {
        auto ys = normal_form_critical_points(normal_form(f), d);
        std::vector<double> xs;
        for (double y : ys) xs.push_back((y - 0.5 * f.r()) / f.t());
        std::sort(xs.begin(), xs.end());
        return xs;
    }
    auto dc = roots::poly_derivative(f.coeffs());
    std::vector<double> level = roots::polynomial_real_roots(dc);
    std::vector<double> all;
    for (std::size_t k = 0; k < d; ++k) {
        all.insert(all.end(), level.begin(), level.end());
        if (k + 1 == d) break;
        std::vector<double> next;
        for (double z : level) {
            auto pre = preimages(f, z);
            next.insert(next.end(), pre.begin(), pre.end());
        }
        level = std::move(next);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

CycleReport make_cycle(const CharFunc& f, double x, std::size_t d, const CycleTolerances& tol) {
    if (d == 0) throw PreconditionError("cycle period must be positive");
    roots::ScalarFn g = [&](double v) { return iterate_value(f, v, d) - v; };
    roots::ScalarFn dg = [&](double v) { return iterate_derivative(f, v, d) - 1.0; };
    x = roots::newton_polish(g, dg, x);

    std::vector<double> pts;
    pts.reserve(d);
    double y = x;
    for (std::size_t k = 0; k < d; ++k) {
        pts.push_back(y);
        y = f.eval_unchecked(y);
    }
    auto top = std::max_element(pts.begin(), pts.end());
    if (top != pts.begin()) {
        // Re-polish from the largest element so the stored orbit is generated forward from points[0].
        double start = roots::newton_polish(g, dg, *top);
        y = start;
        for (std::size_t k = 0; k < d; ++k) {
            pts[k] = y;
            y = f.eval_unchecked(y);
        }
    }
    if (!close(pts[0], y, tol.distinct))
        throw PreconditionError("point does not lie on a " + std::to_string(d) + "-cycle of f");

    CycleReport rep;
    rep.period = d;
    rep.points = std::move(pts);
    rep.multiplier = 1.0;
    for (double p : rep.points) rep.multiplier *= f.derivative_unchecked(p);
    rep.stability = classify_multiplier(rep.multiplier, tol.marginal);
    return rep;
}

std::vector<CycleReport> fixed_points(const CharFunc& f, const CycleTolerances& tol) {
    if (f.degree() < 1) throw PreconditionError("fixed_points requires deg f >= 1");
    std::vector<double> xs;
    if (f.is_linear()) {
        const double r = f.r(), s = f.s();
        if (r == 1.0) {
            if (s == 0.0) throw PreconditionError("f is the identity: every point is fixed");
            return {};
        }
        xs.push_back(s / (r - 1.0));
    } else {
        std::vector<double> c(f.coeffs().begin(), f.coeffs().end());
        c[1] -= 1.0;
        xs = roots::polynomial_real_roots(c);
    }
    std::vector<CycleReport> out;
    for (double x : xs) {
        CycleReport rep;
        rep.period = 1;
        rep.points = {x};
        rep.multiplier = f.derivative_unchecked(x);
        rep.stability = classify_multiplier(rep.multiplier, tol.marginal);
        out.push_back(std::move(rep));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.points[0] > b.points[0]; });
    return out;
}

std::vector<CycleReport> find_cycles(const CharFunc& f, std::size_t d, const CycleTolerances& tol) {
    if (d == 0) throw PreconditionError("cycle period must be positive");
    if (f.degree() < 1) throw PreconditionError("find_cycles requires deg f >= 1");
    if (d == 1) return fixed_points(f, tol);
    if (f.is_linear()) {
        const double r = f.r(), s = f.s();
        if (r == 1.0 && s == 0.0) throw PreconditionError("f is the identity: every point is fixed");
        if (r == -1.0 && d % 2 == 0)
            throw PreconditionError("f is an involution (r = -1): every point is periodic with period 2");
        return {};
    }
    if (d > max_cycle_period(f))
        throw PreconditionError("period " + std::to_string(d) + " exceeds the cap " +
                                std::to_string(max_cycle_period(f)) + " for a degree-" +
                                std::to_string(f.degree()) + " f");

    std::vector<CycleReport> out;
    for (double x : periodic_point_candidates(f, d)) {
        if (prime_period(f, x, d, tol.distinct) != d) continue;
        bool seen = false;
        for (const auto& cyc : out)
            for (double p : cyc.points)
                if (close(p, x, tol.distinct)) seen = true;
        if (seen) continue;
        CycleReport rep;
        try {
            rep = make_cycle(f, x, d, tol);
        } catch (const PreconditionError&) {
            continue;
        }
        bool distinct = true;
        for (std::size_t i = 0; i < d && distinct; ++i)
            for (std::size_t k = i + 1; k < d; ++k)
                if (close(rep.points[i], rep.points[k], tol.distinct)) distinct = false;
        if (distinct) out.push_back(std::move(rep));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.points[0] > b.points[0]; });
    return out;
}

DeltaClassification classify_delta(const CharFunc& f) {
    require_positive_t(f, "classify_delta");
    const double t = f.t(), r = f.r(), s = f.s();
    DeltaClassification out;
    out.delta = (r - 1.0) * (r - 1.0) + 4.0 * t * s;
    out.delta1 = -3.0 - 2.0 * r + r * r + 4.0 * t * s;
    out.c = (1.0 - out.delta) / 4.0;
    const double zero_tol = 1e-12 * std::max({1.0, (r - 1.0) * (r - 1.0), std::abs(4.0 * t * s)});
    if (std::abs(out.delta) <= zero_tol) {
        out.regime = Regime::TangentFixedPoint;
        out.tangent_point = (1.0 - r) / (2.0 * t);
    } else if (out.delta < 0.0) {
        out.regime = Regime::NoFixedPoint;
    } else if (out.delta <= 4.0) {
        out.regime = Regime::StableOneCycle;
    } else if (out.delta <= 6.0) {
        out.regime = Regime::StableTwoCycle;
    } else {
        out.regime = Regime::HigherCycles;
    }
    return out;
}

double normal_form(const CharFunc& f) {
    require_quadratic(f, "normal_form");
    const double t = f.t(), r = f.r(), s = f.s();
    return 0.5 * r - 0.25 * r * r - t * s;
}

std::optional<AllowedRegion> allowed_region(const CharFunc& f) {
    require_positive_t(f, "allowed_region");
    const auto cls = classify_delta(f);
    if (cls.regime == Regime::NoFixedPoint || cls.regime == Regime::TangentFixedPoint) return std::nullopt;
    const double t = f.t(), r = f.r();
    const double sq = std::sqrt(cls.delta);
    AllowedRegion reg;
    reg.high = (1.0 - r + sq) / (2.0 * t);
    if (cls.regime == Regime::StableOneCycle) {
        reg.low = (1.0 - r - sq) / (2.0 * t);
        reg.cycle_period = 1;
        return reg;
    }
    reg.low = (-1.0 - r + std::sqrt(cls.delta1)) / (2.0 * t);
    reg.cycle_period = 2;
    if (cls.regime == Regime::StableTwoCycle) return reg;

    // Past delta = 6: bound from the attracting cycle, if one exists below the period cap.
    reg.exhaustive = false;
    for (std::size_t d = 1; d <= max_cycle_period(f); ++d) {
        for (const auto& cyc : find_cycles(f, d)) {
            if (cyc.stability == Stability::Stable) {
                reg.low = cyc.points[0];
                reg.cycle_period = d;
                return reg;
            }
        }
    }
    return reg;
}

std::vector<Segment> cobweb_trace(const CharFunc& f, double x0, std::size_t steps) {
    auto xs = iterate(f, x0, steps);
    std::vector<Segment> out;
    out.reserve(2 * steps);
    for (std::size_t k = 0; k < steps; ++k) {
        const double x = xs[k], y = xs[k + 1];
        out.push_back({k, 'V', x, x, x, y});
        out.push_back({k, 'H', x, y, y, y});
    }
    return out;
}

}  // namespace nlsl2
