#include "nlsl2/hwsolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nlsl2/error.hpp"
#include "nlsl2/qnumbers.hpp"
#include "nlsl2/roots.hpp"

namespace nlsl2 {

std::string_view to_string(Termination t) { return t == Termination::Cut ? "cut" : "cycle"; }

std::string_view to_string(StartKind k) {
    switch (k) {
        case StartKind::FiniteCut: return "finite_cut";
        case StartKind::FiniteCycle: return "finite_cycle";
        case StartKind::InfiniteDescending: return "infinite_descending";
        case StartKind::NoLadder: return "no_ladder";
    }
    return "unknown";
}

namespace {

// Candidates at or below -1/2 (plus rounding) are never emitted as cut solutions.
constexpr double kHalfMargin = 1e-10;

double scaled(double tol, double x) { return tol * std::max(1.0, std::abs(x)); }

// N^2 between the top weight a and the weight b one step past the current state.
double nsq_of(double a, double b) { return (a - b) * (a + b + 1.0); }

void fill_nsq(WeightLadder& lad, double past_last, const LadderTolerances& tol) {
    const double a = lad.alphas.front();
    lad.nsq.resize(lad.d);
    for (std::size_t m = 0; m + 1 < lad.d; ++m) lad.nsq[m] = nsq_of(a, lad.alphas[m + 1]);
    lad.nsq[lad.d - 1] = nsq_of(a, past_last);
    lad.unitary = true;
    for (std::size_t m = 0; m + 1 < lad.d; ++m)
        if (lad.nsq[m] < -scaled(tol.unitary, a * (a + 1.0))) lad.unitary = false;
}

}  // namespace

double solve_cut_linear_r1(double s, std::size_t d) {
    if (!(s > 0.0)) throw PreconditionError("solve_cut_linear_r1 requires s > 0");
    if (d == 0) throw PreconditionError("dimension must be positive");
    return (s * static_cast<double>(d) - 1.0) / 2.0;
}

double solve_cut_linear(double r, double s, std::size_t d) {
    if (d == 0) throw PreconditionError("dimension must be positive");
    if (r == 1.0) return solve_cut_linear_r1(s, d);
    if (!(r > 0.0)) {
        if (r == -1.0)
            throw PreconditionError(
                "r = -1 has no cut solution (f o f = id); use the marginal two-dimensional ladder instead");
        throw PreconditionError("r < 0 admits no highest-weight representation");
    }
    const double dd = static_cast<double>(d);
    return (s * gauss_number(dd, r) - 1.0) / (std::pow(r, dd) + 1.0);
}

Interval default_cut_interval(const CharFunc& f) {
    if (f.is_quadratic() && f.t() > 0.0) {
        if (auto reg = allowed_region(f)) return {reg->low, reg->high};
    }
    return {-0.5, 1e3};
}

constexpr double kReducibleTol = 1e-12;

std::vector<CutSolution> solve_cut_general(const CharFunc& f, std::size_t d, std::optional<Interval> interval,
                                           const LadderTolerances& tol) {
    if (d == 0) throw PreconditionError("dimension must be positive");
    if (f.degree() < 1) throw PreconditionError("solve_cut_general requires deg f >= 1");
    const Interval iv = interval.value_or(default_cut_interval(f));
    if (!(iv.low < iv.high) || !std::isfinite(iv.low) || !std::isfinite(iv.high))
        throw PreconditionError("solve_cut_general: empty or non-finite interval");

    roots::ScalarFn g = [&](double a) { return a + iterate_value(f, a, d) + 1.0; };
    roots::ScalarFn dg = [&](double a) { return 1.0 + iterate_derivative(f, a, d); };

    std::vector<double> bps;
    if (f.degree() >= 2 && d <= max_cycle_period(f) + 6) bps = critical_points(f, d);
    roots::ScanOptions opts;
    opts.uniform_intervals = static_cast<int>(std::max<std::size_t>(1024, 64 * d));
    opts.per_piece = 16;
    auto candidates = roots::scan_roots(g, dg, bps, iv.low, iv.high, opts);

    std::optional<AllowedRegion> region;
    if (f.is_quadratic() && f.t() > 0.0) region = allowed_region(f);

    std::vector<CutSolution> out;
    for (double a : candidates) {
        if (!(a > iv.low && a < iv.high)) continue;
        if (!(a > -0.5 + kHalfMargin)) continue;
        const double res = std::abs(g(a));
        if (!std::isfinite(res)) continue;
        if (res >= tol.cut_residual) {
            // Scan returned a bracket it could not drive down; only a problem if g changes sign there.
            const double h = 1e-9 * std::max(1.0, std::abs(a));
            if (std::signbit(g(a - h)) != std::signbit(g(a + h))) {
                char msg[256];
                std::snprintf(msg, sizeof msg,
                              "cut root in [%.17g, %.17g] cannot be validated: residual %.3g >= %.3g, "
                              "slope of f^%zu there %.3g (ill-conditioned in double precision)",
                              a - h, a + h, res, tol.cut_residual, d, dg(a) - 1.0);
                throw RootIsolationError(msg);
            }
            continue;
        }
        // The ladder already stops at a smaller dimension: reducible, not a d-dimensional solution.
        // Such roots satisfy the shorter cut to rounding; a looser test would misfire when f^k
        // contracts onto a fixed point and consecutive iterates agree to ~1e-9.
        bool shorter = false;
        const double exact = kReducibleTol * std::max(1.0, std::abs(a));
        for (std::size_t k = 1; k < d && !shorter; ++k)
            shorter = std::abs(a + iterate_value(f, a, k) + 1.0) < exact;
        if (shorter) continue;
        CutSolution sol;
        sol.alpha_j = a;
        sol.d = d;
        sol.residual = res;
        sol.unitary = ladder_from_cut(f, a, d, tol).unitary;
        if (region) sol.within_region = a > region->low && a < region->high;
        out.push_back(sol);
    }
    return out;
}

WeightLadder ladder_from_cut(const CharFunc& f, double alpha_j, std::size_t d, const LadderTolerances& tol) {
    if (d == 0) throw PreconditionError("dimension must be positive");
    if (!std::isfinite(alpha_j)) throw DomainError("highest weight must be finite");
    if (!(alpha_j > -0.5)) throw PreconditionError("cut highest weight must satisfy alpha_j > -1/2");
    auto xs = iterate(f, alpha_j, d);
    const double residual = std::abs(alpha_j + xs[d] + 1.0);
    if (!(residual < tol.cut_residual))
        throw PreconditionError("alpha_j = " + std::to_string(alpha_j) + " violates the cut condition for d = " +
                                std::to_string(d) + " (residual " + std::to_string(residual) + ")");
    WeightLadder lad{f, 0, {}, {}};
    lad.d = d;
    lad.alphas.assign(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(d));
    lad.termination = Termination::Cut;
    lad.residual = residual;
    fill_nsq(lad, xs[d], tol);
    return lad;
}

WeightLadder ladder_from_cycle(const CycleReport& cycle, const CharFunc& f, const LadderTolerances& tol) {
    const std::size_t d = cycle.points.size();
    if (d == 0 || cycle.period != d) throw PreconditionError("cycle period does not match its point count");
    for (std::size_t k = 0; k < d; ++k) {
        const double img = f(cycle.points[k]);
        const double next = cycle.points[(k + 1) % d];
        if (!(std::abs(img - next) <= scaled(tol.cycle, next)))
            throw PreconditionError("cycle point " + std::to_string(k) + " is not mapped onto its successor");
    }
    if (*std::max_element(cycle.points.begin(), cycle.points.end()) != cycle.points.front())
        throw PreconditionError("cycle must start from its largest element");
    WeightLadder lad{f, 0, {}, {}};
    lad.d = d;
    lad.alphas = cycle.points;
    lad.termination = Termination::Cycle;
    const double past_last = f(cycle.points.back());
    lad.residual = std::abs(past_last - cycle.points.front());
    fill_nsq(lad, past_last, tol);
    return lad;
}

WeightLadder marginal_ladder(double s, double alpha_j) {
    if (!std::isfinite(s) || !std::isfinite(alpha_j)) throw DomainError("marginal_ladder: non-finite argument");
    if (!(alpha_j > -0.5 * s))
        throw PreconditionError("marginal ladder needs alpha_j > f(alpha_j), i.e. alpha_j > -s/2");
    const CharFunc f = CharFunc::linear(-1.0, s);
    CycleReport cyc;
    cyc.period = 2;
    cyc.points = {alpha_j, f(alpha_j)};
    cyc.multiplier = 1.0;
    cyc.stability = Stability::Marginal;
    return ladder_from_cycle(cyc, f);
}

StartClassification classify_start(const CharFunc& f, double a0, std::size_t max_iter, const LadderTolerances& tol) {
    if (max_iter == 0) throw PreconditionError("max_iter must be positive");
    const Orbit o = orbit(f, a0, max_iter);
    const std::size_t n = o.values.size() - 1;
    const std::size_t usable = o.escaped_at ? n - 1 : n;

    StartClassification out;
    if (a0 > -0.5) {
        for (std::size_t k = 1; k <= usable; ++k) {
            if (std::abs(a0 + o.values[k] + 1.0) <= scaled(tol.cut_residual, a0)) {
                out.kind = StartKind::FiniteCut;
                out.d = k;
                return out;
            }
        }
    }
    for (std::size_t k = 1; k <= usable; ++k) {
        if (std::abs(o.values[k] - a0) <= scaled(tol.cycle, a0)) {
            out.kind = StartKind::FiniteCycle;
            out.d = k;
            return out;
        }
    }
    // The escaping value takes part in the descent test: escape towards -inf keeps the
    // ladder descending, escape towards +inf breaks it.
    bool descending = true;
    for (std::size_t k = 1; k <= n && descending; ++k)
        if (!(o.values[k] < o.values[k - 1])) descending = false;
    if (o.escaped_at)
        out.note = "orbit escaped at iterate " + std::to_string(*o.escaped_at) + " (value " +
                   std::to_string(o.values.back()) + ")";
    out.kind = descending ? StartKind::InfiniteDescending : StartKind::NoLadder;
    return out;
}

}  // namespace nlsl2
