#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "nlsl2/charfunc.hpp"

namespace nlsl2 {

enum class Stability { Stable, Unstable, Marginal };
std::string_view to_string(Stability s);

/// Tolerances shared by the cycle machinery.
struct CycleTolerances {
    double distinct = 1e-8;  ///< points closer than this are the same point
    double marginal = 1e-8;  ///< ||lambda| - 1| below this is Marginal
};

/// Stability of a cycle from its multiplier.
Stability classify_multiplier(double multiplier, double marginal_tol = CycleTolerances{}.marginal);

/// A d-cycle of f, starting from its largest element.
struct CycleReport {
    std::size_t period = 0;
    std::vector<double> points;  ///< points[k + 1] = f(points[k]); points[0] is the largest
    double multiplier = 0.0;     ///< (f^d)' at any cycle point
    Stability stability = Stability::Unstable;
};

enum class Regime { NoFixedPoint, TangentFixedPoint, StableOneCycle, StableTwoCycle, HigherCycles };
std::string_view to_string(Regime r);

struct DeltaClassification {
    double delta = 0.0;   ///< (r-1)^2 + 4ts
    double delta1 = 0.0;  ///< -3 - 2r + r^2 + 4ts
    double c = 0.0;       ///< normal-form parameter of y^2 + c
    Regime regime = Regime::NoFixedPoint;
    std::optional<double> tangent_point;  ///< (1-r)/2t when delta == 0
};

/// Open interval of admissible highest weights.
struct AllowedRegion {
    double low = 0.0;
    double high = 0.0;
    std::size_t cycle_period = 1;  ///< period of the cycle whose top element bounds `low`
    bool exhaustive = true;        ///< false when `low` comes from a capped cycle search
};

/// One step of a cobweb diagram.
struct Segment {
    std::size_t step = 0;  ///< iteration index k of x_k
    char kind = 'V';       ///< 'V' vertical to the graph, 'H' horizontal to the diagonal
    double x_start = 0.0, y_start = 0.0;
    double x_end = 0.0, y_end = 0.0;
};

/// Largest period find_cycles accepts for f: deg(f)^d <= 1024, i.e. 10 for quadratics.
std::size_t max_cycle_period(const CharFunc& f);

/// Points where (f^d)' vanishes, ascending (empty for linear f).
std::vector<double> critical_points(const CharFunc& f, std::size_t d);

/// All real fixed points, largest first.
std::vector<CycleReport> fixed_points(const CharFunc& f, const CycleTolerances& tol = {});

/// All real cycles of exact period d, each reported once, ordered by their largest element (descending).
std::vector<CycleReport> find_cycles(const CharFunc& f, std::size_t d, const CycleTolerances& tol = {});

/// Builds and validates the cycle through x (polishing x on f^d(x) = x first).
CycleReport make_cycle(const CharFunc& f, double x, std::size_t d, const CycleTolerances& tol = {});

/// Delta classification of a quadratic with t > 0.
DeltaClassification classify_delta(const CharFunc& f);

/// c such that y = t x + r/2 conjugates f to y^2 + c.
double normal_form(const CharFunc& f);

/// Highest-weight search region of a quadratic with t > 0; nullopt when delta <= 0.
std::optional<AllowedRegion> allowed_region(const CharFunc& f);

/// Cobweb staircase: 2*steps alternating V/H segments starting at (x0, x0).
std::vector<Segment> cobweb_trace(const CharFunc& f, double x0, std::size_t steps);

}  // namespace nlsl2
