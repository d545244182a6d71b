#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlsl2/charfunc.hpp"
#include "nlsl2/dynsys.hpp"

namespace nlsl2 {

enum class Termination { Cut, Cycle };
std::string_view to_string(Termination t);

struct LadderTolerances {
    double cut_residual = 1e-8;  ///< |a_j + f^d(a_j) + 1| accepted as a cut
    double cycle = 1e-8;         ///< |f(p_k) - p_(k+1)| accepted on a cycle
    double unitary = 1e-10;      ///< N_m^2 >= -unitary counts as non-negative
};

/**
 * The J0 eigenvalue ladder of a d-dimensional highest-weight representation.
 *
 * alphas[m] = f^m(alpha_j) for m = 0..d-1 and
 * nsq[m]    = alpha_j(alpha_j+1) - a(a+1) with a = f^(m+1)(alpha_j),
 * so nsq[d-1] vanishes exactly when the ladder terminates.
 */
struct WeightLadder {
    CharFunc f;
    std::size_t d = 0;
    std::vector<double> alphas;
    std::vector<double> nsq;
    Termination termination = Termination::Cut;
    bool unitary = false;
    /// |a_j + f^d(a_j) + 1| for Cut, |f^d(a_j) - a_j| for Cycle.
    double residual = 0.0;

    double alpha_j() const { return alphas.front(); }
    double lowest_weight() const { return alphas.back(); }
};

struct CutSolution {
    double alpha_j = 0.0;
    std::size_t d = 0;
    double residual = 0.0;
    bool unitary = false;
    std::optional<bool> within_region;  ///< unset when f has no allowed region
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// r = 1 closed form: alpha_j = (s d - 1)/2. Requires s > 0.
double solve_cut_linear_r1(double s, std::size_t d);

/// Closed form (s [d]_r - 1)/(r^d + 1) for r > 0; r = 1 delegates to solve_cut_linear_r1.
/// r <= 0 is rejected; the marginal r = -1 representation comes from marginal_ladder().
double solve_cut_linear(double r, double s, std::size_t d);

/// allowed_region(f) when f is a quadratic with t > 0 and the region exists, else (-1/2, 1e3).
Interval default_cut_interval(const CharFunc& f);

/// All roots of a + f^d(a) + 1 = 0 strictly inside the interval with a > -1/2, ascending.
std::vector<CutSolution> solve_cut_general(const CharFunc& f, std::size_t d,
                                           std::optional<Interval> interval = std::nullopt,
                                           const LadderTolerances& tol = {});

WeightLadder ladder_from_cut(const CharFunc& f, double alpha_j, std::size_t d, const LadderTolerances& tol = {});

WeightLadder ladder_from_cycle(const CycleReport& cycle, const CharFunc& f, const LadderTolerances& tol = {});

/// Two-dimensional ladder of f(x) = -x - s (f o f = id) with highest weight alpha_j > -s/2.
WeightLadder marginal_ladder(double s, double alpha_j);

enum class StartKind { FiniteCut, FiniteCycle, InfiniteDescending, NoLadder };
std::string_view to_string(StartKind k);

struct StartClassification {
    StartKind kind = StartKind::NoLadder;
    std::size_t d = 0;  ///< dimension for FiniteCut / FiniteCycle
    std::string note;   ///< divergence diagnostics, if any
};

/// Classifies the ladder generated from a0 by scanning f^k(a0), k <= max_iter.
StartClassification classify_start(const CharFunc& f, double a0, std::size_t max_iter,
                                   const LadderTolerances& tol = {});

}  // namespace nlsl2
