#pragma once

#include <Eigen/Dense>
#include <string_view>

#include "nlsl2/charfunc.hpp"
#include "nlsl2/hwsolver.hpp"

namespace nlsl2 {

using Matrix = Eigen::MatrixXd;

enum class RepMode {
    Unitary,   ///< N_m = +sqrt(N_m^2) on both off-diagonals, J- = J+^T
    Algebraic  ///< J+ carries 1, J- carries N_m^2; valid for any sign of N_m^2
};
std::string_view to_string(RepMode m);

/**
 * Explicit d x d matrices of a highest-weight representation.
 *
 * Basis index m = 0..d-1 labels |alpha_j, j - m>; J0 is diagonal,
 * J+ lives on the first superdiagonal (J+(m-1, m) raises state m) and
 * J- on the first subdiagonal (J-(m+1, m) lowers state m).
 */
struct Representation {
    CharFunc f;
    std::size_t d = 0;
    RepMode mode = RepMode::Unitary;
    Matrix j0;
    Matrix jplus;
    Matrix jminus;
    Matrix casimir;
    bool hermitian_pair = false;

    double alpha_j() const { return j0(0, 0); }
};

Representation build(const WeightLadder& ladder, RepMode mode);

/// Assembles a representation from explicit matrices (e.g. read back from JSON),
/// recomputing the Casimir from f.
Representation assemble(const CharFunc& f, RepMode mode, Matrix j0, Matrix jplus, Matrix jminus);

/// f(J0) for diagonal J0, applied entrywise to the diagonal.
Matrix apply_diagonal(const CharFunc& f, const Matrix& j0);

/// (1/2)(J+J- + J-J+ + J0(J0+1) + f(J0)(f(J0)+1)).
Matrix casimir(const Representation& rep, const CharFunc& f);

}  // namespace nlsl2
