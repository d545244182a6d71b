#pragma once

#include <array>
#include <string>
#include <vector>

#include "nlsl2/repbuilder.hpp"

namespace nlsl2 {

/// Default pass threshold for relation residuals: 1e-8, or the value of the
/// NLSL2_TOL environment variable when it parses as a positive number.
double default_tolerance();

/// Frobenius norm divided by the matrix dimension.
double normalized_norm(const Matrix& m);

struct Relation {
    std::string name;
    double residual = 0.0;
    bool pass = false;
    bool required = true;  ///< Hermiticity is informational for Algebraic representations
};

struct RelationReport {
    std::vector<Relation> relations;
    double tolerance = 1e-8;

    bool passed() const;
    const Relation& at(const std::string& name) const;
};

/**
 * Residuals of every algebraic relation on an explicit representation:
 *   R1  J0 J- = J- f(J0)
 *   R2  J+ J0 = f(J0) J+
 *   R3  [J+, J-] = J0(J0+1) - f(J0)(f(J0)+1)
 *   Jacobi, [C, J0], [C, J+], [C, J-], C = a_j(a_j+1) I,
 *   J+ e_0 = 0, [J0, J+J-] = 0 and J- = J+^T.
 */
RelationReport check_relations(const Representation& rep, const CharFunc& f, double tol = default_tolerance());

struct ResidualTriple {
    double first = 0.0;
    double second = 0.0;
    double third = 0.0;

    double max() const;
};

/// r-deformed form of the linear algebra f = r x - s:
/// [J0,J-]_r = -s J-,  [J0,J+]_{1/r} = (s/r) J+,  [J+,J-] = (1-r^2)J0^2 + (1+2rs-r)J0 + s(1-s).
ResidualTriple check_rdeformed_form(const Representation& rep, double r, double s);

/// Quadratic f = t x^2 + r x - s:
/// [J0,J+]_{1/r} = -(1/r)(tJ0^2 - s)J+,  [J0,J-]_r = J-(tJ0^2 - s),  quartic [J+,J-].
/// t = 0 is accepted for a linear representation.
ResidualTriple check_quadratic_form(const Representation& rep, double t, double r, double s);

/// For f = x - s: J~+- = J+-/s, J~0 = J0/s + (1-s)/(2s) obey [J~0,J~+-] = +-J~+-, [J~+,J~-] = 2J~0.
ResidualTriple check_case1_transform(const Representation& rep, double s);

/// Ascending coefficients of [J+,J-] as a polynomial in J0.
std::array<double, 3> linear_commutator_coeffs(double r, double s);
std::array<double, 5> quadratic_commutator_coeffs(double t, double r, double s);

}  // namespace nlsl2
