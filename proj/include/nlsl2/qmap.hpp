#pragma once

#include <cstddef>

#include "nlsl2/qnumbers.hpp"
#include "nlsl2/repbuilder.hpp"

namespace nlsl2 {

/// Half-integer spin j stored as 2j, so the dimension 2j + 1 is exact.
struct Spin {
    int two_j = 0;

    static Spin from_double(double j);
    double j() const { return 0.5 * two_j; }
    std::size_t dim() const { return static_cast<std::size_t>(two_j) + 1; }
};

/// Parameters tying sl_q(2) in spin j to the linear algebra f = q^2 x - s with highest weight alpha_j.
struct QDeformParams {
    double q = 2.0;
    Spin spin;
    double s = 1.0;
    double alpha_j = 0.0;

    /// Validates q > 0, q != 1 and finiteness.
    static QDeformParams make(double q, Spin spin, double s, double alpha_j);
    /// q = +sqrt(r); rejects linear f with r <= 0 or r == 1.
    static QDeformParams from_linear(const CharFunc& f, Spin spin, double alpha_j);

    double r() const { return q * q; }
    double q1() const { return (r() - 2.0) / (r() - 1.0); }
    double q2() const { return (r() - 1.0) * alpha_j - s; }
    double q3() const { return r() / (r() - 1.0); }
    CharFunc linear() const { return CharFunc::linear(r(), s); }
};

struct SlqRep {
    Matrix s3;
    Matrix splus;
    Matrix sminus;
};

/// Spin-j irreducible representation of sl_q(2); basis index m labels |j, j - m>.
SlqRep build_slq2(Spin spin, double q);

/// Residuals of [S3, S+-] = +-S+- (larger of the two) and [S+, S-] = [2 S3].
struct SlqResiduals {
    double cartan = 0.0;
    double ladder = 0.0;
};
SlqResiduals slq2_residuals(const SlqRep& rep, double q);

/// J0 = q^{2(j - S3)} alpha_j - s [j - S3]_{q^2}, on the diagonal of S3.
Matrix map_j0(const QDeformParams& p, const Matrix& s3);
Matrix map_j0(const QDeformParams& p);

/**
 * J+ = c(S3) S+ with
 *   c^2 = -Q2 [j-S3+1] (2 alpha_j + 1 + Q2 [j-S3+1]) / (q^{-2j+1} [j-S3+1] [j+S3]),
 * brackets in base q^2, evaluated on the diagonal of S3 only where S+ is non-zero.
 * The numerator equals N_{m-1}^2 = (alpha_j - a_m)(alpha_j + a_m + 1) of the linear ladder.
 * Throws DomainError on a negative radicand or a vanishing denominator.
 */
Matrix map_jplus(const QDeformParams& p, const Matrix& s3, const Matrix& splus);

/// The same product with numerator (Q1 alpha_j - Q2 X)(Q3 alpha_j + 1 + Q2 X), X = [j-S3+1];
/// coincides with map_jplus only when Q1 = 0 (q^2 = 2).
Matrix map_jplus_literal(const QDeformParams& p, const Matrix& s3, const Matrix& splus);

/// Frobenius residuals of the mapped J0, J+ against the unitary representation built
/// directly from f = q^2 x - s at the cut solution for d = 2j + 1.
struct MapResiduals {
    double j0 = 0.0;
    double jplus = 0.0;
};
MapResiduals verify_map(const QDeformParams& p);

/// Numerical inverse of the map: S3 from the diagonal of J0 and S+ from J+.
SlqRep inverse_map(const QDeformParams& p, const Matrix& j0, const Matrix& jplus);

}  // namespace nlsl2
