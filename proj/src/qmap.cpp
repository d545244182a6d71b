#include "nlsl2/qmap.hpp"

#include <cmath>
#include <string>

#include "nlsl2/error.hpp"
#include "nlsl2/hwsolver.hpp"

namespace nlsl2 {

Spin Spin::from_double(double j) {
    const double two = 2.0 * j;
    if (!(j >= 0.0) || two != std::round(two) || two > 1e6)
        throw DomainError("spin j must be a non-negative half-integer");
    return Spin{static_cast<int>(std::lround(two))};
}

QDeformParams QDeformParams::make(double q, Spin spin, double s, double alpha_j) {
    if (!std::isfinite(q) || !(q > 0.0) || q == 1.0) throw DomainError("deformation parameter needs q > 0, q != 1");
    if (!std::isfinite(s) || !std::isfinite(alpha_j)) throw DomainError("s and alpha_j must be finite");
    if (spin.two_j < 0) throw DomainError("spin must be non-negative");
    return QDeformParams{q, spin, s, alpha_j};
}

QDeformParams QDeformParams::from_linear(const CharFunc& f, Spin spin, double alpha_j) {
    if (!f.is_linear()) throw PreconditionError("sl_q(2) map needs a linear characteristic function");
    if (!(f.r() > 0.0)) throw PreconditionError("sl_q(2) map needs r = q^2 > 0");
    if (f.r() == 1.0) throw PreconditionError("r = 1 is the undeformed case (q = 1)");
    return make(std::sqrt(f.r()), spin, f.s(), alpha_j);
}

namespace {

// [x]_{q^2}
double qq(double x, double q) { return gauss_number(x, q * q); }

}  // namespace

SlqRep build_slq2(Spin spin, double q) {
    if (!std::isfinite(q) || !(q > 0.0) || q == 1.0) throw DomainError("build_slq2 needs q > 0, q != 1");
    const auto d = static_cast<Eigen::Index>(spin.dim());
    const double j = spin.j();
    const double pref = std::pow(q, -2.0 * j + 1.0);
    SlqRep out{Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d)};
    for (Eigen::Index m = 0; m < d; ++m) {
        const double mu = j - static_cast<double>(m);
        out.s3(m, m) = mu;
        if (m >= 1) {
            const double rad = pref * qq(j - mu, q) * qq(j + mu + 1.0, q);
            if (rad < 0.0) throw DomainError("negative radicand in S+ (unreachable for q > 0)");
            out.splus(m - 1, m) = std::sqrt(rad);
        }
    }
    out.sminus = out.splus.transpose();
    return out;
}

SlqResiduals slq2_residuals(const SlqRep& rep, double q) {
    const auto d = rep.s3.rows();
    auto norm = [](const Matrix& m) { return m.norm(); };
    const Matrix cp = rep.s3 * rep.splus - rep.splus * rep.s3 - rep.splus;
    const Matrix cm = rep.s3 * rep.sminus - rep.sminus * rep.s3 + rep.sminus;
    Matrix two_s3 = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) two_s3(i, i) = bracket_q(2.0 * rep.s3(i, i), q);
    const Matrix lad = rep.splus * rep.sminus - rep.sminus * rep.splus - two_s3;
    return {std::max(norm(cp), norm(cm)), norm(lad)};
}

Matrix map_j0(const QDeformParams& p, const Matrix& s3) {
    const double j = p.spin.j();
    Matrix out = Matrix::Zero(s3.rows(), s3.cols());
    for (Eigen::Index i = 0; i < s3.rows(); ++i) {
        const double x = j - s3(i, i);
        out(i, i) = std::pow(p.q, 2.0 * x) * p.alpha_j - p.s * qq(x, p.q);
    }
    return out;
}

Matrix map_j0(const QDeformParams& p) { return map_j0(p, build_slq2(p.spin, p.q).s3); }

namespace {

// Numerator (a alpha_j - Q2 X)(b alpha_j + 1 + Q2 X) with X = [j - S3 + 1] at the row state.
Matrix map_jplus_impl(const QDeformParams& p, const Matrix& s3, const Matrix& splus, double a, double b) {
    const double j = p.spin.j();
    const double pref = std::pow(p.q, -2.0 * j + 1.0);
    const double q2 = p.q2();
    Matrix out = Matrix::Zero(splus.rows(), splus.cols());
    for (Eigen::Index row = 0; row < splus.rows(); ++row) {
        for (Eigen::Index col = 0; col < splus.cols(); ++col) {
            if (splus(row, col) == 0.0) continue;
            const double mu = s3(row, row);
            const double x = qq(j - mu + 1.0, p.q);
            const double num = (a * p.alpha_j - q2 * x) * (b * p.alpha_j + 1.0 + q2 * x);
            const double den = pref * x * qq(j + mu, p.q);
            if (den == 0.0)
                throw DomainError("J+ map: vanishing denominator at row " + std::to_string(row));
            if (num < 0.0 || den < 0.0)
                throw DomainError("J+ map: negative radicand " + std::to_string(num / den) + " at row " +
                                  std::to_string(row));
            out(row, col) = std::sqrt(num) / std::sqrt(den) * splus(row, col);
        }
    }
    return out;
}

}  // namespace

Matrix map_jplus(const QDeformParams& p, const Matrix& s3, const Matrix& splus) {
    return map_jplus_impl(p, s3, splus, 0.0, 2.0);
}

Matrix map_jplus_literal(const QDeformParams& p, const Matrix& s3, const Matrix& splus) {
    return map_jplus_impl(p, s3, splus, p.q1(), p.q3());
}

MapResiduals verify_map(const QDeformParams& p) {
    const std::size_t d = p.spin.dim();
    const CharFunc f = p.linear();
    const double alpha_ref = solve_cut_linear(p.r(), p.s, d);
    const Representation direct = build(ladder_from_cut(f, alpha_ref, d), RepMode::Unitary);
    const SlqRep sl = build_slq2(p.spin, p.q);
    return {(map_j0(p, sl.s3) - direct.j0).norm(), (map_jplus(p, sl.s3, sl.splus) - direct.jplus).norm()};
}

SlqRep inverse_map(const QDeformParams& p, const Matrix& j0, const Matrix& jplus) {
    const auto d = j0.rows();
    if (static_cast<std::size_t>(d) != p.spin.dim() || j0.cols() != d || jplus.rows() != d || jplus.cols() != d)
        throw PreconditionError("inverse_map: matrix size does not match 2j + 1");
    const double r = p.r();
    const double fixed = p.s / (r - 1.0);
    const double j = p.spin.j();
    if (p.alpha_j == fixed) throw DomainError("inverse_map: alpha_j sits on the fixed point");
    SlqRep out{Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d)};
    for (Eigen::Index i = 0; i < d; ++i) {
        const double ratio = (j0(i, i) - fixed) / (p.alpha_j - fixed);
        if (!(ratio > 0.0)) throw DomainError("inverse_map: J0 entry not on the orbit of alpha_j");
        out.s3(i, i) = j - std::log(ratio) / std::log(r);
    }
    const double pref = std::pow(p.q, -2.0 * j + 1.0);
    for (Eigen::Index row = 0; row + 1 < d; ++row) {
        const double jp = jplus(row, row + 1);
        if (jp == 0.0) continue;
        const double mu = out.s3(row, row);
        const double x = qq(j - mu + 1.0, p.q);
        const double num = -p.q2() * x * (2.0 * p.alpha_j + 1.0 + p.q2() * x);
        const double den = pref * x * qq(j + mu, p.q);
        if (!(num > 0.0) || !(den > 0.0)) throw DomainError("inverse_map: non-positive radicand");
        out.splus(row, row + 1) = jp * std::sqrt(den) / std::sqrt(num);
    }
    out.sminus = out.splus.transpose();
    return out;
}

}  // namespace nlsl2
