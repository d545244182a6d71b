#include "nlsl2/repbuilder.hpp"

#include <cmath>

#include "nlsl2/error.hpp"

namespace nlsl2 {

std::string_view to_string(RepMode m) { return m == RepMode::Unitary ? "unitary" : "algebraic"; }

namespace {

void require_square(const Matrix& m, Eigen::Index d, const char* name) {
    if (m.rows() != d || m.cols() != d)
        throw PreconditionError(std::string(name) + " must be " + std::to_string(d) + "x" + std::to_string(d));
}

}  // namespace

Matrix apply_diagonal(const CharFunc& f, const Matrix& j0) {
    Matrix out = Matrix::Zero(j0.rows(), j0.cols());
    for (Eigen::Index i = 0; i < j0.rows(); ++i) out(i, i) = f(j0(i, i));
    return out;
}

Matrix casimir(const Representation& rep, const CharFunc& f) {
    const auto d = static_cast<Eigen::Index>(rep.d);
    require_square(rep.j0, d, "J0");
    require_square(rep.jplus, d, "J+");
    require_square(rep.jminus, d, "J-");
    const Matrix id = Matrix::Identity(d, d);
    const Matrix fj0 = apply_diagonal(f, rep.j0);
    return 0.5 * (rep.jplus * rep.jminus + rep.jminus * rep.jplus + rep.j0 * (rep.j0 + id) + fj0 * (fj0 + id));
}

Representation assemble(const CharFunc& f, RepMode mode, Matrix j0, Matrix jplus, Matrix jminus) {
    const auto d = j0.rows();
    if (d < 1) throw PreconditionError("representation dimension must be >= 1");
    require_square(j0, d, "J0");
    require_square(jplus, d, "J+");
    require_square(jminus, d, "J-");
    Representation rep{f, 0, RepMode::Unitary, {}, {}, {}, {}};
    rep.d = static_cast<std::size_t>(d);
    rep.mode = mode;
    rep.j0 = std::move(j0);
    rep.jplus = std::move(jplus);
    rep.jminus = std::move(jminus);
    rep.hermitian_pair = rep.jminus == rep.jplus.transpose();
    rep.casimir = casimir(rep, f);
    return rep;
}

Representation build(const WeightLadder& ladder, RepMode mode) {
    const auto d = static_cast<Eigen::Index>(ladder.d);
    if (d < 1 || ladder.alphas.size() != ladder.d || ladder.nsq.size() != ladder.d)
        throw PreconditionError("malformed weight ladder");
    Matrix j0 = Matrix::Zero(d, d);
    Matrix jp = Matrix::Zero(d, d);
    Matrix jm = Matrix::Zero(d, d);
    for (Eigen::Index m = 0; m < d; ++m) j0(m, m) = ladder.alphas[static_cast<std::size_t>(m)];

    if (mode == RepMode::Unitary) {
        if (!ladder.unitary) {
            for (std::size_t m = 0; m + 1 < ladder.d; ++m)
                if (ladder.nsq[m] < 0.0) throw NotUnitaryError(m, ladder.nsq[m]);
        }
        for (Eigen::Index m = 0; m + 1 < d; ++m) {
            // Rounding-level negatives are accepted by the ladder's unitary flag.
            const double n = std::sqrt(std::max(0.0, ladder.nsq[static_cast<std::size_t>(m)]));
            jm(m + 1, m) = n;
            jp(m, m + 1) = n;
        }
    } else {
        for (Eigen::Index m = 0; m + 1 < d; ++m) {
            jm(m + 1, m) = ladder.nsq[static_cast<std::size_t>(m)];
            jp(m, m + 1) = 1.0;
        }
    }
    return assemble(ladder.f, mode, std::move(j0), std::move(jp), std::move(jm));
}

}  // namespace nlsl2
