#include "nlsl2/algver.hpp"

#include <algorithm>
#include <cstdlib>
#include <span>

#include "nlsl2/error.hpp"

namespace nlsl2 {

double default_tolerance() {
    if (const char* env = std::getenv("NLSL2_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0) return v;
    }
    return 1e-8;
}

double normalized_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.norm() / static_cast<double>(m.rows());
}

bool RelationReport::passed() const {
    return std::all_of(relations.begin(), relations.end(), [](const Relation& r) { return r.pass || !r.required; });
}

const Relation& RelationReport::at(const std::string& name) const {
    for (const auto& r : relations)
        if (r.name == name) return r;
    throw PreconditionError("no relation named " + name);
}

double ResidualTriple::max() const { return std::max({first, second, third}); }

namespace {

Matrix comm(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// [A, B]_r = AB - r BA
Matrix rcomm(const Matrix& a, const Matrix& b, double r) { return a * b - r * (b * a); }

Matrix poly_of(std::span<const double> coeffs, const Matrix& x) {
    const Matrix id = Matrix::Identity(x.rows(), x.cols());
    Matrix acc = Matrix::Zero(x.rows(), x.cols());
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k] * id;
    return acc;
}

void validate_shape(const Representation& rep) {
    const auto d = static_cast<Eigen::Index>(rep.d);
    if (d < 1) throw PreconditionError("representation dimension must be >= 1");
    for (const Matrix* m : {&rep.j0, &rep.jplus, &rep.jminus})
        if (m->rows() != d || m->cols() != d) throw PreconditionError("representation matrices do not match d");
}

}  // namespace

RelationReport check_relations(const Representation& rep, const CharFunc& f, double tol) {
    validate_shape(rep);
    const Matrix& j0 = rep.j0;
    const Matrix& jp = rep.jplus;
    const Matrix& jm = rep.jminus;
    const auto d = j0.rows();
    const Matrix id = Matrix::Identity(d, d);
    const Matrix fj0 = apply_diagonal(f, j0);
    const Matrix c = casimir(rep, f);
    const double aj = j0(0, 0);

    RelationReport rep_out;
    rep_out.tolerance = tol;
    auto add = [&](std::string name, const Matrix& m, bool required = true) {
        const double r = normalized_norm(m);
        rep_out.relations.push_back({std::move(name), r, r < tol, required});
    };
    add("R1", j0 * jm - jm * fj0);
    add("R2", jp * j0 - fj0 * jp);
    add("R3", comm(jp, jm) - (j0 * (j0 + id) - fj0 * (fj0 + id)));
    add("Jacobi", comm(j0, comm(jp, jm)) + comm(jm, comm(j0, jp)) + comm(jp, comm(jm, j0)));
    add("CasimirJ0", comm(c, j0));
    add("CasimirJplus", comm(c, jp));
    add("CasimirJminus", comm(c, jm));
    add("CasimirEigenvalue", c - aj * (aj + 1.0) * id);
    add("HighestWeight", jp.col(0));
    add("J0CommutesJplusJminus", comm(j0, jp * jm));
    add("Hermiticity", jm - jp.transpose(), rep.mode == RepMode::Unitary);
    return rep_out;
}

std::array<double, 3> linear_commutator_coeffs(double r, double s) {
    return {s * (1.0 - s), 1.0 + 2.0 * r * s - r, 1.0 - r * r};
}

std::array<double, 5> quadratic_commutator_coeffs(double t, double r, double s) {
    return {s * (1.0 - s), 1.0 - r * (1.0 - 2.0 * s), 1.0 - (1.0 - s) * t - r * r + s * t, -2.0 * t * r, -t * t};
}

ResidualTriple check_rdeformed_form(const Representation& rep, double r, double s) {
    validate_shape(rep);
    if (!rep.f.is_linear()) throw PreconditionError("check_rdeformed_form requires a linear representation");
    if (!rep.f.same_function(CharFunc::linear(r, s)))
        throw PreconditionError("representation was not built from f = r x - s with the given r, s");
    if (r == 0.0) throw DomainError("r-deformed form needs r != 0");
    const Matrix& j0 = rep.j0;
    const Matrix& jp = rep.jplus;
    const Matrix& jm = rep.jminus;
    const auto k = linear_commutator_coeffs(r, s);
    return {normalized_norm(rcomm(j0, jm, r) + s * jm), normalized_norm(rcomm(j0, jp, 1.0 / r) - (s / r) * jp),
            normalized_norm(comm(jp, jm) - poly_of(k, j0))};
}

ResidualTriple check_quadratic_form(const Representation& rep, double t, double r, double s) {
    validate_shape(rep);
    const CharFunc expected = CharFunc::polynomial({-s, r, t});
    if (rep.f.degree() > 2 || !rep.f.same_function(expected))
        throw PreconditionError("representation was not built from f = t x^2 + r x - s with the given t, r, s");
    if (r == 0.0) throw DomainError("quadratic deformed form needs r != 0");
    const Matrix& j0 = rep.j0;
    const Matrix& jp = rep.jplus;
    const Matrix& jm = rep.jminus;
    const auto d = j0.rows();
    const Matrix g = t * j0 * j0 - s * Matrix::Identity(d, d);
    const auto k = quadratic_commutator_coeffs(t, r, s);
    return {normalized_norm(rcomm(j0, jp, 1.0 / r) + (1.0 / r) * g * jp), normalized_norm(rcomm(j0, jm, r) - jm * g),
            normalized_norm(comm(jp, jm) - poly_of(k, j0))};
}

ResidualTriple check_case1_transform(const Representation& rep, double s) {
    validate_shape(rep);
    if (!rep.f.same_function(CharFunc::linear(1.0, s)))
        throw PreconditionError("check_case1_transform requires a representation of f = x - s");
    if (!(s > 0.0)) throw PreconditionError("check_case1_transform requires s > 0");
    const auto d = rep.j0.rows();
    const Matrix tp = rep.jplus / s;
    const Matrix tm = rep.jminus / s;
    const Matrix t0 = rep.j0 / s + ((1.0 - s) / (2.0 * s)) * Matrix::Identity(d, d);
    return {normalized_norm(comm(t0, tp) - tp), normalized_norm(comm(t0, tm) + tm),
            normalized_norm(comm(tp, tm) - 2.0 * t0)};
}

}  // namespace nlsl2
