#include "nlsl2/io.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "nlsl2/error.hpp"

namespace nlsl2::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

double number_at(const json& j, const char* key) {
    if (!j.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
    const auto& v = j.at(key);
    if (!v.is_number()) throw SchemaError(std::string("key \"") + key + "\" must be a number");
    return v.get<double>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* what) {
    if (!j.is_object()) throw SchemaError(std::string(what) + " must be a JSON object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k)) throw SchemaError(std::string("unknown key \"") + k + "\" in " + what);
}

}  // namespace

json to_json(const CharFunc& f) {
    json j;
    j["kind"] = std::string(to_string(f.kind()));
    switch (f.kind()) {
        case FuncKind::Quadratic: j["t"] = f.t(); [[fallthrough]];
        case FuncKind::Linear:
            j["r"] = f.r();
            j["s"] = f.s();
            break;
        case FuncKind::Polynomial: j["coeffs"] = std::vector<double>(f.coeffs().begin(), f.coeffs().end()); break;
    }
    return j;
}

CharFunc charfunc_from_json(const json& j) {
    reject_unknown(j, {"kind", "r", "s", "t", "coeffs"}, "function");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw SchemaError("function needs a string \"kind\"");
    const auto kind = j.at("kind").get<std::string>();
    try {
        if (kind == "linear") {
            if (j.contains("t") || j.contains("coeffs")) throw SchemaError("linear function takes only r and s");
            return CharFunc::linear(number_at(j, "r"), number_at(j, "s"));
        }
        if (kind == "quadratic") {
            if (j.contains("coeffs")) throw SchemaError("quadratic function takes only t, r and s");
            return CharFunc::quadratic(number_at(j, "t"), number_at(j, "r"), number_at(j, "s"));
        }
        if (kind == "polynomial") {
            if (j.contains("r") || j.contains("s") || j.contains("t"))
                throw SchemaError("polynomial function takes only coeffs");
            if (!j.contains("coeffs") || !j.at("coeffs").is_array() || j.at("coeffs").empty())
                throw SchemaError("polynomial function needs a non-empty \"coeffs\" array");
            std::vector<double> c;
            for (const auto& v : j.at("coeffs")) {
                if (!v.is_number()) throw SchemaError("coeffs must be numbers");
                c.push_back(v.get<double>());
            }
            return CharFunc::polynomial(std::move(c));
        }
    } catch (const DomainError& e) {
        throw SchemaError(std::string("invalid function parameters: ") + e.what());
    }
    throw SchemaError("unknown function kind \"" + kind + "\"");
}

json to_json(const CycleReport& c) {
    return json{{"period", c.period},
                {"points", c.points},
                {"multiplier", c.multiplier},
                {"stability", std::string(to_string(c.stability))}};
}

json to_json(std::span<const CycleReport> cycles) {
    json arr = json::array();
    for (const auto& c : cycles) arr.push_back(to_json(c));
    return arr;
}

json to_json(const DeltaClassification& c) {
    json j{{"delta", c.delta}, {"delta1", c.delta1}, {"c", c.c}, {"regime", std::string(to_string(c.regime))}};
    if (c.tangent_point) j["tangent_point"] = *c.tangent_point;
    return j;
}

json to_json(const AllowedRegion& r) {
    return json{{"low", r.low}, {"high", r.high}, {"cycle_period", r.cycle_period}, {"exhaustive", r.exhaustive}};
}

json to_json(const CutSolution& s) {
    json j{{"alpha_j", s.alpha_j}, {"d", s.d}, {"residual", s.residual}, {"unitary", s.unitary}};
    j["within_region"] = s.within_region ? json(*s.within_region) : json(nullptr);
    return j;
}

json to_json(const WeightLadder& l) {
    return json{{"alpha_j", l.alpha_j()},
                {"d", l.d},
                {"alphas", l.alphas},
                {"nsq", l.nsq},
                {"termination", std::string(to_string(l.termination))},
                {"unitary", l.unitary},
                {"residual", l.residual}};
}

json to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw SchemaError("matrix must be a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    const auto cols = j.at(0).is_array() ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
    Matrix m(n, cols);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw SchemaError("matrix rows must be arrays of equal length");
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto& v = row.at(static_cast<std::size_t>(k));
            if (!v.is_number()) throw SchemaError("matrix entries must be numbers");
            m(i, k) = v.get<double>();
        }
    }
    return m;
}

json to_json(const Representation& rep) {
    return json{{"function", to_json(rep.f)},
                {"mode", std::string(to_string(rep.mode))},
                {"d", rep.d},
                {"hermitian_pair", rep.hermitian_pair},
                {"j0", to_json(rep.j0)},
                {"jplus", to_json(rep.jplus)},
                {"jminus", to_json(rep.jminus)},
                {"casimir", to_json(rep.casimir)}};
}

Representation representation_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("representation must be a JSON object");
    for (const char* key : {"function", "mode", "j0", "jplus", "jminus"})
        if (!j.contains(key)) throw SchemaError(std::string("representation is missing \"") + key + "\"");
    const CharFunc f = charfunc_from_json(j.at("function"));
    const auto mode_s = j.at("mode").is_string() ? j.at("mode").get<std::string>() : std::string();
    RepMode mode;
    if (mode_s == "unitary") {
        mode = RepMode::Unitary;
    } else if (mode_s == "algebraic") {
        mode = RepMode::Algebraic;
    } else {
        throw SchemaError("mode must be \"unitary\" or \"algebraic\"");
    }
    Matrix j0 = matrix_from_json(j.at("j0"));
    Matrix jp = matrix_from_json(j.at("jplus"));
    Matrix jm = matrix_from_json(j.at("jminus"));
    if (j.contains("d") && j.at("d").is_number_unsigned() &&
        j.at("d").get<std::size_t>() != static_cast<std::size_t>(j0.rows()))
        throw SchemaError("\"d\" does not match the matrix size");
    try {
        return assemble(f, mode, std::move(j0), std::move(jp), std::move(jm));
    } catch (const PreconditionError& e) {
        throw SchemaError(e.what());
    }
}

json to_json(const RelationReport& rep) {
    json rels = json::array();
    for (const auto& r : rep.relations)
        rels.push_back(json{{"name", r.name}, {"residual", r.residual}, {"pass", r.pass}, {"required", r.required}});
    return json{{"tolerance", rep.tolerance}, {"passed", rep.passed()}, {"relations", rels}};
}

json to_json(const ResidualTriple& t) { return json::array({t.first, t.second, t.third}); }

std::string cobweb_csv(double x0, std::span<const Segment> segments) {
    std::string out = "x0,step,x,y,kind\n";
    const std::string xs = format_double(x0);
    for (const auto& s : segments) {
        out += xs;
        out += ',';
        out += std::to_string(s.step);
        out += ',';
        out += format_double(s.x_end);
        out += ',';
        out += format_double(s.y_end);
        out += ',';
        out += s.kind;
        out += '\n';
    }
    return out;
}

std::string format_matrix(const Matrix& m, int precision) {
    std::ostringstream os;
    os << std::setprecision(precision) << std::fixed;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) os << std::setw(precision + 6) << m(i, k);
        os << '\n';
    }
    return os.str();
}

}  // namespace nlsl2::io
