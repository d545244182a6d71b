#include "nlsl2/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "nlsl2/error.hpp"

namespace nlsl2::cli {

namespace {

using io::json;

class IoError : public Error {
public:
    using Error::Error;
};

constexpr const char* kFooter = R"(CSV columns:
  cobweb: x0,step,x,y,kind   one row per segment end point; kind V = vertical move to
                             y = f(x), H = horizontal move to the diagonal; the trace
                             starts at (x0, x0)
  sweep:  t,r,s,d,alpha_j,unitary   one row per cut solution; t = 0 means f = r x - s

Exit codes: 0 ok, 1 verification failed, 2 usage or schema error,
            3 solver failure, 4 I/O error.
Environment: NLSL2_TOL overrides the default verification tolerance (1e-8).)";

double parse_number(const std::string& s, const std::string& what) {
    double v = 0.0;
    std::istringstream is(s);
    is >> v;
    if (!is || !is.eof() || !std::isfinite(v)) throw SchemaError("cannot parse " + what + " from \"" + s + "\"");
    return v;
}

std::map<std::string, double> parse_kv(const std::vector<std::string>& items, const std::set<std::string>& keys,
                                       const std::string& flag) {
    std::map<std::string, double> out;
    for (const auto& it : items) {
        auto eq = it.find('=');
        if (eq == std::string::npos) throw SchemaError(flag + " expects key=value pairs, got \"" + it + "\"");
        auto key = it.substr(0, eq);
        if (!keys.count(key)) throw SchemaError(flag + ": unknown parameter \"" + key + "\"");
        out[key] = parse_number(it.substr(eq + 1), flag + " " + key);
    }
    for (const auto& k : keys)
        if (!out.count(k)) throw SchemaError(flag + " needs " + k + "=<value>");
    return out;
}

std::string read_text(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(what + " is not valid JSON: " + e.what());
    }
}

RepMode parse_mode(const std::string& s) {
    if (s == "unitary") return RepMode::Unitary;
    if (s == "algebraic") return RepMode::Algebraic;
    throw SchemaError("mode must be unitary or algebraic");
}

std::size_t positive_size(const json& v, const char* key) {
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw SchemaError(std::string("\"") + key + "\" must be a positive integer");
    return v.get<std::size_t>();
}

double json_number(const json& v, const char* key) {
    if (!v.is_number()) throw SchemaError(std::string("\"") + key + "\" must be a number");
    return v.get<double>();
}

std::vector<double> json_values(const json& v, const char* key) {
    if (v.is_string()) return parse_values(v.get<std::string>());
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array() || v.empty()) throw SchemaError(std::string("grid \"") + key + "\" must be a list or range");
    std::vector<double> out;
    for (const auto& x : v) out.push_back(json_number(x, key));
    return out;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.output) {
        std::ofstream f(*cfg.output);
        if (!f) throw IoError("cannot write " + *cfg.output);
        f << text;
        return;
    }
    out << text;
}

void emit_json(const RunConfig& cfg, std::ostream& out, const json& j) { emit(cfg, out, j.dump(2) + "\n"); }

const CharFunc& need_function(const RunConfig& cfg) {
    if (!cfg.function) throw SchemaError("a characteristic function is required (--linear, --quadratic, --poly or --function)");
    return *cfg.function;
}

std::size_t need_d(const RunConfig& cfg) {
    if (!cfg.d) throw SchemaError("--d is required");
    return *cfg.d;
}

double tolerance(const RunConfig& cfg) { return cfg.tolerance.value_or(default_tolerance()); }

std::string fmt(double v) { return io::format_double(v); }

// ---- subcommands ------------------------------------------------------------

std::string linear_case(const CharFunc& f) {
    const double r = f.r();
    if (r == 1.0) return "I";
    if (r > 1.0) return "II";
    if (r == -1.0) return "marginal";
    if (std::abs(r) < 1.0) return "III";
    return "excluded";
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    const CharFunc& f = need_function(cfg);
    json j;
    j["function"] = io::to_json(f);
    std::optional<DeltaClassification> cls;
    std::optional<AllowedRegion> region;
    if (f.is_quadratic() && f.t() > 0.0) {
        cls = classify_delta(f);
        region = allowed_region(f);
        j["classification"] = io::to_json(*cls);
        j["allowed_region"] = region ? io::to_json(*region) : json(nullptr);
    } else if (f.is_linear()) {
        j["linear_case"] = linear_case(f);
    }
    std::vector<CycleReport> fps;
    if (!(f.is_linear() && f.r() == 1.0 && f.s() == 0.0)) fps = fixed_points(f);
    j["fixed_points"] = io::to_json(std::span<const CycleReport>(fps));
    std::optional<StartClassification> start;
    if (cfg.x0) {
        start = classify_start(f, *cfg.x0, cfg.max_iter.value_or(1000));
        json s{{"x0", *cfg.x0}, {"kind", std::string(to_string(start->kind))}};
        if (start->d) s["d"] = start->d;
        if (!start->note.empty()) s["note"] = start->note;
        j["start"] = s;
    }
    if (!cfg.pretty) {
        emit_json(cfg, out, j);
        return kOk;
    }
    std::ostringstream os;
    os << "function      " << io::to_json(f).dump() << "\n";
    if (cls) {
        os << "delta         " << fmt(cls->delta) << "\n"
           << "delta1        " << fmt(cls->delta1) << "\n"
           << "c             " << fmt(cls->c) << "\n"
           << "regime        " << to_string(cls->regime) << "\n";
        if (region)
            os << "region        (" << fmt(region->low) << ", " << fmt(region->high) << ")"
               << (region->exhaustive ? "" : "  [lower bound from capped cycle search]") << "\n";
        else
            os << "region        none\n";
    }
    for (const auto& fp : fps)
        os << "fixed point   " << fmt(fp.points[0]) << "  multiplier " << fmt(fp.multiplier) << "  "
           << to_string(fp.stability) << "\n";
    if (start) os << "start         " << to_string(start->kind) << (start->d ? " d=" + std::to_string(start->d) : "") << "\n";
    emit(cfg, out, os.str());
    return kOk;
}

int cmd_cycles(const RunConfig& cfg, std::ostream& out) {
    const auto cycles = find_cycles(need_function(cfg), need_d(cfg));
    if (!cfg.pretty) {
        emit_json(cfg, out, io::to_json(std::span<const CycleReport>(cycles)));
        return kOk;
    }
    std::ostringstream os;
    for (const auto& c : cycles) {
        os << "period " << c.period << "  multiplier " << fmt(c.multiplier) << "  " << to_string(c.stability) << "\n ";
        for (double p : c.points) os << " " << fmt(p);
        os << "\n";
    }
    emit(cfg, out, os.str());
    return kOk;
}

int cmd_cut(const RunConfig& cfg, std::ostream& out) {
    const CharFunc& f = need_function(cfg);
    const std::size_t d = need_d(cfg);
    const Interval iv = cfg.interval.value_or(default_cut_interval(f));
    const auto sols = solve_cut_general(f, d, iv);
    json j;
    j["function"] = io::to_json(f);
    j["d"] = d;
    j["interval"] = json::array({iv.low, iv.high});
    if (f.is_linear() && f.r() > 0.0 && (f.r() != 1.0 || f.s() > 0.0)) j["closed_form"] = solve_cut_linear(f.r(), f.s(), d);
    json arr = json::array();
    for (const auto& s : sols) arr.push_back(io::to_json(s));
    j["solutions"] = arr;
    if (!cfg.pretty) {
        emit_json(cfg, out, j);
        return kOk;
    }
    std::ostringstream os;
    if (j.contains("closed_form")) os << "closed form   alpha_j = " << fmt(j["closed_form"].get<double>()) << "\n";
    for (const auto& s : sols)
        os << "alpha_j = " << fmt(s.alpha_j) << "  residual " << fmt(s.residual) << "  "
           << (s.unitary ? "unitary" : "non-unitary")
           << (s.within_region ? (*s.within_region ? "  in region" : "  outside region") : "") << "\n";
    emit(cfg, out, os.str());
    return kOk;
}

WeightLadder ladder_for_build(const RunConfig& cfg) {
    const CharFunc& f = need_function(cfg);
    if (f.is_linear() && f.r() == -1.0) {
        if (cfg.d && *cfg.d != 2) throw PreconditionError("r = -1 only admits the two-dimensional marginal ladder");
        if (!cfg.alpha_j) throw SchemaError("--alpha is required for the marginal r = -1 ladder");
        return marginal_ladder(f.s(), *cfg.alpha_j);
    }
    const std::size_t d = need_d(cfg);
    if (cfg.cycle) {
        const auto cycles = find_cycles(f, d);
        if (cfg.cycle_index >= cycles.size())
            throw PreconditionError("f has " + std::to_string(cycles.size()) + " cycle(s) of period " +
                                    std::to_string(d) + "; --cycle-index " + std::to_string(cfg.cycle_index) +
                                    " is out of range");
        return ladder_from_cycle(cycles[cfg.cycle_index], f);
    }
    if (cfg.alpha_j) return ladder_from_cut(f, *cfg.alpha_j, d);
    const auto sols = solve_cut_general(f, d, cfg.interval);
    const bool want_unitary = cfg.mode.value_or(RepMode::Unitary) == RepMode::Unitary;
    for (auto it = sols.rbegin(); it != sols.rend(); ++it)
        if (!want_unitary || it->unitary) return ladder_from_cut(f, it->alpha_j, d);
    throw PreconditionError("no " + std::string(want_unitary ? "unitary " : "") + "cut solution for d = " +
                            std::to_string(d));
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
    const WeightLadder lad = ladder_for_build(cfg);
    const Representation rep = build(lad, cfg.mode.value_or(RepMode::Unitary));
    json j = io::to_json(rep);
    j["ladder"] = io::to_json(lad);
    if (!cfg.pretty) {
        emit_json(cfg, out, j);
        return kOk;
    }
    std::ostringstream os;
    os << "J0\n" << io::format_matrix(rep.j0) << "J+\n" << io::format_matrix(rep.jplus) << "J-\n"
       << io::format_matrix(rep.jminus) << "C\n" << io::format_matrix(rep.casimir);
    emit(cfg, out, os.str());
    return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const std::string text = read_text(cfg.input.value_or("-"));
    const Representation rep = io::representation_from_json(parse_json_text(text, "representation"));
    const RelationReport report = check_relations(rep, rep.f, tolerance(cfg));
    json j = io::to_json(report);
    const CharFunc& f = rep.f;
    if (f.is_linear() && f.r() != 0.0) j["rdeformed_form"] = io::to_json(check_rdeformed_form(rep, f.r(), f.s()));
    if (f.is_linear() && f.r() == 1.0 && f.s() > 0.0) j["case1_transform"] = io::to_json(check_case1_transform(rep, f.s()));
    if (f.is_quadratic() && f.r() != 0.0) j["quadratic_form"] = io::to_json(check_quadratic_form(rep, f.t(), f.r(), f.s()));
    if (!cfg.pretty) {
        emit_json(cfg, out, j);
    } else {
        std::ostringstream os;
        for (const auto& r : report.relations)
            os << (r.pass ? "PASS " : (r.required ? "FAIL " : "info ")) << r.name << "  " << fmt(r.residual) << "\n";
        emit(cfg, out, os.str());
    }
    return report.passed() ? kOk : kVerificationFailed;
}

int cmd_qmap(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.j) throw SchemaError("--j is required");
    double q = 0.0, s = 0.0;
    if (cfg.function) {
        const CharFunc& f = *cfg.function;
        if (!f.is_linear() || !(f.r() > 0.0)) throw PreconditionError("qmap needs a linear f with r = q^2 > 0");
        q = std::sqrt(f.r());
        s = f.s();
    } else {
        if (!cfg.q || !cfg.s) throw SchemaError("qmap needs --q and --s (or a linear function)");
        q = *cfg.q;
        s = *cfg.s;
    }
    const std::size_t d = cfg.j->dim();
    const double alpha = cfg.alpha_j.value_or(solve_cut_linear(q * q, s, d));
    const auto p = QDeformParams::make(q, *cfg.j, s, alpha);
    const SlqRep sl = build_slq2(p.spin, p.q);
    const SlqResiduals slr = slq2_residuals(sl, p.q);
    const MapResiduals mr = verify_map(p);
    const double tol = tolerance(cfg);

    json j{{"q", p.q}, {"r", p.r()}, {"j", p.spin.j()}, {"d", d}, {"s", p.s}, {"alpha_j", p.alpha_j}};
    j["slq2_residuals"] = json{{"cartan", slr.cartan}, {"ladder", slr.ladder}};
    j["map_residuals"] = json{{"j0", mr.j0}, {"jplus", mr.jplus}};
    try {
        map_jplus_literal(p, sl.s3, sl.splus);
        j["literal_jplus"] = "real";
    } catch (const DomainError& e) {
        j["literal_jplus"] = e.what();
    }
    j["j0"] = io::to_json(map_j0(p, sl.s3));
    j["jplus"] = io::to_json(map_jplus(p, sl.s3, sl.splus));
    const bool ok = slr.cartan < tol && slr.ladder < tol && mr.j0 < tol && mr.jplus < tol;
    j["passed"] = ok;
    if (!cfg.pretty) {
        emit_json(cfg, out, j);
    } else {
        std::ostringstream os;
        os << "alpha_j       " << fmt(p.alpha_j) << "\n"
           << "slq2          cartan " << fmt(slr.cartan) << "  ladder " << fmt(slr.ladder) << "\n"
           << "map           J0 " << fmt(mr.j0) << "  J+ " << fmt(mr.jplus) << "\n";
        emit(cfg, out, os.str());
    }
    return ok ? kOk : kVerificationFailed;
}

int cmd_cobweb(const RunConfig& cfg, std::ostream& out) {
    const CharFunc& f = need_function(cfg);
    if (!cfg.x0) throw SchemaError("--x0 is required");
    const auto segs = cobweb_trace(f, *cfg.x0, cfg.steps.value_or(10));
    emit(cfg, out, io::cobweb_csv(*cfg.x0, segs));
    return kOk;
}

struct SweepPoint {
    double t, r, s;
    std::size_t d;
};

std::string sweep_rows(const SweepPoint& p, std::string& error) {
    std::string rows;
    try {
        const CharFunc f = p.t == 0.0 ? CharFunc::linear(p.r, p.s) : CharFunc::quadratic(p.t, p.r, p.s);
        for (const auto& sol : solve_cut_general(f, p.d)) {
            rows += fmt(p.t) + "," + fmt(p.r) + "," + fmt(p.s) + "," + std::to_string(p.d) + "," + fmt(sol.alpha_j) +
                    "," + (sol.unitary ? "true" : "false") + "\n";
        }
    } catch (const Error& e) {
        error = e.what();
    }
    return rows;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.grid) throw SchemaError("sweep needs a grid (--t-grid, --r-grid, --s-grid, --d-list or config \"grid\")");
    const SweepGrid& g = *cfg.grid;
    if (g.r.empty() || g.s.empty() || g.d.empty() || g.t.empty())
        throw SchemaError("sweep grid needs t, r, s and d values");
    std::vector<SweepPoint> pts;
    for (double t : g.t)
        for (double r : g.r)
            for (double s : g.s)
                for (std::size_t d : g.d) pts.push_back({t, r, s, d});

    std::vector<std::string> rows(pts.size()), errors(pts.size());
    const std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, pts.size()));
    {
        std::vector<std::jthread> workers;
        for (std::size_t w = 0; w < jobs; ++w)
            workers.emplace_back([&, w] {
                for (std::size_t i = w; i < pts.size(); i += jobs) rows[i] = sweep_rows(pts[i], errors[i]);
            });
    }
    std::string csv = "t,r,s,d,alpha_j,unitary\n";
    std::size_t failed = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        csv += rows[i];
        if (!errors[i].empty()) {
            ++failed;
            err << "sweep: t=" << fmt(pts[i].t) << " r=" << fmt(pts[i].r) << " s=" << fmt(pts[i].s)
                << " d=" << pts[i].d << ": " << errors[i] << "\n";
        }
    }
    emit(cfg, out, csv);
    if (failed) err << "sweep: " << failed << " of " << pts.size() << " grid points failed\n";
    return kOk;
}

}  // namespace

std::vector<double> parse_values(const std::string& spec) {
    if (spec.empty()) throw SchemaError("empty value list");
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw SchemaError("range must be start:stop:count, got \"" + spec + "\"");
        const double a = parse_number(parts[0], "range start");
        const double b = parse_number(parts[1], "range stop");
        const double n = parse_number(parts[2], "range count");
        if (n < 1 || n != std::floor(n) || n > 1e6) throw SchemaError("range count must be a positive integer");
        const auto count = static_cast<std::size_t>(n);
        std::vector<double> out;
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
        return out;
    }
    std::vector<double> out;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_number(p, "value"));
    return out;
}

Spin parse_spin(const std::string& spec) {
    try {
        auto slash = spec.find('/');
        if (slash != std::string::npos) {
            if (spec.substr(slash + 1) != "2") throw SchemaError("spin fraction must have denominator 2");
            const double num = parse_number(spec.substr(0, slash), "spin numerator");
            return Spin::from_double(num / 2.0);
        }
        return Spin::from_double(parse_number(spec, "spin"));
    } catch (const DomainError& e) {
        throw SchemaError(e.what());
    }
}

RunConfig parse_run_config(const json& j) {
    static const std::set<std::string> keys{"command", "function", "d",      "interval", "q",         "j",
                                            "s",       "alpha_j",  "mode",   "cycle",    "cycle_index", "x0",
                                            "steps",   "max_iter", "grid",   "jobs",     "output",    "input",
                                            "tolerance", "pretty"};
    if (!j.is_object()) throw SchemaError("config must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (!keys.count(k)) throw SchemaError("unknown config key \"" + k + "\"");
    RunConfig cfg;
    if (j.contains("command")) {
        if (!j["command"].is_string()) throw SchemaError("\"command\" must be a string");
        cfg.command = j["command"].get<std::string>();
    }
    if (j.contains("function")) cfg.function = io::charfunc_from_json(j["function"]);
    if (j.contains("d")) cfg.d = positive_size(j["d"], "d");
    if (j.contains("interval")) {
        const auto& iv = j["interval"];
        if (!iv.is_array() || iv.size() != 2) throw SchemaError("\"interval\" must be [low, high]");
        cfg.interval = Interval{json_number(iv[0], "interval"), json_number(iv[1], "interval")};
    }
    if (j.contains("q")) cfg.q = json_number(j["q"], "q");
    if (j.contains("j")) {
        const auto& v = j["j"];
        cfg.j = v.is_string() ? parse_spin(v.get<std::string>()) : parse_spin(io::format_double(json_number(v, "j")));
    }
    if (j.contains("s")) cfg.s = json_number(j["s"], "s");
    if (j.contains("alpha_j")) cfg.alpha_j = json_number(j["alpha_j"], "alpha_j");
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) throw SchemaError("\"mode\" must be a string");
        cfg.mode = parse_mode(j["mode"].get<std::string>());
    }
    if (j.contains("cycle")) {
        if (!j["cycle"].is_boolean()) throw SchemaError("\"cycle\" must be a boolean");
        cfg.cycle = j["cycle"].get<bool>();
    }
    if (j.contains("cycle_index")) {
        if (!j["cycle_index"].is_number_unsigned()) throw SchemaError("\"cycle_index\" must be a non-negative integer");
        cfg.cycle_index = j["cycle_index"].get<std::size_t>();
    }
    if (j.contains("x0")) cfg.x0 = json_number(j["x0"], "x0");
    if (j.contains("steps")) {
        if (!j["steps"].is_number_unsigned()) throw SchemaError("\"steps\" must be a non-negative integer");
        cfg.steps = j["steps"].get<std::size_t>();
    }
    if (j.contains("max_iter")) cfg.max_iter = positive_size(j["max_iter"], "max_iter");
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (!g.is_object()) throw SchemaError("\"grid\" must be an object");
        SweepGrid grid;
        for (const auto& [k, v] : g.items()) {
            if (k == "t") {
                grid.t = json_values(v, "t");
            } else if (k == "r") {
                grid.r = json_values(v, "r");
            } else if (k == "s") {
                grid.s = json_values(v, "s");
            } else if (k == "d") {
                if (!v.is_array()) throw SchemaError("grid \"d\" must be an array of positive integers");
                for (const auto& x : v) grid.d.push_back(positive_size(x, "d"));
            } else {
                throw SchemaError("unknown grid key \"" + k + "\"");
            }
        }
        cfg.grid = grid;
    }
    if (j.contains("jobs")) cfg.jobs = positive_size(j["jobs"], "jobs");
    if (j.contains("output")) {
        if (!j["output"].is_string()) throw SchemaError("\"output\" must be a string");
        cfg.output = j["output"].get<std::string>();
    }
    if (j.contains("input")) {
        if (!j["input"].is_string()) throw SchemaError("\"input\" must be a string");
        cfg.input = j["input"].get<std::string>();
    }
    if (j.contains("tolerance")) {
        const double t = json_number(j["tolerance"], "tolerance");
        if (!(t > 0.0)) throw SchemaError("\"tolerance\" must be positive");
        cfg.tolerance = t;
    }
    if (j.contains("pretty")) {
        if (!j["pretty"].is_boolean()) throw SchemaError("\"pretty\" must be a boolean");
        cfg.pretty = j["pretty"].get<bool>();
    }
    return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-dimensional representations of the non-linear sl(2) algebra", "nlsl2"};
    app.footer(kFooter);
    app.fallthrough();
    app.require_subcommand(0, 1);

    static const std::vector<std::pair<const char*, const char*>> commands{
        {"analyze", "Delta classification, fixed points, allowed region (and --x0 start classification)"},
        {"cycles", "real cycles of exact period --d"},
        {"cut", "highest weights solving the cut condition for dimension --d"},
        {"build", "explicit J0, J+, J-, C matrices (JSON)"},
        {"verify", "check every algebraic relation on a build output (--input, default stdin)"},
        {"qmap", "sl_q(2) representation and the map onto the linear algebra"},
        {"cobweb", "cobweb trace as CSV"},
        {"sweep", "cut solutions over a parameter grid as CSV"}};
    std::vector<CLI::App*> subs;
    for (const auto& [name, desc] : commands) subs.push_back(app.add_subcommand(name, desc));

    std::vector<std::string> linear, quadratic, poly;
    std::string function_json, config_path, interval_spec, j_spec, mode_s, t_grid, r_grid, s_grid, d_list;
    std::size_t d = 0, steps = 0, max_iter = 0, jobs = 1, cycle_index = 0;
    double q = 0, s = 0, alpha = 0, x0 = 0, tol = 0;
    std::string output, input;
    std::vector<double> interval;

    auto* o_linear = app.add_option("--linear", linear, "f = r x - s, as r=<v> s=<v>")->expected(2);
    auto* o_quad = app.add_option("--quadratic", quadratic, "f = t x^2 + r x - s, as t=<v> r=<v> s=<v>")->expected(3);
    auto* o_poly = app.add_option("--poly", poly, "ascending coefficients c0 c1 ... (or c0,c1,...)")->expected(1, 64);
    auto* o_fjson = app.add_option("--function", function_json, "function as JSON text, or @path to a JSON file");
    auto* o_config = app.add_option("--config", config_path, "JSON config file (RunConfig schema)");
    auto* o_d = app.add_option("--d", d, "dimension / period")->check(CLI::PositiveNumber);
    auto* o_interval = app.add_option("--interval", interval, "search interval: low high")->expected(2);
    auto* o_q = app.add_option("--q", q, "deformation parameter q > 0, q != 1");
    auto* o_j = app.add_option("--j", j_spec, "spin j (e.g. 3/2 or 1.5)");
    auto* o_s = app.add_option("--s", s, "offset s of the linear f (qmap)");
    auto* o_alpha = app.add_option("--alpha", alpha, "highest weight alpha_j");
    auto* o_mode = app.add_option("--mode", mode_s, "unitary | algebraic")->check(CLI::IsMember({"unitary", "algebraic"}));
    auto* f_cycle = app.add_flag("--cycle", "build: use a cycle of period --d instead of a cut solution");
    auto* o_cidx = app.add_option("--cycle-index", cycle_index, "build: which cycle (ordered by top element)");
    auto* o_x0 = app.add_option("--x0", x0, "starting point");
    auto* o_steps = app.add_option("--steps", steps, "cobweb iterations");
    auto* o_maxit = app.add_option("--max-iter", max_iter, "analyze: iterations scanned for --x0")->check(CLI::PositiveNumber);
    auto* o_tg = app.add_option("--t-grid", t_grid, "sweep t values: a:b:n or v1,v2 (0 = linear f)");
    auto* o_rg = app.add_option("--r-grid", r_grid, "sweep r values");
    auto* o_sg = app.add_option("--s-grid", s_grid, "sweep s values");
    auto* o_dl = app.add_option("--d-list", d_list, "sweep dimensions, comma separated");
    auto* o_jobs = app.add_option("--jobs", jobs, "sweep worker threads")->check(CLI::PositiveNumber);
    auto* o_out = app.add_option("--output,-o", output, "write output to a file instead of stdout");
    auto* o_in = app.add_option("--input,-i", input, "verify: build JSON path, - for stdin");
    auto* o_tol = app.add_option("--tol", tol, "verification tolerance")->check(CLI::PositiveNumber);
    auto* f_pretty = app.add_flag("--pretty", "human-readable output");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        RunConfig cfg;
        if (o_config->count()) cfg = parse_run_config(parse_json_text(read_text(config_path), "config"));

        const int nfunc = static_cast<int>(o_linear->count() > 0) + static_cast<int>(o_quad->count() > 0) +
                          static_cast<int>(o_poly->count() > 0) + static_cast<int>(o_fjson->count() > 0);
        if (nfunc > 1) throw SchemaError("give at most one of --linear, --quadratic, --poly, --function");
        try {
            if (o_linear->count()) {
                auto kv = parse_kv(linear, {"r", "s"}, "--linear");
                cfg.function = CharFunc::linear(kv["r"], kv["s"]);
            } else if (o_quad->count()) {
                auto kv = parse_kv(quadratic, {"t", "r", "s"}, "--quadratic");
                cfg.function = CharFunc::quadratic(kv["t"], kv["r"], kv["s"]);
            } else if (o_poly->count()) {
                std::vector<double> c;
                for (const auto& p : poly)
                    for (double v : parse_values(p)) c.push_back(v);
                cfg.function = CharFunc::polynomial(std::move(c));
            } else if (o_fjson->count()) {
                const std::string text = function_json.rfind('@', 0) == 0 ? read_text(function_json.substr(1)) : function_json;
                cfg.function = io::charfunc_from_json(parse_json_text(text, "--function"));
            }
        } catch (const DomainError& e) {
            throw SchemaError(std::string("invalid function parameters: ") + e.what());
        }
        if (o_d->count()) cfg.d = d;
        if (o_interval->count()) cfg.interval = Interval{interval[0], interval[1]};
        if (o_q->count()) cfg.q = q;
        if (o_j->count()) cfg.j = parse_spin(j_spec);
        if (o_s->count()) cfg.s = s;
        if (o_alpha->count()) cfg.alpha_j = alpha;
        if (o_mode->count()) cfg.mode = parse_mode(mode_s);
        if (f_cycle->count()) cfg.cycle = true;
        if (o_cidx->count()) cfg.cycle_index = cycle_index;
        if (o_x0->count()) cfg.x0 = x0;
        if (o_steps->count()) cfg.steps = steps;
        if (o_maxit->count()) cfg.max_iter = max_iter;
        if (o_tg->count() || o_rg->count() || o_sg->count() || o_dl->count()) {
            SweepGrid g = cfg.grid.value_or(SweepGrid{});
            if (o_tg->count()) g.t = parse_values(t_grid);
            if (o_rg->count()) g.r = parse_values(r_grid);
            if (o_sg->count()) g.s = parse_values(s_grid);
            if (o_dl->count()) {
                g.d.clear();
                for (double v : parse_values(d_list)) {
                    if (v < 1 || v != std::floor(v)) throw SchemaError("--d-list entries must be positive integers");
                    g.d.push_back(static_cast<std::size_t>(v));
                }
            }
            cfg.grid = g;
        }
        if (o_jobs->count()) cfg.jobs = jobs;
        if (o_out->count()) cfg.output = output;
        if (o_in->count()) cfg.input = input;
        if (o_tol->count()) cfg.tolerance = tol;
        if (f_pretty->count()) cfg.pretty = true;

        std::string command;
        for (auto* sub : subs)
            if (sub->parsed()) command = sub->get_name();
        if (command.empty() && cfg.command) command = *cfg.command;
        if (command.empty()) throw SchemaError("a subcommand is required (see --help)");

        if (command == "analyze") return cmd_analyze(cfg, out);
        if (command == "cycles") return cmd_cycles(cfg, out);
        if (command == "cut") return cmd_cut(cfg, out);
        if (command == "build") return cmd_build(cfg, out);
        if (command == "verify") return cmd_verify(cfg, out);
        if (command == "qmap") return cmd_qmap(cfg, out);
        if (command == "cobweb") return cmd_cobweb(cfg, out);
        if (command == "sweep") return cmd_sweep(cfg, out, err);
        throw SchemaError("unknown command \"" + command + "\"");
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kSolverFailure;
    }
}

}  // namespace nlsl2::cli
