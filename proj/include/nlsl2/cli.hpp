#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nlsl2/io.hpp"

namespace nlsl2::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsage = 2,          ///< bad flags, schema violations
    kSolverFailure = 3,  ///< preconditions, domain errors, divergence, root isolation
    kIoFailure = 4,
};

struct SweepGrid {
    std::vector<double> t{0.0};
    std::vector<double> r;
    std::vector<double> s;
    std::vector<std::size_t> d;
};

/// Every setting a subcommand can take; filled from --config and then from flags.
struct RunConfig {
    std::optional<std::string> command;
    std::optional<CharFunc> function;
    std::optional<std::size_t> d;
    std::optional<Interval> interval;
    std::optional<double> q;
    std::optional<Spin> j;
    std::optional<double> s;
    std::optional<double> alpha_j;
    std::optional<RepMode> mode;
    bool cycle = false;
    std::size_t cycle_index = 0;
    std::optional<double> x0;
    std::optional<std::size_t> steps;
    std::optional<std::size_t> max_iter;
    std::optional<SweepGrid> grid;
    std::size_t jobs = 1;
    std::optional<std::string> output;
    std::optional<std::string> input;
    std::optional<double> tolerance;
    bool pretty = false;
};

/// Validates a RunConfig JSON document; unknown keys raise SchemaError.
RunConfig parse_run_config(const io::json& j);

/// "a:b:n" (n points, inclusive), "v1,v2,..." or a single value.
std::vector<double> parse_values(const std::string& spec);

/// "3/2" or "1.5".
Spin parse_spin(const std::string& spec);

/// Entry point shared by the executable and the tests. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlsl2::cli
