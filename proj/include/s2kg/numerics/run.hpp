#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "s2kg/numerics/monitor.hpp"

namespace s2kg::num {

/// Plain-text run description, one `key = value` per line, '#' comments:
///   name, nx, ny, x_min, x_max, cfl, boundary (neumann|exact), t_end, threads,
///   f (an f-spec), u0, v0 (expressions in x, y), exact (u(t, x, y); implies the
///   initial data), manufactured (true: source from exact), monitors (comma
///   list of S0..S3, Sinf), b (analytic gauge field for Sinf), csv_every,
///   and param.NAME = number for numeric parameter values.
/// Numeric values may be expressions in pi and the numeric parameters.
struct RunConfig {
    std::string name = "run";
    Grid grid;
    double t_end = 1.0;
    unsigned threads = 1;
    lie::FSpec f = lie::FSpec::zero();
    std::string u0 = "0";
    std::string v0 = "0";
    std::optional<std::string> exact;
    bool manufactured = false;
    std::vector<std::string> monitors{"S0"};
    std::optional<std::string> b;
    std::size_t csv_every = 1;
    sym::NumericBindings params;
};

/// Throws ConfigError with "line N: ..." on bad input.
[[nodiscard]] RunConfig parse_run_config(const std::string& text);
[[nodiscard]] RunConfig load_run_config(const std::string& path);

/// eigenfunction, manufactured, constant, pulse
[[nodiscard]] RunConfig run_preset(const std::string& name);
[[nodiscard]] std::vector<std::string> run_preset_names();
[[nodiscard]] std::string run_preset_text(const std::string& name);

struct RunResult {
    RunConfig config;
    std::size_t steps = 0;
    double dt = 0.0;
    std::vector<MonitorSeries> monitors;
    /// max |u - exact| over interior nodes at t_end, when exact is given
    std::optional<double> max_error;
    double seconds = 0.0;
};

[[nodiscard]] RunResult run(const RunConfig& cfg);

void write_csv(std::ostream& os, const RunResult& r);
[[nodiscard]] nlohmann::json to_json(const RunResult& r, bool timings = false);

struct ConvergenceStudy {
    std::vector<std::size_t> n;
    std::vector<double> error;
    std::vector<double> order;  // log2(e_k / e_{k+1}) for successive doublings
};

/// Runs cfg with nx = ny = n for each n of the ladder (must have exact set).
[[nodiscard]] ConvergenceStudy convergence_study(RunConfig cfg, const std::vector<std::size_t>& ladder);
[[nodiscard]] nlohmann::json to_json(const ConvergenceStudy& s);

}  // namespace s2kg::num
