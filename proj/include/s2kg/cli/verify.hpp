#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "s2kg/cli/report.hpp"
#include "s2kg/geom/metric.hpp"
#include "s2kg/liesym/equation.hpp"
#include "s2kg/numerics/run.hpp"
#include "s2kg/symcore/zero_test.hpp"

namespace s2kg::cli {

enum class CurrentSource { Generated, Printed };

struct Options {
    geom::ChartMetric metric = geom::preset_metric("s2xr");
    /// f used wherever the checks take an arbitrary nonlinearity
    lie::FSpec f = lie::FSpec::arbitrary();
    std::uint64_t seed = sym::kDefaultSeed;
    CurrentSource source = CurrentSource::Generated;
};

[[nodiscard]] Report curvature_report(const geom::ChartMetric& m);

[[nodiscard]] Report verify_killing(const Options& o);
[[nodiscard]] Report verify_symmetry(const Options& o);
[[nodiscard]] Report verify_noether(const Options& o);
[[nodiscard]] Report verify_currents(const Options& o);
[[nodiscard]] Report verify_algebra(const Options& o);
[[nodiscard]] Report verify_all(const Options& o);

/// Runs the configuration; writes the CSV series when csv_path is non-empty.
/// Presets "eigenfunction" and "manufactured" add their acceptance checks.
[[nodiscard]] Report simulate_report(const num::RunConfig& cfg, const std::string& csv_path);

/// Generated currents of S0..S3 and Sinf (or the reference forms) as JSON.
[[nodiscard]] nlohmann::json export_currents(const Options& o);

}  // namespace s2kg::cli
