#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "s2kg/cli/verify.hpp"
#include "s2kg/liesym/generator_io.hpp"
#include "s2kg/symcore/parse.hpp"

using namespace s2kg;

namespace {

struct Common {
    std::string preset = "s2xr";
    std::string metric_file;
    std::string f = "arbitrary";
    std::uint64_t seed = sym::kDefaultSeed;
    std::string json_path;
    std::string source = "generated";
    bool timings = false;
};

void add_common(CLI::App* app, Common& c, bool with_f) {
    app->add_option("--preset", c.preset, "bundled metric: s2xr, minkowski3, euclidean2, euclidean3, sphere");
    app->add_option("--metric", c.metric_file, "metric file ([coordinates] / [metric] sections)")
        ->check(CLI::ExistingFile);
    if (with_f) {
        app->add_option("--f", c.f, "nonlinearity: arbitrary, zero, linear, constant or a polynomial in u");
        app->add_option("--seed", c.seed, "seed of the numeric probes");
    }
    app->add_option("--json", c.json_path, "write the JSON report here ('-' for stdout)");
    app->add_flag("--timings", c.timings, "include wall-clock timings in the JSON report");
}

cli::Options options(const Common& c) {
    cli::Options o;
    o.metric = c.metric_file.empty() ? geom::preset_metric(c.preset) : geom::load_metric_file(c.metric_file);
    o.f = lie::parse_fspec(c.f);
    o.seed = c.seed;
    if (c.source == "printed") o.source = cli::CurrentSource::Printed;
    else if (c.source != "generated") throw CLI::ValidationError("--source", "expected printed or generated");
    return o;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

int emit(const cli::Report& r, const Common& c) {
    if (c.json_path != "-") std::cout << r.to_text();
    write_json(c.json_path, r.to_json(c.timings));
    return r.exit_code();
}

int usage_error(const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetry, curvature and conservation-law checks for the Klein-Gordon type equation on S^2 x R"};
    app.set_version_flag("--version", std::string(cli::kToolVersion));
    app.require_subcommand(1);

    Common common;

    auto* curv = app.add_subcommand("curvature", "Christoffel symbols, Ricci tensor, scalar and sectional curvature");
    add_common(curv, common, false);

    auto* verify = app.add_subcommand("verify", "run the symbolic checks");
    std::string what = "all";
    verify->add_option("what", what, "all, killing, symmetry, noether, currents or algebra")
        ->check(CLI::IsMember({"all", "killing", "symmetry", "noether", "currents", "algebra"}));
    add_common(verify, common, true);
    verify->add_option("--source", common.source, "currents checked: generated (default) or printed")
        ->check(CLI::IsMember({"generated", "printed"}));

    auto* sim = app.add_subcommand("simulate", "finite-difference run with conserved-integral monitors");
    std::string config_path, run_preset, csv_path;
    auto* cfg_opt = sim->add_option("config", config_path, "run configuration file")->check(CLI::ExistingFile);
    sim->add_option("--run-preset", run_preset, "eigenfunction, manufactured, constant or pulse")->excludes(cfg_opt);
    sim->add_option("--csv", csv_path, "write the monitor time series here");
    unsigned threads = 0;
    sim->add_option("--threads", threads, "row-parallel worker threads (overrides the config)");
    sim->add_option("--json", common.json_path, "write the JSON report here ('-' for stdout)");
    sim->add_flag("--timings", common.timings, "include wall-clock timings in the JSON report");

    auto* exp = app.add_subcommand("export-currents", "write the conserved currents as JSON");
    add_common(exp, common, true);
    exp->add_option("--source", common.source, "generated (default) or printed")
        ->check(CLI::IsMember({"generated", "printed"}));

    auto* gens = app.add_subcommand("generators", "print the bundled generators in generator-file format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*curv) return emit(cli::curvature_report(options(common).metric), common);
        if (*verify) {
            const auto o = options(common);
            cli::Report r;
            if (what == "all") r = cli::verify_all(o);
            else if (what == "killing") r = cli::verify_killing(o);
            else if (what == "symmetry") r = cli::verify_symmetry(o);
            else if (what == "noether") r = cli::verify_noether(o);
            else if (what == "currents") r = cli::verify_currents(o);
            else r = cli::verify_algebra(o);
            return emit(r, common);
        }
        if (*sim) {
            if (config_path.empty() && run_preset.empty()) {
                std::cerr << "simulate: give a config file or --run-preset\n";
                return 2;
            }
            auto cfg = config_path.empty() ? num::run_preset(run_preset) : num::load_run_config(config_path);
            if (threads > 0) cfg.threads = threads;
            return emit(cli::simulate_report(cfg, csv_path), common);
        }
        if (*exp) {
            const auto j = cli::export_currents(options(common));
            write_json(common.json_path.empty() ? "-" : common.json_path, j);
            return 0;
        }
        if (*gens) {
            std::vector<lie::VectorField> all;
            for (const auto& n : lie::preset_generator_names()) all.push_back(lie::preset_generator(n));
            std::cout << lie::format_generators(all);
            return 0;
        }
    } catch (const geom::MetricError& e) {
        return usage_error(e);
    } catch (const num::ConfigError& e) {
        return usage_error(e);
    } catch (const sym::ParseError& e) {
        return usage_error(e);
    } catch (const CLI::ValidationError& e) {
        return usage_error(e);
    } catch (const std::invalid_argument& e) {
        return usage_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
