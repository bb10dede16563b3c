#include "s2kg/numerics/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "s2kg/geom/metric.hpp"
#include "s2kg/symcore/parse.hpp"

namespace s2kg::num {

using sym::Expr;

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

double number(const std::string& v, const sym::NumericBindings& params) {
    return sym::eval_numeric(sym::parse(v), params);
}

std::size_t count(const std::string& v) {
    std::size_t pos = 0;
    const long long n = std::stoll(v, &pos);
    if (pos != v.size() || n < 0) throw ConfigError("expected a non-negative integer, got '" + v + "'");
    return static_cast<std::size_t>(n);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!trim(item).empty()) out.push_back(trim(item));
    }
    return out;
}

const std::map<std::string, std::string>& preset_texts() {
    static const std::map<std::string, std::string> kPresets{
        {"eigenfunction",
         "# u = cos(sqrt 2 t) cos x, one period, exact ghost rows\n"
         "name = eigenfunction\n"
         "nx = 128\nny = 128\ncfl = 0.5\n"
         "boundary = exact\n"
         "param.k = 1.4142135623730951\n"
         "exact = cos(k*t)*cos(x)\n"
         "t_end = 2*pi/k\n"
         "f = zero\n"
         "monitors = S0, S1, S2, S3\n"
         "csv_every = 10\n"},
        {"manufactured",
         "# u* = sin t sin^2 x cos y with the matching source\n"
         "name = manufactured\n"
         "nx = 64\nny = 64\ncfl = 0.5\n"
         "boundary = exact\n"
         "exact = sin(t)*sin(x)^2*cos(y)\n"
         "manufactured = true\n"
         "t_end = 1\n"
         "f = zero\n"
         "monitors = S0\n"
         "csv_every = 10\n"},
        {"constant",
         "name = constant\n"
         "nx = 32\nny = 32\n"
         "boundary = neumann\n"
         "u0 = 1\nv0 = 0\n"
         "t_end = 1\n"
         "f = zero\n"
         "monitors = S0, S1, S2, S3\n"},
        {"pulse",
         "# smooth bump well inside the strip, Neumann walls\n"
         "name = pulse\n"
         "nx = 64\nny = 64\n"
         "boundary = neumann\n"
         "u0 = sin(x)^8*cos(x)*sin(y)^2\nv0 = 0\n"
         "t_end = 2\n"
         "f = zero\n"
         "monitors = S0, S1, S2, S3\n"
         "csv_every = 10\n"},
    };
    return kPresets;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, std::pair<std::string, std::size_t>> kv;
    std::istringstream in(text);
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        }
        if (kv.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = {value, lineno};
    }
    // parameters first: other values may use them
    for (const auto& [key, entry] : kv) {
        if (key.rfind("param.", 0) != 0) continue;
        try {
            cfg.params[Expr::param(key.substr(6))] = number(entry.first, cfg.params);
        } catch (const std::exception& e) {
            throw ConfigError("line " + std::to_string(entry.second) + ": " + e.what());
        }
    }
    for (const auto& [key, entry] : kv) {
        const auto& [v, ln] = entry;
        try {
            if (key.rfind("param.", 0) == 0) continue;
            if (key == "name") cfg.name = v;
            else if (key == "nx") cfg.grid.nx = count(v);
            else if (key == "ny") cfg.grid.ny = count(v);
            else if (key == "x_min") cfg.grid.x_min = number(v, cfg.params);
            else if (key == "x_max") cfg.grid.x_max = number(v, cfg.params);
            else if (key == "cfl") cfg.grid.cfl = number(v, cfg.params);
            else if (key == "boundary") cfg.grid.boundary = boundary_from_string(v);
            else if (key == "t_end") cfg.t_end = number(v, cfg.params);
            else if (key == "threads") cfg.threads = static_cast<unsigned>(count(v));
            else if (key == "f") cfg.f = lie::parse_fspec(v);
            else if (key == "u0") cfg.u0 = v;
            else if (key == "v0") cfg.v0 = v;
            else if (key == "exact") cfg.exact = v;
            else if (key == "manufactured") {
                if (v != "true" && v != "false") throw ConfigError("expected true or false");
                cfg.manufactured = v == "true";
            } else if (key == "monitors") cfg.monitors = split_list(v);
            else if (key == "b") cfg.b = v;
            else if (key == "csv_every") cfg.csv_every = std::max<std::size_t>(1, count(v));
            else throw ConfigError("unknown key '" + key + "'");
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            throw ConfigError(msg.rfind("line ", 0) == 0 ? msg : "line " + std::to_string(ln) + ": " + msg);
        } catch (const std::exception& e) {
            throw ConfigError("line " + std::to_string(ln) + ": " + key + ": " + e.what());
        }
    }
    if (!(cfg.t_end > 0)) throw ConfigError("t_end must be positive");
    if (cfg.manufactured && !cfg.exact) throw ConfigError("manufactured = true needs exact");
    if (cfg.grid.boundary == Boundary::Exact && !cfg.exact) throw ConfigError("boundary = exact needs exact");
    cfg.grid.validate();
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open run config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

std::vector<std::string> run_preset_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : preset_texts()) out.push_back(k);
    return out;
}

std::string run_preset_text(const std::string& name) {
    const auto it = preset_texts().find(name);
    if (it == preset_texts().end()) throw ConfigError("unknown run preset '" + name + "'");
    return it->second;
}

RunConfig run_preset(const std::string& name) { return parse_run_config(run_preset_text(name)); }

RunResult run(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    Problem p;
    p.f = cfg.f;
    p.params = cfg.params;
    if (cfg.exact) p.exact = sym::parse(*cfg.exact);
    if (cfg.manufactured) p.source = manufactured_source(*p.exact, cfg.f);

    const auto steps = static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.grid.max_dt() - 1e-9));
    const double dt = cfg.t_end / static_cast<double>(steps);
    Solver s(cfg.grid, p, dt, cfg.threads);
    if (p.exact) s.initialize_exact(*p.exact);
    else s.initialize(sym::parse(cfg.u0), sym::parse(cfg.v0));

    const auto metric = geom::preset_metric("s2xr");
    std::vector<CurrentMonitor> mons;
    RunResult r;
    r.config = cfg;
    r.dt = dt;
    std::optional<Expr> b;
    if (cfg.b) b = sym::parse(*cfg.b);
    for (const auto& name : cfg.monitors) {
        noether::ConservedCurrent A;
        if (name == "Sinf") {
            if (!b) throw ConfigError("monitor Sinf needs b");
            A = noether::current_from_gauge(metric);
        } else {
            A = noether::current_from_isometry(metric, lie::preset_generator(name), cfg.f);
        }
        mons.emplace_back(name, A, cfg.f, cfg.params, b);
        r.monitors.push_back({name, {}, {}, {}, {}});
    }

    while (s.steps() < steps) {
        s.step();
        const double tm = s.time() - s.dt();
        for (std::size_t m = 0; m < mons.size(); ++m) {
            auto& ser = r.monitors[m];
            const double q = mons[m].integral(s.grid(), s.oldest(), s.middle(), s.newest(), tm, s.dt());
            const double fl = mons[m].wall_flux(s.grid(), s.oldest(), s.middle(), s.newest(), tm, s.dt());
            const double cum = ser.flux.empty() ? 0.0 : ser.cumulative_flux.back() + 0.5 * dt * (ser.flux.back() + fl);
            ser.t.push_back(tm);
            ser.integral.push_back(q);
            ser.flux.push_back(fl);
            ser.cumulative_flux.push_back(cum);
        }
    }
    r.steps = s.steps();
    if (p.exact) r.max_error = max_abs_diff(s.newest(), s.sample(*p.exact, s.time()));
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

void write_csv(std::ostream& os, const RunResult& r) {
    os << "t";
    for (const auto& m : r.monitors) os << ',' << m.name << ",flux_" << m.name << ",cumflux_" << m.name;
    os << '\n';
    if (r.monitors.empty()) return;
    os << std::setprecision(17);
    const std::size_t n = r.monitors.front().t.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (k % r.config.csv_every != 0 && k + 1 != n) continue;
        os << r.monitors.front().t[k];
        for (const auto& m : r.monitors) os << ',' << m.integral[k] << ',' << m.flux[k] << ',' << m.cumulative_flux[k];
        os << '\n';
    }
}

nlohmann::json to_json(const RunResult& r, bool timings) {
    nlohmann::json mons = nlohmann::json::array();
    for (const auto& m : r.monitors) {
        nlohmann::json j{{"name", m.name}};
        if (!m.integral.empty()) {
            j["initial"] = m.integral.front();
            j["final"] = m.integral.back();
            j["accumulated_flux"] = m.cumulative_flux.back();
            j["drift"] = m.drift();
            j["relative_drift"] = m.relative_drift();
            j["relative_drift_uncorrected"] = m.raw_relative_drift();
        }
        mons.push_back(std::move(j));
    }
    const auto& g = r.config.grid;
    nlohmann::json out{
        {"name", r.config.name},
        {"grid", {{"nx", g.nx}, {"ny", g.ny}, {"x_min", g.x_min}, {"x_max", g.x_max}, {"cfl", g.cfl},
                  {"boundary", to_string(g.boundary)}}},
        {"f", r.config.f.str()},
        {"t_end", r.config.t_end},
        {"dt", r.dt},
        {"steps", r.steps},
        {"monitors", mons},
    };
    if (r.max_error) out["max_error"] = *r.max_error;
    if (timings) out["seconds"] = r.seconds;
    return out;
}

ConvergenceStudy convergence_study(RunConfig cfg, const std::vector<std::size_t>& ladder) {
    if (!cfg.exact) throw ConfigError("a convergence study needs an exact solution");
    ConvergenceStudy st;
    cfg.monitors.clear();
    for (auto n : ladder) {
        cfg.grid.nx = cfg.grid.ny = n;
        st.n.push_back(n);
        st.error.push_back(*run(cfg).max_error);
    }
    for (std::size_t k = 0; k + 1 < st.error.size(); ++k) {
        st.order.push_back(std::log2(st.error[k] / st.error[k + 1]));
    }
    return st;
}

nlohmann::json to_json(const ConvergenceStudy& s) {
    return {{"n", s.n}, {"max_error", s.error}, {"order", s.order}};
}

}  // namespace s2kg::num
