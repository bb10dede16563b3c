#include <cmath>
#include <sstream>

#include "doctest.h"
#include "s2kg/numerics/run.hpp"
#include "s2kg/symcore/parse.hpp"

using namespace s2kg;
using num::Grid;
using sym::Expr;
using sym::parse;

namespace {

Grid grid(std::size_t n, num::Boundary b = num::Boundary::Neumann) {
    Grid g;
    g.nx = g.ny = n;
    g.boundary = b;
    return g;
}

num::RunConfig pulse(std::size_t n, double t_end) {
    auto cfg = num::run_preset("pulse");
    cfg.grid.nx = cfg.grid.ny = n;
    cfg.t_end = t_end;
    return cfg;
}

}  // namespace

TEST_CASE("grid and config validation") {
    CHECK_NOTHROW(grid(32).validate());
    Grid odd = grid(32);
    odd.ny = 33;
    CHECK_THROWS_AS(odd.validate(), num::ConfigError);
    Grid bad = grid(32);
    bad.x_min = 0;
    CHECK_THROWS_AS(bad.validate(), num::ConfigError);

    const Grid g = grid(32);
    CHECK(g.max_dt() == doctest::Approx(0.5 * std::min(g.dx(), std::sin(g.x_min) * g.dy())));
    CHECK_THROWS_AS(num::Solver(g, {}, 1.01 * g.max_dt()), num::ConfigError);

    try {
        (void)num::parse_run_config("nx = 32\nny = 32\n\nwobble = 3\n");
        FAIL("expected ConfigError");
    } catch (const num::ConfigError& e) {
        CHECK(std::string(e.what()).rfind("line 4:", 0) == 0);
    }
    CHECK_THROWS_AS((void)num::parse_run_config("nx = 32\nnx = 64\n"), num::ConfigError);
    CHECK_THROWS_AS((void)num::parse_run_config("boundary = exact\n"), num::ConfigError);
    CHECK_THROWS_AS((void)num::parse_run_config("nx 32\n"), num::ConfigError);

    const auto cfg = num::run_preset("eigenfunction");
    CHECK(cfg.grid.nx == 128);
    CHECK(cfg.t_end == doctest::Approx(2 * std::numbers::pi / std::sqrt(2.0)));
    for (const auto& name : num::run_preset_names()) CHECK_NOTHROW((void)num::run_preset(name));
}

TEST_CASE("constant state is stationary") {
    const Grid g = grid(16);
    num::Solver s(g, {}, g.max_dt());
    s.initialize(parse("1"), parse("0"));
    for (int n = 0; n < 50; ++n) s.step();
    const num::Field one = s.sample(parse("1"), 0);
    CHECK(num::max_abs_diff(s.newest(), one) < 1e-14);
}

TEST_CASE("discrete operator is second order") {
    const Expr u = parse("sin(x)^3*cos(2*y) + cos(x)");
    const Expr lap = parse("(9*sin(x)*cos(x)^2 - 3*sin(x)^3 - 4*sin(x))*cos(2*y) - 2*cos(x)");
    double prev = 0;
    for (std::size_t n : {16, 32, 64}) {
        num::Problem p;
        p.exact = u;
        const Grid g = grid(n, num::Boundary::Exact);
        num::Solver s(g, p, g.max_dt());
        const auto sampled = s.sample(u, 0);
        const auto err = num::max_abs_diff(s.spatial_operator(sampled), s.sample(lap, 0));
        if (prev > 0) CHECK(std::log2(prev / err) == doctest::Approx(2).epsilon(0.1));
        prev = err;
    }
}

TEST_CASE("eigenfunction tracks the analytic solution") {
    auto cfg = num::run_preset("eigenfunction");
    cfg.monitors.clear();
    std::vector<double> err;
    for (std::size_t n : {32, 64}) {
        cfg.grid.nx = cfg.grid.ny = n;
        err.push_back(*num::run(cfg).max_error);
    }
    CHECK(err[1] < 2e-3);
    CHECK(std::log2(err[0] / err[1]) == doctest::Approx(2).epsilon(0.15));
}

TEST_CASE("manufactured solution converges at second order") {
    const auto st = num::convergence_study(num::run_preset("manufactured"), {32, 64, 128});
    REQUIRE(st.order.size() == 2);
    for (double p : st.order) {
        CHECK(p >= 1.8);
        CHECK(p <= 2.2);
    }
    // the source is u*_tt - Delta u*, so without it the same data diverges from u*
    auto bare = num::run_preset("manufactured");
    bare.manufactured = false;
    bare.monitors.clear();
    CHECK(*num::run(bare).max_error > 1e-2);
}

TEST_CASE("leapfrog is time reversible") {
    const auto cfg = pulse(48, 1);
    const Grid g = cfg.grid;
    num::Solver s(g, {}, g.max_dt());
    s.initialize(parse(cfg.u0), parse(cfg.v0));
    const num::Field u0 = s.middle();
    const num::Field u1 = s.newest();
    for (int n = 0; n < 300; ++n) s.step();
    s.reverse();
    for (int n = 0; n < 300; ++n) s.step();
    const double scale = num::max_abs(u0);
    CHECK(num::max_abs_diff(s.newest(), u0) / scale < 1e-10);
    CHECK(num::max_abs_diff(s.middle(), u1) / scale < 1e-10);
}

TEST_CASE("row threads do not change the result") {
    auto cfg = pulse(32, 0.5);
    cfg.threads = 1;
    const auto a = num::run(cfg);
    cfg.threads = 3;
    const auto b = num::run(cfg);
    REQUIRE(a.monitors.size() == b.monitors.size());
    for (std::size_t m = 0; m < a.monitors.size(); ++m) {
        CHECK(a.monitors[m].integral == b.monitors[m].integral);
        CHECK(a.monitors[m].flux == b.monitors[m].flux);
    }
    const Grid g = cfg.grid;
    num::Solver s1(g, {}, g.max_dt(), 1), s3(g, {}, g.max_dt(), 3);
    s1.initialize(parse(cfg.u0), parse(cfg.v0));
    s3.initialize(parse(cfg.u0), parse(cfg.v0));
    for (int n = 0; n < 40; ++n) {
        s1.step();
        s3.step();
    }
    CHECK(s1.newest().raw() == s3.newest().raw());
}

TEST_CASE("energy budget of the eigenfunction run") {
    auto cfg = num::run_preset("eigenfunction");
    cfg.grid.nx = cfg.grid.ny = 64;
    cfg.monitors = {"S0"};
    const auto r = num::run(cfg);
    const auto& e = r.monitors.front();
    CHECK(e.relative_drift() < 1e-3);
    // the walls do carry flux: without the correction the budget is off
    CHECK(std::abs(e.cumulative_flux.back()) > 0);
}

TEST_CASE("monitor budgets on Neumann runs") {
    std::vector<double> worst;
    for (std::size_t n : {32, 64}) {
        const auto r = num::run(pulse(n, 1.0));
        double w = 0;
        for (const auto& m : r.monitors) {
            double scale = 0;
            for (double q : m.integral) scale = std::max(scale, std::abs(q));
            const auto& first = r.monitors.front();
            for (double q : first.integral) scale = std::max(scale, std::abs(q));
            w = std::max(w, std::abs(m.drift()) / scale);
        }
        worst.push_back(w);
    }
    CHECK(worst[1] < worst[0]);
    CHECK(worst[1] < 5e-3);

    SUBCASE("early times: no wall flux, drift shrinks at second order") {
        std::vector<double> drift;
        for (std::size_t n : {24, 48}) {
            const auto r = num::run(pulse(n, 0.3));
            const auto& e = r.monitors.front();
            CHECK(std::abs(e.cumulative_flux.back()) < 1e-6 * std::abs(e.integral.front()));
            drift.push_back(e.raw_relative_drift());
        }
        CHECK(drift[1] < 0.02);
        CHECK(std::log2(drift[0] / drift[1]) == doctest::Approx(2).epsilon(0.1));
    }

    SUBCASE("axisymmetric data has no y-momentum") {
        auto cfg = pulse(32, 0.5);
        cfg.u0 = "sin(x)^8*cos(x)";
        cfg.monitors = {"S1"};
        const auto r = num::run(cfg);
        for (std::size_t k = 0; k < r.monitors[0].integral.size(); ++k) {
            CHECK(std::abs(r.monitors[0].integral[k]) < 1e-14);
            CHECK(std::abs(r.monitors[0].flux[k]) < 1e-14);
        }
    }

    SUBCASE("gauge integral with an analytic partner solution") {
        std::vector<double> drift;
        for (std::size_t n : {24, 48}) {
            auto cfg = pulse(n, 1.0);
            cfg.params[Expr::param("k")] = std::sqrt(2.0);
            cfg.b = "cos(k*t)*cos(x)";
            cfg.monitors = {"Sinf"};
            const auto r = num::run(cfg);
            const auto& m = r.monitors.front();
            double scale = 0;
            for (double q : m.integral) scale = std::max(scale, std::abs(q));
            REQUIRE(scale > 0);
            // the integral itself changes by its full size; the flux accounts for it
            CHECK(std::abs(m.integral.back() - m.integral.front()) / scale > 0.5);
            drift.push_back(std::abs(m.drift()) / scale);
        }
        CHECK(drift[1] < 0.02);
        CHECK(std::log2(drift[0] / drift[1]) == doctest::Approx(2).epsilon(0.1));
    }
}

TEST_CASE("off-shell divergence matches the symbolic identity") {
    const auto m = geom::preset_metric("s2xr");
    const auto A = noether::current_from_isometry(m, lie::preset_generator("S0"), lie::FSpec::zero());
    const Expr field = parse("sin(t + x)*cos(y) + cos(2*t)*sin(x)^2*sin(y)");

    // identity: sin x u_t (Delta u - u_tt)
    const Expr identity = noether::total_divergence(A, lie::FSpec::zero());
    const Expr expected = parse("sin(x)*u_t*(u_xx + cos(x)/sin(x)*u_x + u_yy/sin(x)^2 - u_tt)");
    CHECK((identity - expected).is_zero());

    std::vector<double> err;
    for (std::size_t n : {16, 32, 64}) {
        const auto r = num::divergence_residual(field, A, lie::FSpec::zero(), grid(n), 0.4);
        CHECK(r.max_identity > 0.1);
        err.push_back(r.max_error);
    }
    CHECK(std::log2(err[0] / err[1]) == doctest::Approx(2).epsilon(0.15));
    CHECK(std::log2(err[1] / err[2]) == doctest::Approx(2).epsilon(0.15));

    // f = c u with c = 0 gives the same residual as f = 0
    const auto Ac = noether::current_from_isometry(m, lie::preset_generator("S0"), lie::FSpec::linear());
    const auto r0 = num::divergence_residual(field, A, lie::FSpec::zero(), grid(32), 0.4);
    const auto rc = num::divergence_residual(field, Ac, lie::FSpec::linear(), grid(32), 0.4, {{Expr::param("c"), 0.0}});
    CHECK(r0.max_error == doctest::Approx(rc.max_error).epsilon(1e-12));
    CHECK(r0.max_identity == doctest::Approx(rc.max_identity).epsilon(1e-12));
}

TEST_CASE("csv and json output") {
    const auto r = num::run(pulse(16, 0.2));
    std::ostringstream os;
    num::write_csv(os, r);
    const std::string csv = os.str();
    CHECK(csv.rfind("t,S0,flux_S0,cumflux_S0,S1", 0) == 0);
    const auto j = num::to_json(r);
    CHECK(j["steps"] == r.steps);
    CHECK(j["monitors"].size() == 4);
    CHECK_FALSE(j.contains("seconds"));
    CHECK(num::to_json(r, true).contains("seconds"));
    CHECK(num::to_json(r).dump() == num::to_json(num::run(pulse(16, 0.2))).dump());
}
