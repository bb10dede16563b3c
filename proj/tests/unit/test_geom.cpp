#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fd_curvature.hpp"
#include "s2kg/geom/curvature.hpp"
#include "s2kg/geom/metric.hpp"
#include "s2kg/symcore/parse.hpp"

using namespace s2kg;
using sym::Expr;
using sym::parse;

namespace {

constexpr std::size_t T = 0, X = 1, Y = 2;

bool all_zero(const geom::Matrix& m) {
    for (const auto& r : m) {
        for (const auto& e : r) {
            if (!e.is_zero()) return false;
        }
    }
    return true;
}

fdcurv::Mat s2xr_numeric(const fdcurv::Vec& p) {
    const double s = std::sin(p[1]);
    return {{1, 0, 0}, {0, -1, 0}, {0, 0, -s * s}};
}

sym::NumericBindings at(double t, double x, double y) { return {{sym::t_(), t}, {sym::x_(), x}, {sym::y_(), y}}; }

}  // namespace

TEST_CASE("metric: s2xr preset basics") {
    const auto m = geom::preset_metric("s2xr");
    CHECK(m.dim() == 3);
    CHECK(m.det() == parse("sin(x)^2"));
    CHECK(m.sqrt_abs_det() == parse("sin(x)"));
    CHECK(m.inv(Y, Y) == parse("-1/sin(x)^2"));
    CHECK(m.inv(T, T) == Expr(1));
}

TEST_CASE("metric: file format errors name the line") {
    CHECK_THROWS_WITH_AS((void)geom::parse_metric("[coordinates]\nt x\n[metric]\ng_tz = 1\n"),
                         doctest::Contains("line 4"), geom::MetricError);
    CHECK_THROWS_WITH_AS((void)geom::parse_metric("[coordinates]\nx y\n[metric]\ng_xx = 1\ng_xx = 2\ng_yy=1\n"),
                         doctest::Contains("duplicate"), geom::MetricError);
    CHECK_THROWS_WITH_AS((void)geom::parse_metric("[coordinates]\nx y\n[metric]\ng_xx = 1 +\n"),
                         doctest::Contains("line 4"), geom::MetricError);
    CHECK_THROWS_AS((void)geom::parse_metric("[coordinates]\nx y\n[metric]\ng_xx = 1\n"), geom::MetricError);
    // off-diagonal entries may be written either way round
    const auto m = geom::parse_metric("[coordinates]\nx y\n[metric]\ng_xx = 1\ng_xy = x\ng_yy = 2\n");
    CHECK(m.g(0, 1) == sym::x_());
    CHECK(m.g(1, 0) == sym::x_());
}

TEST_CASE("christoffel: euclidean is flat") {
    const auto gamma = geom::christoffel(geom::preset_metric("euclidean3"));
    for (const auto& m : gamma) CHECK(all_zero(m));
}

TEST_CASE("christoffel: s2xr values and FD cross-check") {
    const auto m = geom::preset_metric("s2xr");
    const auto gamma = geom::christoffel(m);
    CHECK(gamma[X][Y][Y] == parse("-sin(x)*cos(x)"));
    CHECK(gamma[Y][X][Y] == parse("cos(x)/sin(x)"));
    CHECK(gamma[Y][Y][X] == gamma[Y][X][Y]);
    CHECK(all_zero(gamma[T]));

    const fdcurv::Vec p{0.3, 1.1, 2.0};
    const auto G = fdcurv::christoffel(s2xr_numeric, p);
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(sym::eval_numeric(gamma[k][i][j], at(p[0], p[1], p[2])) ==
                      doctest::Approx(G[(k * 3 + i) * 3 + j]).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("christoffel: sphere block matches and constant rescaling leaves it unchanged") {
    const auto s2xr = geom::christoffel(geom::preset_metric("s2xr"));
    const auto sphere = geom::christoffel(geom::preset_metric("sphere"));
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) CHECK(sphere[k][i][j] == s2xr[k + 1][i + 1][j + 1]);
        }
    }
    const auto base = geom::preset_metric("s2xr");
    for (int c : {-1, 2}) {
        geom::Matrix g = base.components();
        for (auto& r : g) {
            for (auto& e : r) e = Expr(c) * e;
        }
        const auto scaled = geom::christoffel(geom::ChartMetric(base.coords(), g));
        CHECK(scaled == s2xr);
    }
}

TEST_CASE("curvature: minkowski is flat") {
    const auto b = geom::curvature(geom::preset_metric("minkowski3"));
    CHECK(b.scalar.is_zero());
    CHECK(all_zero(b.ricci));
}

TEST_CASE("curvature: round sphere has R = 2") {
    const auto m = geom::preset_metric("sphere");
    const auto b = geom::curvature(m);
    CHECK(b.scalar == Expr(2));
    const auto fd = fdcurv::curvature([](const fdcurv::Vec& p) {
        const double s = std::sin(p[0]);
        return fdcurv::Mat{{1, 0}, {0, s * s}};
    }, {0.9, 0.4});
    CHECK(fd.scalar == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("curvature: s2xr scalar curvature is a constant matching the FD oracle") {
    const auto m = geom::preset_metric("s2xr");
    const auto b = geom::curvature(m);
    CHECK(sym::leaf_atoms(b.scalar).empty());
    REQUIRE(b.scalar.is_number());
    CHECK(b.scalar == Expr(-2));
    for (double x : {0.4, 1.2, 2.5}) {
        const auto fd = fdcurv::curvature(s2xr_numeric, {0.1, x, 0.7});
        CHECK(std::abs(fd.scalar - b.scalar.number().to_double()) < 1e-6);
    }
    // contracted consistency
    Expr contracted;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) contracted += m.inv(i, j) * b.ricci[i][j];
    }
    CHECK(contracted == b.scalar);
}

TEST_CASE("curvature: antisymmetry and first Bianchi identity") {
    auto check = [](const geom::ChartMetric& m) {
        const auto b = geom::curvature(m);
        const std::size_t n = m.dim();
        std::mt19937_64 rng(sym::kDefaultSeed);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    for (std::size_t s = 0; s < n; ++s) {
                        CHECK((b.riemann.at(i, j, k, s) + b.riemann.at(i, j, s, k)).is_zero());
                        const Expr bianchi = b.riemann.at(i, j, k, s) + b.riemann.at(i, k, s, j) + b.riemann.at(i, s, j, k);
                        CHECK(sym::is_zero(bianchi, rng).verdict == sym::ZeroVerdict::ProvenZero);
                    }
                }
            }
        }
    };
    check(geom::preset_metric("s2xr"));

    // randomized diagonal metrics: rational times a monomial in t, x, sin x, sin y
    std::mt19937_64 rng(20240610);
    const std::array<Expr, 4> atoms{sym::t_(), sym::x_(), Expr::sin(sym::x_()), Expr::sin(sym::y_())};
    std::uniform_int_distribution<int> expo(0, 2), coef(1, 5), sign(0, 1);
    for (int trial = 0; trial < 3; ++trial) {
        geom::Matrix g(3, std::vector<Expr>(3));
        for (std::size_t i = 0; i < 3; ++i) {
            Expr e(sym::Rational(sign(rng) ? coef(rng) : -coef(rng), coef(rng)));
            for (const auto& a : atoms) e *= Expr::pow(a, expo(rng));
            g[i][i] = e;
        }
        CAPTURE(g[0][0]);
        CAPTURE(g[1][1]);
        CAPTURE(g[2][2]);
        check(geom::ChartMetric({sym::Coord::t, sym::Coord::x, sym::Coord::y}, g));
    }
}

TEST_CASE("sectional curvature: flat factor vs sphere block") {
    const auto m = geom::preset_metric("s2xr");
    const auto b = geom::curvature(m);
    const std::array<double, 3> dt{1, 0, 0}, dx{0, 1, 0}, dy{0, 0, 1};
    for (double x : {0.5, std::numbers::pi / 3, 2.0}) {
        CHECK(std::abs(geom::sectional_curvature(m, b, at(0.2, x, 1.0), dt, dx)) < 1e-9);
        CHECK(std::abs(geom::sectional_curvature(m, b, at(0.2, x, 1.0), dx, dy) + 1.0) < 1e-9);
    }
    // brute-force oracle from the FD Riemann tensor at x = pi/3
    const fdcurv::Vec p{0.0, std::numbers::pi / 3, 1.0};
    const auto fd = fdcurv::curvature(s2xr_numeric, p);
    const auto g = s2xr_numeric(p);
    double num = 0.0;
    for (std::size_t mm = 0; mm < 3; ++mm) num += g[X][mm] * fd.riemann[((mm * 3 + Y) * 3 + X) * 3 + Y];
    CHECK(num / (g[X][X] * g[Y][Y]) == doctest::Approx(-1.0).epsilon(1e-6));

    CHECK_THROWS_AS((void)geom::sectional_curvature(m, b, at(0, 1, 1), dx, dx), geom::DegeneratePlaneError);
}

TEST_CASE("laplace-beltrami") {
    CHECK(geom::laplace_beltrami(geom::preset_metric("euclidean2")) == parse("u_xx + u_yy"));
    CHECK(geom::laplace_beltrami(geom::preset_metric("s2xr")) == parse("u_tt - u_xx - cot(x)*u_x - u_yy/sin(x)^2"));
    CHECK(geom::laplace_beltrami(geom::preset_metric("sphere")) == parse("u_xx + cot(x)*u_x + u_yy/sin(x)^2"));
}

TEST_CASE("lie derivative of the metric") {
    const auto m = geom::preset_metric("s2xr");
    CHECK(all_zero(geom::lie_derivative_metric(m, lie::preset_generator("S2"))));
    CHECK(all_zero(geom::lie_derivative_metric(m, lie::preset_generator("S0"))));
    const lie::VectorField scale("t d_t", sym::t_(), 0, 0, 0);
    const auto lg = geom::lie_derivative_metric(m, scale);
    CHECK(lg[T][T] == Expr(2));
}

TEST_CASE("killing check") {
    const auto m = geom::preset_metric("s2xr");
    std::mt19937_64 rng(sym::kDefaultSeed);
    for (const auto& X : lie::isometry_generators()) {
        const auto rep = geom::killing_check(m, X, rng);
        CHECK_MESSAGE(rep.killing, X.name);
        CHECK(rep.components.size() == 6);
    }
    const auto rep = geom::killing_check(m, lie::VectorField("x d_x", 0, sym::x_(), 0, 0), rng);
    CHECK_FALSE(rep.killing);
    CHECK_FALSE(rep.undecided);
    bool witnessed = false;
    for (const auto& c : rep.components) witnessed |= c.zero.verdict == sym::ZeroVerdict::LikelyNonzero;
    CHECK(witnessed);

    std::mt19937_64 coeffs(20240611);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    for (int i = 0; i < 5; ++i) {
        const Expr a(sym::Rational(num(coeffs), den(coeffs)));
        const Expr b(sym::Rational(num(coeffs), den(coeffs)));
        const auto combo = a * lie::preset_generator("S2") + b * lie::preset_generator("S3");
        CHECK(geom::killing_check(m, combo, rng).killing);
    }
}
