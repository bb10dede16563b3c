#include <random>

#include "doctest.h"
#include "s2kg/liesym/prolong.hpp"
#include "s2kg/noether/current.hpp"
#include "s2kg/noether/export.hpp"
#include "s2kg/symcore/parse.hpp"

using namespace s2kg;
using lie::FSpec;
using lie::preset_generator;
using noether::PotentialSign;
using sym::Expr;
using sym::parse;

namespace {

const geom::ChartMetric& s2xr() {
    static const auto m = geom::preset_metric("s2xr");
    return m;
}

Expr b_(const char* d) {
    sym::FuncIndex idx{};
    for (const char* p = d; *p; ++p) ++idx[*p == 't' ? 0 : *p == 'x' ? 1 : 2];
    return Expr::func("b", sym::kDepCoords, idx);
}

lie::VectorField random_isometry(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    lie::VectorField v;
    for (const auto& g : lie::isometry_generators()) v = v + Expr(sym::Rational(num(rng), den(rng))) * g;
    return v;
}

}  // namespace

TEST_CASE("lagrangian on the product chart") {
    const auto L = noether::lagrangian(FSpec::arbitrary());
    CHECK(L.density == parse("sin(x)*(u_t^2/2 - u_x^2/2 - u_y^2/(2*sin(x)^2) + F(u))"));
    const Expr E = noether::euler_lagrange(L.density);
    CHECK(E == parse("sin(x)*(f(u) - u_tt + u_xx + cos(x)/sin(x)*u_x + u_yy/sin(x)^2)"));

    // one-dimensional toy: L = u_x^2/2 has E(L) = -u_xx
    CHECK(noether::euler_lagrange(parse("u_x^2/2")) == parse("-u_xx"));
    // linear potential wires F = c u^2/2 through
    CHECK(noether::euler_lagrange(noether::lagrangian(FSpec::linear()).density) ==
          parse("sin(x)*(c*u - u_tt + u_xx + cos(x)/sin(x)*u_x + u_yy/sin(x)^2)"));
}

TEST_CASE("variational check") {
    std::mt19937_64 rng(sym::kDefaultSeed);
    const auto L = noether::lagrangian(FSpec::arbitrary());
    for (const auto& X : lie::isometry_generators()) {
        CAPTURE(X.name);
        const auto r = noether::variational_check(X, L, rng);
        CHECK(r.kind == noether::VariationalKind::ExactZero);
        CHECK(r.residual.is_zero());
    }

    SUBCASE("gauge generator gives the divergence triple") {
        const auto Lc = noether::lagrangian(FSpec::linear());
        const auto r = noether::variational_check(preset_generator("Sinf"), Lc, rng);
        REQUIRE(r.kind == noether::VariationalKind::Divergence);
        CHECK(r.flux[0] == parse("sin(x)*b_t*u"));
        CHECK(r.flux[1] == parse("-sin(x)*b_x*u"));
        CHECK(r.flux[2] == parse("-b_y*u/sin(x)"));
        // independent confirmation: residual minus the divergence, reduced by the gauge condition
        const Expr div = sym::diff(r.flux[0], sym::Coord::t) + sym::diff(r.flux[1], sym::Coord::x) +
                         sym::diff(r.flux[2], sym::Coord::y);
        const auto P = lie::prolong(preset_generator("Sinf"), 1);
        const Expr raw = lie::wire_potential(P.apply(Lc.density));
        CHECK(sym::substitute(raw - div, lie::gauge_on_shell(Expr::param("c"))).is_zero());
        // and without the gauge condition the mismatch is -u sin x (W(b) - c b)
        CHECK((raw - div + sym::u_() * Expr::sin(sym::x_()) * lie::gauge_condition(Expr::param("c"))).is_zero());
    }

    SUBCASE("scaling generator is not variational") {
        const auto Lc = noether::lagrangian(FSpec::linear());
        const auto r = noether::variational_check(preset_generator("S4"), Lc, rng);
        CHECK(r.kind == noether::VariationalKind::Residual);
        CHECK(r.zero.verdict == sym::ZeroVerdict::LikelyNonzero);
        // X L + L div xi = 2L for X = u d_u
        CHECK(r.residual == 2 * Lc.density);
    }
}

TEST_CASE("isometry currents against the reference forms") {
    const FSpec f = FSpec::arbitrary();
    for (const char* g : {"S0", "S1", "S2"}) {
        CAPTURE(g);
        const auto gen = noether::current_from_isometry(s2xr(), preset_generator(g), f);
        for (const auto& c : noether::compare_currents(gen, noether::reference_current(g))) {
            CAPTURE(c.k);
            CAPTURE(c.difference.str());
            CHECK(c.equal());
        }
    }

    const auto gen = noether::current_from_isometry(s2xr(), preset_generator("S3"), f);
    const auto cmp = noether::compare_currents(gen, noether::reference_current("S3"));
    CHECK(cmp[0].equal());
    CHECK(cmp[1].equal());
    REQUIRE_FALSE(cmp[2].equal());
    // the last component differs in the F term and in the weight of u_x u_y
    CHECK(cmp[2].difference ==
          parse("cos(x)*sin(y)*F(u) - cos(x)*sin(x)*F(u) + cos(y)/(2*sin(x))*u_x*u_y"));
    CHECK(gen.A[2] == parse("-cos(x)*sin(y)/2*u_t^2 + cos(x)*sin(y)/2*u_x^2 - cos(x)*sin(y)/(2*sin(x)^2)*u_y^2"
                            " + cos(y)/sin(x)*u_x*u_y + cos(x)*sin(y)*F(u)"));
}

TEST_CASE("divergence of isometry currents") {
    std::mt19937_64 rng(sym::kDefaultSeed);
    const FSpec f = FSpec::arbitrary();
    const Expr fu = parse("f(u)");
    const Expr sx = Expr::sin(sym::x_());

    for (const auto& X : lie::isometry_generators()) {
        CAPTURE(X.name);
        Expr expected;
        for (std::size_t k = 0; k < 3; ++k) expected += X.xi[k] * sym::diff(sym::u_(), sym::kAllCoords[k]);
        expected = -2 * sx * fu * expected;

        const auto A = noether::current_from_isometry(s2xr(), X, f);
        const auto as_written = noether::divergence_check(A, f, rng);
        CHECK(as_written.on_shell == expected);
        CHECK_FALSE(as_written.passes());

        const auto reversed = noether::divergence_check(A, f, rng, {lie::SourceSign::Reversed, {}});
        CHECK(reversed.passes());

        const auto zero_f = noether::divergence_check(noether::current_from_isometry(s2xr(), X, FSpec::zero()),
                                                      FSpec::zero(), rng);
        CHECK(zero_f.passes());

        const auto lag = noether::current_from_isometry(s2xr(), X, f, PotentialSign::LagrangianSign);
        CHECK(noether::divergence_check(lag, f, rng).passes());
    }

    SUBCASE("random combinations") {
        std::mt19937_64 pick(20240630);
        for (int trial = 0; trial < 6; ++trial) {
            const auto X = random_isometry(pick);
            const auto lag = noether::current_from_isometry(s2xr(), X, f, PotentialSign::LagrangianSign);
            CHECK(noether::divergence_check(lag, f, rng).passes());
        }
    }

    SUBCASE("reference S3 current") {
        const auto r = noether::divergence_check(noether::reference_current("S3"), f, rng);
        CHECK_FALSE(r.passes());
    }
}

TEST_CASE("noether consistency and the energy density") {
    const FSpec f = FSpec::arbitrary();
    const auto L = noether::lagrangian(f);
    const Expr sx = Expr::sin(sym::x_());
    for (const auto& X : lie::isometry_generators()) {
        CAPTURE(X.name);
        const auto lag = noether::current_from_isometry(s2xr(), X, f, PotentialSign::LagrangianSign);
        CHECK(noether::noether_consistency(lag, X, L).is_zero());
        const auto std_current = noether::current_from_isometry(s2xr(), X, f);
        Expr expected;
        for (std::size_t k = 0; k < 3; ++k) expected += X.xi[k] * sym::diff(sym::u_(), sym::kAllCoords[k]);
        CHECK(noether::noether_consistency(std_current, X, L) == -2 * sx * parse("f(u)") * expected);
    }

    const Expr ut = sym::u_("t");
    const Expr energy = -(ut * sym::partial(L.density, ut) - L.density);
    const auto lag0 = noether::current_from_isometry(s2xr(), preset_generator("S0"), f, PotentialSign::LagrangianSign);
    CHECK(lag0.A[0] == energy);
    CHECK(noether::reference_current("S0").A[0] - energy == -2 * sx * parse("F(u)"));
}

TEST_CASE("gauge current") {
    std::mt19937_64 rng(sym::kDefaultSeed);
    const auto A = noether::current_from_gauge(s2xr());
    CHECK(A.A[0] == parse("sin(x)*(b*u_t - b_t*u)"));
    CHECK(A.A[1] == parse("sin(x)*(b_x*u - b*u_x)"));
    CHECK(A.A[2] == parse("(b_y*u - b*u_y)/sin(x)"));

    const auto cmp = noether::compare_currents(A, noether::reference_current("Sinf"));
    CHECK(cmp[0].equal());
    CHECK(cmp[1].equal());
    CHECK_FALSE(cmp[2].equal());

    const Expr c = Expr::param("c");
    noether::DivergenceOptions opts;
    opts.gauge_c = c;
    CHECK(noether::divergence_check(A, FSpec::linear(), rng, opts).passes());
    CHECK_FALSE(noether::divergence_check(A, FSpec::linear(), rng).passes());
    CHECK_FALSE(noether::divergence_check(noether::reference_current("Sinf"), FSpec::linear(), rng, opts).passes());

    // swapping the roles of b and u flips every component
    const sym::Bindings swap{{sym::u_(), b_("")},   {b_(""), sym::u_()},   {sym::u_("t"), b_("t")},
                             {b_("t"), sym::u_("t")}, {sym::u_("x"), b_("x")}, {b_("x"), sym::u_("x")},
                             {sym::u_("y"), b_("y")}, {b_("y"), sym::u_("y")}};
    for (std::size_t k = 0; k < 3; ++k) CHECK((sym::substitute(A.A[k], swap) + A.A[k]).is_zero());
}

TEST_CASE("explicit potentials specialize") {
    std::mt19937_64 rng(sym::kDefaultSeed);
    const FSpec cubic = FSpec::explicit_f(parse("u^3"));
    const auto A = noether::current_from_isometry(s2xr(), preset_generator("S0"), cubic);
    CHECK(A.A[0] == parse("-sin(x)/2*u_t^2 - sin(x)/2*u_x^2 - u_y^2/(2*sin(x)) - sin(x)*u^4/4"));
    CHECK(noether::divergence_check(A, cubic, rng, {lie::SourceSign::Reversed, {}}).passes());
    const auto r = noether::divergence_check(A, cubic, rng);
    CHECK(r.on_shell == parse("-2*sin(x)*u^3*u_t"));
}

TEST_CASE("current export") {
    const auto A = noether::current_from_gauge(s2xr());
    const auto j = noether::to_json(A);
    CHECK(j["generator"] == "Sinf");
    CHECK(j["provenance"] == "gauge");
    REQUIRE(j["components"].size() == 3);
    CHECK(parse(j["components"][0]["infix"].get<std::string>()) == A.A[0]);
    CHECK(!j["components"][2]["latex"].get<std::string>().empty());
}
