#include <cmath>
#include <numbers>

#include "doctest.h"
#include "random_expr.hpp"
#include "s2kg/symcore/compiled.hpp"
#include "s2kg/symcore/expr.hpp"
#include "s2kg/symcore/parse.hpp"
#include "s2kg/symcore/zero_test.hpp"

using namespace s2kg::sym;

namespace {

Expr sx() { return Expr::sin(x_()); }
Expr cx() { return Expr::cos(x_()); }

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// Sum of absolute term values: the scale against which cancellation error is judged.
double magnitude(const Expr& e, const NumericBindings& pt) {
    if (e.kind() != Kind::Sum) return std::abs(eval_numeric(e, pt));
    double m = 0.0;
    for (const auto& c : e.children()) m += std::abs(eval_numeric(c, pt));
    return m;
}

}  // namespace

TEST_CASE("parse: cot is rewritten into sin/cos") {
    const Expr e = parse("cot(x)");
    CHECK(e == cx() * Expr::pow(sx(), -1));
    CHECK(e.is_canonical());
    CHECK(parse("tan(x)") == sx() * Expr::pow(cx(), -1));
    CHECK(parse("csc(y)^2") == Expr::pow(Expr::sin(y_()), -2));
}

TEST_CASE("parse: wave operator on the sphere is a four-term sum") {
    const Expr e = parse("u_tt - u_xx - cot(x)*u_x - u_yy/sin(x)^2");
    REQUIRE(e.kind() == Kind::Sum);
    CHECK(e.children().size() == 4);
    const Expr expected = u_("tt") - u_("xx") - cx() * Expr::pow(sx(), -1) * u_("x") - Expr::pow(sx(), -2) * u_("yy");
    CHECK(e == expected);
}

TEST_CASE("parse: exact rational arithmetic") {
    CHECK(parse("2/4") == Expr(Rational(1, 2)));
    CHECK(parse("0.25*4") == Expr(1));
    CHECK(parse("2^-2") == Expr(Rational(1, 4)));
}

TEST_CASE("parse: errors carry offsets") {
    try {
        (void)parse("x + * y");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.code() == ParseError::Code::Syntax);
        CHECK(e.offset() == 4);
    }
    try {
        (void)parse("x + zeta");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.code() == ParseError::Code::UnknownIdentifier);
        CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS((void)parse("x^(1/2)"), ParseError);
    CHECK_THROWS_AS((void)parse("sin(x"), ParseError);
    CHECK_THROWS_AS((void)parse("b(x,u)"), ParseError);
}

TEST_CASE("parse: opaque functions and their derivatives") {
    CHECK(parse("f(u)") == Expr::func("f", kDepU));
    CHECK(parse("F_u(u)") == Expr::func("F", kDepU, {0, 0, 0, 1}));
    CHECK(parse("b(x,y,t)") == Expr::func("b", kDepCoords));
    CHECK(parse("b_tx") == Expr::func("b", kDepCoords, {1, 1, 0, 0}));
    CHECK(parse("u_xt") == u_("tx"));
}

TEST_CASE("simplify: trig identities and cancellation") {
    CHECK(parse("sin(x)^2 + cos(x)^2 - 1").is_zero());
    CHECK(simplify(Expr::raw_product({Expr::raw_cos(x_()), Expr::raw_pow(Expr::raw_sin(x_()), -1), Expr::raw_sin(x_())})) ==
          cx());
    CHECK(parse("sin(2*x) - 2*sin(x)*cos(x)").is_zero());
    CHECK(parse("cos(2*x) - cos(x)^2 + sin(x)^2").is_zero());
    CHECK(parse("sin(x + y) - sin(x)*cos(y) - cos(x)*sin(y)").is_zero());
    CHECK(parse("cos(-x) - cos(x)").is_zero());
    CHECK(parse("sin(-x) + sin(x)").is_zero());
}

TEST_CASE("simplify: product needed when expanding the energy current divergence") {
    // sin(x) * (u_x * cos(x) * sin(x)^-1) -> cos(x) * u_x
    const Expr raw = Expr::raw_product(
        {Expr::raw_sin(x_()), Expr::raw_product({u_("x"), Expr::raw_cos(x_()), Expr::raw_pow(Expr::raw_sin(x_()), -1)})});
    const Expr s = simplify(raw);
    CHECK(s == cx() * u_("x"));
    // numeric probe oracle
    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 20; ++i) {
        const auto pt = sample_point(leaf_atoms(raw), rng);
        CHECK(rel_diff(eval_numeric(raw, pt), eval_numeric(s, pt)) < 1e-12);
    }
}

TEST_CASE("diff: total derivative examples") {
    // d/dx cot x = -csc^2 x
    CHECK(diff(cx() * Expr::pow(sx(), -1), Coord::x) == -Expr::pow(sx(), -2));
    CHECK(diff(Expr::pow(u_("t"), 2), Coord::t) == Expr(2) * u_("t") * u_("tt"));
    // product rule oracle, D_x of the x-component of the energy current
    const Expr a1 = sx() * u_("t") * u_("x");
    const Expr expected = cx() * u_("t") * u_("x") + sx() * u_("tx") * u_("x") + sx() * u_("t") * u_("xx");
    CHECK(diff(a1, Coord::x) == expected);
    CHECK(diff(u_("t"), Coord::x) == u_("tx"));
    CHECK(diff(Expr::func("f", kDepU), Coord::y) == Expr::func("f", kDepU, {0, 0, 0, 1}) * u_("y"));
    CHECK(diff(parse("b"), Coord::t) == parse("b_t"));
    CHECK(diff(Expr::param("c") * x_(), Coord::x) == Expr::param("c"));
}

TEST_CASE("partial derivatives hold other atoms fixed") {
    const Expr L = parse("sin(x)/2*u_t^2 - 1/(2*sin(x))*u_y^2 + sin(x)*F(u)");
    CHECK(partial(L, u_("t")) == sx() * u_("t"));
    CHECK(partial(L, u_()) == sx() * parse("F_u(u)"));
    CHECK(partial(parse("x*u_x"), x_()) == u_("x"));
    CHECK(partial(parse("b*u"), y_()) == parse("b_y*u"));
}

TEST_CASE("substitute: on-shell replacement and simultaneity") {
    const Expr rhs = parse("u_xx + cot(x)*u_x + u_yy/sin(x)^2 + f(u)");
    const Expr r = substitute(u_("tt"), {{u_("tt"), rhs}});
    CHECK(r == u_("xx") + cx() * Expr::pow(sx(), -1) * u_("x") + Expr::pow(sx(), -2) * u_("yy") + Expr::func("f", kDepU));
    CHECK(substitute(x_() + y_(), {{x_(), y_()}, {y_(), x_()}}) == x_() + y_());
    CHECK(substitute(x_() * Expr(2) + y_(), {{x_(), y_()}, {y_(), x_()}}) == y_() * Expr(2) + x_());
    const Expr Fp = Expr::func("F", kDepU, {0, 0, 0, 1});
    CHECK(substitute(Fp, {{Fp, Expr::func("f", kDepU)}}) == Expr::func("f", kDepU));
    // substitution inside trig arguments
    CHECK(substitute(Expr::sin(x_()), {{x_(), Expr(2) * y_()}}) == Expr(2) * Expr::sin(y_()) * Expr::cos(y_()));
}

TEST_CASE("instantiate_function replaces formal derivatives") {
    const Expr e = parse("f(u) + u*f_u(u)");
    CHECK(instantiate_function(e, "f", parse("c*u")) == parse("2*c*u"));
    CHECK(instantiate_function(e, "f", parse("u^2")) == parse("3*u^2"));
    CHECK(instantiate_function(parse("b_xx - b"), "b", parse("sin(x)")) == parse("-2*sin(x)"));
}

TEST_CASE("is_zero: three-valued verdicts") {
    std::mt19937_64 rng(kDefaultSeed);
    CHECK(is_zero(parse("sin(x)^2 + cos(x)^2 - 1"), rng).verdict == ZeroVerdict::ProvenZero);
    const auto r = is_zero(parse("sin(x) - cos(x)"), rng);
    CHECK(r.verdict == ZeroVerdict::LikelyNonzero);
    CHECK(std::abs(r.witness_value) > 1e-6);
    CHECK(std::abs(eval_numeric(parse("sin(x) - cos(x)"), r.witness) - r.witness_value) < 1e-12);
    // Not closed by the rule set (ln is opaque), but numerically zero.
    const auto u = is_zero(parse("ln(x^2) - 2*ln(x)"), rng);
    CHECK(u.verdict == ZeroVerdict::Undecided);
    CHECK(u.samples_evaluated >= 32);
}

TEST_CASE("is_zero: energy current divergence on solutions of the homogeneous equation") {
    // D_t A0 + D_x A1 + D_y A2 for the time-translation current with F = 0,
    // restricted by u_tt := u_xx + cot x u_x + u_yy / sin^2 x.
    const Expr a0 = parse("-sin(x)/2*u_t^2 - sin(x)/2*u_x^2 - 1/(2*sin(x))*u_y^2");
    const Expr a1 = parse("sin(x)*u_t*u_x");
    const Expr a2 = parse("u_t*u_y/sin(x)");
    const Expr div = diff(a0, Coord::t) + diff(a1, Coord::x) + diff(a2, Coord::y);
    const Expr residue = parse("u_tt - u_xx - cot(x)*u_x - u_yy/sin(x)^2");
    // hand expansion: the off-shell divergence is -sin(x) u_t times the residue
    CHECK(div == -sx() * u_("t") * residue);
    const Expr on_shell = substitute(div, {{u_("tt"), parse("u_xx + cot(x)*u_x + u_yy/sin(x)^2")}});
    std::mt19937_64 rng(kDefaultSeed);
    CHECK(is_zero(on_shell, rng).verdict == ZeroVerdict::ProvenZero);
}

TEST_CASE("eval_numeric") {
    const double pi = std::numbers::pi;
    CHECK(eval_numeric(sx(), {{x_(), pi / 2}}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_numeric(parse("cot(x)"), {{x_(), pi / 4}}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)eval_numeric(parse("x*y"), {{x_(), 1.0}}), UnboundAtomError);
    CHECK_THROWS_AS((void)eval_numeric(parse("1/x"), {{x_(), 0.0}}), SingularEvaluationError);
    CHECK(eval_numeric(parse("pi"), {}) == pi);
}

TEST_CASE("eval_numeric: canonical spherical Laplacian matches a finite-difference oracle") {
    // Smooth test field, differentiated only numerically here.
    auto field = [](double x, double y) { return std::cos(2.0 * x) * std::sin(y) + x * x * std::cos(3.0 * y); };
    const Expr rhs = parse("u_xx + cot(x)*u_x + u_yy/sin(x)^2");
    const double h = 1e-3;
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_real_distribution<double> ux(0.3, 2.8), uy(0.0, 6.28);
    for (int i = 0; i < 10; ++i) {
        const double x = ux(rng);
        const double y = uy(rng);
        const double f0 = field(x, y);
        const double fx = (field(x + h, y) - field(x - h, y)) / (2 * h);
        const double fxx = (field(x + h, y) - 2 * f0 + field(x - h, y)) / (h * h);
        const double fyy = (field(x, y + h) - 2 * f0 + field(x, y - h)) / (h * h);
        const double symbolic = eval_numeric(rhs, {{x_(), x}, {u_("x"), fx}, {u_("xx"), fxx}, {u_("yy"), fyy}});
        // divergence form (1/sin x) d/dx (sin x du/dx) + (1/sin^2 x) d2u/dy2
        auto flux = [&](double xx) { return std::sin(xx) * (field(xx + h, y) - field(xx - h, y)) / (2 * h); };
        const double oracle = (flux(x + h) - flux(x - h)) / (2 * h) / std::sin(x) + fyy / std::pow(std::sin(x), 2);
        CHECK(std::abs(symbolic - oracle) < 1e-4);
    }
}

TEST_CASE("printing: infix and LaTeX") {
    CHECK(parse("-x").str() == "-x");
    CHECK(parse("x - y").str() == "x - y");
    CHECK(parse("1/2*u_t^2").str() == "1/2*u_t^2");
    CHECK(parse("f_u(u)*u_x").str() == "f_u(u)*u_x");
    CHECK(parse("1/2*u_t^2").latex() == "\\frac{1}{2} \\, u_{t}^{2}");
    CHECK(parse("sin(x)").latex() == "\\sin\\left(x\\right)");
}

TEST_CASE("compiled expressions agree with eval_numeric") {
    const Expr e = parse("sin(x)*u_t^2 - u_y^2/sin(x) + c*u^3 + cos(2*y)");
    const std::vector<Expr> slots{x_(), y_(), u_(), u_("t"), u_("y"), Expr::param("c")};
    const CompiledExpr ce(e, slots);
    const std::vector<double> v{0.7, 1.3, -0.4, 0.9, 1.1, 2.5};
    NumericBindings nb;
    for (std::size_t i = 0; i < slots.size(); ++i) nb[slots[i]] = v[i];
    CHECK(ce(v) == doctest::Approx(eval_numeric(e, nb)).epsilon(1e-14));
    CHECK_THROWS_AS(CompiledExpr(e, {x_()}), UnboundAtomError);
}

// ---------------------------------------------------------------------------
// property suites, seed 20240601

TEST_CASE("property: simplify is idempotent and preserves value") {
    s2kg::testing::RandomExpr gen(20240601);
    std::mt19937_64 rng(7);
    int compared = 0;
    for (int i = 0; i < 1000; ++i) {
        const Expr raw = gen(3);
        const Expr s = simplify(raw);
        REQUIRE(s.is_canonical());
        CHECK(simplify(s) == s);
        const auto leaves = leaf_atoms(raw);
        const auto pt = sample_point(leaves, rng);
        try {
            const double a = eval_numeric(raw, pt);
            const double b = eval_numeric(s, pt);
            CHECK_MESSAGE(std::abs(a - b) <= 1e-9 * std::max(1.0, magnitude(s, pt)), raw.str(), " vs ", s.str());
            ++compared;
        } catch (const SingularEvaluationError&) {
        }
    }
    CHECK(compared > 900);
}

TEST_CASE("property: product rule holds structurally") {
    s2kg::testing::RandomExpr gen(20240602);
    for (int i = 0; i < 200; ++i) {
        const Expr a = simplify(gen(2));
        const Expr b = simplify(gen(2));
        for (Coord v : kAllCoords) {
            CHECK(diff(a * b, v) == diff(a, v) * b + a * diff(b, v));
        }
    }
}

TEST_CASE("property: mixed total derivatives commute") {
    s2kg::testing::RandomExpr gen(20240603);
    for (int i = 0; i < 200; ++i) {
        const Expr e = simplify(gen(3));
        CHECK((diff(diff(e, Coord::x), Coord::t) - diff(diff(e, Coord::t), Coord::x)).is_zero());
        CHECK((diff(diff(e, Coord::y), Coord::x) - diff(diff(e, Coord::x), Coord::y)).is_zero());
    }
}

TEST_CASE("property: parse(print(e)) == e for canonical e") {
    s2kg::testing::RandomExpr gen(20240604);
    for (int i = 0; i < 500; ++i) {
        const Expr e = simplify(gen(3));
        CHECK_MESSAGE(parse(e.str()) == e, e.str());
    }
}
