#pragma once

#include <string>
#include <string_view>

#include "s2kg/symcore/expr.hpp"

namespace s2kg::lie {

/// The nonlinearity f(u) of  u_tt = u_xx + cot x u_x + u_yy / sin^2 x + f(u).
///
/// Arbitrary keeps f and its potential F as opaque functions of u with
/// F' = f wired through wire_potential(). The other kinds carry an explicit
/// coefficient: c for Linear (f = c u), k for Constant (f = k), the full
/// expression for Explicit.
struct FSpec {
    enum class Kind { Arbitrary, Zero, Linear, Constant, Explicit };

    Kind kind = Kind::Arbitrary;
    sym::Expr coeff;

    static FSpec arbitrary() { return {Kind::Arbitrary, {}}; }
    static FSpec zero() { return {Kind::Zero, {}}; }
    static FSpec linear(sym::Expr c = sym::Expr::param("c")) { return {Kind::Linear, std::move(c)}; }
    static FSpec constant(sym::Expr k = sym::Expr::param("k")) { return {Kind::Constant, std::move(k)}; }
    static FSpec explicit_f(sym::Expr f) { return {Kind::Explicit, std::move(f)}; }

    [[nodiscard]] sym::Expr f() const;
    /// Potential with F' = f and F(0) = 0; opaque F(u) for Arbitrary. Throws
    /// std::invalid_argument when an Explicit f is not a polynomial in u.
    [[nodiscard]] sym::Expr F() const;
    /// True when f = c u for some c free of u (Zero counts, c = 0).
    [[nodiscard]] bool is_linear() const;
    /// The c of f = c u; requires is_linear().
    [[nodiscard]] sym::Expr linear_coefficient() const;
    [[nodiscard]] std::string str() const;
};

/// "arbitrary" | "zero" | "linear" | "constant" | an expression in u and
/// parameters, e.g. "c*u", "u^2", "3/2". Expressions are classified, so
/// "2*u" gives Linear(2) and "k" gives Constant(k).
[[nodiscard]] FSpec parse_fspec(std::string_view text);

/// Replaces F_{u^n}(u) by f_{u^(n-1)}(u) for n >= 1.
[[nodiscard]] sym::Expr wire_potential(const sym::Expr& e);

/// u_tt - u_xx - cot x u_x - u_yy / sin^2 x for the named field.
[[nodiscard]] sym::Expr wave_operator(const std::string& field = "u");

/// wave_operator(u) - f(u).
[[nodiscard]] sym::Expr equation_residual(const FSpec& f);

/// Which way the source enters when u_tt is eliminated. AsWritten is
/// u_tt = ... + f(u); Reversed is u_tt = ... - f(u) (the equation
/// Delta_g u + f = 0), kept for diagnosing sign conventions.
enum class SourceSign { AsWritten, Reversed };

/// {u_tt -> u_xx + cot x u_x + u_yy / sin^2 x +/- f(u)}.
[[nodiscard]] sym::Bindings on_shell(const FSpec& f, SourceSign sign = SourceSign::AsWritten);

/// b_tt - b_xx - cot x b_x - b_yy / sin^2 x - c b: the condition on b(t,x,y)
/// for b d_u to be a symmetry when f = c u.
[[nodiscard]] sym::Expr gauge_condition(const sym::Expr& c);
/// {b_tt -> b_xx + cot x b_x + b_yy / sin^2 x + c b}.
[[nodiscard]] sym::Bindings gauge_on_shell(const sym::Expr& c);

/// Sum of derivative counts of a jet atom.
[[nodiscard]] int jet_order(const sym::Expr& jet);

}  // namespace s2kg::lie
