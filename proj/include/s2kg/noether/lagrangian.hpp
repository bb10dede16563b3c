#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "s2kg/geom/metric.hpp"
#include "s2kg/liesym/equation.hpp"
#include "s2kg/liesym/vector_field.hpp"
#include "s2kg/symcore/zero_test.hpp"

namespace s2kg::noether {

/// First-order Lagrangian density. For the opaque potential, F' = f is wired
/// through lie::wire_potential.
struct Lagrangian {
    sym::Expr density;
    lie::FSpec f;
};

/// sqrt|g| (1/2 g^ij u_i u_j + F(u)) on the given chart.
[[nodiscard]] Lagrangian lagrangian(const geom::ChartMetric& m, const lie::FSpec& f);
/// Same on the bundled S^2 x R chart.
[[nodiscard]] Lagrangian lagrangian(const lie::FSpec& f);

/// dL/du - D_i dL/du_i over the coordinates (t, x, y).
[[nodiscard]] sym::Expr euler_lagrange(const sym::Expr& density);

/// Replaces the opaque f and F by the explicit ones of a non-arbitrary spec.
[[nodiscard]] sym::Expr specialize(const sym::Expr& e, const lie::FSpec& f);

enum class VariationalKind { ExactZero, Divergence, Residual };
[[nodiscard]] std::string to_string(VariationalKind k);

struct VariationalReport {
    VariationalKind kind = VariationalKind::Residual;
    /// X^(1) L + L D_i xi^i, reduced by the gauge condition when b occurs
    sym::Expr residual;
    sym::ZeroReport zero;
    /// V with residual = D_i V^i (kind == Divergence)
    std::array<sym::Expr, 3> flux{};
};

/// Variational symmetry test. When the residual is not literally zero, a
/// divergence V^k = u * sum lambda w(x) beta is sought with weights
/// w in {1, sin x, 1/sin x, cos x} and beta in {u, b, b_t, b_x, b_y}, by exact
/// linear algebra after imposing the gauge condition on b (f linear).
[[nodiscard]] VariationalReport variational_check(const lie::VectorField& X, const Lagrangian& L, std::mt19937_64& rng);

}  // namespace s2kg::noether
