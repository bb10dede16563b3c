#pragma once

#include <array>

#include "s2kg/liesym/vector_field.hpp"

namespace s2kg::lie {

/// [X, Y]^a = X^b d_b Y^a - Y^b d_b X^a over (t, x, y, u).
[[nodiscard]] VectorField lie_bracket(const VectorField& X, const VectorField& Y);

struct ProlongedGenerator {
    VectorField base;
    int order = 1;
    /// eta^i = D_i eta - (D_i xi^j) u_j
    std::array<sym::Expr, 3> eta1{};
    /// eta^ij = D_j eta^i - (D_j xi^k) u_ik; filled for order 2, symmetric.
    std::array<std::array<sym::Expr, 3>, 3> eta2{};

    /// X^(order) applied to an expression in t, x, y, u and jets up to `order`.
    [[nodiscard]] sym::Expr apply(const sym::Expr& e) const;
};

[[nodiscard]] ProlongedGenerator prolong(const VectorField& X, int order);

/// Partial derivative along coordinate a of (t, x, y, u); a = 3 is d/du.
[[nodiscard]] sym::Expr partial_point(const sym::Expr& e, std::size_t a);

}  // namespace s2kg::lie
