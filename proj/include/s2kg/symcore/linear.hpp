#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "s2kg/symcore/expr.hpp"

namespace s2kg::sym {

/// Solution of sum_j x_j * columns[j] == rhs, where each column and the rhs
/// are lists of expressions compared component by component.
struct LinearSolution {
    /// Empty when rhs is outside the span (or when only rank was requested).
    std::optional<std::vector<Expr>> x;
    std::size_t rank = 0;
    /// Conditions assumed for symbolic pivots, e.g. "a != 0" or "(a, b) not all 0".
    std::vector<std::string> assumptions;
    /// Nonzero parameter-dependent residues that would have to vanish for
    /// rhs to be in the span.
    std::vector<Expr> conditions;
};

/// Exact Gauss-Jordan elimination. Every component is split into monomials
/// over the atoms for which `is_coefficient` is false; the atoms for which it
/// is true (typically named parameters) stay inside the coefficients. Pivots
/// are rational when possible, else single-term, else arbitrary; symbolic
/// pivots are recorded as assumptions. Free unknowns are set to 0.
/// Pass an empty rhs to compute the rank only.
[[nodiscard]] LinearSolution solve_linear(const std::vector<std::vector<Expr>>& columns, const std::vector<Expr>& rhs,
                                          const std::function<bool(const Expr&)>& is_coefficient);

}  // namespace s2kg::sym
