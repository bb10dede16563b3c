#pragma once

#include <random>
#include <string>
#include <vector>

#include "s2kg/liesym/equation.hpp"
#include "s2kg/liesym/prolong.hpp"
#include "s2kg/symcore/zero_test.hpp"

namespace s2kg::lie {

struct SymmetryReport {
    /// X^(2)(Delta) with u_tt eliminated.
    sym::Expr residual;
    sym::ZeroReport zero;
    [[nodiscard]] bool passes() const { return zero.verdict == sym::ZeroVerdict::ProvenZero; }
    [[nodiscard]] bool undecided() const { return zero.verdict == sym::ZeroVerdict::Undecided; }
};

/// Infinitesimal invariance of u_tt - u_xx - cot x u_x - u_yy/sin^2 x - f(u) = 0
/// under X, restricted to solutions by eliminating u_tt. `extra` is applied
/// after the restriction (e.g. gauge_on_shell for b d_u).
[[nodiscard]] SymmetryReport symmetry_check(const VectorField& X, const FSpec& f, std::mt19937_64& rng,
                                            const sym::Bindings& extra = {});

/// Generic point generator xi0, xi1, xi2, eta: opaque functions of (t, x, y, u).
[[nodiscard]] VectorField symmetry_ansatz();

struct DeterminingEquation {
    sym::Expr monomial;  // jet monomial it multiplies (1 for the free part)
    sym::Expr equation;  // coefficient, = 0 for a symmetry
};

/// Coefficients of the restricted invariance condition for the ansatz,
/// grouped by monomials in jets of order >= 1. Not solved here.
[[nodiscard]] std::vector<DeterminingEquation> determining_system(const FSpec& f);

/// Substitutes a concrete generator for the ansatz functions.
[[nodiscard]] std::vector<sym::Expr> evaluate_determining_system(const std::vector<DeterminingEquation>& system,
                                                                 const VectorField& X);

struct ShiftReductionReport {
    /// Residual with f = k, written in v after u = v + k t^2/2.
    sym::Expr transformed;
    /// transformed - (residual with f = 0 in v)
    sym::Expr difference;
    bool proven = false;
};

/// u = v + k t^2/2 maps the equation with f = k to the one with f = 0.
[[nodiscard]] ShiftReductionReport shift_reduction_check(const sym::Expr& k);

}  // namespace s2kg::lie
