#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "s2kg/geom/metric.hpp"
#include "s2kg/liesym/equation.hpp"
#include "s2kg/liesym/vector_field.hpp"
#include "s2kg/noether/lagrangian.hpp"
#include "s2kg/symcore/zero_test.hpp"

namespace s2kg::noether {

struct ConservedCurrent {
    std::string name;
    /// "isometry", "isometry/lagrangian-sign", "gauge" or "reference"
    std::string provenance;
    std::string generator;
    std::array<sym::Expr, 3> A{};
};

/// Sign of the potential term of the isometry current
///   A^k = sqrt g (1/2 g^ij xi^k - g^kj xi^i) u_i u_j -/+ sqrt g xi^k F(u).
/// Standard takes "-", the published general formula; it is conserved for
/// Delta_g u + f = 0. LagrangianSign takes "+", the current Noether's theorem
/// gives for the Lagrangian sqrt g (1/2 g^ij u_i u_j + F).
enum class PotentialSign { Standard, LagrangianSign };

[[nodiscard]] ConservedCurrent current_from_isometry(const geom::ChartMetric& m, const lie::VectorField& xi,
                                                     const lie::FSpec& f,
                                                     PotentialSign sign = PotentialSign::Standard);

/// A^k = sqrt g g^jk (b u_j - b_j u) for the gauge generator b d_u.
[[nodiscard]] ConservedCurrent current_from_gauge(const geom::ChartMetric& m);

/// Reference currents as published for S0, S1, S2, S3 (opaque F) and the
/// gauge generator Sinf, typed in verbatim.
[[nodiscard]] ConservedCurrent reference_current(const std::string& generator);
[[nodiscard]] std::vector<std::string> reference_generators();

struct DivergenceOptions {
    lie::SourceSign sign = lie::SourceSign::AsWritten;
    /// Impose b_tt from the gauge condition with this c.
    std::optional<sym::Expr> gauge_c;
};

struct DivergenceReport {
    sym::Expr off_shell;  // D_t A^0 + D_x A^1 + D_y A^2
    sym::Expr on_shell;   // after eliminating u_tt (and b_tt)
    sym::ZeroReport zero;
    [[nodiscard]] bool passes() const { return zero.verdict == sym::ZeroVerdict::ProvenZero; }
};

/// D_t A^0 + D_x A^1 + D_y A^2 with the explicit f and F substituted, off shell.
[[nodiscard]] sym::Expr total_divergence(const ConservedCurrent& A, const lie::FSpec& f);

[[nodiscard]] DivergenceReport divergence_check(const ConservedCurrent& A, const lie::FSpec& f, std::mt19937_64& rng,
                                                const DivergenceOptions& opts = {});

/// D_i A^i + E(L) (eta - xi^j u_j): zero off shell for a Noether current.
[[nodiscard]] sym::Expr noether_consistency(const ConservedCurrent& A, const lie::VectorField& X, const Lagrangian& L);

struct ComponentComparison {
    std::size_t k = 0;
    sym::Expr generated;
    sym::Expr reference;
    sym::Expr difference;  // generated - reference
    [[nodiscard]] bool equal() const { return difference.is_zero(); }
};

[[nodiscard]] std::vector<ComponentComparison> compare_currents(const ConservedCurrent& generated,
                                                                const ConservedCurrent& reference);

}  // namespace s2kg::noether
