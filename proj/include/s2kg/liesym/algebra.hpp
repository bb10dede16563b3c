#pragma once

#include <optional>
#include <string>
#include <vector>

#include "s2kg/liesym/prolong.hpp"

namespace s2kg::lie {

/// Result of expressing a field in the span of a list of fields.
struct SpanResolution {
    /// Coefficients c with sum_k c_k X_k == target; empty when outside the span.
    std::optional<std::vector<sym::Expr>> coeffs;
    /// Parameter conditions assumed by the elimination ("a != 0").
    std::vector<std::string> assumptions;
    /// When outside the span only for some parameter values: the expressions
    /// that must vanish for membership.
    std::vector<sym::Expr> conditions;
};

/// Exact elimination over the coefficients of canonical monomials. Coefficients
/// of named parameters (a, b, c, ...) are carried symbolically; pivots are
/// rational when possible, otherwise parameter monomials assumed nonzero.
[[nodiscard]] SpanResolution resolve_in_span(const std::vector<VectorField>& basis, const VectorField& target);

/// Rank of a list of fields over the parameter field, with the same pivot policy.
struct RankReport {
    std::size_t rank = 0;
    std::vector<std::string> assumptions;
};
[[nodiscard]] RankReport rank_of(const std::vector<VectorField>& fields);

struct AlgebraTable {
    std::vector<VectorField> fields;
    /// brackets[i][j] = [X_i, X_j] as computed
    std::vector<std::vector<VectorField>> brackets;
    /// constants[i][j][k] = c^k_ij; empty Expr entries for unresolved brackets
    std::vector<std::vector<std::vector<sym::Expr>>> constants;
    std::vector<std::pair<std::size_t, std::size_t>> unresolved;
    std::vector<std::string> assumptions;
    bool closed = true;

    [[nodiscard]] std::size_t dim() const { return fields.size(); }
    /// All structure constants are plain rationals.
    [[nodiscard]] bool rational() const;
    [[nodiscard]] sym::Rational rational_constant(std::size_t i, std::size_t j, std::size_t k) const;
    /// c^k_ij = -c^k_ji for every stored pair.
    [[nodiscard]] bool antisymmetric() const;
    /// Jacobi identity on the stored constants.
    [[nodiscard]] bool jacobi() const;
    /// Human-readable lines "[S1,S2] = S3".
    [[nodiscard]] std::vector<std::string> lines() const;
};

[[nodiscard]] AlgebraTable commutator_table(const std::vector<VectorField>& fields);

/// Killing form K_ij = tr(ad_i ad_j); requires rational constants.
[[nodiscard]] std::vector<std::vector<sym::Rational>> killing_form(const AlgebraTable& t);
/// Sylvester test by exact elimination.
[[nodiscard]] bool negative_definite(const std::vector<std::vector<sym::Rational>>& m);

/// Isomorphism tag from structure constants: "A1", "2A1", "3A1", "A3,9",
/// "A3,9+A1", "A3,9+2A1", or "unidentified".
[[nodiscard]] std::string identify(const AlgebraTable& t);

struct SubalgebraReport {
    std::string name;
    AlgebraTable table;
    std::size_t rank = 0;
    bool closed = false;
    std::string tag;
    std::vector<std::string> assumptions;
};

[[nodiscard]] SubalgebraReport subalgebra_check(const std::string& name, const std::vector<VectorField>& candidate);

struct NamedSubalgebra {
    std::string name;
    std::string algebra;  // "S1" (arbitrary f) or "S2" (f = c u)
    std::vector<VectorField> generators;
    std::string expected_tag;
};

/// The one-dimensional subalgebras of the isometry algebra and L1..L7 of the
/// f = c u algebra, with parameters a and b as named parameters.
[[nodiscard]] std::vector<NamedSubalgebra> listed_subalgebras();

}  // namespace s2kg::lie
