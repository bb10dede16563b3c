#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "s2kg/symcore/expr.hpp"

namespace s2kg::geom {

using Matrix = std::vector<std::vector<sym::Expr>>;

class MetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coordinate chart with symbolic metric components.
///
/// Construction checks symmetry, computes det g, the inverse by cofactors
/// and sqrt|det g|, and verifies g^ik g_kj = delta (symbolically, with a
/// numeric spot check when the canonical form does not close). Everything is
/// computed once; the object is immutable afterwards.
class ChartMetric {
public:
    ChartMetric(std::vector<sym::Coord> coords, Matrix g, std::string name = "");

    [[nodiscard]] std::size_t dim() const noexcept { return coords_.size(); }
    [[nodiscard]] const std::vector<sym::Coord>& coords() const noexcept { return coords_; }
    [[nodiscard]] sym::Expr coord_atom(std::size_t i) const { return sym::Expr::coord(coords_[i]); }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

    [[nodiscard]] const sym::Expr& g(std::size_t i, std::size_t j) const { return g_[i][j]; }
    [[nodiscard]] const sym::Expr& inv(std::size_t i, std::size_t j) const { return inv_[i][j]; }
    [[nodiscard]] const Matrix& components() const noexcept { return g_; }
    [[nodiscard]] const Matrix& inverse() const noexcept { return inv_; }
    [[nodiscard]] const sym::Expr& det() const noexcept { return det_; }

    /// sqrt|det g| with the sign fixed positive on the probing domain
    /// (sin x on the S2xR chart). Throws MetricError when det g is not a
    /// perfect-square monomial.
    [[nodiscard]] const sym::Expr& sqrt_abs_det() const;
    [[nodiscard]] bool has_sqrt_abs_det() const noexcept { return sqrt_abs_det_.has_value(); }

    /// Numeric components at a point.
    [[nodiscard]] std::vector<std::vector<double>> evaluate(const sym::NumericBindings& point) const;

private:
    std::vector<sym::Coord> coords_;
    Matrix g_;
    Matrix inv_;
    sym::Expr det_;
    std::optional<sym::Expr> sqrt_abs_det_;
    std::string name_;
};

/// Determinant by cofactor expansion.
[[nodiscard]] sym::Expr determinant(const Matrix& m);

/// Bundled charts: s2xr (dt^2 - dx^2 - sin^2 x dy^2), minkowski3,
/// euclidean2, euclidean3, sphere (dx^2 + sin^2 x dy^2).
[[nodiscard]] ChartMetric preset_metric(std::string_view name);
[[nodiscard]] std::vector<std::string> preset_metric_names();
/// Metric-file text of a preset (the presets are defined in that format).
[[nodiscard]] std::string preset_metric_text(std::string_view name);

/// Reads the plain-text metric format:
///
///     # comment
///     [coordinates]
///     t x y
///     [metric]
///     g_tt = 1
///     g_xx = -1
///     g_yy = -sin(x)^2
///
/// Entries are the lower-triangular g_ab, named by coordinate letters in
/// either order; missing entries are 0. Errors name the line and column.
[[nodiscard]] ChartMetric parse_metric(std::string_view text, const std::string& name = "");
[[nodiscard]] ChartMetric load_metric_file(const std::string& path);

}  // namespace s2kg::geom
