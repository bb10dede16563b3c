#pragma once

#include <array>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "s2kg/geom/metric.hpp"
#include "s2kg/liesym/vector_field.hpp"
#include "s2kg/symcore/zero_test.hpp"

namespace s2kg::geom {

/// Gamma^k_ij stored as gamma[k][i][j].
using Christoffel = std::vector<Matrix>;

/// Dense rank-4 array R^i_jks.
class Rank4 {
public:
    explicit Rank4(std::size_t n = 0) : n_(n), data_(n * n * n * n) {}
    [[nodiscard]] std::size_t dim() const noexcept { return n_; }
    sym::Expr& at(std::size_t i, std::size_t j, std::size_t k, std::size_t s) { return data_[((i * n_ + j) * n_ + k) * n_ + s]; }
    [[nodiscard]] const sym::Expr& at(std::size_t i, std::size_t j, std::size_t k, std::size_t s) const {
        return data_[((i * n_ + j) * n_ + k) * n_ + s];
    }

private:
    std::size_t n_;
    std::vector<sym::Expr> data_;
};

inline constexpr const char* kCurvatureConvention =
    "R^i_jks = d_k Gamma^i_sj - d_s Gamma^i_kj + Gamma^i_kl Gamma^l_sj - Gamma^i_sl Gamma^l_kj; "
    "R_ij = R^k_ikj; R = g^ij R_ij";

struct CurvatureBundle {
    Christoffel gamma;
    Rank4 riemann;
    Matrix ricci;
    sym::Expr scalar;
    std::string convention = kCurvatureConvention;
};

[[nodiscard]] Christoffel christoffel(const ChartMetric& m);
[[nodiscard]] Rank4 riemann(const ChartMetric& m, const Christoffel& gamma);
[[nodiscard]] Matrix ricci(const Rank4& riemann);
[[nodiscard]] sym::Expr scalar_curvature(const ChartMetric& m, const Matrix& ricci);
[[nodiscard]] CurvatureBundle curvature(const ChartMetric& m);

class DegeneratePlaneError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// K = R_ijkl X^i Y^j X^k Y^l / (g(X,X) g(Y,Y) - g(X,Y)^2), R_ijkl = g_im R^m_jkl,
/// evaluated numerically at `point`.
[[nodiscard]] double sectional_curvature(const ChartMetric& m, const CurvatureBundle& curv,
                                         const sym::NumericBindings& point, std::span<const double> X,
                                         std::span<const double> Y);

/// (1/sqrt|g|) d_i (sqrt|g| g^ij d_j u) in jet atoms of `field`.
[[nodiscard]] sym::Expr laplace_beltrami(const ChartMetric& m, const std::string& field = "u");

/// (L_X g)_ij = xi^s d_s g_ij + g_kj d_i xi^k + g_ik d_j xi^k over the chart
/// coordinates; the chart picks the matching components of X.
[[nodiscard]] Matrix lie_derivative_metric(const ChartMetric& m, const lie::VectorField& X);

struct KillingComponent {
    std::size_t i = 0;
    std::size_t j = 0;
    sym::Expr value;
    sym::ZeroReport zero;
};

struct KillingReport {
    std::vector<KillingComponent> components;  // i <= j
    /// Every component PROVEN_ZERO.
    bool killing = false;
    /// Some component could be neither proven zero nor shown nonzero.
    bool undecided = false;
};

[[nodiscard]] KillingReport killing_check(const ChartMetric& m, const lie::VectorField& X, std::mt19937_64& rng);

}  // namespace s2kg::geom
