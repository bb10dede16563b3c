#pragma once

#include <optional>
#include <string>
#include <vector>

#include "s2kg/noether/current.hpp"
#include "s2kg/numerics/solver.hpp"

namespace s2kg::num {

/// Conserved integral of a current over the (x, y) strip and its flux through
/// the two x walls, evaluated from discrete levels.
class CurrentMonitor {
public:
    /// The components, after the potential of `f` is substituted, may use t, x,
    /// y, u, u_t, u_x, u_y and parameters in `params`. Occurrences of b and its
    /// first derivatives are replaced by the analytic field `b` when given.
    CurrentMonitor(std::string name, const noether::ConservedCurrent& A, const lie::FSpec& f,
                   const sym::NumericBindings& params = {}, const std::optional<sym::Expr>& b = {});

    [[nodiscard]] const std::string& name() const { return name_; }

    /// Midpoint rule for the integral of A^0 at the middle level; u_t by the
    /// centred difference (newer - older) / (2 dt).
    [[nodiscard]] double integral(const Grid& g, const Field& older, const Field& mid, const Field& newer, double t,
                                  double dt) const;
    /// Integral over y of A^1 at x_max minus at x_min (outward flux).
    [[nodiscard]] double wall_flux(const Grid& g, const Field& older, const Field& mid, const Field& newer, double t,
                                   double dt) const;

    /// Pointwise A^k from given jet values.
    [[nodiscard]] double component(std::size_t k, double t, double x, double y, double u, double ut, double ux,
                                   double uy) const;

private:
    std::string name_;
    std::array<sym::CompiledExpr, 3> c_;
    std::vector<double> fixed_;
};

struct MonitorSeries {
    std::string name;
    std::vector<double> t;
    std::vector<double> integral;
    std::vector<double> flux;             // outward wall flux at each sample
    std::vector<double> cumulative_flux;  // trapezoid in time from the first sample
    /// (Q_last - Q_first) + accumulated outward flux
    [[nodiscard]] double drift() const;
    [[nodiscard]] double relative_drift() const;
    [[nodiscard]] double raw_relative_drift() const;  // without the flux correction
};

struct ResidualReport {
    double max_error = 0.0;     // max |FD divergence - symbolic identity|
    double max_identity = 0.0;  // max |symbolic identity|
};

/// Finite-difference D_t A^0 + D_x A^1 + D_y A^2 of the current evaluated on an
/// analytic field (jets by centred differences with the grid spacings, then
/// centred differences of the components), compared at the interior nodes to
/// the symbolic off-shell divergence evaluated with exact jets.
[[nodiscard]] ResidualReport divergence_residual(const sym::Expr& field, const noether::ConservedCurrent& A,
                                                 const lie::FSpec& f, const Grid& g, double t0,
                                                 const sym::NumericBindings& params = {});

}  // namespace s2kg::num
