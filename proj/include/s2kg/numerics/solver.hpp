#pragma once

#include <optional>

#include "s2kg/liesym/equation.hpp"
#include "s2kg/numerics/grid.hpp"
#include "s2kg/symcore/compiled.hpp"

namespace s2kg::num {

/// Compiled g(t, x, y, u) with numeric values bound for its parameters.
/// Throws UnboundAtomError for any other atom.
class TxyFunction {
public:
    TxyFunction() = default;
    TxyFunction(const sym::Expr& e, const sym::NumericBindings& params);
    [[nodiscard]] double operator()(double t, double x, double y, double u = 0.0) const;

private:
    sym::CompiledExpr c_;
    std::vector<double> fixed_;
};

/// u_tt = u_xx + cot x u_x + u_yy / sin^2 x + f(u) + s(t, x, y)
struct Problem {
    lie::FSpec f = lie::FSpec::zero();
    /// s(t, x, y); absent means zero
    std::optional<sym::Expr> source;
    /// u(t, x, y) used for Boundary::Exact ghosts
    std::optional<sym::Expr> exact;
    /// numeric values of parameters occurring in f, source or exact (e.g. c, k)
    sym::NumericBindings params;
};

/// Manufactured source u*_tt - (Delta u* + f(u*)) for an analytic u*(t, x, y).
[[nodiscard]] sym::Expr manufactured_source(const sym::Expr& exact, const lie::FSpec& f);

/// Leapfrog u^{n+1} = 2u^n - u^{n-1} + dt^2 RHS(u^n). Keeps three levels so
/// monitors can take centred time differences at the middle one.
class Solver {
public:
    /// dt <= grid.max_dt() is enforced (ConfigError otherwise). Rows are split
    /// into `threads` contiguous blocks; results do not depend on the split.
    Solver(Grid grid, Problem problem, double dt, unsigned threads = 1);

    /// u(0) = u0(x, y), u_t(0) = v0(x, y); the first step uses the Taylor start
    /// u^1 = u^0 + dt v0 + dt^2/2 RHS(u^0).
    void initialize(const sym::Expr& u0, const sym::Expr& v0);
    /// Both starting levels sampled from an analytic u(t, x, y).
    void initialize_exact(const sym::Expr& u);

    void step();
    /// Swap the two newest levels and reverse the time direction.
    void reverse();

    /// Discrete u_xx + cot x u_x + u_yy / sin^2 x at interior nodes (ghosts must be set).
    [[nodiscard]] Field spatial_operator(const Field& u) const;

    [[nodiscard]] const Grid& grid() const { return grid_; }
    [[nodiscard]] double dt() const { return dt_; }
    /// time of the newest level
    [[nodiscard]] double time() const { return t_; }
    [[nodiscard]] std::size_t steps() const { return steps_; }
    [[nodiscard]] const Field& newest() const { return cur_; }
    [[nodiscard]] const Field& middle() const { return prev_; }
    [[nodiscard]] const Field& oldest() const { return older_; }
    /// true once three levels exist
    [[nodiscard]] bool has_middle() const { return levels_ >= 3; }

    /// Field sampled from u(t, x, y) at time t, ghosts included.
    [[nodiscard]] Field sample(const sym::Expr& u, double t) const;
    [[nodiscard]] const Problem& problem() const { return problem_; }

private:
    void fill_ghosts(Field& u, double t) const;
    void check_finite(const Field& u) const;
    template <class RowFn>
    void for_rows(RowFn fn) const;

    Grid grid_;
    Problem problem_;
    double dt_;
    unsigned threads_;
    TxyFunction f_, source_, exact_;
    Field older_, prev_, cur_;
    double t_ = 0.0;
    std::size_t steps_ = 0;
    int levels_ = 0;
};

}  // namespace s2kg::num
