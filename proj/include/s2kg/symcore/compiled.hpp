#pragma once

#include <span>
#include <vector>

#include "s2kg/symcore/expr.hpp"

namespace s2kg::sym {

/// Expression flattened to a postfix program over a fixed slot layout, for
/// evaluation in tight numerical loops. Slot i receives values[i].
class CompiledExpr {
public:
    CompiledExpr() = default;
    /// Throws UnboundAtomError if a leaf of `e` is not among `slots`
    /// (the parameter pi is built in).
    CompiledExpr(const Expr& e, std::vector<Expr> slots);

    [[nodiscard]] double operator()(std::span<const double> values) const;
    [[nodiscard]] const std::vector<Expr>& slots() const noexcept { return slots_; }
    [[nodiscard]] bool is_constant_zero() const noexcept { return program_.empty(); }

private:
    enum class Code : unsigned char { Const, Slot, Add, Mul, Pow, Sin, Cos, Ln };
    struct Op {
        Code code;
        int arg;
        double value;
    };

    void emit(const Expr& e);

    std::vector<Expr> slots_;
    std::vector<Op> program_;
    int max_depth_ = 0;
};

}  // namespace s2kg::sym
