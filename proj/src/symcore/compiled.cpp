#include "s2kg/symcore/compiled.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace s2kg::sym {

CompiledExpr::CompiledExpr(const Expr& e, std::vector<Expr> slots) : slots_(std::move(slots)) {
    const Expr canon = simplify(e);
    if (canon.is_zero()) return;
    emit(canon);
    int depth = 0;
    for (const auto& op : program_) {
        switch (op.code) {
            case Code::Const:
            case Code::Slot: ++depth; break;
            case Code::Add:
            case Code::Mul: depth -= op.arg - 1; break;
            default: break;
        }
        max_depth_ = std::max(max_depth_, depth);
    }
}

void CompiledExpr::emit(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number: program_.push_back({Code::Const, 0, e.number().to_double()}); return;
        case Kind::Coord:
        case Kind::Jet:
        case Kind::Func:
        case Kind::Param: {
            const auto it = std::find(slots_.begin(), slots_.end(), e);
            if (it == slots_.end()) {
                if (e.kind() == Kind::Param && e.name() == "pi") {
                    program_.push_back({Code::Const, 0, std::numbers::pi});
                    return;
                }
                throw UnboundAtomError(e);
            }
            program_.push_back({Code::Slot, static_cast<int>(it - slots_.begin()), 0.0});
            return;
        }
        case Kind::Sin:
        case Kind::Cos:
        case Kind::Ln:
            emit(e.children()[0]);
            program_.push_back({e.kind() == Kind::Sin ? Code::Sin : e.kind() == Kind::Cos ? Code::Cos : Code::Ln, 0, 0.0});
            return;
        case Kind::Power:
            emit(e.children()[0]);
            program_.push_back({Code::Pow, e.exponent(), 0.0});
            return;
        case Kind::Product:
        case Kind::Sum:
            for (const auto& c : e.children()) emit(c);
            program_.push_back({e.kind() == Kind::Sum ? Code::Add : Code::Mul, static_cast<int>(e.children().size()), 0.0});
            return;
    }
}

double CompiledExpr::operator()(std::span<const double> values) const {
    if (program_.empty()) return 0.0;
    std::array<double, 64> small{};
    std::vector<double> big;
    double* stack = small.data();
    if (max_depth_ > static_cast<int>(small.size())) {
        big.resize(static_cast<std::size_t>(max_depth_));
        stack = big.data();
    }
    int top = 0;
    for (const auto& op : program_) {
        switch (op.code) {
            case Code::Const: stack[top++] = op.value; break;
            case Code::Slot: stack[top++] = values[static_cast<std::size_t>(op.arg)]; break;
            case Code::Add: {
                double s = 0.0;
                for (int i = 0; i < op.arg; ++i) s += stack[top - op.arg + i];
                top -= op.arg - 1;
                stack[top - 1] = s;
                break;
            }
            case Code::Mul: {
                double p = 1.0;
                for (int i = 0; i < op.arg; ++i) p *= stack[top - op.arg + i];
                top -= op.arg - 1;
                stack[top - 1] = p;
                break;
            }
            case Code::Pow: {
                const double b = stack[top - 1];
                double r = 1.0;
                const int n = op.arg < 0 ? -op.arg : op.arg;
                for (int i = 0; i < n; ++i) r *= b;
                stack[top - 1] = op.arg < 0 ? 1.0 / r : r;
                break;
            }
            case Code::Sin: stack[top - 1] = std::sin(stack[top - 1]); break;
            case Code::Cos: stack[top - 1] = std::cos(stack[top - 1]); break;
            case Code::Ln: stack[top - 1] = std::log(stack[top - 1]); break;
        }
    }
    return stack[0];
}

}  // namespace s2kg::sym
