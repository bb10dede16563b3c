#pragma once

// Hand-rolled generator of raw (unsimplified) expression trees for the
// property suites.

#include <random>
#include <vector>

#include "s2kg/symcore/expr.hpp"

namespace s2kg::testing {

class RandomExpr {
public:
    explicit RandomExpr(std::uint64_t seed) : rng_(seed) {}

    sym::Expr operator()(int depth = 3) { return node(depth); }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    sym::Expr leaf() {
        using namespace s2kg::sym;
        switch (pick(9)) {
            case 0: return x_();
            case 1: return y_();
            case 2: return t_();
            case 3: return u_();
            case 4: return u_("x");
            case 5: return u_("t");
            case 6: return Expr::param("c");
            case 7: return Expr::func("f", kDepU);
            default: return Expr(Rational(pick(7) - 3, pick(3) + 1));
        }
    }

    // Trig arguments stay within linear combinations of coordinates so the
    // rewrite rules see sums and integer multiples.
    sym::Expr angle() {
        using namespace s2kg::sym;
        const Expr base = pick(2) == 0 ? x_() : y_();
        switch (pick(4)) {
            case 0: return Expr::raw_product({Expr(2), base});
            case 1: return Expr::raw_sum({x_(), y_()});
            case 2: return Expr::raw_product({Expr(-1), base});
            default: return base;
        }
    }

    sym::Expr node(int depth) {
        using namespace s2kg::sym;
        if (depth <= 0) return leaf();
        switch (pick(7)) {
            case 0:
            case 1: {
                std::vector<Expr> kids;
                const int n = 2 + pick(2);
                for (int i = 0; i < n; ++i) kids.push_back(node(depth - 1));
                return Expr::raw_sum(std::move(kids));
            }
            case 2:
            case 3: {
                std::vector<Expr> kids;
                const int n = 2 + pick(2);
                for (int i = 0; i < n; ++i) kids.push_back(node(depth - 1));
                return Expr::raw_product(std::move(kids));
            }
            case 4: {
                // Negative powers only of trig atoms so evaluation stays finite
                // on the probing domain of x.
                const int e = pick(4) - 1;
                if (e < 0) return Expr::raw_pow(Expr::raw_sin(x_()), e - pick(2));
                return Expr::raw_pow(node(depth - 1), e + 1);
            }
            case 5: return pick(2) == 0 ? Expr::raw_sin(angle()) : Expr::raw_cos(angle());
            default: return leaf();
        }
    }
};

}  // namespace s2kg::testing
