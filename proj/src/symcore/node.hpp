#pragma once

// Internal representation shared by the symcore translation units.

#include <map>
#include <vector>

#include "s2kg/symcore/expr.hpp"

namespace s2kg::sym {

struct Node {
    Kind kind = Kind::Number;
    bool canonical = false;
    Rational number;
    Coord coord = Coord::t;
    std::string name;
    FuncIndex index{};  // jets use the first three slots
    DepMask deps = 0;
    int exponent = 0;
    std::vector<Expr> children;
    std::size_t hash = 0;
};

std::shared_ptr<const Node> finish(Node n);

/// Fixed total order used for canonical sorting.
int compare(const Expr& a, const Expr& b) noexcept;

namespace detail {

struct Factor {
    Expr base;  // an atom, or a Sum (only with negative exponent)
    int exp = 1;
};

using Monomial = std::vector<Factor>;

int compare_monomials(const Monomial& a, const Monomial& b) noexcept;

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept {
        return compare_monomials(a, b) < 0;
    }
};

Monomial multiply(const Monomial& a, const Monomial& b);

/// Polynomial in atoms with rational coefficients, kept in normal form:
/// no cos(a)^k with k >= 2, no Sum base with positive exponent.
class Poly {
public:
    using Map = std::map<Monomial, Rational, MonomialLess>;

    Poly() = default;
    static Poly constant(const Rational& r);
    static Poly atom(const Expr& a, int exp = 1);

    void insert(Monomial m, const Rational& c);
    void add(const Poly& o, const Rational& scale = Rational(1));

    [[nodiscard]] Poly operator*(const Poly& o) const;
    [[nodiscard]] Poly scaled(const Rational& r) const;
    [[nodiscard]] Poly pow(int n) const;

    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] Rational constant_value() const;
    [[nodiscard]] const Map& terms() const { return terms_; }

private:
    Map terms_;
};

Poly to_poly(const Expr& e);
Expr to_expr(const Poly& p);
Expr monomial_expr(const Rational& c, const Monomial& m);

/// sin or cos of a canonical argument, fully expanded over sums and
/// integer multiples.
Poly trig_poly(const Poly& arg, bool is_sin);

using AtomDerivative = std::function<Poly(const Expr& atom)>;
Poly derive(const Poly& p, const AtomDerivative& d);

}  // namespace detail
}  // namespace s2kg::sym
