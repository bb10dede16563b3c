#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "s2kg/symcore/rational.hpp"

namespace s2kg::sym {

/// Independent variables of the jet space, in the fixed order (t, x, y).
enum class Coord : std::uint8_t { t = 0, x = 1, y = 2 };

inline constexpr std::array<Coord, 3> kAllCoords{Coord::t, Coord::x, Coord::y};

[[nodiscard]] char coord_letter(Coord c) noexcept;
[[nodiscard]] inline int index_of(Coord c) noexcept { return static_cast<int>(c); }

/// Derivative counts of a field atom over (t, x, y); mixed partials commute,
/// so a count vector is the sorted multi-index.
using JetIndex = std::array<std::uint8_t, 3>;

/// Derivative counts of an opaque function over (t, x, y, u).
using FuncIndex = std::array<std::uint8_t, 4>;

/// Dependency mask of an opaque function: bit i set for coordinate i, bit 3 for u.
using DepMask = std::uint8_t;
inline constexpr DepMask kDepT = 1;
inline constexpr DepMask kDepX = 2;
inline constexpr DepMask kDepY = 4;
inline constexpr DepMask kDepU = 8;
inline constexpr DepMask kDepCoords = kDepT | kDepX | kDepY;
inline constexpr DepMask kDepPoint = kDepCoords | kDepU;

enum class Kind : std::uint8_t {
    Number,   // exact rational constant
    Coord,    // t, x, y
    Jet,      // field derivative u_{tx...}
    Func,     // opaque function such as f(u), F(u), b(t,x,y) with formal derivatives
    Param,    // named constant (c, k, a, pi, ...)
    Sin,
    Cos,
    Ln,
    Power,    // base ^ integer exponent
    Product,
    Sum,
};

struct Node;

/// Immutable symbolic expression.
///
/// Values returned by the arithmetic operators and by every free function in
/// this header are canonical: a sum of monomials, each monomial a rational
/// coefficient times atoms raised to nonzero integer powers, atoms sorted by
/// a fixed total order. cos(a)^k with k >= 2 is rewritten through
/// cos^2 = 1 - sin^2, so trigonometric polynomials have a unique form.
/// The raw_* builders produce unsimplified trees; simplify() canonicalizes.
class Expr {
public:
    Expr();
    Expr(Rational r);     // NOLINT(implicit)
    Expr(std::int64_t n); // NOLINT(implicit)
    Expr(int n);          // NOLINT(implicit)

    static Expr coord(Coord c);
    static Expr jet(const std::string& field, JetIndex idx = {});
    static Expr func(const std::string& name, DepMask deps, FuncIndex idx = {});
    static Expr param(const std::string& name);

    static Expr sin(const Expr& arg);
    static Expr cos(const Expr& arg);
    static Expr ln(const Expr& arg);
    static Expr pow(const Expr& base, int exponent);

    static Expr raw_sum(std::vector<Expr> terms);
    static Expr raw_product(std::vector<Expr> factors);
    static Expr raw_pow(const Expr& base, int exponent);
    static Expr raw_sin(const Expr& arg);
    static Expr raw_cos(const Expr& arg);
    static Expr raw_ln(const Expr& arg);

    [[nodiscard]] Kind kind() const noexcept;
    [[nodiscard]] bool is_number() const noexcept { return kind() == Kind::Number; }
    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] bool is_one() const noexcept;
    /// Leaf symbols and function applications (sin/cos/ln) count as atoms.
    [[nodiscard]] bool is_atom() const noexcept;
    [[nodiscard]] bool is_leaf() const noexcept;
    [[nodiscard]] bool is_canonical() const noexcept;

    [[nodiscard]] const Rational& number() const;
    [[nodiscard]] Coord coord_id() const;
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] JetIndex jet_index() const;
    [[nodiscard]] FuncIndex func_index() const;
    [[nodiscard]] DepMask deps() const;
    [[nodiscard]] int exponent() const;
    [[nodiscard]] std::span<const Expr> children() const;
    [[nodiscard]] std::size_t hash() const noexcept;

    /// Plain infix; parse(e.str()) == e for canonical e.
    [[nodiscard]] std::string str() const;
    [[nodiscard]] std::string latex() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    /// Exact division; throws std::domain_error when dividing by literal zero.
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }

    /// Structural equality; for canonical operands this is mathematical
    /// equality within the sin/cos rule set.
    friend bool operator==(const Expr& a, const Expr& b) noexcept;
    friend std::strong_ordering operator<=>(const Expr& a, const Expr& b) noexcept;

    [[nodiscard]] const Node& node() const noexcept { return *node_; }
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

private:
    std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Expr& e);

struct ExprHash {
    std::size_t operator()(const Expr& e) const noexcept { return e.hash(); }
};

/// Common atoms of the toolkit.
[[nodiscard]] Expr t_();
[[nodiscard]] Expr x_();
[[nodiscard]] Expr y_();
/// The dependent field u and its derivatives: u_("tx") is u_tx.
[[nodiscard]] Expr u_(const std::string& derivs = "");
[[nodiscard]] JetIndex jet_index_from(const std::string& derivs);

/// Map from atoms to replacement expressions. Substitution is simultaneous.
using Bindings = std::map<Expr, Expr>;
/// Map from leaf atoms to numeric values.
using NumericBindings = std::map<Expr, double>;

/// Canonical form of an arbitrary tree. Idempotent.
[[nodiscard]] Expr simplify(const Expr& e);

/// Total derivative D_v: field and function atoms chain through the jet
/// (D_x u_t = u_tx, D_x f(u) = f_u(u) u_x).
[[nodiscard]] Expr diff(const Expr& e, Coord v);

/// Partial derivative with respect to an independent atom (a coordinate, a
/// jet atom, or a parameter), all other atoms held fixed. Opaque functions
/// differentiate formally in their declared dependencies, where the jet atom
/// u (no derivatives) stands for the u slot.
[[nodiscard]] Expr partial(const Expr& e, const Expr& var);

/// Simultaneous replacement of atoms, followed by simplification.
[[nodiscard]] Expr substitute(const Expr& e, const Bindings& b);

/// Replace every occurrence of the opaque function `name` and its formal
/// derivatives by `value` and the matching partial derivatives of `value`.
[[nodiscard]] Expr instantiate_function(const Expr& e, const std::string& name,
                                        const Expr& value);

/// IEEE evaluation. Throws UnboundAtomError / SingularEvaluationError.
[[nodiscard]] double eval_numeric(const Expr& e, const NumericBindings& point);

/// Leaf atoms (coordinates, jets, functions, parameters) occurring anywhere
/// in e, including inside function arguments.
[[nodiscard]] std::vector<Expr> leaf_atoms(const Expr& e);

/// True if any leaf atom satisfies pred.
[[nodiscard]] bool depends_on(const Expr& e, const std::function<bool(const Expr&)>& pred);
[[nodiscard]] bool depends_on(const Expr& e, const Expr& atom);

/// One canonical term: coefficient times a product of atom powers.
struct Term {
    Rational coeff;
    std::vector<std::pair<Expr, int>> factors;
};

/// Terms of a canonical expression, in canonical order.
[[nodiscard]] std::vector<Term> terms_of(const Expr& e);
[[nodiscard]] Expr from_term(const Term& t);

/// Groups the terms of e by the product of the factors selected by `select`.
/// Each entry maps that selected monomial (as Expr, 1 for none) to its
/// coefficient (the remaining factors). Deterministic order.
[[nodiscard]] std::vector<std::pair<Expr, Expr>> collect(
    const Expr& e, const std::function<bool(const Expr& atom)>& select);

class UnboundAtomError : public std::runtime_error {
public:
    explicit UnboundAtomError(const Expr& atom);
    [[nodiscard]] const Expr& atom() const noexcept { return atom_; }

private:
    Expr atom_;
};

class SingularEvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace s2kg::sym

template <>
struct std::hash<s2kg::sym::Expr> {
    std::size_t operator()(const s2kg::sym::Expr& e) const noexcept { return e.hash(); }
};
