#include <sstream>

#include "node.hpp"

namespace s2kg::sym {

namespace {

std::string deriv_letters(const Expr& e) {
    static constexpr char kLetters[] = {'t', 'x', 'y', 'u'};
    std::string s;
    const FuncIndex idx = e.func_index();
    const std::size_t slots = e.kind() == Kind::Jet ? 3 : 4;
    for (std::size_t i = 0; i < slots; ++i) s.append(idx[i], kLetters[i]);
    return s;
}

bool is_function_of_u_only(const Expr& e) { return e.deps() == kDepU; }

// A term prints with a leading minus when its coefficient is negative.
bool negative_term(const Expr& e) {
    if (e.kind() == Kind::Number) return e.number().is_negative();
    if (e.kind() == Kind::Product && !e.children().empty() && e.children()[0].kind() == Kind::Number) {
        return e.children()[0].number().is_negative();
    }
    return false;
}

Expr negate_term(const Expr& e) {
    if (e.kind() == Kind::Number) return Expr(-e.number());
    std::vector<Expr> fs(e.children().begin(), e.children().end());
    const Rational c = -fs[0].number();
    if (c.is_one()) {
        fs.erase(fs.begin());
    } else {
        fs[0] = Expr(c);
    }
    if (fs.size() == 1) return fs[0];
    Node n = e.node();
    n.children = std::move(fs);
    return Expr(finish(std::move(n)));
}

class Printer {
public:
    explicit Printer(bool latex) : latex_(latex) {}

    std::string print(const Expr& e) {
        const Node& n = e.node();
        switch (n.kind) {
            case Kind::Number: return number(n.number);
            case Kind::Coord: return std::string(1, coord_letter(n.coord));
            case Kind::Param: return latex_ && n.name == "pi" ? "\\pi" : n.name;
            case Kind::Jet: {
                const std::string d = deriv_letters(e);
                if (d.empty()) return n.name;
                return latex_ ? n.name + "_{" + d + "}" : n.name + "_" + d;
            }
            case Kind::Func: {
                const std::string d = deriv_letters(e);
                std::string s = n.name;
                if (!d.empty()) s += latex_ ? "_{" + d + "}" : "_" + d;
                if (is_function_of_u_only(e)) s += "(u)";
                return s;
            }
            case Kind::Sin: return fn("sin", n.children[0]);
            case Kind::Cos: return fn("cos", n.children[0]);
            case Kind::Ln: return fn(latex_ ? "ln" : "ln", n.children[0]);
            case Kind::Power: {
                const Expr& base = n.children[0];
                std::string b = print(base);
                if (needs_parens_as_base(base)) b = (latex_ ? "\\left(" : "(") + b + (latex_ ? "\\right)" : ")");
                if (latex_) return b + "^{" + std::to_string(n.exponent) + "}";
                return b + "^" + std::to_string(n.exponent);
            }
            case Kind::Product: return product(e);
            case Kind::Sum: return sum(e);
        }
        return {};
    }

private:
    bool latex_;

    std::string number(const Rational& r) const {
        if (!latex_ || r.is_integer()) return r.str();
        const std::string sign = r.is_negative() ? "-" : "";
        return sign + "\\frac{" + std::to_string(std::abs(r.num())) + "}{" + std::to_string(r.den()) + "}";
    }

    std::string fn(const char* name, const Expr& arg) {
        if (latex_) return std::string("\\") + name + "\\left(" + print(arg) + "\\right)";
        return std::string(name) + "(" + print(arg) + ")";
    }

    static bool needs_parens_as_base(const Expr& b) {
        switch (b.kind()) {
            case Kind::Sum:
            case Kind::Product:
            case Kind::Power: return true;
            case Kind::Number: return b.number().is_negative() || !b.number().is_integer();
            default: return false;
        }
    }

    std::string product(const Expr& e) {
        std::string out;
        bool first = true;
        const auto kids = e.children();
        std::size_t start = 0;
        if (!kids.empty() && kids[0].kind() == Kind::Number && kids.size() > 1) {
            const Rational& c = kids[0].number();
            if (c == Rational(-1)) {
                out = "-";
                start = 1;
            } else if (c.is_one()) {
                start = 1;
            }
        }
        for (std::size_t i = start; i < kids.size(); ++i) {
            std::string s = print(kids[i]);
            const bool wrap = kids[i].kind() == Kind::Sum ||
                              (i > start && kids[i].kind() == Kind::Number && kids[i].number().is_negative());
            if (wrap) s = (latex_ ? "\\left(" : "(") + s + (latex_ ? "\\right)" : ")");
            if (!first) out += latex_ ? " \\, " : "*";
            out += s;
            first = false;
        }
        return out;
    }

    std::string sum(const Expr& e) {
        std::string out;
        bool first = true;
        for (const auto& term : e.children()) {
            const bool neg = negative_term(term);
            if (first) {
                out += print(term);
            } else if (neg) {
                std::string s = print(negate_term(term));
                if (term.kind() == Kind::Sum) s = "(" + s + ")";
                out += " - " + s;
            } else {
                std::string s = print(term);
                if (term.kind() == Kind::Sum) s = "(" + s + ")";
                out += " + " + s;
            }
            first = false;
        }
        return out;
    }
};

}  // namespace

std::string Expr::str() const { return Printer(false).print(*this); }
std::string Expr::latex() const { return Printer(true).print(*this); }

}  // namespace s2kg::sym
