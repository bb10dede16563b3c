#include "s2kg/symcore/parse.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace s2kg::sym {

const SymbolTable& SymbolTable::defaults() {
    static const SymbolTable table;
    return table;
}

ParseError::ParseError(Code code, std::size_t offset, const std::string& message)
    : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"), code_(code), offset_(offset) {}

namespace {

class Parser {
public:
    Parser(std::string_view text, const SymbolTable& symbols) : text_(text), symbols_(symbols) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    std::string_view text_;
    const SymbolTable& symbols_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(ParseError::Code::Syntax, at, msg);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Expr expr() {
        std::vector<Expr> terms{term()};
        for (;;) {
            if (accept('+')) {
                terms.push_back(term());
            } else if (accept('-')) {
                terms.push_back(Expr::raw_product({Expr(-1), term()}));
            } else {
                break;
            }
        }
        return Expr::raw_sum(std::move(terms));
    }

    Expr term() {
        std::vector<Expr> factors{unary()};
        for (;;) {
            if (accept('*')) {
                factors.push_back(unary());
            } else if (accept('/')) {
                factors.push_back(Expr::raw_pow(unary(), -1));
            } else {
                break;
            }
        }
        return Expr::raw_product(std::move(factors));
    }

    Expr unary() {
        if (accept('-')) return Expr::raw_product({Expr(-1), unary()});
        if (accept('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        skip_ws();
        if (!accept('^')) return base;
        const std::size_t at = pos_;
        int sign = 1;
        if (accept('-')) {
            sign = -1;
        } else {
            accept('+');
        }
        Expr ex;
        skip_ws();
        if (accept('(')) {
            ex = simplify(expr());
            expect(')');
        } else {
            ex = number();
        }
        if (!ex.is_number() || !ex.number().is_integer()) {
            throw ParseError(ParseError::Code::NonIntegerExponent, at, "exponent must be an integer constant");
        }
        return Expr::raw_pow(base, sign * static_cast<int>(ex.number().num()));
    }

    Expr number() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
        if (start == pos_) fail("expected a number");
        try {
            return Expr(Rational::from_decimal(std::string(text_.substr(start, pos_ - start))));
        } catch (const std::invalid_argument&) {
            fail("malformed number", start);
        }
    }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (accept('(')) {
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            const std::string id = identifier();
            return resolve(id, start);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    Expr call_argument() {
        expect('(');
        Expr arg = expr();
        expect(')');
        return arg;
    }

    // Optional "(vars)" after an opaque function; the variables must be
    // exactly its dependencies, in any order.
    void function_arguments(const std::string& name, DepMask deps) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '(') return;
        const std::size_t at = pos_;
        ++pos_;
        DepMask seen = 0;
        for (;;) {
            const std::string v = identifier();
            DepMask bit = 0;
            if (v == "t") bit = kDepT;
            else if (v == "x") bit = kDepX;
            else if (v == "y") bit = kDepY;
            else if (v == "u") bit = kDepU;
            if (bit == 0 || (seen & bit)) fail("bad argument list for " + name, at);
            seen |= bit;
            if (accept(')')) break;
            expect(',');
        }
        if (seen != deps) fail("argument list of " + name + " does not match its dependencies", at);
    }

    Expr resolve(const std::string& id, std::size_t start) {
        if (id == "t") return t_();
        if (id == "x") return x_();
        if (id == "y") return y_();
        if (symbols_.params.contains(id)) return Expr::param(id);
        if (symbols_.fields.contains(id)) return Expr::jet(id);
        if (auto it = symbols_.functions.find(id); it != symbols_.functions.end()) {
            function_arguments(id, it->second);
            return Expr::func(id, it->second);
        }
        if (id == "sin") return Expr::raw_sin(call_argument());
        if (id == "cos") return Expr::raw_cos(call_argument());
        if (id == "ln" || id == "log") return Expr::raw_ln(call_argument());
        if (id == "tan" || id == "cot" || id == "sec" || id == "csc") {
            const Expr a = call_argument();
            if (id == "tan") return Expr::raw_product({Expr::raw_sin(a), Expr::raw_pow(Expr::raw_cos(a), -1)});
            if (id == "cot") return Expr::raw_product({Expr::raw_cos(a), Expr::raw_pow(Expr::raw_sin(a), -1)});
            if (id == "sec") return Expr::raw_pow(Expr::raw_cos(a), -1);
            return Expr::raw_pow(Expr::raw_sin(a), -1);
        }
        if (const auto us = id.find('_'); us != std::string::npos && us > 0 && us + 1 < id.size()) {
            const std::string head = id.substr(0, us);
            const std::string tail = id.substr(us + 1);
            if (symbols_.fields.contains(head) &&
                std::all_of(tail.begin(), tail.end(), [](char ch) { return ch == 't' || ch == 'x' || ch == 'y'; })) {
                return Expr::jet(head, jet_index_from(tail));
            }
            if (auto it = symbols_.functions.find(head); it != symbols_.functions.end()) {
                FuncIndex idx{};
                bool ok = true;
                for (char ch : tail) {
                    const std::size_t slot = ch == 't' ? 0 : ch == 'x' ? 1 : ch == 'y' ? 2 : ch == 'u' ? 3 : 4;
                    if (slot == 4 || !(it->second & (1u << slot))) {
                        ok = false;
                        break;
                    }
                    ++idx[slot];
                }
                if (ok) {
                    function_arguments(head, it->second);
                    return Expr::func(head, it->second, idx);
                }
            }
        }
        throw ParseError(ParseError::Code::UnknownIdentifier, start, "unknown identifier '" + id + "'");
    }
};

}  // namespace

Expr parse_raw(std::string_view text, const SymbolTable& symbols) { return Parser(text, symbols).run(); }

Expr parse(std::string_view text, const SymbolTable& symbols) { return simplify(parse_raw(text, symbols)); }

}  // namespace s2kg::sym
