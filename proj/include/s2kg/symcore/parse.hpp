#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "s2kg/symcore/expr.hpp"

namespace s2kg::sym {

/// Names the parser resolves. Coordinates t, x, y and the functions
/// sin, cos, tan, cot, sec, csc, ln/log are always known.
struct SymbolTable {
    std::set<std::string> fields{"u", "v"};
    std::map<std::string, DepMask> functions{{"f", kDepU}, {"F", kDepU}, {"b", kDepCoords}};
    std::set<std::string> params{"a", "c", "k", "pi"};

    static const SymbolTable& defaults();
};

class ParseError : public std::runtime_error {
public:
    enum class Code { Syntax, UnknownIdentifier, NonIntegerExponent };

    ParseError(Code code, std::size_t offset, const std::string& message);

    [[nodiscard]] Code code() const noexcept { return code_; }
    /// Byte offset into the input where the problem was detected.
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    Code code_;
    std::size_t offset_;
};

/// Parses the documented infix grammar (docs/grammar.md) into a canonical Expr.
/// tan/cot/sec/csc are rewritten into sin/cos on the way in.
[[nodiscard]] Expr parse(std::string_view text, const SymbolTable& symbols = SymbolTable::defaults());

/// Same grammar, without the final canonicalization (for exercising simplify).
[[nodiscard]] Expr parse_raw(std::string_view text, const SymbolTable& symbols = SymbolTable::defaults());

}  // namespace s2kg::sym
