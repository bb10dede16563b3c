#include "s2kg/symcore/linear.hpp"

#include <algorithm>
#include <map>

namespace s2kg::sym {

namespace {

using Row = std::vector<Expr>;

int pivot_score(const Expr& e) {
    if (e.is_zero()) return 3;
    if (e.is_number()) return 0;
    return e.kind() == Kind::Sum ? 2 : 1;
}

void add_unique(std::vector<std::string>& v, std::string s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
}

}  // namespace

LinearSolution solve_linear(const std::vector<std::vector<Expr>>& columns, const std::vector<Expr>& rhs,
                            const std::function<bool(const Expr&)>& is_coefficient) {
    const std::size_t n = columns.size();
    const bool with_rhs = !rhs.empty();
    const std::size_t width = n + (with_rhs ? 1 : 0);
    auto split = [&](const Expr& a) { return !is_coefficient(a); };

    std::map<std::pair<std::size_t, Expr>, Row> keyed;
    auto scatter = [&](const std::vector<Expr>& comps, std::size_t col) {
        for (std::size_t c = 0; c < comps.size(); ++c) {
            for (const auto& [mono, coeff] : collect(comps[c], split)) {
                auto& row = keyed[{c, mono}];
                row.resize(width);
                row[col] = coeff;
            }
        }
    };
    for (std::size_t j = 0; j < n; ++j) scatter(columns[j], j);
    if (with_rhs) scatter(rhs, n);
    std::vector<Row> rows;
    rows.reserve(keyed.size());
    for (auto& [k, r] : keyed) rows.push_back(std::move(r));

    LinearSolution sol;
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
        std::size_t best = rows.size();
        int best_score = 3;
        for (std::size_t i = r; i < rows.size(); ++i) {
            const int s = pivot_score(rows[i][col]);
            if (s < best_score) {
                best = i;
                best_score = s;
            }
        }
        if (best == rows.size()) continue;
        std::swap(rows[r], rows[best]);
        const Expr p = rows[r][col];
        if (!p.is_number()) {
            // The pivot is generic: the column is nonzero unless every
            // candidate entry vanishes, so that is the condition recorded.
            std::vector<std::string> alts;
            for (std::size_t i = r; i < rows.size(); ++i) {
                if (rows[i][col].is_zero()) continue;
                std::string s = rows[i][col].str();
                if (std::find(alts.begin(), alts.end(), s) == alts.end()) alts.push_back(std::move(s));
            }
            if (alts.size() == 1) {
                add_unique(sol.assumptions, alts.front() + " != 0");
            } else {
                std::string joined;
                for (const auto& s : alts) joined += (joined.empty() ? "" : ", ") + s;
                add_unique(sol.assumptions, "(" + joined + ") not all 0");
            }
        }
        for (auto& e : rows[r]) {
            if (!e.is_zero()) e = e / p;
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col].is_zero()) continue;
            const Expr factor = rows[i][col];
            for (std::size_t j = 0; j < width; ++j) {
                if (!rows[r][j].is_zero()) rows[i][j] -= factor * rows[r][j];
            }
        }
        pivot_cols.push_back(col);
        ++r;
    }
    sol.rank = pivot_cols.size();
    if (!with_rhs) return sol;

    bool consistent = true;
    for (std::size_t i = sol.rank; i < rows.size(); ++i) {
        const Expr& res = rows[i][n];
        if (res.is_zero()) continue;
        if (res.is_number()) consistent = false;
        else sol.conditions.push_back(res);
    }
    if (!consistent) {
        sol.conditions.clear();
        return sol;
    }
    if (!sol.conditions.empty()) return sol;
    std::vector<Expr> x(n);
    for (std::size_t i = 0; i < sol.rank; ++i) x[pivot_cols[i]] = rows[i][n];
    sol.x = std::move(x);
    return sol;
}

}  // namespace s2kg::sym
