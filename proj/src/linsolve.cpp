#include "poisred/linsolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace poisred {

int matrixRank(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    int rank = 0;
    std::size_t pivotRow = 0;
    for (std::size_t c = 0; c < cols && pivotRow < rows.size(); ++c) {
        std::size_t sel = pivotRow;
        while (sel < rows.size() && isZero(rows[sel][c])) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[pivotRow]);
        Rational inv = 1 / rows[pivotRow][c];
        for (std::size_t k = c; k < cols; ++k) rows[pivotRow][k] *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivotRow || isZero(rows[r][c])) continue;
            Rational f = rows[r][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[pivotRow][k];
        }
        ++pivotRow;
        ++rank;
    }
    return rank;
}

bool inSpan(const std::vector<std::vector<Rational>>& span, const std::vector<Rational>& v) {
    bool allZero = std::all_of(v.begin(), v.end(), [](const Rational& r) { return isZero(r); });
    if (allZero) return true;
    std::vector<std::vector<Rational>> m = span;
    int r0 = matrixRank(m);
    m.push_back(v);
    return matrixRank(m) == r0;
}

void LinearSystem::addEquation(std::map<int, Rational> coeffs, Rational rhs) {
    if (solved_) throw std::logic_error("system already solved");
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        if (it->first < 0 || it->first >= cols_) throw std::out_of_range("unknown index");
        it = isZero(it->second) ? coeffs.erase(it) : std::next(it);
    }
    rows_.push_back(Row{std::move(coeffs), std::move(rhs)});
}

bool LinearSystem::solve() {
    solved_ = true;
    bool consistent = true;
    std::vector<Row> pending = std::move(rows_);
    rows_.clear();
    while (true) {
        // next pivot: pending row with the smallest leading column
        std::size_t best = pending.size();
        for (std::size_t r = 0; r < pending.size(); ++r) {
            if (pending[r].a.empty()) continue;
            if (best == pending.size() ||
                pending[r].a.begin()->first < pending[best].a.begin()->first)
                best = r;
        }
        if (best == pending.size()) break;
        Row row = std::move(pending[best]);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
        int col = row.a.begin()->first;
        Rational inv = 1 / row.a.begin()->second;
        for (auto& [c, v] : row.a) v *= inv;
        row.b *= inv;
        auto eliminate = [&](Row& target) {
            auto hit = target.a.find(col);
            if (hit == target.a.end()) return;
            Rational f = hit->second;
            for (const auto& [c, v] : row.a) {
                auto it = target.a.find(c);
                if (it == target.a.end()) {
                    target.a.emplace(c, -f * v);
                } else {
                    it->second -= f * v;
                    if (isZero(it->second)) target.a.erase(it);
                }
            }
            target.b -= f * row.b;
        };
        for (auto& p : pending) eliminate(p);
        for (auto& [c, prow] : pivots_) eliminate(prow);
        pivots_.emplace_back(col, std::move(row));
    }
    for (const auto& r : pending)
        if (r.a.empty() && !isZero(r.b)) consistent = false;
    return consistent;
}

std::vector<Rational> LinearSystem::particular() const {
    std::vector<Rational> x(static_cast<std::size_t>(cols_), Rational(0));
    for (const auto& [col, row] : pivots_) x[static_cast<std::size_t>(col)] = row.b;
    return x;
}

std::vector<std::vector<Rational>> LinearSystem::nullspace() const {
    std::vector<bool> isPivot(static_cast<std::size_t>(cols_), false);
    for (const auto& [col, row] : pivots_) isPivot[static_cast<std::size_t>(col)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int freeCol = 0; freeCol < cols_; ++freeCol) {
        if (isPivot[static_cast<std::size_t>(freeCol)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(cols_), Rational(0));
        v[static_cast<std::size_t>(freeCol)] = 1;
        for (const auto& [col, row] : pivots_) {
            auto it = row.a.find(freeCol);
            if (it != row.a.end()) v[static_cast<std::size_t>(col)] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace poisred
