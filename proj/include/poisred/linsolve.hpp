#pragma once

#include "poisred/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace poisred {

/// Rank of a dense rational matrix (rows of equal length).
int matrixRank(std::vector<std::vector<Rational>> rows);

/// Is v a linear combination of the span rows? Exact.
bool inSpan(const std::vector<std::vector<Rational>>& span, const std::vector<Rational>& v);

/// Sparse exact linear system A x = b over the rationals.
class LinearSystem {
public:
    explicit LinearSystem(int numUnknowns) : cols_(numUnknowns) {}

    void addEquation(std::map<int, Rational> coeffs, Rational rhs);

    /// Gauss-Jordan elimination; false iff inconsistent.
    bool solve();

    /// A solution with all free unknowns set to zero (solve() must have
    /// returned true).
    std::vector<Rational> particular() const;

    /// Basis of the homogeneous solution space.
    std::vector<std::vector<Rational>> nullspace() const;

    int unknownCount() const { return cols_; }

private:
    struct Row {
        std::map<int, Rational> a;
        Rational b = 0;
    };
    int cols_;
    std::vector<Row> rows_;
    std::vector<std::pair<int, Row>> pivots_; // (column, reduced row)
    bool solved_ = false;
};

} // namespace poisred
