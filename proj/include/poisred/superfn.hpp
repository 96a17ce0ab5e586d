#pragma once

#include "poisred/chart.hpp"
#include "poisred/rational.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace poisred {

/// Monomial x^a * xi_{j1}...xi_{jk}: dense even exponent vector plus the odd
/// index set as a bitmask (indices 0-based, ascending; xi_j^2 = 0).
struct Monomial {
    std::vector<int> xexp;
    std::uint64_t xi = 0;

    int evenDegree() const;
    int oddDegree() const { return std::popcount(xi); }
    std::vector<int> xiIndices() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical storage/rendering order: total even degree descending, then even
/// exponent vector lexicographically descending, then odd index list
/// lexicographically ascending.
struct TermOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sign of sorting the concatenation of two disjoint ascending odd index
/// sets; 0 if they overlap (xi_j^2 = 0).
int mergeSign(std::uint64_t a, std::uint64_t b);

/// Graded polynomial in the coordinates of a chart: a finite set of terms
/// with nonzero rational coefficients, keyed by monomial. Immutable in
/// practice: all operations return fresh values.
class SuperFn {
public:
    using TermMap = std::map<Monomial, Rational, TermOrder>;

    SuperFn() = default; // empty chart; only useful as a placeholder
    static SuperFn zero(ChartPtr chart);
    static SuperFn constant(ChartPtr chart, const Rational& c);
    static SuperFn coordinate(ChartPtr chart, int i);    // x_{i+1}
    static SuperFn oddCoordinate(ChartPtr chart, int j); // xi_{j+1}
    static SuperFn monomialTerm(ChartPtr chart, const Monomial& m, const Rational& c);

    const ChartPtr& chart() const { return chart_; }
    int n() const;
    const TermMap& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }

    /// True iff every term has odd degree k (true for the zero function).
    bool isHomogeneous(int k) const;
    /// Odd degree of a nonzero homogeneous value; 0 for zero.
    int oddDegree() const;
    int maxEvenDegree() const;
    /// Terms of odd degree k only.
    SuperFn component(int k) const;
    /// Even-polynomial coefficient of the odd monomial given by mask.
    SuperFn evenCoefficient(std::uint64_t mask) const;
    /// Distinct odd masks present, ascending by popcount then value.
    std::vector<std::uint64_t> xiMasks() const;

    void addTerm(const Monomial& m, const Rational& c);

    SuperFn operator-() const;
    SuperFn& operator+=(const SuperFn& rhs);
    SuperFn& operator-=(const SuperFn& rhs);
    friend SuperFn operator+(SuperFn lhs, const SuperFn& rhs) { return lhs += rhs; }
    friend SuperFn operator-(SuperFn lhs, const SuperFn& rhs) { return lhs -= rhs; }
    friend SuperFn operator*(const SuperFn& lhs, const SuperFn& rhs);
    friend SuperFn operator*(const Rational& c, const SuperFn& f);
    friend bool operator==(const SuperFn& a, const SuperFn& b);

    /// Canonical textual rendering, e.g. "2/3*x1^2*xi1*xi3 - x2".
    std::string str() const;

private:
    explicit SuperFn(ChartPtr chart) : chart_(std::move(chart)) {}
    void requireCompatible(const SuperFn& other) const;

    ChartPtr chart_;
    TermMap terms_;
};

SuperFn partialEven(const SuperFn& f, int i);
SuperFn partialOdd(const SuperFn& f, int j);
SuperFn evalEven(const SuperFn& f, const std::vector<Rational>& point);
SuperFn pow(const SuperFn& f, int k);

/// Constant term of a degree-0 SuperFn evaluated at a point, as a plain
/// rational (requires the value to have no odd part).
Rational evalScalar(const SuperFn& f, const std::vector<Rational>& point);

} // namespace poisred
