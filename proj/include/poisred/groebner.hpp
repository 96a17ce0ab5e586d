#pragma once

#include "poisred/superfn.hpp"

#include <vector>

namespace poisred {

/// Graded reverse lexicographic order with x1 > x2 > ... > xn.
bool grevlexLess(const std::vector<int>& a, const std::vector<int>& b);

struct DivisionResult {
    std::vector<SuperFn> quotients; // one per basis element
    SuperFn remainder;
};

/// Reduced Groebner basis of an ideal of even polynomials under grevlex,
/// computed by Buchberger completion. Each basis element carries its
/// representation in terms of the original generators, so ideal-membership
/// certificates can be expanded back onto the input.
class GroebnerBasis {
public:
    static GroebnerBasis compute(ChartPtr chart, const std::vector<SuperFn>& gens);

    const ChartPtr& chart() const { return chart_; }
    const std::vector<SuperFn>& generators() const { return gens_; }
    const std::vector<SuperFn>& basis() const { return basis_; }
    /// basis()[k] == sum_i representations()[k][i] * generators()[i], exactly.
    const std::vector<std::vector<SuperFn>>& representations() const { return reps_; }

    /// Full division of f (any odd degree; even parts of terms are reduced,
    /// odd factors ride along): f == sum quotients[k]*basis[k] + remainder,
    /// no remainder term divisible by a leading monomial.
    DivisionResult divide(const SuperFn& f) const;

    /// Unique normal form modulo the even ideal.
    SuperFn normalForm(const SuperFn& f) const;

    /// Expands division quotients into cofactors on the original generators.
    std::vector<SuperFn> cofactorsOnGenerators(const DivisionResult& d) const;

private:
    ChartPtr chart_;
    std::vector<SuperFn> gens_;
    std::vector<SuperFn> basis_;
    std::vector<std::vector<SuperFn>> reps_;
    std::vector<Monomial> leading_; // leading monomial per basis element
};

/// Leading monomial of a nonzero even polynomial under grevlex.
Monomial leadingMonomial(const SuperFn& f);

} // namespace poisred
