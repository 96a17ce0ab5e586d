#pragma once

#include "poisred/superfn.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace test_support {

using namespace poisred;

/// Deterministic random graded polynomials for property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    int intIn(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(rng);
    }

    Rational coeff() {
        int num = 0;
        while (num == 0) num = intIn(-4, 4);
        return ratio(num, intIn(1, 3));
    }

    Monomial monomial(int n, int oddDeg, int maxEvenDeg) {
        oddDeg = std::min(oddDeg, n);
        Monomial m;
        m.xexp.assign(static_cast<std::size_t>(n), 0);
        int budget = maxEvenDeg;
        for (int i = 0; i < n && budget > 0; ++i) {
            int e = intIn(0, budget);
            m.xexp[static_cast<std::size_t>(i)] = e;
            budget -= e;
        }
        std::vector<int> indices(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) indices[static_cast<std::size_t>(i)] = i;
        std::shuffle(indices.begin(), indices.end(), rng);
        for (int k = 0; k < oddDeg; ++k) m.xi |= std::uint64_t{1} << indices[static_cast<std::size_t>(k)];
        return m;
    }

    SuperFn homogeneous(ChartPtr chart, int oddDeg, int maxEvenDeg, int maxTerms) {
        SuperFn f = SuperFn::zero(chart);
        int terms = intIn(1, maxTerms);
        for (int t = 0; t < terms; ++t)
            f.addTerm(monomial(chart->dim(), oddDeg, maxEvenDeg), coeff());
        return f;
    }

    SuperFn any(ChartPtr chart, int maxOddDeg, int maxEvenDeg, int maxTerms) {
        SuperFn f = SuperFn::zero(chart);
        int terms = intIn(1, maxTerms);
        for (int t = 0; t < terms; ++t)
            f.addTerm(monomial(chart->dim(), intIn(0, maxOddDeg), maxEvenDeg), coeff());
        return f;
    }
};

} // namespace test_support
