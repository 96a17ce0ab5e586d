#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include "poisred/brackets.hpp"

#include <algorithm>

using namespace poisred;
using test_support::Gen;

namespace {

SuperFn x(ChartPtr c, int i) { return SuperFn::coordinate(c, i - 1); }
SuperFn xi(ChartPtr c, int j) { return SuperFn::oddCoordinate(c, j - 1); }

SuperFn so3Bivector(ChartPtr c) {
    return x(c, 3) * xi(c, 1) * xi(c, 2) + x(c, 1) * xi(c, 2) * xi(c, 3) +
           x(c, 2) * xi(c, 3) * xi(c, 1);
}

} // namespace

TEST_CASE("generator brackets") {
    for (int n = 1; n <= 5; ++n) {
        ChartPtr c = Chart::standard(n);
        for (int j = 1; j <= n; ++j) {
            for (int k = 1; k <= n; ++k) {
                SuperFn lhs = poissonBracket(xi(c, j), x(c, k));
                if (j == k)
                    CHECK(lhs == SuperFn::constant(c, 1));
                else
                    CHECK(lhs.isZero());
                CHECK(poissonBracket(x(c, j), x(c, k)).isZero());
                CHECK(poissonBracket(xi(c, j), xi(c, k)).isZero());
            }
        }
    }
}

TEST_CASE("bracket examples") {
    ChartPtr c = Chart::standard(2);
    CHECK(poissonBracket(x(c, 1) * xi(c, 2), x(c, 2)) == x(c, 1));
    // pinned by axioms (a) and (c): the global convention yields +xi1
    CHECK(poissonBracket(xi(c, 1) * xi(c, 2), x(c, 2)) == xi(c, 1));
}

TEST_CASE("schouten oracle base cases") {
    ChartPtr c = Chart::standard(3);
    CHECK(schoutenDirect(x(c, 1) * xi(c, 2), x(c, 2)) == x(c, 1));
    CHECK(schoutenDirect(xi(c, 1), xi(c, 2)).isZero());
    SuperFn pi = so3Bivector(c);
    CHECK(schoutenDirect(pi, pi).isZero());
}

TEST_CASE("oracle equivalence on random multivectors") {
    Gen gen(101);
    int checked = 0;
    while (checked < 220) {
        int n = gen.intIn(1, 4);
        ChartPtr c = Chart::standard(n);
        int dp = gen.intIn(0, std::min(3, n));
        int dq = gen.intIn(0, std::min(3, n));
        SuperFn p = gen.homogeneous(c, dp, 2, 3);
        SuperFn q = gen.homogeneous(c, dq, 2, 3);
        CHECK(poissonBracket(p, q) == schoutenDirect(p, q));
        ++checked;
    }
}

TEST_CASE("graded antisymmetry") {
    Gen gen(103);
    for (int k = 0; k < 120; ++k) {
        int n = gen.intIn(2, 4);
        ChartPtr c = Chart::standard(n);
        int dp = gen.intIn(0, std::min(3, n)), dq = gen.intIn(0, std::min(3, n));
        SuperFn p = gen.homogeneous(c, dp, 2, 3);
        SuperFn q = gen.homogeneous(c, dq, 2, 3);
        SuperFn lhs = poissonBracket(p, q);
        SuperFn rhs = poissonBracket(q, p);
        if (((dp - 1) * (dq - 1)) % 2 == 0)
            CHECK(lhs == -rhs);
        else
            CHECK(lhs == rhs);
    }
}

TEST_CASE("graded Leibniz in the second slot") {
    Gen gen(107);
    for (int k = 0; k < 120; ++k) {
        int n = gen.intIn(2, 4);
        ChartPtr c = Chart::standard(n);
        int dp = gen.intIn(0, std::min(3, n)), dq = gen.intIn(0, 2), dr = gen.intIn(0, 2);
        SuperFn p = gen.homogeneous(c, dp, 2, 2);
        SuperFn q = gen.homogeneous(c, dq, 2, 2);
        SuperFn r = gen.homogeneous(c, dr, 2, 2);
        SuperFn lhs = poissonBracket(p, q * r);
        SuperFn rhs = poissonBracket(p, q) * r;
        SuperFn second = q * poissonBracket(p, r);
        rhs += (((dp - 1) * dq) % 2 == 0) ? second : -second;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("graded Jacobi") {
    Gen gen(109);
    for (int k = 0; k < 120; ++k) {
        int n = gen.intIn(2, 3);
        ChartPtr c = Chart::standard(n);
        int dp = gen.intIn(0, n), dq = gen.intIn(0, n), dr = gen.intIn(0, n);
        SuperFn p = gen.homogeneous(c, dp, 2, 2);
        SuperFn q = gen.homogeneous(c, dq, 2, 2);
        SuperFn r = gen.homogeneous(c, dr, 2, 2);
        SuperFn lhs = poissonBracket(p, poissonBracket(q, r));
        SuperFn rhs = poissonBracket(poissonBracket(p, q), r);
        SuperFn second = poissonBracket(q, poissonBracket(p, r));
        rhs += (((dp - 1) * (dq - 1)) % 2 == 0) ? second : -second;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("degree bookkeeping") {
    Gen gen(113);
    for (int k = 0; k < 100; ++k) {
        int n = gen.intIn(2, 4);
        ChartPtr c = Chart::standard(n);
        int dp = gen.intIn(0, std::min(3, n)), dq = gen.intIn(0, std::min(3, n));
        SuperFn p = gen.homogeneous(c, dp, 2, 3);
        SuperFn q = gen.homogeneous(c, dq, 2, 3);
        SuperFn br = poissonBracket(p, q);
        if (!br.isZero()) CHECK(br.isHomogeneous(dp + dq - 1));
    }
}

TEST_CASE("function bracket from the bivector") {
    ChartPtr c2 = Chart::standard(2);
    Bivector std2(xi(c2, 1) * xi(c2, 2));
    CHECK(fnBracket(std2, x(c2, 1), x(c2, 2)) == SuperFn::constant(c2, 1));
    CHECK(fnBracket(std2, x(c2, 1) * x(c2, 2), x(c2, 1) * x(c2, 2)).isZero());

    ChartPtr c3 = Chart::standard(3);
    Bivector so3(so3Bivector(c3));
    CHECK(fnBracket(so3, x(c3, 1), x(c3, 2)) == x(c3, 3));
    CHECK(fnBracket(so3, x(c3, 2), x(c3, 3)) == x(c3, 1));
    CHECK(fnBracket(so3, x(c3, 3), x(c3, 1)) == x(c3, 2));
}

TEST_CASE("derived bracket sign is globally -1") {
    ChartPtr c2 = Chart::standard(2);
    Bivector std2(xi(c2, 1) * xi(c2, 2));
    SuperFn derived = poissonBracket(poissonBracket(std2.value, x(c2, 1)), x(c2, 2));
    CHECK(fnBracket(std2, x(c2, 1), x(c2, 2)) == ratio(kDerivedBracketSign) * derived);

    Gen gen(127);
    for (int k = 0; k < 60; ++k) {
        int n = gen.intIn(2, 4);
        ChartPtr c = Chart::standard(n);
        Bivector pi(gen.homogeneous(c, 2, 2, 3));
        SuperFn f = gen.homogeneous(c, 0, 2, 3);
        SuperFn g = gen.homogeneous(c, 0, 2, 3);
        SuperFn lhs = fnBracket(pi, f, g);
        SuperFn rhs = ratio(kDerivedBracketSign) *
                      poissonBracket(poissonBracket(pi.value, f), g);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("poisson condition") {
    ChartPtr c2 = Chart::standard(2);
    CHECK(isPoisson(Bivector(xi(c2, 1) * xi(c2, 2))));

    ChartPtr c3 = Chart::standard(3);
    CHECK(isPoisson(Bivector(so3Bivector(c3))));

    ChartPtr c4 = Chart::standard(4);
    Bivector broken(xi(c4, 1) * xi(c4, 2) + x(c4, 1) * xi(c4, 3) * xi(c4, 4));
    CHECK_FALSE(isPoisson(broken));
    SuperFn witness = cyclicJacobiSum(broken, x(c4, 3), x(c4, 4), x(c4, 2));
    CHECK_FALSE(witness.isZero());
}

TEST_CASE("poisson condition matches schouten oracle and jacobi sums") {
    Gen gen(131);
    for (int k = 0; k < 40; ++k) {
        int n = gen.intIn(2, 4);
        ChartPtr c = Chart::standard(n);
        Bivector pi(gen.homogeneous(c, 2, 1, 2));
        bool viaBracket = isPoisson(pi);
        bool viaSchouten = schoutenDirect(pi.value, pi.value).isZero();
        bool viaJacobi = true;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int l = j + 1; l <= n; ++l)
                    if (!cyclicJacobiSum(pi, x(c, i), x(c, j), x(c, l)).isZero()) viaJacobi = false;
        CHECK(viaBracket == viaSchouten);
        CHECK(viaBracket == viaJacobi);
    }
}

TEST_CASE("sharp map") {
    ChartPtr c2 = Chart::standard(2);
    Bivector std2(xi(c2, 1) * xi(c2, 2));
    std::vector<SuperFn> dx2 = {SuperFn::zero(c2), SuperFn::constant(c2, 1)};
    CHECK(sharp(std2, dx2).value == -xi(c2, 1));

    ChartPtr c3 = Chart::standard(3);
    Bivector so3(so3Bivector(c3));
    SuperFn casimir = x(c3, 1) * x(c3, 1) + x(c3, 2) * x(c3, 2) + x(c3, 3) * x(c3, 3) -
                      SuperFn::constant(c3, 1);
    std::vector<SuperFn> dCas;
    for (int i = 0; i < 3; ++i) dCas.push_back(partialEven(casimir, i));
    CHECK(sharp(so3, dCas).value.isZero());

    std::vector<SuperFn> zero3 = {SuperFn::zero(c3), SuperFn::zero(c3), SuperFn::zero(c3)};
    CHECK(sharp(so3, zero3).value.isZero());
}

TEST_CASE("sharp of an exact differential matches the derived bracket") {
    Gen gen(137);
    for (int k = 0; k < 60; ++k) {
        int n = gen.intIn(2, 4);
        ChartPtr c = Chart::standard(n);
        Bivector pi(gen.homogeneous(c, 2, 2, 3));
        SuperFn f = gen.homogeneous(c, 0, 2, 3);
        std::vector<SuperFn> df;
        for (int i = 0; i < n; ++i) df.push_back(partialEven(f, i));
        CHECK(sharp(pi, df).value ==
              ratio(kDerivedBracketSign) * poissonBracket(pi.value, f));
    }
}

TEST_CASE("lie derivative of a bivector") {
    ChartPtr c2 = Chart::standard(2);
    Bivector std2(xi(c2, 1) * xi(c2, 2));
    CHECK(lieDerivativeBivector(VectorField(xi(c2, 1)), std2).isZero());
    CHECK(lieDerivativeBivector(VectorField(x(c2, 1) * xi(c2, 1)), std2) ==
          -(xi(c2, 1) * xi(c2, 2)));
    Bivector zero(SuperFn::zero(c2));
    CHECK(lieDerivativeBivector(VectorField(x(c2, 2) * xi(c2, 1)), zero).isZero());
}

TEST_CASE("bivector and vector field degree guards") {
    ChartPtr c = Chart::standard(2);
    CHECK_THROWS_AS(Bivector(x(c, 1)), std::invalid_argument);
    CHECK_THROWS_AS(VectorField(xi(c, 1) * xi(c, 2)), std::invalid_argument);
    CHECK_THROWS_AS(fnBracket(Bivector(xi(c, 1) * xi(c, 2)), xi(c, 1), x(c, 1)),
                    std::invalid_argument);
}
