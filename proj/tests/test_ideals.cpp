#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include "poisred/groebner.hpp"
#include "poisred/ideals.hpp"

#include <algorithm>

using namespace poisred;
using test_support::Gen;

namespace {

SuperFn x(ChartPtr c, int i) { return SuperFn::coordinate(c, i - 1); }
SuperFn xi(ChartPtr c, int j) { return SuperFn::oddCoordinate(c, j - 1); }

std::vector<Rational> origin(int n) {
    return std::vector<Rational>(static_cast<std::size_t>(n), Rational(0));
}

} // namespace

TEST_CASE("groebner bases of the corpus ideals") {
    ChartPtr c2 = Chart::standard(2);
    GroebnerBasis single = GroebnerBasis::compute(c2, {x(c2, 2)});
    REQUIRE(single.basis().size() == 1);
    CHECK(single.basis()[0] == x(c2, 2));

    ChartPtr c3 = Chart::standard(3);
    SuperFn sphere = x(c3, 1) * x(c3, 1) + x(c3, 2) * x(c3, 2) + x(c3, 3) * x(c3, 3) -
                     SuperFn::constant(c3, 1);
    GroebnerBasis principal = GroebnerBasis::compute(c3, {sphere});
    REQUIRE(principal.basis().size() == 1);
    CHECK(principal.basis()[0] == sphere);

    GroebnerBasis pair = GroebnerBasis::compute(c2, {x(c2, 1), x(c2, 1) + x(c2, 2)});
    REQUIRE(pair.basis().size() == 2);
    CHECK(pair.basis()[0] == x(c2, 2));
    CHECK(pair.basis()[1] == x(c2, 1));
}

TEST_CASE("basis representations expand to the original generators") {
    Gen gen(211);
    for (int round = 0; round < 25; ++round) {
        int n = gen.intIn(1, 3);
        ChartPtr c = Chart::standard(n);
        std::vector<SuperFn> gens;
        int count = gen.intIn(1, 3);
        for (int k = 0; k < count; ++k) gens.push_back(gen.homogeneous(c, 0, 2, 3));
        GroebnerBasis gb = GroebnerBasis::compute(c, gens);
        for (std::size_t k = 0; k < gb.basis().size(); ++k) {
            SuperFn expanded = SuperFn::zero(c);
            for (std::size_t i = 0; i < gens.size(); ++i)
                expanded += gb.representations()[k][i] * gens[i];
            CHECK(expanded == gb.basis()[k]);
        }
        // division invariant on random queries
        SuperFn f = gen.any(c, 0, 3, 4);
        DivisionResult d = gb.divide(f);
        SuperFn back = d.remainder;
        for (std::size_t k = 0; k < gb.basis().size(); ++k) back += d.quotients[k] * gb.basis()[k];
        CHECK(back == f);
        CHECK(gb.normalForm(gb.normalForm(f)) == gb.normalForm(f));
    }
}

TEST_CASE("membership in the graded ideal") {
    ChartPtr c2 = Chart::standard(2);
    GradedIdeal ideal(c2, {x(c2, 2)}, {xi(c2, 1)}, {origin(2)});
    NormalFormEngine engine(ideal);

    SuperFn q1 = x(c2, 2) * x(c2, 1) * x(c2, 1) * x(c2, 1);
    MembershipCertificate in1 = engine.contains(q1, 4);
    CHECK(in1.verdict == Membership::IN);
    SuperFn back = SuperFn::zero(c2);
    for (std::size_t i = 0; i < in1.cofactors0.size(); ++i)
        back += in1.cofactors0[i] * ideal.gens0[i];
    for (std::size_t j = 0; j < in1.cofactors1.size(); ++j)
        back += in1.cofactors1[j] * ideal.gens1[j];
    CHECK(back == q1);

    MembershipCertificate out = engine.contains(xi(c2, 2), 4);
    CHECK(out.verdict == Membership::OUT);
    CHECK(out.refutingPoint.has_value());

    SuperFn q3 = x(c2, 1) * xi(c2, 1) + x(c2, 2) * xi(c2, 2);
    MembershipCertificate in3 = engine.contains(q3, 4);
    CHECK(in3.verdict == Membership::IN);
    back = SuperFn::zero(c2);
    for (std::size_t i = 0; i < in3.cofactors0.size(); ++i)
        back += in3.cofactors0[i] * ideal.gens0[i];
    for (std::size_t j = 0; j < in3.cofactors1.size(); ++j)
        back += in3.cofactors1[j] * ideal.gens1[j];
    CHECK(back == q3);
}

TEST_CASE("membership is monotone in the bound and OUT never flips") {
    ChartPtr c2 = Chart::standard(2);
    // x1^5*(xi1 - x1*xi2) needs a degree-5 cofactor
    SuperFn g1 = xi(c2, 1) - x(c2, 1) * xi(c2, 2);
    SuperFn x1pow6 = pow(x(c2, 1), 6);
    GradedIdeal ideal(c2, {x1pow6}, {g1}, {origin(2)});
    NormalFormEngine engine(ideal);
    SuperFn query = pow(x(c2, 1), 5) * g1;

    MembershipCertificate atFour = engine.contains(query, 4);
    CHECK(atFour.verdict == Membership::UNDECIDED);
    MembershipCertificate atFive = engine.contains(query, 5);
    CHECK(atFive.verdict == Membership::IN);
    MembershipCertificate atSix = engine.contains(query, 6);
    CHECK(atSix.verdict == Membership::IN);

    MembershipCertificate outLow = engine.contains(xi(c2, 2), 1);
    MembershipCertificate outHigh = engine.contains(xi(c2, 2), 6);
    CHECK(outLow.verdict == Membership::OUT);
    CHECK(outHigh.verdict == Membership::OUT);
}

TEST_CASE("normalizer membership") {
    ChartPtr c2 = Chart::standard(2);
    GradedIdeal ideal(c2, {x(c2, 2)}, {xi(c2, 1)}, {origin(2)});
    NormalFormEngine engine(ideal);
    CHECK(engine.normalizerContains(x(c2, 2), 4).verdict == Membership::IN);
    CHECK(engine.normalizerContains(xi(c2, 2), 4).verdict == Membership::OUT);

    GradedIdeal trivial(c2, {}, {}, {origin(2)});
    NormalFormEngine trivialEngine(trivial);
    CHECK(trivialEngine.normalizerContains(x(c2, 1) * xi(c2, 2), 4).verdict == Membership::IN);
}

TEST_CASE("coisotropy of the corpus ideals") {
    ChartPtr c2 = Chart::standard(2);
    {
        NormalFormEngine engine(GradedIdeal(c2, {x(c2, 2)}, {xi(c2, 1)}, {origin(2)}));
        CHECK(engine.isCoisotropic(4).overall == Membership::IN);
    }
    {
        NormalFormEngine engine(GradedIdeal(c2, {x(c2, 2)}, {xi(c2, 2)}, {origin(2)}));
        CoisotropyReport rep = engine.isCoisotropic(4);
        CHECK(rep.overall == Membership::OUT);
        CHECK(rep.tangency == Membership::OUT);
        CHECK_FALSE(rep.witness.empty());
    }
    {
        NormalFormEngine engine(GradedIdeal(c2, {}, {xi(c2, 1), xi(c2, 2)}, {origin(2)}));
        CHECK(engine.isCoisotropic(4).overall == Membership::IN);
    }
}

TEST_CASE("coisotropy matches the syntactic criterion on aligned ideals") {
    for (int n = 1; n <= 3; ++n) {
        ChartPtr c = Chart::standard(n);
        for (unsigned s0 = 0; s0 < (1u << n); ++s0) {
            for (unsigned s1 = 0; s1 < (1u << n); ++s1) {
                std::vector<SuperFn> gens0, gens1;
                for (int i = 0; i < n; ++i) {
                    if (s0 & (1u << i)) gens0.push_back(SuperFn::coordinate(c, i));
                    if (s1 & (1u << i)) gens1.push_back(SuperFn::oddCoordinate(c, i));
                }
                NormalFormEngine engine(GradedIdeal(c, gens0, gens1, {origin(n)}));
                bool expectCoisotropic = (s0 & s1) == 0;
                CHECK((engine.isCoisotropic(2).overall == Membership::IN) == expectCoisotropic);
            }
        }
    }
}

TEST_CASE("graded ideal construction guards") {
    ChartPtr c2 = Chart::standard(2);
    CHECK_THROWS_AS(GradedIdeal(c2, {xi(c2, 1)}, {}, {origin(2)}), std::invalid_argument);
    CHECK_THROWS_AS(GradedIdeal(c2, {x(c2, 1)}, {}, {{ratio(1), ratio(0)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GradedIdeal(c2, {}, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(GradedIdeal(c2, {}, {x(c2, 1)}, {origin(2)}), std::invalid_argument);
}

TEST_CASE("membership soundness on random ideal elements") {
    Gen gen(223);
    for (int round = 0; round < 20; ++round) {
        int n = gen.intIn(2, 3);
        ChartPtr c = Chart::standard(n);
        std::vector<SuperFn> gens0{gen.homogeneous(c, 0, 2, 2)};
        // shift so the origin lies on the locus
        gens0[0] -= evalEven(gens0[0], origin(n));
        if (gens0[0].isZero()) continue;
        std::vector<SuperFn> gens1{gen.homogeneous(c, 1, 1, 2)};
        GradedIdeal ideal(c, gens0, gens1, {origin(n)});
        NormalFormEngine engine(ideal);
        SuperFn member = gen.any(c, 1, 1, 2) * gens0[0] + gen.homogeneous(c, 0, 1, 2) * gens1[0];
        MembershipCertificate cert = engine.contains(member, 6);
        CHECK(cert.verdict != Membership::OUT);
        if (cert.verdict == Membership::IN) {
            SuperFn back = SuperFn::zero(c);
            for (std::size_t i = 0; i < cert.cofactors0.size(); ++i)
                back += cert.cofactors0[i] * ideal.gens0[i];
            for (std::size_t j = 0; j < cert.cofactors1.size(); ++j)
                back += cert.cofactors1[j] * ideal.gens1[j];
            CHECK(back == member);
        }
    }
}
