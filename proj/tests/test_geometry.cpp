#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include "poisred/geometry.hpp"

#include <algorithm>

using namespace poisred;
using test_support::Gen;

namespace {

SuperFn x(ChartPtr c, int i) { return SuperFn::coordinate(c, i - 1); }
SuperFn xi(ChartPtr c, int j) { return SuperFn::oddCoordinate(c, j - 1); }

std::vector<Rational> origin(int n) {
    return std::vector<Rational>(static_cast<std::size_t>(n), Rational(0));
}

std::vector<Rational> point(std::initializer_list<long> coords) {
    std::vector<Rational> p;
    for (long c : coords) p.push_back(ratio(c));
    return p;
}

} // namespace

TEST_CASE("conormal generators") {
    ChartPtr c2 = Chart::standard(2);
    SubmanifoldSpec line(c2, "C", {x(c2, 2)}, {xi(c2, 1)}, {origin(2)});
    auto covs = conormalGens(line);
    REQUIRE(covs.size() == 1);
    CHECK(covs[0][0].isZero());
    CHECK(covs[0][1] == SuperFn::constant(c2, 1));

    ChartPtr c3 = Chart::standard(3);
    SuperFn sphere = x(c3, 1) * x(c3, 1) + x(c3, 2) * x(c3, 2) + x(c3, 3) * x(c3, 3) -
                     SuperFn::constant(c3, 1);
    SubmanifoldSpec sph(c3, "S", {sphere}, {}, {point({1, 0, 0})});
    auto dg = conormalGens(sph);
    REQUIRE(dg.size() == 1);
    CHECK(dg[0][0] == ratio(2) * x(c3, 1));
    CHECK(dg[0][1] == ratio(2) * x(c3, 2));
    CHECK(dg[0][2] == ratio(2) * x(c3, 3));

    SubmanifoldSpec whole(c2, "M", {}, {}, {origin(2)});
    CHECK(conormalGens(whole).empty());
}

TEST_CASE("intersection of a distribution with the tangent bundle") {
    ChartPtr c4 = Chart::standard(4);
    {
        SubmanifoldSpec c(c4, "C", {x(c4, 4)}, {xi(c4, 1), xi(c4, 2), xi(c4, 3)}, {origin(4)});
        DistributionSpec e{"E", {xi(c4, 3)}, &c};
        IntersectionResult f = intersectDistributionWithTangent(c, e, 4);
        CHECK(f.status == Membership::IN);
        REQUIRE(f.f.gens.size() == 1);
        CHECK(f.f.gens[0] == xi(c4, 3));
    }
    {
        SubmanifoldSpec c(c4, "C", {x(c4, 3), x(c4, 4)}, {xi(c4, 1), xi(c4, 2)}, {origin(4)});
        DistributionSpec e{"E", {xi(c4, 3), xi(c4, 4)}, &c};
        IntersectionResult f = intersectDistributionWithTangent(c, e, 4);
        CHECK(f.status == Membership::IN);
        CHECK(f.f.gens.empty());
    }
    {
        SubmanifoldSpec c(c4, "C", {x(c4, 4)}, {}, {origin(4)});
        DistributionSpec e{"E", {}, &c};
        IntersectionResult f = intersectDistributionWithTangent(c, e, 4);
        CHECK(f.f.gens.empty());
        CHECK(f.status == Membership::IN);
    }
}

TEST_CASE("intersection generators are certified combinations") {
    ChartPtr c3 = Chart::standard(3);
    SuperFn sphere = x(c3, 1) * x(c3, 1) + x(c3, 2) * x(c3, 2) + x(c3, 3) * x(c3, 3) -
                     SuperFn::constant(c3, 1);
    SubmanifoldSpec c(c3, "S", {sphere}, {}, {point({1, 0, 0}), point({0, 0, 1})});
    // rotation fields around the axes are tangent; xi1 is not
    SuperFn rot3 = x(c3, 2) * xi(c3, 1) - x(c3, 1) * xi(c3, 2);
    DistributionSpec e{"E", {rot3, xi(c3, 1)}, &c};
    IntersectionResult f = intersectDistributionWithTangent(c, e, 3);
    GroebnerBasis gb = GroebnerBasis::compute(c3, {sphere});
    for (std::size_t k = 0; k < f.f.gens.size(); ++k) {
        // tangency of every generator
        CHECK(gb.normalForm(applyVectorField(f.f.gens[k], sphere)).isZero());
        // and the cofactor certificate reconstructs it from the E generators
        SuperFn back = SuperFn::zero(c3);
        for (std::size_t a = 0; a < e.gens.size(); ++a) back += f.cofactors[k][a] * e.gens[a];
        CHECK(back == f.f.gens[k]);
    }
}

TEST_CASE("involutivity") {
    ChartPtr c2 = Chart::standard(2);
    GradedIdeal wholeBase(c2, {}, {}, {origin(2)});
    {
        DistributionSpec d{"D", {xi(c2, 1), xi(c2, 2)}, nullptr};
        CHECK(isInvolutive(d, wholeBase, 4).verdict == Membership::IN);
    }
    {
        DistributionSpec d{"D", {xi(c2, 1), x(c2, 1) * xi(c2, 2)}, nullptr};
        InvolutivityReport rep = isInvolutive(d, wholeBase, 4);
        CHECK(rep.verdict == Membership::OUT);
        CHECK_FALSE(rep.witness.empty());
    }
    {
        DistributionSpec d{"D", {}, nullptr};
        CHECK(isInvolutive(d, wholeBase, 4).verdict == Membership::IN);
    }
}

TEST_CASE("constant rank of matrices modulo an ideal") {
    ChartPtr c2 = Chart::standard(2);
    NormalFormEngine free(GradedIdeal(c2, {}, {}, {origin(2), point({1, 0})}));

    RankReport one = constantRankMatrix({{SuperFn::constant(c2, 1)}}, free, 4);
    CHECK(one.verdict == RankVerdict::CONSTANT_RANK);
    CHECK(one.rank == 1);

    RankReport jump = constantRankMatrix({{x(c2, 1)}}, free, 4);
    CHECK(jump.verdict == RankVerdict::NOT_CONSTANT);
    REQUIRE(jump.witnessPoints.has_value());
    CHECK(jump.witnessRanks.first != jump.witnessRanks.second);

    std::vector<std::vector<SuperFn>> rot = {
        {SuperFn::zero(c2), SuperFn::constant(c2, 1)},
        {SuperFn::constant(c2, -1), SuperFn::zero(c2)}};
    RankReport two = constantRankMatrix(rot, free, 4);
    CHECK(two.verdict == RankVerdict::CONSTANT_RANK);
    CHECK(two.rank == 2);
}

TEST_CASE("constant rank is invariant under row operations") {
    Gen gen(307);
    ChartPtr c2 = Chart::standard(2);
    NormalFormEngine free(GradedIdeal(c2, {}, {}, {origin(2), point({1, 2}), point({-1, 1})}));
    for (int round = 0; round < 15; ++round) {
        std::vector<std::vector<SuperFn>> m;
        int rows = gen.intIn(1, 3), cols = gen.intIn(1, 3);
        for (int r = 0; r < rows; ++r) {
            std::vector<SuperFn> row;
            for (int c = 0; c < cols; ++c)
                row.push_back(gen.intIn(0, 2) == 0 ? SuperFn::zero(c2)
                                                   : gen.homogeneous(c2, 0, 1, 2));
            m.push_back(std::move(row));
        }
        RankReport base = constantRankMatrix(m, free, 3);
        // swap two rows
        std::vector<std::vector<SuperFn>> swapped = m;
        if (rows >= 2) std::swap(swapped[0], swapped[1]);
        RankReport afterSwap = constantRankMatrix(swapped, free, 3);
        CHECK(base.verdict == afterSwap.verdict);
        if (base.verdict == RankVerdict::CONSTANT_RANK) CHECK(base.rank == afterSwap.rank);
        // add a polynomial multiple of one row to another
        if (rows >= 2) {
            std::vector<std::vector<SuperFn>> added = m;
            SuperFn factor = gen.homogeneous(c2, 0, 1, 2);
            for (int c = 0; c < cols; ++c)
                added[1][static_cast<std::size_t>(c)] += factor * m[0][static_cast<std::size_t>(c)];
            RankReport afterAdd = constantRankMatrix(added, free, 3);
            CHECK(base.verdict == afterAdd.verdict);
            if (base.verdict == RankVerdict::CONSTANT_RANK) CHECK(base.rank == afterAdd.rank);
        }
    }
}

TEST_CASE("presymplectic criteria") {
    ChartPtr c4 = Chart::standard(4);
    {
        // second-class pair: bracket matrix is constant invertible
        GradedIdeal dirac(c4, {x(c4, 3), x(c4, 4)}, {xi(c4, 3), xi(c4, 4)}, {origin(4)});
        PresymplecticReport rep = isPresymplectic(dirac, 4);
        CHECK(rep.overall == Membership::IN);
        CHECK(rep.gradedMatrix.verdict == RankVerdict::CONSTANT_RANK);
        CHECK(rep.gradedMatrix.rank == 4);
        CHECK(rep.classicalRank.verdict == RankVerdict::CONSTANT_RANK);
        CHECK(rep.classicalRank.rank == 0);
    }
    {
        // coisotropic: bracket matrix vanishes mod the ideal
        GradedIdeal coiso(c4, {x(c4, 4)}, {xi(c4, 3)}, {origin(4)});
        PresymplecticReport rep = isPresymplectic(coiso, 4);
        CHECK(rep.overall == Membership::IN);
        CHECK(rep.gradedMatrix.rank == 0);
        CHECK(rep.classicalRank.rank == 1);
        CHECK(rep.classicalInvolutive.verdict == Membership::IN);
    }
    {
        // rank-jumping degree-1 data is not a graded submanifold
        ChartPtr c2 = Chart::standard(2);
        GradedIdeal jump(c2, {x(c2, 2)}, {x(c2, 1) * xi(c2, 1)},
                         {origin(2), point({1, 0}), point({2, 0})});
        PresymplecticReport rep = isPresymplectic(jump, 4);
        CHECK(rep.overall == Membership::OUT);
        CHECK(rep.wellFormed == Membership::OUT);
        REQUIRE(rep.classicalRank.witnessPoints.has_value());
        CHECK(rep.classicalRank.witnessRanks.first != rep.classicalRank.witnessRanks.second);
    }
}

TEST_CASE("tangent frame verification rejects bad data") {
    ChartPtr c2 = Chart::standard(2);
    CHECK_THROWS_AS(SubmanifoldSpec(c2, "bad", {x(c2, 2)}, {xi(c2, 2)}, {origin(2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SubmanifoldSpec(c2, "off", {x(c2, 2)}, {}, {point({0, 1})}),
                    std::invalid_argument);
    // Jacobian rank must match across sample points
    SuperFn f = x(c2, 1) * x(c2, 2);
    CHECK_THROWS_AS(SubmanifoldSpec(c2, "jumpy", {f}, {}, {origin(2), point({1, 0})}),
                    std::invalid_argument);
}

TEST_CASE("conormal annihilates tangent frames along the locus") {
    ChartPtr c3 = Chart::standard(3);
    SuperFn sphere = x(c3, 1) * x(c3, 1) + x(c3, 2) * x(c3, 2) + x(c3, 3) * x(c3, 3) -
                     SuperFn::constant(c3, 1);
    std::vector<SuperFn> rot = {x(c3, 3) * xi(c3, 2) - x(c3, 2) * xi(c3, 3),
                                x(c3, 1) * xi(c3, 3) - x(c3, 3) * xi(c3, 1),
                                x(c3, 2) * xi(c3, 1) - x(c3, 1) * xi(c3, 2)};
    SubmanifoldSpec sph(c3, "S", {sphere}, rot, {point({1, 0, 0}), point({0, 1, 0})});
    GroebnerBasis gb = GroebnerBasis::compute(c3, {sphere});
    for (const auto& dg : conormalGens(sph)) {
        for (const auto& t : rot) {
            SuperFn pairing = SuperFn::zero(c3);
            for (int i = 0; i < 3; ++i)
                pairing += dg[static_cast<std::size_t>(i)] * t.evenCoefficient(std::uint64_t{1} << i);
            CHECK(gb.normalForm(pairing).isZero());
        }
    }
}
