#pragma once

#include "poisred/brackets.hpp"
#include "poisred/ideals.hpp"
#include "poisred/superfn.hpp"

#include <optional>
#include <string>
#include <vector>

namespace poisred {

/// Submanifold of the body presented by cutting functions, an asserted
/// tangent frame, and sample points on the locus. Construction verifies that
/// every tangent generator maps every cutting function into the cutting
/// ideal, and that the Jacobian rank matches across sample points.
struct SubmanifoldSpec {
    ChartPtr chart;
    std::string name;
    std::vector<SuperFn> gens;        // degree 0
    std::vector<SuperFn> tangentGens; // degree 1
    std::vector<std::vector<Rational>> samplePoints;

    SubmanifoldSpec(ChartPtr chart, std::string name, std::vector<SuperFn> gens,
                    std::vector<SuperFn> tangentGens,
                    std::vector<std::vector<Rational>> samplePoints, int verifyBound = 4);

    GradedIdeal cuttingIdeal() const; // <gens; ->
};

/// Distribution spanned by vector-field generators over a base submanifold.
/// An empty generator list is the zero distribution.
struct DistributionSpec {
    std::string name;
    std::vector<SuperFn> gens; // degree 1
    const SubmanifoldSpec* base = nullptr;

    bool isZero() const { return gens.empty(); }
};

enum class RankVerdict { CONSTANT_RANK, NOT_CONSTANT, UNDECIDED };

struct RankReport {
    RankVerdict verdict = RankVerdict::UNDECIDED;
    int rank = -1; // for CONSTANT_RANK
    /// NOT_CONSTANT: two points with distinct degree-0 ranks.
    std::optional<std::pair<std::vector<Rational>, std::vector<Rational>>> witnessPoints;
    std::pair<int, int> witnessRanks{-1, -1};
    std::string detail;
};

std::string str(RankVerdict v);

/// Differentials of the cutting functions as covector component lists.
std::vector<std::vector<SuperFn>> conormalGens(const SubmanifoldSpec& c);

struct IntersectionResult {
    DistributionSpec f;                  // generators of TC cap E
    Membership status = Membership::IN;  // UNDECIDED when bound evidence is short
    std::vector<std::vector<SuperFn>> cofactors; // F-gen = sum cofactors[k][a] * E-gen_a
    std::string note;
};

/// Generators of F = TC cap E along C: bounded-cofactor combinations of the
/// E-generators tangent to C, cross-checked against pointwise intersection
/// dimensions at every sample point.
IntersectionResult intersectDistributionWithTangent(const SubmanifoldSpec& c,
                                                    const DistributionSpec& e, int bound);

struct InvolutivityReport {
    Membership verdict = Membership::IN;
    std::string witness;
};

/// Pairwise Lie brackets (via the recursive Schouten oracle) tested for
/// bounded-cofactor membership in the distribution's own span modulo the
/// ideal, with sample-point refutation.
InvolutivityReport isInvolutive(const DistributionSpec& d, const GradedIdeal& modulo, int bound);

/// Constant-rank test for a matrix of values modulo an ideal: symbolic row
/// elimination with constant pivots, residual rows checked against the pivot
/// span with bounded cofactors, and degree-0 rank evaluated at every sample
/// point.
RankReport constantRankMatrix(const std::vector<std::vector<SuperFn>>& matrix,
                              const NormalFormEngine& engine, int bound);

struct PresymplecticReport {
    Membership overall = Membership::UNDECIDED;
    Membership wellFormed = Membership::IN; // generator data presents subbundles pointwise
    RankReport gradedMatrix;                // generator-bracket matrix mod I
    RankReport classicalRank;               // pointwise rank of TC cap E
    InvolutivityReport classicalInvolutive;
    std::string witness;
};

/// Both presymplecticity criteria: the generator-bracket matrix constant-rank
/// test and the classical constant-rank + involutivity of TC cap E. Decided
/// disagreement is a hard internal failure.
PresymplecticReport isPresymplectic(const GradedIdeal& csub, int bound);

/// Pointwise span of vector fields at a sample point (rows of coefficients).
std::vector<std::vector<Rational>> evaluateFrame(const std::vector<SuperFn>& fields,
                                                 const std::vector<Rational>& point);

/// Pointwise tangent space of a cut locus: kernel basis of the Jacobian.
std::vector<std::vector<Rational>> tangentSpaceAtPoint(const std::vector<SuperFn>& gens,
                                                       const std::vector<Rational>& point);

} // namespace poisred
