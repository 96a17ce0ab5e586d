#pragma once

#include "poisred/brackets.hpp"
#include "poisred/groebner.hpp"
#include "poisred/superfn.hpp"

#include <optional>
#include <string>
#include <vector>

namespace poisred {

enum class Membership { IN, OUT, UNDECIDED };

std::string str(Membership m);

/// Graded ideal presenting a graded submanifold E^o[1]: degree-0 generators
/// cut the body locus C, degree-1 generators span E. Sample points must lie
/// on C (verified exactly at construction).
struct GradedIdeal {
    ChartPtr chart;
    std::vector<SuperFn> gens0;
    std::vector<SuperFn> gens1;
    std::vector<std::vector<Rational>> samplePoints;

    GradedIdeal(ChartPtr chart, std::vector<SuperFn> gens0, std::vector<SuperFn> gens1,
                std::vector<std::vector<Rational>> samplePoints);
};

struct MembershipCertificate {
    Membership verdict = Membership::UNDECIDED;
    /// IN: query == sum cofactors0[i]*gens0[i] + sum cofactors1[j]*gens1[j].
    std::vector<SuperFn> cofactors0;
    std::vector<SuperFn> cofactors1;
    /// OUT: a sample point refuting membership, when one exists.
    std::optional<std::vector<Rational>> refutingPoint;
    /// OUT: nonzero normal-form residue; UNDECIDED: the residue at the bound.
    SuperFn residue;
    std::string note;

    std::string render() const;
};

struct CoisotropyReport {
    Membership overall = Membership::UNDECIDED;
    Membership tangency = Membership::IN;    // {I0,I1} subset I0, i.e. E tangent to C
    Membership involutivity = Membership::IN; // {I1,I1} subset I1
    std::string witness;
};

/// Normal-form and membership engine for one graded ideal: Buchberger
/// completion of the even part, degree-1 generators reduced against it,
/// bounded-cofactor solving for the mixed part.
class NormalFormEngine {
public:
    explicit NormalFormEngine(GradedIdeal ideal);

    const GradedIdeal& ideal() const { return ideal_; }
    const GroebnerBasis& groebner() const { return gb_; }
    const std::vector<SuperFn>& reducedGens1() const { return reducedGens1_; }

    /// Unique normal form modulo the even ideal <gens0> (applied to every
    /// odd component's coefficients). Idempotent; zero exactly on <gens0>.
    SuperFn normalForm(const SuperFn& f) const;

    /// Membership of f in the full graded ideal <gens0; gens1>. Even
    /// components decide exactly through the Groebner normal form; mixed
    /// components through bounded-cofactor solving, with sample-point
    /// refutation. IN certificates reconstruct f exactly.
    MembershipCertificate contains(const SuperFn& f, int degreeBound) const;

    /// {f, g} in the ideal for every generator g.
    MembershipCertificate normalizerContains(const SuperFn& f, int bound) const;

    /// Pairwise generator brackets in the ideal, with the two classical
    /// facets reported separately.
    CoisotropyReport isCoisotropic(int bound) const;

private:
    GradedIdeal ideal_;
    GroebnerBasis gb_;
    std::vector<SuperFn> reducedGens1_;
};

} // namespace poisred
