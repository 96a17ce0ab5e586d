#pragma once

#include "poisred/brackets.hpp"
#include "poisred/geometry.hpp"
#include "poisred/ideals.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace poisred {

enum class Verdict { HOLDS, FAILS, UNDECIDED };

std::string str(Verdict v);

struct Hypothesis {
    std::string name;
    Verdict verdict = Verdict::UNDECIDED;
    std::string evidence;
};

struct HypothesisReport {
    std::vector<Hypothesis> entries;

    void add(std::string name, Verdict v, std::string evidence = "");
    Verdict overall() const;
    const Hypothesis* find(const std::string& name) const;
};

/// Geometric data of the reduction theorems: bivector pi, submanifold C with
/// subbundle E over it, coisotropic stage A with distribution D, and the
/// generators of the subalgebra B whose residues present the quotient.
struct ReductionProblem {
    Bivector pi;
    SubmanifoldSpec c;
    DistributionSpec e;
    SubmanifoldSpec a;
    DistributionSpec d;
    std::vector<SuperFn> bgens;
    int degreeBound = 4;

    GradedIdeal gradedIdealC() const; // <C.gens; E.gens>
    GradedIdeal gradedIdealA() const; // <A.gens; D.gens>
};

struct BracketEntry {
    SuperFn residue;                    // normal form of {b_i, b_j} mod I
    std::optional<SuperFn> bExpression; // re-expression in the B generators
    Membership decomposition = Membership::UNDECIDED;
};

struct BracketTable {
    std::vector<SuperFn> generators; // B-generator residues
    std::vector<std::vector<BracketEntry>> entries;
    Verdict jacobi = Verdict::UNDECIDED;
    std::string jacobiEvidence;
    std::vector<Hypothesis> notes; // hypothesis verdicts annotating the table

    bool sameResidues(const BracketTable& other) const;
};

/// Coisotropic reduction conditions: coisotropy of <C.gens; E.gens>, the
/// sharp image of the conormal inside E, and closure of the E-flat function
/// algebra expressed through Lie derivatives of pi along E.
HypothesisReport checkCoisotropicReduction(const Bivector& pi, const SubmanifoldSpec& c,
                                           const DistributionSpec& e, int bound);

struct HalfcondReport {
    Verdict verdict = Verdict::UNDECIDED;
    std::string evidence;
};

/// {S, I_0} subset I_1, verified both through bracket membership and through
/// the classical sharp-image test; decided disagreement throws.
HalfcondReport checkHalfcond(const Bivector& pi, const GradedIdeal& csub, int bound);

/// Reduction in stages through a coisotropic A: descent of S to the quotient
/// of C, descent to the quotient of A, and the halfcond condition for the
/// descended function, computed on representatives.
HypothesisReport checkStages(const Bivector& pi, const GradedIdeal& csub, const GradedIdeal& asub,
                             int bound);

/// The full hypothesis list of the reduction theorem.
HypothesisReport checkThmA2(const ReductionProblem& problem);

/// Algebraic route: verifies the subalgebra-and-ideal bracket conditions on
/// the B generators and emits the reduced bracket table with residues modulo
/// the cutting ideal of C.
BracketTable algebraicReduce(const ReductionProblem& problem);

/// Graded route: brackets of normalizer lifts through the degree-2 function,
/// reduced modulo the ideal. With perturbRounds > 0, reruns the table with
/// random ideal perturbations of the generators; any changed residue is a
/// hard failure (lift dependence).
BracketTable gradedReduce(const ReductionProblem& problem, std::uint64_t perturbSeed = 1,
                          int perturbRounds = 0);

/// Residual of X{f,g} = (L_X pi)(df,dg) + pi(d(Xf),dg) + pi(df,d(Xg));
/// identically zero.
SuperFn identityXfg(const VectorField& x, const Bivector& pi, const SuperFn& f, const SuperFn& g);

} // namespace poisred
