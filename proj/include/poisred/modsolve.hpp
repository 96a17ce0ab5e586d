#pragma once

#include "poisred/groebner.hpp"
#include "poisred/superfn.hpp"

#include <vector>

namespace poisred {

/// Enumeration of even monomials of total degree <= bound, deterministic.
std::vector<Monomial> evenMonomialsUpTo(int n, int bound);

/// Enumeration of odd masks with popcount == k.
std::vector<std::uint64_t> oddMasksOfSize(int n, int k);

/// Bounded-cofactor membership of a target tuple in the module generated by
/// span tuples over the graded polynomial ring, modulo an even ideal:
/// find cofactors c_a (even degree <= bound, odd degrees from the allowed
/// list) with NF(target[s] - sum_a c_a * spans[a][s]) == 0 for every slot s.
struct ModuleQuery {
    ChartPtr chart;
    const GroebnerBasis* modulo = nullptr; // optional even-ideal reduction
    int bound = 4;
    std::vector<SuperFn> target;             // one per slot
    std::vector<std::vector<SuperFn>> spans;  // spans[a][slot]
    std::vector<int> cofactorOddDegrees = {0};
};

struct ModuleSolution {
    bool solved = false;
    std::vector<SuperFn> cofactors; // per span tuple, when solved
};

ModuleSolution solveModuleMembership(const ModuleQuery& q);

/// Basis of bounded-cofactor tuples (c_a) with sum_a c_a * spans[a][s] == 0
/// modulo the even ideal, for every slot s. Target is ignored.
std::vector<std::vector<SuperFn>> solveModuleKernel(const ModuleQuery& q);

} // namespace poisred
