#include "poisred/modsolve.hpp"

#include "poisred/linsolve.hpp"

#include <map>
#include <stdexcept>

namespace poisred {

std::vector<Monomial> evenMonomialsUpTo(int n, int bound) {
    std::vector<Monomial> out;
    Monomial m;
    m.xexp.assign(static_cast<std::size_t>(n), 0);
    // counting in a mixed-radix fashion over exponent vectors
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == n) {
            out.push_back(m);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            m.xexp[static_cast<std::size_t>(var)] = e;
            self(self, var + 1, remaining - e);
        }
        m.xexp[static_cast<std::size_t>(var)] = 0;
    };
    rec(rec, 0, bound);
    return out;
}

std::vector<std::uint64_t> oddMasksOfSize(int n, int k) {
    std::vector<std::uint64_t> out;
    if (k < 0 || k > n) return out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        if (std::popcount(mask) == k) out.push_back(mask);
    return out;
}

namespace {

struct Assembly {
    // unknown basis: (span index, cofactor monomial)
    std::vector<std::pair<std::size_t, Monomial>> unknowns;
    LinearSystem system;
    explicit Assembly(int unknownCount) : system(unknownCount) {}
};

SuperFn reduceMaybe(const GroebnerBasis* nf, const SuperFn& f) {
    return nf ? nf->normalForm(f) : f;
}

Assembly assemble(const ModuleQuery& q, bool withTarget) {
    const int n = q.chart->dim();
    std::vector<Monomial> evens = evenMonomialsUpTo(n, q.bound);
    std::vector<std::pair<std::size_t, Monomial>> unknowns;
    for (std::size_t a = 0; a < q.spans.size(); ++a)
        for (int k : q.cofactorOddDegrees)
            for (std::uint64_t mask : oddMasksOfSize(n, k))
                for (const Monomial& e : evens) {
                    Monomial m = e;
                    m.xi = mask;
                    unknowns.emplace_back(a, m);
                }

    Assembly asm_(static_cast<int>(unknowns.size()));
    asm_.unknowns = unknowns;

    const std::size_t slots = withTarget ? q.target.size() : q.spans.empty() ? 0 : q.spans[0].size();
    for (std::size_t s = 0; s < slots; ++s) {
        // coefficient-matching equations indexed by monomial
        std::map<Monomial, std::map<int, Rational>, TermOrder> byMonomial;
        std::map<Monomial, Rational, TermOrder> rhs;
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            const auto& [a, cm] = unknowns[u];
            if (q.spans[a][s].isZero()) continue;
            SuperFn w = reduceMaybe(q.modulo, SuperFn::monomialTerm(q.chart, cm, 1) * q.spans[a][s]);
            for (const auto& [m, c] : w.terms()) byMonomial[m][static_cast<int>(u)] = c;
        }
        if (withTarget) {
            SuperFn t = reduceMaybe(q.modulo, q.target[s]);
            for (const auto& [m, c] : t.terms()) rhs[m] = c;
        }
        for (auto& [m, coeffs] : byMonomial) {
            Rational b = 0;
            auto it = rhs.find(m);
            if (it != rhs.end()) {
                b = it->second;
                rhs.erase(it);
            }
            asm_.system.addEquation(std::move(coeffs), b);
        }
        for (const auto& [m, b] : rhs) asm_.system.addEquation({}, b); // unreachable target monomial
    }
    return asm_;
}

SuperFn cofactorFromSolution(const ModuleQuery& q, const Assembly& asm_,
                             const std::vector<Rational>& x, std::size_t spanIndex) {
    SuperFn c = SuperFn::zero(q.chart);
    for (std::size_t u = 0; u < asm_.unknowns.size(); ++u) {
        if (asm_.unknowns[u].first != spanIndex || isZero(x[u])) continue;
        c.addTerm(asm_.unknowns[u].second, x[u]);
    }
    return c;
}

} // namespace

ModuleSolution solveModuleMembership(const ModuleQuery& q) {
    ModuleSolution out;
    for (const auto& vec : q.spans)
        if (vec.size() != q.target.size())
            throw std::invalid_argument("span tuple slot count mismatch");
    Assembly asm_ = assemble(q, true);
    if (!asm_.system.solve()) return out;
    out.solved = true;
    std::vector<Rational> x = asm_.system.particular();
    for (std::size_t a = 0; a < q.spans.size(); ++a)
        out.cofactors.push_back(cofactorFromSolution(q, asm_, x, a));
    return out;
}

std::vector<std::vector<SuperFn>> solveModuleKernel(const ModuleQuery& q) {
    Assembly asm_ = assemble(q, false);
    asm_.system.solve();
    std::vector<std::vector<SuperFn>> out;
    for (const auto& v : asm_.system.nullspace()) {
        std::vector<SuperFn> tuple;
        bool nontrivial = false;
        for (std::size_t a = 0; a < q.spans.size(); ++a) {
            tuple.push_back(cofactorFromSolution(q, asm_, v, a));
            if (!tuple.back().isZero()) nontrivial = true;
        }
        if (nontrivial) out.push_back(std::move(tuple));
    }
    return out;
}

} // namespace poisred
