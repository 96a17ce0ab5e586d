#include "poisred/ideals.hpp"

#include "poisred/linsolve.hpp"
#include "poisred/modsolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace poisred {

std::string str(Membership m) {
    switch (m) {
        case Membership::IN: return "IN";
        case Membership::OUT: return "OUT";
        default: return "UNDECIDED";
    }
}

GradedIdeal::GradedIdeal(ChartPtr chartIn, std::vector<SuperFn> g0, std::vector<SuperFn> g1,
                         std::vector<std::vector<Rational>> points)
    : chart(std::move(chartIn)), gens0(std::move(g0)), gens1(std::move(g1)),
      samplePoints(std::move(points)) {
    for (const auto& g : gens0)
        if (!g.isHomogeneous(0)) throw std::invalid_argument("degree-0 generator has odd part");
    for (const auto& g : gens1)
        if (!g.isHomogeneous(1) || g.isZero())
            throw std::invalid_argument("degree-1 generator must be homogeneous of degree 1");
    if (samplePoints.empty()) throw std::invalid_argument("at least one sample point required");
    for (const auto& p : samplePoints) {
        if (p.size() != static_cast<std::size_t>(chart->dim()))
            throw std::invalid_argument("sample point dimension mismatch");
        for (const auto& g : gens0)
            if (!isZero(evalScalar(g, p)))
                throw std::invalid_argument("sample point does not annihilate the cutting ideal");
    }
}

NormalFormEngine::NormalFormEngine(GradedIdeal ideal)
    : ideal_(std::move(ideal)), gb_(GroebnerBasis::compute(ideal_.chart, ideal_.gens0)) {
    for (const auto& g : ideal_.gens1) reducedGens1_.push_back(gb_.normalForm(g));
}

SuperFn NormalFormEngine::normalForm(const SuperFn& f) const { return gb_.normalForm(f); }

namespace {

/// Is the constant-coefficient value `v` in the Grassmann ideal generated by
/// the constant 1-forms `oneForms` inside Lambda(R^n)? Exact linear algebra
/// per odd degree.
bool inGrassmannIdeal(const SuperFn& v, const std::vector<SuperFn>& oneForms) {
    if (v.isZero()) return true;
    const int n = v.n();
    for (std::uint64_t mask : v.xiMasks()) {
        int k = std::popcount(mask);
        if (k == 0) return false; // nonzero constant scalar part never lies in the ideal
        // basis of the degree-k part of the ideal: mu ^ w over all |mu| = k-1
        std::vector<std::vector<Rational>> span;
        std::vector<std::uint64_t> kMasks = oddMasksOfSize(n, k);
        for (const auto& w : oneForms) {
            for (std::uint64_t mu : oddMasksOfSize(n, k - 1)) {
                Monomial m;
                m.xexp.assign(static_cast<std::size_t>(n), 0);
                m.xi = mu;
                SuperFn prod = SuperFn::monomialTerm(v.chart(), m, 1) * w;
                std::vector<Rational> row;
                for (std::uint64_t target : kMasks) {
                    SuperFn c = prod.evenCoefficient(target);
                    Rational val = 0;
                    for (const auto& [mm, cc] : c.terms()) val += cc;
                    row.push_back(val);
                }
                span.push_back(std::move(row));
            }
        }
        std::vector<Rational> targetRow;
        SuperFn vk = v.component(k);
        for (std::uint64_t target : kMasks) {
            SuperFn c = vk.evenCoefficient(target);
            Rational val = 0;
            for (const auto& [mm, cc] : c.terms()) val += cc;
            targetRow.push_back(val);
        }
        if (!inSpan(span, targetRow)) return false;
    }
    return true;
}

} // namespace

MembershipCertificate NormalFormEngine::contains(const SuperFn& f, int degreeBound) const {
    MembershipCertificate cert;
    const ChartPtr& chart = ideal_.chart;

    // even component: exact via Groebner normal form
    SuperFn even = f.component(0);
    SuperFn evenNF = gb_.normalForm(even);
    if (!evenNF.isZero()) {
        cert.verdict = Membership::OUT;
        cert.residue = evenNF;
        for (const auto& p : ideal_.samplePoints) {
            if (!isZero(evalScalar(even, p))) {
                cert.refutingPoint = p;
                break;
            }
        }
        cert.note = "even component has nonzero normal form";
        return cert;
    }

    SuperFn odd = f - even;
    if (odd.isZero()) {
        cert.verdict = Membership::IN;
        cert.cofactors1.assign(ideal_.gens1.size(), SuperFn::zero(chart));
        DivisionResult d = gb_.divide(f);
        cert.cofactors0 = gb_.cofactorsOnGenerators(d);
        return cert;
    }

    // sample-point refutation: along C the value must land in the Grassmann
    // ideal generated by the evaluated degree-1 generators
    for (const auto& p : ideal_.samplePoints) {
        std::vector<SuperFn> formsAtP;
        for (const auto& g : ideal_.gens1) formsAtP.push_back(evalEven(g, p));
        if (!inGrassmannIdeal(evalEven(odd, p), formsAtP)) {
            cert.verdict = Membership::OUT;
            cert.refutingPoint = p;
            cert.residue = normalForm(odd);
            cert.note = "value at sample point escapes the generated Grassmann ideal";
            return cert;
        }
    }

    // bounded-cofactor solve for the degree-1 generators
    ModuleQuery q;
    q.chart = chart;
    q.modulo = &gb_;
    q.bound = degreeBound;
    q.target = {odd};
    for (const auto& g : ideal_.gens1) q.spans.push_back({g});
    q.cofactorOddDegrees.clear();
    for (std::uint64_t mask : odd.xiMasks()) {
        int k = std::popcount(mask);
        if (k >= 1) q.cofactorOddDegrees.push_back(k - 1);
    }
    std::sort(q.cofactorOddDegrees.begin(), q.cofactorOddDegrees.end());
    q.cofactorOddDegrees.erase(
        std::unique(q.cofactorOddDegrees.begin(), q.cofactorOddDegrees.end()),
        q.cofactorOddDegrees.end());

    ModuleSolution sol = solveModuleMembership(q);
    if (!sol.solved) {
        cert.verdict = Membership::UNDECIDED;
        cert.residue = normalForm(odd);
        cert.note = "no cofactor decomposition at even-degree bound " + std::to_string(degreeBound);
        return cert;
    }

    cert.verdict = Membership::IN;
    cert.cofactors1 = sol.cofactors;
    SuperFn evenSide = f;
    for (std::size_t j = 0; j < ideal_.gens1.size(); ++j)
        evenSide -= sol.cofactors[j] * ideal_.gens1[j];
    DivisionResult d = gb_.divide(evenSide);
    if (!d.remainder.isZero()) throw std::logic_error("membership certificate assembly failed");
    cert.cofactors0 = gb_.cofactorsOnGenerators(d);
    return cert;
}

MembershipCertificate NormalFormEngine::normalizerContains(const SuperFn& f, int bound) const {
    MembershipCertificate out;
    out.verdict = Membership::IN;
    auto consider = [&](const SuperFn& g, const char* kind, std::size_t idx) {
        if (out.verdict == Membership::OUT) return;
        SuperFn br = poissonBracket(f, g);
        MembershipCertificate c = contains(br, bound);
        if (c.verdict == Membership::IN) return;
        out.residue = c.residue;
        out.refutingPoint = c.refutingPoint;
        out.note = "{f, " + std::string(kind) + std::to_string(idx + 1) + "} = " + br.str() +
                   " not shown in ideal";
        out.verdict = c.verdict;
    };
    for (std::size_t i = 0; i < ideal_.gens0.size(); ++i) consider(ideal_.gens0[i], "g0_", i);
    for (std::size_t j = 0; j < ideal_.gens1.size(); ++j) consider(ideal_.gens1[j], "g1_", j);
    return out;
}

CoisotropyReport NormalFormEngine::isCoisotropic(int bound) const {
    CoisotropyReport rep;
    rep.overall = Membership::IN;
    auto worsen = [](Membership& facet, Membership v) {
        if (v == Membership::OUT)
            facet = Membership::OUT;
        else if (v == Membership::UNDECIDED && facet == Membership::IN)
            facet = Membership::UNDECIDED;
    };
    // {I0, I0} = 0 by degree reasons; {I0, I1} is degree 0; {I1, I1} degree 1.
    for (std::size_t i = 0; i < ideal_.gens0.size(); ++i) {
        for (std::size_t j = 0; j < ideal_.gens1.size(); ++j) {
            SuperFn br = poissonBracket(ideal_.gens0[i], ideal_.gens1[j]);
            MembershipCertificate c = contains(br, bound);
            if (c.verdict != Membership::IN && rep.witness.empty())
                rep.witness = "{g0_" + std::to_string(i + 1) + ", g1_" + std::to_string(j + 1) +
                              "} = " + br.str();
            worsen(rep.tangency, c.verdict);
        }
    }
    for (std::size_t i = 0; i < ideal_.gens1.size(); ++i) {
        for (std::size_t j = i + 1; j < ideal_.gens1.size(); ++j) {
            SuperFn br = poissonBracket(ideal_.gens1[i], ideal_.gens1[j]);
            MembershipCertificate c = contains(br, bound);
            if (c.verdict != Membership::IN && rep.witness.empty())
                rep.witness = "{g1_" + std::to_string(i + 1) + ", g1_" + std::to_string(j + 1) +
                              "} = " + br.str();
            worsen(rep.involutivity, c.verdict);
        }
    }
    worsen(rep.overall, rep.tangency);
    worsen(rep.overall, rep.involutivity);
    return rep;
}

std::string MembershipCertificate::render() const {
    std::string out = str(verdict);
    if (verdict == Membership::IN) {
        out += " (certificate";
        bool any = false;
        for (std::size_t i = 0; i < cofactors0.size(); ++i)
            if (!cofactors0[i].isZero()) {
                out += std::string(any ? " + " : ": ") + "(" + cofactors0[i].str() + ")*g0_" +
                       std::to_string(i + 1);
                any = true;
            }
        for (std::size_t j = 0; j < cofactors1.size(); ++j)
            if (!cofactors1[j].isZero()) {
                out += std::string(any ? " + " : ": ") + "(" + cofactors1[j].str() + ")*g1_" +
                       std::to_string(j + 1);
                any = true;
            }
        if (!any) out += ": 0";
        out += ")";
    } else {
        if (!residue.isZero()) out += " residue " + residue.str();
        if (refutingPoint) {
            out += " at point (";
            for (std::size_t i = 0; i < refutingPoint->size(); ++i) {
                if (i) out += ",";
                out += str((*refutingPoint)[i]);
            }
            out += ")";
        }
        if (!note.empty()) out += " [" + note + "]";
    }
    return out;
}

} // namespace poisred
