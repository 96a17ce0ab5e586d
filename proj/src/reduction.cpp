#include "poisred/reduction.hpp"

#include "poisred/linsolve.hpp"
#include "poisred/modsolve.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace poisred {

std::string str(Verdict v) {
    switch (v) {
        case Verdict::HOLDS: return "HOLDS";
        case Verdict::FAILS: return "FAILS";
        default: return "UNDECIDED";
    }
}

void HypothesisReport::add(std::string name, Verdict v, std::string evidence) {
    entries.push_back(Hypothesis{std::move(name), v, std::move(evidence)});
}

Verdict HypothesisReport::overall() const {
    Verdict out = Verdict::HOLDS;
    for (const auto& h : entries) {
        if (h.verdict == Verdict::FAILS) return Verdict::FAILS;
        if (h.verdict == Verdict::UNDECIDED) out = Verdict::UNDECIDED;
    }
    return out;
}

const Hypothesis* HypothesisReport::find(const std::string& name) const {
    for (const auto& h : entries)
        if (h.name == name) return &h;
    return nullptr;
}

GradedIdeal ReductionProblem::gradedIdealC() const {
    return GradedIdeal(c.chart, c.gens, e.gens, c.samplePoints);
}

GradedIdeal ReductionProblem::gradedIdealA() const {
    return GradedIdeal(a.chart, a.gens, d.gens, a.samplePoints);
}

bool BracketTable::sameResidues(const BracketTable& other) const {
    if (generators.size() != other.generators.size()) return false;
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = 0; j < entries[i].size(); ++j)
            if (!(entries[i][j].residue == other.entries[i][j].residue)) return false;
    return true;
}

namespace {

std::string pointStr(const std::vector<Rational>& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ",";
        out += str(p[i]);
    }
    return out + ")";
}

/// Constant coefficient vector of a constant-coefficient value over a fixed
/// list of odd masks.
std::vector<Rational> coefficientVector(const SuperFn& constVal,
                                        const std::vector<std::uint64_t>& masks) {
    std::vector<Rational> row;
    for (std::uint64_t m : masks) {
        SuperFn c = constVal.evenCoefficient(m);
        Rational v = 0;
        for (const auto& [mm, cc] : c.terms()) v += cc;
        row.push_back(v);
    }
    return row;
}

bool pointwiseInSpan(const SuperFn& target, const std::vector<SuperFn>& spans,
                     const std::vector<Rational>& p) {
    std::vector<std::uint64_t> masks;
    auto collect = [&](const SuperFn& f) {
        for (std::uint64_t m : f.xiMasks())
            if (std::find(masks.begin(), masks.end(), m) == masks.end()) masks.push_back(m);
    };
    collect(target);
    for (const auto& s : spans) collect(s);
    std::vector<std::vector<Rational>> rows;
    for (const auto& s : spans) rows.push_back(coefficientVector(evalEven(s, p), masks));
    return inSpan(rows, coefficientVector(evalEven(target, p), masks));
}

struct SpanVerdict {
    Membership verdict = Membership::UNDECIDED;
    std::string note;
};

/// Is the target a bounded-cofactor combination of the span fields modulo the
/// even ideal? OUT only by sample-point refutation.
SpanVerdict inModuleSpan(const SuperFn& target, const std::vector<SuperFn>& spans,
                         const GroebnerBasis* gb, const std::vector<std::vector<Rational>>& pts,
                         int bound) {
    SpanVerdict out;
    SuperFn reduced = gb ? gb->normalForm(target) : target;
    if (reduced.isZero()) {
        out.verdict = Membership::IN;
        return out;
    }
    for (const auto& p : pts) {
        if (!pointwiseInSpan(target, spans, p)) {
            out.verdict = Membership::OUT;
            out.note = "escapes the span at point " + pointStr(p);
            return out;
        }
    }
    ModuleQuery q;
    q.chart = target.chart();
    q.modulo = gb;
    q.bound = bound;
    q.target = {target};
    for (const auto& s : spans) q.spans.push_back({s});
    if (solveModuleMembership(q).solved) {
        out.verdict = Membership::IN;
        return out;
    }
    out.note = "no cofactor decomposition at bound " + std::to_string(bound);
    return out;
}

Verdict toVerdict(Membership m) {
    switch (m) {
        case Membership::IN: return Verdict::HOLDS;
        case Membership::OUT: return Verdict::FAILS;
        default: return Verdict::UNDECIDED;
    }
}

void mergeVerdict(Verdict& acc, Verdict v, std::string& evidence, const std::string& note) {
    if (v == Verdict::FAILS && acc != Verdict::FAILS) {
        acc = Verdict::FAILS;
        evidence = note;
    } else if (v == Verdict::UNDECIDED && acc == Verdict::HOLDS) {
        acc = Verdict::UNDECIDED;
        evidence = note;
    }
}

/// Span of E wedge TM along C: the products E_a * xi_j.
std::vector<SuperFn> wedgeSpans(const std::vector<SuperFn>& eGens, ChartPtr chart) {
    std::vector<SuperFn> spans;
    for (const auto& ea : eGens)
        for (int j = 0; j < chart->dim(); ++j) {
            SuperFn w = ea * SuperFn::oddCoordinate(chart, j);
            if (w.isZero()) continue;
            if (std::find(spans.begin(), spans.end(), w) == spans.end()) spans.push_back(w);
        }
    return spans;
}

/// Bounded annihilator of a distribution: covector tuples (alpha_1..alpha_n)
/// with <alpha, X> = 0 mod I0 for every generator X, filtered to a subset
/// spanning the pointwise annihilator at every sample point. Empty optional
/// when the bounded solve cannot reach the expected corank.
std::optional<std::vector<std::vector<SuperFn>>> annihilatorBasis(
    const std::vector<SuperFn>& eGens, const SubmanifoldSpec& c, const GroebnerBasis* gb,
    int bound) {
    const int n = c.chart->dim();
    std::vector<std::vector<SuperFn>> basis;
    if (eGens.empty()) {
        for (int i = 0; i < n; ++i) {
            std::vector<SuperFn> cov(static_cast<std::size_t>(n), SuperFn::zero(c.chart));
            cov[static_cast<std::size_t>(i)] = SuperFn::constant(c.chart, 1);
            basis.push_back(std::move(cov));
        }
        return basis;
    }
    ModuleQuery q;
    q.chart = c.chart;
    q.modulo = gb;
    q.bound = bound;
    q.cofactorOddDegrees = {0};
    for (int i = 0; i < n; ++i) {
        std::vector<SuperFn> slots;
        for (const auto& x : eGens) slots.push_back(x.evenCoefficient(std::uint64_t{1} << i));
        q.spans.push_back(std::move(slots));
    }
    std::vector<std::vector<SuperFn>> kernel = solveModuleKernel(q);

    // greedy filter: keep covectors that enlarge the evaluated span somewhere
    auto evalCov = [&](const std::vector<SuperFn>& cov, const std::vector<Rational>& p) {
        std::vector<Rational> row;
        for (const auto& comp : cov) row.push_back(evalScalar(comp, p));
        return row;
    };
    std::vector<std::vector<std::vector<Rational>>> kept(c.samplePoints.size());
    for (const auto& cov : kernel) {
        bool useful = false;
        for (std::size_t pi = 0; pi < c.samplePoints.size(); ++pi) {
            std::vector<Rational> row = evalCov(cov, c.samplePoints[pi]);
            if (!inSpan(kept[pi], row)) useful = true;
        }
        if (!useful) continue;
        basis.push_back(cov);
        for (std::size_t pi = 0; pi < c.samplePoints.size(); ++pi)
            kept[pi].push_back(evalCov(cov, c.samplePoints[pi]));
    }
    // corank validation
    for (std::size_t pi = 0; pi < c.samplePoints.size(); ++pi) {
        int got = matrixRank(kept[pi]);
        int want = n - matrixRank(evaluateFrame(eGens, c.samplePoints[pi]));
        if (got != want) return std::nullopt;
    }
    return basis;
}

GradedIdeal evenIdeal(const SubmanifoldSpec& s) {
    return GradedIdeal(s.chart, s.gens, {}, s.samplePoints);
}

} // namespace

HypothesisReport checkCoisotropicReduction(const Bivector& pi, const SubmanifoldSpec& c,
                                           const DistributionSpec& e, int bound) {
    HypothesisReport rep;
    GradedIdeal ideal(c.chart, c.gens, e.gens, c.samplePoints);
    NormalFormEngine engine(ideal);

    CoisotropyReport coiso = engine.isCoisotropic(bound);
    rep.add("coisotropy", toVerdict(coiso.overall),
            coiso.overall == Membership::IN ? "all generator brackets lie in the ideal"
                                            : coiso.witness);

    const GroebnerBasis* gb = c.gens.empty() ? nullptr : &engine.groebner();
    {
        Verdict v = Verdict::HOLDS;
        std::string evidence = "sharp of every conormal differential lies in E";
        for (const auto& dg : conormalGens(c)) {
            SuperFn img = sharp(pi, dg).value;
            SpanVerdict sv = inModuleSpan(img, e.gens, gb, c.samplePoints, bound);
            std::string note = "sharp(" + (img.isZero() ? std::string("0") : img.str()) + ") " + sv.note;
            mergeVerdict(v, toVerdict(sv.verdict), evidence, note);
        }
        rep.add("sharp-conormal-in-E", v, evidence);
    }
    {
        Verdict v = Verdict::HOLDS;
        std::string evidence = "L_X pi stays in E wedge TM along C for every E generator";
        std::vector<SuperFn> spans = wedgeSpans(e.gens, c.chart);
        for (const auto& x : e.gens) {
            SuperFn lx = lieDerivativeBivector(VectorField(x), pi);
            SpanVerdict sv = inModuleSpan(lx, spans, gb, c.samplePoints, bound);
            std::string note = "L_{" + x.str() + "} pi = " + lx.str() + " " + sv.note;
            mergeVerdict(v, toVerdict(sv.verdict), evidence, note);
        }
        rep.add("lie-derivative-in-E-wedge-TM", v, evidence);
    }
    return rep;
}

HalfcondReport checkHalfcond(const Bivector& pi, const GradedIdeal& csub, int bound) {
    HalfcondReport rep;
    NormalFormEngine engine(csub);
    const GroebnerBasis* gb = csub.gens0.empty() ? nullptr : &engine.groebner();

    Verdict graded = Verdict::HOLDS;
    std::string gradedNote = "{S, g} lies in the ideal for every degree-0 generator";
    for (const auto& g : csub.gens0) {
        SuperFn br = poissonBracket(pi.value, g);
        MembershipCertificate cert = engine.contains(br, bound);
        mergeVerdict(graded, toVerdict(cert.verdict), gradedNote,
                     "{S, " + g.str() + "} = " + br.str() + " " + cert.render());
    }

    Verdict classical = Verdict::HOLDS;
    std::string classicalNote = "sharp of every conormal differential lies in E";
    for (const auto& g : csub.gens0) {
        std::vector<SuperFn> dg;
        for (int i = 0; i < csub.chart->dim(); ++i) dg.push_back(partialEven(g, i));
        SuperFn img = sharp(pi, dg).value;
        SpanVerdict sv = inModuleSpan(img, csub.gens1, gb, csub.samplePoints, bound);
        mergeVerdict(classical, toVerdict(sv.verdict), classicalNote,
                     "sharp(d(" + g.str() + ")) " + sv.note);
    }

    if (graded != Verdict::UNDECIDED && classical != Verdict::UNDECIDED && graded != classical)
        throw std::logic_error("halfcond formulations disagree: bracket route " + str(graded) +
                               ", sharp route " + str(classical));
    if (graded != Verdict::UNDECIDED) {
        rep.verdict = graded;
        rep.evidence = gradedNote + " [confirmed by the sharp-image route]";
    } else {
        rep.verdict = classical;
        rep.evidence = classicalNote;
    }
    return rep;
}

namespace {

/// Bounded search for T in the graded ideal with {S - T, g} in the ideal for
/// every generator g. Returns the correction T when found.
std::optional<SuperFn> normalizerCorrection(const SuperFn& s, const NormalFormEngine& engine,
                                            int bound) {
    const GradedIdeal& ideal = engine.ideal();
    ChartPtr chart = ideal.chart;
    const int n = chart->dim();
    if (!s.isHomogeneous(2)) throw std::invalid_argument("normalizerCorrection expects degree 2");

    // unknown family 1: T = sum lambda_u * T_u, T_u in the graded ideal, degree 2
    std::vector<SuperFn> tBasis;
    for (const auto& g0 : ideal.gens0)
        for (std::uint64_t mu : oddMasksOfSize(n, 2))
            for (const Monomial& m : evenMonomialsUpTo(n, bound)) {
                Monomial mm = m;
                mm.xi = mu;
                SuperFn t = SuperFn::monomialTerm(chart, mm, 1) * g0;
                if (!t.isZero()) tBasis.push_back(t);
            }
    for (const auto& g1 : ideal.gens1)
        for (std::uint64_t mu : oddMasksOfSize(n, 1))
            for (const Monomial& m : evenMonomialsUpTo(n, bound)) {
                Monomial mm = m;
                mm.xi = mu;
                SuperFn t = SuperFn::monomialTerm(chart, mm, 1) * g1;
                if (!t.isZero()) tBasis.push_back(t);
            }

    std::vector<SuperFn> allGens = ideal.gens0;
    allGens.insert(allGens.end(), ideal.gens1.begin(), ideal.gens1.end());

    // unknown layout: [0, tBasis) for T, then per-slot membership cofactors
    struct Contribution {
        int unknown;
        SuperFn w;
    };
    std::vector<std::vector<Contribution>> slotContribs(allGens.size());
    std::vector<SuperFn> slotTargets;
    int next = static_cast<int>(tBasis.size());
    for (std::size_t s_i = 0; s_i < allGens.size(); ++s_i) {
        const SuperFn& g = allGens[s_i];
        SuperFn target = engine.normalForm(poissonBracket(s, g));
        int bracketDeg = 2 + g.oddDegree() - 1;
        slotTargets.push_back(target);
        for (std::size_t u = 0; u < tBasis.size(); ++u) {
            SuperFn w = engine.normalForm(poissonBracket(tBasis[u], g));
            if (!w.isZero()) slotContribs[s_i].push_back({static_cast<int>(u), w});
        }
        for (const auto& g1 : ideal.gens1)
            for (std::uint64_t mu : oddMasksOfSize(n, bracketDeg - 1))
                for (const Monomial& m : evenMonomialsUpTo(n, bound)) {
                    Monomial mm = m;
                    mm.xi = mu;
                    SuperFn w = engine.normalForm(SuperFn::monomialTerm(chart, mm, 1) * g1);
                    if (!w.isZero()) slotContribs[s_i].push_back({next, w});
                    ++next;
                }
    }

    LinearSystem sys(next);
    for (std::size_t s_i = 0; s_i < allGens.size(); ++s_i) {
        std::map<Monomial, std::map<int, Rational>, TermOrder> rows;
        for (const auto& contrib : slotContribs[s_i])
            for (const auto& [m, cc] : contrib.w.terms()) rows[m][contrib.unknown] += cc;
        std::map<Monomial, Rational, TermOrder> rhs;
        for (const auto& [m, cc] : slotTargets[s_i].terms()) rhs[m] = cc;
        for (auto& [m, coeffs] : rows) {
            Rational b = 0;
            auto it = rhs.find(m);
            if (it != rhs.end()) {
                b = it->second;
                rhs.erase(it);
            }
            for (auto cit = coeffs.begin(); cit != coeffs.end();)
                cit = isZero(cit->second) ? coeffs.erase(cit) : std::next(cit);
            sys.addEquation(std::move(coeffs), b);
        }
        for (const auto& [m, b] : rhs) sys.addEquation({}, b);
    }
    if (!sys.solve()) return std::nullopt;
    std::vector<Rational> x = sys.particular();
    SuperFn t = SuperFn::zero(chart);
    for (std::size_t u = 0; u < tBasis.size(); ++u)
        if (!isZero(x[u])) t += x[u] * tBasis[u];
    return t;
}

/// Bounded search for an even correction t (in the even ideal of A) making
/// f + t normalize the graded ideal of A.
std::optional<SuperFn> evenNormalizerLift(const SuperFn& f, const NormalFormEngine& engineA,
                                          int bound) {
    MembershipCertificate direct = engineA.normalizerContains(f, bound);
    if (direct.verdict == Membership::IN) return SuperFn::zero(f.chart());

    const GradedIdeal& ideal = engineA.ideal();
    ChartPtr chart = ideal.chart;
    const int n = chart->dim();
    std::vector<SuperFn> tBasis;
    for (const auto& g0 : ideal.gens0)
        for (const Monomial& m : evenMonomialsUpTo(n, bound)) {
            SuperFn t = SuperFn::monomialTerm(chart, m, 1) * g0;
            if (!t.isZero()) tBasis.push_back(t);
        }

    std::vector<SuperFn> allGens = ideal.gens0;
    allGens.insert(allGens.end(), ideal.gens1.begin(), ideal.gens1.end());
    int next = static_cast<int>(tBasis.size());
    struct Contribution {
        int unknown;
        SuperFn w;
    };
    std::vector<std::vector<Contribution>> slotContribs(allGens.size());
    std::vector<SuperFn> slotTargets;
    for (std::size_t s_i = 0; s_i < allGens.size(); ++s_i) {
        const SuperFn& g = allGens[s_i];
        // {f + t, g} in ideal: sum lambda {t_u, g} + ideal part == -{f, g}
        slotTargets.push_back(engineA.normalForm(-poissonBracket(f, g)));
        int bracketDeg = std::max(0, g.oddDegree() - 1);
        for (std::size_t u = 0; u < tBasis.size(); ++u) {
            SuperFn w = engineA.normalForm(poissonBracket(tBasis[u], g));
            if (!w.isZero()) slotContribs[s_i].push_back({static_cast<int>(u), w});
        }
        if (bracketDeg >= 1)
            for (const auto& g1 : ideal.gens1)
                for (std::uint64_t mu : oddMasksOfSize(n, bracketDeg - 1))
                    for (const Monomial& m : evenMonomialsUpTo(n, bound)) {
                        Monomial mm = m;
                        mm.xi = mu;
                        SuperFn w = engineA.normalForm(-(SuperFn::monomialTerm(chart, mm, 1) * g1));
                        if (!w.isZero()) slotContribs[s_i].push_back({next, w});
                        ++next;
                    }
    }
    LinearSystem sys(next);
    for (std::size_t s_i = 0; s_i < allGens.size(); ++s_i) {
        std::map<Monomial, std::map<int, Rational>, TermOrder> rows;
        for (const auto& contrib : slotContribs[s_i])
            for (const auto& [m, cc] : contrib.w.terms()) rows[m][contrib.unknown] += cc;
        std::map<Monomial, Rational, TermOrder> rhs;
        for (const auto& [m, cc] : slotTargets[s_i].terms()) rhs[m] = cc;
        for (auto& [m, coeffs] : rows) {
            Rational b = 0;
            auto it = rhs.find(m);
            if (it != rhs.end()) {
                b = it->second;
                rhs.erase(it);
            }
            for (auto cit = coeffs.begin(); cit != coeffs.end();)
                cit = isZero(cit->second) ? coeffs.erase(cit) : std::next(cit);
            sys.addEquation(std::move(coeffs), b);
        }
        for (const auto& [m, b] : rhs) sys.addEquation({}, b);
    }
    if (!sys.solve()) return std::nullopt;
    std::vector<Rational> x = sys.particular();
    SuperFn t = SuperFn::zero(chart);
    for (std::size_t u = 0; u < tBasis.size(); ++u)
        if (!isZero(x[u])) t += x[u] * tBasis[u];
    return t;
}

} // namespace

HypothesisReport checkStages(const Bivector& pi, const GradedIdeal& csub, const GradedIdeal& asub,
                             int bound) {
    HypothesisReport rep;
    NormalFormEngine engineC(csub);
    NormalFormEngine engineA(asub);

    CoisotropyReport coiso = engineA.isCoisotropic(bound);
    rep.add("A-coisotropic", toVerdict(coiso.overall),
            coiso.overall == Membership::IN ? "all generator brackets of the stage ideal close"
                                            : coiso.witness);

    {
        MembershipCertificate direct = engineC.normalizerContains(pi.value, bound);
        if (direct.verdict == Membership::IN) {
            rep.add("S-descends-to-quotient", Verdict::HOLDS, "S normalizes the ideal (T = 0)");
        } else {
            std::optional<SuperFn> t = normalizerCorrection(pi.value, engineC, bound);
            if (t)
                rep.add("S-descends-to-quotient", Verdict::HOLDS,
                        "S - T normalizes the ideal for T = " + t->str());
            else
                rep.add("S-descends-to-quotient", Verdict::UNDECIDED,
                        "no normalizer correction at bound " + std::to_string(bound) + "; " +
                            direct.note);
        }
    }

    MembershipCertificate norm = engineA.normalizerContains(pi.value, bound);
    {
        std::string evidence;
        for (const auto& g : asub.gens0) {
            SuperFn br = poissonBracket(pi.value, g);
            MembershipCertificate cert = engineA.contains(br, bound);
            evidence += "{S, " + g.str() + "} " + str(cert.verdict) + "; ";
        }
        for (const auto& g : asub.gens1) {
            SuperFn br = poissonBracket(pi.value, g);
            MembershipCertificate cert = engineA.contains(br, bound);
            evidence += "{S, " + g.str() + "} " + str(cert.verdict) + "; ";
        }
        if (norm.verdict != Membership::IN) evidence += norm.note;
        rep.add("S-normalizes-A", toVerdict(norm.verdict), evidence);
    }

    {
        Verdict v = Verdict::HOLDS;
        std::string evidence = "{S, lift(g)} lies in the C ideal for every degree-0 generator";
        if (norm.verdict != Membership::IN) {
            rep.add("reduced-S-halfcond", Verdict::UNDECIDED,
                    "not transported: S does not descend to the stage quotient");
            return rep;
        }
        for (const auto& g : csub.gens0) {
            std::optional<SuperFn> t = evenNormalizerLift(g, engineA, bound);
            if (!t) {
                mergeVerdict(v, Verdict::UNDECIDED, evidence,
                             "no normalizer lift of " + g.str() + " at bound " +
                                 std::to_string(bound));
                continue;
            }
            SuperFn lift = g + *t;
            SuperFn br = poissonBracket(pi.value, lift);
            MembershipCertificate cert = engineC.contains(br, bound);
            mergeVerdict(v, toVerdict(cert.verdict), evidence,
                         "{S, " + lift.str() + "} = " + br.str() + " " + cert.render());
        }
        rep.add("reduced-S-halfcond", v, evidence);
    }
    return rep;
}

HypothesisReport checkThmA2(const ReductionProblem& problem) {
    HypothesisReport rep;
    const int bound = problem.degreeBound;
    ChartPtr chart = problem.c.chart;
    GroebnerBasis gbC = GroebnerBasis::compute(chart, problem.c.gens);
    const GroebnerBasis* gbCp = problem.c.gens.empty() ? nullptr : &gbC;
    GradedIdeal idealC = problem.gradedIdealC();
    NormalFormEngine engineC(idealC);

    // data validation: the asserted tangent frames must span pointwise
    {
        Verdict v = Verdict::HOLDS;
        std::string evidence = "tangent frames span the pointwise tangent spaces at all samples";
        auto checkFrame = [&](const SubmanifoldSpec& s) {
            for (const auto& p : s.samplePoints) {
                int want = matrixRank(tangentSpaceAtPoint(s.gens, p));
                int got = matrixRank(evaluateFrame(s.tangentGens, p));
                if (got != want)
                    mergeVerdict(v, Verdict::UNDECIDED, evidence,
                                 s.name + ": tangent frame spans rank " + std::to_string(got) +
                                     " of " + std::to_string(want) + " at " + pointStr(p));
            }
        };
        checkFrame(problem.c);
        checkFrame(problem.a);
        rep.add("data-validation", v, evidence);
    }

    rep.add("pi-Poisson", isPoisson(problem.pi) ? Verdict::HOLDS : Verdict::FAILS,
            isPoisson(problem.pi) ? "{S,S} = 0" : "{S,S} != 0");

    IntersectionResult f = intersectDistributionWithTangent(problem.c, problem.e, bound);
    {
        if (f.status == Membership::UNDECIDED) {
            rep.add("F-constant-rank", Verdict::UNDECIDED, f.note);
        } else if (f.f.gens.empty()) {
            rep.add("F-constant-rank", Verdict::HOLDS, "F = 0");
        } else {
            std::vector<std::vector<SuperFn>> frame;
            for (const auto& x : f.f.gens) {
                std::vector<SuperFn> row;
                for (int j = 0; j < chart->dim(); ++j)
                    row.push_back(x.evenCoefficient(std::uint64_t{1} << j));
                frame.push_back(std::move(row));
            }
            NormalFormEngine frameEngine(GradedIdeal(chart, problem.c.gens, {}, problem.c.samplePoints));
            RankReport rr = constantRankMatrix(frame, frameEngine, bound);
            Verdict v = rr.verdict == RankVerdict::CONSTANT_RANK ? Verdict::HOLDS
                        : rr.verdict == RankVerdict::NOT_CONSTANT ? Verdict::FAILS
                                                                  : Verdict::UNDECIDED;
            std::string ev = rr.verdict == RankVerdict::CONSTANT_RANK
                                 ? "F has constant rank " + std::to_string(rr.rank)
                                 : rr.detail;
            std::string gens = "F = span{";
            for (std::size_t k = 0; k < f.f.gens.size(); ++k)
                gens += (k ? ", " : "") + f.f.gens[k].str();
            rep.add("F-constant-rank", v, ev + "; " + gens + "}");
        }
    }
    {
        InvolutivityReport inv = isInvolutive(f.f, evenIdeal(problem.c), bound);
        rep.add("F-involutive", toVerdict(inv.verdict),
                inv.verdict == Membership::IN ? "all F-generator brackets stay in F" : inv.witness);
    }
    {
        Verdict v = Verdict::HOLDS;
        std::string evidence = "every F generator lies in D along C";
        for (const auto& x : f.f.gens) {
            SpanVerdict sv = inModuleSpan(x, problem.d.gens, gbCp, problem.c.samplePoints, bound);
            mergeVerdict(v, toVerdict(sv.verdict), evidence, x.str() + " " + sv.note);
        }
        rep.add("F-in-D", v, evidence);
    }
    {
        Verdict v = Verdict::HOLDS;
        std::string evidence = "every D generator lies in E along C";
        for (const auto& x : problem.d.gens) {
            SpanVerdict sv = inModuleSpan(x, problem.e.gens, gbCp, problem.c.samplePoints, bound);
            mergeVerdict(v, toVerdict(sv.verdict), evidence, x.str() + " " + sv.note);
        }
        rep.add("D-in-E", v, evidence);
    }
    {
        Verdict v = Verdict::HOLDS;
        std::string evidence = "sharp of the E annihilator lies in TC + D along C";
        std::vector<SuperFn> spans = problem.c.tangentGens;
        spans.insert(spans.end(), problem.d.gens.begin(), problem.d.gens.end());
        auto ann = annihilatorBasis(problem.e.gens, problem.c, gbCp, bound);
        if (!ann) {
            v = Verdict::UNDECIDED;
            evidence = "bounded annihilator basis misses the expected corank";
        } else {
            for (const auto& alpha : *ann) {
                SuperFn img = sharp(problem.pi, alpha).value;
                SpanVerdict sv = inModuleSpan(img, spans, gbCp, problem.c.samplePoints, bound);
                std::string covStr;
                for (std::size_t i = 0; i < alpha.size(); ++i)
                    if (!alpha[i].isZero())
                        covStr += (covStr.empty() ? "" : " + ") + std::string("(") + alpha[i].str() +
                                  ")dx" + std::to_string(i + 1);
                mergeVerdict(v, toVerdict(sv.verdict), evidence,
                             "sharp(" + covStr + ") = " + img.str() + " " + sv.note);
            }
        }
        rep.add("sharp-Eann-in-TC-plus-D", v, evidence);
    }
    {
        Verdict v = Verdict::HOLDS;
        std::string evidence = "TA = TC + D along C, both inclusions at the bound";
        std::vector<SuperFn> tcPlusD = problem.c.tangentGens;
        tcPlusD.insert(tcPlusD.end(), problem.d.gens.begin(), problem.d.gens.end());
        for (const auto& x : problem.a.tangentGens) {
            SpanVerdict sv = inModuleSpan(x, tcPlusD, gbCp, problem.c.samplePoints, bound);
            mergeVerdict(v, toVerdict(sv.verdict), evidence,
                         "TA generator " + x.str() + " " + sv.note);
        }
        for (const auto& x : tcPlusD) {
            SpanVerdict sv = inModuleSpan(x, problem.a.tangentGens, gbCp, problem.c.samplePoints, bound);
            mergeVerdict(v, toVerdict(sv.verdict), evidence,
                         "TC+D generator " + x.str() + " " + sv.note);
        }
        for (const auto& p : problem.c.samplePoints) {
            int dimTA = matrixRank(evaluateFrame(problem.a.tangentGens, p));
            int dimTCD = matrixRank(evaluateFrame(tcPlusD, p));
            if (dimTA != dimTCD)
                mergeVerdict(v, Verdict::FAILS, evidence,
                             "dim TA = " + std::to_string(dimTA) + " but dim TC+D = " +
                                 std::to_string(dimTCD) + " at " + pointStr(p));
        }
        rep.add("TA-equals-TC-plus-D", v, evidence);
    }
    {
        InvolutivityReport inv = isInvolutive(problem.d, evenIdeal(problem.a), bound);
        rep.add("D-involutive-on-A", toVerdict(inv.verdict),
                inv.verdict == Membership::IN ? "all D-generator brackets stay in D along A"
                                              : inv.witness);
    }
    {
        Verdict v = Verdict::HOLDS;
        std::string evidence = "L_X pi stays in E wedge TM along C for every D generator extension";
        std::vector<SuperFn> spans = wedgeSpans(problem.e.gens, chart);
        for (const auto& x : problem.d.gens) {
            SuperFn lx = lieDerivativeBivector(VectorField(x), problem.pi);
            SpanVerdict sv = inModuleSpan(lx, spans, gbCp, problem.c.samplePoints, bound);
            mergeVerdict(v, toVerdict(sv.verdict), evidence,
                         "L_{" + x.str() + "} pi = " + lx.str() + " " + sv.note);
        }
        rep.add("lie-derivative-in-E-wedge-TM", v, evidence);
    }
    return rep;
}

namespace {

std::vector<SuperFn> productsOfGenerators(const std::vector<SuperFn>& bgens, ChartPtr chart,
                                          int maxDegree) {
    std::vector<SuperFn> out;
    std::vector<SuperFn> current{SuperFn::constant(chart, 1)};
    out.push_back(current[0]);
    for (int d = 1; d <= maxDegree; ++d) {
        std::vector<SuperFn> next;
        // multisets: extend each product by generators with index >= last used
        // regenerate from scratch to keep indices ordered
        std::vector<std::pair<SuperFn, std::size_t>> layer{{SuperFn::constant(chart, 1), 0}};
        for (int step = 0; step < d; ++step) {
            std::vector<std::pair<SuperFn, std::size_t>> grown;
            for (const auto& [prod, start] : layer)
                for (std::size_t i = start; i < bgens.size(); ++i)
                    grown.emplace_back(prod * bgens[i], i);
            layer = std::move(grown);
        }
        for (auto& [prod, start] : layer) next.push_back(prod);
        for (auto& p : next)
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
}

/// Re-expression of h as a rational-coefficient polynomial in the B
/// generators, modulo the even ideal.
std::optional<SuperFn> decomposeInB(const SuperFn& h, const std::vector<SuperFn>& bgens,
                                    const GroebnerBasis* gb, int bound) {
    ChartPtr chart = h.chart();
    std::vector<SuperFn> products = productsOfGenerators(bgens, chart, bound);
    ModuleQuery q;
    q.chart = chart;
    q.modulo = gb;
    q.bound = 0; // constant coefficients on the products
    q.target = {h};
    for (const auto& p : products) q.spans.push_back({p});
    ModuleSolution sol = solveModuleMembership(q);
    if (!sol.solved) return std::nullopt;
    SuperFn expr = SuperFn::zero(chart);
    for (std::size_t k = 0; k < products.size(); ++k) expr += sol.cofactors[k] * products[k];
    return expr;
}

struct TableContext {
    const ReductionProblem& problem;
    NormalFormEngine engineC;
    std::vector<SuperFn> allEDGens;

    explicit TableContext(const ReductionProblem& p)
        : problem(p), engineC(GradedIdeal(p.c.chart, p.c.gens, {}, p.c.samplePoints)) {
        allEDGens = p.e.gens;
        allEDGens.insert(allEDGens.end(), p.d.gens.begin(), p.d.gens.end());
    }
};

/// B-membership precondition: X(b) vanishes along C for every generator X of
/// E and of D.
void annotateBMembership(TableContext& ctx, const std::vector<SuperFn>& bgens, BracketTable& table) {
    Verdict v = Verdict::HOLDS;
    std::string evidence = "X(b) lies in the cutting ideal for every E and D generator";
    for (const auto& b : bgens)
        for (const auto& x : ctx.allEDGens) {
            SuperFn xb = applyVectorField(x, b);
            if (!ctx.engineC.normalForm(xb).isZero())
                mergeVerdict(v, Verdict::FAILS, evidence,
                             "X(b) = " + xb.str() + " for b = " + b.str() + ", X = " + x.str() +
                                 " does not vanish along C");
        }
    table.notes.push_back(Hypothesis{"B-membership", v, evidence});
}

void fillJacobi(const ReductionProblem& problem, const NormalFormEngine& engineC,
                BracketTable& table) {
    const std::size_t nb = problem.bgens.size();
    bool allDecomposed = true;
    for (std::size_t i = 0; i < nb && allDecomposed; ++i)
        for (std::size_t j = i + 1; j < nb; ++j)
            if (!table.entries[i][j].bExpression) {
                allDecomposed = false;
                break;
            }
    if (!allDecomposed) {
        table.jacobi = Verdict::UNDECIDED;
        table.jacobiEvidence = "missing B-decomposition of some bracket at the bound";
        return;
    }
    auto lift = [&](std::size_t i, std::size_t j) -> SuperFn {
        if (i < j) return *table.entries[i][j].bExpression;
        if (i == j) return SuperFn::zero(problem.c.chart);
        return -*table.entries[j][i].bExpression;
    };
    table.jacobi = Verdict::HOLDS;
    table.jacobiEvidence = "cyclic sums of lifted brackets reduce to 0 mod I";
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = i + 1; j < nb; ++j)
            for (std::size_t k = j + 1; k < nb; ++k) {
                SuperFn sum = fnBracket(problem.pi, lift(i, j), problem.bgens[k]) +
                              fnBracket(problem.pi, lift(j, k), problem.bgens[i]) +
                              fnBracket(problem.pi, lift(k, i), problem.bgens[j]);
                if (!engineC.normalForm(sum).isZero()) {
                    table.jacobi = Verdict::FAILS;
                    table.jacobiEvidence = "cyclic sum for (" + std::to_string(i + 1) + "," +
                                           std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                           ") reduces to " + engineC.normalForm(sum).str();
                    return;
                }
            }
}

BracketTable buildTable(const ReductionProblem& problem,
                        const std::vector<SuperFn>& bgens,
                        const std::function<SuperFn(const SuperFn&, const SuperFn&)>& bracket,
                        bool annotateHypotheses) {
    TableContext ctx(problem);
    const GroebnerBasis* gb = problem.c.gens.empty() ? nullptr : &ctx.engineC.groebner();
    BracketTable table;
    const std::size_t nb = bgens.size();
    for (const auto& b : bgens) table.generators.push_back(ctx.engineC.normalForm(b));
    table.entries.assign(nb, std::vector<BracketEntry>(nb));

    if (annotateHypotheses) annotateBMembership(ctx, bgens, table);

    Verdict braalgD = Verdict::HOLDS;
    std::string braalgDNote = "every bracket annihilates D along C";
    Verdict braalgIB = Verdict::HOLDS;
    std::string braalgIBNote = "every bracket decomposes as ideal + B at the bound";

    for (std::size_t i = 0; i < nb; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            SuperFn h = bracket(bgens[i], bgens[j]);
            BracketEntry& entry = table.entries[i][j];
            entry.residue = ctx.engineC.normalForm(h);
            if (i == j && !entry.residue.isZero())
                throw std::logic_error("bracket table diagonal is nonzero");
            if (j < i) {
                if (!(entry.residue == -table.entries[j][i].residue))
                    throw std::logic_error("bracket table antisymmetry violated");
                entry.bExpression = table.entries[j][i].bExpression
                                        ? std::optional<SuperFn>(-*table.entries[j][i].bExpression)
                                        : std::nullopt;
                entry.decomposition = table.entries[j][i].decomposition;
                continue;
            }
            if (i == j) {
                entry.bExpression = SuperFn::zero(problem.c.chart);
                entry.decomposition = Membership::IN;
                continue;
            }
            // braalg (a): the bracket annihilates D along C
            for (const auto& x : problem.d.gens) {
                SuperFn xh = applyVectorField(x, h);
                if (!ctx.engineC.normalForm(xh).isZero())
                    mergeVerdict(braalgD, Verdict::FAILS, braalgDNote,
                                 "X({b_i,b_j}) = " + xh.str() + " for X = " + x.str() +
                                     " does not vanish along C");
            }
            // braalg (b): bracket = ideal + polynomial in the B generators
            std::optional<SuperFn> expr = decomposeInB(h, bgens, gb, problem.degreeBound);
            if (expr) {
                entry.bExpression = ctx.engineC.normalForm(*expr);
                entry.decomposition = Membership::IN;
            } else {
                entry.decomposition = Membership::UNDECIDED;
                mergeVerdict(braalgIB, Verdict::UNDECIDED, braalgIBNote,
                             "{b" + std::to_string(i + 1) + ", b" + std::to_string(j + 1) +
                                 "} has no B-decomposition at bound " +
                                 std::to_string(problem.degreeBound));
            }
        }
    }

    if (annotateHypotheses) {
        table.notes.push_back(Hypothesis{"braalg-annihilates-D", braalgD, braalgDNote});
        table.notes.push_back(Hypothesis{"braalg-ideal-plus-B", braalgIB, braalgIBNote});

        // shaalg: {B, I cap D-side} subset I on the qualifying generators
        Verdict shaalg = Verdict::HOLDS;
        std::string shaalgNote = "brackets with D-flat cutting functions stay in the ideal";
        for (const auto& g : problem.c.gens) {
            bool dFlat = true;
            for (const auto& x : problem.d.gens)
                if (!ctx.engineC.normalForm(applyVectorField(x, g)).isZero()) dFlat = false;
            if (!dFlat) continue;
            for (const auto& b : bgens) {
                SuperFn br = fnBracket(problem.pi, b, g);
                if (!ctx.engineC.normalForm(br).isZero())
                    mergeVerdict(shaalg, Verdict::FAILS, shaalgNote,
                                 "{" + b.str() + ", " + g.str() + "} = " + br.str() +
                                     " escapes the ideal");
            }
        }
        table.notes.push_back(Hypothesis{"shaalg", shaalg, shaalgNote});
    }

    fillJacobi(problem, ctx.engineC, table);
    return table;
}

} // namespace

BracketTable algebraicReduce(const ReductionProblem& problem) {
    return buildTable(problem, problem.bgens,
                      [&](const SuperFn& f, const SuperFn& g) { return fnBracket(problem.pi, f, g); },
                      true);
}

BracketTable gradedReduce(const ReductionProblem& problem, std::uint64_t perturbSeed,
                          int perturbRounds) {
    NormalFormEngine engine(problem.gradedIdealC());
    // lifts must normalize the graded ideal (degree-0 normalizer membership)
    for (const auto& b : problem.bgens) {
        MembershipCertificate cert = engine.normalizerContains(b, problem.degreeBound);
        if (cert.verdict == Membership::OUT)
            throw std::invalid_argument("B generator " + b.str() + " is not a normalizer lift: " +
                                        cert.note);
    }
    const Rational sigma(kDerivedBracketSign);
    auto derived = [&](const SuperFn& f, const SuperFn& g) {
        return sigma * poissonBracket(poissonBracket(problem.pi.value, f), g);
    };
    BracketTable table = buildTable(problem, problem.bgens, derived, false);

    if (perturbRounds > 0) {
        std::mt19937_64 rng(perturbSeed);
        TableContext ctx(problem);
        std::vector<SuperFn> candidates;
        ChartPtr chart = problem.c.chart;
        for (const auto& g : problem.c.gens) {
            candidates.push_back(g);
            for (int i = 0; i < chart->dim(); ++i)
                candidates.push_back(SuperFn::coordinate(chart, i) * g);
            for (const auto& g2 : problem.c.gens) candidates.push_back(g * g2);
        }
        // keep only perturbations compatible with the B conditions
        std::vector<SuperFn> safe;
        for (const auto& t : candidates) {
            bool ok = true;
            for (const auto& x : ctx.allEDGens)
                if (!ctx.engineC.normalForm(applyVectorField(x, t)).isZero()) ok = false;
            if (ok && !t.isZero()) safe.push_back(t);
        }
        if (!safe.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, safe.size() - 1);
            std::uniform_int_distribution<int> coeff(-3, 3);
            for (int round = 0; round < perturbRounds; ++round) {
                std::vector<SuperFn> perturbed;
                for (const auto& b : problem.bgens) {
                    SuperFn t = ratio(coeff(rng)) * safe[pick(rng)];
                    perturbed.push_back(b + t);
                }
                BracketTable again = buildTable(problem, perturbed, derived, false);
                if (!table.sameResidues(again))
                    throw std::logic_error(
                        "lift dependence detected: perturbed lifts change the reduced table");
            }
        }
    }
    return table;
}

SuperFn identityXfg(const VectorField& x, const Bivector& pi, const SuperFn& f, const SuperFn& g) {
    SuperFn lhs = applyVectorField(x.value, fnBracket(pi, f, g));
    Bivector lx(lieDerivativeBivector(x, pi));
    SuperFn rhs = fnBracket(lx, f, g) + fnBracket(pi, applyVectorField(x.value, f), g) +
                  fnBracket(pi, f, applyVectorField(x.value, g));
    return lhs - rhs;
}

} // namespace poisred
