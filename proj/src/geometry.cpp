#include "poisred/geometry.hpp"

#include "poisred/linsolve.hpp"
#include "poisred/modsolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace poisred {

std::string str(RankVerdict v) {
    switch (v) {
        case RankVerdict::CONSTANT_RANK: return "CONSTANT_RANK";
        case RankVerdict::NOT_CONSTANT: return "NOT_CONSTANT";
        default: return "UNDECIDED";
    }
}

std::vector<std::vector<Rational>> evaluateFrame(const std::vector<SuperFn>& fields,
                                                 const std::vector<Rational>& point) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& x : fields) {
        SuperFn v = evalEven(x, point);
        std::vector<Rational> row;
        const int n = x.n();
        for (int j = 0; j < n; ++j) {
            SuperFn c = v.evenCoefficient(std::uint64_t{1} << j);
            Rational val = 0;
            for (const auto& [m, cc] : c.terms()) val += cc;
            row.push_back(val);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::vector<Rational>> tangentSpaceAtPoint(const std::vector<SuperFn>& gens,
                                                       const std::vector<Rational>& point) {
    if (gens.empty()) {
        // whole space
        std::vector<std::vector<Rational>> basis;
        const std::size_t n = point.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Rational> e(n, Rational(0));
            e[i] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    const int n = gens[0].n();
    LinearSystem sys(n);
    for (const auto& g : gens) {
        std::map<int, Rational> row;
        for (int i = 0; i < n; ++i) {
            Rational d = evalScalar(partialEven(g, i), point);
            if (!isZero(d)) row[i] = d;
        }
        sys.addEquation(std::move(row), 0);
    }
    sys.solve();
    return sys.nullspace();
}

namespace {

int jacobianRank(const std::vector<SuperFn>& gens, const std::vector<Rational>& point) {
    if (gens.empty()) return 0;
    std::vector<std::vector<Rational>> rows;
    const int n = gens[0].n();
    for (const auto& g : gens) {
        std::vector<Rational> row;
        for (int i = 0; i < n; ++i) row.push_back(evalScalar(partialEven(g, i), point));
        rows.push_back(std::move(row));
    }
    return matrixRank(std::move(rows));
}

int pointwiseIntersectionDim(const std::vector<SuperFn>& cutGens,
                             const std::vector<SuperFn>& frame,
                             const std::vector<Rational>& point) {
    auto tc = tangentSpaceAtPoint(cutGens, point);
    auto e = evaluateFrame(frame, point);
    int dimTC = matrixRank(tc);
    int dimE = matrixRank(e);
    std::vector<std::vector<Rational>> joint = tc;
    joint.insert(joint.end(), e.begin(), e.end());
    int dimSum = matrixRank(std::move(joint));
    return dimTC + dimE - dimSum;
}

} // namespace

SubmanifoldSpec::SubmanifoldSpec(ChartPtr chartIn, std::string nameIn, std::vector<SuperFn> gensIn,
                                 std::vector<SuperFn> tangentGensIn,
                                 std::vector<std::vector<Rational>> pointsIn, int verifyBound)
    : chart(std::move(chartIn)), name(std::move(nameIn)), gens(std::move(gensIn)),
      tangentGens(std::move(tangentGensIn)), samplePoints(std::move(pointsIn)) {
    for (const auto& g : gens)
        if (!g.isHomogeneous(0)) throw std::invalid_argument(name + ": cutting function has odd part");
    for (const auto& x : tangentGens)
        if (!x.isHomogeneous(1)) throw std::invalid_argument(name + ": tangent generator not degree 1");
    if (samplePoints.empty()) throw std::invalid_argument(name + ": at least one sample point required");
    for (const auto& p : samplePoints) {
        if (p.size() != static_cast<std::size_t>(chart->dim()))
            throw std::invalid_argument(name + ": sample point dimension mismatch");
        for (const auto& g : gens)
            if (!isZero(evalScalar(g, p)))
                throw std::invalid_argument(name + ": sample point off the locus");
    }
    if (!gens.empty()) {
        GroebnerBasis gb = GroebnerBasis::compute(chart, gens);
        for (const auto& x : tangentGens)
            for (const auto& g : gens)
                if (!gb.normalForm(applyVectorField(x, g)).isZero())
                    throw std::invalid_argument(name + ": tangent generator " + x.str() +
                                                " is not tangent to the locus of " + g.str());
        int r0 = jacobianRank(gens, samplePoints.front());
        for (const auto& p : samplePoints)
            if (jacobianRank(gens, p) != r0)
                throw std::invalid_argument(name + ": Jacobian rank differs between sample points");
    }
    (void)verifyBound;
}

GradedIdeal SubmanifoldSpec::cuttingIdeal() const { return GradedIdeal(chart, gens, {}, samplePoints); }

std::vector<std::vector<SuperFn>> conormalGens(const SubmanifoldSpec& c) {
    std::vector<std::vector<SuperFn>> out;
    const int n = c.chart->dim();
    for (const auto& g : c.gens) {
        std::vector<SuperFn> dg;
        for (int i = 0; i < n; ++i) dg.push_back(partialEven(g, i));
        out.push_back(std::move(dg));
    }
    return out;
}

IntersectionResult intersectDistributionWithTangent(const SubmanifoldSpec& c,
                                                    const DistributionSpec& e, int bound) {
    IntersectionResult out;
    out.f.name = "TC^" + e.name;
    out.f.base = e.base;
    if (e.isZero()) return out;

    GroebnerBasis gb = GroebnerBasis::compute(c.chart, c.gens);
    ModuleQuery q;
    q.chart = c.chart;
    q.modulo = c.gens.empty() ? nullptr : &gb;
    q.bound = bound;
    q.cofactorOddDegrees = {0};
    // slot per cutting function: tangency means sum_a c_a * X_a(g_m) = 0 mod I0
    for (const auto& x : e.gens) {
        std::vector<SuperFn> slots;
        for (const auto& g : c.gens) slots.push_back(applyVectorField(x, g));
        q.spans.push_back(std::move(slots));
    }
    if (c.gens.empty()) {
        // everything is tangent to the full body
        out.f.gens = e.gens;
        for (std::size_t a = 0; a < e.gens.size(); ++a) {
            std::vector<SuperFn> row(e.gens.size(), SuperFn::zero(c.chart));
            row[a] = SuperFn::constant(c.chart, 1);
            out.cofactors.push_back(std::move(row));
        }
        return out;
    }
    std::vector<std::vector<SuperFn>> kernel = solveModuleKernel(q);
    // keep a pointwise-spanning subset: solutions that vanish along C add
    // nothing to the distribution
    std::vector<std::vector<std::vector<Rational>>> kept(c.samplePoints.size());
    for (const auto& tuple : kernel) {
        SuperFn gen = SuperFn::zero(c.chart);
        for (std::size_t a = 0; a < e.gens.size(); ++a) gen += tuple[a] * e.gens[a];
        if (gb.normalForm(gen).isZero()) continue;
        bool useful = false;
        for (std::size_t pi = 0; pi < c.samplePoints.size(); ++pi) {
            auto row = evaluateFrame({gen}, c.samplePoints[pi])[0];
            if (!inSpan(kept[pi], row)) useful = true;
        }
        if (!useful) continue;
        for (std::size_t pi = 0; pi < c.samplePoints.size(); ++pi)
            kept[pi].push_back(evaluateFrame({gen}, c.samplePoints[pi])[0]);
        out.f.gens.push_back(gen);
        out.cofactors.push_back(tuple);
    }
    // pointwise cross-check: the found generators must account for the full
    // intersection dimension at every sample point
    for (const auto& p : c.samplePoints) {
        int want = pointwiseIntersectionDim(c.gens, e.gens, p);
        int have = matrixRank(evaluateFrame(out.f.gens, p));
        if (have < want) {
            out.status = Membership::UNDECIDED;
            out.note = "bounded solve reaches rank " + std::to_string(have) + " of " +
                       std::to_string(want) + " at a sample point";
            break;
        }
    }
    return out;
}

InvolutivityReport isInvolutive(const DistributionSpec& d, const GradedIdeal& modulo, int bound) {
    InvolutivityReport rep;
    if (d.gens.size() < 2) return rep; // zero or a single generator: vacuous
    GroebnerBasis gb = GroebnerBasis::compute(modulo.chart, modulo.gens0);
    for (std::size_t i = 0; i < d.gens.size(); ++i) {
        for (std::size_t j = i + 1; j < d.gens.size(); ++j) {
            SuperFn br = schoutenDirect(d.gens[i], d.gens[j]);
            if (br.isZero()) continue;
            ModuleQuery q;
            q.chart = modulo.chart;
            q.modulo = modulo.gens0.empty() ? nullptr : &gb;
            q.bound = bound;
            q.target = {br};
            for (const auto& x : d.gens) q.spans.push_back({x});
            if (solveModuleMembership(q).solved) continue;
            // refute at a sample point if possible
            bool refuted = false;
            for (const auto& p : modulo.samplePoints) {
                auto frame = evaluateFrame(d.gens, p);
                auto target = evaluateFrame({br}, p);
                if (!inSpan(frame, target[0])) {
                    rep.verdict = Membership::OUT;
                    rep.witness = "[" + d.gens[i].str() + ", " + d.gens[j].str() + "] = " + br.str() +
                                  " leaves the span at a sample point";
                    refuted = true;
                    break;
                }
            }
            if (refuted) return rep;
            if (rep.verdict == Membership::IN) {
                rep.verdict = Membership::UNDECIDED;
                rep.witness = "[" + d.gens[i].str() + ", " + d.gens[j].str() +
                              "] not expressible at bound " + std::to_string(bound);
            }
        }
    }
    return rep;
}

RankReport constantRankMatrix(const std::vector<std::vector<SuperFn>>& matrixIn,
                              const NormalFormEngine& engine, int bound) {
    RankReport rep;
    if (matrixIn.empty()) {
        rep.verdict = RankVerdict::CONSTANT_RANK;
        rep.rank = 0;
        return rep;
    }
    const std::size_t cols = matrixIn[0].size();
    for (const auto& row : matrixIn)
        if (row.size() != cols) throw std::invalid_argument("ragged matrix");

    std::vector<std::vector<SuperFn>> m;
    for (const auto& row : matrixIn) {
        std::vector<SuperFn> r;
        for (const auto& e : row) r.push_back(engine.normalForm(e));
        m.push_back(std::move(r));
    }
    const std::size_t rows = m.size();
    const ChartPtr& chart = engine.ideal().chart;

    auto constantValue = [](const SuperFn& f) -> std::optional<Rational> {
        if (f.isZero()) return Rational(0);
        if (f.terms().size() != 1) return std::nullopt;
        const auto& [mono, c] = *f.terms().begin();
        if (mono.evenDegree() != 0 || mono.xi != 0) return std::nullopt;
        return c;
    };

    std::vector<bool> pivotRow(rows, false), pivotCol(cols, false);
    std::vector<std::size_t> pivotRows;
    int pivots = 0;
    while (true) {
        std::size_t pr = rows, pc = cols;
        for (std::size_t r = 0; r < rows && pr == rows; ++r) {
            if (pivotRow[r]) continue;
            for (std::size_t c = 0; c < cols; ++c) {
                if (pivotCol[c]) continue;
                auto v = constantValue(m[r][c]);
                if (v && !isZero(*v)) {
                    pr = r;
                    pc = c;
                    break;
                }
            }
        }
        if (pr == rows) break;
        Rational pv = *constantValue(m[pr][pc]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr || m[r][pc].isZero()) continue;
            SuperFn factor = (Rational(1) / pv) * m[r][pc];
            for (std::size_t c = 0; c < cols; ++c)
                m[r][c] = engine.normalForm(m[r][c] - factor * m[pr][c]);
        }
        pivotRow[pr] = true;
        pivotCol[pc] = true;
        pivotRows.push_back(pr);
        ++pivots;
    }

    // residual rows must vanish mod I or be bounded combinations of pivot rows
    bool residualsClear = true;
    for (std::size_t r = 0; r < rows && residualsClear; ++r) {
        if (pivotRow[r]) continue;
        bool zero = true;
        for (std::size_t c = 0; c < cols; ++c)
            if (!m[r][c].isZero()) zero = false;
        if (zero) continue;
        ModuleQuery q;
        q.chart = chart;
        q.modulo = &engine.groebner();
        q.bound = bound;
        q.target.assign(m[r].begin(), m[r].end());
        for (std::size_t p : pivotRows) q.spans.push_back(m[p]);
        q.cofactorOddDegrees.clear();
        for (int k = 0; k <= chart->dim(); ++k) q.cofactorOddDegrees.push_back(k);
        if (!solveModuleMembership(q).solved) residualsClear = false;
    }

    // pointwise ranks of the degree-0 part of the original (reduced) matrix
    std::vector<int> pointRanks;
    for (const auto& p : engine.ideal().samplePoints) {
        std::vector<std::vector<Rational>> numeric;
        for (const auto& row : matrixIn) {
            std::vector<Rational> nr;
            for (const auto& e : row)
                nr.push_back(evalScalar(engine.normalForm(e).component(0), p));
            numeric.push_back(std::move(nr));
        }
        pointRanks.push_back(matrixRank(std::move(numeric)));
    }
    for (std::size_t i = 1; i < pointRanks.size(); ++i) {
        if (pointRanks[i] != pointRanks[0]) {
            rep.verdict = RankVerdict::NOT_CONSTANT;
            rep.witnessPoints = {engine.ideal().samplePoints[0], engine.ideal().samplePoints[i]};
            rep.witnessRanks = {pointRanks[0], pointRanks[i]};
            rep.detail = "degree-0 rank differs between sample points";
            return rep;
        }
    }

    if (residualsClear && !pointRanks.empty() && pointRanks[0] == pivots) {
        rep.verdict = RankVerdict::CONSTANT_RANK;
        rep.rank = pivots;
        return rep;
    }
    if (residualsClear && pointRanks.empty()) {
        rep.verdict = RankVerdict::CONSTANT_RANK;
        rep.rank = pivots;
        return rep;
    }
    rep.verdict = RankVerdict::UNDECIDED;
    rep.detail = "elimination stalled with agreeing sample points";
    return rep;
}

PresymplecticReport isPresymplectic(const GradedIdeal& csub, int bound) {
    PresymplecticReport rep;
    NormalFormEngine engine(csub);

    // well-formedness: generator data must present subbundles pointwise
    int jr0 = -1, er0 = -1;
    std::size_t badIndex = 0;
    for (std::size_t i = 0; i < csub.samplePoints.size(); ++i) {
        const auto& p = csub.samplePoints[i];
        int jr = jacobianRank(csub.gens0, p);
        int er = matrixRank(evaluateFrame(csub.gens1, p));
        if (i == 0) {
            jr0 = jr;
            er0 = er;
        } else if (jr != jr0 || er != er0) {
            rep.wellFormed = Membership::OUT;
            badIndex = i;
            break;
        }
    }
    if (rep.wellFormed == Membership::OUT) {
        rep.overall = Membership::OUT;
        rep.witness = "generator frame rank jumps between sample points";
        rep.classicalRank.verdict = RankVerdict::NOT_CONSTANT;
        rep.classicalRank.witnessPoints = {csub.samplePoints[0], csub.samplePoints[badIndex]};
        auto dimAt = [&](const std::vector<Rational>& p) {
            return pointwiseIntersectionDim(csub.gens0, csub.gens1, p);
        };
        rep.classicalRank.witnessRanks = {dimAt(csub.samplePoints[0]),
                                          dimAt(csub.samplePoints[badIndex])};
        return rep;
    }

    // graded criterion: generator bracket matrix mod I has constant rank
    std::vector<SuperFn> allGens = csub.gens0;
    allGens.insert(allGens.end(), csub.gens1.begin(), csub.gens1.end());
    std::vector<std::vector<SuperFn>> bracketMatrix;
    for (const auto& a : allGens) {
        std::vector<SuperFn> row;
        for (const auto& b : allGens) row.push_back(poissonBracket(a, b));
        bracketMatrix.push_back(std::move(row));
    }
    rep.gradedMatrix = constantRankMatrix(bracketMatrix, engine, bound);

    // classical criterion: TC cap E constant rank and involutive
    SubmanifoldSpec c(csub.chart, "C", csub.gens0, {}, csub.samplePoints);
    DistributionSpec e{"E", csub.gens1, nullptr};
    IntersectionResult f = intersectDistributionWithTangent(c, e, bound);
    if (f.status == Membership::UNDECIDED) {
        rep.classicalRank.verdict = RankVerdict::UNDECIDED;
        rep.classicalRank.detail = f.note;
    } else if (f.f.gens.empty()) {
        rep.classicalRank.verdict = RankVerdict::CONSTANT_RANK;
        rep.classicalRank.rank = 0;
    } else {
        // frame matrix of F generators, rows = generators, cols = components
        std::vector<std::vector<SuperFn>> frame;
        for (const auto& x : f.f.gens) {
            std::vector<SuperFn> row;
            for (int j = 0; j < csub.chart->dim(); ++j)
                row.push_back(x.evenCoefficient(std::uint64_t{1} << j));
            frame.push_back(std::move(row));
        }
        rep.classicalRank = constantRankMatrix(frame, engine, bound);
    }
    GradedIdeal evenOnly(csub.chart, csub.gens0, {}, csub.samplePoints);
    rep.classicalInvolutive = isInvolutive(f.f, evenOnly, bound);

    bool gradedDecided = rep.gradedMatrix.verdict != RankVerdict::UNDECIDED;
    bool classicalDecided = rep.classicalRank.verdict != RankVerdict::UNDECIDED &&
                            rep.classicalInvolutive.verdict != Membership::UNDECIDED;
    bool gradedYes = rep.gradedMatrix.verdict == RankVerdict::CONSTANT_RANK;
    bool classicalYes = rep.classicalRank.verdict == RankVerdict::CONSTANT_RANK &&
                        rep.classicalInvolutive.verdict == Membership::IN;
    if (gradedDecided && classicalDecided && gradedYes != classicalYes)
        throw std::logic_error("presymplectic criteria disagree: graded matrix says " +
                               std::string(gradedYes ? "yes" : "no") + ", classical says " +
                               std::string(classicalYes ? "yes" : "no"));
    if (gradedDecided) {
        rep.overall = gradedYes ? Membership::IN : Membership::OUT;
    } else if (classicalDecided) {
        rep.overall = classicalYes ? Membership::IN : Membership::OUT;
    } else {
        rep.overall = Membership::UNDECIDED;
    }
    if (rep.overall == Membership::OUT && rep.witness.empty()) {
        if (rep.gradedMatrix.verdict == RankVerdict::NOT_CONSTANT)
            rep.witness = "bracket matrix rank jumps between sample points";
        else if (rep.classicalInvolutive.verdict == Membership::OUT)
            rep.witness = rep.classicalInvolutive.witness;
        else
            rep.witness = "TC cap E rank jumps between sample points";
    }
    return rep;
}

} // namespace poisred
