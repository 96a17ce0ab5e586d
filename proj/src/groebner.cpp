#include "poisred/groebner.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace poisred {

bool grevlexLess(const std::vector<int>& a, const std::vector<int>& b) {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    // tie: a < b iff the last nonzero entry of a-b is positive
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

Monomial leadingMonomial(const SuperFn& f) {
    if (f.isZero()) throw std::invalid_argument("leading monomial of zero");
    const Monomial* best = nullptr;
    for (const auto& [m, c] : f.terms()) {
        if (m.xi != 0) throw std::invalid_argument("leading monomial needs an even polynomial");
        if (!best || grevlexLess(best->xexp, m.xexp)) best = &m;
    }
    return *best;
}

namespace {

bool divides(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

std::vector<int> expQuotient(const std::vector<int>& num, const std::vector<int>& den) {
    std::vector<int> q(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) q[i] = num[i] - den[i];
    return q;
}

std::vector<int> expLcm(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> l(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
    return l;
}

Rational leadingCoeff(const SuperFn& f, const Monomial& lm) {
    return f.terms().at(lm);
}

struct TrackedPoly {
    SuperFn p;
    std::vector<SuperFn> rep; // p == sum rep[i] * gens[i]
};

void scale(TrackedPoly& t, const Rational& c) {
    t.p = c * t.p;
    for (auto& r : t.rep) r = c * r;
}

void axpy(TrackedPoly& t, const SuperFn& factor, const TrackedPoly& other) {
    t.p -= factor * other.p;
    for (std::size_t i = 0; i < t.rep.size(); ++i) t.rep[i] -= factor * other.rep[i];
}

/// Fully reduce t against basis; quotient bookkeeping goes through rep.
void reduceTracked(TrackedPoly& t, const std::vector<TrackedPoly>& basis,
                   const std::vector<Monomial>& leading, ChartPtr chart) {
    bool changed = true;
    while (changed && !t.p.isZero()) {
        changed = false;
        for (const auto& [m, c] : t.p.terms()) {
            for (std::size_t k = 0; k < basis.size(); ++k) {
                if (!divides(leading[k].xexp, m.xexp)) continue;
                Monomial q;
                q.xexp = expQuotient(m.xexp, leading[k].xexp);
                q.xi = m.xi;
                Rational lc = leadingCoeff(basis[k].p, leading[k]);
                SuperFn factor = SuperFn::monomialTerm(chart, q, c / lc);
                axpy(t, factor, basis[k]);
                changed = true;
                break;
            }
            if (changed) break;
        }
    }
}

} // namespace

GroebnerBasis GroebnerBasis::compute(ChartPtr chart, const std::vector<SuperFn>& gens) {
    GroebnerBasis out;
    out.chart_ = chart;
    out.gens_ = gens;

    std::vector<TrackedPoly> basis;
    std::vector<Monomial> leading;
    auto addElement = [&](TrackedPoly t) {
        Monomial lm = leadingMonomial(t.p);
        Rational lc = leadingCoeff(t.p, lm);
        scale(t, 1 / lc);
        basis.push_back(std::move(t));
        leading.push_back(lm);
    };

    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!gens[i].isHomogeneous(0)) throw std::invalid_argument("even ideal generator has odd part");
        if (gens[i].isZero()) continue;
        TrackedPoly t;
        t.p = gens[i];
        t.rep.assign(gens.size(), SuperFn::zero(chart));
        t.rep[i] = SuperFn::constant(chart, 1);
        reduceTracked(t, basis, leading, chart);
        if (!t.p.isZero()) addElement(std::move(t));
    }

    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        // Buchberger's coprimality criterion
        bool coprime = true;
        for (std::size_t v = 0; v < leading[i].xexp.size(); ++v)
            if (leading[i].xexp[v] > 0 && leading[j].xexp[v] > 0) { coprime = false; break; }
        if (coprime) continue;
        std::vector<int> l = expLcm(leading[i].xexp, leading[j].xexp);
        Monomial ui, uj;
        ui.xexp = expQuotient(l, leading[i].xexp);
        uj.xexp = expQuotient(l, leading[j].xexp);
        TrackedPoly s;
        s.p = SuperFn::zero(chart);
        s.rep.assign(out.gens_.size(), SuperFn::zero(chart));
        axpy(s, SuperFn::monomialTerm(chart, uj, 1), basis[j]);
        scale(s, -1);
        axpy(s, SuperFn::monomialTerm(chart, ui, 1), basis[i]);
        scale(s, -1);
        // s.p = ui*basis[i] - uj*basis[j] (both monic)
        reduceTracked(s, basis, leading, chart);
        if (!s.p.isZero()) {
            addElement(std::move(s));
            for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by another's
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || !keep[i] || !keep[j]) continue;
            if (divides(leading[j].xexp, leading[i].xexp) && !(leading[i].xexp == leading[j].xexp))
                keep[i] = false;
            else if (leading[i].xexp == leading[j].xexp && j < i)
                keep[i] = false;
        }
    std::vector<TrackedPoly> minimal;
    std::vector<Monomial> minimalLeading;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) {
            minimal.push_back(std::move(basis[i]));
            minimalLeading.push_back(leading[i]);
        }

    // inter-reduce tails
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<TrackedPoly> others;
        std::vector<Monomial> othersLeading;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) {
                others.push_back(minimal[j]);
                othersLeading.push_back(minimalLeading[j]);
            }
        reduceTracked(minimal[i], others, othersLeading, chart);
        Rational lc = leadingCoeff(minimal[i].p, minimalLeading[i]);
        scale(minimal[i], 1 / lc);
    }

    // deterministic order: ascending leading monomial
    std::vector<std::size_t> order(minimal.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return grevlexLess(minimalLeading[a].xexp, minimalLeading[b].xexp);
    });
    for (std::size_t idx : order) {
        out.basis_.push_back(minimal[idx].p);
        out.reps_.push_back(minimal[idx].rep);
        out.leading_.push_back(minimalLeading[idx]);
    }
    return out;
}

DivisionResult GroebnerBasis::divide(const SuperFn& f) const {
    DivisionResult res;
    res.quotients.assign(basis_.size(), SuperFn::zero(chart_));
    SuperFn work = f;
    SuperFn remainder = SuperFn::zero(chart_);
    while (!work.isZero()) {
        bool reduced = false;
        for (const auto& [m, c] : work.terms()) {
            for (std::size_t k = 0; k < basis_.size(); ++k) {
                if (!divides(leading_[k].xexp, m.xexp)) continue;
                Monomial q;
                q.xexp = expQuotient(m.xexp, leading_[k].xexp);
                q.xi = m.xi;
                SuperFn factor = SuperFn::monomialTerm(chart_, q, c); // basis is monic
                res.quotients[k] += factor;
                work -= factor * basis_[k];
                reduced = true;
                break;
            }
            if (reduced) break;
        }
        if (!reduced) {
            // move the first (storage-order) term to the remainder
            const auto& [m, c] = *work.terms().begin();
            SuperFn t = SuperFn::monomialTerm(chart_, m, c);
            remainder += t;
            work -= t;
        }
    }
    res.remainder = remainder;
    return res;
}

SuperFn GroebnerBasis::normalForm(const SuperFn& f) const {
    if (basis_.empty()) return f;
    return divide(f).remainder;
}

std::vector<SuperFn> GroebnerBasis::cofactorsOnGenerators(const DivisionResult& d) const {
    std::vector<SuperFn> cof(gens_.size(), SuperFn::zero(chart_));
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (d.quotients[k].isZero()) continue;
        for (std::size_t i = 0; i < gens_.size(); ++i) cof[i] += d.quotients[k] * reps_[k][i];
    }
    return cof;
}

} // namespace poisred
