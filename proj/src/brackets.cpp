#include "poisred/brackets.hpp"

#include <stdexcept>

namespace poisred {

namespace {

void requireHomogeneous(const SuperFn& f, int k, const char* what) {
    if (!f.isHomogeneous(k)) throw std::invalid_argument(std::string(what) + ": wrong odd degree");
}

SuperFn bracketHomogeneousFirst(const SuperFn& f, int degF, const SuperFn& g) {
    SuperFn out = SuperFn::zero(f.chart());
    const bool flip = (degF % 2 == 0); // (-1)^(|F|+1)
    for (int i = 0; i < f.n(); ++i) {
        SuperFn a = partialOdd(f, i) * partialEven(g, i);
        SuperFn b = partialEven(f, i) * partialOdd(g, i);
        out += flip ? -a : a;
        out -= b;
    }
    return out;
}

} // namespace

Bivector::Bivector(SuperFn v) : value(std::move(v)) { requireHomogeneous(value, 2, "bivector"); }

VectorField::VectorField(SuperFn v) : value(std::move(v)) {
    requireHomogeneous(value, 1, "vector field");
}

SuperFn poissonBracket(const SuperFn& f, const SuperFn& g) {
    if (!compatible(*f.chart(), *g.chart())) throw std::invalid_argument("chart mismatch");
    SuperFn out = SuperFn::zero(f.chart());
    for (int k = 0; k <= f.n(); ++k) {
        SuperFn fk = f.component(k);
        if (fk.isZero()) continue;
        out += bracketHomogeneousFirst(fk, k, g);
    }
    return out;
}

SuperFn applyVectorField(const SuperFn& x, const SuperFn& f) {
    SuperFn out = SuperFn::zero(f.chart());
    for (int i = 0; i < f.n(); ++i) {
        SuperFn ai = x.evenCoefficient(std::uint64_t{1} << i);
        if (ai.isZero()) continue;
        out += ai * partialEven(f, i);
    }
    return out;
}

namespace {

/// Lie bracket of two degree-1 values as the commutator of derivations.
SuperFn lieBracket(const SuperFn& x, const SuperFn& y) {
    SuperFn out = SuperFn::zero(x.chart());
    for (int j = 0; j < x.n(); ++j) {
        SuperFn bj = y.evenCoefficient(std::uint64_t{1} << j);
        SuperFn aj = x.evenCoefficient(std::uint64_t{1} << j);
        SuperFn cj = applyVectorField(x, bj) - applyVectorField(y, aj);
        if (cj.isZero()) continue;
        out += cj * SuperFn::oddCoordinate(x.chart(), j);
    }
    return out;
}

SuperFn schoutenHomogeneous(const SuperFn& p, int dp, const SuperFn& q, int dq) {
    ChartPtr chart = p.chart();
    if (p.isZero() || q.isZero()) return SuperFn::zero(chart);
    if (dp == 0 && dq == 0) return SuperFn::zero(chart);
    if (dp == 1 && dq == 0) return applyVectorField(p, q);
    if (dp == 0 && dq == 1) return -applyVectorField(q, p);
    if (dp == 1 && dq == 1) return lieBracket(p, q);
    if (dq >= 2) {
        // split each term of Q as (coefficient * first odd factor) wedge rest
        SuperFn out = SuperFn::zero(chart);
        const bool signFlip = ((dp - 1) % 2 != 0); // (-1)^(deg P - 1)
        for (const auto& [m, c] : q.terms()) {
            auto idx = m.xiIndices();
            Monomial head;
            head.xexp = m.xexp;
            head.xi = std::uint64_t{1} << idx[0];
            SuperFn y = SuperFn::monomialTerm(chart, head, c);
            Monomial tail;
            tail.xexp.assign(m.xexp.size(), 0);
            tail.xi = m.xi & ~head.xi;
            SuperFn z = SuperFn::monomialTerm(chart, tail, 1);
            SuperFn left = schoutenHomogeneous(p, dp, y, 1) * z;
            SuperFn right = y * schoutenHomogeneous(p, dp, z, m.oddDegree() - 1);
            out += left;
            out += signFlip ? -right : right;
        }
        return out;
    }
    // dp >= 2, dq <= 1: graded antisymmetry [P,Q] = -(-1)^((p-1)(q-1)) [Q,P]
    SuperFn swapped = schoutenHomogeneous(q, dq, p, dp);
    const bool keep = (((dp - 1) * (dq - 1)) % 2 != 0);
    return keep ? swapped : -swapped;
}

} // namespace

SuperFn schoutenDirect(const SuperFn& p, const SuperFn& q) {
    if (!compatible(*p.chart(), *q.chart())) throw std::invalid_argument("chart mismatch");
    SuperFn out = SuperFn::zero(p.chart());
    for (int a = 0; a <= p.n(); ++a) {
        SuperFn pa = p.component(a);
        if (pa.isZero()) continue;
        for (int b = 0; b <= q.n(); ++b) {
            SuperFn qb = q.component(b);
            if (qb.isZero()) continue;
            out += schoutenHomogeneous(pa, a, qb, b);
        }
    }
    return out;
}

SuperFn fnBracket(const Bivector& pi, const SuperFn& f, const SuperFn& g) {
    if (!f.isHomogeneous(0) || !g.isHomogeneous(0))
        throw std::invalid_argument("fnBracket needs degree-0 arguments");
    SuperFn out = SuperFn::zero(f.chart());
    const int n = f.n();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::uint64_t mask = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
            SuperFn pij = pi.value.evenCoefficient(mask);
            if (pij.isZero()) continue;
            out += pij * (partialEven(f, i) * partialEven(g, j) - partialEven(f, j) * partialEven(g, i));
        }
    }
    return out;
}

VectorField sharp(const Bivector& pi, const std::vector<SuperFn>& alpha) {
    const int n = pi.value.n();
    if (alpha.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("covector component count mismatch");
    SuperFn out = SuperFn::zero(pi.value.chart());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::uint64_t mask = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
            SuperFn pij = pi.value.evenCoefficient(mask);
            if (pij.isZero()) continue;
            SuperFn xi_i = SuperFn::oddCoordinate(pi.value.chart(), i);
            SuperFn xi_j = SuperFn::oddCoordinate(pi.value.chart(), j);
            out += pij * (alpha[static_cast<std::size_t>(i)] * xi_j - alpha[static_cast<std::size_t>(j)] * xi_i);
        }
    }
    return VectorField(out);
}

SuperFn lieDerivativeBivector(const VectorField& x, const Bivector& pi) {
    return -poissonBracket(pi.value, x.value);
}

bool isPoisson(const Bivector& pi) { return poissonBracket(pi.value, pi.value).isZero(); }

SuperFn cyclicJacobiSum(const Bivector& pi, const SuperFn& f, const SuperFn& g, const SuperFn& h) {
    return fnBracket(pi, fnBracket(pi, f, g), h) + fnBracket(pi, fnBracket(pi, g, h), f) +
           fnBracket(pi, fnBracket(pi, h, f), g);
}

} // namespace poisred
