#include "poisred/superfn.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace poisred {

int Monomial::evenDegree() const {
    return std::accumulate(xexp.begin(), xexp.end(), 0);
}

std::vector<int> Monomial::xiIndices() const {
    std::vector<int> out;
    for (int j = 0; j < 64; ++j)
        if (xi & (std::uint64_t{1} << j)) out.push_back(j);
    return out;
}

bool TermOrder::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.evenDegree(), db = b.evenDegree();
    if (da != db) return da > db;
    if (a.xexp != b.xexp) return a.xexp > b.xexp; // lexicographically larger first
    if (a.xi == b.xi) return false;
    auto ia = a.xiIndices(), ib = b.xiIndices();
    return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

int mergeSign(std::uint64_t a, std::uint64_t b) {
    if (a & b) return 0;
    int inversions = 0;
    std::uint64_t rest = b;
    while (rest) {
        int j = std::countr_zero(rest);
        rest &= rest - 1;
        if (j < 63) inversions += std::popcount(a >> (j + 1));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

SuperFn SuperFn::zero(ChartPtr chart) { return SuperFn(std::move(chart)); }

SuperFn SuperFn::constant(ChartPtr chart, const Rational& c) {
    SuperFn f(std::move(chart));
    Monomial m;
    m.xexp.assign(static_cast<std::size_t>(f.n()), 0);
    f.addTerm(m, c);
    return f;
}

SuperFn SuperFn::coordinate(ChartPtr chart, int i) {
    SuperFn f(std::move(chart));
    if (i < 0 || i >= f.n()) throw std::out_of_range("even coordinate index");
    Monomial m;
    m.xexp.assign(static_cast<std::size_t>(f.n()), 0);
    m.xexp[static_cast<std::size_t>(i)] = 1;
    f.addTerm(m, 1);
    return f;
}

SuperFn SuperFn::oddCoordinate(ChartPtr chart, int j) {
    SuperFn f(std::move(chart));
    if (j < 0 || j >= f.n()) throw std::out_of_range("odd coordinate index");
    Monomial m;
    m.xexp.assign(static_cast<std::size_t>(f.n()), 0);
    m.xi = std::uint64_t{1} << j;
    f.addTerm(m, 1);
    return f;
}

SuperFn SuperFn::monomialTerm(ChartPtr chart, const Monomial& m, const Rational& c) {
    SuperFn f(std::move(chart));
    if (m.xexp.size() != static_cast<std::size_t>(f.n()))
        throw std::invalid_argument("monomial exponent vector size mismatch");
    f.addTerm(m, c);
    return f;
}

int SuperFn::n() const { return chart_ ? chart_->dim() : 0; }

bool SuperFn::isHomogeneous(int k) const {
    for (const auto& [m, c] : terms_)
        if (m.oddDegree() != k) return false;
    return true;
}

int SuperFn::oddDegree() const {
    if (terms_.empty()) return 0;
    int k = terms_.begin()->first.oddDegree();
    for (const auto& [m, c] : terms_)
        if (m.oddDegree() != k) throw std::logic_error("oddDegree on inhomogeneous value");
    return k;
}

int SuperFn::maxEvenDegree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.evenDegree());
    return d;
}

SuperFn SuperFn::component(int k) const {
    SuperFn out(chart_);
    for (const auto& [m, c] : terms_)
        if (m.oddDegree() == k) out.terms_.emplace(m, c);
    return out;
}

SuperFn SuperFn::evenCoefficient(std::uint64_t mask) const {
    SuperFn out(chart_);
    for (const auto& [m, c] : terms_)
        if (m.xi == mask) {
            Monomial stripped = m;
            stripped.xi = 0;
            out.terms_.emplace(stripped, c);
        }
    return out;
}

std::vector<std::uint64_t> SuperFn::xiMasks() const {
    std::vector<std::uint64_t> out;
    for (const auto& [m, c] : terms_)
        if (std::find(out.begin(), out.end(), m.xi) == out.end()) out.push_back(m.xi);
    std::sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });
    return out;
}

void SuperFn::addTerm(const Monomial& m, const Rational& c) {
    if (poisred::isZero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (poisred::isZero(it->second)) terms_.erase(it);
    }
}

void SuperFn::requireCompatible(const SuperFn& other) const {
    if (!chart_ || !other.chart_ || !compatible(*chart_, *other.chart_))
        throw std::invalid_argument("chart mismatch");
}

SuperFn SuperFn::operator-() const {
    SuperFn out(chart_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

SuperFn& SuperFn::operator+=(const SuperFn& rhs) {
    if (!chart_) {
        *this = rhs;
        return *this;
    }
    if (rhs.isZero()) return *this;
    requireCompatible(rhs);
    for (const auto& [m, c] : rhs.terms_) addTerm(m, c);
    return *this;
}

SuperFn& SuperFn::operator-=(const SuperFn& rhs) {
    if (!chart_) {
        *this = -rhs;
        return *this;
    }
    if (rhs.isZero()) return *this;
    requireCompatible(rhs);
    for (const auto& [m, c] : rhs.terms_) addTerm(m, -c);
    return *this;
}

SuperFn operator*(const SuperFn& lhs, const SuperFn& rhs) {
    lhs.requireCompatible(rhs);
    SuperFn out(lhs.chart_);
    for (const auto& [ma, ca] : lhs.terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            int sign = mergeSign(ma.xi, mb.xi);
            if (sign == 0) continue;
            Monomial m;
            m.xexp.resize(ma.xexp.size());
            for (std::size_t i = 0; i < ma.xexp.size(); ++i) m.xexp[i] = ma.xexp[i] + mb.xexp[i];
            m.xi = ma.xi | mb.xi;
            Rational c = ca * cb;
            if (sign < 0) c = -c;
            out.addTerm(m, c);
        }
    }
    return out;
}

SuperFn operator*(const Rational& c, const SuperFn& f) {
    SuperFn out(f.chart_);
    if (isZero(c)) return out;
    for (const auto& [m, coeff] : f.terms_) out.terms_.emplace(m, c * coeff);
    return out;
}

bool operator==(const SuperFn& a, const SuperFn& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib)
        if (!(ia->first == ib->first) || ia->second != ib->second) return false;
    return true;
}

std::string SuperFn::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational coeff = c;
        if (first) {
            if (sgn(coeff) < 0) {
                out += "-";
                coeff = -coeff;
            }
        } else {
            out += (sgn(coeff) < 0) ? " - " : " + ";
            if (sgn(coeff) < 0) coeff = -coeff;
        }
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < m.xexp.size(); ++i) {
            if (m.xexp[i] == 0) continue;
            std::string f = "x" + std::to_string(i + 1);
            if (m.xexp[i] > 1) f += "^" + std::to_string(m.xexp[i]);
            factors.push_back(std::move(f));
        }
        for (int j : m.xiIndices()) factors.push_back("xi" + std::to_string(j + 1));
        if (factors.empty()) {
            out += poisred::str(coeff);
        } else {
            if (coeff != 1) out += poisred::str(coeff) + "*";
            for (std::size_t k = 0; k < factors.size(); ++k) {
                if (k) out += "*";
                out += factors[k];
            }
        }
        first = false;
    }
    return out;
}

SuperFn partialEven(const SuperFn& f, int i) {
    if (i < 0 || i >= f.n()) throw std::out_of_range("even coordinate index");
    SuperFn out = SuperFn::zero(f.chart());
    for (const auto& [m, c] : f.terms()) {
        int e = m.xexp[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        Monomial d = m;
        d.xexp[static_cast<std::size_t>(i)] = e - 1;
        out.addTerm(d, Rational(e) * c);
    }
    return out;
}

SuperFn partialOdd(const SuperFn& f, int j) {
    if (j < 0 || j >= f.n()) throw std::out_of_range("odd coordinate index");
    SuperFn out = SuperFn::zero(f.chart());
    const std::uint64_t bit = std::uint64_t{1} << j;
    for (const auto& [m, c] : f.terms()) {
        if (!(m.xi & bit)) continue;
        // left derivative: sign (-1)^(number of odd factors before xi_j)
        int before = std::popcount(m.xi & (bit - 1));
        Monomial d = m;
        d.xi &= ~bit;
        out.addTerm(d, (before % 2 == 0) ? c : -c);
    }
    return out;
}

SuperFn evalEven(const SuperFn& f, const std::vector<Rational>& point) {
    if (point.size() != static_cast<std::size_t>(f.n()))
        throw std::invalid_argument("evaluation point length mismatch");
    SuperFn out = SuperFn::zero(f.chart());
    for (const auto& [m, c] : f.terms()) {
        Rational v = c;
        for (std::size_t i = 0; i < m.xexp.size(); ++i)
            for (int e = 0; e < m.xexp[i]; ++e) v *= point[i];
        Monomial k;
        k.xexp.assign(m.xexp.size(), 0);
        k.xi = m.xi;
        out.addTerm(k, v);
    }
    return out;
}

SuperFn pow(const SuperFn& f, int k) {
    if (k < 0) throw std::invalid_argument("negative exponent");
    SuperFn out = SuperFn::constant(f.chart(), 1);
    for (int i = 0; i < k; ++i) out = out * f;
    return out;
}

Rational evalScalar(const SuperFn& f, const std::vector<Rational>& point) {
    SuperFn v = evalEven(f, point);
    Rational out = 0;
    for (const auto& [m, c] : v.terms()) {
        if (m.xi != 0) throw std::invalid_argument("evalScalar on value with odd part");
        out += c;
    }
    return out;
}

} // namespace poisred
