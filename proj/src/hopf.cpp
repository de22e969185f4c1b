#include "qpk/hopf.hpp"

#include <sstream>
#include <stdexcept>

namespace qpk::hopf {

bool QPoly::isOne() const {
    return terms.size() == 1 && terms.begin()->first == std::pair<int, int>{0, 0} &&
           terms.begin()->second == 1;
}

QPoly QPoly::operator-() const {
    QPoly r;
    for (auto& [k, c] : terms) r.terms[k] = -c;
    return r;
}

QPoly QPoly::operator+(const QPoly& o) const {
    QPoly r = *this;
    for (auto& [k, c] : o.terms) {
        BigInt v = (r.terms.count(k) ? r.terms[k] : BigInt(0)) + c;
        if (v == 0)
            r.terms.erase(k);
        else
            r.terms[k] = v;
    }
    return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
    QPoly r;
    for (auto& [k1, c1] : terms)
        for (auto& [k2, c2] : o.terms) {
            std::pair<int, int> k{k1.first + k2.first, k1.second + k2.second};
            BigInt v = (r.terms.count(k) ? r.terms[k] : BigInt(0)) + c1 * c2;
            if (v == 0)
                r.terms.erase(k);
            else
                r.terms[k] = v;
        }
    return r;
}

std::string QPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << c;
        if (k.first) os << "*q^" << k.first;
        if (k.second) os << "*qv^" << k.second;
    }
    return os.str();
}

namespace {

// exchange constant: moving one power of a (on the left) past one power of b
// (on the right), a > b in canonical order: a b = q^{eq} qv^{ev} b a.
std::pair<int, int> exchange(AlgebraKind k, Gen a, Gen b) {
    if (k == AlgebraKind::PseudoKahler) {
        if (a == 1 && b == 0) return {-2, 0};  // Z2 Z1 = q^{-2} Z1 Z2
        if (a == 3 && b == 2) return {+2, 0};  // Z2* Z1* = q^{2} Z1* Z2*
        if (a == 5 && b == 4) return {0, +2};  // Z2v Z1v = qv^{2} Z1v Z2v
        if (a == 7 && b == 6) return {0, -2};  // (Z2v)* (Z1v)* = qv^{-2} ...
    } else {
        if (a == 1 && b == 0) return {-2, 0};  // Y X = q^{-2} X Y
        if (a == 3 && b == 2) return {+2, 0};  // Yt Xt = q^{2} Xt Yt
        if (a == 5 && b == 4) return {0, -2};  // Yv Xv = qv^{-2} Xv Yv
        if (a == 7 && b == 6) return {0, +2};  // Ytv Xtv = qv^{2} Xtv Ytv
    }
    return {0, 0};
}

bool isGrouplike(Gen g) { return g % 2 == 0; }  // index-1 generators are grouplike

// the index-1 partner appearing in Delta(g) = g (x) partner + 1 (x) g
Gen twistPartner(Gen g) { return g - 1; }

}  // namespace

NcPoly NcPoly::gen(AlgebraKind k, Gen g, int power) {
    return fromWord(k, QPoly(1), {{g, power}});
}

NcPoly NcPoly::fromWord(AlgebraKind k, QPoly coeff, const std::vector<std::pair<Gen, int>>& word) {
    std::vector<std::pair<Gen, int>> w;
    for (auto& f : word)
        if (f.second != 0) w.push_back(f);
    // bubble into canonical order, tracking exchange constants
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i].first > w[i + 1].first) {
                auto [eq, ev] = exchange(k, w[i].first, w[i + 1].first);
                coeff = coeff * QPoly::qPower(eq * w[i].second * w[i + 1].second,
                                              ev * w[i].second * w[i + 1].second);
                std::swap(w[i], w[i + 1]);
                changed = true;
            } else if (w[i].first == w[i + 1].first) {
                w[i].second += w[i + 1].second;
                w.erase(w.begin() + std::ptrdiff_t(i) + 1);
                if (w[i].second == 0) w.erase(w.begin() + std::ptrdiff_t(i));
                changed = true;
                break;
            }
        }
    }
    NcPoly r;
    if (!coeff.isZero()) r.terms_[Monomial{w}] = std::move(coeff);
    return r;
}

void NcPoly::add(Monomial m, QPoly c) {
    if (c.isZero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[std::move(m)] = std::move(c);
    } else {
        it->second = it->second + c;
        if (it->second.isZero()) terms_.erase(it);
    }
}

NcPoly NcPoly::operator+(const NcPoly& o) const {
    NcPoly r = *this;
    for (auto& [m, c] : o.terms_) r.add(m, c);
    return r;
}

NcPoly NcPoly::operator-() const {
    NcPoly r;
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

NcPoly NcPoly::mul(AlgebraKind k, const NcPoly& o) const {
    NcPoly r;
    for (auto& [m1, c1] : terms_)
        for (auto& [m2, c2] : o.terms_) {
            std::vector<std::pair<Gen, int>> w = m1.factors;
            w.insert(w.end(), m2.factors.begin(), m2.factors.end());
            NcPoly t = fromWord(k, c1 * c2, w);
            for (auto& [m, c] : t.terms_) r.add(m, c);
        }
    return r;
}

std::string NcPoly::str(AlgebraKind k) const {
    if (terms_.empty()) return "0";
    HopfAlgebra alg(k);
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (auto& [g, e] : m.factors) {
            os << " " << alg.genName(g);
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

NcTensor NcTensor::scalar(std::size_t rank, QPoly c) {
    NcTensor t(rank);
    if (!c.isZero()) t.terms_[std::vector<Monomial>(rank)] = std::move(c);
    return t;
}

NcTensor NcTensor::simple(AlgebraKind, QPoly c, std::vector<Monomial> legs) {
    NcTensor t(legs.size());
    if (!c.isZero()) t.terms_[std::move(legs)] = std::move(c);
    return t;
}

NcTensor NcTensor::operator+(const NcTensor& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("NcTensor: rank mismatch");
    NcTensor r = *this;
    for (auto& [legs, c] : o.terms_) {
        auto it = r.terms_.find(legs);
        if (it == r.terms_.end()) {
            r.terms_[legs] = c;
        } else {
            it->second = it->second + c;
            if (it->second.isZero()) r.terms_.erase(it);
        }
    }
    return r;
}

NcTensor NcTensor::operator-() const {
    NcTensor r(rank_);
    for (auto& [legs, c] : terms_) r.terms_[legs] = -c;
    return r;
}

void NcTensor::add(AlgebraKind k, QPoly c, const std::vector<Monomial>& legs) {
    // re-normal-order each leg (legs arriving from products may be unsorted)
    std::vector<Monomial> normLegs;
    QPoly coeff = std::move(c);
    for (auto& leg : legs) {
        NcPoly p = NcPoly::fromWord(k, QPoly(1), leg.factors);
        if (p.terms().size() != 1) throw std::logic_error("NcTensor: leg did not stay a monomial");
        auto& [m, cc] = *p.terms().begin();
        coeff = coeff * cc;
        normLegs.push_back(m);
    }
    if (coeff.isZero()) return;
    auto it = terms_.find(normLegs);
    if (it == terms_.end()) {
        terms_[std::move(normLegs)] = coeff;
    } else {
        it->second = it->second + coeff;
        if (it->second.isZero()) terms_.erase(it);
    }
}

NcTensor NcTensor::mul(AlgebraKind k, const NcTensor& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("NcTensor: rank mismatch");
    NcTensor r(rank_);
    for (auto& [l1, c1] : terms_)
        for (auto& [l2, c2] : o.terms_) {
            std::vector<Monomial> legs(rank_);
            QPoly coeff = c1 * c2;
            bool dead = false;
            for (std::size_t i = 0; i < rank_ && !dead; ++i) {
                std::vector<std::pair<Gen, int>> w = l1[i].factors;
                w.insert(w.end(), l2[i].factors.begin(), l2[i].factors.end());
                NcPoly p = NcPoly::fromWord(k, QPoly(1), w);
                if (p.isZero()) {
                    dead = true;
                    break;
                }
                auto& [m, cc] = *p.terms().begin();
                coeff = coeff * cc;
                legs[i] = m;
            }
            if (!dead) {
                auto it = r.terms_.find(legs);
                if (it == r.terms_.end())
                    r.terms_[legs] = coeff;
                else {
                    it->second = it->second + coeff;
                    if (it->second.isZero()) r.terms_.erase(it);
                }
            }
        }
    return r;
}

std::string HopfAlgebra::genName(Gen g) const {
    static const char* namesC[8] = {"Z1", "Z2", "Z1*", "Z2*", "Z1v", "Z2v", "Z1v*", "Z2v*"};
    static const char* namesD[8] = {"X", "Y", "Xt", "Yt", "Xv", "Yv", "Xtv", "Ytv"};
    return kind_ == AlgebraKind::PseudoKahler ? namesC[g] : namesD[g];
}

NcTensor HopfAlgebra::coproductMonomial(const Monomial& m) const {
    // Delta is an algebra map; build the product of generator coproducts.
    NcTensor acc = NcTensor::scalar(2, QPoly(1));
    for (auto& [g, e] : m.factors) {
        NcTensor dg(2);
        if (isGrouplike(g)) {
            dg.add(kind_, QPoly(1), {Monomial{{{g, e}}}, Monomial{{{g, e}}}});
        } else {
            if (e < 0)
                throw std::domain_error(
                    "coproduct: negative powers of twisted generators are outside the algebra");
            // Delta(g)^e = (g (x) partner + 1 (x) g)^e
            NcTensor base(2);
            base.add(kind_, QPoly(1), {Monomial{{{g, 1}}}, Monomial{{{twistPartner(g), 1}}}});
            base.add(kind_, QPoly(1), {Monomial{}, Monomial{{{g, 1}}}});
            dg = NcTensor::scalar(2, QPoly(1));
            for (int i = 0; i < e; ++i) dg = dg.mul(kind_, base);
        }
        acc = acc.mul(kind_, dg);
    }
    return acc;
}

NcTensor HopfAlgebra::coproduct(const NcPoly& p) const {
    NcTensor r(2);
    for (auto& [m, c] : p.terms()) {
        NcTensor t = coproductMonomial(m);
        for (auto& [legs, cc] : t.terms()) r.add(kind_, c * cc, legs);
    }
    return r;
}

NcTensor HopfAlgebra::coproductIter(const NcPoly& p, std::size_t rank, bool leftFirst) const {
    if (rank == 1) {
        NcTensor r(1);
        for (auto& [m, c] : p.terms()) r.add(kind_, c, {m});
        return r;
    }
    NcTensor two = coproduct(p);
    // expand one leg at a time until the requested rank
    NcTensor cur = two;
    while (cur.rank() < rank) {
        NcTensor next(cur.rank() + 1);
        std::size_t leg = leftFirst ? 0 : cur.rank() - 1;
        for (auto& [legs, c] : cur.terms()) {
            NcTensor dl = coproductMonomial(legs[leg]);
            for (auto& [two_, cc] : dl.terms()) {
                std::vector<Monomial> nl;
                for (std::size_t i = 0; i < leg; ++i) nl.push_back(legs[i]);
                nl.push_back(two_[0]);
                nl.push_back(two_[1]);
                for (std::size_t i = leg + 1; i < legs.size(); ++i) nl.push_back(legs[i]);
                next.add(kind_, c * cc, nl);
            }
        }
        cur = next;
    }
    return cur;
}

QPoly HopfAlgebra::counit(const NcPoly& p) const {
    QPoly r;
    for (auto& [m, c] : p.terms()) {
        bool kill = false;
        for (auto& [g, e] : m.factors)
            if (!isGrouplike(g)) kill = true;  // eps(twisted) = 0
        if (!kill) r = r + c;                  // eps(grouplike^e) = 1
    }
    return r;
}

NcPoly HopfAlgebra::antipodeMonomial(const Monomial& m, bool inverse) const {
    // antihomomorphism: S(ab) = S(b)S(a)
    NcPoly acc = NcPoly(1);
    for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it) {
        auto [g, e] = *it;
        NcPoly sg;
        if (isGrouplike(g)) {
            sg = NcPoly::gen(kind_, g, -e);
        } else {
            // S(g) = -g partner^{-1}, S^{-1}(g) = -partner^{-1} g
            NcPoly base;
            if (!inverse)
                base = NcPoly::fromWord(kind_, QPoly(-1), {{g, 1}, {twistPartner(g), -1}});
            else
                base = NcPoly::fromWord(kind_, QPoly(-1), {{twistPartner(g), -1}, {g, 1}});
            if (e < 0) {
                // (S(g))^{-1}: -q^{+-2} partner g^{-1} style; compute via word algebra
                // S(g^e) = (S(g))^e for any integer e since S is an antihomomorphism
                // on the commutative pair {g, partner}? Not commutative: do it by
                // explicit inversion of the single-term polynomial.
                auto& [bm, bc] = *base.terms().begin();
                // invert monomial coeff * word: (c * w)^{-1} = c^{-1} * w^{-1}
                if (bc.terms.size() != 1)
                    throw std::domain_error("antipode: cannot invert a sum");
                auto [bk, bv] = *bc.terms.begin();
                if (bv != 1 && bv != -1) throw std::domain_error("antipode: non-unit coefficient");
                std::vector<std::pair<Gen, int>> inv;
                for (auto jt = bm.factors.rbegin(); jt != bm.factors.rend(); ++jt)
                    inv.push_back({jt->first, -jt->second});
                QPoly ic = QPoly::qPower(-bk.first, -bk.second);
                if (bv == -1) ic = -ic;
                NcPoly binv = NcPoly::fromWord(kind_, ic, inv);
                sg = NcPoly(1);
                for (int i = 0; i < -e; ++i) sg = sg.mul(kind_, binv);
            } else {
                sg = NcPoly(1);
                for (int i = 0; i < e; ++i) sg = sg.mul(kind_, base);
            }
        }
        acc = acc.mul(kind_, sg);
    }
    return acc;
}

NcPoly HopfAlgebra::antipode(const NcPoly& p, bool inverse) const {
    NcPoly r;
    for (auto& [m, c] : p.terms()) {
        NcPoly t = antipodeMonomial(m, inverse);
        for (auto& [tm, tc] : t.terms()) r.add(tm, c * tc);
    }
    return r;
}

NcPoly HopfAlgebra::star(const NcPoly& p) const {
    // antilinear antihomomorphism; coefficients are real (q* = q)
    NcPoly r;
    for (auto& [m, c] : p.terms()) {
        std::vector<std::pair<Gen, int>> w;
        for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it) {
            Gen g = it->first;
            Gen sg = g;
            if (kind_ == AlgebraKind::PseudoKahler) sg = (g % 4 < 2) ? g + 2 : g - 2;
            w.push_back({sg, it->second});
        }
        NcPoly t = NcPoly::fromWord(kind_, c, w);
        for (auto& [tm, tc] : t.terms()) r.add(tm, tc);
    }
    return r;
}

NcTensor HopfAlgebra::counitLeg(const NcTensor& t, std::size_t leg) const {
    NcTensor r(t.rank() - 1);
    for (auto& [legs, c] : t.terms()) {
        bool kill = false;
        for (auto& [g, e] : legs[leg].factors)
            if (!isGrouplike(g)) kill = true;
        if (kill) continue;
        std::vector<Monomial> nl;
        for (std::size_t i = 0; i < legs.size(); ++i)
            if (i != leg) nl.push_back(legs[i]);
        r.add(kind_, c, nl);
    }
    return r;
}

NcPoly HopfAlgebra::multiplyLegs(const NcTensor& t) const {
    NcPoly r;
    for (auto& [legs, c] : t.terms()) {
        std::vector<std::pair<Gen, int>> w;
        for (auto& leg : legs) w.insert(w.end(), leg.factors.begin(), leg.factors.end());
        NcPoly p = NcPoly::fromWord(kind_, c, w);
        for (auto& [m, cc] : p.terms()) r.add(m, cc);
    }
    return r;
}

NcTensor HopfAlgebra::antipodeLeg(const NcTensor& t, std::size_t leg, bool inverse) const {
    NcTensor r(t.rank());
    for (auto& [legs, c] : t.terms()) {
        NcPoly s = antipodeMonomial(legs[leg], inverse);
        for (auto& [sm, sc] : s.terms()) {
            std::vector<Monomial> nl = legs;
            nl[leg] = sm;
            r.add(kind_, c * sc, nl);
        }
    }
    return r;
}

}  // namespace qpk::hopf
