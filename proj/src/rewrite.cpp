#include "qpk/word.hpp"

#include "qpk/script.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>

namespace qpk {

namespace {

// One binomial multiplier (1 + e^{pi*muArg} e^{E})^{binomPower} gained when a
// Weyl exponential crosses one component of a dilogarithm factor.
struct BinomSpec {
    Coeff muArg;
    LinForm E;
    int binomPower;
};

// Shift lattice of Phi^{eps*i*hbar}: the argument may move by -2*pi*eps*hbar
// or +-2*pi*i, each direction gaining a known binomial factor. `w` encodes
// the conjugation shift [B, L] = i*pi*w (sign already adjusted for the
// direction of movement).
std::optional<BinomSpec> classifyPsiComponent(int eps, const LinForm& B, const Coeff& w) {
    if (w.isZero()) return std::nullopt;
    Coeff ih = Coeff::i() * Coeff::hbar();
    if (w == Coeff(2 * eps) * ih) {
        // shift -2*pi*eps*hbar: Phi(z - 2 pi eps h) = (1 + e^{-pi eps h} e^z) Phi(z)
        return BinomSpec{Coeff(-eps) * Coeff::hbar(), B, +1};
    }
    if (w == Coeff(-2 * eps) * ih) {
        return BinomSpec{Coeff(eps) * Coeff::hbar(), B, -1};
    }
    Coeff scale = Coeff(-eps) * Coeff::i() * Coeff::hbar(-1);  // 1/(eps*i*hbar)
    if (w == Coeff(2)) {
        // shift +2*pi*i: Phi(z + 2 pi i) = (1 + e^{pi/(eps h)} e^{z/(eps i h)}) Phi(z)
        return BinomSpec{Coeff(eps) * Coeff::hbar(-1), scale * B, +1};
    }
    if (w == Coeff(-2)) {
        return BinomSpec{Coeff(-eps) * Coeff::hbar(-1), scale * B, -1};
    }
    throw RewriteError("dilog crossing: shift " + w.str() + " is not a lattice step");
}

std::optional<BinomSpec> classifyPhiComponent(const LinForm& z, const Coeff& w) {
    if (w.isZero()) return std::nullopt;
    Coeff ih = Coeff::i() * Coeff::hbar();
    if (w == Coeff(2) * Coeff::hbar()) {
        // shift +2*pi*i*hbar: Phi(z + 2 pi i h) = (1 + e^{pi i h} e^z) Phi(z)
        return BinomSpec{ih, z, +1};
    }
    if (w == Coeff(-2) * Coeff::hbar()) {
        return BinomSpec{-ih, z, -1};
    }
    if (w == Coeff(2)) {
        // shift +2*pi*i: Phi(z + 2 pi i) = (1 + e^{pi i/h} e^{z/h}) Phi(z)
        return BinomSpec{Coeff::i() * Coeff::hbar(-1), Coeff::hbar(-1) * z, +1};
    }
    if (w == Coeff(-2)) {
        return BinomSpec{-(Coeff::i() * Coeff::hbar(-1)), Coeff::hbar(-1) * z, -1};
    }
    throw RewriteError("dilog crossing: shift " + w.str() + " is not a lattice step");
}

struct CrossTerm {
    Prefactor pre = Prefactor::one();
    std::optional<LinForm> exponent;
};

// Expansion of e^L across a dilog factor. movingRight: e^L D = sum_t D e^{..}.
// movingLeft: D e^L = sum_t e^{..} D. In both cases the multiplier binomial
// must come out with net power +1.
std::vector<CrossTerm> crossTerms(const DilogFactor& d, const LinForm& L, bool movingRight,
                                  int* firedEps = nullptr, bool* firedVee = nullptr) {
    std::vector<BinomSpec> specs;
    auto classify = [&](int eps, const LinForm& B) {
        Coeff w = bracket(B, L);
        if (movingRight) w = -w;
        auto s = (d.fn == DilogKind::Psi) ? classifyPsiComponent(eps, B, w)
                                          : classifyPhiComponent(B, w);
        if (s) {
            if (firedEps) *firedEps = eps;
            if (firedVee) {
                // vee rules divide the exponent by (i hbar); detect by the
                // hbar^{-1} scaling of the binomial argument
                *firedVee = !(s->E == B);
            }
            specs.push_back(*s);
        }
    };
    if (d.fn == DilogKind::Psi) {
        LinForm Bp = psiArgument(d.x, d.y);
        LinForm Bm = d.x - (Coeff::i() * Coeff::hbar()) * d.y;
        classify(+1, Bp);
        classify(-1, Bm);
    } else {
        classify(+1, d.argument());
    }
    std::vector<CrossTerm> terms{CrossTerm{}};
    for (auto& s : specs) {
        int net = s.binomPower * d.power;
        if (net != 1)
            throw RewriteError("dilog crossing: expansion is not polynomial (inverse binomial)");
        std::vector<CrossTerm> next;
        for (auto& t : terms) {
            next.push_back(t);
            CrossTerm u = t;
            u.pre = u.pre * Prefactor::expPi(s.muArg);
            if (!u.exponent) {
                u.exponent = s.E;
            } else {
                auto [p, wf] = bchMul(WeylF{*u.exponent}, WeylF{s.E});
                u.pre = u.pre * p;
                u.exponent = wf.exponent;
            }
            next.push_back(std::move(u));
        }
        terms = std::move(next);
    }
    return terms;
}

// Replace factors [i] = Weyl(L), [i+1] = dilog by the crossed variants.
std::vector<OperatorWord> moveWeylRightAcrossDilog(const OperatorWord& w, std::size_t i,
                                                   int* eps = nullptr, bool* vee = nullptr) {
    const auto& L = std::get<WeylF>(w.factors[i]).exponent;
    const auto& d = std::get<DilogFactor>(w.factors[i + 1]);
    auto terms = crossTerms(d, L, /*movingRight=*/true, eps, vee);
    std::vector<OperatorWord> out;
    for (auto& t : terms) {
        OperatorWord nw = w;
        nw.pre = nw.pre * t.pre;
        nw.factors[i] = d;
        if (t.exponent) {
            auto [p, wf] = bchMul(WeylF{*t.exponent}, WeylF{L});
            nw.pre = nw.pre * p;
            nw.factors[i + 1] = wf;
        } else {
            nw.factors[i + 1] = WeylF{L};
        }
        out.push_back(std::move(nw));
    }
    return out;
}

// Replace factors [i-1] = dilog, [i] = Weyl(L) by the crossed variants.
std::vector<OperatorWord> moveWeylLeftAcrossDilog(const OperatorWord& w, std::size_t i,
                                                  int* eps = nullptr, bool* vee = nullptr) {
    const auto& L = std::get<WeylF>(w.factors[i]).exponent;
    const auto& d = std::get<DilogFactor>(w.factors[i - 1]);
    auto terms = crossTerms(d, L, /*movingRight=*/false, eps, vee);
    std::vector<OperatorWord> out;
    for (auto& t : terms) {
        OperatorWord nw = w;
        nw.pre = nw.pre * t.pre;
        nw.factors[i] = d;
        if (t.exponent) {
            auto [p, wf] = bchMul(WeylF{L}, WeylF{*t.exponent});
            nw.pre = nw.pre * p;
            nw.factors[i - 1] = wf;
        } else {
            nw.factors[i - 1] = WeylF{L};
        }
        out.push_back(std::move(nw));
    }
    return out;
}

void convertQuads(OperatorWord& w) {
    for (std::size_t i = 0; i < w.factors.size();) {
        if (auto* q = std::get_if<QuadF>(&w.factors[i])) {
            QuadDecomposition dec = quadExpToConjugator(q->x, q->y);
            w.pre = w.pre * dec.pre;
            std::vector<Factor> repl;
            if (!dec.conj.isIdentity()) repl.push_back(dec.conj);
            if (dec.weyl) repl.push_back(*dec.weyl);
            w.factors.erase(w.factors.begin() + std::ptrdiff_t(i));
            w.factors.insert(w.factors.begin() + std::ptrdiff_t(i), repl.begin(), repl.end());
            i += repl.size();
        } else {
            ++i;
        }
    }
}

void pushConjugatorsLeft(OperatorWord& w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < w.factors.size(); ++i) {
            auto* c = std::get_if<Conjugator>(&w.factors[i]);
            if (!c) continue;
            if (c->isIdentity()) {
                w.factors.erase(w.factors.begin() + std::ptrdiff_t(i));
                changed = true;
                break;
            }
            if (i == 0) continue;
            Conjugator cc = *c;
            Factor& left = w.factors[i - 1];
            if (auto* cl = std::get_if<Conjugator>(&left)) {
                auto [pre, comp] = Conjugator::compose(*cl, cc);
                w.pre = w.pre * pre;
                w.factors[i - 1] = comp;
                w.factors.erase(w.factors.begin() + std::ptrdiff_t(i));
            } else if (auto* d = std::get_if<DilogFactor>(&left)) {
                DilogFactor nd = d->substituted(cc);
                w.factors[i - 1] = cc;
                w.factors[i] = nd;
            } else if (auto* wl = std::get_if<WeylF>(&left)) {
                LinForm sub = cc.substitute(wl->exponent);
                w.factors[i - 1] = cc;
                w.factors[i] = WeylF{sub};
            } else if (auto* q = std::get_if<QuadF>(&left)) {
                QuadF nq{cc.substitute(q->x), cc.substitute(q->y)};
                w.factors[i - 1] = cc;
                w.factors[i] = nq;
            }
            changed = true;
            break;
        }
    }
}

bool dilogsCommute(const DilogFactor& a, const DilogFactor& b) {
    LinForm a1 = a.argument(), a2 = b.argument();
    return bracket(a1, a2).isZero() && bracket(a1.conj(), a2).isZero() &&
           bracket(a1, a2.conj()).isZero() && bracket(a1.conj(), a2.conj()).isZero();
}

bool cancelDilogs(OperatorWord& w) {
    bool any = false;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.factors.size(); ++i) {
            auto* d1 = std::get_if<DilogFactor>(&w.factors[i]);
            auto* d2 = std::get_if<DilogFactor>(&w.factors[i + 1]);
            if (d1 && d2 && *d2 == d1->inverse()) {
                w.factors.erase(w.factors.begin() + std::ptrdiff_t(i),
                                w.factors.begin() + std::ptrdiff_t(i) + 2);
                changed = true;
                any = true;
                break;
            }
            // canonical order within blocks of mutually commuting factors
            if (d1 && d2 && *d2 < *d1 && dilogsCommute(*d1, *d2)) {
                std::swap(w.factors[i], w.factors[i + 1]);
                changed = true;
                any = true;
                break;
            }
            // Psi(0) = 1
            if (d1 && d1->fn == DilogKind::Psi && d1->x.isZero() && d1->y.isZero()) {
                w.factors.erase(w.factors.begin() + std::ptrdiff_t(i));
                changed = true;
                any = true;
                break;
            }
        }
        if (!changed && !w.factors.empty()) {
            if (auto* d = std::get_if<DilogFactor>(&w.factors.back());
                d && d->fn == DilogKind::Psi && d->x.isZero() && d->y.isZero()) {
                w.factors.pop_back();
                changed = any = true;
            }
        }
    }
    return any;
}

// One Weyl-normalization step: strip constants, drop zero exponents, merge
// adjacent Weyls, or cross one dilog (spawning words). Returns spawned words
// when a crossing happened; otherwise applies in place and reports progress.
std::optional<std::vector<OperatorWord>> weylPassOnce(OperatorWord& w, bool& progressed) {
    for (std::size_t i = 0; i < w.factors.size(); ++i) {
        auto* wl = std::get_if<WeylF>(&w.factors[i]);
        if (!wl) continue;
        if (!wl->exponent.piConst().isZero()) {
            w.pre = w.pre * Prefactor::expPi(wl->exponent.piConst());
            LinForm e = wl->exponent;
            e.setPiConst(Coeff());
            w.factors[i] = WeylF{e};
            progressed = true;
            return std::nullopt;
        }
        if (wl->exponent.isZero()) {
            w.factors.erase(w.factors.begin() + std::ptrdiff_t(i));
            progressed = true;
            return std::nullopt;
        }
        if (i + 1 >= w.factors.size()) continue;
        Factor& next = w.factors[i + 1];
        if (auto* wr = std::get_if<WeylF>(&next)) {
            auto [p, m] = bchMul(*wl, *wr);
            w.pre = w.pre * p;
            w.factors[i] = m;
            w.factors.erase(w.factors.begin() + std::ptrdiff_t(i) + 1);
            progressed = true;
            return std::nullopt;
        }
        if (std::holds_alternative<DilogFactor>(next)) {
            progressed = true;
            return moveWeylRightAcrossDilog(w, i);
        }
        if (auto* c = std::get_if<Conjugator>(&next)) {
            LinForm sub = c->substitute(wl->exponent);
            Conjugator cc = *c;
            w.factors[i] = cc;
            w.factors[i + 1] = WeylF{sub};
            progressed = true;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::vector<OperatorWord> normalizeWord(const OperatorWord& start) {
    std::vector<OperatorWord> out;
    std::deque<OperatorWord> work{start};
    while (!work.empty()) {
        OperatorWord w = std::move(work.front());
        work.pop_front();
        bool spawned = false;
        for (;;) {
            convertQuads(w);
            pushConjugatorsLeft(w);
            cancelDilogs(w);
            bool progressed = false;
            auto sp = weylPassOnce(w, progressed);
            if (sp) {
                for (auto& nw : *sp) work.push_back(std::move(nw));
                spawned = true;
                break;
            }
            if (!progressed) break;
        }
        if (!spawned) {
            w.pre.canonicalize();
            if (!w.pre.isZero()) out.push_back(std::move(w));
        }
    }
    return out;
}

}  // namespace

OperatorSum normalized(const OperatorSum& s) {
    OperatorSum r;
    for (auto& w : s.words) {
        auto nws = normalizeWord(w);
        r.words.insert(r.words.end(), nws.begin(), nws.end());
    }
    std::sort(r.words.begin(), r.words.end());
    // combine words that agree in everything but the integer multiplier
    OperatorSum merged;
    for (auto& w : r.words) {
        if (!merged.words.empty()) {
            OperatorWord& back = merged.words.back();
            if (back.factors == w.factors && back.pre.cPow == w.pre.cPow &&
                back.pre.expArg == w.pre.expArg) {
                back.pre.num += w.pre.num;
                continue;
            }
        }
        merged.words.push_back(w);
    }
    OperatorSum final_;
    for (auto& w : merged.words)
        if (w.pre.num != 0) final_.words.push_back(w);
    return final_;
}

bool equalNormalized(const OperatorSum& a, const OperatorSum& b) {
    OperatorSum na = normalized(a), nb = normalized(b);
    return na.words == nb.words;
}

OperatorSum moveFactorLeft(const OperatorSum& s, std::size_t k) {
    OperatorSum r;
    for (auto& w : s.words) {
        if (k == 0 || k >= w.factors.size())
            throw RewriteError("push-left: factor index out of range");
        const Factor& f = w.factors[k];
        const Factor& left = w.factors[k - 1];
        if (std::holds_alternative<WeylF>(f)) {
            if (std::holds_alternative<DilogFactor>(left)) {
                for (auto& nw : moveWeylLeftAcrossDilog(w, k)) r.words.push_back(nw);
                continue;
            }
            if (auto* c = std::get_if<Conjugator>(&left)) {
                OperatorWord nw = w;
                LinForm e = c->substituteInverse(std::get<WeylF>(f).exponent);
                nw.factors[k - 1] = WeylF{e};
                nw.factors[k] = *c;
                r.words.push_back(std::move(nw));
                continue;
            }
            if (auto* wl = std::get_if<WeylF>(&left)) {
                OperatorWord nw = w;
                auto [p, m] = bchMul(*wl, std::get<WeylF>(f));
                nw.pre = nw.pre * p;
                nw.factors[k - 1] = m;
                nw.factors.erase(nw.factors.begin() + std::ptrdiff_t(k));
                r.words.push_back(std::move(nw));
                continue;
            }
            throw RewriteError("push-left: unsupported neighbor");
        }
        if (auto* d = std::get_if<DilogFactor>(&f)) {
            if (auto* dl = std::get_if<DilogFactor>(&left)) {
                // only mutually commuting dilogs may be swapped
                LinForm a1 = dl->argument(), a2 = d->argument();
                if (!bracket(a1, a2).isZero() || !bracket(a1.conj(), a2).isZero() ||
                    !bracket(a1, a2.conj()).isZero() || !bracket(a1.conj(), a2.conj()).isZero())
                    throw RewriteError("push-left: dilog factors do not commute");
                OperatorWord nw = w;
                std::swap(nw.factors[k - 1], nw.factors[k]);
                r.words.push_back(std::move(nw));
                continue;
            }
            if (std::holds_alternative<WeylF>(left)) {
                for (auto& nw : moveWeylRightAcrossDilog(w, k - 1)) r.words.push_back(nw);
                continue;
            }
            if (auto* cl = std::get_if<Conjugator>(&left)) {
                // C . Psi(B) = Psi(C B C^{-1}) . C
                OperatorWord nw = w;
                Conjugator cc = *cl;
                LinForm arg = cc.substituteInverse(d->argument());
                nw.factors[k - 1] = (d->fn == DilogKind::Psi) ? DilogFactor::psi(arg, d->power)
                                                              : DilogFactor::phi(arg, d->power);
                nw.factors[k] = cc;
                r.words.push_back(std::move(nw));
                continue;
            }
            throw RewriteError("push-left: unsupported neighbor for dilog");
        }
        if (auto* c = std::get_if<Conjugator>(&f)) {
            OperatorWord nw = w;
            Conjugator cc = *c;
            if (auto* cl = std::get_if<Conjugator>(&left)) {
                auto [pre, comp] = Conjugator::compose(*cl, cc);
                nw.pre = nw.pre * pre;
                nw.factors[k - 1] = comp;
                nw.factors.erase(nw.factors.begin() + std::ptrdiff_t(k));
                if (comp.isIdentity())
                    nw.factors.erase(nw.factors.begin() + std::ptrdiff_t(k) - 1);
            } else if (auto* dl = std::get_if<DilogFactor>(&left)) {
                nw.factors[k - 1] = cc;
                nw.factors[k] = dl->substituted(cc);
            } else if (auto* wl = std::get_if<WeylF>(&left)) {
                nw.factors[k - 1] = cc;
                nw.factors[k] = WeylF{cc.substitute(wl->exponent)};
            } else if (auto* q = std::get_if<QuadF>(&left)) {
                nw.factors[k - 1] = cc;
                nw.factors[k] = QuadF{cc.substitute(q->x), cc.substitute(q->y)};
            }
            r.words.push_back(std::move(nw));
            continue;
        }
        throw RewriteError("push-left: unsupported factor");
    }
    return r;
}

namespace {

void checkSixBrackets(const LinForm& x, const LinForm& y, const LinForm& xp, const LinForm& yp) {
    auto expect = [&](const LinForm& u, const LinForm& v, long want, const char* name) {
        Coeff w = bracket(u, v);
        if (w != Coeff(want))
            throw RewriteError(std::string("bracket condition failed: [") + name + "] = " +
                               w.str() + ", expected " + std::to_string(want));
    };
    expect(x, xp, 0, "x,x'");
    expect(y, yp, 0, "y,y'");
    expect(x, y, 0, "x,y");
    expect(xp, yp, 0, "x',y'");
    expect(x, yp, 1, "x,y'");
    expect(y, xp, 1, "y,x'");
}

}  // namespace

OperatorSum applyPentagon(const OperatorSum& s, std::size_t k, bool expand) {
    OperatorSum r;
    for (auto& w : s.words) {
        auto dilogAt = [&](std::size_t i) -> const DilogFactor& {
            if (i >= w.factors.size() || !std::holds_alternative<DilogFactor>(w.factors[i]))
                throw RewriteError("pentagon: factor is not a dilog");
            return std::get<DilogFactor>(w.factors[i]);
        };
        OperatorWord nw = w;
        if (expand) {
            const DilogFactor &d1 = dilogAt(k), &d2 = dilogAt(k + 1);
            if (d1.fn != d2.fn || d1.power != d2.power)
                throw RewriteError("pentagon: mismatched pair");
            DilogFactor a, b;  // a = the factor playing Psi(x+i h y), b = Psi(x'+i h y')
            if (d1.power == 1) {
                a = d1;
                b = d2;
            } else {
                a = d2;
                b = d1;
            }
            if (d1.fn == DilogKind::Psi) {
                checkSixBrackets(a.x, a.y, b.x, b.y);
            } else {
                Coeff w2 = bracket(a.argument(), b.argument());
                if (w2 != Coeff(2) * Coeff::hbar())
                    throw RewriteError("pentagon: [A,B] != 2*pi*i*hbar, got " + w2.str());
            }
            DilogFactor mid = a;
            mid.x = a.x + b.x;
            mid.y = a.y + b.y;
            std::vector<Factor> repl;
            if (d1.power == 1) {
                repl = {b, mid, a};
            } else {
                repl = {a, mid, b};
            }
            nw.factors.erase(nw.factors.begin() + std::ptrdiff_t(k),
                             nw.factors.begin() + std::ptrdiff_t(k) + 2);
            nw.factors.insert(nw.factors.begin() + std::ptrdiff_t(k), repl.begin(), repl.end());
        } else {
            const DilogFactor &d1 = dilogAt(k), &d2 = dilogAt(k + 1), &d3 = dilogAt(k + 2);
            if (d1.fn != d2.fn || d2.fn != d3.fn || d1.power != d2.power || d2.power != d3.power)
                throw RewriteError("pentagon: mismatched triple");
            DilogFactor a = (d1.power == 1) ? d3 : d1;
            DilogFactor b = (d1.power == 1) ? d1 : d3;
            if (!(d2.x == a.x + b.x) || !(d2.y == a.y + b.y))
                throw RewriteError("pentagon: middle factor is not the sum of the outer two");
            if (d1.fn == DilogKind::Psi) {
                checkSixBrackets(a.x, a.y, b.x, b.y);
            } else {
                Coeff w2 = bracket(a.argument(), b.argument());
                if (w2 != Coeff(2) * Coeff::hbar())
                    throw RewriteError("pentagon: [A,B] != 2*pi*i*hbar, got " + w2.str());
            }
            std::vector<Factor> repl;
            if (d1.power == 1)
                repl = {Factor(a), Factor(b)};
            else
                repl = {Factor(b), Factor(a)};
            nw.factors.erase(nw.factors.begin() + std::ptrdiff_t(k),
                             nw.factors.begin() + std::ptrdiff_t(k) + 3);
            nw.factors.insert(nw.factors.begin() + std::ptrdiff_t(k), repl.begin(), repl.end());
        }
        r.words.push_back(std::move(nw));
    }
    return r;
}

OperatorSum applyInvolutivity(const OperatorSum& s, std::size_t k) {
    OperatorSum r;
    for (auto& w : s.words) {
        auto dilogAt = [&](std::size_t i) -> const DilogFactor& {
            if (i >= w.factors.size() || !std::holds_alternative<DilogFactor>(w.factors[i]))
                throw RewriteError("involutivity: factor is not a dilog");
            return std::get<DilogFactor>(w.factors[i]);
        };
        OperatorWord nw = w;
        const DilogFactor& d1 = dilogAt(k);
        if (d1.fn == DilogKind::Psi) {
            const DilogFactor& d2 = dilogAt(k + 1);
            if (d2.fn != DilogKind::Psi || d1.power != 1 || d2.power != 1 ||
                !(d2.x == -d1.x) || !(d2.y == -d1.y))
                throw RewriteError("involutivity: factors are not an opposite pair");
            QuadF q{d1.x, Coeff::hbar() * d1.y};
            nw.factors.erase(nw.factors.begin() + std::ptrdiff_t(k),
                             nw.factors.begin() + std::ptrdiff_t(k) + 2);
            nw.factors.insert(nw.factors.begin() + std::ptrdiff_t(k), Factor(q));
        } else {
            // Phi(X) Phi(-X) Phi(X^t)^{-1} Phi(-X^t)^{-1}
            //   = exp((Xq + pi k)(Xp)/(pi i hbar)), the inversion constants
            // of the two families cancelling exactly; the Gaussian exponent
            // follows from Phi(z)Phi(-z) = C exp(z^2/(4 pi i hbar)), which is
            // what the shift equation g(z+2 pi i h) = e^{z + pi i h} g(z) pins.
            const DilogFactor& d2 = dilogAt(k + 1);
            const DilogFactor& d3 = dilogAt(k + 2);
            const DilogFactor& d4 = dilogAt(k + 3);
            LinForm X = d1.argument();
            if (!(d2.argument() == -X) || d1.power != 1 || d2.power != 1)
                throw RewriteError("involutivity: first pair is not opposite");
            LinForm Y = X.transpose();
            if (!(d3.argument() == Y) || !(d4.argument() == -Y) || d3.power != -1 ||
                d4.power != -1)
                throw RewriteError("involutivity: second pair is not the transposed inverse");
            LinForm xq = X.positionPart();  // includes the constant
            LinForm xp = X.momentumPart();
            QuadF q{xq, xp};
            nw.factors.erase(nw.factors.begin() + std::ptrdiff_t(k),
                             nw.factors.begin() + std::ptrdiff_t(k) + 4);
            nw.factors.insert(nw.factors.begin() + std::ptrdiff_t(k), Factor(q));
        }
        r.words.push_back(std::move(nw));
    }
    return r;
}

OperatorSum applyQuadToSaso(const OperatorSum& s, std::size_t k) {
    OperatorSum r;
    for (auto& w : s.words) {
        if (k >= w.factors.size() || !std::holds_alternative<QuadF>(w.factors[k]))
            throw RewriteError("quad-to-saso: factor is not a quadratic exponential");
        const QuadF q = std::get<QuadF>(w.factors[k]);
        QuadDecomposition dec = quadExpToConjugator(q.x, q.y);
        OperatorWord nw = w;
        nw.pre = nw.pre * dec.pre;
        std::vector<Factor> repl;
        if (!dec.conj.isIdentity()) repl.push_back(dec.conj);
        if (dec.weyl) repl.push_back(*dec.weyl);
        nw.factors.erase(nw.factors.begin() + std::ptrdiff_t(k));
        nw.factors.insert(nw.factors.begin() + std::ptrdiff_t(k), repl.begin(), repl.end());
        r.words.push_back(std::move(nw));
    }
    return r;
}

OperatorSum applyBch(const OperatorSum& s, std::size_t k) {
    OperatorSum r;
    for (auto& w : s.words) {
        if (k + 1 >= w.factors.size() || !std::holds_alternative<WeylF>(w.factors[k]) ||
            !std::holds_alternative<WeylF>(w.factors[k + 1]))
            throw RewriteError("bch: expects two adjacent Weyl factors");
        OperatorWord nw = w;
        auto [p, m] = bchMul(std::get<WeylF>(w.factors[k]), std::get<WeylF>(w.factors[k + 1]));
        nw.pre = nw.pre * p;
        nw.factors[k] = m;
        nw.factors.erase(nw.factors.begin() + std::ptrdiff_t(k) + 1);
        r.words.push_back(std::move(nw));
    }
    return r;
}

OperatorSum rewriteDilogWeyl(const DilogFactor& d, const LinForm& weylExp, int eps, bool vee) {
    // Decompose the Weyl exponent per the declared pattern and check the
    // bracket conditions, then produce the crossed form of  d . e^L.
    LinForm scaled = weylExp;
    if (vee) {
        // L = (x' + i eps h y')/(eps i h)  =>  x' + i eps h y' = (eps i h) L
        scaled = (Coeff(eps) * Coeff::i() * Coeff::hbar()) * weylExp;
    }
    LinForm xp = scaled.realPart();
    LinForm yp = (Coeff::rat(eps, 1) * Coeff::hbar(-1)) * scaled.imagPart();
    if (d.fn == DilogKind::Psi) checkSixBrackets(d.x, d.y, xp, yp);
    OperatorWord w;
    w.factors.push_back(d);
    w.factors.push_back(WeylF{weylExp});
    OperatorSum s{w};
    int firedEps = 0;
    bool firedVee = false;
    OperatorSum out;
    for (auto& word : s.words) {
        for (auto& nw : [&] {
                 const auto& L = std::get<WeylF>(word.factors[1]).exponent;
                 const auto& dd = std::get<DilogFactor>(word.factors[0]);
                 auto terms = crossTerms(dd, L, /*movingRight=*/false, &firedEps, &firedVee);
                 std::vector<OperatorWord> res;
                 for (auto& t : terms) {
                     OperatorWord nw2 = word;
                     nw2.pre = nw2.pre * t.pre;
                     nw2.factors[1] = dd;
                     if (t.exponent) {
                         auto [p, wf] = bchMul(WeylF{L}, WeylF{*t.exponent});
                         nw2.pre = nw2.pre * p;
                         nw2.factors[0] = wf;
                     } else {
                         nw2.factors[0] = WeylF{L};
                     }
                     res.push_back(std::move(nw2));
                 }
                 return res;
             }()) {
            out.words.push_back(nw);
        }
    }
    if (firedEps != 0 && firedEps != eps)
        throw RewriteError("dilog-commute: rule fired with eps=" + std::to_string(firedEps) +
                           ", declared eps=" + std::to_string(eps));
    if (firedEps != 0 && firedVee != vee)
        throw RewriteError("dilog-commute: rule fired in the wrong family (vee mismatch)");
    return out;
}

namespace script {

OperatorSum moveWeylLeftChecked(const OperatorSum& s, std::size_t k, int eps, bool vee) {
    OperatorSum r;
    for (auto& w : s.words) {
        if (k == 0 || k >= w.factors.size() || !std::holds_alternative<WeylF>(w.factors[k]) ||
            !std::holds_alternative<DilogFactor>(w.factors[k - 1]))
            throw RewriteError("dilog-commute: expects a Weyl factor right of a dilog");
        int firedEps = 0;
        bool firedVee = false;
        auto words = moveWeylLeftAcrossDilog(w, k, &firedEps, &firedVee);
        // terms that strongly commute just pass through; the declared family
        // is validated on the terms where a rule actually fires
        if (firedEps == 0) {
            for (auto& nw : words) r.words.push_back(std::move(nw));
            continue;
        }
        if (firedEps != eps)
            throw RewriteError("dilog-commute: rule fired with eps=" + std::to_string(firedEps) +
                               ", declared eps=" + std::to_string(eps));
        if (firedVee != vee)
            throw RewriteError("dilog-commute: rule fired in the wrong family (vee mismatch)");
        for (auto& nw : words) r.words.push_back(std::move(nw));
    }
    return r;
}

}  // namespace script

void deltaReduce(OperatorSum& lhs, OperatorSum& rhs, int slotA, int slotB) {
    if (slotA == slotB) return;
    if (lhs.words.empty()) return;
    // Identify the common trailing factor sequence across both sides. The
    // remainder of every word must be at most a single Weyl exponential: the
    // tail plays the role of the operator carrying the canonical element,
    // the Weyl prefixes are what acts on it.
    auto wordTailLen = [](const OperatorWord& w) -> std::size_t {
        std::size_t lead = 0;
        while (lead < w.factors.size() && std::holds_alternative<WeylF>(w.factors[lead])) ++lead;
        if (lead > 1) throw RewriteError("delta-reduce: more than one leading Weyl factor");
        return w.factors.size() - lead;
    };
    const OperatorWord& ref = lhs.words.front();
    std::size_t tailLen = wordTailLen(ref);
    std::vector<Factor> tail(ref.factors.end() - std::ptrdiff_t(tailLen), ref.factors.end());
    auto checkWord = [&](const OperatorWord& w) {
        if (wordTailLen(w) != tailLen)
            throw RewriteError("delta-reduce: inconsistent word shapes");
        if (!std::equal(tail.begin(), tail.end(), w.factors.end() - std::ptrdiff_t(tailLen)))
            throw RewriteError("delta-reduce: words do not share a common tail");
    };
    for (auto& w : lhs.words) checkWord(w);
    for (auto& w : rhs.words) checkWord(w);

    auto reduceSum = [&](OperatorSum& s) {
        for (auto& w : s.words) {
            w.factors.resize(w.factors.size() - tailLen);
            if (w.factors.empty()) continue;
            LinForm e = std::get<WeylF>(w.factors[0]).exponent;
            LinForm partA, rest;
            rest.setPiConst(e.piConst());
            for (auto& [g, c] : e.coeffs()) {
                if (g.slot == slotA)
                    partA.setCoeff(g, c);
                else
                    rest.setCoeff(g, c);
            }
            // substitute q_{.,A} -> q_{.,B}, p_{.,A} -> -p_{.,B}
            LinForm partB;
            for (auto& [g, c] : partA.coeffs()) {
                Generator h{slotB, g.axis, g.kind};
                Coeff v = (g.kind == Kind::Momentum) ? -c : c;
                partB.setCoeff(h, partB.coeff(h) + v);
            }
            // e^{rest} e^{partB} with the substituted exponential acting first
            auto [p, m] = bchMul(WeylF{rest}, WeylF{partB});
            w.pre = w.pre * p;
            w.factors[0] = m;
        }
        s = normalized(s);
    };
    reduceSum(lhs);
    reduceSum(rhs);
}

}  // namespace qpk
