#include "qpk/reps.hpp"

#include <stdexcept>

namespace qpk::reps {

namespace {

LinForm genExponent(AlgebraKind k, hopf::Gen g, int slot) {
    Coeff invIh = -(Coeff::i() * Coeff::hbar(-1));  // 1/(i hbar)
    Coeff invH = Coeff::hbar(-1);
    if (k == AlgebraKind::PseudoKahler) {
        switch (g) {
            case 0: return formP(slot);
            case 1: return formQ(slot);
            case 2: return formPstar(slot);
            case 3: return formQstar(slot);
            case 4: return invIh * formP(slot);
            case 5: return invIh * formQ(slot);
            case 6: return -(invIh)*formPstar(slot);
            case 7: return -(invIh)*formQstar(slot);
        }
    } else {
        switch (g) {
            case 0: return formPneg(slot);
            case 1: return formQneg(slot);
            case 2: return formPnegTilde(slot);
            case 3: return formQnegTilde(slot);
            case 4: return invH * formPneg(slot);
            case 5: return invH * formQneg(slot);
            case 6: return invH * formPnegTilde(slot);
            case 7: return invH * formQnegTilde(slot);
        }
    }
    throw std::invalid_argument("repGenerator: unknown generator");
}

}  // namespace

OperatorSum repGenerator(AlgebraKind k, hopf::Gen g, int power, int slot) {
    return OperatorSum(OperatorWord::weyl(Coeff(power) * genExponent(k, g, slot)));
}

OperatorSum repMonomial(AlgebraKind k, const hopf::Monomial& m, int slot) {
    OperatorSum r = OperatorSum::identity();
    for (auto& [g, e] : m.factors) r = r * repGenerator(k, g, e, slot);
    return r;
}

Prefactor qpolyPrefactor(AlgebraKind k, int qExp, int qvExp) {
    Coeff arg;
    if (k == AlgebraKind::PseudoKahler)
        arg = Coeff(-qExp) * Coeff::hbar() + Coeff(-qvExp) * Coeff::hbar(-1);
    else
        arg = Coeff::i() * (Coeff(qExp) * Coeff::hbar() + Coeff(qvExp) * Coeff::hbar(-1));
    return Prefactor::expPi(arg);
}

namespace {

OperatorSum repTensorTerm(AlgebraKind k, const hopf::QPoly& c,
                          const std::vector<hopf::Monomial>& legs, const std::vector<int>& slots) {
    OperatorSum scalar;
    for (auto& [key, n] : c.terms) {
        Prefactor p = qpolyPrefactor(k, key.first, key.second);
        if (n < -9'000'000'000'000'000 || n > 9'000'000'000'000'000)
            throw std::overflow_error("tensorAction: coefficient too large");
        p.num *= static_cast<std::int64_t>(n);
        scalar.words.push_back(OperatorWord::scalar(p));
    }
    OperatorSum r = scalar;
    for (std::size_t i = 0; i < legs.size(); ++i) r = r * repMonomial(k, legs[i], slots[i]);
    return r;
}

}  // namespace

OperatorSum tensorAction(AlgebraKind k, const hopf::NcPoly& u, const std::vector<int>& slots) {
    hopf::HopfAlgebra alg(k);
    hopf::NcTensor t = alg.coproductIter(u, slots.size(), /*leftFirst=*/true);
    OperatorSum r;
    for (auto& [legs, c] : t.terms()) r = r + repTensorTerm(k, c, legs, slots);
    return r;
}

OperatorSum dualAction(AlgebraKind k, const hopf::NcPoly& u, bool leftDual, int slot) {
    hopf::HopfAlgebra alg(k);
    hopf::NcPoly su = alg.antipode(u, /*inverse=*/!leftDual);
    OperatorSum r;
    for (auto& [m, c] : su.terms()) {
        OperatorSum term = repTensorTerm(k, c, {m}, {slot});
        r = r + term;
    }
    return r.transpose();
}

Conjugator buildS(int i, int j) {
    std::vector<Coord> coords{{i, Axis::T}, {i, Axis::S}, {j, Axis::T}, {j, Axis::S}};
    auto idx = [&](Coord c) {
        for (std::size_t k = 0; k < coords.size(); ++k)
            if (coords[k] == c) return k;
        throw std::logic_error("buildS: bad coord");
    };
    std::vector<std::int64_t> m(16, 0);
    for (int k = 0; k < 4; ++k) m[std::size_t(k) * 4 + std::size_t(k)] = 1;
    m[idx({i, Axis::T}) * 4 + idx({j, Axis::T})] = -1;
    m[idx({j, Axis::S}) * 4 + idx({i, Axis::S})] = 1;
    return Conjugator::fromMatrix(coords, m);
}

OperatorWord buildF(AlgebraKind k, int i, int j) {
    OperatorWord w = OperatorWord::conj(buildS(i, j));
    if (k == AlgebraKind::PseudoKahler) {
        w = w * OperatorWord::dilog(DilogFactor::psi(formQ(i) + formP(j) - formQ(j), -1));
    } else {
        w = w * OperatorWord::dilog(DilogFactor::phi(
                    formQnegTilde(i) + formPnegTilde(j) - formQnegTilde(j), +1)) *
            OperatorWord::dilog(DilogFactor::phi(formQneg(i) + formPneg(j) - formQneg(j), -1));
    }
    return w;
}

OperatorWord buildT(AlgebraKind k, int i, int j) {
    OperatorWord w;
    if (k == AlgebraKind::PseudoKahler) {
        w = OperatorWord::dilog(DilogFactor::psi(formQ(j) + formP(i) - formQ(i), +1));
    } else {
        w = OperatorWord::dilog(DilogFactor::phi(formQneg(j) + formPneg(i) - formQneg(i), +1)) *
            OperatorWord::dilog(DilogFactor::phi(
                formQnegTilde(j) + formPnegTilde(i) - formQnegTilde(i), -1));
    }
    return w * OperatorWord::conj(buildS(j, i).inverse());
}

namespace {

Conjugator orderThreeMatrix(int slot) {
    return Conjugator::fromMatrix({{slot, Axis::T}, {slot, Axis::S}}, {-1, -1, 1, 0});
}

OperatorWord buildAmWith(AlgebraKind k, int slot, const Coeff& mSym) {
    Coeff mm1 = mSym - Coeff(1);
    LinForm tail;
    Prefactor pre = Prefactor::one();
    if (k == AlgebraKind::PseudoKahler) {
        tail = mm1 * (LinForm(qs(slot)) - Coeff::hbar(-1) * LinForm(pt(slot)));
        // the phase sign is forced by (A^{(m)})^3 = id: the cube of the
        // special-linear-times-Weyl part contributes exp(+pi i (m-1)^2)
        pre = Prefactor::expPi(-(Coeff::i() * mm1 * mm1 * Coeff::rat(1, 3)));
    } else {
        tail = (mm1 * (Coeff(1) + Coeff::hbar(-1))) * LinForm(qs(slot));
    }
    auto [p, conj] = Conjugator::compose(orderThreeMatrix(slot),
                                         tail.isZero() ? Conjugator::identity()
                                                       : Conjugator::fromWeyl(tail));
    OperatorWord w = OperatorWord::conj(conj);
    w.pre = pre * p;
    return w;
}

}  // namespace

OperatorWord buildAm(AlgebraKind k, int slot) { return buildAmWith(k, slot, Coeff::m()); }

OperatorWord buildAmValue(AlgebraKind k, int slot, const Rational& mval) {
    return buildAmWith(k, slot, Coeff(GaussRat(mval)));
}

OperatorWord buildA(int slot) {
    LinForm tail = -LinForm(qs(slot)) + Coeff::hbar(-1) * LinForm(pt(slot));
    auto [p, conj] = Conjugator::compose(orderThreeMatrix(slot), Conjugator::fromWeyl(tail));
    OperatorWord w = OperatorWord::conj(conj);
    w.pre = Prefactor::formalC(1) * p;
    return w;
}

OperatorWord buildC(int slot) {
    Conjugator mat =
        Conjugator::fromMatrix({{slot, Axis::T}, {slot, Axis::S}}, {-1, -1, 0, 1});
    LinForm tail = LinForm(qt(slot)) + Coeff::hbar(-1) * LinForm(ps(slot));
    auto [p, conj] = Conjugator::compose(mat, Conjugator::fromWeyl(tail));
    OperatorWord w = OperatorWord::conj(conj);
    w.pre = p;
    return w;
}

OperatorWord buildD(int slot) {
    Conjugator mat =
        Conjugator::fromMatrix({{slot, Axis::T}, {slot, Axis::S}}, {-1, -1, 0, 1});
    LinForm tail = -LinForm(qt(slot)) + Coeff::hbar(-1) * LinForm(ps(slot));
    auto [p, conj] = Conjugator::compose(mat, Conjugator::fromWeyl(tail));
    OperatorWord w = OperatorWord::conj(conj);
    w.pre = p;
    return w;
}

OperatorWord buildPerm(const std::vector<std::vector<int>>& cycles) {
    // sigma in cycle form; the coordinate map uses sigma^{-1} so that
    // (P_sigma f)({x_j}) = f({x_sigma(j)}).
    std::vector<std::pair<int, int>> mapping;
    for (auto& cyc : cycles) {
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            int from = cyc[(k + 1) % cyc.size()];  // sigma(cyc[k]) = cyc[k+1]
            int to = cyc[k];                       // sigma^{-1}(cyc[k+1]) = cyc[k]
            mapping.push_back({from, to});
        }
    }
    return OperatorWord::conj(Conjugator::slotPermutation(mapping));
}

OperatorWord buildAThreeSlot() {
    OperatorWord f12 = buildF(AlgebraKind::PseudoKahler, 1, 2);
    OperatorWord p132 = buildPerm({{1, 3, 2}});
    OperatorWord dInv = OperatorWord::conj(Conjugator::identity());
    {
        OperatorWord d1 = buildD(1);
        dInv = d1.inverse();
    }
    OperatorWord cInv = buildC(3).inverse();
    return f12 * p132 * dInv * cInv * f12.inverse();
}

}  // namespace qpk::reps
