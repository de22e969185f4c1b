#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qpk/hopf.hpp"

using namespace qpk::hopf;

namespace {
constexpr AlgebraKind PK = AlgebraKind::PseudoKahler;
constexpr AlgebraKind SD = AlgebraKind::SymplecticDouble;
// generator ids
constexpr Gen Z1 = 0, Z2 = 1, Z1s = 2, Z2s = 3, Z1v = 4;
}  // namespace

TEST_CASE("normal ordering") {
    // Z2 Z1 = q^{-2} Z1 Z2
    NcPoly p = NcPoly::fromWord(PK, QPoly(1), {{Z2, 1}, {Z1, 1}});
    NcPoly expect = NcPoly::zero();
    expect.add(Monomial{{{Z1, 1}, {Z2, 1}}}, QPoly::qPower(-2, 0));
    CHECK(p == expect);
    // Z1* Z2* = q^{-2} Z2* Z1*: reordering Z2* Z1* into canonical form gains q^{+2}
    NcPoly s = NcPoly::fromWord(PK, QPoly(1), {{Z2s, 1}, {Z1s, 1}});
    NcPoly sExpect = NcPoly::zero();
    sExpect.add(Monomial{{{Z1s, 1}, {Z2s, 1}}}, QPoly::qPower(2, 0));
    CHECK(s == sExpect);
    // modular partners commute with the plain copy
    NcPoly c = NcPoly::fromWord(PK, QPoly(1), {{Z1v, 1}, {Z1, 1}});
    NcPoly cExpect = NcPoly::zero();
    cExpect.add(Monomial{{{Z1, 1}, {Z1v, 1}}}, QPoly(1));
    CHECK(c == cExpect);
    // negative powers: Z2^{-1} Z1 reorders with the inverse exchange constant
    NcPoly n = NcPoly::fromWord(PK, QPoly(1), {{Z2, -1}, {Z1, 1}});
    NcPoly nExpect = NcPoly::zero();
    nExpect.add(Monomial{{{Z1, 1}, {Z2, -1}}}, QPoly::qPower(2, 0));
    CHECK(n == nExpect);
}

TEST_CASE("hopf generator tables") {
    HopfAlgebra alg(PK);
    // Delta(Z2) = Z2 (x) Z1 + 1 (x) Z2
    NcTensor d = alg.coproduct(NcPoly::gen(PK, Z2));
    NcTensor expect(2);
    expect.add(PK, QPoly(1), {Monomial{{{Z2, 1}}}, Monomial{{{Z1, 1}}}});
    expect.add(PK, QPoly(1), {Monomial{}, Monomial{{{Z2, 1}}}});
    CHECK(d == expect);
    // S(Z2) = -Z2 Z1^{-1}, S^{-1}(Z2) = -Z1^{-1} Z2
    CHECK(alg.antipode(NcPoly::gen(PK, Z2)) ==
          NcPoly::fromWord(PK, QPoly(-1), {{Z2, 1}, {Z1, -1}}));
    CHECK(alg.antipode(NcPoly::gen(PK, Z2), true) ==
          NcPoly::fromWord(PK, QPoly(-1), {{Z1, -1}, {Z2, 1}}));
    // counit
    CHECK(alg.counit(NcPoly::gen(PK, Z1)) == QPoly(1));
    CHECK(alg.counit(NcPoly::gen(PK, Z2)) == QPoly(0));
    // star exchanges the starred generators and is involutive
    CHECK(alg.star(NcPoly::gen(PK, Z1)) == NcPoly::gen(PK, Z1s));
    NcPoly w = NcPoly::fromWord(PK, QPoly(1), {{Z1, 1}, {Z2, 2}});
    CHECK(alg.star(alg.star(w)) == w);
}

TEST_CASE("hopf axioms on all generators") {
    for (AlgebraKind k : {PK, SD}) {
        HopfAlgebra alg(k);
        for (Gen g = 0; g < HopfAlgebra::generatorCount(); ++g) {
            NcPoly u = NcPoly::gen(k, g);
            // coassociativity
            CHECK(alg.coproductIter(u, 3, true) == alg.coproductIter(u, 3, false));
            // counit laws: (eps (x) 1) Delta(u) = u = (1 (x) eps) Delta(u)
            NcTensor d = alg.coproduct(u);
            NcTensor uT(1);
            for (auto& [m, c] : u.terms()) uT.add(k, c, {m});
            CHECK(alg.counitLeg(d, 0) == uT);
            CHECK(alg.counitLeg(d, 1) == uT);
            // antipode law: m(1 (x) S)(Delta u) = eps(u) 1 = m(S (x) 1)(Delta u)
            NcPoly eps = NcPoly::zero();
            QPoly e = alg.counit(u);
            if (!e.isZero()) eps.add(Monomial{}, e);
            CHECK(alg.multiplyLegs(alg.antipodeLeg(d, 1)) == eps);
            CHECK(alg.multiplyLegs(alg.antipodeLeg(d, 0)) == eps);
            // S S^{-1} = id
            CHECK(alg.antipode(alg.antipode(u, true), false) == u);
            // star commutes with the coproduct (Hopf *-algebra condition)
            NcTensor ds = alg.coproduct(alg.star(u));
            NcTensor expected(2);
            for (auto& [legs, c] : d.terms()) {
                NcPoly l0 = NcPoly::zero();
                l0.add(legs[0], QPoly(1));
                NcPoly l1 = NcPoly::zero();
                l1.add(legs[1], QPoly(1));
                NcPoly s0 = alg.star(l0), s1 = alg.star(l1);
                for (auto& [m0, c0] : s0.terms())
                    for (auto& [m1, c1] : s1.terms()) expected.add(k, c * c0 * c1, {m0, m1});
            }
            CHECK(ds == expected);
        }
    }
}

TEST_CASE("coproduct of powers stays exact") {
    HopfAlgebra alg(PK);
    // Delta(Z2^2) = Z2^2 (x) Z1^2 + (1 + q^{-2}) Z2 (x) Z1 Z2 + 1 (x) Z2^2
    NcTensor d = alg.coproduct(NcPoly::gen(PK, Z2, 2));
    NcTensor expect(2);
    expect.add(PK, QPoly(1), {Monomial{{{Z2, 2}}}, Monomial{{{Z1, 2}}}});
    expect.add(PK, QPoly(1) + QPoly::qPower(-2, 0),
               {Monomial{{{Z2, 1}}}, Monomial{{{Z1, 1}, {Z2, 1}}}});
    expect.add(PK, QPoly(1), {Monomial{}, Monomial{{{Z2, 2}}}});
    CHECK(d == expect);
    // negative powers of twisted generators have no polynomial coproduct
    CHECK_THROWS(alg.coproduct(NcPoly::gen(PK, Z2, -1)));
}
