#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qpk/catalog.hpp"
#include "qpk/reps.hpp"

using namespace qpk;
using namespace qpk::reps;
namespace {
constexpr auto PK = hopf::AlgebraKind::PseudoKahler;
constexpr hopf::Gen Z1 = 0, Z2 = 1, Z2vs = 7;
OperatorSum W(const LinForm& e) { return OperatorSum(OperatorWord::weyl(e)); }
}  // namespace

TEST_CASE("tensor action reproduces the coproduct images") {
    // Z1 -> e^{P1+P2}
    CHECK(equalNormalized(tensorAction(PK, hopf::NcPoly::gen(PK, Z1), {1, 2}),
                          W(formP(1) + formP(2))));
    // Z2 -> e^{Q1+P2} + e^{Q2}
    CHECK(equalNormalized(tensorAction(PK, hopf::NcPoly::gen(PK, Z2), {1, 2}),
                          W(formQ(1) + formP(2)) + W(formQ(2))));
    // (Z2v)* -> e^{-(Q1*+P2*)/(i h)} + e^{-Q2*/(i h)}
    Coeff invIh = -(Coeff::i() * Coeff::hbar(-1));
    CHECK(equalNormalized(tensorAction(PK, hopf::NcPoly::gen(PK, Z2vs), {1, 2}),
                          W(-(invIh) * (formQstar(1) + formPstar(2))) +
                              W(-(invIh)*formQstar(2))));
    // multiplicativity through the representation
    hopf::NcPoly prod =
        hopf::NcPoly::gen(PK, Z1).mul(PK, hopf::NcPoly::gen(PK, Z2));
    CHECK(equalNormalized(tensorAction(PK, prod, {1, 2}),
                          normalized(tensorAction(PK, hopf::NcPoly::gen(PK, Z1), {1, 2}) *
                                     tensorAction(PK, hopf::NcPoly::gen(PK, Z2), {1, 2}))));
}

TEST_CASE("dual actions through the antipode and transpose") {
    // pi'(Z2) = -e^{-P*} e^{Q*}
    OperatorSum left = dualAction(PK, hopf::NcPoly::gen(PK, Z2), true, 1);
    OperatorSum expectL =
        OperatorSum(OperatorWord::scalar(Prefactor::minusOne()) *
                    OperatorWord::weyl(-formPstar(1)) * OperatorWord::weyl(formQstar(1)));
    CHECK(equalNormalized(left, expectL));
    // 'pi(Z2) = -e^{Q*} e^{-P*}
    OperatorSum right = dualAction(PK, hopf::NcPoly::gen(PK, Z2), false, 1);
    OperatorSum expectR =
        OperatorSum(OperatorWord::scalar(Prefactor::minusOne()) *
                    OperatorWord::weyl(formQstar(1)) * OperatorWord::weyl(-formPstar(1)));
    CHECK(equalNormalized(right, expectR));
    CHECK_FALSE(equalNormalized(left, right));  // the orders differ by a phase
    // pi'(Z1) pi'(Z1^{-1}) = id
    OperatorSum a = dualAction(PK, hopf::NcPoly::gen(PK, Z1), true, 1);
    OperatorSum b = dualAction(PK, hopf::NcPoly::gen(PK, Z1, -1), true, 1);
    CHECK(equalNormalized(a * b, OperatorSum::identity()));
}

TEST_CASE("operator builders") {
    // F12 = S12 Psi(Q1+P2-Q2)^{-1} verbatim
    OperatorWord f = buildF(PK, 1, 2);
    REQUIRE(f.factors.size() == 2);
    CHECK(std::holds_alternative<Conjugator>(f.factors[0]));
    const auto& d = std::get<DilogFactor>(f.factors[1]);
    CHECK(d.power == -1);
    CHECK(d.argument() == formQ(1) + formP(2) - formQ(2));
    // F F^{-1} = id
    CHECK(equalNormalized(OperatorSum(f) * OperatorSum(f.inverse()), OperatorSum::identity()));
    // C e^{P} C^{-1} = e^{-P*}
    OperatorWord c = buildC(1);
    CHECK(equalNormalized(OperatorSum(c) * W(formP(1)) * OperatorSum(c.inverse()),
                          W(-formPstar(1))));
    // A^{(1)} is the bare order-three special linear operator
    OperatorWord a1 = buildAmValue(PK, 1, Rational(1));
    CHECK(a1.pre.isOne());
    REQUIRE(a1.factors.size() == 1);
    CHECK(std::get<Conjugator>(a1.factors[0]).isPureMatrix());
}

TEST_CASE("catalog inventory") {
    const auto& cat = catalog::identityCatalog();
    CHECK(cat.size() >= 24);
    for (auto& e : cat) {
        CHECK(!e.statement.empty());
        if (e.modes != catalog::Modes::Both) CHECK(!e.modeReason.empty());
    }
    CHECK(catalog::findEntry("t-pentagon") != nullptr);
    CHECK(catalog::findEntry("no-such-identity") == nullptr);
}

TEST_CASE("full symbolic catalog replays") {
    for (auto& e : catalog::identityCatalog()) {
        if (e.modes == catalog::Modes::NumericOnly) continue;
        auto rep = catalog::verifySymbolic(e);
        INFO(e.name, ": ", rep.message);
        CHECK(rep.pass);
    }
}
