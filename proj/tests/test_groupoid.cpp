#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qpk/catalog.hpp"
#include "qpk/groupoid.hpp"

#include <deque>
#include <unordered_set>

using namespace qpk;
using namespace qpk::groupoid;

namespace {

// all dotted labeled triangulations of the polygon reachable from the fan
std::vector<DottedTriangulation> corpus(int nTriangles) {
    std::vector<DottedTriangulation> out;
    std::unordered_set<std::string> seen;
    std::deque<DottedTriangulation> work{DottedTriangulation::polygonFan(nTriangles)};
    seen.insert(work.front().key());
    out.push_back(work.front());
    while (!work.empty()) {
        DottedTriangulation dt = std::move(work.front());
        work.pop_front();
        std::vector<Move> moves;
        for (auto& t : dt.triangles) moves.push_back({Move::Kind::DotRotate, t.label, 0, {}});
        for (auto& tj : dt.triangles)
            for (auto& tk : dt.triangles)
                if (tj.label != tk.label && flipApplicable(dt, tj.label, tk.label))
                    moves.push_back({Move::Kind::Flip, tj.label, tk.label, {}});
        for (auto& mv : moves) {
            DottedTriangulation nd = applyMove(dt, mv);
            if (seen.insert(nd.key()).second) {
                out.push_back(nd);
                work.push_back(nd);
            }
        }
    }
    return out;
}

bool wordApplicable(const DottedTriangulation& dt, const MoveWord& w) {
    try {
        applyWord(dt, w);
        return true;
    } catch (const GroupoidError&) {
        return false;
    }
}

// relation words act identically wherever both sides apply; at least one
// instance must exist in the corpus
void checkMoveRelation(const std::vector<DottedTriangulation>& all, const MoveWord& lhs,
                       const MoveWord& rhs) {
    int instances = 0;
    for (auto& dt : all) {
        bool la = wordApplicable(dt, lhs), ra = wordApplicable(dt, rhs);
        if (la && ra) {
            ++instances;
            CHECK(applyWord(dt, lhs).key() == applyWord(dt, rhs).key());
        }
    }
    CHECK(instances > 0);
}

}  // namespace

TEST_CASE("dot rotation has order three") {
    DottedTriangulation dt = DottedTriangulation::polygonFan(3);
    MoveWord aCubed = parseMoves("A 2; A 2; A 2");
    CHECK(applyWord(dt, aCubed).key() == dt.key());
    CHECK_FALSE(applyWord(dt, parseMoves("A 2")).key() == dt.key());
}

TEST_CASE("flip precondition is the dotted configuration") {
    DottedTriangulation dt = DottedTriangulation::polygonFan(3);
    CHECK(flipApplicable(dt, 2, 1));
    CHECK_FALSE(flipApplicable(dt, 1, 2));
    CHECK_THROWS_AS(applyMove(dt, Move{Move::Kind::Flip, 1, 2, {}}), GroupoidError);
}

TEST_CASE("pentagon and order-three relations on the move corpus") {
    auto all = corpus(3);
    CHECK(all.size() == dottedTriangulationCount(3));  // 5 * 27 * 6 (with relabelings via A/T only? see below)
    checkMoveRelation(all, parseMoves("T 2 3; T 1 2"), parseMoves("T 1 2; T 1 3; T 2 3"));
    checkMoveRelation(all, parseMoves("A 1; A 1; A 1"), MoveWord{});
    // a_j t_jk a_k = a_k t_kj a_j
    checkMoveRelation(all, parseMoves("A 1; T 1 2; A 2"), parseMoves("A 2; T 2 1; A 1"));
    // t_jk a_j t_kj = a_j a_k p_(jk)
    checkMoveRelation(all, parseMoves("T 1 2; A 1; T 2 1"), parseMoves("A 1; A 2; P (1 2)"));
}

TEST_CASE("connectivity of dotted triangulations") {
    for (int n : {1, 2, 3, 4}) CHECK(reachableCount(n) == dottedTriangulationCount(n));
}

TEST_CASE("compile maps moves to the operator catalog") {
    // "T 1 2" compiles to the flip operator
    OperatorSum t12 = compileWord(parseMoves("T 1 2"), true);
    CHECK(equalNormalized(t12, OperatorSum(reps::buildT(hopf::AlgebraKind::PseudoKahler, 1, 2))));
    // empty word -> identity
    CHECK(equalNormalized(compileWord(MoveWord{}, true), OperatorSum::identity()));
    // compile is a homomorphism on concatenation
    MoveWord w1 = parseMoves("T 1 2"), w2 = parseMoves("A 1");
    MoveWord cat = w1;
    cat.insert(cat.end(), w2.begin(), w2.end());
    CHECK(equalNormalized(compileWord(cat, true),
                          compileWord(w1, true) * compileWord(w2, true)));
}

TEST_CASE("presentation relations verify through the symbolic engine") {
    auto checks = checkPresentation(2, catalog::defaultScriptsDir());
    for (auto& rc : checks) {
        INFO(rc.name, ": ", rc.message);
        CHECK(rc.pass);
        if (rc.name.rfind("tat", 0) == 0) CHECK(rc.phase == "exp(pi i (m-1)^2/3)");
    }
}

TEST_CASE("triangulation and move formats round-trip and reject garbage") {
    DottedTriangulation dt = DottedTriangulation::polygonFan(2);
    DottedTriangulation back = parseTriangulation(formatTriangulation(dt));
    CHECK(back.key() == dt.key());
    CHECK_THROWS_AS(parseTriangulation("triangle 1 0 1 2 dot=7"), GroupoidError);
    CHECK_THROWS_AS(parseMoves("Q 1"), GroupoidError);
    MoveWord w = parseMoves("T 1 2; A 1; P (1 2)(3 4)");
    CHECK(w.size() == 3);
    CHECK(w[2].cycles.size() == 2);
}
