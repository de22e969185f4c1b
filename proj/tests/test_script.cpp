#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qpk/catalog.hpp"
#include "qpk/script.hpp"

using namespace qpk;
using namespace qpk::script;

TEST_CASE("script grammar") {
    ProofScript s = parseScript("dilog-commute 2 eps=+1\nexpect-equal");
    REQUIRE(s.directives.size() == 2);
    CHECK(s.directives[0].kind == Directive::Kind::DilogCommute);
    CHECK(s.directives[0].eps == 1);
    CHECK_FALSE(s.directives[0].vee);
    CHECK(s.directives[1].kind == Directive::Kind::ExpectEqual);

    ProofScript v = parseScript("# comment only\nrhs pentagon 3 contract\ndelta-reduce 2 3");
    REQUIRE(v.directives.size() == 2);
    CHECK(v.directives[0].onRhs);
    CHECK_FALSE(v.directives[0].expand);
    CHECK(v.directives[1].k == 2);
    CHECK(v.directives[1].k2 == 3);

    CHECK(parseScript("dilog-commute 1 eps=-1 vee").directives[0].vee);
}

TEST_CASE("script errors carry locations") {
    try {
        parseScript("bogus 1");
        FAIL("expected a syntax error");
    } catch (const ScriptError& e) {
        CHECK(e.line == 1);
    }
    CHECK_THROWS_AS(parseScript("pentagon 2"), ScriptError);       // missing expand|contract
    CHECK_THROWS_AS(parseScript("dilog-commute 2"), ScriptError);  // missing eps
    CHECK_THROWS_AS(parseScript("push-left x"), ScriptError);
}

TEST_CASE("the shipped conjugation script parses and replays") {
    ProofScript s = loadScript(catalog::defaultScriptsDir() + "/a_conj.qps");
    CHECK(s.directives.size() == 9);  // seven pushes, the reduction, the comparison
    int reduces = 0;
    for (auto& d : s.directives) reduces += d.kind == Directive::Kind::DeltaReduce;
    CHECK(reduces == 1);
    auto* e = catalog::findEntry("a-conj-Q");
    REQUIRE(e != nullptr);
    auto res = replay(s, e->lhs(), e->rhs());
    CHECK(res.pass);
    CHECK(res.steps.size() == 9);
}
