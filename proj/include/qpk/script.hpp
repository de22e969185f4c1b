#pragma once

#include "qpk/word.hpp"

#include <string>
#include <vector>

namespace qpk::script {

struct ScriptError : std::runtime_error {
    int line;
    int column;
    ScriptError(int l, int c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
          line(l),
          column(c) {}
};

struct Directive {
    enum class Kind {
        PushLeft,
        Bch,
        DilogCommute,
        Pentagon,
        Involutivity,
        QuadToSaso,
        DeltaReduce,
        ExpectEqual,
    };
    Kind kind = Kind::ExpectEqual;
    bool onRhs = false;  // directives prefixed with "rhs" act on the right side
    int k = 0;           // 1-based factor index
    int k2 = 0;          // second argument (delta-reduce slot)
    int eps = +1;
    bool vee = false;
    bool expand = true;
    int line = 0;

    std::string str() const;
};

struct ProofScript {
    std::vector<Directive> directives;
};

ProofScript parseScript(const std::string& text);
ProofScript loadScript(const std::string& path);

struct StepRecord {
    std::string directive;
    bool ok = true;
    std::string note;
    std::size_t lhsTerms = 0;
    std::size_t rhsTerms = 0;
};

struct ReplayResult {
    bool pass = false;
    std::string message;
    std::vector<StepRecord> steps;
};

/// Replays the directives against the two sides; an expect-equal compares
/// the normalized sums (appended implicitly when missing).
ReplayResult replay(const ProofScript& script, OperatorSum lhs, OperatorSum rhs);

/// dilog-commute with declared eps/family checked against the fired rule.
OperatorSum moveWeylLeftChecked(const OperatorSum& s, std::size_t factorIndex, int eps, bool vee);

}  // namespace qpk::script
