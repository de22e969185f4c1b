#pragma once

#include "qpk/reps.hpp"
#include "qpk/script.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qpk::catalog {

struct NumericProfile {
    int gridN = 32;
    double boxLength = 20.0;
    double hbar = 0.4;
    int numVectors = 5;
    double tolerance = 1e-6;
    double mValue = 1.0;
    unsigned seed = 24601;
};

enum class Modes { Both, SymbolicOnly, NumericOnly };

struct Entry {
    std::string name;
    std::string statement;
    hopf::AlgebraKind kind = hopf::AlgebraKind::PseudoKahler;
    std::function<OperatorSum()> lhs;
    std::function<OperatorSum()> rhs;
    std::string scriptFile;  // under the scripts directory; empty: normalize-equal
    Modes modes = Modes::Both;
    std::string modeReason;
    NumericProfile profile;
    std::vector<int> slots{1, 2};
};

const std::vector<Entry>& identityCatalog();
const Entry* findEntry(const std::string& name);

struct VerifyReport {
    std::string name;
    std::string mode;
    bool pass = false;
    std::string message;
    std::vector<script::StepRecord> steps;
    std::vector<double> residuals;
    double tolerance = 0.0;
    bool guardTripped = false;
};

std::string defaultScriptsDir();
VerifyReport verifySymbolic(const Entry& entry, const std::string& scriptsDir = defaultScriptsDir());

}  // namespace qpk::catalog
