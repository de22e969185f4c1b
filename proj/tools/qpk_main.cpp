// qpk: exact and numerical verification of the quantum dilogarithm operator
// calculus. Subcommands: fn eval, verify, catalog list, groupoid relations,
// groupoid compile, oracle dense.
#include "CLI11.hpp"
#include "json.hpp"

#include "qpk/catalog.hpp"
#include "qpk/grid.hpp"
#include "qpk/groupoid.hpp"
#include "qpk/qdilog.hpp"

#include <complex>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using json = nlohmann::json;
using namespace qpk;

namespace {

constexpr const char* kEngineVersion = "1.0.0";

// exit codes: 0 pass, 1 verification failure, 2 usage/parse error,
// 3 numeric guard trip
constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitGuard = 3;

double envHbar() {
    if (const char* e = std::getenv("QPK_HBAR")) return std::atof(e);
    return 0.4;
}

bool envExtendedPrecision() {
    if (const char* e = std::getenv("QPK_PRECISION")) return std::string(e) == "extended";
    return false;
}

json reportToJson(const catalog::VerifyReport& r, const json& params) {
    json steps = json::array();
    for (auto& s : r.steps)
        steps.push_back({{"rule", s.directive},
                         {"ok", s.ok},
                         {"lhs_terms", s.lhsTerms},
                         {"rhs_terms", s.rhsTerms}});
    json j{{"identity", r.name},
           {"mode", r.mode},
           {"status", r.pass ? "pass" : "fail"},
           {"message", r.message},
           {"steps", steps},
           {"parameters", params}};
    if (!r.residuals.empty()) {
        j["residuals"] = r.residuals;
        j["tolerance"] = r.tolerance;
    }
    if (r.guardTripped) j["guard_tripped"] = true;
    return j;
}

void writeJson(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << j.dump(2) << "\n";
}

struct EvalArgs {
    std::string which;
    double hbar = 0.4;
    int eps = 1;
    std::string method = "ratio";
    std::string pointsPath, outPath;
    bool extended = false;
    qdilog::ContourSpec spec;
};

int runFnEval(const EvalArgs& a) {
    std::ifstream in(a.pointsPath);
    if (!in) {
        std::cerr << "cannot open " << a.pointsPath << "\n";
        return kExitUsage;
    }
    std::ofstream out(a.outPath);
    if (!out) {
        std::cerr << "cannot write " << a.outPath << "\n";
        return kExitUsage;
    }
    std::string header;
    std::getline(in, header);
    bool xy = header.find('x') != std::string::npos;
    out << (xy ? "x,y" : "re,im") << ",out_re,out_im,abs_err_estimate\n";
    out.precision(17);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double u = 0, v = 0;
        char comma = ',';
        if (!(ls >> u >> comma >> v)) {
            std::cerr << "bad csv row: " << line << "\n";
            return kExitUsage;
        }
        qdilog::EvalResult r;
        std::complex<double> z(u, v);
        try {
            if (a.which == "psi")
                r = qdilog::evalPsiQ(a.hbar, z);
            else if (a.which == "phi")
                r = qdilog::evalPhiHbar(a.hbar, z, a.spec);
            else if (a.which == "phi-mdc")
                r = qdilog::evalPhiMdc(a.hbar, a.eps, z,
                                       a.method == "contour" ? qdilog::MdcMethod::Contour
                                                             : qdilog::MdcMethod::Ratio,
                                       a.spec);
            else if (a.which == "Psi")
                r = qdilog::evalPsiHbar(a.hbar, u, v, a.extended);
            else
                r = qdilog::evalFzero(u, v, a.extended);
        } catch (const qdilog::QdilogError& e) {
            std::cerr << "evaluation failed at (" << u << ", " << v << "): " << e.what() << "\n";
            return kExitFail;
        }
        out << u << "," << v << "," << r.value.real() << "," << r.value.imag() << ","
            << r.absErr << "\n";
    }
    return kExitPass;
}

struct VerifyArgs {
    std::string identity;
    bool all = false;
    std::string mode = "both";
    double hbar = 0, length = 0, tol = 0, mValue = -1;
    int grid = 0;
    unsigned seed = 0;
    unsigned jobs = 2;
    bool allowUnbounded = false;
    std::string outJson, outCsv, scriptsDir;
};

int runVerify(const VerifyArgs& a) {
    std::vector<const catalog::Entry*> entries;
    if (a.all) {
        for (auto& e : catalog::identityCatalog()) entries.push_back(&e);
    } else {
        const catalog::Entry* e = catalog::findEntry(a.identity);
        if (!e) {
            std::cerr << "unknown identity '" << a.identity << "' (see: qpk catalog list)\n";
            return kExitUsage;
        }
        entries.push_back(e);
    }
    std::string scriptsDir = a.scriptsDir.empty() ? catalog::defaultScriptsDir() : a.scriptsDir;

    auto runOne = [&](const catalog::Entry* e) {
        std::vector<catalog::VerifyReport> reps;
        bool wantSym = a.mode == "symbolic" || a.mode == "both";
        bool wantNum = a.mode == "numeric" || a.mode == "both";
        if (wantSym && e->modes != catalog::Modes::NumericOnly)
            reps.push_back(catalog::verifySymbolic(*e, scriptsDir));
        if (wantNum) {
            if (e->modes == catalog::Modes::SymbolicOnly) {
                if (a.mode == "numeric") {
                    catalog::VerifyReport r;
                    r.name = e->name;
                    r.mode = "numeric";
                    r.pass = false;
                    r.message = "entry is symbolic-only: " + e->modeReason;
                    reps.push_back(r);
                }
            } else {
                reps.push_back(numerics::verifyNumeric(*e, a.grid, a.length, a.hbar, a.tol,
                                                       a.mValue, a.seed, a.allowUnbounded));
            }
        }
        return reps;
    };

    std::vector<std::vector<catalog::VerifyReport>> results(entries.size());
    std::size_t next = 0;
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::scoped_lock lock(mu);
                if (next >= entries.size()) return;
                i = next++;
            }
            results[i] = runOne(entries[i]);
        }
    };
    unsigned jobs = std::max(1u, a.jobs);
    std::vector<std::future<void>> pool;
    for (unsigned t = 0; t + 1 < jobs && entries.size() > 1; ++t)
        pool.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& f : pool) f.wait();

    json params{{"hbar", a.hbar > 0 ? a.hbar : envHbar()},
                {"grid", a.grid},
                {"length", a.length},
                {"m", a.mValue},
                {"seed", a.seed},
                {"engine_version", kEngineVersion}};
    json all = json::array();
    bool anyFail = false, anyGuard = false;
    std::ostringstream csv;
    csv << "identity,mode,vector,residual\n";
    for (auto& reps : results)
        for (auto& r : reps) {
            all.push_back(reportToJson(r, params));
            std::cout << (r.pass ? "pass  " : "FAIL  ") << r.name << " [" << r.mode << "]";
            if (!r.residuals.empty()) {
                double worst = 0;
                for (double x : r.residuals) worst = std::max(worst, x);
                std::cout << "  worst residual " << worst << " (tol " << r.tolerance << ")";
            }
            if (!r.pass && !r.message.empty()) std::cout << "\n      " << r.message;
            std::cout << "\n";
            anyFail = anyFail || !r.pass;
            anyGuard = anyGuard || r.guardTripped;
            for (std::size_t v = 0; v < r.residuals.size(); ++v)
                csv << r.name << "," << r.mode << "," << v << "," << r.residuals[v] << "\n";
        }
    if (!a.outJson.empty())
        writeJson(a.outJson, json{{"engine_version", kEngineVersion}, {"reports", all}});
    if (!a.outCsv.empty()) {
        std::ofstream f(a.outCsv);
        f << csv.str();
    }
    if (anyGuard) return kExitGuard;
    return anyFail ? kExitFail : kExitPass;
}

int runCatalogList(bool asJson) {
    if (asJson) {
        json arr = json::array();
        for (auto& e : catalog::identityCatalog()) {
            arr.push_back({{"name", e.name},
                           {"statement", e.statement},
                           {"script", e.scriptFile},
                           {"modes", e.modes == catalog::Modes::Both
                                         ? "both"
                                         : (e.modes == catalog::Modes::SymbolicOnly
                                                ? "symbolic-only"
                                                : "numeric-only")},
                           {"mode_reason", e.modeReason}});
        }
        std::cout << arr.dump(2) << "\n";
        return kExitPass;
    }
    for (auto& e : catalog::identityCatalog()) {
        std::cout << e.name;
        for (std::size_t i = e.name.size(); i < 24; ++i) std::cout << ' ';
        std::cout << e.statement;
        if (e.modes == catalog::Modes::SymbolicOnly) std::cout << "  [symbolic only]";
        std::cout << "\n";
    }
    std::cout << catalog::identityCatalog().size() << " identities\n";
    return kExitPass;
}

int runGroupoidRelations(int size, const std::string& outJson, const std::string& scriptsDir) {
    auto checks = groupoid::checkPresentation(
        size, scriptsDir.empty() ? catalog::defaultScriptsDir() : scriptsDir);
    json arr = json::array();
    bool anyFail = false;
    for (auto& rc : checks) {
        std::cout << (rc.pass ? "pass  " : "FAIL  ") << rc.name << "   phase " << rc.phase
                  << "\n";
        if (!rc.pass) std::cout << "      " << rc.message << "\n";
        anyFail = anyFail || !rc.pass;
        arr.push_back({{"relation", rc.name},
                       {"phase", rc.phase},
                       {"status", rc.pass ? "pass" : "fail"},
                       {"message", rc.message}});
    }
    if (!outJson.empty())
        writeJson(outJson, json{{"engine_version", kEngineVersion}, {"relations", arr}});
    return anyFail ? kExitFail : kExitPass;
}

int runGroupoidCompile(const std::string& moves, bool formalM, double mValue) {
    groupoid::MoveWord w = groupoid::parseMoves(moves);
    Rational mv(static_cast<long long>(mValue * 1000000), 1000000);
    OperatorSum s = groupoid::compileWord(w, formalM, mv);
    std::cout << normalized(s).str() << "\n";
    return kExitPass;
}

int runOracleDense(const std::string& identity, int grid, double length, double hbar) {
    const catalog::Entry* e = catalog::findEntry(identity);
    if (!e) {
        std::cerr << "unknown identity '" << identity << "'\n";
        return kExitUsage;
    }
    numerics::GridConfig cfg = numerics::GridConfig::forSlots(
        e->slots, grid, length > 0 ? length : 10.0, hbar > 0 ? hbar : envHbar(),
        e->profile.mValue);
    auto lhs = numerics::denseMatrix(e->lhs(), cfg);
    auto rhs = numerics::denseMatrix(e->rhs(), cfg);
    double err = 0, scale = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        err = std::max(err, std::abs(lhs[i] - rhs[i]));
        scale = std::max(scale, std::abs(rhs[i]));
    }
    std::cout << "dense dimension " << cfg.totalPoints() << ", max |lhs-rhs| = " << err
              << ", max |rhs| = " << scale << "\n";
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum dilogarithm operator calculus"};
    app.require_subcommand(1);

    // fn eval
    auto* fn = app.add_subcommand("fn", "special function evaluation");
    auto* fnEval = fn->add_subcommand("eval", "evaluate a special function over a CSV of points");
    EvalArgs ea;
    ea.hbar = envHbar();
    ea.extended = envExtendedPrecision();
    fnEval->add_option("--which", ea.which, "psi|phi|phi-mdc|Psi|F0")
        ->required()
        ->check(CLI::IsMember({"psi", "phi", "phi-mdc", "Psi", "F0"}));
    fnEval->add_option("--hbar", ea.hbar, "quantization parameter");
    fnEval->add_option("--eps", ea.eps, "+1 or -1")->check(CLI::IsMember({1, -1}));
    fnEval->add_option("--method", ea.method, "contour|ratio")
        ->check(CLI::IsMember({"contour", "ratio"}));
    fnEval->add_option("--points", ea.pointsPath, "input CSV (re,im or x,y)")->required();
    fnEval->add_option("--out", ea.outPath, "output CSV")->required();
    fnEval->add_flag("--extended", ea.extended, "extended-precision product evaluation");
    fnEval->add_option("--rotation", ea.spec.rotationAngle, "contour rotation angle");
    fnEval->add_option("--detour", ea.spec.detourRadius, "detour radius");
    fnEval->add_option("--truncation", ea.spec.truncationRadius, "contour truncation radius");
    fnEval->add_option("--quad-tol", ea.spec.quadratureTolerance, "quadrature tolerance");

    // verify
    auto* verify = app.add_subcommand("verify", "verify catalog identities");
    VerifyArgs va;
    verify->add_option("--identity", va.identity, "catalog entry name");
    verify->add_flag("--all", va.all, "verify every catalog entry");
    verify->add_option("--mode", va.mode, "symbolic|numeric|both")
        ->check(CLI::IsMember({"symbolic", "numeric", "both"}));
    verify->add_option("--hbar", va.hbar, "hbar for numeric mode");
    verify->add_option("--grid", va.grid, "points per axis (power of two)");
    verify->add_option("--length", va.length, "box length");
    verify->add_option("--m", va.mValue, "value of m for numeric mode");
    verify->add_option("--tol", va.tol, "residual tolerance override");
    verify->add_option("--seed", va.seed, "random Gaussian seed");
    verify->add_option("--jobs", va.jobs, "worker pool size for --all");
    verify->add_flag("--allow-unbounded", va.allowUnbounded,
                     "lift the multiplier guard (band-limited vectors) for general-m runs");
    verify->add_option("--out", va.outJson, "write JSON report");
    verify->add_option("--csv", va.outCsv, "write residual table CSV");
    verify->add_option("--scripts-dir", va.scriptsDir, "proof script directory");

    // catalog
    auto* cat = app.add_subcommand("catalog", "identity catalog");
    auto* catList = cat->add_subcommand("list", "list catalog entries");
    bool catJson = false;
    catList->add_flag("--json", catJson, "JSON output");

    // groupoid
    auto* grp = app.add_subcommand("groupoid", "dotted triangulations and the move group");
    auto* rel = grp->add_subcommand("relations", "verify the presentation relations");
    int relSize = 2;
    std::string relOut, relScripts, relMode = "symbolic";
    rel->add_option("--size", relSize, "index set size (1..4)")->required();
    rel->add_option("--mode", relMode, "symbolic")->check(CLI::IsMember({"symbolic"}));
    rel->add_option("--out", relOut, "write JSON report");
    rel->add_option("--scripts-dir", relScripts, "proof script directory");
    auto* comp = grp->add_subcommand("compile", "compile a move word to an operator");
    std::string compMoves;
    bool compFormal = true;
    double compM = 1.0;
    comp->add_option("--moves", compMoves, "e.g. \"T 1 2; A 1; T 2 1\"")->required();
    comp->add_option("--m", compM, "substitute a numeric m (default: keep m formal)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "dense brute-force checks");
    auto* dense = oracle->add_subcommand("dense", "compare both sides as dense matrices");
    std::string denseId;
    int denseGrid = 4;
    double denseLen = 10.0, denseHbar = 0.0;
    dense->add_option("--identity", denseId, "catalog entry name")->required();
    dense->add_option("--grid", denseGrid, "points per axis");
    dense->add_option("--length", denseLen, "box length");
    dense->add_option("--hbar", denseHbar, "hbar");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (fnEval->parsed()) return runFnEval(ea);
        if (verify->parsed()) {
            if (!va.all && va.identity.empty()) {
                std::cerr << "verify: need --identity or --all\n";
                return kExitUsage;
            }
            return runVerify(va);
        }
        if (catList->parsed()) return runCatalogList(catJson);
        if (rel->parsed()) return runGroupoidRelations(relSize, relOut, relScripts);
        if (comp->parsed()) {
            bool formal = comp->count("--m") == 0;
            return runGroupoidCompile(compMoves, formal, compM);
        }
        if (dense->parsed()) return runOracleDense(denseId, denseGrid, denseLen, denseHbar);
        std::cerr << "no action\n";
        return kExitUsage;
    } catch (const numerics::GuardError& e) {
        std::cerr << "numeric guard: " << e.what() << "\n";
        return kExitGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
