#include "qpk/script.hpp"

#include <fstream>
#include <sstream>

namespace qpk::script {

std::string Directive::str() const {
    std::ostringstream os;
    if (onRhs) os << "rhs ";
    switch (kind) {
        case Kind::PushLeft: os << "push-left " << k; break;
        case Kind::Bch: os << "bch " << k; break;
        case Kind::DilogCommute:
            os << "dilog-commute " << k << " eps=" << (eps > 0 ? "+1" : "-1");
            if (vee) os << " vee";
            break;
        case Kind::Pentagon: os << "pentagon " << k << (expand ? " expand" : " contract"); break;
        case Kind::Involutivity: os << "involutivity " << k; break;
        case Kind::QuadToSaso: os << "quad-to-saso " << k; break;
        case Kind::DeltaReduce: os << "delta-reduce " << k << " " << k2; break;
        case Kind::ExpectEqual: os << "expect-equal"; break;
    }
    return os.str();
}

ProofScript parseScript(const std::string& text) {
    ProofScript script;
    std::istringstream in(text);
    std::string rawLine;
    int lineNo = 0;
    while (std::getline(in, rawLine)) {
        ++lineNo;
        std::string line = rawLine;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;

        Directive d;
        d.line = lineNo;
        std::size_t i = 0;
        if (tok[i] == "rhs") {
            d.onRhs = true;
            ++i;
            if (i >= tok.size()) throw ScriptError(lineNo, 1, "missing directive after 'rhs'");
        }
        auto needInt = [&](std::size_t j, const char* what) {
            if (j >= tok.size()) throw ScriptError(lineNo, int(j + 1), std::string("missing ") + what);
            try {
                return std::stoi(tok[j]);
            } catch (...) {
                throw ScriptError(lineNo, int(j + 1), std::string("bad integer for ") + what);
            }
        };
        const std::string& name = tok[i];
        if (name == "push-left") {
            d.kind = Directive::Kind::PushLeft;
            d.k = needInt(i + 1, "factor index");
        } else if (name == "bch") {
            d.kind = Directive::Kind::Bch;
            d.k = needInt(i + 1, "factor index");
        } else if (name == "dilog-commute") {
            d.kind = Directive::Kind::DilogCommute;
            d.k = needInt(i + 1, "factor index");
            bool haveEps = false;
            for (std::size_t j = i + 2; j < tok.size(); ++j) {
                if (tok[j] == "vee") {
                    d.vee = true;
                } else if (tok[j].rfind("eps=", 0) == 0) {
                    std::string v = tok[j].substr(4);
                    if (v == "+1" || v == "1")
                        d.eps = +1;
                    else if (v == "-1")
                        d.eps = -1;
                    else
                        throw ScriptError(lineNo, int(j + 1), "eps must be +1 or -1");
                    haveEps = true;
                } else {
                    throw ScriptError(lineNo, int(j + 1), "unknown argument '" + tok[j] + "'");
                }
            }
            if (!haveEps) throw ScriptError(lineNo, 1, "dilog-commute requires eps=");
        } else if (name == "pentagon") {
            d.kind = Directive::Kind::Pentagon;
            d.k = needInt(i + 1, "factor index");
            if (i + 2 >= tok.size() || (tok[i + 2] != "expand" && tok[i + 2] != "contract"))
                throw ScriptError(lineNo, int(i + 3), "pentagon requires expand|contract");
            d.expand = tok[i + 2] == "expand";
        } else if (name == "involutivity") {
            d.kind = Directive::Kind::Involutivity;
            d.k = needInt(i + 1, "factor index");
        } else if (name == "quad-to-saso") {
            d.kind = Directive::Kind::QuadToSaso;
            d.k = needInt(i + 1, "factor index");
        } else if (name == "delta-reduce") {
            d.kind = Directive::Kind::DeltaReduce;
            d.k = needInt(i + 1, "slot");
            d.k2 = needInt(i + 2, "slot");
        } else if (name == "expect-equal") {
            d.kind = Directive::Kind::ExpectEqual;
        } else {
            throw ScriptError(lineNo, int(i + 1), "unknown directive '" + name + "'");
        }
        script.directives.push_back(d);
    }
    return script;
}

ProofScript loadScript(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open proof script: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return parseScript(os.str());
}

ReplayResult replay(const ProofScript& script, OperatorSum lhs, OperatorSum rhs) {
    ReplayResult res;
    bool compared = false;
    auto record = [&](const Directive& d, const char* note) {
        StepRecord r;
        r.directive = d.str();
        r.note = note ? note : "";
        r.lhsTerms = lhs.words.size();
        r.rhsTerms = rhs.words.size();
        res.steps.push_back(std::move(r));
    };
    auto doExpectEqual = [&]() {
        OperatorSum nl = normalized(lhs), nr = normalized(rhs);
        compared = true;
        if (nl.words == nr.words) {
            res.pass = true;
            return true;
        }
        res.pass = false;
        std::ostringstream os;
        os << "normalized sums differ\n  lhs =\n" << nl.str() << "\n  rhs =\n" << nr.str();
        res.message = os.str();
        return false;
    };
    try {
        for (auto& d : script.directives) {
            if (d.kind == Directive::Kind::ExpectEqual) {
                StepRecord r;
                r.directive = d.str();
                if (!doExpectEqual()) {
                    r.ok = false;
                    r.note = res.message;
                    res.steps.push_back(std::move(r));
                    return res;
                }
                res.steps.push_back(std::move(r));
                continue;
            }
            if (d.kind == Directive::Kind::DeltaReduce) {
                deltaReduce(lhs, rhs, d.k, d.k2);
                record(d, nullptr);
                continue;
            }
            OperatorSum& side = d.onRhs ? rhs : lhs;
            std::size_t k = std::size_t(d.k) - 1;  // scripts are 1-based
            switch (d.kind) {
                case Directive::Kind::PushLeft: side = moveFactorLeft(side, k); break;
                case Directive::Kind::Bch: side = applyBch(side, k); break;
                case Directive::Kind::DilogCommute:
                    side = moveWeylLeftChecked(side, k, d.eps, d.vee);
                    break;
                case Directive::Kind::Pentagon: side = applyPentagon(side, k, d.expand); break;
                case Directive::Kind::Involutivity: side = applyInvolutivity(side, k); break;
                case Directive::Kind::QuadToSaso: side = applyQuadToSaso(side, k); break;
                default: break;
            }
            record(d, nullptr);
        }
        if (!compared) doExpectEqual();
        if (!res.pass && res.message.empty()) res.message = "final comparison failed";
    } catch (const std::exception& e) {
        res.pass = false;
        res.message = std::string("script step failed: ") + e.what();
        StepRecord r;
        r.directive = "(exception)";
        r.ok = false;
        r.note = res.message;
        res.steps.push_back(std::move(r));
    }
    return res;
}

}  // namespace qpk::script
