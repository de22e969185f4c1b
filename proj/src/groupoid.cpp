#include "qpk/groupoid.hpp"

#include "qpk/catalog.hpp"
#include "qpk/reps.hpp"
#include "qpk/script.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_set>

namespace qpk::groupoid {

using reps::buildAm;
using reps::buildAmValue;
using reps::buildPerm;
using reps::buildT;

DottedTriangulation DottedTriangulation::polygonFan(int nTriangles) {
    // (n+2)-gon with vertices 0..n+1, boundary edges b_i, fan diagonals from
    // vertex 0; triangle i spans diagonal(i), boundary(i+1), diagonal(i+1)
    DottedTriangulation dt;
    // edge ids: boundary of triangle i gets id 100+i, diagonals get id i
    // (ids are arbitrary; the canonical key renames them anyway)
    for (int i = 1; i <= nTriangles; ++i) {
        Triangle t;
        t.label = i;
        t.edges = {i - 1, 100 + i, i};
        t.dot = 0;
        dt.triangles.push_back(t);
    }
    return dt;
}

const Triangle* DottedTriangulation::find(int label) const {
    for (auto& t : triangles)
        if (t.label == label) return &t;
    return nullptr;
}

std::string DottedTriangulation::key() const {
    std::vector<Triangle> ts = triangles;
    std::sort(ts.begin(), ts.end(), [](auto& a, auto& b) { return a.label < b.label; });
    // boundary edges (single occurrence) are fixed polygon sides and keep
    // their ids; internal diagonals are created afresh by flips, so they are
    // renamed in order of first occurrence
    std::map<int, int> count;
    for (auto& t : ts)
        for (int e : t.edges) ++count[e];
    std::map<int, int> rename;
    std::ostringstream os;
    for (auto& t : ts) {
        os << t.label << ":";
        for (int r = 0; r < 3; ++r) {
            int e = t.edges[std::size_t((t.dot + r) % 3)];
            if (count[e] == 1) {
                os << "b" << e;
            } else {
                auto it = rename.find(e);
                if (it == rename.end()) it = rename.emplace(e, int(rename.size())).first;
                os << "i" << it->second;
            }
            os << (r < 2 ? "," : ";");
        }
    }
    return os.str();
}

std::string Move::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::DotRotate: os << "A " << j; break;
        case Kind::Flip: os << "T " << j << " " << k; break;
        case Kind::Relabel:
            os << "P";
            for (auto& c : cycles) {
                os << " (";
                for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
                os << ")";
            }
            break;
    }
    return os.str();
}

namespace {

int inEdge(const Triangle& t, int r) { return t.edges[std::size_t((t.dot + r) % 3)]; }

}  // namespace

bool flipApplicable(const DottedTriangulation& dt, int j, int k) {
    const Triangle* tj = dt.find(j);
    const Triangle* tk = dt.find(k);
    if (!tj || !tk || j == k) return false;
    // shared edge must be k's outgoing side and j's first incoming side
    return inEdge(*tk, 2) == inEdge(*tj, 0);
}

DottedTriangulation applyMove(const DottedTriangulation& dt, const Move& mv) {
    DottedTriangulation out = dt;
    switch (mv.kind) {
        case Move::Kind::DotRotate: {
            for (auto& t : out.triangles)
                if (t.label == mv.j) {
                    t.dot = (t.dot + 1) % 3;
                    return out;
                }
            throw GroupoidError("A: no triangle labeled " + std::to_string(mv.j));
        }
        case Move::Kind::Flip: {
            if (!flipApplicable(dt, mv.j, mv.k))
                throw GroupoidError("T " + std::to_string(mv.j) + " " + std::to_string(mv.k) +
                                    ": dots are not in the flip configuration");
            Triangle* tj = nullptr;
            Triangle* tk = nullptr;
            for (auto& t : out.triangles) {
                if (t.label == mv.j) tj = &t;
                if (t.label == mv.k) tk = &t;
            }
            // k = (a, b | e), j = (e, d | f)  ->  j takes (b, d | g),
            // k takes (a, g | f), with g the new diagonal
            int a = inEdge(*tk, 0), b = inEdge(*tk, 1);
            int d = inEdge(*tj, 1), f = inEdge(*tj, 2);
            int g = 0;
            for (auto& t : out.triangles)
                for (int e : t.edges) g = std::max(g, e + 1);
            tj->edges = {b, d, g};
            tj->dot = 0;
            tk->edges = {a, g, f};
            tk->dot = 0;
            return out;
        }
        case Move::Kind::Relabel: {
            auto image = [&](int x) {
                for (auto& c : mv.cycles)
                    for (std::size_t i = 0; i < c.size(); ++i)
                        if (c[i] == x) return c[(i + 1) % c.size()];
                return x;
            };
            for (auto& t : out.triangles) t.label = image(t.label);
            std::sort(out.triangles.begin(), out.triangles.end(),
                      [](auto& x, auto& y) { return x.label < y.label; });
            return out;
        }
    }
    throw GroupoidError("unknown move");
}

DottedTriangulation applyWord(const DottedTriangulation& dt, const MoveWord& w) {
    // move words are written in operator order: the rightmost move acts first
    DottedTriangulation cur = dt;
    for (auto it = w.rbegin(); it != w.rend(); ++it) cur = applyMove(cur, *it);
    return cur;
}

std::size_t dottedTriangulationCount(int n) {
    auto catalan = [](int m) {
        std::size_t c = 1;
        for (int i = 0; i < m; ++i) c = c * 2 * std::size_t(2 * i + 1) / std::size_t(i + 2);
        return c;
    };
    std::size_t r = catalan(n);
    for (int i = 0; i < n; ++i) r *= 3;
    for (int i = 2; i <= n; ++i) r *= std::size_t(i);
    return r;
}

std::size_t reachableCount(int nTriangles) {
    DottedTriangulation start = DottedTriangulation::polygonFan(nTriangles);
    std::unordered_set<std::string> seen;
    std::deque<DottedTriangulation> work{start};
    seen.insert(start.key());
    while (!work.empty()) {
        DottedTriangulation dt = std::move(work.front());
        work.pop_front();
        auto push = [&](DottedTriangulation nd) {
            std::string k = nd.key();
            if (seen.insert(std::move(k)).second) work.push_back(std::move(nd));
        };
        for (auto& t : dt.triangles) {
            Move a{Move::Kind::DotRotate, t.label, 0, {}};
            push(applyMove(dt, a));
        }
        for (auto& tj : dt.triangles)
            for (auto& tk : dt.triangles)
                if (tj.label != tk.label && flipApplicable(dt, tj.label, tk.label))
                    push(applyMove(dt, Move{Move::Kind::Flip, tj.label, tk.label, {}}));
        for (int a = 1; a <= nTriangles; ++a)
            for (int b = a + 1; b <= nTriangles; ++b)
                push(applyMove(dt, Move{Move::Kind::Relabel, 0, 0, {{a, b}}}));
    }
    return seen.size();
}

OperatorSum compileMove(const Move& mv, bool formalM, const Rational& mval) {
    constexpr auto PK = hopf::AlgebraKind::PseudoKahler;
    switch (mv.kind) {
        case Move::Kind::DotRotate:
            return OperatorSum(formalM ? buildAm(PK, mv.j) : buildAmValue(PK, mv.j, mval));
        case Move::Kind::Flip: return OperatorSum(buildT(PK, mv.j, mv.k));
        case Move::Kind::Relabel: return OperatorSum(buildPerm(mv.cycles));
    }
    throw GroupoidError("unknown move");
}

OperatorSum compileWord(const MoveWord& w, bool formalM, const Rational& mval) {
    OperatorSum r = OperatorSum::identity();
    for (auto& mv : w) r = r * compileMove(mv, formalM, mval);
    return r;
}

namespace {

RelationCheck checkRelation(const std::string& name, const std::string& phase,
                            const OperatorSum& lhs, const OperatorSum& rhs,
                            const std::string& scriptFile, const std::string& scriptsDir) {
    RelationCheck rc;
    rc.name = name;
    rc.phase = phase;
    try {
        script::ProofScript ps;
        if (!scriptFile.empty()) ps = script::loadScript(scriptsDir + "/" + scriptFile);
        auto res = script::replay(ps, lhs, rhs);
        rc.pass = res.pass;
        rc.message = res.message;
    } catch (const std::exception& e) {
        rc.pass = false;
        rc.message = e.what();
    }
    return rc;
}

}  // namespace

std::vector<RelationCheck> checkPresentation(int size, const std::string& scriptsDir) {
    if (size < 1 || size > 4) throw GroupoidError("presentation check supports 1 <= |I| <= 4");
    constexpr auto PK = hopf::AlgebraKind::PseudoKahler;
    std::vector<RelationCheck> out;
    auto A = [&](int j) { return OperatorSum(buildAm(PK, j)); };
    auto T = [&](int j, int k) { return OperatorSum(buildT(PK, j, k)); };
    auto P = [&](std::vector<std::vector<int>> cycles) {
        return OperatorSum(buildPerm(cycles));
    };
    Coeff mm1 = Coeff::m() - Coeff(1);
    OperatorSum tatPhase(
        OperatorWord::scalar(Prefactor::expPi(Coeff::i() * mm1 * mm1 * Coeff::rat(1, 3))));

    for (int j = 1; j <= size; ++j) {
        out.push_back(checkRelation("a" + std::to_string(j) + "^3 = 1", "1",
                                    A(j) * A(j) * A(j), OperatorSum::identity(), "", scriptsDir));
    }
    auto nm = [](const char* base, std::initializer_list<int> idx) {
        std::string s = base;
        for (int i : idx) s += "_" + std::to_string(i);
        return s;
    };
    for (int j = 1; j <= size; ++j)
        for (int k = 1; k <= size; ++k) {
            if (j == k) continue;
            for (int l = 1; l <= size; ++l) {
                if (l == j || l == k) continue;
                out.push_back(checkRelation(nm("t_pentagon", {j, k, l}), "1",
                                            T(k, l) * T(j, k), T(j, k) * T(j, l) * T(k, l),
                                            "t_pentagon.qps", scriptsDir));
            }
            out.push_back(checkRelation(nm("ata", {j, k}), "1", A(j) * T(j, k) * A(k),
                                        A(k) * T(k, j) * A(j), "", scriptsDir));
            out.push_back(checkRelation(nm("tat", {j, k}), "exp(pi i (m-1)^2/3)",
                                        T(j, k) * A(j) * T(k, j),
                                        tatPhase * A(j) * A(k) * P({{j, k}}), "tat.qps",
                                        scriptsDir));
        }
    // trivial relations
    out.push_back(checkRelation("p_id = 1", "1", P({}), OperatorSum::identity(), "", scriptsDir));
    if (size >= 2) {
        out.push_back(checkRelation("p_(12) p_(12) = 1", "1", P({{1, 2}}) * P({{1, 2}}),
                                    OperatorSum::identity(), "", scriptsDir));
        out.push_back(checkRelation("p_(12) a_1 = a_2 p_(12)", "1", P({{1, 2}}) * A(1),
                                    A(2) * P({{1, 2}}), "", scriptsDir));
        out.push_back(checkRelation("a_1 a_2 = a_2 a_1", "1", A(1) * A(2), A(2) * A(1), "",
                                    scriptsDir));
    }
    if (size >= 3) {
        out.push_back(checkRelation("p_(123) = p_(12) p_(23)", "1", P({{1, 2, 3}}),
                                    P({{1, 2}}) * P({{2, 3}}), "", scriptsDir));
        out.push_back(checkRelation("p_(12) t_13 = t_23 p_(12)", "1", P({{1, 2}}) * T(1, 3),
                                    T(2, 3) * P({{1, 2}}), "", scriptsDir));
        out.push_back(checkRelation("a_1 t_23 = t_23 a_1", "1", A(1) * T(2, 3), T(2, 3) * A(1),
                                    "", scriptsDir));
    }
    if (size >= 4) {
        out.push_back(checkRelation("t_12 t_34 = t_34 t_12", "1", T(1, 2) * T(3, 4),
                                    T(3, 4) * T(1, 2), "", scriptsDir));
        out.push_back(checkRelation("p_(12)(34) t_13 = t_24 p_(12)(34)", "1",
                                    P({{1, 2}, {3, 4}}) * T(1, 3), T(2, 4) * P({{1, 2}, {3, 4}}),
                                    "", scriptsDir));
    }
    return out;
}

std::string formatTriangulation(const DottedTriangulation& dt) {
    std::ostringstream os;
    for (auto& t : dt.triangles)
        os << "triangle " << t.label << " " << t.edges[0] << " " << t.edges[1] << " "
           << t.edges[2] << " dot=" << t.dot << "\n";
    return os.str();
}

DottedTriangulation parseTriangulation(const std::string& text) {
    DottedTriangulation dt;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw != "triangle")
            throw GroupoidError("line " + std::to_string(lineNo) + ": expected 'triangle'");
        Triangle t;
        std::string dotTok;
        if (!(ls >> t.label >> t.edges[0] >> t.edges[1] >> t.edges[2] >> dotTok) ||
            dotTok.rfind("dot=", 0) != 0)
            throw GroupoidError("line " + std::to_string(lineNo) + ": malformed triangle");
        t.dot = std::stoi(dotTok.substr(4));
        if (t.dot < 0 || t.dot > 2)
            throw GroupoidError("line " + std::to_string(lineNo) + ": dot must be 0..2");
        dt.triangles.push_back(t);
    }
    std::sort(dt.triangles.begin(), dt.triangles.end(),
              [](auto& a, auto& b) { return a.label < b.label; });
    return dt;
}

MoveWord parseMoves(const std::string& text) {
    MoveWord w;
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) { throw GroupoidError("move word: " + msg); };
    while (pos < text.size()) {
        std::size_t semi = text.find(';', pos);
        std::string part = text.substr(pos, semi == std::string::npos ? std::string::npos
                                                                      : semi - pos);
        pos = semi == std::string::npos ? text.size() : semi + 1;
        std::istringstream ls(part);
        std::string op;
        if (!(ls >> op)) continue;
        Move mv;
        if (op == "A") {
            mv.kind = Move::Kind::DotRotate;
            if (!(ls >> mv.j)) fail("A needs a triangle label");
        } else if (op == "T") {
            mv.kind = Move::Kind::Flip;
            if (!(ls >> mv.j >> mv.k)) fail("T needs two labels");
        } else if (op == "P") {
            mv.kind = Move::Kind::Relabel;
            std::string rest;
            std::getline(ls, rest);
            std::vector<int> cur;
            bool open = false;
            std::string tok;
            for (char c : rest + " ") {
                if (c == '(') {
                    open = true;
                    cur.clear();
                } else if (c == ')' || c == ' ' || c == '\t') {
                    if (!tok.empty()) {
                        cur.push_back(std::stoi(tok));
                        tok.clear();
                    }
                    if (c == ')') {
                        if (!open) fail("unbalanced parenthesis");
                        mv.cycles.push_back(cur);
                        open = false;
                    }
                } else if (std::isdigit(static_cast<unsigned char>(c))) {
                    tok += c;
                } else {
                    fail(std::string("unexpected character '") + c + "'");
                }
            }
            if (open) fail("unbalanced parenthesis");
        } else {
            fail("unknown move '" + op + "'");
        }
        w.push_back(mv);
    }
    return w;
}

}  // namespace qpk::groupoid
