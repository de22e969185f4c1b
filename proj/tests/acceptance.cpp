// Acceptance suite: one pass/fail line per criterion clause, grouped into the
// five criteria. Exit status is the number of failing criteria.
#include "qpk/catalog.hpp"
#include "qpk/grid.hpp"
#include "qpk/groupoid.hpp"
#include "qpk/qdilog.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <random>
#include <unordered_set>

using namespace qpk;
using C = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

namespace {

int gFailures = 0;

void line(int criterion, const char* clause, bool pass, const std::string& detail = "") {
    std::printf("[criterion %d] %-58s %s", criterion, clause, pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::printf("   (%s)", detail.c_str());
    std::printf("\n");
    std::fflush(stdout);
    if (!pass) ++gFailures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

void criterion1() {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> ur(-1.2, 1.2);
    double worstShift = 0;
    for (double h : {0.3, 0.4, 1.0, 2.5}) {
        for (int eps : {+1, -1}) {
            for (int k = 0; k < 25; ++k) {  // 100 points per hbar across eps/direction
                C z(ur(rng), ur(rng));
                C lhs = qdilog::phiMdc(h, eps, z - 2 * kPi * eps * h);
                C rhs = (1.0 + std::exp(-kPi * eps * h) * std::exp(z)) * qdilog::phiMdc(h, eps, z);
                worstShift = std::max(worstShift, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
                C lhs2 = qdilog::phiMdc(h, eps, z + C(0, 2 * kPi));
                C gain = 1.0 + std::exp(kPi / (eps * h)) * std::exp(z / C(0, eps * h));
                worstShift = std::max(worstShift,
                                      std::abs(lhs2 - gain * qdilog::phiMdc(h, eps, z)) /
                                          std::max(1.0, std::abs(lhs2)));
            }
        }
    }
    line(1, "difference equations, 100 points x {0.3,0.4,1.0,2.5}", worstShift < 1e-8,
         "worst " + fmt(worstShift));

    double worstInv = 0;
    for (double h : {0.3, 0.4, 1.0, 2.5})
        for (int eps : {+1, -1})
            for (int k = 0; k < 5; ++k) {
                C z(ur(rng) * 0.5, ur(rng) * 0.5);
                C prod = qdilog::phiMdc(h, eps, z) * qdilog::phiMdc(h, eps, -z) /
                         std::exp(z * z / (-4 * kPi * eps * h));
                worstInv = std::max(worstInv,
                                    std::abs(prod - qdilog::mdcInvolutivityConstant(h, eps)));
            }
    line(1, "involutivity constant e^{(pi/12) eps (h - 1/h)}", worstInv < 1e-10,
         "worst " + fmt(worstInv));

    double worstUni = 0;
    std::uniform_real_distribution<double> wide(-4.0, 4.0);
    for (int k = 0; k < 100; ++k) {
        double u = std::abs(std::abs(qdilog::PsiHbar<double>(0.4, wide(rng), wide(rng))) - 1.0);
        worstUni = std::max(worstUni, u);
    }
    line(1, "|Psi| = 1 at 100 points", worstUni < 1e-10, "worst " + fmt(worstUni));

    double worstCvr = 0;
    std::uniform_real_distribution<double> strip(-0.8, 0.8);
    for (double h : {0.4, 1.0})
        for (int eps : {+1, -1})
            for (int k = 0; k < 5; ++k) {  // 20 strip points
                C z(strip(rng), strip(rng));
                C a = qdilog::phiMdc(h, eps, z, qdilog::MdcMethod::Ratio);
                C b = qdilog::phiMdc(h, eps, z, qdilog::MdcMethod::Contour);
                worstCvr = std::max(worstCvr, std::abs(a - b) / std::max(1.0, std::abs(a)));
            }
    line(1, "contour vs ratio at 20 strip points", worstCvr < 1e-8, "worst " + fmt(worstCvr));
}

// ---------------------------------------------------------------- criterion 2

void criterion2() {
    int bad = 0;
    std::string first;
    int count = 0;
    for (auto& e : catalog::identityCatalog()) {
        if (e.name.rfind("neg-", 0) == 0) continue;
        ++count;
        auto rep = catalog::verifySymbolic(e);
        if (!rep.pass) {
            ++bad;
            if (first.empty()) first = e.name + ": " + rep.message;
        }
    }
    line(2, ("symbolic identity suite, " + std::to_string(count) + " entries, exact").c_str(),
         bad == 0, bad ? first : "all scripts replay");
}

// ---------------------------------------------------------------- criterion 3

void criterion3() {
    int bad = 0;
    std::string first;
    int count = 0;
    for (auto& e : catalog::identityCatalog()) {
        if (e.name.rfind("neg-", 0) != 0) continue;
        ++count;
        auto rep = catalog::verifySymbolic(e);
        if (!rep.pass) {
            ++bad;
            if (first.empty()) first = e.name + ": " + rep.message;
        }
    }
    line(3, ("negative-constant suite, " + std::to_string(count) + " entries").c_str(), bad == 0,
         bad ? first : "all verified symbolically");
}

// ---------------------------------------------------------------- criterion 4

void criterion4() {
    using namespace qpk::numerics;
    constexpr auto PK = hopf::AlgebraKind::PseudoKahler;

    // dense oracle vs matrix-free composition at N = 4
    {
        GridConfig cfg = GridConfig::forSlots({1, 2}, 4, 10.0, 0.4);
        const std::size_t dim = cfg.totalPoints();
        OperatorWord t12 = reps::buildT(PK, 1, 2);
        auto whole = denseMatrix(OperatorSum(t12), cfg);
        // compose the factors as dense matrices and compare
        OperatorWord dilogOnly = OperatorWord::dilog(std::get<DilogFactor>(t12.factors[0]));
        OperatorWord conjOnly = OperatorWord::conj(std::get<Conjugator>(t12.factors[1]));
        auto md = denseMatrix(OperatorSum(dilogOnly), cfg);
        auto mc = denseMatrix(OperatorSum(conjOnly), cfg);
        double err = 0;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                C acc = 0;
                for (std::size_t k = 0; k < dim; ++k) acc += md[k * dim + i] * mc[j * dim + k];
                err = std::max(err, std::abs(acc - whole[j * dim + i]));
            }
        line(4, "dense oracle vs matrix-free composition, N=4, 1e-12", err < 1e-12,
             "worst " + fmt(err));

        // T unitarity on the dense oracle
        double uerr = 0;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                C acc = 0;
                for (std::size_t k = 0; k < dim; ++k)
                    acc += std::conj(whole[i * dim + k]) * whole[j * dim + k];
                uerr = std::max(uerr, std::abs(acc - (i == j ? C(1) : C(0))));
            }
        line(4, "T unitarity ||T*T - I|| <= 1e-10 (dense)", uerr < 1e-10, "worst " + fmt(uerr));
    }

    // A^(1) cubes to the identity exactly
    {
        GridConfig cfg = GridConfig::forSlots({1}, 16, 12.0, 0.4);
        std::mt19937 rng(7);
        GridState v = GridState::randomGaussian(cfg, rng);
        GridState w = v;
        OperatorWord a1 = reps::buildAmValue(PK, 1, Rational(1));
        for (int i = 0; i < 3; ++i) applyWord(a1, w);
        w -= v;
        line(4, "A^(1) cube acts as the exact identity permutation", w.norm() == 0.0,
             "norm diff " + fmt(w.norm()));
    }

    // intertwining residuals at the stated profile
    {
        const char* tags[8] = {"Z1", "Z2", "Z1s", "Z2s", "Z1v", "Z2v", "Z1vs", "Z2vs"};
        double worst = 0;
        std::string which;
        for (auto* t : tags) {
            auto* e = catalog::findEntry(std::string("intertwine-") + t);
            auto rep = numerics::verifyNumeric(*e, 32, 20.0, 0.4, 1e-6);
            for (double r : rep.residuals)
                if (r > worst) {
                    worst = r;
                    which = t;
                }
        }
        line(4, "intertwining residuals <= 1e-6, N=32, L=20, 5 Gaussians", worst <= 1e-6,
             "worst " + fmt(worst) + " at " + which +
                 "; the sampled dilog multiplier is not periodic across the Nyquist wrap and "
                 "the e^{q}-type factors amplify the mismatch by e^{L/2}");
    }

    // T-pentagon at N=8, improving at N=16
    {
        auto* e = catalog::findEntry("t-pentagon");
        auto r8 = numerics::verifyNumeric(*e, 8, 20.0, 0.4, 1e-3);
        auto r16 = numerics::verifyNumeric(*e, 16, 20.0, 0.4, 1.0);
        double w8 = 0, w16 = 0;
        for (double r : r8.residuals) w8 = std::max(w8, r);
        for (double r : r16.residuals) w16 = std::max(w16, r);
        line(4, "T-pentagon residual <= 1e-3 at N=8, d=6", w8 <= 1e-3,
             "worst " + fmt(w8) + "; same periodization floor, O(1/N)");
        line(4, "T-pentagon residual improves at N=16", w16 < w8,
             fmt(w8) + " -> " + fmt(w16));
    }
}

// ---------------------------------------------------------------- criterion 5

void criterion5() {
    // presentation relations with recorded phases for |I| <= 4
    {
        int bad = 0;
        int count = 0;
        std::string first;
        bool phaseOk = true;
        for (int size = 1; size <= 4; ++size) {
            auto checks = groupoid::checkPresentation(size, catalog::defaultScriptsDir());
            for (auto& rc : checks) {
                ++count;
                if (!rc.pass) {
                    ++bad;
                    if (first.empty()) first = rc.name + ": " + rc.message;
                }
                if (rc.name.rfind("tat", 0) == 0)
                    phaseOk = phaseOk && rc.phase == "exp(pi i (m-1)^2/3)";
                else
                    phaseOk = phaseOk && rc.phase == "1";
            }
        }
        line(5, ("presentation relations, |I| <= 4, " + std::to_string(count) + " instances")
                    .c_str(),
             bad == 0, bad ? first : "all verified");
        line(5, "recorded phases: unit except the TAT relation", phaseOk);
    }

    // connectivity by search on n-gons, n <= 7
    {
        bool ok = true;
        std::string detail;
        for (int t = 1; t <= 5; ++t) {  // t triangles = (t+2)-gon
            std::size_t got = groupoid::reachableCount(t);
            std::size_t want = groupoid::dottedTriangulationCount(t);
            detail += (t > 1 ? ", " : "") + std::to_string(got);
            if (got != want) ok = false;
        }
        line(5, "dotted-triangulation connectivity, n-gons up to n=7", ok, detail + " states");
    }

    // move words equal in the group act identically on the polygon corpus
    {
        std::vector<groupoid::DottedTriangulation> all;
        {
            std::unordered_set<std::string> seen;
            std::deque<groupoid::DottedTriangulation> work{
                groupoid::DottedTriangulation::polygonFan(3)};
            seen.insert(work.front().key());
            all.push_back(work.front());
            while (!work.empty()) {
                auto dt = std::move(work.front());
                work.pop_front();
                std::vector<groupoid::Move> moves;
                for (auto& t : dt.triangles)
                    moves.push_back({groupoid::Move::Kind::DotRotate, t.label, 0, {}});
                for (auto& a : dt.triangles)
                    for (auto& b : dt.triangles)
                        if (a.label != b.label && groupoid::flipApplicable(dt, a.label, b.label))
                            moves.push_back({groupoid::Move::Kind::Flip, a.label, b.label, {}});
                for (auto& mv : moves) {
                    auto nd = groupoid::applyMove(dt, mv);
                    if (seen.insert(nd.key()).second) {
                        all.push_back(nd);
                        work.push_back(nd);
                    }
                }
            }
        }
        auto agree = [&](const char* l, const char* r) {
            groupoid::MoveWord L = groupoid::parseMoves(l), R = groupoid::parseMoves(r);
            int inst = 0;
            for (auto& dt : all) {
                try {
                    auto a = groupoid::applyWord(dt, L);
                    auto b = groupoid::applyWord(dt, R);
                    ++inst;
                    if (!(a.key() == b.key())) return false;
                } catch (const groupoid::GroupoidError&) {
                }
            }
            return inst > 0;
        };
        bool ok = agree("T 2 3; T 1 2", "T 1 2; T 1 3; T 2 3") &&
                  agree("A 1; T 1 2; A 2", "A 2; T 2 1; A 1") &&
                  agree("T 1 2; A 1; T 2 1", "A 1; A 2; P (1 2)") &&
                  agree("A 3; A 3; A 3", "");
        line(5, "move-word relation invariance on the polygon corpus", ok);
    }
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    auto dt = std::chrono::duration_cast<std::chrono::seconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("---\n%d failing clause(s); %llds total\n", gFailures,
                static_cast<long long>(dt));
    if (gFailures)
        std::printf("the failing numeric tolerances are analyzed in the project notes: the\n"
                    "stated grid cannot separate the dilogarithm multiplier's wrap mismatch\n"
                    "from the unbounded Weyl factors at those thresholds\n");
    return gFailures;
}
