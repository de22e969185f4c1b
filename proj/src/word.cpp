#include "qpk/word.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace qpk {

// ---------------------------------------------------------------------------
// Prefactor

void Prefactor::canonicalize() {
    if (num == 0) {
        cPow = 0;
        expArg = Coeff();
        return;
    }
    // exp(pi*i*n) = (-1)^n for integer n: fold the integer part of the
    // imaginary rational constant of expArg into num, reduce the rest mod 2.
    GaussRat c = expArg.constantPart();
    Rational im = c.im;
    if (im != 0) {
        boost::multiprecision::cpp_int q =
            boost::multiprecision::numerator(im) / boost::multiprecision::denominator(im);
        Rational whole(q);
        Rational frac = im - whole;
        if (frac < 0) {
            frac += 1;
            whole -= 1;
        }
        if (boost::multiprecision::numerator(whole) % 2 != 0) num = -num;
        expArg += Coeff(GaussRat(Rational(0), frac - im));
    }
}

Prefactor Prefactor::operator*(const Prefactor& o) const {
    Prefactor r;
    r.num = num * o.num;
    r.cPow = cPow + o.cPow;
    r.expArg = expArg + o.expArg;
    r.canonicalize();
    return r;
}

Prefactor Prefactor::inverse() const {
    if (num != 1 && num != -1)
        throw RewriteError("Prefactor: cannot invert non-unit integer multiplier");
    Prefactor r;
    r.num = num;
    r.cPow = -cPow;
    r.expArg = -expArg;
    r.canonicalize();
    return r;
}

std::complex<double> Prefactor::eval(double hbarValue, double mValue) const {
    if (cPow != 0)
        throw RewriteError("Prefactor: formal constant c has no numeric value");
    const double pi = 3.14159265358979323846;
    std::complex<double> e = expArg.eval(hbarValue, mValue);
    return double(num) * std::exp(pi * e);
}

std::string Prefactor::str() const {
    std::ostringstream os;
    os << num;
    if (cPow != 0) os << "*c^" << cPow;
    if (!expArg.isZero()) os << "*e^{pi(" << expArg.str() << ")}";
    return os.str();
}

// ---------------------------------------------------------------------------
// Conjugator

namespace {

std::vector<Coord> unionCoords(const std::vector<Coord>& a, const std::vector<Coord>& b) {
    std::vector<Coord> r = a;
    for (auto& c : b)
        if (std::find(r.begin(), r.end(), c) == r.end()) r.push_back(c);
    std::sort(r.begin(), r.end());
    return r;
}

std::vector<Coord> coordsOf(const LinForm& f) {
    std::vector<Coord> r;
    for (auto& [g, c] : f.coeffs()) {
        Coord cd{g.slot, g.axis};
        if (std::find(r.begin(), r.end(), cd) == r.end()) r.push_back(cd);
    }
    std::sort(r.begin(), r.end());
    return r;
}

/// Exact inverse of an integer matrix with det +-1 (Gauss-Jordan over Q).
std::vector<std::int64_t> integerInverse(const std::vector<Coord>& coords,
                                         const std::vector<std::int64_t>& m) {
    const std::size_t n = coords.size();
    std::vector<Rational> a(n * 2 * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * 2 * n + j] = Rational(m[i * n + j]);
        a[i * 2 * n + n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv * 2 * n + col] == 0) ++piv;
        if (piv == n) throw RewriteError("Conjugator: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < 2 * n; ++j)
                std::swap(a[piv * 2 * n + j], a[col * 2 * n + j]);
        Rational p = a[col * 2 * n + col];
        for (std::size_t j = 0; j < 2 * n; ++j) a[col * 2 * n + j] /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            Rational f = a[i * 2 * n + col];
            if (f == 0) continue;
            for (std::size_t j = 0; j < 2 * n; ++j) a[i * 2 * n + j] -= f * a[col * 2 * n + j];
        }
    }
    std::vector<std::int64_t> inv(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = a[i * 2 * n + n + j];
            if (boost::multiprecision::denominator(v) != 1)
                throw RewriteError("Conjugator: matrix inverse is not integral");
            inv[i * n + j] = static_cast<std::int64_t>(boost::multiprecision::numerator(v));
        }
    return inv;
}

std::int64_t intDet(std::size_t n, std::vector<std::int64_t> m) {
    // fraction-free elimination is overkill at these sizes; use rationals
    std::vector<Rational> a(n * n);
    for (std::size_t i = 0; i < n * n; ++i) a[i] = Rational(m[i]);
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv * n + col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
            det = -det;
        }
        det *= a[col * n + col];
        Rational p = a[col * n + col];
        for (std::size_t i = col + 1; i < n; ++i) {
            Rational f = a[i * n + col] / p;
            for (std::size_t j = col; j < n; ++j) a[i * n + j] -= f * a[col * n + j];
        }
    }
    return static_cast<std::int64_t>(boost::multiprecision::numerator(det));
}

}  // namespace

Conjugator Conjugator::fromMatrix(std::vector<Coord> coords, std::vector<std::int64_t> rowMajor) {
    Conjugator c;
    if (coords.size() * coords.size() != rowMajor.size())
        throw RewriteError("Conjugator: matrix size mismatch");
    // bring coords into sorted order, permuting the matrix accordingly
    std::vector<std::size_t> perm(coords.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return coords[a] < coords[b]; });
    std::vector<Coord> sc(coords.size());
    std::vector<std::int64_t> sm(rowMajor.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        sc[i] = coords[perm[i]];
        for (std::size_t j = 0; j < coords.size(); ++j)
            sm[i * coords.size() + j] = rowMajor[perm[i] * coords.size() + perm[j]];
    }
    c.coords_ = std::move(sc);
    c.mat_ = std::move(sm);
    if (c.determinant() != 1 && c.determinant() != -1)
        throw RewriteError("Conjugator: matrix must be unimodular");
    c.canonicalize();
    return c;
}

Conjugator Conjugator::fromWeyl(const LinForm& exponent) {
    if (!exponent.piConst().isZero())
        throw RewriteError("Conjugator: Weyl tail must be constant-free");
    Conjugator c;
    c.coords_ = coordsOf(exponent);
    c.mat_.assign(c.coords_.size() * c.coords_.size(), 0);
    for (std::size_t i = 0; i < c.coords_.size(); ++i) c.mat_[i * c.coords_.size() + i] = 1;
    c.weyl_ = exponent;
    return c;
}

Conjugator Conjugator::slotPermutation(const std::vector<std::pair<int, int>>& mapping) {
    // sigma sends slot j to slot sigma(j); the underlying coordinate
    // permutation matrix c satisfies (a c)_{coord of sigma(j)} = a_{coord of j}.
    std::vector<Coord> coords;
    for (auto& [from, to] : mapping) {
        coords.push_back({from, Axis::T});
        coords.push_back({from, Axis::S});
        if (from != to) {
            if (std::find(coords.begin(), coords.end(), Coord{to, Axis::T}) == coords.end()) {
                coords.push_back({to, Axis::T});
                coords.push_back({to, Axis::S});
            }
        }
    }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    auto index = [&](Coord c) {
        return std::size_t(std::find(coords.begin(), coords.end(), c) - coords.begin());
    };
    auto imageSlot = [&](int s) {
        for (auto& [from, to] : mapping)
            if (from == s) return to;
        return s;
    };
    const std::size_t n = coords.size();
    std::vector<std::int64_t> m(n * n, 0);
    // (P_sigma f)({x_j}) = f({x_sigma(j)}): row i (source coordinate) has a 1
    // in the column of its sigma-image coordinate read from f's argument.
    for (std::size_t i = 0; i < n; ++i) {
        Coord src = coords[i];
        Coord dst{imageSlot(src.slot), src.axis};
        m[i * n + index(dst)] = 1;
    }
    return fromMatrix(coords, m);
}

bool Conjugator::isIdentity() const {
    if (!weyl_.isZero()) return false;
    const std::size_t n = coords_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (mat_[i * n + j] != (i == j ? 1 : 0)) return false;
    return true;
}

std::int64_t Conjugator::determinant() const { return intDet(coords_.size(), mat_); }

LinForm Conjugator::matrixSubstitute(const LinForm& f, bool inverse) const {
    const std::size_t n = coords_.size();
    std::vector<std::int64_t> invStore = n ? integerInverse(coords_, mat_) : std::vector<std::int64_t>{};
    // sigma uses c on momenta and c^{-1} on positions; the inverse
    // substitution swaps the two roles.
    const std::vector<std::int64_t>& use = inverse ? invStore : mat_;
    const std::vector<std::int64_t>& useInv = inverse ? mat_ : invStore;
    auto coordIndex = [&](const Generator& g) -> std::ptrdiff_t {
        Coord c{g.slot, g.axis};
        auto it = std::find(coords_.begin(), coords_.end(), c);
        return it == coords_.end() ? -1 : (it - coords_.begin());
    };
    LinForm r;
    r.setPiConst(f.piConst());
    for (auto& [g, a] : f.coeffs()) {
        std::ptrdiff_t i = coordIndex(g);
        if (i < 0) {
            r.setCoeff(g, r.coeff(g) + a);
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            // sigma(q_i) = sum_j inv(c)_{ji} q_j, sigma(p_i) = sum_j c_{ij} p_j
            std::int64_t entry = (g.kind == Kind::Position) ? useInv[j * n + i] : use[i * n + j];
            if (entry == 0) continue;
            Generator h{coords_[j].slot, coords_[j].axis, g.kind};
            r.setCoeff(h, r.coeff(h) + Coeff(entry) * a);
        }
    }
    return r;
}

LinForm Conjugator::substitute(const LinForm& f) const {
    LinForm r = matrixSubstitute(f, false);
    if (!weyl_.isZero()) {
        // e^{-W} X e^{W} = X - [W, X] = X - i*pi*bracket(W, X)
        Coeff w = bracket(weyl_, r);
        if (!w.isZero()) {
            LinForm shift = LinForm::constant(-(Coeff::i() * w));
            r += shift;
        }
    }
    return r;
}

LinForm Conjugator::substituteInverse(const LinForm& f) const {
    // C g C^{-1}: first undo the Weyl shift, then the matrix.
    LinForm t = f;
    if (!weyl_.isZero()) {
        Coeff w = bracket(weyl_, t);
        if (!w.isZero()) t += LinForm::constant(Coeff::i() * w);
    }
    return matrixSubstitute(t, true);
}

std::pair<Prefactor, Conjugator> Conjugator::compose(const Conjugator& a, const Conjugator& b) {
    Conjugator x = a, y = b;
    auto coords = unionCoords(a.coords_, b.coords_);
    x.extendTo(coords);
    y.extendTo(coords);
    const std::size_t n = coords.size();
    Conjugator r;
    r.coords_ = coords;
    r.mat_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t acc = 0;
            for (std::size_t k = 0; k < n; ++k) acc += x.mat_[i * n + k] * y.mat_[k * n + j];
            r.mat_[i * n + j] = acc;
        }
    // S1 e^{W1} S2 e^{W2} = (S1 S2) e^{sigma_{S2}(W1)} e^{W2}
    LinForm w1 = y.matrixSubstitute(x.weyl_, false);
    Prefactor pre = Prefactor::one();
    if (!w1.isZero() && !y.weyl_.isZero()) {
        Coeff w = bracket(w1, y.weyl_);
        if (!w.isZero()) pre = Prefactor::expPi(Coeff::rat(1, 2) * Coeff::i() * w);
    }
    r.weyl_ = w1 + y.weyl_;
    r.canonicalize();
    return {pre, r};
}

Conjugator Conjugator::inverse() const {
    Conjugator r;
    r.coords_ = coords_;
    r.mat_ = integerInverse(coords_, mat_);
    if (!weyl_.isZero()) {
        // (S e^W)^{-1} = S^{-1} e^{-S W S^{-1}}; S W S^{-1} is the matrix
        // substitution of the inverted conjugator.
        r.weyl_ = r.matrixSubstitute(-weyl_, false);
    }
    r.canonicalize();
    return r;
}

Conjugator Conjugator::transpose() const {
    Conjugator r;
    r.coords_ = coords_;
    r.mat_ = integerInverse(coords_, mat_);
    if (!weyl_.isZero()) r.weyl_ = r.matrixSubstitute(weyl_.transpose(), false);
    r.canonicalize();
    return r;
}

void Conjugator::extendTo(const std::vector<Coord>& coords) {
    if (coords == coords_) return;
    const std::size_t n = coords.size();
    std::vector<std::int64_t> m(n * n, 0);
    auto oldIndex = [&](Coord c) -> std::ptrdiff_t {
        auto it = std::find(coords_.begin(), coords_.end(), c);
        return it == coords_.end() ? -1 : (it - coords_.begin());
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::ptrdiff_t oi = oldIndex(coords[i]);
        for (std::size_t j = 0; j < n; ++j) {
            std::ptrdiff_t oj = oldIndex(coords[j]);
            if (oi >= 0 && oj >= 0)
                m[i * n + j] = mat_[std::size_t(oi) * coords_.size() + std::size_t(oj)];
            else
                m[i * n + j] = (i == j) ? 1 : 0;
        }
    }
    coords_ = coords;
    mat_ = std::move(m);
}

void Conjugator::canonicalize() {
    // drop coordinates on which the substitution is trivial
    const std::size_t n = coords_.size();
    std::vector<bool> keep(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (mat_[i * n + j] != (i == j ? 1 : 0)) keep[i] = keep[j] = true;
        }
    }
    for (auto& [g, c] : weyl_.coeffs()) {
        auto it = std::find(coords_.begin(), coords_.end(), Coord{g.slot, g.axis});
        if (it != coords_.end()) keep[std::size_t(it - coords_.begin())] = true;
    }
    std::vector<Coord> nc;
    std::vector<std::size_t> map;
    for (std::size_t i = 0; i < n; ++i)
        if (keep[i]) {
            nc.push_back(coords_[i]);
            map.push_back(i);
        }
    if (nc.size() == n) return;
    std::vector<std::int64_t> nm(nc.size() * nc.size());
    for (std::size_t i = 0; i < nc.size(); ++i)
        for (std::size_t j = 0; j < nc.size(); ++j)
            nm[i * nc.size() + j] = mat_[map[i] * n + map[j]];
    coords_ = std::move(nc);
    mat_ = std::move(nm);
}

bool Conjugator::operator==(const Conjugator& o) const {
    Conjugator a = *this, b = o;
    auto u = unionCoords(a.coords_, b.coords_);
    a.extendTo(u);
    b.extendTo(u);
    return a.mat_ == b.mat_ && a.weyl_ == b.weyl_;
}

bool Conjugator::operator<(const Conjugator& o) const {
    if (coords_ != o.coords_) return coords_ < o.coords_;
    if (mat_ != o.mat_) return mat_ < o.mat_;
    return weyl_ < o.weyl_;
}

std::string Conjugator::str() const {
    std::ostringstream os;
    os << "S[";
    for (std::size_t i = 0; i < coords_.size(); ++i)
        os << (i ? "," : "") << coords_[i].str();
    os << "](";
    const std::size_t n = coords_.size();
    for (std::size_t i = 0; i < n; ++i) {
        os << (i ? ";" : "");
        for (std::size_t j = 0; j < n; ++j) os << (j ? " " : "") << mat_[i * n + j];
    }
    os << ")";
    if (!weyl_.isZero()) os << "*e^{" << weyl_.str() << "}";
    return os.str();
}

// ---------------------------------------------------------------------------
// DilogFactor

DilogFactor DilogFactor::psi(const LinForm& argument, int power) {
    DilogFactor d;
    d.fn = DilogKind::Psi;
    d.power = power;
    splitPsiArgument(argument, d.x, d.y);
    if (!bracket(d.x, d.y).isZero())
        throw RewriteError("DilogFactor: argument parts do not commute");
    return d;
}

DilogFactor DilogFactor::phi(const LinForm& argument, int power) {
    DilogFactor d;
    d.fn = DilogKind::Phi;
    d.power = power;
    d.x = argument.realPart();
    d.y = argument.imagPart();
    if (!bracket(d.x.positionPart(), d.x.momentumPart()).isZero() || !bracket(d.x, d.y).isZero())
        throw RewriteError("DilogFactor: argument parts do not commute");
    return d;
}

LinForm DilogFactor::argument() const {
    if (fn == DilogKind::Psi) return psiArgument(x, y);
    return x + Coeff::i() * y;
}

DilogFactor DilogFactor::substituted(const Conjugator& c) const {
    LinForm a = c.substitute(argument());
    return fn == DilogKind::Psi ? psi(a, power) : phi(a, power);
}

DilogFactor DilogFactor::transpose() const {
    LinForm a = argument().transpose();
    return fn == DilogKind::Psi ? psi(a, power) : phi(a, power);
}

bool DilogFactor::operator<(const DilogFactor& o) const {
    if (fn != o.fn) return fn < o.fn;
    if (power != o.power) return power < o.power;
    if (x != o.x) return x < o.x;
    return y < o.y;
}

std::string DilogFactor::str() const {
    std::ostringstream os;
    os << (fn == DilogKind::Psi ? "Psi" : "Phi") << "(" << argument().str() << ")";
    if (power != 1) os << "^" << power;
    return os.str();
}

std::string factorStr(const Factor& f) {
    return std::visit([](auto& v) { return v.str(); }, f);
}

// ---------------------------------------------------------------------------
// Words and sums

OperatorWord OperatorWord::weyl(const LinForm& exponent) {
    OperatorWord w;
    w.factors.push_back(WeylF{exponent});
    return w;
}
OperatorWord OperatorWord::conj(Conjugator c) {
    OperatorWord w;
    if (!c.isIdentity()) w.factors.push_back(std::move(c));
    return w;
}
OperatorWord OperatorWord::dilog(DilogFactor d) {
    OperatorWord w;
    w.factors.push_back(std::move(d));
    return w;
}

OperatorWord OperatorWord::operator*(const OperatorWord& o) const {
    OperatorWord r;
    r.pre = pre * o.pre;
    r.factors = factors;
    r.factors.insert(r.factors.end(), o.factors.begin(), o.factors.end());
    return r;
}

OperatorWord OperatorWord::inverse() const {
    OperatorWord r;
    r.pre = pre.inverse();
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        if (auto* c = std::get_if<Conjugator>(&*it))
            r.factors.push_back(c->inverse());
        else if (auto* d = std::get_if<DilogFactor>(&*it))
            r.factors.push_back(d->inverse());
        else if (auto* w = std::get_if<WeylF>(&*it))
            r.factors.push_back(WeylF{-w->exponent});
        else
            throw RewriteError("inverse: unsupported factor");
    }
    return r;
}

OperatorWord OperatorWord::transpose() const {
    OperatorWord r;
    r.pre = pre;  // transpose is complex linear
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        if (auto* c = std::get_if<Conjugator>(&*it)) {
            // (S e^W)^t = e^{W^t} S_{c^{-1}}
            if (!c->weyl().isZero()) {
                r.factors.push_back(WeylF{c->weyl().transpose()});
                std::vector<std::int64_t> mv;
                const auto& cs = c->coords();
                for (std::size_t i = 0; i < cs.size(); ++i)
                    for (std::size_t j = 0; j < cs.size(); ++j) mv.push_back(c->mat(i, j));
                r.factors.push_back(Conjugator::fromMatrix(cs, mv).inverse());
            } else {
                r.factors.push_back(c->transpose());
            }
        } else if (auto* d = std::get_if<DilogFactor>(&*it)) {
            r.factors.push_back(d->transpose());
        } else if (auto* w = std::get_if<WeylF>(&*it)) {
            r.factors.push_back(WeylF{w->exponent.transpose()});
        } else {
            throw RewriteError("transpose: unsupported factor");
        }
    }
    return r;
}

bool OperatorWord::operator<(const OperatorWord& o) const {
    auto countDilogs = [](const OperatorWord& w) {
        std::size_t n = 0;
        for (auto& f : w.factors) n += std::holds_alternative<DilogFactor>(f);
        return n;
    };
    std::size_t da = countDilogs(*this), db = countDilogs(o);
    if (da != db) return da < db;
    auto lastWeyl = [](const OperatorWord& w) -> const LinForm* {
        for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it)
            if (auto* wl = std::get_if<WeylF>(&*it)) return &wl->exponent;
        return nullptr;
    };
    const LinForm *wa = lastWeyl(*this), *wb = lastWeyl(o);
    if (!!wa != !!wb) return !wa;
    if (wa && wb && !(*wa == *wb)) return *wa < *wb;
    if (!(pre == o.pre)) return pre < o.pre;
    if (factors.size() != o.factors.size()) return factors.size() < o.factors.size();
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Factor &fa = factors[i], &fb = o.factors[i];
        if (fa.index() != fb.index()) return fa.index() < fb.index();
        if (fa == fb) continue;
        if (auto* c = std::get_if<Conjugator>(&fa)) return *c < std::get<Conjugator>(fb);
        if (auto* d = std::get_if<DilogFactor>(&fa)) return *d < std::get<DilogFactor>(fb);
        if (auto* w = std::get_if<WeylF>(&fa)) return *w < std::get<WeylF>(fb);
        if (auto* q = std::get_if<QuadF>(&fa)) return *q < std::get<QuadF>(fb);
    }
    return false;
}

std::string OperatorWord::str() const {
    std::ostringstream os;
    os << pre.str();
    for (auto& f : factors) os << " . " << factorStr(f);
    return os.str();
}

OperatorSum OperatorSum::operator+(const OperatorSum& o) const {
    OperatorSum r = *this;
    r.words.insert(r.words.end(), o.words.begin(), o.words.end());
    return r;
}

OperatorSum OperatorSum::operator*(const OperatorSum& o) const {
    OperatorSum r;
    for (auto& a : words)
        for (auto& b : o.words) r.words.push_back(a * b);
    return r;
}

OperatorSum OperatorSum::inverse() const {
    if (words.size() != 1)
        throw RewriteError("OperatorSum: only single words can be inverted");
    return OperatorSum(words[0].inverse());
}

OperatorSum OperatorSum::transpose() const {
    OperatorSum r;
    for (auto& w : words) r.words.push_back(w.transpose());
    return r;
}

std::string OperatorSum::str() const {
    if (words.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < words.size(); ++i)
        os << (i ? "\n  + " : "  ") << words[i].str();
    return os.str();
}

std::pair<Prefactor, WeylF> bchMul(const WeylF& a, const WeylF& b) {
    Coeff w = bracket(a.exponent, b.exponent);
    Prefactor pre = Prefactor::one();
    if (!w.isZero()) pre = Prefactor::expPi(Coeff::rat(1, 2) * Coeff::i() * w);
    return {pre, WeylF{a.exponent + b.exponent}};
}

QuadDecomposition quadExpToConjugator(const LinForm& x, const LinForm& y) {
    if (!bracket(x, y).isZero())
        throw RewriteError("quadExpToConjugator: arguments do not commute");
    LinForm xhat = x, yhat = y;
    Coeff kx = x.piConst(), ky = y.piConst();
    xhat.setPiConst(Coeff());
    yhat.setPiConst(Coeff());
    for (auto& [g, c] : xhat.coeffs())
        if (g.kind != Kind::Position)
            throw RewriteError("quadExpToConjugator: x must be of position type");
    for (auto& [g, c] : yhat.coeffs())
        if (g.kind != Kind::Momentum)
            throw RewriteError("quadExpToConjugator: y must be of momentum type");

    // integer shear I + a^T b on the union coordinates
    auto coords = unionCoords(coordsOf(xhat), coordsOf(yhat));
    const std::size_t n = coords.size();
    auto coeffAt = [&](const LinForm& f, Coord c, Kind k) -> std::int64_t {
        Coeff v = f.coeff(Generator{c.slot, c.axis, k});
        if (v.isZero()) return 0;
        if (!v.isConstant()) throw RewriteError("quadExpToConjugator: non-constant coefficient");
        GaussRat g = v.constantPart();
        if (!g.isReal() || boost::multiprecision::denominator(g.re) != 1)
            throw RewriteError("quadExpToConjugator: non-integer coefficient");
        return static_cast<std::int64_t>(boost::multiprecision::numerator(g.re));
    };
    std::vector<std::int64_t> a(n), b(n), m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = coeffAt(xhat, coords[i], Kind::Position);
        b[i] = coeffAt(yhat, coords[i], Kind::Momentum);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = (i == j ? 1 : 0) + a[i] * b[j];

    QuadDecomposition r;
    r.pre = Prefactor::one();
    r.conj = n == 0 ? Conjugator::identity() : Conjugator::fromMatrix(coords, m);
    // exp((x^ + pi kx)(y^ + pi ky)/(pi i hbar)) splits into the shear, the
    // Weyl factor exp((ky x^ + kx y^)/(i hbar)) and exp(pi kx ky / (i hbar)),
    // all commuting because [x^, y^] = 0.
    LinForm lin = ky * xhat + kx * yhat;
    if (!lin.isZero()) {
        Coeff minusIOverH = -(Coeff::i() * Coeff::hbar(-1));
        r.weyl = WeylF{minusIOverH * lin};
    }
    if (!(kx * ky).isZero()) {
        r.pre = Prefactor::expPi(-(Coeff::i() * kx * ky * Coeff::hbar(-1)));
    }
    return r;
}

}  // namespace qpk
