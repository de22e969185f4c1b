#pragma once

#include "qpk/forms.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qpk {

struct RewriteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scalar prefactor num * c^cPow * exp(pi * expArg), where c is the formal
/// constant of the order-three operator and num an exact integer multiplier.
/// Canonical form keeps the rational-imaginary constant of expArg in [0, 2),
/// folding full turns' signs into num.
struct Prefactor {
    std::int64_t num = 1;
    int cPow = 0;
    Coeff expArg;

    static Prefactor one() { return {}; }
    static Prefactor expPi(Coeff arg) {
        Prefactor p;
        p.expArg = std::move(arg);
        p.canonicalize();
        return p;
    }
    static Prefactor minusOne() { Prefactor p; p.num = -1; return p; }
    static Prefactor formalC(int power) { Prefactor p; p.cPow = power; return p; }

    bool isZero() const { return num == 0; }
    bool isOne() const { return num == 1 && cPow == 0 && expArg.isZero(); }

    void canonicalize();
    Prefactor operator*(const Prefactor& o) const;
    Prefactor inverse() const;

    std::complex<double> eval(double hbarValue, double mValue = 0.0) const;

    bool operator==(const Prefactor& o) const {
        return num == o.num && cPow == o.cPow && expArg == o.expArg;
    }
    bool operator<(const Prefactor& o) const {
        if (num != o.num) return num < o.num;
        if (cPow != o.cPow) return cPow < o.cPow;
        return expArg < o.expArg;
    }

    std::string str() const;
};

/// A coordinate of the underlying configuration space: one axis of one
/// tensor slot.
struct Coord {
    int slot = 1;
    Axis axis = Axis::T;
    auto operator<=>(const Coord&) const = default;
    std::string str() const {
        return std::string(axis == Axis::T ? "t" : "s") + std::to_string(slot);
    }
};

/// Invertible bracket-preserving affine substitution, realized as the operator
/// S_mat . exp(weyl): an integer unimodular coordinate change composed with a
/// Weyl exponential whose conjugation contributes only additive constants.
class Conjugator {
public:
    Conjugator() = default;

    /// S_c for an integer matrix of determinant +-1 acting on the listed
    /// coordinates, (S_c f)(a) = f(a c).
    static Conjugator fromMatrix(std::vector<Coord> coords, std::vector<std::int64_t> rowMajor);
    /// exp(exponent) treated as a substitution (a real Weyl conjugator).
    static Conjugator fromWeyl(const LinForm& exponent);
    static Conjugator identity() { return Conjugator(); }
    /// Block permutation of whole slots: slot j's coordinates map to sigma(j).
    static Conjugator slotPermutation(const std::vector<std::pair<int, int>>& mapping);

    const std::vector<Coord>& coords() const { return coords_; }
    std::int64_t mat(std::size_t r, std::size_t c) const { return mat_[r * coords_.size() + c]; }
    const LinForm& weyl() const { return weyl_; }

    bool isIdentity() const;
    bool isPureMatrix() const { return weyl_.isZero(); }
    std::int64_t determinant() const;

    /// sigma(g) = C^{-1} g C, extended to affine combinations.
    LinForm substitute(const LinForm& f) const;
    /// sigma^{-1}(g) = C g C^{-1}.
    LinForm substituteInverse(const LinForm& f) const;

    /// Operator product; the BCH scalar from merging the Weyl tails is
    /// returned alongside.
    static std::pair<Prefactor, Conjugator> compose(const Conjugator& a, const Conjugator& b);
    Conjugator inverse() const;
    /// (S_c exp(W))^t with respect to the bilinear pairing: q -> q, p -> -p.
    /// Returned as inverse-matrix conjugator and transposed Weyl tail.
    Conjugator transpose() const;

    void extendTo(const std::vector<Coord>& coords);
    void canonicalize();

    bool operator==(const Conjugator& o) const;
    bool operator<(const Conjugator& o) const;

    std::string str() const;

private:
    LinForm matrixSubstitute(const LinForm& f, bool inverse) const;
    std::vector<std::int64_t> invMatrix() const;

    std::vector<Coord> coords_;              // sorted
    std::vector<std::int64_t> mat_;          // row-major, coords_.size()^2
    LinForm weyl_;                           // constant-free, support within coords_
};

enum class DilogKind : unsigned char {
    Psi,  // modular double compact: argument x + i*hbar*y
    Phi,  // non-compact: argument x + i*y
};

/// Functional-calculus factor F(x, y)^power where F is one of the quantum
/// dilogarithms. The (x, y) split is the canonical real/imaginary part
/// decomposition of the argument; it is stored, the argument is derived.
struct DilogFactor {
    DilogKind fn = DilogKind::Psi;
    LinForm x;
    LinForm y;
    int power = 1;

    static DilogFactor psi(const LinForm& argument, int power = 1);
    static DilogFactor phi(const LinForm& argument, int power = 1);

    LinForm argument() const;
    DilogFactor substituted(const Conjugator& c) const;
    DilogFactor inverse() const { DilogFactor d = *this; d.power = -power; return d; }
    DilogFactor transpose() const;

    bool operator==(const DilogFactor& o) const {
        return fn == o.fn && power == o.power && x == o.x && y == o.y;
    }
    bool operator<(const DilogFactor& o) const;

    std::string str() const;
};

struct WeylF {
    LinForm exponent;
    bool operator==(const WeylF& o) const { return exponent == o.exponent; }
    bool operator<(const WeylF& o) const { return exponent < o.exponent; }
    std::string str() const { return "e^{" + exponent.str() + "}"; }
};

/// Script-internal: exp(x*y/(pi*i*hbar)) for commuting x (position type) and
/// y (momentum type); converted to a Conjugator by quad-to-saso.
struct QuadF {
    LinForm x;
    LinForm y;
    bool operator==(const QuadF& o) const { return x == o.x && y == o.y; }
    bool operator<(const QuadF& o) const { return x != o.x ? x < o.x : y < o.y; }
    std::string str() const { return "exp((" + x.str() + ")(" + y.str() + ")/(pi i h))"; }
};

using Factor = std::variant<Conjugator, DilogFactor, WeylF, QuadF>;

std::string factorStr(const Factor& f);

/// An ordered product of factors with a scalar prefactor. Normal form (as
/// produced by OperatorSum::normalized): one leading Conjugator, then
/// DilogFactors, then a single WeylF.
struct OperatorWord {
    Prefactor pre;
    std::vector<Factor> factors;

    static OperatorWord scalar(Prefactor p) { return {std::move(p), {}}; }
    static OperatorWord weyl(const LinForm& exponent);
    static OperatorWord conj(Conjugator c);
    static OperatorWord dilog(DilogFactor d);

    OperatorWord operator*(const OperatorWord& o) const;
    OperatorWord inverse() const;
    OperatorWord transpose() const;

    bool operator==(const OperatorWord& o) const {
        return pre == o.pre && factors == o.factors;
    }
    bool operator<(const OperatorWord& o) const;

    std::string str() const;
};

struct OperatorSum {
    std::vector<OperatorWord> words;

    OperatorSum() = default;
    /*implicit*/ OperatorSum(OperatorWord w) { words.push_back(std::move(w)); }

    static OperatorSum zero() { return {}; }
    static OperatorSum identity() { return OperatorSum(OperatorWord::scalar(Prefactor::one())); }

    OperatorSum operator+(const OperatorSum& o) const;
    OperatorSum operator*(const OperatorSum& o) const;
    OperatorSum inverse() const;  // words.size() must be 1
    OperatorSum transpose() const;

    bool isZero() const { return words.empty(); }

    std::string str() const;
};

/// Baker-Campbell-Hausdorff product of two Weyl exponentials with central
/// commutator: e^A e^B = e^{[A,B]/2} e^{A+B}.
std::pair<Prefactor, WeylF> bchMul(const WeylF& a, const WeylF& b);

/// The special linear operator attached to exp(x*y/(pi*i*hbar)) for commuting
/// x (positions + constant) and y (momenta + constant): integer shear plus a
/// split-off Weyl exponential and scalar when constants are present.
struct QuadDecomposition {
    Prefactor pre;
    Conjugator conj;
    std::optional<WeylF> weyl;
};
QuadDecomposition quadExpToConjugator(const LinForm& x, const LinForm& y);

/// Canonicalization: conjugators pushed left (composed into one), Weyl
/// exponentials pushed right across dilog factors via the difference-equation
/// rules, adjacent mutually-inverse dilogs cancelled, Weyls BCH-merged, words
/// sorted and combined. Throws RewriteError when a required crossing has no
/// polynomial rule.
OperatorSum normalized(const OperatorSum& s);

bool equalNormalized(const OperatorSum& a, const OperatorSum& b);

/// Single rewrite steps used by proof scripts (indices address factors of
/// every word in the sum; see script.hpp).
OperatorSum moveFactorLeft(const OperatorSum& s, std::size_t factorIndex);
OperatorSum applyPentagon(const OperatorSum& s, std::size_t factorIndex, bool expand);
OperatorSum applyInvolutivity(const OperatorSum& s, std::size_t factorIndex);
OperatorSum applyQuadToSaso(const OperatorSum& s, std::size_t factorIndex);
OperatorSum applyBch(const OperatorSum& s, std::size_t factorIndex);

/// Difference-equation rewrite of  d . e^L  into  e^L (1 + mu e^{..}) d,
/// validating the declared epsilon and family against the bracket pattern.
OperatorSum rewriteDilogWeyl(const DilogFactor& d, const LinForm& weylExp, int eps, bool vee);

/// Models application to the canonical element pairing slots a and b:
/// the common non-Weyl tail of both sums is removed, then q_{.,a} = q_{.,b},
/// p_{.,a} = -p_{.,b} is substituted into the remaining Weyl exponents,
/// one exponential at a time.
void deltaReduce(OperatorSum& lhs, OperatorSum& rhs, int slotA, int slotB);

}  // namespace qpk
