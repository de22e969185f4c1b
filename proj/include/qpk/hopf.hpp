#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qpk::hopf {

using BigInt = boost::multiprecision::cpp_int;

/// Z[q^{+-1}, (qv)^{+-1}]: exact Laurent coefficients of the quantum algebra.
struct QPoly {
    // key = (q exponent, qv exponent)
    std::map<std::pair<int, int>, BigInt> terms;

    QPoly() = default;
    QPoly(long n) {
        if (n != 0) terms[{0, 0}] = n;
    }
    static QPoly qPower(int a, int b = 0) {
        QPoly p;
        p.terms[{a, b}] = 1;
        return p;
    }
    bool isZero() const { return terms.empty(); }
    bool isOne() const;
    QPoly operator-() const;
    QPoly operator+(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    bool operator==(const QPoly& o) const { return terms == o.terms; }
    std::string str() const;
};

enum class AlgebraKind {
    PseudoKahler,     // generators Z1, Z2 and their stars / modular partners
    SymplecticDouble  // generators X, Y, Xt, Yt and modular partners
};

/// Generator index within the fixed canonical order: plain before starred,
/// plain before vee, index 1 before index 2.
///   PseudoKahler: 0=Z1 1=Z2 2=Z1* 3=Z2* 4=Z1v 5=Z2v 6=(Z1v)* 7=(Z2v)*
///   SymplecticDouble: 0=X 1=Y 2=Xt 3=Yt 4=Xv 5=Yv 6=Xtv 7=Ytv
using Gen = int;

struct Monomial {
    // (generator, exponent) pairs sorted by generator, exponents nonzero
    std::vector<std::pair<Gen, int>> factors;
    auto operator<=>(const Monomial&) const = default;
    bool empty() const { return factors.empty(); }
};

/// Noncommutative Laurent polynomial in normal-ordered form.
class NcPoly {
public:
    NcPoly() = default;
    /*implicit*/ NcPoly(long n) {
        if (n != 0) terms_[Monomial{}] = QPoly(n);
    }

    static NcPoly zero() { return {}; }
    static NcPoly gen(AlgebraKind k, Gen g, int power = 1);
    /// Normal-orders an arbitrary generator word, tracking exchange constants.
    static NcPoly fromWord(AlgebraKind k, QPoly coeff, const std::vector<std::pair<Gen, int>>& word);

    const std::map<Monomial, QPoly>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }

    NcPoly operator+(const NcPoly& o) const;
    NcPoly operator-() const;
    NcPoly operator-(const NcPoly& o) const { return *this + (-o); }
    NcPoly mul(AlgebraKind k, const NcPoly& o) const;
    bool operator==(const NcPoly& o) const { return terms_ == o.terms_; }

    std::string str(AlgebraKind k) const;

    void add(Monomial m, QPoly c);

private:
    std::map<Monomial, QPoly> terms_;
};

/// Rank-n tensors over the algebra with componentwise multiplication.
class NcTensor {
public:
    explicit NcTensor(std::size_t rank = 1) : rank_(rank) {}

    static NcTensor scalar(std::size_t rank, QPoly c);
    static NcTensor simple(AlgebraKind k, QPoly c, std::vector<Monomial> legs);

    std::size_t rank() const { return rank_; }
    const std::map<std::vector<Monomial>, QPoly>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }

    NcTensor operator+(const NcTensor& o) const;
    NcTensor operator-() const;
    NcTensor mul(AlgebraKind k, const NcTensor& o) const;
    bool operator==(const NcTensor& o) const {
        return rank_ == o.rank_ && terms_ == o.terms_;
    }

    void add(AlgebraKind k, QPoly c, const std::vector<Monomial>& legs);

private:
    std::size_t rank_;
    std::map<std::vector<Monomial>, QPoly> terms_;
};

/// The Hopf *-algebra structure of the modular double quantum plane variants:
/// generator tables for the coproduct, counit, antipode and star, extended
/// (anti)multiplicatively.
class HopfAlgebra {
public:
    explicit HopfAlgebra(AlgebraKind kind) : kind_(kind) {}

    AlgebraKind kind() const { return kind_; }
    static int generatorCount() { return 8; }
    std::string genName(Gen g) const;

    NcPoly normalOrder(QPoly coeff, const std::vector<std::pair<Gen, int>>& word) const {
        return NcPoly::fromWord(kind_, std::move(coeff), word);
    }

    /// Delta on a normal-ordered polynomial (rank-2 tensor). Twisted
    /// generators must occur with non-negative exponents.
    NcTensor coproduct(const NcPoly& p) const;
    /// (Delta x 1...1) iterated to the given rank.
    NcTensor coproductIter(const NcPoly& p, std::size_t rank, bool leftFirst) const;
    QPoly counit(const NcPoly& p) const;
    NcPoly antipode(const NcPoly& p, bool inverse = false) const;
    NcPoly star(const NcPoly& p) const;

    /// counit applied to one tensor leg.
    NcTensor counitLeg(const NcTensor& t, std::size_t leg) const;
    NcPoly multiplyLegs(const NcTensor& t) const;  // m(a (x) b (x) ...)
    NcTensor antipodeLeg(const NcTensor& t, std::size_t leg, bool inverse = false) const;

private:
    NcTensor coproductMonomial(const Monomial& m) const;
    NcPoly antipodeMonomial(const Monomial& m, bool inverse) const;

    AlgebraKind kind_;
};

}  // namespace qpk::hopf
