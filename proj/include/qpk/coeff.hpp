#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace qpk {

using Rational = boost::multiprecision::cpp_rational;

/// Element of Q(i): a + b*i with exact rational a, b.
struct GaussRat {
    Rational re;
    Rational im;

    GaussRat() = default;
    GaussRat(long n) : re(n) {}
    GaussRat(Rational r) : re(std::move(r)) {}
    GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat i() { return GaussRat(Rational(0), Rational(1)); }

    bool isZero() const { return re == 0 && im == 0; }
    bool isReal() const { return im == 0; }

    GaussRat conj() const { return GaussRat(re, -im); }

    GaussRat operator-() const { return GaussRat(-re, -im); }
    GaussRat operator+(const GaussRat& o) const { return GaussRat(re + o.re, im + o.im); }
    GaussRat operator-(const GaussRat& o) const { return GaussRat(re - o.re, im - o.im); }
    GaussRat operator*(const GaussRat& o) const {
        return GaussRat(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GaussRat operator/(const GaussRat& o) const {
        Rational n = o.re * o.re + o.im * o.im;
        if (n == 0) throw std::domain_error("GaussRat: division by zero");
        return GaussRat((re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n);
    }

    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }
    // Total order for canonical term sorting, not a numeric order.
    bool operator<(const GaussRat& o) const {
        if (re != o.re) return re < o.re;
        return im < o.im;
    }

    std::complex<double> toComplex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    std::string str() const;
};

/// Exact scalar of the engine: a Laurent polynomial in the formal symbol
/// hbar (integer exponents) and polynomial in the formal symbol m
/// (non-negative exponents), with coefficients in Q(i). Every coefficient
/// appearing in the operator calculus lives here; division is supported
/// exactly when the divisor is a single term whose m-degree divides out.
class Coeff {
public:
    // key = (hbar exponent, m exponent)
    using Key = std::pair<int, int>;
    using Terms = std::map<Key, GaussRat>;

    Coeff() = default;
    Coeff(long n) { set({0, 0}, GaussRat(n)); }
    Coeff(GaussRat c) { set({0, 0}, std::move(c)); }

    static Coeff term(GaussRat c, int hbarExp, int mExp) {
        Coeff r;
        r.set({hbarExp, mExp}, std::move(c));
        return r;
    }
    static Coeff hbar(int power = 1) { return term(GaussRat(1), power, 0); }
    static Coeff m() { return term(GaussRat(1), 0, 1); }
    static Coeff i() { return Coeff(GaussRat::i()); }
    static Coeff rat(long num, long den) { return Coeff(GaussRat(Rational(num, den))); }

    const Terms& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    bool isOne() const { return *this == Coeff(1); }
    bool isReal() const {
        for (auto& [k, c] : terms_)
            if (!c.isReal()) return false;
        return true;
    }
    bool isConstant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
    }
    GaussRat constantPart() const {
        auto it = terms_.find({0, 0});
        return it == terms_.end() ? GaussRat() : it->second;
    }

    Coeff operator-() const {
        Coeff r;
        for (auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    Coeff& operator+=(const Coeff& o) {
        for (auto& [k, c] : o.terms_) set(k, get(k) + c);
        return *this;
    }
    Coeff& operator-=(const Coeff& o) {
        for (auto& [k, c] : o.terms_) set(k, get(k) - c);
        return *this;
    }
    Coeff operator+(const Coeff& o) const { Coeff r = *this; r += o; return r; }
    Coeff operator-(const Coeff& o) const { Coeff r = *this; r -= o; return r; }
    Coeff operator*(const Coeff& o) const {
        Coeff r;
        for (auto& [k1, c1] : terms_)
            for (auto& [k2, c2] : o.terms_) {
                Key k{k1.first + k2.first, k1.second + k2.second};
                r.set(k, r.get(k) + c1 * c2);
            }
        return r;
    }
    Coeff& operator*=(const Coeff& o) { *this = *this * o; return *this; }

    /// Exact division; the divisor must be a single term, and the quotient's
    /// m-exponents must stay non-negative.
    Coeff operator/(const Coeff& o) const {
        if (o.terms_.size() != 1)
            throw std::domain_error("Coeff: division restricted to single-term divisors");
        auto [dk, dc] = *o.terms_.begin();
        Coeff r;
        for (auto& [k, c] : terms_) {
            Key q{k.first - dk.first, k.second - dk.second};
            if (q.second < 0)
                throw std::domain_error("Coeff: division would create a negative m power");
            r.set(q, c / dc);
        }
        return r;
    }

    Coeff conj() const {
        Coeff r;
        for (auto& [k, c] : terms_) r.terms_[k] = c.conj();
        return r;
    }
    Coeff realPart() const {
        Coeff r;
        for (auto& [k, c] : terms_) r.set(k, GaussRat(c.re));
        return r;
    }
    Coeff imagPart() const {
        Coeff r;
        for (auto& [k, c] : terms_) r.set(k, GaussRat(c.im));
        return r;
    }

    bool operator==(const Coeff& o) const { return terms_ == o.terms_; }
    bool operator!=(const Coeff& o) const { return terms_ != o.terms_; }
    bool operator<(const Coeff& o) const {
        auto a = terms_.begin(), b = o.terms_.begin();
        for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
            if (a->first != b->first) return a->first < b->first;
            if (a->second != b->second) return a->second < b->second;
        }
        return b != o.terms_.end();
    }

    std::complex<double> eval(double hbarValue, double mValue = 0.0) const;

    std::string str() const;

private:
    GaussRat get(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? GaussRat() : it->second;
    }
    void set(const Key& k, GaussRat v) {
        if (v.isZero())
            terms_.erase(k);
        else
            terms_[k] = std::move(v);
    }

    Terms terms_;
};

inline Coeff operator*(long n, const Coeff& c) { return Coeff(n) * c; }

}  // namespace qpk
