#pragma once

#include "qpk/coeff.hpp"

#include <map>
#include <string>
#include <vector>

namespace qpk {

enum class Axis : unsigned char { T = 0, S = 1 };
enum class Kind : unsigned char { Position = 0, Momentum = 1 };

/// One canonical generator q_{t_j}, q_{s_j}, p_{t_j} or p_{s_j}.
struct Generator {
    int slot = 1;
    Axis axis = Axis::T;
    Kind kind = Kind::Position;

    auto operator<=>(const Generator&) const = default;

    std::string str() const;
};

inline Generator qt(int slot) { return {slot, Axis::T, Kind::Position}; }
inline Generator qs(int slot) { return {slot, Axis::S, Kind::Position}; }
inline Generator pt(int slot) { return {slot, Axis::T, Kind::Momentum}; }
inline Generator ps(int slot) { return {slot, Axis::S, Kind::Momentum}; }

/// A finite linear combination of generators plus an additive constant
/// pi*piConst. Coefficients are exact Coeff scalars; a form with all-real
/// coefficients models a self-adjoint combination, a general one models the
/// exponent of a Weyl factor (e.g. P = q_t + i p_s).
class LinForm {
public:
    LinForm() = default;
    /*implicit*/ LinForm(const Generator& g) { coeffs_[g] = Coeff(1); }

    static LinForm constant(Coeff piMultiple) {
        LinForm f;
        f.piConst_ = std::move(piMultiple);
        return f;
    }

    const std::map<Generator, Coeff>& coeffs() const { return coeffs_; }
    const Coeff& piConst() const { return piConst_; }

    Coeff coeff(const Generator& g) const {
        auto it = coeffs_.find(g);
        return it == coeffs_.end() ? Coeff() : it->second;
    }
    void setCoeff(const Generator& g, Coeff c) {
        if (c.isZero())
            coeffs_.erase(g);
        else
            coeffs_[g] = std::move(c);
    }
    void setPiConst(Coeff c) { piConst_ = std::move(c); }

    bool isZero() const { return coeffs_.empty() && piConst_.isZero(); }
    bool isConstant() const { return coeffs_.empty(); }
    bool isReal() const {
        if (!piConst_.isReal()) return false;
        for (auto& [g, c] : coeffs_)
            if (!c.isReal()) return false;
        return true;
    }
    /// True when every generator coefficient is real (constants may be complex).
    bool hasRealGeneratorPart() const {
        for (auto& [g, c] : coeffs_)
            if (!c.isReal()) return false;
        return true;
    }

    LinForm operator-() const;
    LinForm operator+(const LinForm& o) const;
    LinForm operator-(const LinForm& o) const;
    LinForm& operator+=(const LinForm& o) { *this = *this + o; return *this; }
    LinForm& operator-=(const LinForm& o) { *this = *this - o; return *this; }

    friend LinForm operator*(const Coeff& s, const LinForm& f);

    /// Coefficient-wise real/imag split; generators are a self-adjoint basis,
    /// so f = realPart() + i*imagPart() is the canonical decomposition.
    LinForm realPart() const;
    LinForm imagPart() const;

    /// Restrict to position (resp. momentum) generators; constant goes with
    /// the position part.
    LinForm positionPart() const;
    LinForm momentumPart() const;

    LinForm conj() const;

    /// q -> q, p -> -p on generators; complex-linear on coefficients.
    LinForm transpose() const;

    bool operator==(const LinForm& o) const {
        return piConst_ == o.piConst_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const LinForm& o) const { return !(*this == o); }
    bool operator<(const LinForm& o) const;

    std::vector<int> slots() const;

    std::string str() const;

private:
    std::map<Generator, Coeff> coeffs_;
    Coeff piConst_;  // additive constant = pi * piConst_
};

inline LinForm operator+(const Generator& a, const Generator& b) {
    return LinForm(a) + LinForm(b);
}
inline LinForm operator-(const Generator& a, const Generator& b) {
    return LinForm(a) - LinForm(b);
}

/// Heisenberg pairing: [u, v] = i*pi*bracket(u, v) * id, extended bilinearly
/// over complex coefficients from [p_j, q_k] = pi*i*hbar*delta_{jk}.
Coeff bracket(const LinForm& u, const LinForm& v);

/// The exponent of the modular-double dilogarithm convention: for a stored
/// (x, y) pair the operator argument is x + i*hbar*y.
LinForm psiArgument(const LinForm& x, const LinForm& y);

/// Canonical split of a complex form A into (x, y) with A = x + i*hbar*y.
void splitPsiArgument(const LinForm& a, LinForm& x, LinForm& y);

// P_j = q_t + i p_s, Q_j = q_s - i p_t and their adjoints (exponents of the
// Weyl generators of the representation).
LinForm formP(int slot);
LinForm formQ(int slot);
LinForm formPstar(int slot);
LinForm formQstar(int slot);

// Self-adjoint variants used by the negative-cosmological-constant algebra:
// P = q_t + p_s, Q = q_s - p_t, and the tilde copies with flipped momentum.
LinForm formPneg(int slot);
LinForm formQneg(int slot);
LinForm formPnegTilde(int slot);
LinForm formQnegTilde(int slot);

}  // namespace qpk
