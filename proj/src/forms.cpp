#include "qpk/forms.hpp"

#include <algorithm>
#include <sstream>

namespace qpk {

std::string Generator::str() const {
    std::string s = (kind == Kind::Position) ? "q" : "p";
    s += (axis == Axis::T) ? "t" : "s";
    s += std::to_string(slot);
    return s;
}

LinForm LinForm::operator-() const {
    LinForm r;
    for (auto& [g, c] : coeffs_) r.coeffs_[g] = -c;
    r.piConst_ = -piConst_;
    return r;
}

LinForm LinForm::operator+(const LinForm& o) const {
    LinForm r = *this;
    for (auto& [g, c] : o.coeffs_) r.setCoeff(g, r.coeff(g) + c);
    r.piConst_ += o.piConst_;
    return r;
}

LinForm LinForm::operator-(const LinForm& o) const { return *this + (-o); }

LinForm operator*(const Coeff& s, const LinForm& f) {
    LinForm r;
    if (s.isZero()) return r;
    for (auto& [g, c] : f.coeffs_) r.setCoeff(g, s * c);
    r.piConst_ = s * f.piConst_;
    return r;
}

LinForm LinForm::realPart() const {
    LinForm r;
    for (auto& [g, c] : coeffs_) r.setCoeff(g, c.realPart());
    r.piConst_ = piConst_.realPart();
    return r;
}

LinForm LinForm::imagPart() const {
    LinForm r;
    for (auto& [g, c] : coeffs_) r.setCoeff(g, c.imagPart());
    r.piConst_ = piConst_.imagPart();
    return r;
}

LinForm LinForm::positionPart() const {
    LinForm r;
    for (auto& [g, c] : coeffs_)
        if (g.kind == Kind::Position) r.setCoeff(g, c);
    r.piConst_ = piConst_;
    return r;
}

LinForm LinForm::momentumPart() const {
    LinForm r;
    for (auto& [g, c] : coeffs_)
        if (g.kind == Kind::Momentum) r.setCoeff(g, c);
    return r;
}

LinForm LinForm::conj() const {
    LinForm r;
    for (auto& [g, c] : coeffs_) r.setCoeff(g, c.conj());
    r.piConst_ = piConst_.conj();
    return r;
}

LinForm LinForm::transpose() const {
    LinForm r;
    for (auto& [g, c] : coeffs_)
        r.setCoeff(g, g.kind == Kind::Momentum ? -c : c);
    r.piConst_ = piConst_;
    return r;
}

bool LinForm::operator<(const LinForm& o) const {
    if (coeffs_.size() != o.coeffs_.size()) return coeffs_.size() < o.coeffs_.size();
    auto a = coeffs_.begin(), b = o.coeffs_.begin();
    for (; a != coeffs_.end(); ++a, ++b) {
        if (a->first != b->first) return a->first < b->first;
        if (a->second != b->second) return a->second < b->second;
    }
    return piConst_ < o.piConst_;
}

std::vector<int> LinForm::slots() const {
    std::vector<int> r;
    for (auto& [g, c] : coeffs_)
        if (std::find(r.begin(), r.end(), g.slot) == r.end()) r.push_back(g.slot);
    std::sort(r.begin(), r.end());
    return r;
}

std::string LinForm::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [g, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        if (c.isOne())
            os << g.str();
        else
            os << "(" << c.str() << ")" << g.str();
    }
    if (!piConst_.isZero()) {
        if (!first) os << " + ";
        os << "pi*(" << piConst_.str() << ")";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

Coeff bracket(const LinForm& u, const LinForm& v) {
    // [p, q] on a matching (slot, axis) contributes +hbar per unit
    // coefficients, [q, p] contributes -hbar; everything else vanishes.
    Coeff w;
    for (auto& [g, a] : u.coeffs()) {
        Generator partner = g;
        partner.kind = (g.kind == Kind::Position) ? Kind::Momentum : Kind::Position;
        auto it = v.coeffs().find(partner);
        if (it == v.coeffs().end()) continue;
        Coeff prod = a * it->second * Coeff::hbar();
        if (g.kind == Kind::Momentum)
            w += prod;
        else
            w -= prod;
    }
    return w;
}

LinForm psiArgument(const LinForm& x, const LinForm& y) {
    return x + (Coeff::i() * Coeff::hbar()) * y;
}

void splitPsiArgument(const LinForm& a, LinForm& x, LinForm& y) {
    x = a.realPart();
    y = Coeff::hbar(-1) * a.imagPart();
}

LinForm formP(int slot) { return LinForm(qt(slot)) + Coeff::i() * LinForm(ps(slot)); }
LinForm formQ(int slot) { return LinForm(qs(slot)) - Coeff::i() * LinForm(pt(slot)); }
LinForm formPstar(int slot) { return LinForm(qt(slot)) - Coeff::i() * LinForm(ps(slot)); }
LinForm formQstar(int slot) { return LinForm(qs(slot)) + Coeff::i() * LinForm(pt(slot)); }

LinForm formPneg(int slot) { return LinForm(qt(slot)) + LinForm(ps(slot)); }
LinForm formQneg(int slot) { return LinForm(qs(slot)) - LinForm(pt(slot)); }
LinForm formPnegTilde(int slot) { return LinForm(qt(slot)) - LinForm(ps(slot)); }
LinForm formQnegTilde(int slot) { return LinForm(qs(slot)) + LinForm(pt(slot)); }

}  // namespace qpk
