#include "qpk/coeff.hpp"

#include <cmath>
#include <sstream>

namespace qpk {

std::string GaussRat::str() const {
    std::ostringstream os;
    if (im == 0) {
        os << re;
    } else if (re == 0) {
        os << im << "*i";
    } else {
        os << "(" << re << (im < 0 ? "" : "+") << im << "*i)";
    }
    return os.str();
}

std::complex<double> Coeff::eval(double hbarValue, double mValue) const {
    std::complex<double> acc{0.0, 0.0};
    for (auto& [k, c] : terms_)
        acc += c.toComplex() * std::pow(hbarValue, k.first) * std::pow(mValue, k.second);
    return acc;
}

std::string Coeff::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        if (k.first != 0) os << "*h^" << k.first;
        if (k.second != 0) os << "*m^" << k.second;
    }
    return os.str();
}

}  // namespace qpk
