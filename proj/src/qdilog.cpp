#include "qpk/qdilog.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace qpk::qdilog {

namespace {

constexpr double kPi = 3.14159265358979323846;

template <class Real>
struct PsiProduct {
    std::complex<Real> value{Real(1), Real(0)};
    Real tailBound = 0;
};

// shared core of psiQ and the tail estimate
template <class Real>
PsiProduct<Real> psiProduct(std::complex<Real> q, std::complex<Real> z, Real poleEps) {
    using C = std::complex<Real>;
    const Real aq = std::abs(q);
    if (!(aq < Real(1))) throw QdilogError("psiQ: |q| must be < 1");
    PsiProduct<Real> out;
    if (z == C(0)) return out;
    const Real az = std::abs(z);
    // tail of log psi after N factors is ~ |q^{2N+1} z|/(1-|q|^2): cut once the
    // next factor is indistinguishable from 1 (absolute in |w z|, so large
    // arguments keep all their significant factors)
    const Real cutoff = std::numeric_limits<Real>::epsilon() / Real(8);
    C w = q;  // q^{2n+1}
    const C q2 = q * q;
    for (int n = 0; n < 200000; ++n) {
        C f = C(1) + w * z;
        if (std::abs(f) < poleEps * (Real(1) + std::abs(w * z)))
            throw PoleProximityError("psiQ: argument within poleEps of a pole");
        out.value /= f;
        w *= q2;
        if (std::abs(w) * az < cutoff) {
            // geometric tail: |log prod_{k>n}| <= |w z| / (1 - |q|^2)
            out.tailBound = static_cast<Real>(std::abs(w) * az / (Real(1) - aq * aq));
            return out;
        }
    }
    throw NonConvergenceError("psiQ: product did not converge (|q| too close to 1)");
}

using Gk = boost::math::quadrature::gauss_kronrod<double, 31>;

struct ContourIntegral {
    std::complex<double> value;
    double error;
};

// integral over the detoured, rotated real-line contour of f(p) dp
template <class F>
ContourIntegral detouredLine(F f, double rotationAngle, double r, double R, double tol) {
    using C = std::complex<double>;
    C dir = std::polar(1.0, rotationAngle);
    double e1 = 0, e2 = 0, e3 = 0;
    // ray from -R e^{i phi} to -r e^{i phi}
    C left = Gk::integrate([&](double s) { return f(-dir * s) * (-dir); }, R, r, 15, tol, &e1);
    // half circle above the (rotated) origin: theta from phi+pi to phi
    C arc = Gk::integrate(
        [&](double th) {
            C p = std::polar(r, th);
            return f(p) * C(0, 1) * p;
        },
        rotationAngle + kPi, rotationAngle, 15, tol, &e2);
    // ray from r e^{i phi} to R e^{i phi}
    C right = Gk::integrate([&](double s) { return f(dir * s) * dir; }, r, R, 15, tol, &e3);
    return {left + arc + right, e1 + e2 + e3};
}

}  // namespace

template <class Real>
std::complex<Real> psiQ(std::complex<Real> q, std::complex<Real> z, Real poleEps) {
    return psiProduct(q, z, poleEps).value;
}

template std::complex<double> psiQ<double>(std::complex<double>, std::complex<double>, double);
template std::complex<long double> psiQ<long double>(std::complex<long double>,
                                                     std::complex<long double>, long double);

std::complex<double> phiHbar(double hbar, std::complex<double> z, const ContourSpec& spec) {
    using C = std::complex<double>;
    if (hbar <= 0) throw QdilogError("phiHbar: hbar must be positive");
    const double strip = kPi * (1.0 + hbar);
    // The integral converges on |Im z| < pi(1+hbar); outside, continue
    // meromorphically with Phi(z + 2 pi i h) = (1 + e^{pi i h} e^z) Phi(z).
    const double safe = 0.6 * strip;
    if (std::abs(z.imag()) >= safe) {
        int steps = 0;
        C gain(1.0, 0.0);
        while (z.imag() >= safe) {
            z -= C(0, 2 * kPi * hbar);
            gain *= 1.0 + std::exp(C(0, kPi * hbar)) * std::exp(z);
            if (++steps > 256) throw StripError("phiHbar: Im z too large to continue");
        }
        while (z.imag() <= -safe) {
            C denom = 1.0 + std::exp(C(0, kPi * hbar)) * std::exp(z);
            if (std::abs(denom) < 1e-13) throw PoleProximityError("phiHbar: near a pole");
            gain /= denom;
            z += C(0, 2 * kPi * hbar);
            if (++steps > 256) throw StripError("phiHbar: Im z too negative to continue");
        }
        return gain * phiHbar(hbar, z, spec);
    }
    const double decay = strip - std::abs(z.imag());
    double R = spec.truncationRadius > 0
                   ? spec.truncationRadius
                   : std::max(8.0, (40.0 + std::abs(z.real())) / decay);
    double r = std::min(spec.detourRadius, 0.45 / std::max(1.0, hbar));
    auto f = [&](C p) {
        return std::exp(C(0, -1) * p * z) / (std::sinh(kPi * p) * std::sinh(kPi * hbar * p) * p);
    };
    auto I = detouredLine(f, 0.0, r, R, spec.quadratureTolerance);
    return std::exp(-0.25 * I.value);
}

std::complex<double> phiMdc(double hbar, int eps, std::complex<double> z, MdcMethod method,
                            const ContourSpec& spec) {
    using C = std::complex<double>;
    if (hbar <= 0) throw QdilogError("phiMdc: hbar must be positive");
    if (eps != 1 && eps != -1) throw QdilogError("phiMdc: eps must be +-1");
    if (method == MdcMethod::Ratio) {
        if (eps == -1) {
            // Phi^{-i h}(z) = conj(Phi^{i h}(conj z))^{-1}
            return 1.0 / std::conj(phiMdc(hbar, +1, std::conj(z), method, spec));
        }
        C a = std::exp(z);
        C b = std::exp(z / C(0, hbar));
        if (std::abs(z.real()) > 600.0 || std::abs(z.imag()) / hbar > 600.0)
            throw NonConvergenceError("phiMdc: argument too large for the product form");
        C num = psiQ<double>(C(std::exp(-kPi * hbar)), a);
        C den = psiQ<double>(C(std::exp(-kPi / hbar)), b);
        return num / den;
    }
    // contour form: rotate the detoured line so it avoids both pole rays
    double angle = spec.rotationAngle != 0.0 ? spec.rotationAngle : -eps * kPi / 4.0;
    double R = spec.truncationRadius > 0 ? spec.truncationRadius : 0.0;
    if (R == 0.0) {
        // |e^{-ipz}| along p = e^{i angle} s grows like e^{|z||p|}; the sinh
        // pair decays like e^{-pi(1+hbar)|cos|...|p|}. Use the worst-case rate.
        double c = std::abs(std::cos(angle)), s = std::abs(std::sin(angle));
        double rate = kPi * (c + hbar * s) - std::abs(z);
        double rate2 = kPi * (s + hbar * c) - std::abs(z);
        rate = std::min(rate, rate2);
        if (rate < 0.5) throw StripError("phiMdc: z outside the contour convergence region");
        R = std::max(8.0, 45.0 / rate);
    }
    double r = std::min(spec.detourRadius, 0.4 / std::max(1.0, hbar));
    auto f = [&](C p) {
        return std::exp(C(0, -1) * p * z) /
               (std::sinh(kPi * p) * std::sinh(C(0, eps * kPi * hbar) * p) * p);
    };
    auto I = detouredLine(f, angle, r, R, spec.quadratureTolerance);
    return std::exp(-0.25 * I.value);
}

template <class Real>
std::complex<Real> PsiHbar(Real hbar, Real x, Real y) {
    using C = std::complex<Real>;
    if (!(hbar > 0)) throw QdilogError("PsiHbar: hbar must be positive");
    if (std::abs(x) > Real(600) || std::abs(y) / hbar > Real(600))
        throw NonConvergenceError("PsiHbar: argument too large for the product form");
    // Psi = [psi^q(a)/conj psi^q(a)] * [conj psi^{qv}(b) / psi^{qv}(b)],
    // a = e^{x+iy}, b = e^{(x+iy)/(i hbar)}; each factor ratio has modulus 1.
    const Real pi = boost::math::constants::pi<Real>();
    C a = std::exp(C(x, y));
    C b = std::exp(C(x, y) / C(Real(0), hbar));
    C q{std::exp(-pi * hbar), Real(0)};
    C qv{std::exp(-pi / hbar), Real(0)};
    C result{Real(1), Real(0)};
    auto accumulate = [&](C base, C arg, bool conjOverPlain) {
        C w = base;
        C b2 = base * base;
        const Real az = std::abs(arg);
        const Real cutoff = std::numeric_limits<Real>::epsilon() / Real(4);
        for (int n = 0; n < 200000; ++n) {
            C f = C(1) + w * arg;
            result *= conjOverPlain ? std::conj(f) / f : f / std::conj(f);
            w *= b2;
            if (std::abs(w) * az < cutoff) return;
        }
        throw NonConvergenceError("PsiHbar: product did not converge");
    };
    accumulate(q, a, true);
    accumulate(qv, b, false);
    return result;
}

template std::complex<double> PsiHbar<double>(double, double, double);
template std::complex<long double> PsiHbar<long double>(long double, long double, long double);

template <class Real>
std::complex<Real> Fzero(Real x, Real y) {
    using C = std::complex<Real>;
    // (1+e^x)^{y/(pi i)} = exp( -i y log(1+e^x) / pi ), 1+e^x > 0
    const Real pi = boost::math::constants::pi<Real>();
    Real lg = x > Real(0) ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
    return std::exp(C(Real(0), -y * lg / pi));
}

template std::complex<double> Fzero<double>(double, double);
template std::complex<long double> Fzero<long double>(long double, long double);

std::complex<double> FzeroContour(double x, double y, const ContourSpec& spec) {
    using C = std::complex<double>;
    double R = spec.truncationRadius > 0 ? spec.truncationRadius
                                         : std::max(8.0, (40.0 + std::abs(x)) / kPi);
    auto f = [&](C p) { return std::exp(C(0, -1) * p * x) / (std::sinh(kPi * p) * p); };
    auto I = detouredLine(f, 0.0, spec.detourRadius, R, spec.quadratureTolerance);
    return std::exp(-(y / (2.0 * kPi)) * C(0, -1) * I.value);
}

std::complex<double> mdcInvolutivityConstant(double hbar, int eps) {
    return std::exp(std::complex<double>((kPi / 12.0) * eps * (hbar - 1.0 / hbar), 0.0));
}

EvalResult evalPsiQ(double hbar, std::complex<double> z) {
    auto p = psiProduct<double>(std::complex<double>(std::exp(-kPi * hbar)), z, 1e-12);
    return {p.value, p.tailBound * std::abs(p.value) + 1e-15};
}

EvalResult evalPhiHbar(double hbar, std::complex<double> z, const ContourSpec& spec) {
    auto v = phiHbar(hbar, z, spec);
    return {v, spec.quadratureTolerance * std::abs(v)};
}

EvalResult evalPhiMdc(double hbar, int eps, std::complex<double> z, MdcMethod method,
                      const ContourSpec& spec) {
    auto v = phiMdc(hbar, eps, z, method, spec);
    double err = method == MdcMethod::Ratio ? 1e-13 * std::abs(v)
                                            : spec.quadratureTolerance * std::abs(v);
    return {v, err};
}

EvalResult evalPsiHbar(double hbar, double x, double y, bool extendedPrecision) {
    if (extendedPrecision) {
        auto v = PsiHbar<long double>((long double)hbar, (long double)x, (long double)y);
        return {{(double)v.real(), (double)v.imag()}, 1e-16};
    }
    return {PsiHbar<double>(hbar, x, y), 1e-13};
}

EvalResult evalFzero(double x, double y, bool extendedPrecision) {
    if (extendedPrecision) {
        auto v = Fzero<long double>((long double)x, (long double)y);
        return {{(double)v.real(), (double)v.imag()}, 1e-16};
    }
    return {Fzero<double>(x, y), 1e-14};
}

}  // namespace qpk::qdilog
