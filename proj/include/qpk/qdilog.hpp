#pragma once

#include <complex>
#include <stdexcept>

namespace qpk::qdilog {

struct QdilogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleProximityError : QdilogError {
    using QdilogError::QdilogError;
};
struct StripError : QdilogError {
    using QdilogError::QdilogError;
};
struct NonConvergenceError : QdilogError {
    using QdilogError::QdilogError;
};

/// Integration contour description for the Barnes-type integrals: the real
/// line with a half-circular detour above the origin, optionally rotated
/// about the origin.
struct ContourSpec {
    double rotationAngle = 0.0;
    double detourRadius = 0.5;
    double truncationRadius = 0.0;  // 0 = choose from the decay rate
    double quadratureTolerance = 1e-10;
};

/// Compact quantum dilogarithm  psi^q(z) = prod_{n>=0} (1 + q^{2n+1} z)^{-1},
/// |q| < 1. Throws PoleProximityError when a retained factor nearly vanishes.
template <class Real = double>
std::complex<Real> psiQ(std::complex<Real> q, std::complex<Real> z,
                        Real poleEps = Real(1e-12));

/// Non-compact quantum dilogarithm on |Im z| < pi(1 + hbar), by adaptive
/// quadrature over the detoured real-line contour.
std::complex<double> phiHbar(double hbar, std::complex<double> z, const ContourSpec& spec = {});

enum class MdcMethod { Contour, Ratio };

/// Modular double compact quantum dilogarithm Phi^{eps i hbar}. The ratio
/// method evaluates psi^{e^{-pi h}}(e^z) / psi^{e^{-pi/h}}(e^{z/(i h)}) (and
/// the conjugate-reflected value for eps = -1); the contour method rotates
/// the Barnes contour by -eps pi/4.
std::complex<double> phiMdc(double hbar, int eps, std::complex<double> z,
                            MdcMethod method = MdcMethod::Ratio, const ContourSpec& spec = {});

/// Psi^hbar(x + i y) = Phi^{i hbar}(x+iy) / conj(Phi^{i hbar}(x+iy)),
/// computed as a product of exactly unimodular factor ratios; well defined
/// for all real x, y.
template <class Real = double>
std::complex<Real> PsiHbar(Real hbar, Real x, Real y);

/// F_0(x, y) = (1 + e^x)^{y/(pi i)}, principal branch.
template <class Real = double>
std::complex<Real> Fzero(Real x, Real y);

/// Quadrature form of F_0 used as an independent cross-check.
std::complex<double> FzeroContour(double x, double y, const ContourSpec& spec = {});

/// c_{eps i hbar} = e^{(pi/12) eps (hbar - 1/hbar)}.
std::complex<double> mdcInvolutivityConstant(double hbar, int eps);

/// Value together with a crude absolute error estimate (tail bound or
/// quadrature estimate), for the CSV evaluation interface.
struct EvalResult {
    std::complex<double> value;
    double absErr;
};

EvalResult evalPsiQ(double hbar, std::complex<double> z);
EvalResult evalPhiHbar(double hbar, std::complex<double> z, const ContourSpec& spec = {});
EvalResult evalPhiMdc(double hbar, int eps, std::complex<double> z, MdcMethod method,
                      const ContourSpec& spec = {});
EvalResult evalPsiHbar(double hbar, double x, double y, bool extendedPrecision = false);
EvalResult evalFzero(double x, double y, bool extendedPrecision = false);

}  // namespace qpk::qdilog
