#pragma once

#include "qpk/catalog.hpp"
#include "qpk/word.hpp"

#include <complex>
#include <random>
#include <vector>

namespace qpk::numerics {

using Cd = std::complex<double>;

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Unbounded-operator application outside the safe band.
struct GuardError : GridError {
    using GridError::GridError;
};

/// Periodic N^d discretization of L^2(R^d): coordinate axis c samples
/// x_k = (k - N/2) L/N, momentum lattice xi_m = 2 pi m / L (DFT dual).
struct GridConfig {
    int pointsPerAxis = 32;  // power of two, >= 4
    double boxLength = 20.0;
    double hbar = 0.4;
    double mValue = 1.0;
    std::vector<Coord> coords;  // sorted axis order

    std::size_t axes() const { return coords.size(); }
    std::size_t totalPoints() const;
    double spacing() const { return boxLength / pointsPerAxis; }
    double point(int k) const { return (k - pointsPerAxis / 2) * spacing(); }
    double frequency(int j) const;  // fftfreq convention, angular

    static GridConfig forSlots(const std::vector<int>& slots, int n, double length, double hbar,
                               double mValue = 1.0);
};

struct GridState {
    GridConfig cfg;
    std::vector<Cd> data;

    static GridState zero(const GridConfig& cfg);
    /// unit-norm product Gaussian exp(-(x-c)^2/(2 w^2)) per axis
    static GridState gaussian(const GridConfig& cfg, const std::vector<double>& centers,
                              const std::vector<double>& widths);
    static GridState randomGaussian(const GridConfig& cfg, std::mt19937& rng);
    static GridState basisVector(const GridConfig& cfg, std::size_t index);

    double norm() const;
    GridState& operator-=(const GridState& o);
};

void applyConjugator(const Conjugator& c, GridState& v);
void applyWeylExp(const LinForm& exponent, GridState& v);
void applyDilog(const DilogFactor& d, GridState& v);
void applyWord(const OperatorWord& w, GridState& v);
GridState applySum(const OperatorSum& s, const GridState& v);

/// ||lhs v - rhs v|| / ||v|| for each test vector.
std::vector<double> residuals(const OperatorSum& lhs, const OperatorSum& rhs,
                              const GridConfig& cfg, const std::vector<GridState>& vectors);

/// Materializes the sum as a dense matrix (column-major, dimension
/// totalPoints), capped at dimension 4096.
std::vector<Cd> denseMatrix(const OperatorSum& s, const GridConfig& cfg);

catalog::VerifyReport verifyNumeric(const catalog::Entry& entry, int gridOverride = 0,
                                    double lengthOverride = 0.0, double hbarOverride = 0.0,
                                    double tolOverride = 0.0, double mOverride = -1.0,
                                    unsigned seedOverride = 0, bool allowUnbounded = false);

/// Raises (true) or restores (false) the occupied-band multiplier guard;
/// used with band-limited test vectors when applying unbounded families.
void setGuardRelaxed(bool relaxed);

}  // namespace qpk::numerics
