#pragma once

#include <complex>
#include <cstddef>

namespace qpk::kernels {

using Cd = std::complex<double>;

// Hot inner loops of the grid operators: pointwise complex multiplication by
// precomputed multiplier tables, scaling, accumulation and norm reductions.
// Each primitive has a scalar reference implementation and an AVX2 variant;
// the active one is selected once at startup from CPUID, and tests compare
// the two on random data.

void cmul(Cd* dst, const Cd* a, const Cd* b, std::size_t n);  // dst = a .* b
void cmulInplace(Cd* a, const Cd* b, std::size_t n);          // a .*= b
void cscale(Cd* a, Cd s, std::size_t n);                      // a *= s
void caxpy(Cd* y, Cd alpha, const Cd* x, std::size_t n);      // y += alpha * x
void csub(Cd* dst, const Cd* a, const Cd* b, std::size_t n);  // dst = a - b
double sumAbs2(const Cd* a, std::size_t n);
double maxAbs2(const Cd* a, std::size_t n);

const char* activeImplementation();  // "avx2" or "scalar"
void forceScalar(bool on);           // equivalence testing hook

namespace ref {
void cmul(Cd* dst, const Cd* a, const Cd* b, std::size_t n);
void cmulInplace(Cd* a, const Cd* b, std::size_t n);
void cscale(Cd* a, Cd s, std::size_t n);
void caxpy(Cd* y, Cd alpha, const Cd* x, std::size_t n);
void csub(Cd* dst, const Cd* a, const Cd* b, std::size_t n);
double sumAbs2(const Cd* a, std::size_t n);
double maxAbs2(const Cd* a, std::size_t n);
}  // namespace ref

namespace avx2 {
bool available();
void cmul(Cd* dst, const Cd* a, const Cd* b, std::size_t n);
void cmulInplace(Cd* a, const Cd* b, std::size_t n);
void cscale(Cd* a, Cd s, std::size_t n);
void caxpy(Cd* y, Cd alpha, const Cd* x, std::size_t n);
void csub(Cd* dst, const Cd* a, const Cd* b, std::size_t n);
double sumAbs2(const Cd* a, std::size_t n);
double maxAbs2(const Cd* a, std::size_t n);
}  // namespace avx2

}  // namespace qpk::kernels
