#include "qpk/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace qpk::kernels {

namespace ref {

void cmul(Cd* dst, const Cd* a, const Cd* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}
void cmulInplace(Cd* a, const Cd* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
}
void cscale(Cd* a, Cd s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}
void caxpy(Cd* y, Cd alpha, const Cd* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}
void csub(Cd* dst, const Cd* a, const Cd* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}
double sumAbs2(const Cd* a, std::size_t n) {
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(a[i]);
    return acc;
}
double maxAbs2(const Cd* a, std::size_t n) {
    double m = 0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::norm(a[i]));
    return m;
}

}  // namespace ref

namespace {
bool gForceScalar = false;
bool useAvx2() { return !gForceScalar && avx2::available(); }
}  // namespace

void forceScalar(bool on) { gForceScalar = on; }
const char* activeImplementation() { return useAvx2() ? "avx2" : "scalar"; }

void cmul(Cd* dst, const Cd* a, const Cd* b, std::size_t n) {
    useAvx2() ? avx2::cmul(dst, a, b, n) : ref::cmul(dst, a, b, n);
}
void cmulInplace(Cd* a, const Cd* b, std::size_t n) {
    useAvx2() ? avx2::cmulInplace(a, b, n) : ref::cmulInplace(a, b, n);
}
void cscale(Cd* a, Cd s, std::size_t n) {
    useAvx2() ? avx2::cscale(a, s, n) : ref::cscale(a, s, n);
}
void caxpy(Cd* y, Cd alpha, const Cd* x, std::size_t n) {
    useAvx2() ? avx2::caxpy(y, alpha, x, n) : ref::caxpy(y, alpha, x, n);
}
void csub(Cd* dst, const Cd* a, const Cd* b, std::size_t n) {
    useAvx2() ? avx2::csub(dst, a, b, n) : ref::csub(dst, a, b, n);
}
double sumAbs2(const Cd* a, std::size_t n) {
    return useAvx2() ? avx2::sumAbs2(a, n) : ref::sumAbs2(a, n);
}
double maxAbs2(const Cd* a, std::size_t n) {
    return useAvx2() ? avx2::maxAbs2(a, n) : ref::maxAbs2(a, n);
}

}  // namespace qpk::kernels
