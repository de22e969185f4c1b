#include "qpk/kernels.hpp"

#if defined(__x86_64__)
#include <immintrin.h>
#endif

#include <algorithm>
#include <cmath>

namespace qpk::kernels::avx2 {

#if defined(__x86_64__)

bool available() {
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
}

namespace {

// two interleaved complex doubles per vector: [re0, im0, re1, im1]
inline __m256d cmul4(__m256d x, __m256d y) {
    __m256d yre = _mm256_movedup_pd(y);          // [br0 br0 br1 br1]
    __m256d yim = _mm256_permute_pd(y, 0xF);     // [bi0 bi0 bi1 bi1]
    __m256d xsw = _mm256_permute_pd(x, 0x5);     // [im0 re0 im1 re1]
    return _mm256_fmaddsub_pd(x, yre, _mm256_mul_pd(xsw, yim));
}

}  // namespace

void cmul(Cd* dst, const Cd* a, const Cd* b, std::size_t n) {
    std::size_t i = 0;
    auto* d = reinterpret_cast<double*>(dst);
    auto* pa = reinterpret_cast<const double*>(a);
    auto* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        __m256d x = _mm256_loadu_pd(pa + 2 * i);
        __m256d y = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(d + 2 * i, cmul4(x, y));
    }
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmulInplace(Cd* a, const Cd* b, std::size_t n) { cmul(a, a, b, n); }

void cscale(Cd* a, Cd s, std::size_t n) {
    __m256d y = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
    auto* pa = reinterpret_cast<double*>(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d x = _mm256_loadu_pd(pa + 2 * i);
        _mm256_storeu_pd(pa + 2 * i, cmul4(x, y));
    }
    for (; i < n; ++i) a[i] *= s;
}

void caxpy(Cd* y, Cd alpha, const Cd* x, std::size_t n) {
    __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
    auto* py = reinterpret_cast<double*>(y);
    auto* px = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(px + 2 * i);
        __m256d yv = _mm256_loadu_pd(py + 2 * i);
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(yv, cmul4(xv, va)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void csub(Cd* dst, const Cd* a, const Cd* b, std::size_t n) {
    auto* d = reinterpret_cast<double*>(dst);
    auto* pa = reinterpret_cast<const double*>(a);
    auto* pb = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d x = _mm256_loadu_pd(pa + 2 * i);
        __m256d y = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(d + 2 * i, _mm256_sub_pd(x, y));
    }
    for (; i < n; ++i) dst[i] = a[i] - b[i];
}

double sumAbs2(const Cd* a, std::size_t n) {
    auto* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d x = _mm256_loadu_pd(pa + 2 * i);
        acc = _mm256_fmadd_pd(x, x, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += std::norm(a[i]);
    return s;
}

double maxAbs2(const Cd* a, std::size_t n) {
    double m = 0;
    std::size_t i = 0;
    auto* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    for (; i + 2 <= n; i += 2) {
        __m256d x = _mm256_loadu_pd(pa + 2 * i);
        __m256d sq = _mm256_mul_pd(x, x);
        __m256d sw = _mm256_permute_pd(sq, 0x5);
        acc = _mm256_max_pd(acc, _mm256_add_pd(sq, sw));  // |z|^2 in both lanes
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m = std::max(m, std::norm(a[i]));
    return m;
}

#else  // non-x86 fallback: the dispatcher never selects these

bool available() { return false; }
void cmul(Cd* d, const Cd* a, const Cd* b, std::size_t n) { ref::cmul(d, a, b, n); }
void cmulInplace(Cd* a, const Cd* b, std::size_t n) { ref::cmulInplace(a, b, n); }
void cscale(Cd* a, Cd s, std::size_t n) { ref::cscale(a, s, n); }
void caxpy(Cd* y, Cd al, const Cd* x, std::size_t n) { ref::caxpy(y, al, x, n); }
void csub(Cd* d, const Cd* a, const Cd* b, std::size_t n) { ref::csub(d, a, b, n); }
double sumAbs2(const Cd* a, std::size_t n) { return ref::sumAbs2(a, n); }
double maxAbs2(const Cd* a, std::size_t n) { return ref::maxAbs2(a, n); }

#endif

}  // namespace qpk::kernels::avx2
