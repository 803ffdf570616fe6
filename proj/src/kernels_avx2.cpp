// AVX2 kernel variants. This translation unit is compiled with -mavx2;
// callers must check hydro::kernels::avx2() != nullptr before use.

#include "hydro/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace hydro::kernels {

namespace {

// mul + add (not fused) so results match the scalar kernels bitwise
void axpy_v(double a, const double* x, double* y, size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_add_pd(vy, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_v(double a, double* x, size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

double dot_v(const double* x, const double* y, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void fma_acc_v(const double* a, const double* b, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vo = _mm256_loadu_pd(out + i);
        vo = _mm256_add_pd(vo, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        _mm256_storeu_pd(out + i, vo);
    }
    for (; i < n; ++i) out[i] += a[i] * b[i];
}

void mul_v(const double* a, const double* b, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i,
                         _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void cmul_factors_v(double* z, const double* f, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // duplicate each factor into (re, im) lanes
        __m256d vf = _mm256_loadu_pd(f + i);            // f0 f1 f2 f3
        __m256d lo = _mm256_permute4x64_pd(vf, 0x50);   // f0 f0 f1 f1
        __m256d hi = _mm256_permute4x64_pd(vf, 0xfa);   // f2 f2 f3 f3
        __m256d z0 = _mm256_loadu_pd(z + 2 * i);
        __m256d z1 = _mm256_loadu_pd(z + 2 * i + 4);
        _mm256_storeu_pd(z + 2 * i, _mm256_mul_pd(z0, lo));
        _mm256_storeu_pd(z + 2 * i + 4, _mm256_mul_pd(z1, hi));
    }
    for (; i < n; ++i) {
        z[2 * i] *= f[i];
        z[2 * i + 1] *= f[i];
    }
}

} // namespace

const Kernels* avx2() {
    static const Kernels k{axpy_v, scale_v, dot_v, fma_acc_v, mul_v, cmul_factors_v, "avx2"};
    if (__builtin_cpu_supports("avx2")) return &k;
    return nullptr;
}

} // namespace hydro::kernels

#else

namespace hydro::kernels {
const Kernels* avx2() { return nullptr; }
} // namespace hydro::kernels

#endif
