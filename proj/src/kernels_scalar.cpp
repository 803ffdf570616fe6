#include "hydro/kernels.hpp"

namespace hydro::kernels {

namespace {

void axpy_s(double a, const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_s(double a, double* x, size_t n) {
    for (size_t i = 0; i < n; ++i) x[i] *= a;
}

double dot_s(const double* x, const double* y, size_t n) {
    // 4 independent accumulators; keeps the scalar and AVX2 sums close and
    // the loop out of a single dependency chain.
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i] * y[i];
        s1 += x[i + 1] * y[i + 1];
        s2 += x[i + 2] * y[i + 2];
        s3 += x[i + 3] * y[i + 3];
    }
    for (; i < n; ++i) s0 += x[i] * y[i];
    return (s0 + s1) + (s2 + s3);
}

void fma_acc_s(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

void mul_s(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void cmul_factors_s(double* z, const double* f, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        z[2 * i] *= f[i];
        z[2 * i + 1] *= f[i];
    }
}

} // namespace

const Kernels& scalar() {
    static const Kernels k{axpy_s, scale_s, dot_s, fma_acc_s, mul_s, cmul_factors_s, "scalar"};
    return k;
}

} // namespace hydro::kernels
