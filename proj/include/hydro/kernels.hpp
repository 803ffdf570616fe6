#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops of the solver. Every kernel has a scalar
// reference implementation and (on x86-64) an AVX2 variant; the active set
// is selected at runtime from CPUID, overridable with HYDRO_SIMD=scalar|avx2.
// The SIMD variants are required to agree with the scalar ones bitwise for
// axpy/scale/triads and to within accumulation-order roundoff for reductions;
// tests/test_kernels.cpp enforces this.

namespace hydro::kernels {

struct Kernels {
    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, size_t n);
    // x[i] *= a
    void (*scale)(double a, double* x, size_t n);
    // sum x[i] * y[i]
    double (*dot)(const double* x, const double* y, size_t n);
    // out[i] += a[i] * b[i]
    void (*fma_acc)(const double* a, const double* b, double* out, size_t n);
    // out[i] = a[i] * b[i]
    void (*mul)(const double* a, const double* b, double* out, size_t n);
    // interleaved complex data z (2n doubles), per-element real factor f (n):
    // z[2i] *= f[i]; z[2i+1] *= f[i]
    void (*cmul_factors)(double* z, const double* f, size_t n);

    const char* name;
};

/// Active kernel set (resolved once, thread-safe).
const Kernels& active();

/// Reference implementations (always available; used by equivalence tests).
const Kernels& scalar();

/// AVX2 implementations, or nullptr when unsupported on this CPU.
const Kernels* avx2();

} // namespace hydro::kernels
