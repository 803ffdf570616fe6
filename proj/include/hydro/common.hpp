#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hydro {

using cplx = std::complex<double>;

constexpr double pi = 3.14159265358979323846264338327950288;

/// Error thrown for invalid arguments, shape mismatches and I/O failures.
class HydroError : public std::runtime_error {
public:
    explicit HydroError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Small dense row-major matrix. Used for the vertical (z) transforms,
/// which stay dense because nz is small and the bases are not FFT-friendly
/// for every boundary-condition variant.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    const double* row(int r) const { return a.data() + static_cast<size_t>(r) * cols; }
};

/// Worker count for data-parallel loops, capped by HYDRO_THREADS.
int worker_count();

/// splitmix64; used to derive per-mode random streams that do not depend
/// on enumeration order or grid resolution.
inline uint64_t hash_mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace hydro
