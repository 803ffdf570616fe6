#include "hydro/kernels.hpp"
#include "hydro/common.hpp"

#include <cstdlib>
#include <thread>

namespace hydro::kernels {

namespace {

const Kernels& resolve() {
    const char* env = std::getenv("HYDRO_SIMD");
    std::string want = env ? env : "auto";
    if (want == "scalar") return scalar();
    const Kernels* v = avx2();
    if (want == "avx2") {
        if (!v) throw HydroError("HYDRO_SIMD=avx2 requested but AVX2 is unavailable");
        return *v;
    }
    return v ? *v : scalar();
}

} // namespace

const Kernels& active() {
    static const Kernels& k = resolve();
    return k;
}

} // namespace hydro::kernels

namespace hydro {

int worker_count() {
    static int n = [] {
        int hw = static_cast<int>(std::thread::hardware_concurrency());
        if (hw <= 0) hw = 1;
        if (const char* env = std::getenv("HYDRO_THREADS")) {
            int cap = std::atoi(env);
            if (cap > 0 && cap < hw) hw = cap;
        }
        return hw;
    }();
    return n;
}

} // namespace hydro
