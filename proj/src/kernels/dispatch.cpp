#include <cstdlib>
#include <cstring>

#include "backends.hpp"
#include "fof/kernels.hpp"

namespace fof::kern {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Backend& pick() {
    const char* force = std::getenv("FOF_KERNELS");
    if (force != nullptr) {
        if (std::strcmp(force, "scalar") == 0) return scalar_backend();
        if (std::strcmp(force, "avx2") == 0 && avx2_backend_impl() != nullptr)
            return *avx2_backend_impl();
    }
    if (cpu_has_avx2() && avx2_backend_impl() != nullptr) return *avx2_backend_impl();
    return scalar_backend();
}

}  // namespace

const Backend& active_backend() {
    static const Backend& b = pick();
    return b;
}

}  // namespace fof::kern
