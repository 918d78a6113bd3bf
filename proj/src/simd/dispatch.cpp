#include "catlas/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace catlas::simd {

// Defined in kernels_avx2.cpp; null when that TU was built without AVX2.
const KernelTable* avx2_kernels_build();

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const KernelTable* select() {
    if (const char* force = std::getenv("CATLAS_KERNELS")) {
        if (std::strcmp(force, "scalar") == 0)
            return &scalar_kernels();
        if (std::strcmp(force, "avx2") == 0 && avx2_kernels() != nullptr)
            return avx2_kernels();
    }
    if (const KernelTable* t = avx2_kernels())
        return t;
    return &scalar_kernels();
}

}  // namespace

const KernelTable* avx2_kernels() {
    if (!cpu_has_avx2())
        return nullptr;
    return avx2_kernels_build();
}

const KernelTable& active_kernels() {
    static const KernelTable* table = select();
    return *table;
}

}  // namespace catlas::simd
