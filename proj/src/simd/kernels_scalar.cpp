#include "catlas/simd/kernels.hpp"

#include <bit>

namespace catlas::simd {
namespace {

uint64_t popcount_scalar(const uint64_t* a, size_t n) {
    uint64_t total = 0;
    for (size_t i = 0; i < n; ++i)
        total += static_cast<uint64_t>(std::popcount(a[i]));
    return total;
}

uint64_t intersect_count_scalar(const uint64_t* a, const uint64_t* b, size_t n) {
    uint64_t total = 0;
    for (size_t i = 0; i < n; ++i)
        total += static_cast<uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

uint64_t andnot_count_scalar(const uint64_t* a, const uint64_t* b, size_t n) {
    uint64_t total = 0;
    for (size_t i = 0; i < n; ++i)
        total += static_cast<uint64_t>(std::popcount(a[i] & ~b[i]));
    return total;
}

void or_inplace_scalar(uint64_t* dst, const uint64_t* src, size_t n) {
    for (size_t i = 0; i < n; ++i)
        dst[i] |= src[i];
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{
        "scalar",
        &popcount_scalar,
        &intersect_count_scalar,
        &andnot_count_scalar,
        &or_inplace_scalar,
    };
    return table;
}

}  // namespace catlas::simd
