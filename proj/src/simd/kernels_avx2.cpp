// AVX2 variants of the bit-counting kernels. This translation unit is the
// only one compiled with -mavx2; callers reach it through the dispatch table.

#include "catlas/simd/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <bit>

namespace catlas::simd {
namespace {

// Per-byte popcount via two nibble table lookups, then horizontal sums of
// eight bytes into the four 64-bit lanes.
inline __m256i popcount256(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    const __m256i cnt =
        _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline uint64_t reduce_epi64(__m256i acc) {
    return static_cast<uint64_t>(_mm256_extract_epi64(acc, 0)) +
           static_cast<uint64_t>(_mm256_extract_epi64(acc, 1)) +
           static_cast<uint64_t>(_mm256_extract_epi64(acc, 2)) +
           static_cast<uint64_t>(_mm256_extract_epi64(acc, 3));
}

uint64_t popcount_avx2(const uint64_t* a, size_t n) {
    __m256i acc = _mm256_setzero_si256();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        acc = _mm256_add_epi64(acc, popcount256(v));
    }
    uint64_t total = reduce_epi64(acc);
    for (; i < n; ++i)
        total += static_cast<uint64_t>(std::popcount(a[i]));
    return total;
}

uint64_t intersect_count_avx2(const uint64_t* a, const uint64_t* b, size_t n) {
    __m256i acc = _mm256_setzero_si256();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        acc = _mm256_add_epi64(acc, popcount256(_mm256_and_si256(va, vb)));
    }
    uint64_t total = reduce_epi64(acc);
    for (; i < n; ++i)
        total += static_cast<uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

uint64_t andnot_count_avx2(const uint64_t* a, const uint64_t* b, size_t n) {
    __m256i acc = _mm256_setzero_si256();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        // andnot(x, y) = ~x & y
        acc = _mm256_add_epi64(acc, popcount256(_mm256_andnot_si256(vb, va)));
    }
    uint64_t total = reduce_epi64(acc);
    for (; i < n; ++i)
        total += static_cast<uint64_t>(std::popcount(a[i] & ~b[i]));
    return total;
}

void or_inplace_avx2(uint64_t* dst, const uint64_t* src, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i vd = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        const __m256i vs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(vd, vs));
    }
    for (; i < n; ++i)
        dst[i] |= src[i];
}

}  // namespace

const KernelTable* avx2_kernels_build() {
    static const KernelTable table{
        "avx2",
        &popcount_avx2,
        &intersect_count_avx2,
        &andnot_count_avx2,
        &or_inplace_avx2,
    };
    return &table;
}

}  // namespace catlas::simd

#else

namespace catlas::simd {

const KernelTable* avx2_kernels_build() {
    return nullptr;
}

}  // namespace catlas::simd

#endif
