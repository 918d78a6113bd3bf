#pragma once

#include <cstddef>
#include <cstdint>

namespace catlas::simd {

// Bit-counting kernels over blocks of 64-bit words. `n` is the word count;
// both operands must hold at least `n` words. Every backend must produce
// identical results; the test suite checks them against each other.
struct KernelTable {
    const char* name;
    uint64_t (*popcount)(const uint64_t* a, size_t n);
    // |a & b|
    uint64_t (*intersect_count)(const uint64_t* a, const uint64_t* b, size_t n);
    // |a & ~b|
    uint64_t (*andnot_count)(const uint64_t* a, const uint64_t* b, size_t n);
    // dst |= src
    void (*or_inplace)(uint64_t* dst, const uint64_t* src, size_t n);
};

const KernelTable& scalar_kernels();

// Null when the binary was built without AVX2 codegen or the CPU lacks it.
const KernelTable* avx2_kernels();

// Backend picked once at first use: AVX2 when available, scalar otherwise.
// Set CATLAS_KERNELS=scalar (or =avx2) to override detection.
const KernelTable& active_kernels();

}  // namespace catlas::simd
