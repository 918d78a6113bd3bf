#pragma once

#include <cstdint>
#include <vector>

#include "catlas/simd/kernels.hpp"

namespace catlas {

// Fixed-universe bit set. All binary operations require both operands to
// share the same universe size; bits past `bit_capacity()` stay zero so the
// counting kernels are exact.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(uint32_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    uint32_t bit_capacity() const { return bits_; }
    size_t word_count() const { return words_.size(); }
    const uint64_t* data() const { return words_.data(); }
    uint64_t* data() { return words_.data(); }

    void set(uint32_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(uint32_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void clear() { words_.assign(words_.size(), 0); }

    uint64_t count() const {
        return simd::active_kernels().popcount(data(), word_count());
    }

    uint64_t intersect_count(const BitVec& o) const {
        return simd::active_kernels().intersect_count(data(), o.data(), word_count());
    }

    // |this \ o|
    uint64_t difference_count(const BitVec& o) const {
        return simd::active_kernels().andnot_count(data(), o.data(), word_count());
    }

    bool is_subset_of(const BitVec& o) const { return difference_count(o) == 0; }

    void or_with(const BitVec& o) {
        simd::active_kernels().or_inplace(data(), o.data(), word_count());
    }

    void and_with(const BitVec& o) {
        for (size_t i = 0; i < words_.size(); ++i)
            words_[i] &= o.words_[i];
    }

    bool any() const { return count() != 0; }

    // Set bit positions, ascending.
    std::vector<uint32_t> indices() const;

    static BitVec all_set(uint32_t bits) {
        BitVec v(bits);
        for (uint32_t i = 0; i < bits; ++i)
            v.set(i);
        return v;
    }

    friend bool operator==(const BitVec&, const BitVec&) = default;

private:
    uint32_t bits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace catlas
