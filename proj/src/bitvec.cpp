#include "catlas/bitvec.hpp"

#include <bit>

namespace catlas {

std::vector<uint32_t> BitVec::indices() const {
    std::vector<uint32_t> out;
    out.reserve(static_cast<size_t>(count()));
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t word = words_[w];
        while (word != 0) {
            const int bit = std::countr_zero(word);
            out.push_back(static_cast<uint32_t>(w * 64 + static_cast<size_t>(bit)));
            word &= word - 1;
        }
    }
    return out;
}

}  // namespace catlas
