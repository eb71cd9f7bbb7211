#include "bnn/random_mask.hpp"

namespace bnn {

BitVector random_mask(DeterministicRng& rng, std::size_t len, FixedProb p) {
    BitVector mask(len);
    auto words = mask.words();
    for (std::size_t i = 0; i < len; ++i) {
        if (rng.next_u32() < p.threshold) {
            words[i / BitVector::kWordBits] |= BitVector::Word{1} << (i % BitVector::kWordBits);
        }
    }
    return mask;
}

} // namespace bnn
