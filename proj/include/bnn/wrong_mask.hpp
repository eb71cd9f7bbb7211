#ifndef BNN_WRONG_MASK_HPP
#define BNN_WRONG_MASK_HPP

#include <vector>

#include "bnn/bit_vector.hpp"

namespace bnn {

// Per-layer culpability marks produced by the backward counting pass.
// weight_masks[l] mirrors layer l's rows (bit set = weight may be flipped);
// node_masks[l] covers layer l's *input* nodes.
struct WrongMask {
    std::vector<std::vector<BitVector>> weight_masks;
    std::vector<BitVector> node_masks;

    bool any_weight_marked() const {
        for (const auto& layer : weight_masks) {
            for (const auto& row : layer) {
                if (row.popcount() != 0) return true;
            }
        }
        return false;
    }
};

} // namespace bnn

#endif
