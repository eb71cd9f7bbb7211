#ifndef BNN_FIXED_PROB_HPP
#define BNN_FIXED_PROB_HPP

#include <cstdint>

#include "bnn/errors.hpp"

namespace bnn {

// Probability as a 32-bit fixed-point threshold: p = threshold / 2^32.
// threshold 0 is exactly 0; threshold 2^32-1 is 1 - 2^-32 (1.0 itself is
// not representable and from_ratio clamps to that maximum).
struct FixedProb {
    std::uint32_t threshold = 0;

    static constexpr FixedProb zero() { return {0}; }
    static constexpr FixedProb half() { return {0x80000000u}; }
    static constexpr FixedProb max() { return {0xFFFFFFFFu}; }

    // floor(num * 2^32 / den); num/den must be a probability (num <= den).
    static FixedProb from_ratio(std::uint64_t num, std::uint64_t den) {
        if (den == 0) throw ValueError("FixedProb: zero denominator");
        if (num > den) throw ValueError("FixedProb: ratio above 1");
        if (num == den) return max();
        // num < den <= 2^64-1 and num * 2^32 needs num < 2^32 to stay in
        // 64 bits; reduce first when necessary.
        while (num >= (std::uint64_t{1} << 32)) {
            num >>= 1;
            den >>= 1;
        }
        return {static_cast<std::uint32_t>((num << 32) / den)};
    }

    bool operator==(const FixedProb&) const = default;
};

} // namespace bnn

#endif
