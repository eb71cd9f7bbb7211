#ifndef BNN_RANDOM_MASK_HPP
#define BNN_RANDOM_MASK_HPP

#include <cstddef>

#include "bnn/bit_vector.hpp"
#include "bnn/fixed_prob.hpp"
#include "bnn/rng.hpp"

namespace bnn {

// Bernoulli mask: bit i set iff the i-th 32-bit draw is < p.threshold.
// Consumes exactly `len` draws in index order, so callers can reason about
// stream positions.
BitVector random_mask(DeterministicRng& rng, std::size_t len, FixedProb p);

} // namespace bnn

#endif
