#ifndef BNN_OBJECTIVE_HPP
#define BNN_OBJECTIVE_HPP

#include <cstdint>
#include <span>

#include "bnn/bit_vector.hpp"
#include "bnn/fixed_prob.hpp"
#include "bnn/network.hpp"

namespace bnn {

// Output bits are split into `classes` groups of `bits_per_label` bits; the
// count of 1s in a group is the network's support for that class.
struct LabelCodec {
    std::size_t classes;
    std::size_t bits_per_label;

    LabelCodec(std::size_t classes_, std::size_t bits_per_label_);

    std::size_t output_width() const { return classes * bits_per_label; }
};

// Exact integer accuracy; ppm = floor(correct * 10^6 / total).
struct Fitness {
    std::uint64_t correct = 0;
    std::uint64_t total = 0;
    std::uint32_t ppm = 0;

    static Fitness from_counts(std::uint64_t correct, std::uint64_t total);
};

struct ScoredNetwork {
    BinaryNetwork net;
    std::uint32_t current_ppm = 0;
    std::uint32_t lineage_ppm = 0;
};

// Class whose group holds the most 1s; ties go to the lowest class index.
std::size_t predict_class(const BitVector& output, const LabelCodec& codec);

// All ones in the label's group, zeros elsewhere.
BitVector target_output(std::size_t label, const LabelCodec& codec);

Fitness evaluate_accuracy(const BinaryNetwork& net,
                          std::span<const BitVector> samples,
                          std::span<const std::uint8_t> labels,
                          const LabelCodec& codec, unsigned threads = 1);

// floor((lambda * ancestor + (1 - lambda) * current) / 1) on the ppm scale,
// computed as integer fixed point; lambda weights the ancestors.
std::uint32_t blend_score(std::uint32_t current_ppm, std::uint32_t ancestor_ppm,
                          FixedProb lambda);

} // namespace bnn

#endif
