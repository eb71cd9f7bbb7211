#ifndef BNN_SYNTH_HPP
#define BNN_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bnn/idx.hpp"
#include "bnn/rng.hpp"

namespace bnn {

// Procedural 28x28 digit-style dataset in the IDX container format, for
// offline demos and pipeline tests. Samples are seven-segment glyphs with
// random position jitter and pixel noise; this is NOT the MNIST data, only
// a stand-in with the same file layout.
struct SynthDigits {
    IdxImages images;
    std::vector<std::uint8_t> labels;
};

SynthDigits make_synthetic_digits(std::uint32_t count, DeterministicRng& rng);

// Writes train-*/t10k-* files into dir (created beforehand by the caller).
void write_synthetic_digits(const std::string& dir, std::uint32_t train_count,
                            std::uint32_t test_count, std::uint64_t seed);

} // namespace bnn

#endif
