#ifndef BNN_DATASET_HPP
#define BNN_DATASET_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bnn/bit_vector.hpp"
#include "bnn/rng.hpp"

namespace bnn {

enum class Split { train, test };

// Binarized samples with their class labels; immutable after load.
struct BinaryDataset {
    std::vector<BitVector> samples;
    std::vector<std::uint8_t> labels;
    Split split = Split::train;

    std::size_t size() const { return samples.size(); }
    std::size_t sample_width() const { return samples.empty() ? 0 : samples.front().size(); }
};

// bit i = 1 iff pixels[i] >= threshold.
BitVector binarize(std::span<const std::uint8_t> pixels, std::uint8_t threshold);

// Loads <dir>/{train|t10k}-{images-idx3|labels-idx1}-ubyte, binarizes, and
// pairs images with labels. limit > 0 keeps only the first `limit` items.
BinaryDataset load_binary_dataset(const std::string& dir, Split split,
                                  std::uint8_t threshold, std::size_t limit = 0);

// Deterministic shuffle, then consecutive slices of batch_size; the final
// short batch is kept, so the batches partition the dataset.
std::vector<BinaryDataset> make_batches(const BinaryDataset& dataset, std::size_t batch_size,
                                        DeterministicRng& rng);

// Deterministic sample of n items without replacement.
BinaryDataset fitness_subset(const BinaryDataset& dataset, std::size_t n,
                             DeterministicRng& rng);

} // namespace bnn

#endif
