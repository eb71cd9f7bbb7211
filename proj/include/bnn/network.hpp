#ifndef BNN_NETWORK_HPP
#define BNN_NETWORK_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "bnn/bit_vector.hpp"
#include "bnn/fixed_prob.hpp"
#include "bnn/rng.hpp"
#include "bnn/wrong_mask.hpp"

namespace bnn {

// One binary fully-connected layer: out_dim rows of in_dim weight bits.
// Row j holds the weights of output neuron j. No bias, no scaling.
class BinaryLayer {
public:
    BinaryLayer(std::size_t out_dim, std::size_t in_dim);
    explicit BinaryLayer(std::vector<BitVector> rows);

    std::size_t out_dim() const { return rows_.size(); }
    std::size_t in_dim() const { return in_dim_; }

    const BitVector& row(std::size_t j) const { return rows_[j]; }
    BitVector& row(std::size_t j) { return rows_[j]; }
    std::span<const BitVector> rows() const { return rows_; }

    bool operator==(const BinaryLayer& other) const {
        return in_dim_ == other.in_dim_ && rows_ == other.rows_;
    }

private:
    std::vector<BitVector> rows_;
    std::size_t in_dim_;
};

// Ordered binary layers; layer l's in_dim equals layer l-1's out_dim.
class BinaryNetwork {
public:
    explicit BinaryNetwork(std::vector<BinaryLayer> layers);

    std::size_t depth() const { return layers_.size(); }
    std::size_t input_dim() const { return layers_.front().in_dim(); }
    std::size_t output_dim() const { return layers_.back().out_dim(); }

    const BinaryLayer& layer(std::size_t l) const { return layers_[l]; }
    BinaryLayer& layer(std::size_t l) { return layers_[l]; }
    std::span<const BinaryLayer> layers() const { return layers_; }

    // [input_dim, out_dim of each layer].
    std::vector<std::size_t> sizes() const;
    std::size_t weight_count() const;

    bool operator==(const BinaryNetwork& other) const { return layers_ == other.layers_; }

private:
    std::vector<BinaryLayer> layers_;
};

// Majority vote over the XNOR agreement bits; tie fires 1.
bool neuron_forward(const BitVector& weights_row, const BitVector& input);

BitVector layer_forward(const BinaryLayer& layer, const BitVector& input);

BitVector network_forward(const BinaryNetwork& net, const BitVector& input);

// Forward pass that also keeps every layer's input, for backward attribution.
// layer_inputs[l] is what layer l consumed; layer_inputs[depth] is the output.
struct ForwardTrace {
    std::vector<BitVector> layer_inputs;

    const BitVector& output() const { return layer_inputs.back(); }
};

ForwardTrace network_forward_traced(const BinaryNetwork& net, const BitVector& input);

// Uniform random weights. Draw order is layer-major, row-major, bit-major,
// one 32-bit draw per weight, so the stream position after construction is
// the total weight count.
BinaryNetwork init_random(DeterministicRng& rng, std::span<const std::size_t> sizes);

// Copy with each flip candidate independently flipped with probability p.
// Candidates are all weights, or the mask-marked ones when a mask is given;
// one draw is consumed per candidate in layer-major, row-major, bit-major
// order. An all-ones mask therefore reproduces the unmasked clone bit for
// bit, and an empty mask consumes nothing.
BinaryNetwork clone_and_flip(const BinaryNetwork& net, DeterministicRng& rng,
                             FixedProb p, const WrongMask* mask = nullptr);

} // namespace bnn

#endif
