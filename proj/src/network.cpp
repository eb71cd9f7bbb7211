#include "bnn/network.hpp"

#include <bit>
#include <string>

#include "bnn/errors.hpp"
#include "bnn/random_mask.hpp"

namespace bnn {

BinaryLayer::BinaryLayer(std::size_t out_dim, std::size_t in_dim)
    : rows_(out_dim, BitVector(in_dim)), in_dim_(in_dim) {
    if (out_dim == 0 || in_dim == 0) {
        throw DimensionError("BinaryLayer: dimensions must be >= 1");
    }
}

BinaryLayer::BinaryLayer(std::vector<BitVector> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw DimensionError("BinaryLayer: no rows");
    in_dim_ = rows_.front().size();
    if (in_dim_ == 0) throw DimensionError("BinaryLayer: zero-width rows");
    for (const auto& r : rows_) {
        if (r.size() != in_dim_) throw DimensionError("BinaryLayer: ragged rows");
    }
}

BinaryNetwork::BinaryNetwork(std::vector<BinaryLayer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw DimensionError("BinaryNetwork: needs at least one layer");
    for (std::size_t l = 1; l < layers_.size(); ++l) {
        if (layers_[l].in_dim() != layers_[l - 1].out_dim()) {
            throw DimensionError("BinaryNetwork: layer " + std::to_string(l) +
                                 " in_dim " + std::to_string(layers_[l].in_dim()) +
                                 " != previous out_dim " +
                                 std::to_string(layers_[l - 1].out_dim()));
        }
    }
}

std::vector<std::size_t> BinaryNetwork::sizes() const {
    std::vector<std::size_t> s;
    s.reserve(layers_.size() + 1);
    s.push_back(input_dim());
    for (const auto& l : layers_) s.push_back(l.out_dim());
    return s;
}

std::size_t BinaryNetwork::weight_count() const {
    std::size_t n = 0;
    for (const auto& l : layers_) n += l.out_dim() * l.in_dim();
    return n;
}

namespace {

// Disagreement count between two equal-length canonical vectors; padding is
// zero in both, so no masking is needed. Four accumulators keep the popcount
// units busy.
inline std::size_t word_hamming(const BitVector& a, const BitVector& b) {
    const BitVector::Word* wa = a.words().data();
    const BitVector::Word* wb = b.words().data();
    const std::size_t n = a.words().size();
    std::size_t d0 = 0, d1 = 0, d2 = 0, d3 = 0;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        d0 += static_cast<std::size_t>(std::popcount(wa[k] ^ wb[k]));
        d1 += static_cast<std::size_t>(std::popcount(wa[k + 1] ^ wb[k + 1]));
        d2 += static_cast<std::size_t>(std::popcount(wa[k + 2] ^ wb[k + 2]));
        d3 += static_cast<std::size_t>(std::popcount(wa[k + 3] ^ wb[k + 3]));
    }
    for (; k < n; ++k) d0 += static_cast<std::size_t>(std::popcount(wa[k] ^ wb[k]));
    return d0 + d1 + d2 + d3;
}

} // namespace

bool neuron_forward(const BitVector& weights_row, const BitVector& input) {
    if (weights_row.size() != input.size()) {
        throw DimensionError("neuron_forward: length mismatch");
    }
    if (weights_row.empty()) throw DimensionError("neuron_forward: empty input");
    // agreements >= disagreements  <=>  2 * hamming <= len
    return 2 * word_hamming(weights_row, input) <= weights_row.size();
}

BitVector layer_forward(const BinaryLayer& layer, const BitVector& input) {
    if (input.size() != layer.in_dim()) {
        throw DimensionError("layer_forward: input width " + std::to_string(input.size()) +
                             " != in_dim " + std::to_string(layer.in_dim()));
    }
    BitVector out(layer.out_dim());
    const std::size_t len = layer.in_dim();
    for (std::size_t j = 0; j < layer.out_dim(); ++j) {
        if (2 * word_hamming(layer.row(j), input) <= len) out.set_bit(j, true);
    }
    return out;
}

BitVector network_forward(const BinaryNetwork& net, const BitVector& input) {
    BitVector x = input;
    for (const auto& layer : net.layers()) x = layer_forward(layer, x);
    return x;
}

ForwardTrace network_forward_traced(const BinaryNetwork& net, const BitVector& input) {
    ForwardTrace trace;
    trace.layer_inputs.reserve(net.depth() + 1);
    trace.layer_inputs.push_back(input);
    for (const auto& layer : net.layers()) {
        trace.layer_inputs.push_back(layer_forward(layer, trace.layer_inputs.back()));
    }
    return trace;
}

BinaryNetwork init_random(DeterministicRng& rng, std::span<const std::size_t> sizes) {
    if (sizes.size() < 2) throw DimensionError("init_random: need input and output widths");
    for (std::size_t s : sizes) {
        if (s == 0) throw DimensionError("init_random: zero layer width");
    }
    std::vector<BinaryLayer> layers;
    layers.reserve(sizes.size() - 1);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        std::vector<BitVector> rows;
        rows.reserve(sizes[l + 1]);
        for (std::size_t j = 0; j < sizes[l + 1]; ++j) {
            rows.push_back(random_mask(rng, sizes[l], FixedProb::half()));
        }
        layers.emplace_back(std::move(rows));
    }
    return BinaryNetwork(std::move(layers));
}

BinaryNetwork clone_and_flip(const BinaryNetwork& net, DeterministicRng& rng,
                             FixedProb p, const WrongMask* mask) {
    if (mask != nullptr) {
        if (mask->weight_masks.size() != net.depth()) {
            throw DimensionError("clone_and_flip: mask depth mismatch");
        }
        for (std::size_t l = 0; l < net.depth(); ++l) {
            const auto& layer_mask = mask->weight_masks[l];
            if (layer_mask.size() != net.layer(l).out_dim()) {
                throw DimensionError("clone_and_flip: mask row count mismatch");
            }
            for (const auto& row_mask : layer_mask) {
                if (row_mask.size() != net.layer(l).in_dim()) {
                    throw DimensionError("clone_and_flip: mask row width mismatch");
                }
            }
        }
    }
    std::vector<BinaryLayer> layers;
    layers.reserve(net.depth());
    for (std::size_t l = 0; l < net.depth(); ++l) {
        const BinaryLayer& src = net.layer(l);
        std::vector<BitVector> rows;
        rows.reserve(src.out_dim());
        for (std::size_t j = 0; j < src.out_dim(); ++j) {
            if (mask == nullptr) {
                const BitVector flips = random_mask(rng, src.in_dim(), p);
                rows.push_back(xor_bits(src.row(j), flips));
                continue;
            }
            // Draw only for marked candidates, in bit-index order.
            BitVector row = src.row(j);
            auto words = mask->weight_masks[l][j].words();
            for (std::size_t wk = 0; wk < words.size(); ++wk) {
                BitVector::Word w = words[wk];
                while (w != 0) {
                    const std::size_t i =
                        wk * BitVector::kWordBits +
                        static_cast<std::size_t>(std::countr_zero(w));
                    w &= w - 1;
                    if (rng.next_u32() < p.threshold) row.set_bit(i, !row.bit(i));
                }
            }
            rows.push_back(std::move(row));
        }
        layers.emplace_back(std::move(rows));
    }
    return BinaryNetwork(std::move(layers));
}

} // namespace bnn
