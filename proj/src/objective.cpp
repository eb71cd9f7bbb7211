#include "bnn/objective.hpp"

#include <bit>
#include <string>

#include "bnn/errors.hpp"
#include "bnn/parallel.hpp"

namespace bnn {

LabelCodec::LabelCodec(std::size_t classes_, std::size_t bits_per_label_)
    : classes(classes_), bits_per_label(bits_per_label_) {
    if (classes < 2) throw DimensionError("LabelCodec: need at least 2 classes");
    if (bits_per_label < 1) throw DimensionError("LabelCodec: need at least 1 bit per label");
}

Fitness Fitness::from_counts(std::uint64_t correct, std::uint64_t total) {
    if (total == 0) throw DimensionError("Fitness: empty sample set");
    if (correct > total) throw DimensionError("Fitness: correct exceeds total");
    Fitness f;
    f.correct = correct;
    f.total = total;
    f.ppm = static_cast<std::uint32_t>(correct * 1'000'000 / total);
    return f;
}

namespace {

// Popcount of bit range [begin, end) of a canonical vector, word-wise.
std::size_t range_popcount(const BitVector& v, std::size_t begin, std::size_t end) {
    auto words = v.words();
    std::size_t count = 0;
    std::size_t wk = begin / BitVector::kWordBits;
    const std::size_t wend = (end + BitVector::kWordBits - 1) / BitVector::kWordBits;
    for (; wk < wend; ++wk) {
        BitVector::Word w = words[wk];
        const std::size_t word_base = wk * BitVector::kWordBits;
        if (begin > word_base) w &= ~BitVector::Word{0} << (begin - word_base);
        if (end < word_base + BitVector::kWordBits) {
            w &= (BitVector::Word{1} << (end - word_base)) - 1;
        }
        count += static_cast<std::size_t>(std::popcount(w));
    }
    return count;
}

} // namespace

std::size_t predict_class(const BitVector& output, const LabelCodec& codec) {
    if (output.size() != codec.output_width()) {
        throw DimensionError("predict_class: output width " + std::to_string(output.size()) +
                             " != " + std::to_string(codec.output_width()));
    }
    std::size_t best_class = 0;
    std::size_t best_count = range_popcount(output, 0, codec.bits_per_label);
    for (std::size_t c = 1; c < codec.classes; ++c) {
        const std::size_t count =
            range_popcount(output, c * codec.bits_per_label, (c + 1) * codec.bits_per_label);
        if (count > best_count) {
            best_count = count;
            best_class = c;
        }
    }
    return best_class;
}

BitVector target_output(std::size_t label, const LabelCodec& codec) {
    if (label >= codec.classes) {
        throw DimensionError("target_output: label " + std::to_string(label) +
                             " out of range for " + std::to_string(codec.classes) + " classes");
    }
    BitVector out(codec.output_width());
    for (std::size_t i = label * codec.bits_per_label; i < (label + 1) * codec.bits_per_label;
         ++i) {
        out.set_bit(i, true);
    }
    return out;
}

Fitness evaluate_accuracy(const BinaryNetwork& net, std::span<const BitVector> samples,
                          std::span<const std::uint8_t> labels, const LabelCodec& codec,
                          unsigned threads) {
    if (samples.empty()) throw DimensionError("evaluate_accuracy: empty sample set");
    if (samples.size() != labels.size()) {
        throw DimensionError("evaluate_accuracy: samples/labels count mismatch");
    }
    if (net.output_dim() != codec.output_width()) {
        throw DimensionError("evaluate_accuracy: network output width does not match codec");
    }
    auto counts = map_chunks<std::uint64_t>(
        samples.size(), threads, [&](std::size_t begin, std::size_t end) {
            std::uint64_t correct = 0;
            for (std::size_t s = begin; s < end; ++s) {
                const BitVector out = network_forward(net, samples[s]);
                if (predict_class(out, codec) == labels[s]) ++correct;
            }
            return correct;
        });
    std::uint64_t correct = 0;
    for (std::uint64_t c : counts) correct += c;
    return Fitness::from_counts(correct, samples.size());
}

std::uint32_t blend_score(std::uint32_t current_ppm, std::uint32_t ancestor_ppm,
                          FixedProb lambda) {
    const std::uint64_t w_anc = lambda.threshold;
    const std::uint64_t w_cur = (std::uint64_t{1} << 32) - lambda.threshold;
    return static_cast<std::uint32_t>(
        (w_anc * ancestor_ppm + w_cur * current_ppm) >> 32);
}

} // namespace bnn
