#include "bnn/evolvers.hpp"

#include <algorithm>
#include <bit>

#include "bnn/errors.hpp"
#include "bnn/parallel.hpp"

namespace bnn {

BinaryNetwork naive_step(const BinaryNetwork& net, DeterministicRng& rng, FixedProb p,
                         std::span<const BitVector> fit_samples,
                         std::span<const std::uint8_t> fit_labels, const LabelCodec& codec,
                         unsigned threads, StepStats* stats) {
    DeterministicRng child_rng = rng.child(0);
    BinaryNetwork mutant = clone_and_flip(net, child_rng, p);
    const Fitness parent_fit = evaluate_accuracy(net, fit_samples, fit_labels, codec, threads);
    const Fitness mutant_fit =
        evaluate_accuracy(mutant, fit_samples, fit_labels, codec, threads);
    const bool keep_original = parent_fit.correct > mutant_fit.correct;
    if (stats != nullptr) {
        stats->sample_evals += 2 * fit_samples.size();
        stats->accepted_ppm = keep_original ? parent_fit.ppm : mutant_fit.ppm;
    }
    return keep_original ? net : mutant;
}

std::vector<ScoredNetwork> elite_step(const std::vector<ScoredNetwork>& elite,
                                      DeterministicRng& rng, const EvolverConfig& config,
                                      std::span<const BitVector> fit_samples,
                                      std::span<const std::uint8_t> fit_labels,
                                      const LabelCodec& codec, unsigned threads,
                                      StepStats* stats) {
    if (elite.empty()) throw DimensionError("elite_step: empty elite");
    if (config.children < 1) throw DimensionError("elite_step: children must be >= 1");
    const std::size_t pool_size =
        elite.size() * config.children + (config.keep_parent ? elite.size() : 0);
    if (pool_size < config.elite_size) {
        throw DimensionError("elite_step: candidate pool smaller than elite_size");
    }

    struct Candidate {
        ScoredNetwork scored;
        std::size_t parent_idx;
        std::size_t child_idx;  // config.children marks the parent itself
    };

    // Pre-derive one stream per child so construction order is free.
    struct ChildSlot {
        std::size_t parent_idx;
        std::size_t child_idx;
        DeterministicRng rng;
    };
    std::vector<ChildSlot> slots;
    slots.reserve(elite.size() * config.children);
    for (std::size_t pi = 0; pi < elite.size(); ++pi) {
        DeterministicRng parent_rng = rng.child(pi);
        for (std::size_t ci = 0; ci < config.children; ++ci) {
            slots.push_back({pi, ci, parent_rng.child(ci)});
        }
    }

    auto chunks = map_chunks<std::vector<Candidate>>(
        slots.size(), threads, [&](std::size_t begin, std::size_t end) {
            std::vector<Candidate> out;
            out.reserve(end - begin);
            for (std::size_t s = begin; s < end; ++s) {
                ChildSlot& slot = slots[s];
                BinaryNetwork child_net =
                    clone_and_flip(elite[slot.parent_idx].net, slot.rng, config.p);
                const Fitness fit =
                    evaluate_accuracy(child_net, fit_samples, fit_labels, codec, 1);
                const std::uint32_t lineage =
                    blend_score(fit.ppm, elite[slot.parent_idx].lineage_ppm, config.lambda);
                out.push_back({ScoredNetwork{std::move(child_net), fit.ppm, lineage},
                               slot.parent_idx, slot.child_idx});
            }
            return out;
        });

    std::vector<Candidate> pool;
    pool.reserve(pool_size);
    for (auto& chunk : chunks) {
        for (auto& c : chunk) pool.push_back(std::move(c));
    }
    if (config.keep_parent) {
        for (std::size_t pi = 0; pi < elite.size(); ++pi) {
            pool.push_back({elite[pi], pi, config.children});
        }
    }

    std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
        if (a.scored.lineage_ppm != b.scored.lineage_ppm) {
            return a.scored.lineage_ppm > b.scored.lineage_ppm;
        }
        if (a.parent_idx != b.parent_idx) return a.parent_idx < b.parent_idx;
        return a.child_idx < b.child_idx;
    });

    if (stats != nullptr) {
        stats->sample_evals += elite.size() * config.children * fit_samples.size();
        stats->accepted_ppm = pool.front().scored.current_ppm;
    }

    std::vector<ScoredNetwork> next;
    next.reserve(config.elite_size);
    for (std::size_t i = 0; i < config.elite_size; ++i) {
        next.push_back(std::move(pool[i].scored));
    }
    return next;
}

namespace {

using Word = BitVector::Word;
constexpr std::size_t kWordBits = BitVector::kWordBits;

// Sample-sliced bit columns: column i holds one bit per batch sample.
struct SampleColumns {
    std::size_t sample_words;
    std::vector<Word> data;  // column-major, sample_words words per column

    SampleColumns(std::size_t columns, std::size_t batch)
        : sample_words((batch + kWordBits - 1) / kWordBits),
          data(columns * sample_words, 0) {}

    Word* col(std::size_t i) { return data.data() + i * sample_words; }
    const Word* col(std::size_t i) const { return data.data() + i * sample_words; }

    void set(std::size_t i, std::size_t sample) {
        col(i)[sample / kWordBits] |= Word{1} << (sample % kWordBits);
    }
};

std::size_t count_words(const Word* a, std::size_t n) {
    std::size_t c = 0;
    for (std::size_t k = 0; k < n; ++k) c += static_cast<std::size_t>(std::popcount(a[k]));
    return c;
}

} // namespace

WrongMask mark_wrong(const BinaryNetwork& net, std::span<const BitVector> batch_samples,
                     std::span<const std::uint8_t> batch_labels, const LabelCodec& codec) {
    const std::size_t batch = batch_samples.size();
    if (batch == 0) throw DimensionError("mark_wrong: empty batch");
    if (batch_labels.size() != batch) {
        throw DimensionError("mark_wrong: samples/labels count mismatch");
    }
    if (net.output_dim() != codec.output_width()) {
        throw DimensionError("mark_wrong: network output width does not match codec");
    }
    const std::size_t depth = net.depth();
    const std::size_t threshold = (batch + 1) / 2;  // ceil(B/2)
    const std::size_t sample_words = (batch + kWordBits - 1) / kWordBits;

    // Per-layer activations, sliced per sample position: columns[l] covers
    // layer l's input nodes, columns[depth] the final output bits.
    std::vector<SampleColumns> columns;
    columns.reserve(depth + 1);
    for (std::size_t l = 0; l < depth; ++l) {
        columns.emplace_back(net.layer(l).in_dim(), batch);
    }
    columns.emplace_back(net.output_dim(), batch);

    for (std::size_t s = 0; s < batch; ++s) {
        const ForwardTrace trace = network_forward_traced(net, batch_samples[s]);
        for (std::size_t l = 0; l <= depth; ++l) {
            const BitVector& v = trace.layer_inputs[l];
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v.bit(i)) columns[l].set(i, s);
            }
        }
    }

    // Which samples carry each class, for target bits of the last layer.
    SampleColumns class_cols(codec.classes, batch);
    for (std::size_t s = 0; s < batch; ++s) {
        if (batch_labels[s] >= codec.classes) {
            throw DimensionError("mark_wrong: label out of range");
        }
        class_cols.set(batch_labels[s], s);
    }

    WrongMask mask;
    mask.weight_masks.resize(depth);
    mask.node_masks.resize(depth);

    // Carried downward: wrongness of the layer's output bits, and the sample
    // set each wrong bit is counted over (missed samples for the last layer,
    // every sample once a node inherits wrongness).
    std::vector<bool> wrong_out;
    std::vector<Word> wrong_sample_words;  // out_dim x sample_words

    for (std::size_t l = depth; l-- > 0;) {
        const BinaryLayer& layer = net.layer(l);
        const std::size_t out_dim = layer.out_dim();
        const std::size_t in_dim = layer.in_dim();
        const SampleColumns& in_cols = columns[l];
        const SampleColumns& out_cols = columns[l + 1];

        if (l == depth - 1) {
            wrong_out.assign(out_dim, false);
            wrong_sample_words.assign(out_dim * sample_words, 0);
            for (std::size_t j = 0; j < out_dim; ++j) {
                const Word* produced = out_cols.col(j);
                const Word* target = class_cols.col(j / codec.bits_per_label);
                Word* missed = wrong_sample_words.data() + j * sample_words;
                for (std::size_t w = 0; w < sample_words; ++w) {
                    missed[w] = produced[w] ^ target[w];
                }
                wrong_out[j] = count_words(missed, sample_words) >= threshold;
            }
        }

        mask.weight_masks[l].assign(out_dim, BitVector(in_dim));
        std::vector<std::size_t> column_marks(in_dim, 0);
        std::vector<Word> match(sample_words);
        for (std::size_t j = 0; j < out_dim; ++j) {
            if (!wrong_out[j]) continue;
            const BitVector& row = layer.row(j);
            const Word* produced = out_cols.col(j);
            const Word* counted = wrong_sample_words.data() + j * sample_words;
            BitVector& row_mask = mask.weight_masks[l][j];
            for (std::size_t i = 0; i < in_dim; ++i) {
                // vote(j,i,s) = w XNOR x, so vote == produced reduces to
                // (x ^ produced) ^ w over the counted samples.
                const Word invert = row.bit(i) ? ~Word{0} : Word{0};
                const Word* input = in_cols.col(i);
                for (std::size_t w = 0; w < sample_words; ++w) {
                    match[w] = ((input[w] ^ produced[w]) ^ invert) & counted[w];
                }
                if (count_words(match.data(), sample_words) >= threshold) {
                    row_mask.set_bit(i, true);
                    ++column_marks[i];
                }
            }
        }

        mask.node_masks[l] = BitVector(in_dim);
        for (std::size_t i = 0; i < in_dim; ++i) {
            if (2 * column_marks[i] > out_dim) mask.node_masks[l].set_bit(i, true);
        }

        if (l > 0) {
            // Wrong input nodes become the wrong output bits one layer down;
            // every batch sample counts, with the produced value as the
            // "wrong" value.
            wrong_out.assign(in_dim, false);
            wrong_sample_words.assign(in_dim * sample_words, 0);
            Word all = ~Word{0};
            for (std::size_t i = 0; i < in_dim; ++i) {
                if (!mask.node_masks[l].bit(i)) continue;
                wrong_out[i] = true;
                Word* counted = wrong_sample_words.data() + i * sample_words;
                for (std::size_t w = 0; w < sample_words; ++w) {
                    const bool last = (w + 1 == sample_words);
                    const std::size_t tail = batch % kWordBits;
                    counted[w] = (last && tail != 0) ? (Word{1} << tail) - 1 : all;
                }
            }
        }
    }
    return mask;
}

BinaryNetwork counting_error_step(const BinaryNetwork& net, DeterministicRng& rng,
                                  const EvolverConfig& config,
                                  std::span<const BitVector> batch_samples,
                                  std::span<const std::uint8_t> batch_labels,
                                  const LabelCodec& codec, unsigned threads,
                                  StepStats* stats) {
    if (config.children < 1) throw DimensionError("counting_error_step: children must be >= 1");
    const WrongMask mask = mark_wrong(net, batch_samples, batch_labels, codec);

    struct Scored {
        BinaryNetwork net;
        Fitness fit;
    };
    std::vector<DeterministicRng> child_rngs;
    child_rngs.reserve(config.children);
    for (std::size_t ci = 0; ci < config.children; ++ci) child_rngs.push_back(rng.child(ci));

    auto chunks = map_chunks<std::vector<Scored>>(
        config.children, threads, [&](std::size_t begin, std::size_t end) {
            std::vector<Scored> out;
            out.reserve(end - begin);
            for (std::size_t ci = begin; ci < end; ++ci) {
                BinaryNetwork child = clone_and_flip(net, child_rngs[ci], config.p, &mask);
                Fitness fit =
                    evaluate_accuracy(child, batch_samples, batch_labels, codec, 1);
                out.push_back({std::move(child), fit});
            }
            return out;
        });

    // Best by batch correctness; on ties the earliest child wins and the
    // parent, when pooled, loses.
    const Scored* best = nullptr;
    for (const auto& chunk : chunks) {
        for (const auto& cand : chunk) {
            if (best == nullptr || cand.fit.correct > best->fit.correct) best = &cand;
        }
    }
    std::uint64_t evals = batch_samples.size() * (1 + config.children);  // trace + children
    Fitness parent_fit;
    bool parent_wins = false;
    if (config.keep_parent) {
        parent_fit = evaluate_accuracy(net, batch_samples, batch_labels, codec, threads);
        evals += batch_samples.size();
        parent_wins = parent_fit.correct > best->fit.correct;
    }
    if (stats != nullptr) {
        stats->sample_evals += evals;
        stats->accepted_ppm = parent_wins ? parent_fit.ppm : best->fit.ppm;
    }
    return parent_wins ? net : best->net;
}

} // namespace bnn
