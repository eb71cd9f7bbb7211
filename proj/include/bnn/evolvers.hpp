#ifndef BNN_EVOLVERS_HPP
#define BNN_EVOLVERS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bnn/fixed_prob.hpp"
#include "bnn/network.hpp"
#include "bnn/objective.hpp"
#include "bnn/rng.hpp"
#include "bnn/schedule.hpp"
#include "bnn/wrong_mask.hpp"

namespace bnn {

enum class Algorithm { naive, elite, counting };

struct EvolverConfig {
    Algorithm algorithm = Algorithm::counting;
    FixedProb p = FixedProb::from_ratio(1, 128);
    std::size_t children = 10;
    std::size_t elite_size = 10;
    FixedProb lambda = FixedProb::from_ratio(1, 4);
    std::size_t batch_size = 64;
    bool keep_parent = false;
    std::optional<CosineSchedule> schedule;
};

// Work accounting for the metrics log.
struct StepStats {
    std::uint64_t sample_evals = 0;  // single-sample forward passes consumed
    std::uint32_t accepted_ppm = 0;  // winner's accuracy on the step's own eval set
};

// One perturb-and-compare step: flips every weight of a clone with
// probability p and keeps the original only if it scores strictly better.
// A tie goes to the mutant.
BinaryNetwork naive_step(const BinaryNetwork& net, DeterministicRng& rng, FixedProb p,
                         std::span<const BitVector> fit_samples,
                         std::span<const std::uint8_t> fit_labels, const LabelCodec& codec,
                         unsigned threads = 1, StepStats* stats = nullptr);

// One elite-selection generation: every member spawns config.children
// mutants, children inherit a lineage score blended from their own accuracy
// and the parent's lineage, and the pool (children, plus parents when
// keep_parent) is cut to the top elite_size by lineage score. Equal scores
// resolve by (parent order, child index); a parent sorts after its children.
std::vector<ScoredNetwork> elite_step(const std::vector<ScoredNetwork>& elite,
                                      DeterministicRng& rng, const EvolverConfig& config,
                                      std::span<const BitVector> fit_samples,
                                      std::span<const std::uint8_t> fit_labels,
                                      const LabelCodec& codec, unsigned threads = 1,
                                      StepStats* stats = nullptr);

// Backward counting attribution over one batch. An output bit is wrong when
// it misses its target bit in at least ceil(B/2) samples; a weight is wrong
// when its output bit is wrong and its XNOR vote backed the produced value
// in at least ceil(B/2) samples; an input node is wrong when strictly more
// than half of its incident weights are wrong. Wrong input nodes replay the
// same rules one layer down, with the node's produced value standing in for
// the missed target.
WrongMask mark_wrong(const BinaryNetwork& net, std::span<const BitVector> batch_samples,
                     std::span<const std::uint8_t> batch_labels, const LabelCodec& codec);

// One counting-error step: mutate only wrong-marked weights in each of
// config.children clones, score everything on the batch, return the best.
// Equal scores resolve by child index; the parent (included only with
// keep_parent) loses ties.
BinaryNetwork counting_error_step(const BinaryNetwork& net, DeterministicRng& rng,
                                  const EvolverConfig& config,
                                  std::span<const BitVector> batch_samples,
                                  std::span<const std::uint8_t> batch_labels,
                                  const LabelCodec& codec, unsigned threads = 1,
                                  StepStats* stats = nullptr);

} // namespace bnn

#endif
