#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bnn/errors.hpp"
#include "bnn/evolvers.hpp"
#include "bnn/random_mask.hpp"
#include "support/oracles.hpp"

using namespace bnn;

namespace {

BitVector random_vector(DeterministicRng& rng, std::size_t len) {
    return random_mask(rng, len, FixedProb::half());
}

struct Instance {
    BinaryNetwork net;
    std::vector<BitVector> samples;
    std::vector<std::uint8_t> labels;
    LabelCodec codec;
};

// depth <= 3, widths <= 8, batch <= 8, C = 2, k in {1,2,3}
Instance random_instance(DeterministicRng& rng) {
    const std::size_t k = 1 + rng.next_below(3);
    const std::size_t depth = 1 + rng.next_below(3);
    std::vector<std::size_t> sizes;
    sizes.push_back(1 + rng.next_below(8));
    for (std::size_t l = 1; l < depth; ++l) sizes.push_back(1 + rng.next_below(8));
    sizes.push_back(2 * k);
    DeterministicRng init_rng = rng.child(1000);
    BinaryNetwork net = init_random(init_rng, sizes);
    const std::size_t batch = 1 + rng.next_below(8);
    std::vector<BitVector> samples;
    std::vector<std::uint8_t> labels;
    for (std::size_t s = 0; s < batch; ++s) {
        samples.push_back(random_vector(rng, sizes.front()));
        labels.push_back(static_cast<std::uint8_t>(rng.next_below(2)));
    }
    return {std::move(net), std::move(samples), std::move(labels), LabelCodec(2, k)};
}

// x -> (x, ~x) with C=2, k=1: bit-perfect on samples labeled by the input bit.
Instance perfect_instance() {
    BitVector one(1), zero(1);
    one.set_bit(0, true);
    const BinaryNetwork net({BinaryLayer({one, zero})});
    std::vector<BitVector> samples = {one, zero, one, zero};
    std::vector<std::uint8_t> labels = {0, 1, 0, 1};
    return {net, std::move(samples), std::move(labels), LabelCodec(2, 1)};
}

bool mask_empty(const WrongMask& m) {
    if (m.any_weight_marked()) return false;
    for (const auto& nodes : m.node_masks) {
        if (nodes.popcount() != 0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("naive_step: zero flip probability returns the mutant (a tie)") {
    Instance inst = perfect_instance();
    DeterministicRng rng = DeterministicRng::from_seed(60);
    StepStats stats;
    const BinaryNetwork out = naive_step(inst.net, rng, FixedProb::zero(), inst.samples,
                                         inst.labels, inst.codec, 1, &stats);
    CHECK(out == inst.net);  // identical bits, so returning the mutant is invisible...
    CHECK(stats.accepted_ppm == 1'000'000);  // ...but the tie went to the mutant's score
    CHECK(stats.sample_evals == 2 * inst.samples.size());
}

TEST_CASE("naive_step: accepted fitness never strictly decreases over 100 steps") {
    DeterministicRng setup = DeterministicRng::from_seed(61);
    const std::vector<std::size_t> sizes = {12, 8, 4};
    DeterministicRng init_rng = setup.child(0);
    BinaryNetwork net = init_random(init_rng, sizes);
    const LabelCodec codec(2, 2);
    std::vector<BitVector> samples;
    std::vector<std::uint8_t> labels;
    for (int s = 0; s < 64; ++s) {
        samples.push_back(random_vector(setup, 12));
        labels.push_back(static_cast<std::uint8_t>(setup.next_below(2)));
    }
    const FixedProb p = FixedProb::from_ratio(1, 32);
    std::uint32_t last = 0;
    for (std::uint64_t step = 0; step < 100; ++step) {
        DeterministicRng step_rng = DeterministicRng::from_seed(61).child(3).child(step);
        StepStats stats;
        net = naive_step(net, step_rng, p, samples, labels, codec, 1, &stats);
        if (step > 0) CHECK(stats.accepted_ppm >= last);
        last = stats.accepted_ppm;
    }
}

TEST_CASE("naive_step is deterministic per rng path") {
    Instance inst = perfect_instance();
    const FixedProb p = FixedProb::from_ratio(1, 2);
    DeterministicRng r1 = DeterministicRng::from_seed(62);
    DeterministicRng r2 = DeterministicRng::from_seed(62);
    CHECK(naive_step(inst.net, r1, p, inst.samples, inst.labels, inst.codec) ==
          naive_step(inst.net, r2, p, inst.samples, inst.labels, inst.codec));
}

TEST_CASE("elite_step: pool of one child is returned regardless of quality") {
    Instance inst = perfect_instance();
    const Fitness parent_fit =
        evaluate_accuracy(inst.net, inst.samples, inst.labels, inst.codec);
    CHECK(parent_fit.ppm == 1'000'000);

    EvolverConfig config;
    config.p = FixedProb::half();  // heavy mutation, children almost surely worse
    config.children = 1;
    config.elite_size = 1;
    config.keep_parent = false;
    config.lambda = FixedProb::zero();

    std::vector<ScoredNetwork> elite = {{inst.net, parent_fit.ppm, parent_fit.ppm}};
    DeterministicRng rng = DeterministicRng::from_seed(63);
    const auto next =
        elite_step(elite, rng, config, inst.samples, inst.labels, inst.codec);
    REQUIRE(next.size() == 1);

    // The lone child is exactly what the derivation path [0][0] produces.
    DeterministicRng expect_rng = DeterministicRng::from_seed(63).child(0).child(0);
    const BinaryNetwork expected = clone_and_flip(inst.net, expect_rng, config.p);
    CHECK(next.front().net == expected);
}

TEST_CASE("elite_step: keep_parent with lambda 0 lets perfect parents survive") {
    Instance inst = perfect_instance();
    EvolverConfig config;
    config.p = FixedProb::half();
    config.children = 3;
    config.elite_size = 1;
    config.keep_parent = true;
    config.lambda = FixedProb::zero();

    std::vector<ScoredNetwork> elite = {{inst.net, 1'000'000, 1'000'000}};
    DeterministicRng rng = DeterministicRng::from_seed(64);
    const auto next =
        elite_step(elite, rng, config, inst.samples, inst.labels, inst.codec);
    REQUIRE(next.size() == 1);
    // A tying child would win; survival means every child scored worse.
    CHECK(next.front().net == inst.net);
    CHECK(next.front().current_ppm == 1'000'000);
}

TEST_CASE("elite_step ranking matches independent recomputation") {
    DeterministicRng setup = DeterministicRng::from_seed(65);
    const std::vector<std::size_t> sizes = {10, 6, 4};
    const LabelCodec codec(2, 2);
    std::vector<BitVector> samples;
    std::vector<std::uint8_t> labels;
    for (int s = 0; s < 48; ++s) {
        samples.push_back(random_vector(setup, 10));
        labels.push_back(static_cast<std::uint8_t>(setup.next_below(2)));
    }
    std::vector<ScoredNetwork> elite;
    for (std::size_t i = 0; i < 3; ++i) {
        DeterministicRng ir = setup.child(i);
        BinaryNetwork net = init_random(ir, sizes);
        const Fitness fit = evaluate_accuracy(net, samples, labels, codec);
        elite.push_back({std::move(net), fit.ppm, fit.ppm});
    }

    EvolverConfig config;
    config.p = FixedProb::from_ratio(1, 16);
    config.children = 4;
    config.elite_size = 5;
    config.lambda = FixedProb::from_ratio(1, 4);
    config.keep_parent = false;

    DeterministicRng rng = DeterministicRng::from_seed(66);
    const auto next = elite_step(elite, rng, config, samples, labels, codec);
    REQUIRE(next.size() == config.elite_size);

    // Rebuild every candidate independently, blend, sort, compare.
    struct Cand {
        BinaryNetwork net;
        std::uint32_t lineage;
        std::size_t pi, ci;
    };
    std::vector<Cand> pool;
    for (std::size_t pi = 0; pi < elite.size(); ++pi) {
        for (std::size_t ci = 0; ci < config.children; ++ci) {
            DeterministicRng cr = DeterministicRng::from_seed(66).child(pi).child(ci);
            BinaryNetwork child = clone_and_flip(elite[pi].net, cr, config.p);
            const Fitness fit = evaluate_accuracy(child, samples, labels, codec);
            pool.push_back(
                {std::move(child), blend_score(fit.ppm, elite[pi].lineage_ppm, config.lambda),
                 pi, ci});
        }
    }
    std::sort(pool.begin(), pool.end(), [](const Cand& a, const Cand& b) {
        if (a.lineage != b.lineage) return a.lineage > b.lineage;
        if (a.pi != b.pi) return a.pi < b.pi;
        return a.ci < b.ci;
    });
    for (std::size_t i = 0; i < next.size(); ++i) {
        CHECK(next[i].net == pool[i].net);
        CHECK(next[i].lineage_ppm == pool[i].lineage);
    }
}

TEST_CASE("elite_step rejects an empty elite and undersized pools") {
    Instance inst = perfect_instance();
    EvolverConfig config;
    config.children = 1;
    config.elite_size = 3;
    DeterministicRng rng = DeterministicRng::from_seed(67);
    CHECK_THROWS_AS(elite_step({}, rng, config, inst.samples, inst.labels, inst.codec),
                    DimensionError);
    std::vector<ScoredNetwork> elite = {{inst.net, 0, 0}};
    CHECK_THROWS_AS(elite_step(elite, rng, config, inst.samples, inst.labels, inst.codec),
                    DimensionError);
}

TEST_CASE("mark_wrong: bit-perfect net yields an empty mask") {
    Instance inst = perfect_instance();
    const WrongMask mask = mark_wrong(inst.net, inst.samples, inst.labels, inst.codec);
    CHECK(mask_empty(mask));
}

TEST_CASE("mark_wrong: hand-enumerated two-sample trace marks the voting weights") {
    // Rows 11 and 00 over input 00: produced is (0,1); both samples are
    // labeled 0, so the target is (1,0) and both output bits miss twice.
    // Every weight's vote equals its produced bit in both samples, so all
    // four weights are marked, and then both input nodes.
    BitVector row0 = BitVector::from_string("11");
    BitVector row1 = BitVector::from_string("00");
    const BinaryNetwork net({BinaryLayer({row0, row1})});
    const LabelCodec codec(2, 1);
    const std::vector<BitVector> samples = {BitVector(2), BitVector(2)};
    const std::vector<std::uint8_t> labels = {0, 0};

    const WrongMask mask = mark_wrong(net, samples, labels, codec);
    CHECK(mask.weight_masks[0][0] == BitVector::from_string("11"));
    CHECK(mask.weight_masks[0][1] == BitVector::from_string("11"));
    CHECK(mask.node_masks[0] == BitVector::from_string("11"));

    // Flip one sample's label to 1: bit 0 still misses once = ceil(2/2), bit
    // 1 misses once; the same marks stay (threshold is met exactly).
    const std::vector<std::uint8_t> mixed = {0, 1};
    const WrongMask mask2 = mark_wrong(net, samples, mixed, codec);
    CHECK(mask2.weight_masks[0][0] == BitVector::from_string("11"));

    CHECK(oracle::masks_equal(mask, oracle::mark_wrong_reference(net, samples, labels, codec)));
}

TEST_CASE("mark_wrong agrees with the nested-loop reference on random instances") {
    DeterministicRng rng = DeterministicRng::from_seed(70);
    for (int rep = 0; rep < 150; ++rep) {
        DeterministicRng inst_rng = rng.child(rep);
        Instance inst = random_instance(inst_rng);
        const WrongMask fast = mark_wrong(inst.net, inst.samples, inst.labels, inst.codec);
        const WrongMask slow =
            oracle::mark_wrong_reference(inst.net, inst.samples, inst.labels, inst.codec);
        REQUIRE(oracle::masks_equal(fast, slow));
    }
}

TEST_CASE("mark_wrong covers batches wider than one sample word") {
    DeterministicRng rng = DeterministicRng::from_seed(71);
    const std::vector<std::size_t> sizes = {9, 5, 4};
    DeterministicRng ir = rng.child(0);
    const BinaryNetwork net = init_random(ir, sizes);
    const LabelCodec codec(2, 2);
    std::vector<BitVector> samples;
    std::vector<std::uint8_t> labels;
    for (int s = 0; s < 131; ++s) {  // three sample words, ragged tail
        samples.push_back(random_vector(rng, 9));
        labels.push_back(static_cast<std::uint8_t>(rng.next_below(2)));
    }
    const WrongMask fast = mark_wrong(net, samples, labels, codec);
    const WrongMask slow = oracle::mark_wrong_reference(net, samples, labels, codec);
    CHECK(oracle::masks_equal(fast, slow));
}

TEST_CASE("counting_error_step: empty mask returns a parent-equivalent network") {
    Instance inst = perfect_instance();
    EvolverConfig config;
    config.p = FixedProb::max();
    config.children = 3;
    DeterministicRng rng = DeterministicRng::from_seed(72);
    const BinaryNetwork out = counting_error_step(inst.net, rng, config, inst.samples,
                                                  inst.labels, inst.codec);
    CHECK(out == inst.net);
}

TEST_CASE("counting_error_step: lone child returned even when worse") {
    DeterministicRng setup = DeterministicRng::from_seed(73);
    Instance inst = random_instance(setup);
    EvolverConfig config;
    config.p = FixedProb::max();
    config.children = 1;
    config.keep_parent = false;

    DeterministicRng rng = DeterministicRng::from_seed(74);
    const BinaryNetwork out = counting_error_step(inst.net, rng, config, inst.samples,
                                                  inst.labels, inst.codec);
    const WrongMask mask = mark_wrong(inst.net, inst.samples, inst.labels, inst.codec);
    DeterministicRng expect_rng = DeterministicRng::from_seed(74).child(0);
    const BinaryNetwork expected = clone_and_flip(inst.net, expect_rng, config.p, &mask);
    CHECK(out == expected);
}

TEST_CASE("counting_error_step: keep_parent bounds the returned batch fitness") {
    DeterministicRng rng = DeterministicRng::from_seed(75);
    for (int rep = 0; rep < 25; ++rep) {
        DeterministicRng inst_rng = rng.child(rep);
        Instance inst = random_instance(inst_rng);
        EvolverConfig config;
        config.p = FixedProb::from_ratio(1, 4);
        config.children = 3;
        config.keep_parent = true;
        DeterministicRng step_rng = inst_rng.child(5000);
        const BinaryNetwork out = counting_error_step(inst.net, step_rng, config, inst.samples,
                                                      inst.labels, inst.codec);
        const Fitness parent = evaluate_accuracy(inst.net, inst.samples, inst.labels, inst.codec);
        const Fitness chosen = evaluate_accuracy(out, inst.samples, inst.labels, inst.codec);
        CHECK(chosen.correct >= parent.correct);
    }
}

TEST_CASE("counting_error_step never flips a weight outside the mask") {
    DeterministicRng rng = DeterministicRng::from_seed(76);
    for (int rep = 0; rep < 25; ++rep) {
        DeterministicRng inst_rng = rng.child(rep);
        Instance inst = random_instance(inst_rng);
        EvolverConfig config;
        config.p = FixedProb::max();
        config.children = 2;
        const WrongMask mask = mark_wrong(inst.net, inst.samples, inst.labels, inst.codec);
        DeterministicRng step_rng = inst_rng.child(6000);
        const BinaryNetwork out = counting_error_step(inst.net, step_rng, config, inst.samples,
                                                      inst.labels, inst.codec);
        for (std::size_t l = 0; l < inst.net.depth(); ++l) {
            for (std::size_t j = 0; j < inst.net.layer(l).out_dim(); ++j) {
                const BitVector diff = xor_bits(inst.net.layer(l).row(j), out.layer(l).row(j));
                CHECK(and_bits(diff, complement(mask.weight_masks[l][j])).popcount() == 0);
            }
        }
    }
}

TEST_CASE("steps are identical across thread counts") {
    DeterministicRng setup = DeterministicRng::from_seed(77);
    Instance inst = random_instance(setup);
    EvolverConfig config;
    config.p = FixedProb::from_ratio(1, 8);
    config.children = 5;
    config.elite_size = 2;

    DeterministicRng r1 = DeterministicRng::from_seed(78);
    DeterministicRng r4 = DeterministicRng::from_seed(78);
    CHECK(counting_error_step(inst.net, r1, config, inst.samples, inst.labels, inst.codec, 1) ==
          counting_error_step(inst.net, r4, config, inst.samples, inst.labels, inst.codec, 4));

    const Fitness fit = evaluate_accuracy(inst.net, inst.samples, inst.labels, inst.codec);
    std::vector<ScoredNetwork> elite = {{inst.net, fit.ppm, fit.ppm},
                                        {inst.net, fit.ppm, fit.ppm}};
    DeterministicRng e1 = DeterministicRng::from_seed(79);
    DeterministicRng e4 = DeterministicRng::from_seed(79);
    const auto a = elite_step(elite, e1, config, inst.samples, inst.labels, inst.codec, 1);
    const auto b = elite_step(elite, e4, config, inst.samples, inst.labels, inst.codec, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].net == b[i].net);
        CHECK(a[i].lineage_ppm == b[i].lineage_ppm);
    }
}

TEST_CASE("flip_schedule: exact endpoints, wraparound, monotone within a period") {
    const FixedProb p_min = FixedProb::from_ratio(1, 1024);
    const FixedProb p_max = FixedProb::from_ratio(1, 16);

    CHECK(cosine_flip_prob(0, 500, p_min, p_max) == p_max);
    CHECK(cosine_flip_prob(500, 500, p_min, p_max) == p_min);

    const CosineSchedule sched{p_min, p_max, 500};
    CHECK(flip_schedule(0, sched) == p_max);
    CHECK(flip_schedule(500, sched) == p_max);   // warm restart
    CHECK(flip_schedule(1500, sched) == p_max);  // every period

    for (std::uint64_t t_i : {4ull, 497ull, 500ull}) {
        std::uint32_t last = 0xFFFFFFFFu;
        for (std::uint64_t t = 0; t <= t_i; ++t) {
            const FixedProb p = cosine_flip_prob(t, t_i, p_min, p_max);
            CHECK(p.threshold <= last);
            CHECK(p.threshold >= p_min.threshold);
            CHECK(p.threshold <= p_max.threshold);
            last = p.threshold;
        }
    }

    CHECK_THROWS_AS(flip_schedule(3, CosineSchedule{p_min, p_max, 0}), ValueError);
}

TEST_CASE("flip_schedule tracks the real cosine closely") {
    const FixedProb p_min{0};
    const FixedProb p_max{0xFFFFFFFFu};
    const std::uint64_t t_i = 997;
    for (std::uint64_t t = 0; t <= t_i; ++t) {
        const double exact =
            (1.0 + std::cos(M_PI * static_cast<double>(t) / static_cast<double>(t_i))) / 2.0;
        const double got =
            static_cast<double>(cosine_flip_prob(t, t_i, p_min, p_max).threshold) / 4294967296.0;
        CHECK(std::abs(got - exact) < 1e-4);
    }
}
