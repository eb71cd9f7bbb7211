#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "bnn/bit_vector.hpp"
#include "bnn/errors.hpp"
#include "bnn/fixed_prob.hpp"
#include "bnn/random_mask.hpp"
#include "bnn/rng.hpp"
#include "support/oracles.hpp"

using namespace bnn;

namespace {

bool canonical(const BitVector& v) {
    BitVector copy = v;
    copy.canonicalize();
    return copy == v;
}

BitVector random_vector(DeterministicRng& rng, std::size_t len) {
    return random_mask(rng, len, FixedProb::half());
}

} // namespace

TEST_CASE("from_bits basics") {
    CHECK(BitVector::from_bits({}).size() == 0);
    CHECK(BitVector::from_bits({}).popcount() == 0);

    const std::vector<std::uint8_t> bits = {1, 0, 1, 0};
    const BitVector v = bv_from_bits(bits);
    CHECK(v.size() == 4);
    CHECK(v.popcount() == 2);
    CHECK(v.bit(0));
    CHECK_FALSE(v.bit(1));

    std::vector<std::uint8_t> many(70, 1);
    const BitVector w = bv_from_bits(many);
    CHECK(w.size() == 70);
    CHECK(w.words().size() == 2);
    CHECK(w.popcount() == 70);
    CHECK(canonical(w));
}

TEST_CASE("xnor definition, identity, complement") {
    const BitVector a = BitVector::from_string("1010");
    const BitVector b = BitVector::from_string("1100");
    CHECK(xnor(a, b) == BitVector::from_string("1001"));

    DeterministicRng rng = DeterministicRng::from_seed(11);
    for (std::size_t len : {1u, 17u, 64u, 65u, 200u}) {
        const BitVector v = random_vector(rng, len);
        CHECK(xnor(v, v) == complement(BitVector(len)));
        CHECK(xnor(v, complement(v)) == BitVector(len));
        CHECK(canonical(xnor(v, v)));
    }

    CHECK_THROWS_AS(xnor(a, BitVector(5)), DimensionError);
}

TEST_CASE("popcount examples and multi-word") {
    CHECK(popcount(BitVector::from_string("1001")) == 2);
    CHECK(popcount(BitVector()) == 0);
    BitVector ones(128);
    for (std::size_t i = 0; i < 128; ++i) ones.set_bit(i, true);
    CHECK(popcount(ones) == 128);
}

TEST_CASE("majority_bit: quoted rule, ties to 1") {
    CHECK(majority_bit(BitVector::from_string("101")) == true);
    CHECK(majority_bit(BitVector::from_string("0011")) == true);  // tie
    CHECK(majority_bit(BitVector::from_string("0001")) == false);
    CHECK_THROWS_AS(majority_bit(BitVector()), DimensionError);
}

TEST_CASE("majority_bit equals 2*popcount >= len, exhaustively to len 16") {
    for (std::size_t len = 1; len <= 16; ++len) {
        for (std::uint32_t word = 0; word < (1u << len); ++word) {
            BitVector v(len);
            for (std::size_t i = 0; i < len; ++i) v.set_bit(i, (word >> i) & 1u);
            CHECK(majority_bit(v) == (2 * v.popcount() >= len));
        }
    }
}

TEST_CASE("flip_bit toggles, is an involution, respects bounds") {
    CHECK(flip_bit(BitVector(3), 1) == BitVector::from_string("010"));

    DeterministicRng rng = DeterministicRng::from_seed(5);
    const BitVector v = random_vector(rng, 130);
    for (std::size_t i : {0u, 63u, 64u, 129u}) {
        CHECK(flip_bit(flip_bit(v, i), i) == v);
    }

    BitVector ones(64);
    for (std::size_t i = 0; i < 64; ++i) ones.set_bit(i, true);
    CHECK(flip_bit(ones, 63).popcount() == 63);

    CHECK_THROWS_AS(flip_bit(v, 130), DimensionError);
}

TEST_CASE("popcount word path equals bit loop on random vectors") {
    DeterministicRng rng = DeterministicRng::from_seed(99);
    for (std::size_t len : {1u, 63u, 64u, 65u, 1000u, 10000u}) {
        const BitVector v = random_vector(rng, len);
        CHECK(v.popcount() == oracle::popcount_bit_loop(v));
    }
}

TEST_CASE("xnor/xor popcount identity") {
    DeterministicRng rng = DeterministicRng::from_seed(123);
    for (std::size_t len : {1u, 2u, 64u, 100u, 777u}) {
        const BitVector a = random_vector(rng, len);
        const BitVector b = random_vector(rng, len);
        CHECK(popcount(xnor(a, b)) + popcount(xor_bits(a, b)) == len);
    }
}

TEST_CASE("random_mask: degenerate thresholds and reproducibility") {
    DeterministicRng zero_rng = DeterministicRng::from_seed(42);
    CHECK(random_mask(zero_rng, 500, FixedProb::zero()).popcount() == 0);

    DeterministicRng max_rng = DeterministicRng::from_seed(42);
    CHECK(random_mask(max_rng, 10, FixedProb::max()).popcount() == 10);

    DeterministicRng a = DeterministicRng::derive(7, std::vector<std::uint64_t>{1, 2});
    DeterministicRng b = DeterministicRng::derive(7, std::vector<std::uint64_t>{1, 2});
    const FixedProb p = FixedProb::from_ratio(1, 3);
    CHECK(random_mask(a, 333, p) == random_mask(b, 333, p));
}

TEST_CASE("random_mask at one half: popcount in the binomial window") {
    DeterministicRng rng = DeterministicRng::from_seed(42);
    const BitVector mask = random_mask(rng, 1000, FixedProb::half());
    // 4-sigma window around 500 for Binomial(1000, 1/2) is about +/- 63.
    CHECK(mask.popcount() >= 400);
    CHECK(mask.popcount() <= 600);
    // Frozen from the generator itself; guards the draw discipline.
    CHECK(mask.popcount() == 481);
}

TEST_CASE("random_mask consumes exactly len draws in index order") {
    DeterministicRng a = DeterministicRng::from_seed(17);
    DeterministicRng b = DeterministicRng::from_seed(17);
    (void)random_mask(a, 100, FixedProb::from_ratio(1, 7));
    for (int i = 0; i < 100; ++i) (void)b.next_u32();
    CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("rng derivation: distinct children, determinism, empty path") {
    DeterministicRng c0 = DeterministicRng::from_seed(3).child(0);
    DeterministicRng c1 = DeterministicRng::from_seed(3).child(1);
    CHECK(c0.next_u32() != c1.next_u32());

    const std::vector<std::uint64_t> path = {4, 9, 2};
    DeterministicRng d1 = DeterministicRng::derive(3, path);
    DeterministicRng d2 = DeterministicRng::derive(3, path);
    for (int i = 0; i < 16; ++i) CHECK(d1.next_u64() == d2.next_u64());

    DeterministicRng root = DeterministicRng::derive(3, {});
    DeterministicRng seeded = DeterministicRng::from_seed(3);
    CHECK(root.next_u64() == seeded.next_u64());
}

TEST_CASE("rng draws look uniform per bit position") {
    DeterministicRng rng = DeterministicRng::from_seed(1234);
    std::vector<std::size_t> ones(32, 0);
    const std::size_t draws = 20000;
    for (std::size_t d = 0; d < draws; ++d) {
        const std::uint32_t w = rng.next_u32();
        for (std::size_t b = 0; b < 32; ++b) {
            if ((w >> b) & 1u) ++ones[b];
        }
    }
    for (std::size_t b = 0; b < 32; ++b) {
        // 5 sigma around draws/2 (sigma = sqrt(draws)/2 ~ 70.7)
        CHECK(ones[b] > draws / 2 - 354);
        CHECK(ones[b] < draws / 2 + 354);
    }
}

TEST_CASE("FixedProb from_ratio") {
    CHECK(FixedProb::from_ratio(0, 5).threshold == 0);
    CHECK(FixedProb::from_ratio(1, 2).threshold == 0x80000000u);
    CHECK(FixedProb::from_ratio(1, 100).threshold == 42949672u);  // floor(2^32/100)
    CHECK(FixedProb::from_ratio(5, 5).threshold == 0xFFFFFFFFu);
    CHECK_THROWS_AS(FixedProb::from_ratio(1, 0), ValueError);
    CHECK_THROWS_AS(FixedProb::from_ratio(3, 2), ValueError);
}

TEST_CASE("ops preserve canonical padding") {
    DeterministicRng rng = DeterministicRng::from_seed(8);
    for (std::size_t len : {1u, 63u, 65u, 127u, 129u}) {
        const BitVector a = random_vector(rng, len);
        const BitVector b = random_vector(rng, len);
        CHECK(canonical(xnor(a, b)));
        CHECK(canonical(xor_bits(a, b)));
        CHECK(canonical(and_bits(a, b)));
        CHECK(canonical(complement(a)));
        CHECK(canonical(flip_bit(a, len - 1)));
    }
}
