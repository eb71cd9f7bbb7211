#ifndef BNN_RNG_HPP
#define BNN_RNG_HPP

#include <cstdint>
#include <span>

namespace bnn {

// Deterministic integer-only random stream with hierarchical derivation.
//
// A stream is identified by a 64-bit key derived from (seed, label path).
// Draws walk a SplitMix64 sequence: state += 0x9E3779B97F4A7C15 per draw,
// output = finalizer(state) with the 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB
// constants. Identical (seed, path) gives an identical byte sequence on
// every platform; distinct paths give independent streams. These constants
// are frozen for the lifetime of the model/metrics formats.
class DeterministicRng {
public:
    static DeterministicRng from_seed(std::uint64_t seed);
    static DeterministicRng derive(std::uint64_t seed,
                                   std::span<const std::uint64_t> labels);

    // Child stream for one more path label; independent of draws made so far.
    DeterministicRng child(std::uint64_t label) const;

    std::uint64_t next_u64();
    std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64() >> 32); }

    // Uniform in [0, bound), bound >= 1, by rejection (no modulo bias).
    std::uint64_t next_below(std::uint64_t bound);

    // SplitMix64 finalizer, exposed for key derivation tests.
    static std::uint64_t mix(std::uint64_t z);

private:
    explicit DeterministicRng(std::uint64_t key) : key_(key), state_(key) {}

    std::uint64_t key_;
    std::uint64_t state_;
};

} // namespace bnn

#endif
