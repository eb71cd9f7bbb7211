#include "bnn/rng.hpp"

#include "bnn/errors.hpp"

namespace bnn {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
// Hex digits of pi, used as derivation salts.
constexpr std::uint64_t kRootSalt = 0x243F6A8885A308D3ull;
constexpr std::uint64_t kChildSalt = 0x452821E638D01377ull;
} // namespace

std::uint64_t DeterministicRng::mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

DeterministicRng DeterministicRng::from_seed(std::uint64_t seed) {
    return DeterministicRng(mix(seed ^ kRootSalt));
}

DeterministicRng DeterministicRng::derive(std::uint64_t seed,
                                          std::span<const std::uint64_t> labels) {
    DeterministicRng rng = from_seed(seed);
    for (std::uint64_t label : labels) rng = rng.child(label);
    return rng;
}

DeterministicRng DeterministicRng::child(std::uint64_t label) const {
    return DeterministicRng(mix(key_ ^ mix(label + kChildSalt)));
}

std::uint64_t DeterministicRng::next_u64() {
    state_ += kGolden;
    return mix(state_);
}

std::uint64_t DeterministicRng::next_below(std::uint64_t bound) {
    if (bound == 0) throw ValueError("next_below: zero bound");
    const std::uint64_t reject_below = (0 - bound) % bound;
    std::uint64_t r;
    do {
        r = next_u64();
    } while (r < reject_below);
    return r % bound;
}

} // namespace bnn
