#include "bnn/bench.hpp"

#include <chrono>
#include <vector>

#include "bnn/errors.hpp"
#include "bnn/network.hpp"
#include "bnn/random_mask.hpp"

namespace bnn {

namespace {

// One weight per byte, the layout a straightforward port would use.
struct ByteLayer {
    std::size_t out_dim;
    std::size_t in_dim;
    std::vector<std::uint8_t> weights;  // out_dim * in_dim, values 0/1

    std::vector<std::uint8_t> forward(const std::vector<std::uint8_t>& input) const {
        std::vector<std::uint8_t> out(out_dim);
        for (std::size_t j = 0; j < out_dim; ++j) {
            const std::uint8_t* row = weights.data() + j * in_dim;
            std::size_t agree = 0;
            for (std::size_t i = 0; i < in_dim; ++i) {
                agree += static_cast<std::size_t>(row[i] == input[i]);
            }
            out[j] = 2 * agree >= in_dim ? 1 : 0;
        }
        return out;
    }
};

std::vector<std::uint8_t> unpack(const BitVector& v) {
    std::vector<std::uint8_t> bytes(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) bytes[i] = v.bit(i) ? 1 : 0;
    return bytes;
}

} // namespace

std::string BenchReport::to_text() const {
    std::string s;
    s += "layer " + std::to_string(out_dim) + "x" + std::to_string(in_dim) + ", " +
         std::to_string(repetitions) + " repetitions\n";
    s += std::string("outputs_match: ") + (outputs_match ? "yes" : "NO") + "\n";
    s += "packed:   " + std::to_string(packed_layers_per_sec) + " layer-forwards/s\n";
    s += "unpacked: " + std::to_string(unpacked_layers_per_sec) + " layer-forwards/s\n";
    s += "speedup:  " + std::to_string(speedup) + "x\n";
    s += note + "\n";
    return s;
}

BenchReport run_benchmark(std::size_t out_dim, std::size_t in_dim,
                          std::uint64_t repetitions) {
    if (out_dim == 0 || in_dim == 0) throw DimensionError("benchmark: zero dimension");
    if (repetitions == 0) repetitions = 1;

    DeterministicRng rng = DeterministicRng::from_seed(0xBE7C);
    std::vector<BitVector> rows;
    rows.reserve(out_dim);
    for (std::size_t j = 0; j < out_dim; ++j) {
        rows.push_back(random_mask(rng, in_dim, FixedProb::half()));
    }
    const BinaryLayer packed(rows);
    ByteLayer unpacked{out_dim, in_dim, {}};
    unpacked.weights.reserve(out_dim * in_dim);
    for (std::size_t j = 0; j < out_dim; ++j) {
        auto bytes = unpack(rows[j]);
        unpacked.weights.insert(unpacked.weights.end(), bytes.begin(), bytes.end());
    }

    constexpr std::size_t kInputs = 16;
    std::vector<BitVector> inputs;
    std::vector<std::vector<std::uint8_t>> inputs_bytes;
    for (std::size_t k = 0; k < kInputs; ++k) {
        inputs.push_back(random_mask(rng, in_dim, FixedProb::half()));
        inputs_bytes.push_back(unpack(inputs.back()));
    }

    BenchReport report;
    report.out_dim = out_dim;
    report.in_dim = in_dim;
    report.repetitions = repetitions;
    report.note =
        "note: the 58x speedup often cited for binary networks measures binary "
        "convolution against 32-bit float convolution; this packed-vs-unpacked "
        "fully-connected comparison carries no pass/fail bound from that figure.";

    report.outputs_match = true;
    for (std::size_t k = 0; k < kInputs; ++k) {
        const BitVector a = layer_forward(packed, inputs[k]);
        const std::vector<std::uint8_t> b = unpacked.forward(inputs_bytes[k]);
        for (std::size_t j = 0; j < out_dim; ++j) {
            if (a.bit(j) != (b[j] != 0)) report.outputs_match = false;
        }
    }
    if (!report.outputs_match) return report;

    using Clock = std::chrono::steady_clock;
    std::size_t sink = 0;

    const auto t0 = Clock::now();
    for (std::uint64_t r = 0; r < repetitions; ++r) {
        sink += layer_forward(packed, inputs[r % kInputs]).popcount();
    }
    const auto t1 = Clock::now();
    for (std::uint64_t r = 0; r < repetitions; ++r) {
        sink += unpacked.forward(inputs_bytes[r % kInputs]).front();
    }
    const auto t2 = Clock::now();
    if (sink == 0xFFFFFFFF) report.note += " ";  // keep the loops observable

    report.packed_ns =
        static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    report.unpacked_ns =
        static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t2 - t1).count());
    if (report.packed_ns > 0) {
        report.packed_layers_per_sec = 1e9 * static_cast<double>(repetitions) /
                                       static_cast<double>(report.packed_ns);
    }
    if (report.unpacked_ns > 0) {
        report.unpacked_layers_per_sec = 1e9 * static_cast<double>(repetitions) /
                                         static_cast<double>(report.unpacked_ns);
    }
    if (report.packed_ns > 0 && report.unpacked_ns > 0) {
        report.speedup = static_cast<double>(report.unpacked_ns) /
                         static_cast<double>(report.packed_ns);
    }
    return report;
}

} // namespace bnn
