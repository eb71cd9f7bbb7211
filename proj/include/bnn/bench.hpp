#ifndef BNN_BENCH_HPP
#define BNN_BENCH_HPP

#include <cstdint>
#include <string>

namespace bnn {

struct BenchReport {
    std::size_t out_dim = 0;
    std::size_t in_dim = 0;
    std::uint64_t repetitions = 0;
    bool outputs_match = false;  // packed vs reference agreement, checked pre-timing
    std::uint64_t packed_ns = 0;
    std::uint64_t unpacked_ns = 0;
    double packed_layers_per_sec = 0.0;
    double unpacked_layers_per_sec = 0.0;
    double speedup = 0.0;
    std::string note;

    std::string to_text() const;
};

// Times the packed XNOR/popcount layer against a one-byte-per-weight
// reference on random inputs. The two paths must agree bitwise before any
// timing is reported.
BenchReport run_benchmark(std::size_t out_dim, std::size_t in_dim,
                          std::uint64_t repetitions);

} // namespace bnn

#endif
