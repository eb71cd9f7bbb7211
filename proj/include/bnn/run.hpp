#ifndef BNN_RUN_HPP
#define BNN_RUN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bnn/config.hpp"
#include "bnn/dataset.hpp"
#include "bnn/objective.hpp"

namespace bnn {

struct MetricsRecord {
    std::uint64_t step = 0;
    std::uint64_t elapsed_ms = 0;
    std::uint64_t evaluations = 0;  // cumulative single-sample forward passes
    std::uint32_t fit_ppm = 0;
    std::optional<std::uint32_t> test_ppm;
    std::uint32_t p_threshold = 0;
};

std::string metrics_csv_header();
std::string metrics_csv_line(const MetricsRecord& r);

struct RunResult {
    ScoredNetwork best;  // best by fitness-subset accuracy among tracked nets
    std::uint32_t final_test_ppm = 0;
    std::uint64_t steps = 0;
    std::uint64_t evaluations = 0;
    std::vector<MetricsRecord> metrics;
};

// The time-budgeted training loop. Steps are never interrupted: the wall
// clock is consulted between steps only, so overshoot is at most one step.
// All randomness derives from config.seed; with a pure step budget the
// metrics and the saved model are byte-identical for any thread count
// (elapsed_ms is reported as 0 in that mode — wall time is untracked where
// it has no effect).
RunResult run_training(const RunConfig& config, const BinaryDataset& train,
                       const BinaryDataset& test);

// Loads the IDX files from config.data_dir first.
RunResult run_training(const RunConfig& config);

} // namespace bnn

#endif
