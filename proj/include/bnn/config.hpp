#ifndef BNN_CONFIG_HPP
#define BNN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bnn/evolvers.hpp"

namespace bnn {

// Everything one training run needs. File form is flat key=value lines with
// '#' comments; command-line flags override file values.
struct RunConfig {
    std::string data_dir;
    EvolverConfig evolver;
    std::vector<std::size_t> sizes = {784, 256, 256, 256, 256, 1000};
    std::size_t classes = 10;
    std::size_t bits_per_label = 100;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> time_budget_secs;
    std::optional<std::uint64_t> step_budget;
    std::uint64_t eval_every = 2000;
    std::uint64_t fit_every = 1;  // metrics / best-tracking cadence in steps
    std::size_t fitness_subset_size = 2000;
    std::uint8_t binarize_threshold = 128;
    std::size_t train_limit = 0;  // 0 keeps everything
    std::size_t test_limit = 0;
    unsigned threads = 1;
    std::string metrics_out = "metrics.csv";
    std::string model_out = "model.bnnv1";

    // Throws on inconsistent settings; returns human-readable warnings
    // (e.g. depth outside the explored 2..5 range).
    std::vector<std::string> validate() const;
};

Algorithm parse_algorithm(const std::string& name);
const char* algorithm_name(Algorithm algo);

// "NUM/DEN" -> FixedProb.
FixedProb parse_ratio(const std::string& text);

// "784,256,1000" -> widths.
std::vector<std::size_t> parse_sizes(const std::string& text);

// "pmin,pmax,T" with NUM/DEN probabilities, e.g. "1/1024,1/64,5000".
CosineSchedule parse_schedule(const std::string& text);

// Applies the key=value lines of `text` on top of `config`.
void apply_config_text(RunConfig& config, const std::string& text);
RunConfig load_config_file(const std::string& path);

} // namespace bnn

#endif
