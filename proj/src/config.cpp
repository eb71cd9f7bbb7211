#include "bnn/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "bnn/errors.hpp"

namespace bnn {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ValueError(std::string("config: bad integer for ") + what + ": '" + text + "'");
    }
    return v;
}

bool parse_bool(const std::string& text, const char* what) {
    if (text == "1" || text == "true" || text == "yes") return true;
    if (text == "0" || text == "false" || text == "no") return false;
    throw ValueError(std::string("config: bad boolean for ") + what + ": '" + text + "'");
}

} // namespace

Algorithm parse_algorithm(const std::string& name) {
    if (name == "naive") return Algorithm::naive;
    if (name == "elite") return Algorithm::elite;
    if (name == "counting") return Algorithm::counting;
    throw ValueError("config: unknown algorithm '" + name + "'");
}

const char* algorithm_name(Algorithm algo) {
    switch (algo) {
        case Algorithm::naive: return "naive";
        case Algorithm::elite: return "elite";
        case Algorithm::counting: return "counting";
    }
    return "?";
}

FixedProb parse_ratio(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        throw ValueError("config: expected NUM/DEN ratio, got '" + text + "'");
    }
    const std::uint64_t num = parse_u64(trim(text.substr(0, slash)), "ratio numerator");
    const std::uint64_t den = parse_u64(trim(text.substr(slash + 1)), "ratio denominator");
    return FixedProb::from_ratio(num, den);
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        sizes.push_back(static_cast<std::size_t>(parse_u64(trim(item), "layer width")));
    }
    if (sizes.size() < 2) throw ValueError("config: layers needs at least two widths");
    return sizes;
}

CosineSchedule parse_schedule(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(trim(item));
    if (parts.size() != 3) {
        throw ValueError("config: schedule needs p_min,p_max,period");
    }
    CosineSchedule sched;
    sched.p_min = parse_ratio(parts[0]);
    sched.p_max = parse_ratio(parts[1]);
    sched.period = parse_u64(parts[2], "schedule period");
    if (sched.period == 0) throw ValueError("config: schedule period must be >= 1");
    if (sched.p_min.threshold > sched.p_max.threshold) {
        throw ValueError("config: schedule p_min above p_max");
    }
    return sched;
}

void apply_config_text(RunConfig& config, const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValueError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "data_dir") config.data_dir = value;
        else if (key == "algo") config.evolver.algorithm = parse_algorithm(value);
        else if (key == "layers") config.sizes = parse_sizes(value);
        else if (key == "classes") config.classes = parse_u64(value, key.c_str());
        else if (key == "bits_per_label") config.bits_per_label = parse_u64(value, key.c_str());
        else if (key == "flip_prob") config.evolver.p = parse_ratio(value);
        else if (key == "children") config.evolver.children = parse_u64(value, key.c_str());
        else if (key == "elite_size") config.evolver.elite_size = parse_u64(value, key.c_str());
        else if (key == "lambda") config.evolver.lambda = parse_ratio(value);
        else if (key == "batch_size") config.evolver.batch_size = parse_u64(value, key.c_str());
        else if (key == "keep_parent") config.evolver.keep_parent = parse_bool(value, key.c_str());
        else if (key == "schedule") config.evolver.schedule = parse_schedule(value);
        else if (key == "seed") config.seed = parse_u64(value, key.c_str());
        else if (key == "time_budget_secs") config.time_budget_secs = parse_u64(value, key.c_str());
        else if (key == "step_budget") config.step_budget = parse_u64(value, key.c_str());
        else if (key == "eval_every") config.eval_every = parse_u64(value, key.c_str());
        else if (key == "fit_every") config.fit_every = parse_u64(value, key.c_str());
        else if (key == "fitness_subset_size")
            config.fitness_subset_size = parse_u64(value, key.c_str());
        else if (key == "binarize_threshold")
            config.binarize_threshold = static_cast<std::uint8_t>(parse_u64(value, key.c_str()));
        else if (key == "train_limit") config.train_limit = parse_u64(value, key.c_str());
        else if (key == "test_limit") config.test_limit = parse_u64(value, key.c_str());
        else if (key == "threads") config.threads = static_cast<unsigned>(parse_u64(value, key.c_str()));
        else if (key == "metrics_out") config.metrics_out = value;
        else if (key == "model_out") config.model_out = value;
        else throw ValueError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    RunConfig config;
    apply_config_text(config, buf.str());
    return config;
}

std::vector<std::string> RunConfig::validate() const {
    std::vector<std::string> warnings;
    if (!time_budget_secs.has_value() && !step_budget.has_value()) {
        throw ValueError("config: need a time budget or a step budget");
    }
    if (sizes.size() < 2) throw ValueError("config: layers needs at least two widths");
    for (std::size_t s : sizes) {
        if (s == 0) throw ValueError("config: zero layer width");
    }
    if (classes < 2) throw ValueError("config: classes must be >= 2");
    if (bits_per_label < 1) throw ValueError("config: bits_per_label must be >= 1");
    if (sizes.back() != classes * bits_per_label) {
        throw ValueError("config: last layer width " + std::to_string(sizes.back()) +
                         " != classes*bits_per_label = " +
                         std::to_string(classes * bits_per_label));
    }
    if (fitness_subset_size < 1) throw ValueError("config: fitness_subset_size must be >= 1");
    if (evolver.children < 1) throw ValueError("config: children must be >= 1");
    if (evolver.elite_size < 1) throw ValueError("config: elite_size must be >= 1");
    if (evolver.batch_size < 1) throw ValueError("config: batch_size must be >= 1");
    if (fit_every < 1) throw ValueError("config: fit_every must be >= 1");
    if (eval_every < 1) throw ValueError("config: eval_every must be >= 1");
    const std::size_t depth = sizes.size() - 1;
    if (depth < 2 || depth > 5) {
        warnings.push_back("depth " + std::to_string(depth) +
                           " is outside the explored 2..5 range");
    }
    return warnings;
}

} // namespace bnn
