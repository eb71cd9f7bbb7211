#include "bnn/run.hpp"

#include <chrono>
#include <fstream>

#include "bnn/errors.hpp"
#include "bnn/serialize.hpp"

namespace bnn {

namespace {

// Stream derivation labels under the run seed.
constexpr std::uint64_t kInitTag = 0;
constexpr std::uint64_t kSubsetTag = 1;
constexpr std::uint64_t kBatchTag = 2;
constexpr std::uint64_t kStepTag = 3;

using Clock = std::chrono::steady_clock;

class MetricsWriter {
public:
    explicit MetricsWriter(const std::string& path) {
        if (!path.empty()) {
            file_.emplace(path, std::ios::trunc);
            if (!*file_) throw IoError("cannot open metrics file: " + path);
            *file_ << metrics_csv_header() << '\n';
            file_->flush();
            if (!*file_) throw IoError("metrics write failed: " + path);
        }
    }

    void append(const MetricsRecord& r) {
        if (file_.has_value()) {
            *file_ << metrics_csv_line(r) << '\n';
            file_->flush();
            if (!*file_) throw IoError("metrics write failed");
        }
    }

private:
    std::optional<std::ofstream> file_;
};

} // namespace

std::string metrics_csv_header() {
    return "step,elapsed_ms,evaluations,fit_ppm,test_ppm,p_threshold";
}

std::string metrics_csv_line(const MetricsRecord& r) {
    std::string line = std::to_string(r.step) + ',' + std::to_string(r.elapsed_ms) + ',' +
                       std::to_string(r.evaluations) + ',' + std::to_string(r.fit_ppm) + ',';
    if (r.test_ppm.has_value()) line += std::to_string(*r.test_ppm);
    line += ',' + std::to_string(r.p_threshold);
    return line;
}

RunResult run_training(const RunConfig& config, const BinaryDataset& train,
                       const BinaryDataset& test) {
    config.validate();
    if (train.size() == 0 || test.size() == 0) throw DimensionError("run: empty dataset");
    if (train.sample_width() != config.sizes.front()) {
        throw DimensionError("run: sample width " + std::to_string(train.sample_width()) +
                             " != first layer width " + std::to_string(config.sizes.front()));
    }
    const LabelCodec codec(config.classes, config.bits_per_label);
    const Algorithm algo = config.evolver.algorithm;
    const unsigned threads = config.threads == 0 ? 1 : config.threads;
    const bool wall_tracked = config.time_budget_secs.has_value();
    const auto t0 = Clock::now();
    auto elapsed_ms = [&]() -> std::uint64_t {
        if (!wall_tracked) return 0;
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count());
    };
    auto over_time = [&]() {
        return wall_tracked && elapsed_ms() >= *config.time_budget_secs * 1000;
    };

    DeterministicRng subset_rng = DeterministicRng::from_seed(config.seed).child(kSubsetTag);
    const std::size_t subset_n = std::min(config.fitness_subset_size, train.size());
    const BinaryDataset fitset = fitness_subset(train, subset_n, subset_rng);

    std::uint64_t evals = 0;
    auto eval_subset = [&](const BinaryNetwork& net) {
        evals += fitset.size();
        return evaluate_accuracy(net, fitset.samples, fitset.labels, codec, threads);
    };
    auto eval_test = [&](const BinaryNetwork& net) {
        evals += test.size();
        return evaluate_accuracy(net, test.samples, test.labels, codec, threads);
    };

    // Algorithm state. naive/counting walk a single network; elite keeps a
    // scored population, already sorted by lineage.
    DeterministicRng root = DeterministicRng::from_seed(config.seed);
    BinaryNetwork current = [&] {
        DeterministicRng rng = root.child(kInitTag).child(0);
        return init_random(rng, config.sizes);
    }();
    std::vector<ScoredNetwork> elite;
    std::uint32_t current_fit_ppm = 0;
    if (algo == Algorithm::elite) {
        elite.reserve(config.evolver.elite_size);
        for (std::size_t i = 0; i < config.evolver.elite_size; ++i) {
            DeterministicRng rng = root.child(kInitTag).child(i);
            BinaryNetwork net = i == 0 ? current : init_random(rng, config.sizes);
            const Fitness fit = eval_subset(net);
            elite.push_back(ScoredNetwork{std::move(net), fit.ppm, fit.ppm});
        }
        current_fit_ppm = 0;
        for (const auto& m : elite) current_fit_ppm = std::max(current_fit_ppm, m.current_ppm);
    } else {
        current_fit_ppm = eval_subset(current).ppm;
    }

    auto champion = [&]() -> const BinaryNetwork& {
        if (algo != Algorithm::elite) return current;
        std::size_t best_i = 0;
        for (std::size_t i = 1; i < elite.size(); ++i) {
            if (elite[i].current_ppm > elite[best_i].current_ppm) best_i = i;
        }
        return elite[best_i].net;
    };

    RunResult result{ScoredNetwork{champion(), current_fit_ppm, current_fit_ppm}, 0, 0, 0, {}};
    auto offer_best = [&](const BinaryNetwork& net, std::uint32_t fit_ppm) {
        if (fit_ppm > result.best.current_ppm) {
            result.best = ScoredNetwork{net, fit_ppm, fit_ppm};
        }
    };

    // Batch supply for the counting algorithm, reshuffled per epoch.
    std::vector<BinaryDataset> batches;
    std::size_t batch_cursor = 0;
    std::uint64_t epoch = 0;
    auto next_batch = [&]() -> const BinaryDataset& {
        if (batches.empty() || batch_cursor == batches.size()) {
            DeterministicRng rng = root.child(kBatchTag).child(epoch);
            batches = make_batches(train, config.evolver.batch_size, rng);
            batch_cursor = 0;
            ++epoch;
        }
        return batches[batch_cursor++];
    };

    auto step_p = [&](std::uint64_t step) {
        return config.evolver.schedule.has_value()
                   ? flip_schedule(step, *config.evolver.schedule)
                   : config.evolver.p;
    };

    MetricsWriter writer(config.metrics_out);
    auto emit = [&](std::uint64_t step, std::uint32_t fit_ppm,
                    std::optional<std::uint32_t> test_ppm, FixedProb p) {
        MetricsRecord r{step, elapsed_ms(), evals, fit_ppm, test_ppm, p.threshold};
        writer.append(r);
        result.metrics.push_back(std::move(r));
    };

    emit(0, current_fit_ppm, eval_test(champion()).ppm, step_p(0));

    std::uint64_t steps_done = 0;
    while (true) {
        if (config.step_budget.has_value() && steps_done >= *config.step_budget) break;
        if (over_time()) break;

        const std::uint64_t step = steps_done;
        const FixedProb p = step_p(step);
        DeterministicRng step_rng = root.child(kStepTag).child(step);
        StepStats stats;
        if (algo == Algorithm::naive) {
            current = naive_step(current, step_rng, p, fitset.samples, fitset.labels, codec,
                                 threads, &stats);
            current_fit_ppm = stats.accepted_ppm;
            offer_best(current, current_fit_ppm);
        } else if (algo == Algorithm::elite) {
            EvolverConfig ec = config.evolver;
            ec.p = p;
            elite = elite_step(elite, step_rng, ec, fitset.samples, fitset.labels, codec,
                               threads, &stats);
            current_fit_ppm = 0;
            for (const auto& m : elite) {
                current_fit_ppm = std::max(current_fit_ppm, m.current_ppm);
                offer_best(m.net, m.current_ppm);
            }
        } else {
            EvolverConfig ec = config.evolver;
            ec.p = p;
            const BinaryDataset& batch = next_batch();
            current = counting_error_step(current, step_rng, ec, batch.samples, batch.labels,
                                          codec, threads, &stats);
        }
        evals += stats.sample_evals;
        ++steps_done;

        const bool exiting =
            (config.step_budget.has_value() && steps_done >= *config.step_budget) || over_time();
        const bool fit_point = steps_done % config.fit_every == 0;
        const bool test_point = steps_done % config.eval_every == 0;
        if (!exiting && (fit_point || test_point)) {
            if (algo == Algorithm::counting) {
                current_fit_ppm = eval_subset(current).ppm;
                offer_best(current, current_fit_ppm);
            }
            std::optional<std::uint32_t> test_ppm;
            if (test_point) test_ppm = eval_test(champion()).ppm;
            emit(steps_done, current_fit_ppm, test_ppm, p);
        }
        if (exiting) break;
    }

    result.steps = steps_done;
    if (steps_done > 0) {
        if (algo == Algorithm::counting) {
            // The loop may have exited between tracking points.
            const Fitness fit = eval_subset(current);
            offer_best(current, fit.ppm);
        }
        const Fitness final_test = eval_test(result.best.net);
        result.final_test_ppm = final_test.ppm;
        emit(steps_done, result.best.current_ppm, final_test.ppm, step_p(steps_done - 1));
    } else {
        result.final_test_ppm = *result.metrics.front().test_ppm;
    }

    result.evaluations = evals;
    if (!config.model_out.empty()) save_network_file(result.best.net, config.model_out);
    return result;
}

RunResult run_training(const RunConfig& config) {
    const BinaryDataset train = load_binary_dataset(config.data_dir, Split::train,
                                                    config.binarize_threshold, config.train_limit);
    const BinaryDataset test = load_binary_dataset(config.data_dir, Split::test,
                                                   config.binarize_threshold, config.test_limit);
    return run_training(config, train, test);
}

} // namespace bnn
