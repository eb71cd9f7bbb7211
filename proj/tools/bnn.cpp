#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "bnn/bench.hpp"
#include "bnn/config.hpp"
#include "bnn/run.hpp"
#include "bnn/serialize.hpp"

namespace {

struct TrainFlags {
    std::string config_path;
    std::string algo, layers, flip_prob, lambda, schedule;
    std::string data_dir, metrics_out, model_out;
    std::uint64_t bits_per_label = 0, classes = 0, children = 0, elite_size = 0;
    std::uint64_t batch_size = 0, seed = 0, time_budget = 0, step_budget = 0;
    std::uint64_t eval_every = 0, fit_every = 0, fitness_subset_size = 0;
    std::uint64_t train_limit = 0, test_limit = 0, threads = 0;
    int binarize_threshold = -1;
    int keep_parent = -1;
    bool seed_set = false;
};

int cmd_train(const TrainFlags& f) {
    bnn::RunConfig config;
    if (!f.config_path.empty()) config = bnn::load_config_file(f.config_path);
    if (!f.algo.empty()) config.evolver.algorithm = bnn::parse_algorithm(f.algo);
    if (!f.layers.empty()) config.sizes = bnn::parse_sizes(f.layers);
    if (f.classes > 0) config.classes = f.classes;
    if (f.bits_per_label > 0) config.bits_per_label = f.bits_per_label;
    if (!f.flip_prob.empty()) config.evolver.p = bnn::parse_ratio(f.flip_prob);
    if (f.children > 0) config.evolver.children = f.children;
    if (f.elite_size > 0) config.evolver.elite_size = f.elite_size;
    if (!f.lambda.empty()) config.evolver.lambda = bnn::parse_ratio(f.lambda);
    if (f.batch_size > 0) config.evolver.batch_size = f.batch_size;
    if (f.keep_parent >= 0) config.evolver.keep_parent = f.keep_parent != 0;
    if (!f.schedule.empty()) config.evolver.schedule = bnn::parse_schedule(f.schedule);
    if (f.seed_set) config.seed = f.seed;
    if (f.time_budget > 0) config.time_budget_secs = f.time_budget;
    if (f.step_budget > 0) config.step_budget = f.step_budget;
    if (f.eval_every > 0) config.eval_every = f.eval_every;
    if (f.fit_every > 0) config.fit_every = f.fit_every;
    if (f.fitness_subset_size > 0) config.fitness_subset_size = f.fitness_subset_size;
    if (f.binarize_threshold >= 0) {
        config.binarize_threshold = static_cast<std::uint8_t>(f.binarize_threshold);
    }
    if (f.train_limit > 0) config.train_limit = f.train_limit;
    if (f.test_limit > 0) config.test_limit = f.test_limit;
    if (f.threads > 0) config.threads = static_cast<unsigned>(f.threads);
    if (!f.data_dir.empty()) config.data_dir = f.data_dir;
    if (!f.metrics_out.empty()) config.metrics_out = f.metrics_out;
    if (!f.model_out.empty()) config.model_out = f.model_out;

    if (config.data_dir.empty()) {
        std::fprintf(stderr, "train: --data-dir (or data_dir in the config file) is required\n");
        return 2;
    }
    for (const auto& w : config.validate()) std::fprintf(stderr, "warning: %s\n", w.c_str());

    const bnn::RunResult result = bnn::run_training(config);
    std::printf("algorithm=%s steps=%llu evaluations=%llu\n",
                bnn::algorithm_name(config.evolver.algorithm),
                static_cast<unsigned long long>(result.steps),
                static_cast<unsigned long long>(result.evaluations));
    std::printf("best_fit_ppm=%u final_test_ppm=%u\n", result.best.current_ppm,
                result.final_test_ppm);
    if (!config.model_out.empty()) std::printf("model=%s\n", config.model_out.c_str());
    if (!config.metrics_out.empty()) std::printf("metrics=%s\n", config.metrics_out.c_str());
    return 0;
}

int cmd_eval(const std::string& model_path, const std::string& data_dir, int threshold,
             std::uint64_t threads) {
    const bnn::BinaryNetwork net = bnn::load_network_file(model_path);
    const bnn::BinaryDataset test = bnn::load_binary_dataset(
        data_dir, bnn::Split::test, static_cast<std::uint8_t>(threshold));
    // Output width fixes k for the standard 10 classes.
    if (net.output_dim() % 10 != 0) {
        std::fprintf(stderr, "eval: model output width %zu is not divisible by 10\n",
                     net.output_dim());
        return 2;
    }
    const bnn::LabelCodec codec(10, net.output_dim() / 10);
    const bnn::Fitness fit =
        bnn::evaluate_accuracy(net, test.samples, test.labels, codec,
                               static_cast<unsigned>(threads == 0 ? 1 : threads));
    std::printf("test_ppm=%u (%llu/%llu correct)\n", fit.ppm,
                static_cast<unsigned long long>(fit.correct),
                static_cast<unsigned long long>(fit.total));
    return 0;
}

int cmd_inspect(const std::string& model_path) {
    const bnn::BinaryNetwork net = bnn::load_network_file(model_path);
    std::string sizes;
    for (std::size_t s : net.sizes()) {
        if (!sizes.empty()) sizes += ",";
        sizes += std::to_string(s);
    }
    std::printf("sizes=%s depth=%zu weights=%zu\n", sizes.c_str(), net.depth(),
                net.weight_count());
    for (std::size_t l = 0; l < net.depth(); ++l) {
        std::size_t ones = 0;
        for (const auto& row : net.layer(l).rows()) ones += row.popcount();
        const std::size_t total = net.layer(l).out_dim() * net.layer(l).in_dim();
        std::printf("layer %zu: %zux%zu popcount=%zu/%zu\n", l, net.layer(l).out_dim(),
                    net.layer(l).in_dim(), ones, total);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"float-free binary neural network trainer"};
    app.require_subcommand(1);

    TrainFlags tf;
    auto* train = app.add_subcommand("train", "run the training loop");
    train->add_option("--config", tf.config_path, "key=value config file");
    train->add_option("--algo", tf.algo, "naive | elite | counting");
    train->add_option("--layers", tf.layers, "comma-separated widths, input first");
    train->add_option("--classes", tf.classes, "number of classes");
    train->add_option("--bits-per-label", tf.bits_per_label, "output bits per class");
    train->add_option("--flip-prob", tf.flip_prob, "mutation probability NUM/DEN");
    train->add_option("--children", tf.children, "children per step/parent");
    train->add_option("--elite-size", tf.elite_size, "elite population size");
    train->add_option("--lambda", tf.lambda, "lineage blend weight NUM/DEN");
    train->add_option("--batch-size", tf.batch_size, "batch size for counting");
    train->add_option("--keep-parent", tf.keep_parent, "1 = parent joins the pool");
    train->add_option("--schedule", tf.schedule, "cosine schedule p_min,p_max,T");
    train->add_option("--seed", tf.seed, "run seed")->each([&](const std::string&) {
        tf.seed_set = true;
    });
    train->add_option("--time-budget", tf.time_budget, "wall-clock budget in seconds");
    train->add_option("--step-budget", tf.step_budget, "step budget");
    train->add_option("--eval-every", tf.eval_every, "test evaluation cadence in steps");
    train->add_option("--fit-every", tf.fit_every, "metrics cadence in steps");
    train->add_option("--fitness-subset-size", tf.fitness_subset_size,
                      "train samples used as the fitness set");
    train->add_option("--binarize-threshold", tf.binarize_threshold, "pixel threshold 0..255");
    train->add_option("--train-limit", tf.train_limit, "cap on train items (0 = all)");
    train->add_option("--test-limit", tf.test_limit, "cap on test items (0 = all)");
    train->add_option("--threads", tf.threads, "worker threads");
    train->add_option("--data-dir", tf.data_dir, "directory with the four IDX files");
    train->add_option("--metrics-out", tf.metrics_out, "metrics CSV path");
    train->add_option("--model-out", tf.model_out, "model file path");

    std::string eval_model, eval_dir;
    int eval_threshold = 128;
    std::uint64_t eval_threads = 1;
    auto* eval = app.add_subcommand("eval", "test accuracy of a saved model");
    eval->add_option("--model", eval_model)->required();
    eval->add_option("--data-dir", eval_dir)->required();
    eval->add_option("--binarize-threshold", eval_threshold);
    eval->add_option("--threads", eval_threads);

    std::uint64_t bench_out = 1024, bench_in = 1024, bench_reps = 2000;
    auto* bench = app.add_subcommand("bench", "packed vs unpacked layer throughput");
    bench->add_option("--out-dim", bench_out);
    bench->add_option("--in-dim", bench_in);
    bench->add_option("--reps", bench_reps);

    std::string inspect_model;
    auto* inspect = app.add_subcommand("inspect", "shape and weight stats of a model");
    inspect->add_option("--model", inspect_model)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return cmd_train(tf);
        if (eval->parsed()) {
            return cmd_eval(eval_model, eval_dir, eval_threshold, eval_threads);
        }
        if (bench->parsed()) {
            const bnn::BenchReport report =
                bnn::run_benchmark(bench_out, bench_in, bench_reps);
            std::printf("%s", report.to_text().c_str());
            return report.outputs_match ? 0 : 1;
        }
        if (inspect->parsed()) return cmd_inspect(inspect_model);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
