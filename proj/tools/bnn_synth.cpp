#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "bnn/synth.hpp"

// Generates a synthetic digit dataset in the IDX layout, so the pipeline can
// be exercised on machines without the real data.
int main(int argc, char** argv) {
    CLI::App app{"synthetic IDX digit dataset generator"};
    std::string dir;
    std::uint64_t train = 8000, test = 2000, seed = 7;
    app.add_option("--out-dir", dir, "existing directory to write the four files into")
        ->required();
    app.add_option("--train", train, "train sample count");
    app.add_option("--test", test, "test sample count");
    app.add_option("--seed", seed, "generator seed");
    CLI11_PARSE(app, argc, argv);
    try {
        bnn::write_synthetic_digits(dir, static_cast<std::uint32_t>(train),
                                    static_cast<std::uint32_t>(test), seed);
        std::printf("wrote %llu train / %llu test samples to %s\n",
                    static_cast<unsigned long long>(train),
                    static_cast<unsigned long long>(test), dir.c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
