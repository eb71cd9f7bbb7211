#include "bnn/dataset.hpp"

#include <numeric>

#include "bnn/errors.hpp"
#include "bnn/idx.hpp"

namespace bnn {

BitVector binarize(std::span<const std::uint8_t> pixels, std::uint8_t threshold) {
    BitVector v(pixels.size());
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        if (pixels[i] >= threshold) v.set_bit(i, true);
    }
    return v;
}

BinaryDataset load_binary_dataset(const std::string& dir, Split split,
                                  std::uint8_t threshold, std::size_t limit) {
    const std::string stem = split == Split::train ? "train" : "t10k";
    const auto image_bytes = read_file_bytes(dir + "/" + stem + "-images-idx3-ubyte");
    const auto label_bytes = read_file_bytes(dir + "/" + stem + "-labels-idx1-ubyte");
    const IdxImages images = parse_idx_images(image_bytes);
    const std::vector<std::uint8_t> labels = parse_idx_labels(label_bytes);
    if (images.count != labels.size()) {
        throw DimensionError("dataset: " + std::to_string(images.count) + " images paired with " +
                             std::to_string(labels.size()) + " labels");
    }
    std::size_t n = images.count;
    if (limit > 0 && limit < n) n = limit;
    BinaryDataset ds;
    ds.split = split;
    ds.samples.reserve(n);
    ds.labels.assign(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        ds.samples.push_back(binarize(images.image(i), threshold));
    }
    return ds;
}

std::vector<BinaryDataset> make_batches(const BinaryDataset& dataset, std::size_t batch_size,
                                        DeterministicRng& rng) {
    if (batch_size == 0) throw ValueError("make_batches: zero batch size");
    const std::size_t n = dataset.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = rng.next_below(i);
        std::swap(order[i - 1], order[j]);
    }
    std::vector<BinaryDataset> batches;
    batches.reserve((n + batch_size - 1) / batch_size);
    for (std::size_t at = 0; at < n; at += batch_size) {
        const std::size_t len = std::min(batch_size, n - at);
        BinaryDataset b;
        b.split = dataset.split;
        b.samples.reserve(len);
        b.labels.reserve(len);
        for (std::size_t k = 0; k < len; ++k) {
            b.samples.push_back(dataset.samples[order[at + k]]);
            b.labels.push_back(dataset.labels[order[at + k]]);
        }
        batches.push_back(std::move(b));
    }
    return batches;
}

BinaryDataset fitness_subset(const BinaryDataset& dataset, std::size_t n,
                             DeterministicRng& rng) {
    if (n < 1 || n > dataset.size()) {
        throw ValueError("fitness_subset: n out of range");
    }
    std::vector<std::size_t> order(dataset.size());
    std::iota(order.begin(), order.end(), 0);
    // Partial Fisher-Yates: only the first n slots need settling.
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + rng.next_below(dataset.size() - i);
        std::swap(order[i], order[j]);
    }
    BinaryDataset out;
    out.split = dataset.split;
    out.samples.reserve(n);
    out.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.samples.push_back(dataset.samples[order[i]]);
        out.labels.push_back(dataset.labels[order[i]]);
    }
    return out;
}

} // namespace bnn
