#include "bnn/synth.hpp"

#include <array>

namespace bnn {

namespace {

constexpr std::uint32_t kSide = 28;

// Seven-segment bit sets per digit: A top, B top-right, C bottom-right,
// D bottom, E bottom-left, F top-left, G middle.
enum Segment { A = 1, B = 2, C = 4, D = 8, E = 16, F = 32, G = 64 };
constexpr std::array<std::uint8_t, 10> kDigitSegments = {
    A | B | C | D | E | F,      // 0
    B | C,                      // 1
    A | B | G | E | D,          // 2
    A | B | G | C | D,          // 3
    F | G | B | C,              // 4
    A | F | G | C | D,          // 5
    A | F | G | E | D | C,      // 6
    A | B | C,                  // 7
    A | B | C | D | E | F | G,  // 8
    A | B | C | D | F | G,      // 9
};

struct Box {
    int x0, y0, x1, y1;  // inclusive
};

void fill(std::uint8_t* img, const Box& b, int dx, int dy) {
    for (int y = b.y0 + dy; y <= b.y1 + dy; ++y) {
        if (y < 0 || y >= static_cast<int>(kSide)) continue;
        for (int x = b.x0 + dx; x <= b.x1 + dx; ++x) {
            if (x < 0 || x >= static_cast<int>(kSide)) continue;
            img[y * kSide + x] = 1;
        }
    }
}

void draw_glyph(std::uint8_t* img, std::uint8_t digit, int dx, int dy) {
    // Glyph body spans x 7..20, y 4..23, stroke width 3.
    constexpr int x0 = 7, x1 = 20, y0 = 4, y1 = 23, ym = 13, t = 2;
    const std::uint8_t segs = kDigitSegments[digit];
    if (segs & A) fill(img, {x0, y0, x1, y0 + t}, dx, dy);
    if (segs & G) fill(img, {x0, ym, x1, ym + t}, dx, dy);
    if (segs & D) fill(img, {x0, y1 - t, x1, y1}, dx, dy);
    if (segs & F) fill(img, {x0, y0, x0 + t, ym + t}, dx, dy);
    if (segs & E) fill(img, {x0, ym, x0 + t, y1}, dx, dy);
    if (segs & B) fill(img, {x1 - t, y0, x1, ym + t}, dx, dy);
    if (segs & C) fill(img, {x1 - t, ym, x1, y1}, dx, dy);
}

} // namespace

SynthDigits make_synthetic_digits(std::uint32_t count, DeterministicRng& rng) {
    SynthDigits out;
    out.images.count = count;
    out.images.rows = kSide;
    out.images.cols = kSide;
    out.images.pixels.assign(std::size_t{count} * kSide * kSide, 0);
    out.labels.reserve(count);
    std::vector<std::uint8_t> glyph(kSide * kSide);
    for (std::uint32_t s = 0; s < count; ++s) {
        const std::uint8_t digit = static_cast<std::uint8_t>(rng.next_below(10));
        out.labels.push_back(digit);
        const int dx = static_cast<int>(rng.next_below(9)) - 4;
        const int dy = static_cast<int>(rng.next_below(7)) - 3;
        glyph.assign(glyph.size(), 0);
        draw_glyph(glyph.data(), digit, dx, dy);
        std::uint8_t* img = out.images.pixels.data() + std::size_t{s} * kSide * kSide;
        for (std::size_t i = 0; i < glyph.size(); ++i) {
            // Ink lands well above a mid binarization threshold, paper below,
            // with a sprinkle of full-range salt noise.
            const std::uint8_t noise = static_cast<std::uint8_t>(rng.next_below(80));
            img[i] = glyph[i] ? static_cast<std::uint8_t>(255 - noise) : noise;
            if (rng.next_below(48) == 0) {
                img[i] = static_cast<std::uint8_t>(rng.next_below(256));
            }
        }
    }
    return out;
}

void write_synthetic_digits(const std::string& dir, std::uint32_t train_count,
                            std::uint32_t test_count, std::uint64_t seed) {
    DeterministicRng train_rng = DeterministicRng::from_seed(seed).child(0);
    DeterministicRng test_rng = DeterministicRng::from_seed(seed).child(1);
    const SynthDigits train = make_synthetic_digits(train_count, train_rng);
    const SynthDigits test = make_synthetic_digits(test_count, test_rng);
    write_file_bytes(dir + "/train-images-idx3-ubyte", write_idx_images(train.images));
    write_file_bytes(dir + "/train-labels-idx1-ubyte", write_idx_labels(train.labels));
    write_file_bytes(dir + "/t10k-images-idx3-ubyte", write_idx_images(test.images));
    write_file_bytes(dir + "/t10k-labels-idx1-ubyte", write_idx_labels(test.labels));
}

} // namespace bnn
