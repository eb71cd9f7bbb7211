#ifndef BNN_IDX_HPP
#define BNN_IDX_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bnn {

// IDX image container (big-endian header, magic 0x00000803, row-major
// unsigned pixel bytes), as shipped by the MNIST distribution.
struct IdxImages {
    std::uint32_t count = 0;
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<std::uint8_t> pixels;  // count * rows * cols bytes

    std::span<const std::uint8_t> image(std::size_t i) const {
        const std::size_t n = std::size_t{rows} * cols;
        return {pixels.data() + i * n, n};
    }
};

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes);

// IDX label container (magic 0x00000801); every label must be a digit in
// [0, 10).
std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> write_idx_images(const IdxImages& images);
std::vector<std::uint8_t> write_idx_labels(std::span<const std::uint8_t> labels);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes);

} // namespace bnn

#endif
