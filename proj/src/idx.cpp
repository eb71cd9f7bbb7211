#include "bnn/idx.hpp"

#include <fstream>

#include "bnn/errors.hpp"

namespace bnn {

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;
constexpr std::uint64_t kMaxItems = 100'000'000;
constexpr std::uint32_t kMaxSide = 65536;

std::uint32_t read_u32be(std::span<const std::uint8_t> bytes, std::size_t at,
                         const char* what) {
    if (bytes.size() < at + 4) {
        throw TruncatedError(std::string("idx: truncated before ") + what);
    }
    return (std::uint32_t{bytes[at]} << 24) | (std::uint32_t{bytes[at + 1]} << 16) |
           (std::uint32_t{bytes[at + 2]} << 8) | std::uint32_t{bytes[at + 3]};
}

void put_u32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

} // namespace

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes) {
    const std::uint32_t magic = read_u32be(bytes, 0, "image magic");
    if (magic != kImageMagic) throw BadMagicError("idx images: bad magic");
    IdxImages out;
    out.count = read_u32be(bytes, 4, "image count");
    out.rows = read_u32be(bytes, 8, "image rows");
    out.cols = read_u32be(bytes, 12, "image cols");
    if (out.count > kMaxItems || out.rows == 0 || out.cols == 0 || out.rows > kMaxSide ||
        out.cols > kMaxSide) {
        throw SizeError("idx images: implausible dimensions");
    }
    const std::uint64_t payload =
        std::uint64_t{out.count} * out.rows * out.cols;
    if (bytes.size() < 16 + payload) {
        throw TruncatedError("idx images: payload shorter than header promises");
    }
    if (bytes.size() > 16 + payload) {
        throw TrailingDataError("idx images: trailing bytes after payload");
    }
    out.pixels.assign(bytes.begin() + 16, bytes.end());
    return out;
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes) {
    const std::uint32_t magic = read_u32be(bytes, 0, "label magic");
    if (magic != kLabelMagic) throw BadMagicError("idx labels: bad magic");
    const std::uint32_t count = read_u32be(bytes, 4, "label count");
    if (count > kMaxItems) throw SizeError("idx labels: implausible count");
    if (bytes.size() < 8 + std::uint64_t{count}) {
        throw TruncatedError("idx labels: payload shorter than header promises");
    }
    if (bytes.size() > 8 + std::uint64_t{count}) {
        throw TrailingDataError("idx labels: trailing bytes after payload");
    }
    std::vector<std::uint8_t> labels(bytes.begin() + 8, bytes.end());
    for (std::uint8_t l : labels) {
        if (l >= 10) throw ValueError("idx labels: label byte out of [0,10)");
    }
    return labels;
}

std::vector<std::uint8_t> write_idx_images(const IdxImages& images) {
    if (images.pixels.size() !=
        std::uint64_t{images.count} * images.rows * images.cols) {
        throw SizeError("idx images: pixel buffer does not match dimensions");
    }
    std::vector<std::uint8_t> out;
    out.reserve(16 + images.pixels.size());
    put_u32be(out, kImageMagic);
    put_u32be(out, images.count);
    put_u32be(out, images.rows);
    put_u32be(out, images.cols);
    out.insert(out.end(), images.pixels.begin(), images.pixels.end());
    return out;
}

std::vector<std::uint8_t> write_idx_labels(std::span<const std::uint8_t> labels) {
    std::vector<std::uint8_t> out;
    out.reserve(8 + labels.size());
    put_u32be(out, kLabelMagic);
    put_u32be(out, static_cast<std::uint32_t>(labels.size()));
    out.insert(out.end(), labels.begin(), labels.end());
    return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(f)),
                                     std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for write: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed: " + path);
}

} // namespace bnn
