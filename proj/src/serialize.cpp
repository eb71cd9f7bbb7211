#include "bnn/serialize.hpp"

#include <cstring>
#include <fstream>

#include "bnn/errors.hpp"

namespace bnn {

namespace {

constexpr char kMagic[5] = {'B', 'N', 'N', 'V', '1'};
// Caps a single width; keeps row byte counts and allocations well inside
// 64-bit arithmetic.
constexpr std::uint32_t kMaxDim = 1u << 24;

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint32_t u32le() {
        need(4);
        std::uint32_t v = bytes_[pos_] | (std::uint32_t{bytes_[pos_ + 1]} << 8) |
                          (std::uint32_t{bytes_[pos_ + 2]} << 16) |
                          (std::uint32_t{bytes_[pos_ + 3]} << 24);
        pos_ += 4;
        return v;
    }

    std::span<const std::uint8_t> take(std::size_t n) {
        need(n);
        auto s = bytes_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    void need(std::size_t n) {
        if (bytes_.size() - pos_ < n) {
            throw TruncatedError("model stream: truncated at offset " + std::to_string(pos_));
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::size_t row_bytes(std::size_t in_dim) { return (in_dim + 7) / 8; }

} // namespace

std::vector<std::uint8_t> save_network(const BinaryNetwork& net) {
    std::vector<std::uint8_t> out;
    const auto sizes = net.sizes();
    out.reserve(5 + 4 * (1 + sizes.size()) + net.depth() * 64);
    out.insert(out.end(), kMagic, kMagic + 5);
    put_u32le(out, static_cast<std::uint32_t>(net.depth()));
    for (std::size_t s : sizes) put_u32le(out, static_cast<std::uint32_t>(s));
    for (const auto& layer : net.layers()) {
        const std::size_t nbytes = row_bytes(layer.in_dim());
        for (const auto& row : layer.rows()) {
            std::size_t base = out.size();
            out.resize(base + nbytes, 0);
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (row.bit(i)) out[base + i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
            }
        }
    }
    return out;
}

BinaryNetwork load_network(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 5) throw TruncatedError("model stream: shorter than magic");
    if (std::memcmp(bytes.data(), kMagic, 5) != 0) {
        throw BadMagicError("model stream: bad magic");
    }
    Reader r(bytes.subspan(5));
    const std::uint32_t depth = r.u32le();
    if (depth == 0) throw SizeError("model stream: zero depth");
    if (depth > 1024) throw SizeError("model stream: implausible depth");
    std::vector<std::uint32_t> sizes(depth + 1);
    for (auto& s : sizes) {
        s = r.u32le();
        if (s == 0) throw SizeError("model stream: zero layer width");
        if (s > kMaxDim) throw SizeError("model stream: layer width overflow");
    }
    std::vector<BinaryLayer> layers;
    layers.reserve(depth);
    for (std::uint32_t l = 0; l < depth; ++l) {
        const std::size_t in_dim = sizes[l];
        const std::size_t out_dim = sizes[l + 1];
        const std::size_t nbytes = row_bytes(in_dim);
        std::vector<BitVector> rows;
        rows.reserve(out_dim);
        for (std::size_t j = 0; j < out_dim; ++j) {
            auto raw = r.take(nbytes);
            BitVector row(in_dim);
            for (std::size_t i = 0; i < in_dim; ++i) {
                if ((raw[i / 8] >> (i % 8)) & 1u) row.set_bit(i, true);
            }
            // Pad bits in the final byte must be zero.
            if (in_dim % 8 != 0) {
                const std::uint8_t pad = static_cast<std::uint8_t>(raw[nbytes - 1] >>
                                                                   (in_dim % 8));
                if (pad != 0) throw ValueError("model stream: nonzero row padding");
            }
            rows.push_back(std::move(row));
        }
        layers.emplace_back(std::move(rows));
    }
    if (r.remaining() != 0) {
        throw TrailingDataError("model stream: " + std::to_string(r.remaining()) +
                                " trailing bytes");
    }
    return BinaryNetwork(std::move(layers));
}

void save_network_file(const BinaryNetwork& net, const std::string& path) {
    const auto bytes = save_network(net);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for write: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed: " + path);
}

BinaryNetwork load_network_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return load_network(bytes);
}

} // namespace bnn
