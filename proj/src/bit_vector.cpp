#include "bnn/bit_vector.hpp"

#include <bit>

#include "bnn/errors.hpp"

namespace bnn {

namespace {

void require_same_length(const BitVector& a, const BitVector& b, const char* op) {
    if (a.size() != b.size()) {
        throw DimensionError(std::string(op) + ": length mismatch (" +
                             std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
    }
}

} // namespace

BitVector BitVector::from_bits(std::span<const std::uint8_t> bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) v.set_bit(i, true);
    }
    return v;
}

BitVector BitVector::from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set_bit(i, true);
        else if (bits[i] != '0') throw ValueError("from_string: expected '0' or '1'");
    }
    return v;
}

std::size_t BitVector::popcount() const {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
        if (bit(i)) s[i] = '1';
    }
    return s;
}

std::size_t BitVector::hamming_distance(const BitVector& other) const {
    require_same_length(*this, other, "hamming_distance");
    std::size_t n = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        n += static_cast<std::size_t>(std::popcount(words_[k] ^ other.words_[k]));
    }
    return n;
}

void BitVector::canonicalize() {
    const std::size_t tail = len_ % kWordBits;
    if (tail != 0 && !words_.empty()) {
        words_.back() &= (Word{1} << tail) - 1;
    }
}

BitVector bv_from_bits(std::span<const std::uint8_t> bits) {
    return BitVector::from_bits(bits);
}

BitVector xnor(const BitVector& a, const BitVector& b) {
    require_same_length(a, b, "xnor");
    BitVector out(a.size());
    auto wa = a.words(), wb = b.words();
    auto wo = out.words();
    for (std::size_t k = 0; k < wo.size(); ++k) wo[k] = ~(wa[k] ^ wb[k]);
    out.canonicalize();
    return out;
}

BitVector xor_bits(const BitVector& a, const BitVector& b) {
    require_same_length(a, b, "xor");
    BitVector out(a.size());
    auto wa = a.words(), wb = b.words();
    auto wo = out.words();
    for (std::size_t k = 0; k < wo.size(); ++k) wo[k] = wa[k] ^ wb[k];
    return out;
}

BitVector and_bits(const BitVector& a, const BitVector& b) {
    require_same_length(a, b, "and");
    BitVector out(a.size());
    auto wa = a.words(), wb = b.words();
    auto wo = out.words();
    for (std::size_t k = 0; k < wo.size(); ++k) wo[k] = wa[k] & wb[k];
    return out;
}

BitVector complement(const BitVector& v) {
    BitVector out(v.size());
    auto wv = v.words();
    auto wo = out.words();
    for (std::size_t k = 0; k < wo.size(); ++k) wo[k] = ~wv[k];
    out.canonicalize();
    return out;
}

std::size_t popcount(const BitVector& v) { return v.popcount(); }

bool majority_bit(const BitVector& v) {
    if (v.empty()) throw DimensionError("majority_bit: empty vector");
    return 2 * v.popcount() >= v.size();
}

BitVector flip_bit(const BitVector& v, std::size_t index) {
    if (index >= v.size()) {
        throw DimensionError("flip_bit: index " + std::to_string(index) +
                             " out of range for length " + std::to_string(v.size()));
    }
    BitVector out = v;
    out.set_bit(index, !out.bit(index));
    return out;
}

} // namespace bnn
