#ifndef BNN_BIT_VECTOR_HPP
#define BNN_BIT_VECTOR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bnn {

// Packed bit sequence over 64-bit words, LSB-first inside each word.
// Bits at positions >= size() in the last word are always zero, so word-wise
// equality, hashing and popcount need no masking.
//
// Treat values as immutable once built; the mutators exist for construction.
class BitVector {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t len_bits)
        : words_((len_bits + kWordBits - 1) / kWordBits, 0), len_(len_bits) {}

    static BitVector from_bits(std::span<const std::uint8_t> bits);
    // "1011..." with index 0 first; anything but '0'/'1' is rejected.
    static BitVector from_string(const std::string& bits);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool bit(std::size_t i) const {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
    }
    void set_bit(std::size_t i, bool v) {
        const Word m = Word{1} << (i % kWordBits);
        if (v) words_[i / kWordBits] |= m;
        else   words_[i / kWordBits] &= ~m;
    }

    std::span<const Word> words() const { return words_; }
    std::span<Word> words() { return words_; }

    std::size_t popcount() const;
    std::string to_string() const;

    // Number of positions where the two vectors differ.
    std::size_t hamming_distance(const BitVector& other) const;

    bool operator==(const BitVector& other) const {
        return len_ == other.len_ && words_ == other.words_;
    }

    // Zeroes any bits past size() in the last word.
    void canonicalize();

private:
    std::vector<Word> words_;
    std::size_t len_ = 0;
};

BitVector bv_from_bits(std::span<const std::uint8_t> bits);

// Bitwise agreement: result bit i = 1 iff a_i == b_i. Lengths must match.
BitVector xnor(const BitVector& a, const BitVector& b);
BitVector xor_bits(const BitVector& a, const BitVector& b);
BitVector and_bits(const BitVector& a, const BitVector& b);
BitVector complement(const BitVector& v);

std::size_t popcount(const BitVector& v);

// 0 iff the vector holds more 0s than 1s, 1 otherwise (a tie counts as 1).
// Rejects the empty vector.
bool majority_bit(const BitVector& v);

// Copy with the bit at `index` toggled.
BitVector flip_bit(const BitVector& v, std::size_t index);

} // namespace bnn

#endif
