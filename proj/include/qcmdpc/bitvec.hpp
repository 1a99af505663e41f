/*
 * Packed bit vectors over F2, little-endian within 64-bit words
 * (bit i lives in word i/64 at bit position i%64).
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcmdpc {

namespace bits {

inline std::size_t word_count(std::size_t nbits) { return (nbits + 63) / 64; }

inline bool get(const uint64_t* w, std::size_t i) { return (w[i >> 6] >> (i & 63)) & 1u; }
inline void set(uint64_t* w, std::size_t i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
inline void flip(uint64_t* w, std::size_t i) { w[i >> 6] ^= uint64_t(1) << (i & 63); }

std::size_t weight(const uint64_t* w, std::size_t nwords);

// Zero any bits of the top word at positions >= nbits.
void clear_tail(std::vector<uint64_t>& w, std::size_t nbits);

// dst[0..count) = src bits [from, from+count). dst must hold word_count(count)
// words; src must hold word_count(from+count). dst tail bits are cleared.
void extract(const uint64_t* src, std::size_t from, std::size_t count, uint64_t* dst);

// dst bits [at, at+count) ^= src bits [0, count).
void xor_into(uint64_t* dst, std::size_t at, const uint64_t* src, std::size_t count);

// Lowercase hex of the ceil(nbits/8)-byte little-endian packing.
std::string to_hex(const uint64_t* w, std::size_t nbits);
// Inverse of to_hex; rejects wrong length, non-hex digits, nonzero tail bits.
std::vector<uint64_t> from_hex(const std::string& hex, std::size_t nbits);

} // namespace bits

// Fixed-length bit vector (codewords, ciphertexts, plaintexts).
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(uint32_t n) : n_(n), w_(bits::word_count(n), 0) {}

    static BitVec from_support(uint32_t n, const std::vector<uint32_t>& positions);
    static BitVec from_hex(const std::string& hex, uint32_t n);

    uint32_t size() const { return n_; }
    const std::vector<uint64_t>& words() const { return w_; }
    std::vector<uint64_t>& words() { return w_; }

    bool get(uint32_t i) const { return bits::get(w_.data(), i); }
    void set(uint32_t i, bool v);
    void flip(uint32_t i) { bits::flip(w_.data(), i); }

    uint32_t weight() const { return uint32_t(bits::weight(w_.data(), w_.size())); }

    BitVec& operator^=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // Bits [from, from+count) as a new vector.
    BitVec slice(uint32_t from, uint32_t count) const;
    std::vector<uint32_t> support() const;
    std::string to_hex() const { return bits::to_hex(w_.data(), n_); }

private:
    uint32_t n_ = 0;
    std::vector<uint64_t> w_;
};

} // namespace qcmdpc
