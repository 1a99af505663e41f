/*
 * Arithmetic in F2[x]/(x^r - 1).
 *
 * Elements are polynomials of degree < r, packed little-endian into
 * 64-bit words (coefficient of x^i at bit i). Under the circulant
 * identification, the element a corresponds to the r x r matrix whose
 * row j is the coefficient vector of x^j * a; transpose corresponds
 * to the map a(x) -> a(x^-1).
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcmdpc/bitvec.hpp"

namespace qcmdpc {

class RingElement {
public:
    RingElement() = default;
    explicit RingElement(uint32_t r) : r_(r), w_(bits::word_count(r), 0) {}

    static RingElement zero(uint32_t r) { return RingElement(r); }
    static RingElement one(uint32_t r);
    static RingElement from_support(uint32_t r, const std::vector<uint32_t>& positions);
    static RingElement from_bits(const BitVec& v);

    uint32_t modulus() const { return r_; }
    const std::vector<uint64_t>& words() const { return w_; }

    bool get(uint32_t i) const { return bits::get(w_.data(), i); }
    void flip(uint32_t i) { bits::flip(w_.data(), i); }
    uint32_t weight() const { return uint32_t(bits::weight(w_.data(), w_.size())); }
    bool is_zero() const;
    std::vector<uint32_t> support() const;
    BitVec to_bits() const;

    RingElement& operator+=(const RingElement& o);
    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    bool operator==(const RingElement& o) const { return r_ == o.r_ && w_ == o.w_; }
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    // x^k * a (cyclic left shift of the coefficient vector by k).
    RingElement rotated(uint32_t k) const;

    // a(x^-1): coefficient i moves to (r - i) mod r.
    RingElement transposed() const;

    // Multiplicative inverse, or nullopt when gcd(a, x^r - 1) != 1.
    std::optional<RingElement> inverted() const;

    // a * b where b is given by its support; cost O(|supp(b)| * r/64).
    RingElement mul_sparse(const std::vector<uint32_t>& b_support) const;

private:
    void check_same(const RingElement& o) const;

    uint32_t r_ = 0;
    std::vector<uint64_t> w_;
};

// Sparse representation used for keys and error patterns whose weight is
// far below r. Positions are kept sorted and distinct.
struct SparseIndices {
    uint32_t r = 0;
    std::vector<uint32_t> positions;

    RingElement densify() const { return RingElement::from_support(r, positions); }
    static SparseIndices sparsify(const RingElement& e) { return {e.modulus(), e.support()}; }
};

} // namespace qcmdpc
