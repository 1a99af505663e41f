#include "qcmdpc/bitvec.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qcmdpc {
namespace bits {

std::size_t weight(const uint64_t* w, std::size_t nwords)
{
    std::size_t c = 0;
    for (std::size_t i = 0; i < nwords; i++)
        c += std::popcount(w[i]);
    return c;
}

void clear_tail(std::vector<uint64_t>& w, std::size_t nbits)
{
    if (nbits & 63)
        w[nbits >> 6] &= (uint64_t(1) << (nbits & 63)) - 1;
}

void extract(const uint64_t* src, std::size_t from, std::size_t count, uint64_t* dst)
{
    if (count == 0)
        return;
    std::size_t nw = word_count(count);
    std::size_t wo = from >> 6;
    unsigned bo = from & 63;
    std::size_t last = (from + count - 1) >> 6;
    for (std::size_t i = 0; i < nw; i++) {
        uint64_t lo = src[wo + i] >> bo;
        uint64_t hi = (bo && wo + i + 1 <= last) ? src[wo + i + 1] << (64 - bo) : 0;
        dst[i] = lo | hi;
    }
    if (count & 63)
        dst[nw - 1] &= (uint64_t(1) << (count & 63)) - 1;
}

void xor_into(uint64_t* dst, std::size_t at, const uint64_t* src, std::size_t count)
{
    std::size_t nw = word_count(count);
    std::size_t wo = at >> 6;
    unsigned bo = at & 63;
    for (std::size_t i = 0; i < nw; i++) {
        uint64_t v = src[i];
        if (i == nw - 1 && (count & 63))
            v &= (uint64_t(1) << (count & 63)) - 1;
        dst[wo + i] ^= v << bo;
        if (bo) {
            uint64_t carry = v >> (64 - bo);
            // Only write the carry word when it holds destination bits.
            if (carry)
                dst[wo + i + 1] ^= carry;
        }
    }
}

static const char* hex_digits = "0123456789abcdef";

std::string to_hex(const uint64_t* w, std::size_t nbits)
{
    std::size_t nbytes = (nbits + 7) / 8;
    std::string out;
    out.reserve(2 * nbytes);
    for (std::size_t b = 0; b < nbytes; b++) {
        uint8_t byte = uint8_t(w[b >> 3] >> ((b & 7) * 8));
        out.push_back(hex_digits[byte >> 4]);
        out.push_back(hex_digits[byte & 15]);
    }
    return out;
}

static int hex_val(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::vector<uint64_t> from_hex(const std::string& hex, std::size_t nbits)
{
    std::size_t nbytes = (nbits + 7) / 8;
    if (hex.size() != 2 * nbytes)
        throw std::invalid_argument("hex string has wrong length for " + std::to_string(nbits) + " bits");
    std::vector<uint64_t> w(word_count(nbits), 0);
    for (std::size_t b = 0; b < nbytes; b++) {
        int hi = hex_val(hex[2 * b]), lo = hex_val(hex[2 * b + 1]);
        if (hi < 0 || lo < 0)
            throw std::invalid_argument("invalid hex digit in bit vector");
        w[b >> 3] |= uint64_t((hi << 4) | lo) << ((b & 7) * 8);
    }
    if (nbits & 63) {
        uint64_t tail = w[nbits >> 6] >> (nbits & 63);
        if (tail)
            throw std::invalid_argument("hex string sets bits beyond length " + std::to_string(nbits));
    }
    return w;
}

} // namespace bits

BitVec BitVec::from_support(uint32_t n, const std::vector<uint32_t>& positions)
{
    BitVec v(n);
    for (uint32_t p : positions) {
        if (p >= n)
            throw std::out_of_range("support position " + std::to_string(p) + " >= length " + std::to_string(n));
        bits::set(v.w_.data(), p);
    }
    return v;
}

BitVec BitVec::from_hex(const std::string& hex, uint32_t n)
{
    BitVec v(n);
    v.w_ = bits::from_hex(hex, n);
    return v;
}

void BitVec::set(uint32_t i, bool v)
{
    if (v)
        bits::set(w_.data(), i);
    else
        w_[i >> 6] &= ~(uint64_t(1) << (i & 63));
}

BitVec& BitVec::operator^=(const BitVec& o)
{
    if (n_ != o.n_)
        throw std::invalid_argument("xor of bit vectors with different lengths");
    for (std::size_t i = 0; i < w_.size(); i++)
        w_[i] ^= o.w_[i];
    return *this;
}

BitVec BitVec::slice(uint32_t from, uint32_t count) const
{
    if (uint64_t(from) + count > n_)
        throw std::out_of_range("slice past end of bit vector");
    BitVec out(count);
    if (count)
        bits::extract(w_.data(), from, count, out.w_.data());
    return out;
}

std::vector<uint32_t> BitVec::support() const
{
    std::vector<uint32_t> s;
    for (std::size_t wi = 0; wi < w_.size(); wi++) {
        uint64_t v = w_[wi];
        while (v) {
            s.push_back(uint32_t(wi * 64 + std::countr_zero(v)));
            v &= v - 1;
        }
    }
    return s;
}

} // namespace qcmdpc
