#include "qcmdpc/ring.hpp"

#include <bit>
#include <stdexcept>

namespace qcmdpc {

RingElement RingElement::one(uint32_t r)
{
    RingElement e(r);
    e.w_[0] = 1;
    return e;
}

RingElement RingElement::from_support(uint32_t r, const std::vector<uint32_t>& positions)
{
    RingElement e(r);
    for (uint32_t p : positions) {
        if (p >= r)
            throw std::out_of_range("support position " + std::to_string(p) + " >= modulus " + std::to_string(r));
        bits::set(e.w_.data(), p);
    }
    return e;
}

RingElement RingElement::from_bits(const BitVec& v)
{
    RingElement e(v.size());
    e.w_ = v.words();
    return e;
}

bool RingElement::is_zero() const
{
    for (uint64_t v : w_)
        if (v)
            return false;
    return true;
}

std::vector<uint32_t> RingElement::support() const
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

BitVec RingElement::to_bits() const
{
    BitVec v(r_);
    v.words() = w_;
    return v;
}

void RingElement::check_same(const RingElement& o) const
{
    if (r_ != o.r_)
        throw std::invalid_argument("ring elements with different moduli");
}

RingElement& RingElement::operator+=(const RingElement& o)
{
    check_same(o);
    for (std::size_t i = 0; i < w_.size(); i++)
        w_[i] ^= o.w_[i];
    return *this;
}

// Schoolbook product into a 2r-bit accumulator, then fold x^r -> 1.
RingElement operator*(const RingElement& a, const RingElement& b)
{
    a.check_same(b);
    uint32_t r = a.r_;
    std::size_t anw = a.w_.size();
    std::vector<uint64_t> acc(bits::word_count(2 * std::size_t(r)), 0);
    for (std::size_t wi = 0; wi < b.w_.size(); wi++) {
        uint64_t v = b.w_[wi];
        while (v) {
            unsigned bit = unsigned(std::countr_zero(v));
            v &= v - 1;
            std::size_t shift = wi * 64 + bit;
            std::size_t wo = shift >> 6;
            unsigned bo = shift & 63;
            if (bo == 0) {
                for (std::size_t i = 0; i < anw; i++)
                    acc[wo + i] ^= a.w_[i];
            } else {
                for (std::size_t i = 0; i < anw; i++) {
                    acc[wo + i] ^= a.w_[i] << bo;
                    uint64_t carry = a.w_[i] >> (64 - bo);
                    if (carry)
                        acc[wo + i + 1] ^= carry;
                }
            }
        }
    }
    // Fold the high part: coefficient of x^(r+i) is added to x^i.
    RingElement out(r);
    for (std::size_t i = 0; i < out.w_.size(); i++)
        out.w_[i] = acc[i];
    bits::clear_tail(out.w_, r);
    std::size_t nw = out.w_.size();
    std::size_t wo = r >> 6;
    unsigned bo = r & 63;
    for (std::size_t i = 0; i < nw; i++) {
        uint64_t hi = acc[wo + i] >> bo;
        if (bo && wo + i + 1 < acc.size())
            hi |= acc[wo + i + 1] << (64 - bo);
        out.w_[i] ^= hi;
    }
    bits::clear_tail(out.w_, r);
    return out;
}

RingElement RingElement::rotated(uint32_t k) const
{
    k %= r_;
    if (k == 0)
        return *this;
    // x^k * a: coefficient i of a lands at (i + k) mod r. Equivalent to
    // reading r bits starting at offset r - k from the doubled vector a||a.
    std::vector<uint64_t> doubled(bits::word_count(2 * std::size_t(r_)), 0);
    for (std::size_t i = 0; i < w_.size(); i++)
        doubled[i] = w_[i];
    bits::xor_into(doubled.data(), r_, w_.data(), r_);
    RingElement out(r_);
    bits::extract(doubled.data(), r_ - k, r_, out.w_.data());
    return out;
}

RingElement RingElement::transposed() const
{
    RingElement out(r_);
    if (get(0))
        bits::set(out.w_.data(), 0);
    for (uint32_t i = 1; i < r_; i++)
        if (get(i))
            bits::set(out.w_.data(), r_ - i);
    return out;
}

RingElement RingElement::mul_sparse(const std::vector<uint32_t>& b_support) const
{
    RingElement acc(r_);
    for (uint32_t p : b_support)
        acc += rotated(p);
    return acc;
}

namespace {

// Degree of a polynomial stored in words (-1 for zero).
int64_t poly_degree(const std::vector<uint64_t>& w)
{
    for (std::size_t i = w.size(); i-- > 0;)
        if (w[i])
            return int64_t(i) * 64 + (63 - std::countl_zero(w[i]));
    return -1;
}

void poly_xor_shifted(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src, int64_t shift)
{
    std::size_t wo = std::size_t(shift) >> 6;
    unsigned bo = unsigned(shift) & 63;
    if (bo == 0) {
        for (std::size_t i = 0; i + wo < dst.size() && i < src.size(); i++)
            dst[i + wo] ^= src[i];
    } else {
        for (std::size_t i = 0; i < src.size(); i++) {
            if (i + wo < dst.size())
                dst[i + wo] ^= src[i] << bo;
            if (i + wo + 1 < dst.size())
                dst[i + wo + 1] ^= src[i] >> (64 - bo);
        }
    }
}

} // namespace

// Extended Euclid on (a, x^r - 1) with explicit degree tracking. Maintains
//   f = u * a  (mod x^r - 1),   g = v * a  (mod x^r - 1)
// and reduces (f, g) like gcd; a is invertible iff the gcd is 1, in which
// case the cofactor paired with the unit remainder is the inverse.
std::optional<RingElement> RingElement::inverted() const
{
    uint32_t r = r_;
    if (r == 1)
        return get(0) ? std::optional<RingElement>(*this) : std::nullopt;
    if (is_zero())
        return std::nullopt;

    std::size_t nw = bits::word_count(std::size_t(r) + 1);
    std::vector<uint64_t> f(nw, 0), g(nw, 0), u(nw, 0), v(nw, 0);
    for (std::size_t i = 0; i < w_.size(); i++)
        f[i] = w_[i];
    // g = x^r + 1
    g[0] = 1;
    g[r >> 6] |= uint64_t(1) << (r & 63);
    u[0] = 1;

    int64_t df = poly_degree(f), dg = int64_t(r);
    while (df > 0) {
        if (df < dg) {
            std::swap(f, g);
            std::swap(u, v);
            std::swap(df, dg);
        }
        int64_t shift = df - dg;
        poly_xor_shifted(f, g, shift);
        poly_xor_shifted(u, v, shift);
        df = poly_degree(f);
    }
    if (df != 0)
        return std::nullopt; // f hit zero: gcd(a, x^r - 1) is nontrivial
    // f == 1, so u * a = 1 (mod x^r - 1) once u is reduced below degree r.
    RingElement inv(r);
    for (std::size_t i = 0; i < inv.w_.size(); i++)
        inv.w_[i] = u[i];
    bool high = bits::get(u.data(), r);
    bits::clear_tail(inv.w_, r);
    if (high)
        inv.w_[0] ^= 1; // fold x^r -> 1
    return inv;
}

} // namespace qcmdpc
