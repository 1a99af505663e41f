#include "qcmdpc/qc_mdpc.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qcmdpc {

void Params::validate() const
{
    if (r == 0 || n != 2 * r)
        throw std::invalid_argument("code length must be twice the block size");
    if (w == 0 || w >= r)
        throw std::invalid_argument("row weight must satisfy 0 < w < r");
    if (w % 2 != 0)
        throw std::invalid_argument("row weight must be even to split across two blocks");
    if (t == 0 || t >= n)
        throw std::invalid_argument("error weight must satisfy 0 < t < n");
}

namespace {

// Support of a(x^-1) given the support of a.
std::vector<uint32_t> conjugate_support(const SparseIndices& a)
{
    std::vector<uint32_t> s;
    s.reserve(a.positions.size());
    for (uint32_t p : a.positions)
        s.push_back(p == 0 ? 0 : a.r - p);
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace

KeyPair keygen(const Params& params, Rng& rng)
{
    params.validate();
    uint32_t half = params.w / 2;
    if (half % 2 == 0)
        throw std::invalid_argument("block weight w/2 must be odd, otherwise h1(1) = 0 and h1 is never invertible");

    SparseIndices h0{params.r, rng.distinct(params.r, half)};

    for (int attempt = 0; attempt < 100; attempt++) {
        SparseIndices h1{params.r, rng.distinct(params.r, half)};
        auto h1_inv = h1.densify().inverted();
        if (!h1_inv)
            continue;
        RingElement q = (h0.densify() * *h1_inv).transposed();
        PrivateKey priv{params, std::move(h0), std::move(h1)};
        PublicKey pub{params, std::move(q)};
        return {std::move(priv), std::move(pub)};
    }
    throw std::runtime_error("no invertible h1 found in 100 attempts");
}

RingElement syndrome(const PrivateKey& key, const BitVec& x)
{
    uint32_t r = key.params.r;
    if (x.size() != key.params.n)
        throw std::invalid_argument("received word length " + std::to_string(x.size()) +
                                    " does not match code length " + std::to_string(key.params.n));
    RingElement x0 = RingElement::from_bits(x.slice(0, r));
    RingElement x1 = RingElement::from_bits(x.slice(r, r));
    return x0.mul_sparse(conjugate_support(key.h0)) + x1.mul_sparse(conjugate_support(key.h1));
}

RingElement column(const PrivateKey& key, uint32_t i)
{
    uint32_t r = key.params.r;
    if (i >= key.params.n)
        throw std::out_of_range("column index " + std::to_string(i) + " >= " + std::to_string(key.params.n));
    const SparseIndices& h = i < r ? key.h0 : key.h1;
    uint32_t shift = i < r ? i : i - r;
    std::vector<uint32_t> positions = conjugate_support(h);
    for (uint32_t& p : positions) {
        p += shift;
        if (p >= r)
            p -= r;
    }
    return RingElement::from_support(r, positions);
}

bool check_keypair(const PrivateKey& priv, const PublicKey& pub)
{
    if (priv.params != pub.params || pub.q.modulus() != priv.params.r)
        return false;
    return priv.h1.densify() * pub.q.transposed() == priv.h0.densify();
}

} // namespace qcmdpc
