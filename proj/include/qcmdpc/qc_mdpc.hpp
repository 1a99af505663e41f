/*
 * QC-MDPC codes with two r x r circulant blocks: H = [H0 | H1], rate 1/2.
 *
 * H0 and H1 are circulants of the sparse first rows h0 and h1, so the
 * whole parity-check matrix is stored as two support lists. All row and
 * column operations happen in F2[x]/(x^r - 1): row j of circ(a) is
 * x^j * a, and column i of circ(a) is x^i * a(x^-1).
 */
#pragma once

#include <cstdint>
#include <vector>

#include "qcmdpc/bitvec.hpp"
#include "qcmdpc/ring.hpp"
#include "qcmdpc/rng.hpp"

namespace qcmdpc {

struct Params {
    uint32_t n = 0; // code length
    uint32_t r = 0; // block size / codimension
    uint32_t w = 0; // parity-check row weight, split evenly across blocks
    uint32_t t = 0; // error weight

    // 80-bit security level.
    static Params preset_80() { return {9602, 4801, 90, 84}; }
    // 128-bit security level.
    static Params preset_128() { return {19714, 9857, 142, 134}; }

    // Throws std::invalid_argument unless n = 2r, 0 < w < r (w even),
    // and 0 < t < n.
    void validate() const;

    bool operator==(const Params& o) const = default;
};

struct PrivateKey {
    Params params;
    SparseIndices h0; // weight w/2
    SparseIndices h1; // weight w/2, invertible in the ring
};

struct PublicKey {
    Params params;
    RingElement q; // first row of (H1^-1 H0)^T; generator is G = [I | circ(q)]
};

struct KeyPair {
    PrivateKey priv;
    PublicKey pub;
};

// Samples h0 and h1 of weight w/2 each, resampling h1 (up to 100 times)
// until it is invertible, and derives q. Requires w/2 odd: an even-weight
// element vanishes at x=1 and is never invertible. Throws
// std::invalid_argument on bad params, std::runtime_error if no invertible
// h1 is found within the attempt budget.
KeyPair keygen(const Params& params, Rng& rng);

// s = x H^T for a received word x of length n. Splitting x = (x0 | x1)
// into halves, s = x0 * h0(x^-1) + x1 * h1(x^-1).
RingElement syndrome(const PrivateKey& key, const BitVec& x);

// Column i of H as a length-r vector: x^i * h0(x^-1) for i < r, else
// x^(i-r) * h1(x^-1). Satisfies syndrome(e_i) = column(i).
RingElement column(const PrivateKey& key, uint32_t i);

// True iff the keys pair up, i.e. G H^T = 0. Checked via the equivalent
// ring identity h1 * q(x^-1) = h0.
bool check_keypair(const PrivateKey& priv, const PublicKey& pub);

} // namespace qcmdpc
