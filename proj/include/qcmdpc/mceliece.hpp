/*
 * Textbook McEliece over QC-MDPC codes: c = mG + e with the systematic
 * generator G = [I | circ(q)]. Decryption strips the planted error with
 * the bit flipping decoder; a decoder that exhausts its budget surfaces
 * as an explicit failure, never as a silently wrong plaintext.
 *
 * No padding or CCA conversion: plaintexts are raw r-bit vectors.
 */
#pragma once

#include <cstdint>

#include "qcmdpc/bitvec.hpp"
#include "qcmdpc/decoder.hpp"
#include "qcmdpc/qc_mdpc.hpp"
#include "qcmdpc/rng.hpp"

namespace qcmdpc {

// Uniform weight-t error vector of length n, deterministic given the
// generator state.
BitVec sample_error(uint32_t n, uint32_t t, Rng& rng);

// c = m [I | circ(q)] + e. m must have r bits, e must have n bits; the
// error is the caller's so that exact patterns can be replayed.
BitVec encrypt(const PublicKey& pub, const BitVec& m, const BitVec& e);

struct DecryptResult {
    bool ok = false;
    BitVec plaintext;    // first r bits of the recovered codeword; empty on failure
    BitVec error;        // recovered error c ^ mG; empty on failure
    DecodeResult decode; // full decoder outcome, including any trace
};

// Decodes c and truncates to the message bits. ok is false exactly when
// the decoder fails; success is certified by a zero syndrome.
DecryptResult decrypt(const PrivateKey& priv, const BitVec& c, const DecoderConfig& cfg);

} // namespace qcmdpc
