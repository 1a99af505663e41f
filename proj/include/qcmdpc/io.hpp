/*
 * Text file formats for keys, ciphertexts, plaintexts and threshold step
 * functions. Readers validate headers and contents strictly and throw
 * std::runtime_error naming the offending file.
 */
#pragma once

#include <string>

#include "qcmdpc/bitvec.hpp"
#include "qcmdpc/decoder.hpp"
#include "qcmdpc/qc_mdpc.hpp"

namespace qcmdpc {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// `qcmdpc-private n r w t`, then `h0: i,i,...` and `h1: i,i,...` with
// sorted distinct decimal indices, w/2 per block.
void write_private_key(const std::string& path, const PrivateKey& key);
PrivateKey read_private_key(const std::string& path);

// `qcmdpc-public n r w t`, then `q: <hex>` (little-endian packed bytes).
void write_public_key(const std::string& path, const PublicKey& key);
PublicKey read_public_key(const std::string& path);

// `qcmdpc-ct n`, then `c: <hex>`.
void write_ciphertext(const std::string& path, const BitVec& c);
BitVec read_ciphertext(const std::string& path);

// Bare hex line of r bits.
void write_plaintext(const std::string& path, const BitVec& m);
BitVec read_plaintext(const std::string& path, uint32_t r);

// `qcmdpc-stepfn r w`, then `<syndrome_weight_lower_bound> <threshold>`
// lines ascending, the first bound 0.
void write_step_function(const std::string& path, const StepFunction& step, uint32_t r, uint32_t w);
// Validates the header against the expected code parameters.
StepFunction read_step_function(const std::string& path, uint32_t r, uint32_t w);

} // namespace qcmdpc
