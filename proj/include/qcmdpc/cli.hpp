/*
 * Command line front end: keygen, encrypt, decrypt, simulate, tune,
 * report. Returns process exit codes; 0 success, 1 runtime error with a
 * one-line diagnostic on stderr, 3 when decryption ran but the decoder
 * failed (so scripts can count decoding failures), CLI parse errors use
 * the argument parser's own nonzero codes.
 */
#pragma once

namespace qcmdpc {

inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_decrypt_failure = 3;

int run_cli(int argc, const char* const* argv);

} // namespace qcmdpc
