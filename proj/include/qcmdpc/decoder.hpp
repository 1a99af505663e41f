/*
 * Bit flipping decoder with pluggable threshold rules.
 *
 * Each sweep computes the counters sigma_i = |supp(s) ∩ supp(column i)|,
 * picks a threshold b from the configured rule, and flips every position
 * with sigma_i >= b. Decoding succeeds when the syndrome reaches zero
 * within the iteration budget. In constant-time mode the engine always
 * executes exactly max_iterations sweeps; once the syndrome is zero the
 * remaining sweeps compute counters but flip nothing, so the sweep count
 * leaks nothing about the instance.
 */
#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qcmdpc/bitvec.hpp"
#include "qcmdpc/qc_mdpc.hpp"
#include "qcmdpc/ring.hpp"

namespace qcmdpc {

// One threshold per iteration; the last value is reused when decoding
// runs past the end of the list.
struct FixedPerIteration {
    std::vector<uint32_t> thresholds;
};

// b = max_i sigma_i - delta each sweep, so only positions within delta of
// the worst counter flip. With clamp_floor (the default) b never drops
// below ceil(w/4), which blocks mass flips on near-zero counters late in
// decoding.
struct MaxMinusDelta {
    uint32_t delta = 0;
    bool clamp_floor = true;
};

// Piecewise-constant threshold as a function of the current syndrome
// weight. Entries are sorted by min_syndrome_weight; the first entry must
// start at 0 so the function is total on [0, r].
struct StepFunction {
    struct Entry {
        uint32_t min_syndrome_weight;
        uint32_t threshold;
        bool operator==(const Entry&) const = default;
    };
    std::vector<Entry> entries;

    uint32_t evaluate(uint32_t syndrome_weight) const;
    // Entries ascending from 0, bounds <= r, thresholds in [ceil(w/4), w/2].
    void validate(uint32_t r, uint32_t w) const;
    bool operator==(const StepFunction&) const = default;
};

using ThresholdRule = std::variant<FixedPerIteration, MaxMinusDelta, StepFunction>;

enum class SyndromeUpdate {
    per_iteration, // flips applied against counters frozen at sweep start
    per_flip,      // each flip immediately updates the syndrome; positions visited in index order
};

struct DecoderConfig {
    ThresholdRule rule = MaxMinusDelta{};
    uint32_t max_iterations = 9;
    SyndromeUpdate update = SyndromeUpdate::per_iteration;
    bool constant_time = false;
    // Record per-sweep trace rows and re-verify the incrementally updated
    // syndrome against a from-scratch recomputation at every sweep boundary.
    bool trace = false;
};

// Throws std::invalid_argument when the rule or budget is malformed for
// the given parameters.
void validate_config(const DecoderConfig& cfg, const Params& params);

struct IterationTrace {
    uint32_t iteration; // 1-based sweep index
    uint32_t syndrome_weight_before;
    uint32_t threshold;
    uint32_t flips;
    uint32_t syndrome_weight_after;
    int64_t residual_error_weight; // -1 when no reference word was supplied
};

struct DecodeResult {
    bool success = false;
    BitVec corrected;            // input with the flips applied; a codeword iff success
    uint32_t iterations_used = 0;   // sweeps until the syndrome first reached zero
    uint32_t sweeps_executed = 0;   // always max_iterations in constant-time mode
    uint32_t final_syndrome_weight = 0;
    std::vector<IterationTrace> trace;
};

class BitFlipDecoder {
public:
    explicit BitFlipDecoder(const PrivateKey& key);

    // Decodes x toward the nearest codeword. When reference is given
    // (the error-free word x should decode to), trace rows carry
    // wt(current ^ reference) as the residual error weight.
    DecodeResult decode(const BitVec& x, const DecoderConfig& cfg,
                        const BitVec* reference = nullptr) const;

    const Params& params() const { return params_; }

private:
    std::vector<uint64_t> compute_syndrome(const BitVec& x) const;
    void accumulate_counters(const std::vector<uint64_t>& s, std::vector<uint8_t>& cnt) const;
    void toggle_column(std::vector<uint64_t>& s, uint32_t i) const;
    uint32_t column_overlap(const std::vector<uint64_t>& s, uint32_t i) const;

    Params params_;
    std::vector<uint32_t> row_support_[2]; // supp(h0), supp(h1)
    std::vector<uint32_t> col_support_[2]; // supp(h0(x^-1)), supp(h1(x^-1))
};

// All n counters sigma_i = |supp(s) ∩ supp(column i)| for the given
// syndrome. Satisfies sum_i sigma_i = w * wt(s).
std::vector<uint32_t> counters(const PrivateKey& key, const RingElement& s);

// Syndrome after flipping position i of the received word:
// s ^ column(i). Involutive; wt changes by exactly w/2 - 2*sigma_i.
RingElement apply_flip(const PrivateKey& key, const RingElement& s, uint32_t i);

// Threshold rules shipped with the library. The step rules for the two
// presets were produced by tune_step_function on this codebase; other
// parameters get a coarse heuristic that has seen no tuning.
StepFunction default_step_rule(const Params& params);
FixedPerIteration default_fixed_rule(const Params& params);

} // namespace qcmdpc
