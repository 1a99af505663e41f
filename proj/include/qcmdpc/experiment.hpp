/*
 * Monte-Carlo decoding experiments: n_codes random keys, n_trials
 * weight-t errors per key, each decoded against the zero codeword
 * (syndromes, counters and flip decisions only ever see the syndrome, so
 * decoding e is the same instance as decoding mG + e for any m).
 *
 * Every instance derives its own seed from (master seed, code index,
 * trial index) and lands in its own result slot, so reports and traces
 * are byte-identical no matter how many workers run the schedule.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcmdpc/decoder.hpp"
#include "qcmdpc/mceliece.hpp"
#include "qcmdpc/qc_mdpc.hpp"

namespace qcmdpc {

struct ExperimentConfig {
    Params params;
    DecoderConfig decoder;
    uint32_t codes = 1;
    uint32_t trials = 1; // per code
    uint64_t master_seed = 0;
    uint32_t workers = 1;
    // Weight of the planted errors; defaults to params.t.
    std::optional<uint32_t> error_weight;
    bool collect_traces = false;
};

struct TraceRow {
    uint64_t instance_id; // code_index * trials + trial_index
    IterationTrace iteration;
    bool decoded; // outcome of the whole instance
};

struct ExperimentReport {
    // Effective iterations (sweeps until zero syndrome) -> instance count,
    // successes only.
    std::map<uint32_t, uint64_t> histogram;
    uint64_t failures = 0;
    uint64_t total = 0;
    uint32_t max_iterations_observed = 0; // over successes
    double mean_iterations = 0.0;         // over successes
    double elapsed_seconds = 0.0;
    std::vector<TraceRow> traces; // in instance order; empty unless collected
};

// The exact keypairs run_experiment derives for this config.
std::vector<KeyPair> experiment_keys(const ExperimentConfig& cfg);

ExperimentReport run_experiment(const ExperimentConfig& cfg);
// Same, with pregenerated keys (must match experiment_keys(cfg) derivation
// if reports are to be comparable across calls). keys.size() >= cfg.codes.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const std::vector<KeyPair>& keys);

// Regenerates and decodes the single instance (code, trial) of cfg,
// bit-for-bit as the full run does.
DecodeResult replay_instance(const ExperimentConfig& cfg, uint32_t code, uint32_t trial);

// CSV with columns iterations,count,proportion and a final `inf` row for
// failures. Stable bytes for a given report (no timestamps).
std::string report_csv(const ExperimentReport& report);

// CSV with one row per executed sweep, columns instance_id,iter,
// syndrome_weight_before,threshold,flips,syndrome_weight_after,
// residual_error_weight,outcome.
std::string trace_csv(const std::vector<TraceRow>& traces);

// One histogram column of a rendered comparison table.
struct ReportColumn {
    std::string label;
    std::map<uint32_t, uint64_t> histogram;
    uint64_t failures = 0;
    uint64_t total = 0;
};

ReportColumn column_from_report(const std::string& label, const ExperimentReport& report);
// Inverse of report_csv (label is the caller's name for the column).
ReportColumn parse_report_csv(const std::string& label, const std::string& content);

// Plain-text table, iteration rows ascending plus a failure row, one
// count/proportion pair per column.
std::string render_report_table(const std::vector<ReportColumn>& columns);
// Merged CSV: iterations, then count_<label>,proportion_<label> per column.
std::string merged_report_csv(const std::vector<ReportColumn>& columns);

} // namespace qcmdpc
