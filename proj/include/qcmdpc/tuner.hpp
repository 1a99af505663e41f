/*
 * Search for a syndrome-weight step rule minimizing the worst case.
 *
 * Candidates share one fixed grid of syndrome-weight bounds; the search
 * is coordinate descent over the per-segment thresholds, every candidate
 * evaluated on the same keys and error patterns (common random numbers)
 * so objectives are exactly comparable. The objective is lexicographic:
 * fewest failures, then smallest maximum iteration count, then smallest
 * total iteration count, all exact integers.
 */
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qcmdpc/decoder.hpp"
#include "qcmdpc/experiment.hpp"
#include "qcmdpc/qc_mdpc.hpp"

namespace qcmdpc {

struct TuningConfig {
    Params params;
    uint32_t codes = 1;
    uint32_t trials_per_code = 1000;
    uint64_t seed = 0;

    // Candidate grid: fixed syndrome-weight lower bounds (first must be 0)
    // and the inclusive threshold range searched per segment. A zero
    // threshold bound means "derive from w": [ceil(w/4), w/2].
    std::vector<uint32_t> syndrome_weight_bounds = {0};
    uint32_t threshold_min = 0;
    uint32_t threshold_max = 0;

    uint32_t max_rounds = 4; // full coordinate-descent passes
    // When nonzero, descend on this many trials per code first and
    // re-evaluate only the leading candidates at full scale.
    uint32_t screening_trials = 0;
    uint32_t finalists = 3;

    uint32_t max_iterations = 9;
    SyndromeUpdate update = SyndromeUpdate::per_iteration;
};

struct CandidateEval {
    StepFunction rule;
    uint64_t failures = 0;
    uint32_t max_iterations_observed = 0;
    uint64_t total_iterations = 0; // over successes
    uint64_t instances = 0;
    std::map<uint32_t, uint64_t> histogram;

    // Lexicographic objective value.
    std::tuple<uint64_t, uint32_t, uint64_t> objective() const
    {
        return {failures, max_iterations_observed, total_iterations};
    }
};

struct TuningReport {
    CandidateEval best;
    // Every candidate evaluated on the full-scale shared instance set,
    // in evaluation order; best has the minimal objective among these.
    std::vector<CandidateEval> evaluated;
    // Screening-scale evaluations (empty when screening is off).
    std::vector<CandidateEval> screened;
    uint64_t instances_per_candidate = 0;
};

TuningReport tune_step_function(const TuningConfig& cfg);

// The experiment a candidate evaluation runs, for independent
// re-evaluation of tuner results.
ExperimentConfig tuning_experiment(const TuningConfig& cfg, const StepFunction& rule);

// Decoding traces with ground-truth residuals over fresh instances;
// reproducible from the seed.
std::vector<TraceRow> collect_traces(const Params& params, const DecoderConfig& decoder,
                                     uint32_t codes, uint32_t trials, uint64_t seed);

// Per-candidate summary CSV of a finished tuning run.
std::string tuning_report_csv(const TuningReport& report);

} // namespace qcmdpc
