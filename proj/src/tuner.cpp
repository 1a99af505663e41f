#include "qcmdpc/tuner.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <stdexcept>

namespace qcmdpc {

namespace {

StepFunction make_rule(const std::vector<uint32_t>& bounds, const std::vector<uint32_t>& thresholds)
{
    StepFunction step;
    for (std::size_t i = 0; i < bounds.size(); i++)
        step.entries.push_back({bounds[i], thresholds[i]});
    return step;
}

struct Evaluator {
    const TuningConfig& cfg;
    const std::vector<KeyPair>& keys;
    uint32_t trials;
    std::map<std::vector<uint32_t>, CandidateEval> cache;
    std::vector<const CandidateEval*> order; // cache entries in first-evaluation order

    const CandidateEval& eval(const std::vector<uint32_t>& thresholds)
    {
        auto it = cache.find(thresholds);
        if (it != cache.end())
            return it->second;

        StepFunction rule = make_rule(cfg.syndrome_weight_bounds, thresholds);
        ExperimentConfig ecfg = tuning_experiment(cfg, rule);
        ecfg.trials = trials;
        ExperimentReport rep = run_experiment(ecfg, keys);

        CandidateEval ev;
        ev.rule = std::move(rule);
        ev.failures = rep.failures;
        ev.max_iterations_observed = rep.max_iterations_observed;
        ev.instances = rep.total;
        ev.histogram = rep.histogram;
        for (const auto& [iters, count] : rep.histogram)
            ev.total_iterations += uint64_t(iters) * count;

        auto [pos, inserted] = cache.emplace(thresholds, std::move(ev));
        order.push_back(&pos->second);
        return pos->second;
    }
};

// Coordinate descent: optimize each segment's threshold in turn against
// the shared instance set, until a full round brings no improvement.
void descend(Evaluator& ev, std::vector<uint32_t> current,
             uint32_t lo, uint32_t hi, uint32_t max_rounds)
{
    auto best = ev.eval(current).objective();
    for (uint32_t round = 0; round < max_rounds; round++) {
        bool improved = false;
        for (std::size_t seg = 0; seg < current.size(); seg++) {
            uint32_t best_value = current[seg];
            for (uint32_t v = lo; v <= hi; v++) {
                if (v == current[seg])
                    continue;
                std::vector<uint32_t> cand = current;
                cand[seg] = v;
                auto obj = ev.eval(cand).objective();
                if (obj < best) {
                    best = obj;
                    best_value = v;
                    improved = true;
                }
            }
            current[seg] = best_value;
        }
        if (!improved)
            break;
    }
}

} // namespace

ExperimentConfig tuning_experiment(const TuningConfig& cfg, const StepFunction& rule)
{
    ExperimentConfig ecfg;
    ecfg.params = cfg.params;
    ecfg.decoder.rule = rule;
    ecfg.decoder.max_iterations = cfg.max_iterations;
    ecfg.decoder.update = cfg.update;
    ecfg.codes = cfg.codes;
    ecfg.trials = cfg.trials_per_code;
    ecfg.master_seed = cfg.seed;
    ecfg.workers = 1;
    return ecfg;
}

TuningReport tune_step_function(const TuningConfig& cfg)
{
    cfg.params.validate();
    if (cfg.codes == 0 || cfg.trials_per_code == 0)
        throw std::invalid_argument("tuning needs at least one code and one trial");
    if (cfg.syndrome_weight_bounds.empty() || cfg.syndrome_weight_bounds[0] != 0)
        throw std::invalid_argument("syndrome weight bounds must start at 0");
    for (std::size_t i = 1; i < cfg.syndrome_weight_bounds.size(); i++)
        if (cfg.syndrome_weight_bounds[i] <= cfg.syndrome_weight_bounds[i - 1])
            throw std::invalid_argument("syndrome weight bounds must be strictly increasing");

    uint32_t lo = cfg.threshold_min ? cfg.threshold_min : (cfg.params.w + 3) / 4;
    uint32_t hi = cfg.threshold_max ? cfg.threshold_max : cfg.params.w / 2;
    if (lo < (cfg.params.w + 3) / 4 || hi > cfg.params.w / 2 || lo > hi)
        throw std::invalid_argument("threshold range outside [ceil(w/4), w/2]");

    ExperimentConfig key_cfg = tuning_experiment(cfg, StepFunction{{{0, lo}}});
    std::vector<KeyPair> keys = experiment_keys(key_cfg);

    std::size_t segments = cfg.syndrome_weight_bounds.size();
    std::vector<uint32_t> start(segments);
    for (std::size_t j = 0; j < segments; j++)
        start[j] = std::min(lo + uint32_t(j), hi);

    TuningReport report;
    if (cfg.screening_trials && cfg.screening_trials < cfg.trials_per_code) {
        Evaluator screen{cfg, keys, cfg.screening_trials, {}, {}};
        descend(screen, start, lo, hi, cfg.max_rounds);

        // Promote the screening leaders to a full-scale playoff.
        std::vector<const CandidateEval*> ranked = screen.order;
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const CandidateEval* a, const CandidateEval* b) {
                             return a->objective() < b->objective();
                         });
        Evaluator full{cfg, keys, cfg.trials_per_code, {}, {}};
        uint32_t promoted = std::max(1u, cfg.finalists);
        for (const CandidateEval* c : ranked) {
            if (promoted == 0)
                break;
            std::vector<uint32_t> th;
            for (const auto& e : c->rule.entries)
                th.push_back(e.threshold);
            full.eval(th);
            promoted--;
        }
        for (const CandidateEval* c : screen.order)
            report.screened.push_back(*c);
        for (const CandidateEval* c : full.order)
            report.evaluated.push_back(*c);
    } else {
        Evaluator full{cfg, keys, cfg.trials_per_code, {}, {}};
        descend(full, start, lo, hi, cfg.max_rounds);
        for (const CandidateEval* c : full.order)
            report.evaluated.push_back(*c);
    }

    report.best = *std::min_element(report.evaluated.begin(), report.evaluated.end(),
                                    [](const CandidateEval& a, const CandidateEval& b) {
                                        return a.objective() < b.objective();
                                    });
    report.instances_per_candidate = uint64_t(cfg.codes) * cfg.trials_per_code;
    return report;
}

std::vector<TraceRow> collect_traces(const Params& params, const DecoderConfig& decoder,
                                     uint32_t codes, uint32_t trials, uint64_t seed)
{
    ExperimentConfig ecfg;
    ecfg.params = params;
    ecfg.decoder = decoder;
    ecfg.codes = codes;
    ecfg.trials = trials;
    ecfg.master_seed = seed;
    ecfg.workers = 1;
    ecfg.collect_traces = true;
    return run_experiment(ecfg).traces;
}

std::string tuning_report_csv(const TuningReport& report)
{
    std::string out = "candidate,bounds,thresholds,instances,failures,max_iterations,mean_iterations\n";
    for (std::size_t i = 0; i < report.evaluated.size(); i++) {
        const CandidateEval& ev = report.evaluated[i];
        std::string bounds, thresholds;
        for (const auto& e : ev.rule.entries) {
            if (!bounds.empty()) {
                bounds += ';';
                thresholds += ';';
            }
            bounds += std::to_string(e.min_syndrome_weight);
            thresholds += std::to_string(e.threshold);
        }
        uint64_t successes = ev.instances - ev.failures;
        double mean = successes ? double(ev.total_iterations) / double(successes) : 0.0;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%zu,", i);
        out += buf;
        out += bounds + ',' + thresholds + ',';
        out += std::to_string(ev.instances) + ',' + std::to_string(ev.failures) + ',';
        out += std::to_string(ev.max_iterations_observed) + ',';
        std::snprintf(buf, sizeof buf, "%.6f\n", mean);
        out += buf;
    }
    return out;
}

} // namespace qcmdpc
