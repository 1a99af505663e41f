/*
 * End-to-end acceptance checks, one line of output per criterion:
 *
 *   1 ring algebra against naive oracles, exhaustive inversion at r = 7
 *   2 keypair consistency and encrypt/decrypt correctness at the 80-bit preset
 *   3 counter sum identity at both presets
 *   4 mean effective iterations of the tuned 80-bit rule
 *   5 worst case of the tuned 80-bit rule at 10^5 instances
 *   6 constant-time sweep count and outcome equivalence
 *   7 worker-count invariance of experiment outputs
 *   8 tuner winner dominates every candidate it evaluated
 *
 * Exit status is the number of failed criteria. Runs in a few minutes in
 * a release build; every seed is pinned.
 */
#include <cinttypes>
#include <cstdarg>
#include <cstdio>
#include <numeric>

#include "qcmdpc/experiment.hpp"
#include "qcmdpc/tuner.hpp"
#include "support.hpp"

using namespace qcmdpc;

namespace {

int failures = 0;

void report(int criterion, const char* name, bool pass, const std::string& detail)
{
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, name,
                detail.c_str());
    std::fflush(stdout);
    if (!pass)
        failures++;
}

std::string fmt(const char* f, ...)
{
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

void criterion1_algebra()
{
    uint64_t cases = 0, violations = 0;
    auto expect = [&](bool ok) {
        cases++;
        if (!ok)
            violations++;
    };

    // Every element of F2[x]/(x^7 - 1) against the exhaustive oracle.
    for (uint32_t pattern = 0; pattern < 128; pattern++) {
        RingElement a(7);
        for (uint32_t i = 0; i < 7; i++)
            if ((pattern >> i) & 1)
                a.flip(i);
        auto fast = a.inverted();
        auto naive = testsup::brute_force_invert(a);
        expect(fast.has_value() == naive.has_value());
        if (fast && naive) {
            expect(*fast == *naive);
            expect(a * *fast == RingElement::one(7));
        }
    }

    for (uint32_t r : {7u, 31u, 101u}) {
        Rng rng(derive_seed(1001, r, 0));
        for (int rep = 0; rep < 600; rep++) {
            RingElement a = testsup::random_element(r, rng);
            RingElement b = testsup::random_element(r, rng);
            RingElement c = testsup::random_element(r, rng);

            expect(a * b == b * a);
            expect((a * b) * c == a * (b * c));
            expect(a * (b + c) == a * b + a * c);
            expect(a * b == testsup::naive_mul(a, b));
            expect(a.transposed().transposed() == a);
            expect((a * b).transposed() == a.transposed() * b.transposed());
            expect(a.mul_sparse(b.support()) == a * b);
            uint32_t k = uint32_t(rng.below(r));
            RingElement xk(r);
            xk.flip(k);
            expect(a.rotated(k) == a * xk);

            auto inv = a.inverted();
            expect(a.weight() % 2 == 0 ? !inv.has_value() : true);
            if (inv)
                expect(a * *inv == RingElement::one(r));
        }
    }

    report(1, "ring algebra vs naive oracles", violations == 0 && cases >= 10000,
           fmt("%" PRIu64 " cases, %" PRIu64 " violations", cases, violations));
}

void criterion2_scheme()
{
    Params p = Params::preset_80();
    DecoderConfig cfg;
    cfg.rule = default_step_rule(p);

    uint64_t pair_failures = 0, wrong = 0, decode_failures = 0, total = 0;
    for (uint32_t k = 0; k < 100; k++) {
        Rng kr(derive_seed(1002, k, 0));
        KeyPair kp = keygen(p, kr);
        if (!check_keypair(kp.priv, kp.pub))
            pair_failures++;
        for (uint32_t msg = 0; msg < 100; msg++) {
            Rng mr(derive_seed(1003, k, msg));
            BitVec m = testsup::random_bits(p.r, mr);
            BitVec e = sample_error(p.n, p.t, mr);
            DecryptResult d = decrypt(kp.priv, encrypt(kp.pub, m, e), cfg);
            total++;
            if (!d.ok)
                decode_failures++;
            else if (d.plaintext != m || d.error != e)
                wrong++;
        }
    }
    report(2, "keypairs pair up, decrypt inverts encrypt",
           pair_failures == 0 && wrong == 0 && decode_failures == 0,
           fmt("100 keypairs, %" PRIu64 " encryptions, %" PRIu64 " bad pairs, %" PRIu64
               " wrong plaintexts, %" PRIu64 " decode failures",
               total, pair_failures, wrong, decode_failures));
}

void criterion3_counter_sum()
{
    uint64_t checked = 0, violations = 0;
    for (Params p : {Params::preset_80(), Params::preset_128()}) {
        Rng kr(derive_seed(1004, p.r, 0));
        KeyPair kp = keygen(p, kr);
        for (int rep = 0; rep < 1000; rep++) {
            Rng er(derive_seed(1005, p.r, rep));
            BitVec x = sample_error(p.n, uint32_t(er.below(2 * p.t) + 1), er);
            RingElement s = syndrome(kp.priv, x);
            std::vector<uint32_t> cnt = counters(kp.priv, s);
            uint64_t sum = std::accumulate(cnt.begin(), cnt.end(), uint64_t(0));
            checked++;
            if (sum != uint64_t(p.w) * s.weight())
                violations++;
        }
    }
    report(3, "counter sum equals w * wt(s)", violations == 0 && checked == 2000,
           fmt("%" PRIu64 " syndromes across both presets, %" PRIu64 " violations", checked,
               violations));
}

ExperimentReport tuned_preset80_report()
{
    ExperimentConfig cfg;
    cfg.params = Params::preset_80();
    cfg.decoder.rule = default_step_rule(cfg.params);
    cfg.codes = 10;
    cfg.trials = 10000;
    cfg.master_seed = 1006;
    return run_experiment(cfg);
}

void criterion4_mean(const ExperimentReport& rep)
{
    bool pass = rep.total >= 10000 && rep.mean_iterations >= 2.5 && rep.mean_iterations <= 4.5;
    report(4, "mean effective iterations in [2.5, 4.5]", pass,
           fmt("mean %.3f over %" PRIu64 " instances", rep.mean_iterations, rep.total));
}

void criterion5_worst_case(const ExperimentReport& rep)
{
    uint64_t within4 = 0;
    for (const auto& [iters, count] : rep.histogram)
        if (iters <= 4)
            within4 += count;
    double p4 = rep.total ? double(within4) / double(rep.total) : 0.0;
    bool pass = rep.total >= 100000 && rep.failures == 0 && rep.max_iterations_observed <= 9 &&
                p4 >= 0.99;
    report(5, "zero failures, max <= 9, P(<=4 iterations) >= 0.99", pass,
           fmt("%" PRIu64 " instances, %" PRIu64 " failures, max %u, P(<=4) = %.5f", rep.total,
               rep.failures, rep.max_iterations_observed, p4));
}

void criterion6_constant_time()
{
    Params p = testsup::toy_params();
    Rng kr(1007);
    KeyPair kp = keygen(p, kr);
    BitFlipDecoder dec(kp.priv);

    DecoderConfig plain;
    plain.rule = default_step_rule(p);
    DecoderConfig ct = plain;
    ct.constant_time = true;

    uint64_t instances = 0, sweep_violations = 0, mismatches = 0;
    for (int rep = 0; rep < 1000; rep++) {
        uint32_t wt = rep % 3 == 0 ? 0 : (rep % 3 == 1 ? 1 : p.t);
        Rng er(derive_seed(1008, 0, rep));
        BitVec e = sample_error(p.n, wt, er);
        DecodeResult a = dec.decode(e, plain);
        DecodeResult b = dec.decode(e, ct);
        instances++;
        if (b.sweeps_executed != ct.max_iterations)
            sweep_violations++;
        if (a.success != b.success || a.iterations_used != b.iterations_used ||
            a.corrected != b.corrected)
            mismatches++;
    }
    report(6, "constant-time budget and outcome equivalence",
           sweep_violations == 0 && mismatches == 0,
           fmt("%" PRIu64 " instances, %" PRIu64 " sweep-count violations, %" PRIu64
               " outcome mismatches",
               instances, sweep_violations, mismatches));
}

void criterion7_determinism()
{
    ExperimentConfig cfg;
    cfg.params = Params::preset_80();
    cfg.decoder.rule = default_step_rule(cfg.params);
    cfg.codes = 2;
    cfg.trials = 500;
    cfg.master_seed = 1009;
    cfg.collect_traces = true;

    cfg.workers = 1;
    ExperimentReport one = run_experiment(cfg);
    cfg.workers = 8;
    ExperimentReport eight = run_experiment(cfg);

    bool reports_equal = report_csv(one) == report_csv(eight);
    bool traces_equal = trace_csv(one.traces) == trace_csv(eight.traces);
    report(7, "1-worker and 8-worker runs are byte-identical", reports_equal && traces_equal,
           fmt("%" PRIu64 " instances, report CSV %s, trace CSV %s", one.total,
               reports_equal ? "equal" : "DIFFER", traces_equal ? "equal" : "DIFFER"));
}

void criterion8_tuner()
{
    TuningConfig cfg;
    cfg.params = testsup::toy_params();
    cfg.codes = 2;
    cfg.trials_per_code = 150;
    cfg.seed = 1010;
    cfg.syndrome_weight_bounds = {0, 150};
    cfg.threshold_min = 8;
    cfg.threshold_max = 13;
    cfg.max_rounds = 3;

    TuningReport rep = tune_step_function(cfg);

    uint64_t candidates = 0, dominated = 0, reeval_mismatches = 0;
    for (const CandidateEval& ev : rep.evaluated) {
        candidates++;
        if (rep.best.objective() <= ev.objective())
            dominated++;
        ExperimentReport check = run_experiment(tuning_experiment(cfg, ev.rule));
        uint64_t total_iters = 0;
        for (const auto& [iters, count] : check.histogram)
            total_iters += uint64_t(iters) * count;
        if (check.failures != ev.failures ||
            check.max_iterations_observed != ev.max_iterations_observed ||
            total_iters != ev.total_iterations)
            reeval_mismatches++;
    }
    report(8, "tuner winner dominates all evaluated candidates",
           candidates > 1 && dominated == candidates && reeval_mismatches == 0,
           fmt("%" PRIu64 " candidates, %" PRIu64 " dominated, %" PRIu64
               " re-evaluation mismatches",
               candidates, dominated, reeval_mismatches));
}

} // namespace

int main()
{
    criterion1_algebra();
    criterion2_scheme();
    criterion3_counter_sum();

    ExperimentReport rep80 = tuned_preset80_report();
    criterion4_mean(rep80);
    criterion5_worst_case(rep80);

    criterion6_constant_time();
    criterion7_determinism();
    criterion8_tuner();

    std::printf("%d of 8 criteria failed\n", failures);
    return failures;
}
