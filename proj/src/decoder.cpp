#include "qcmdpc/decoder.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace qcmdpc {

uint32_t StepFunction::evaluate(uint32_t syndrome_weight) const
{
    for (std::size_t i = entries.size(); i-- > 0;)
        if (syndrome_weight >= entries[i].min_syndrome_weight)
            return entries[i].threshold;
    throw std::logic_error("step function has no entry at weight 0");
}

void StepFunction::validate(uint32_t r, uint32_t w) const
{
    if (entries.empty() || entries[0].min_syndrome_weight != 0)
        throw std::invalid_argument("step function must start with an entry at syndrome weight 0");
    uint32_t lo = (w + 3) / 4, hi = w / 2;
    uint32_t prev_bound = 0;
    for (std::size_t i = 0; i < entries.size(); i++) {
        const Entry& e = entries[i];
        if (i > 0 && e.min_syndrome_weight <= prev_bound)
            throw std::invalid_argument("step function bounds must be strictly increasing");
        if (e.min_syndrome_weight > r)
            throw std::invalid_argument("step function bound exceeds the syndrome length");
        if (e.threshold < lo || e.threshold > hi)
            throw std::invalid_argument("step function threshold " + std::to_string(e.threshold) +
                                        " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        prev_bound = e.min_syndrome_weight;
    }
}

void validate_config(const DecoderConfig& cfg, const Params& params)
{
    if (cfg.max_iterations == 0)
        throw std::invalid_argument("iteration budget must be at least 1");
    if (const auto* fixed = std::get_if<FixedPerIteration>(&cfg.rule)) {
        if (fixed->thresholds.empty())
            throw std::invalid_argument("per-iteration threshold list must be nonempty");
        for (uint32_t b : fixed->thresholds)
            if (b < 1 || b > params.w / 2)
                throw std::invalid_argument("per-iteration threshold " + std::to_string(b) +
                                            " outside [1, " + std::to_string(params.w / 2) + "]");
    } else if (const auto* step = std::get_if<StepFunction>(&cfg.rule)) {
        step->validate(params.r, params.w);
    }
}

BitFlipDecoder::BitFlipDecoder(const PrivateKey& key) : params_(key.params)
{
    params_.validate();
    const SparseIndices* blocks[2] = {&key.h0, &key.h1};
    for (int b = 0; b < 2; b++) {
        if (blocks[b]->r != params_.r)
            throw std::invalid_argument("key block modulus does not match params");
        for (uint32_t p : blocks[b]->positions) {
            if (p >= params_.r)
                throw std::invalid_argument("key support position out of range");
            row_support_[b].push_back(p);
            col_support_[b].push_back(p == 0 ? 0 : params_.r - p);
        }
        std::sort(col_support_[b].begin(), col_support_[b].end());
    }
}

std::vector<uint64_t> BitFlipDecoder::compute_syndrome(const BitVec& x) const
{
    uint32_t r = params_.r;
    std::size_t nw = bits::word_count(r);
    std::vector<uint64_t> s(nw, 0);
    // s = sum over blocks of x_blk * h_blk(x^-1); each term is a sum of
    // rotations x^q * x_blk, read out of the doubled buffer x_blk||x_blk.
    std::vector<uint64_t> half(nw, 0), doubled(bits::word_count(2 * std::size_t(r)), 0);
    std::vector<uint64_t> scratch(nw, 0);
    for (int b = 0; b < 2; b++) {
        bits::extract(x.words().data(), b ? r : 0, r, half.data());
        std::fill(doubled.begin(), doubled.end(), 0);
        for (std::size_t i = 0; i < nw; i++)
            doubled[i] = half[i];
        bits::xor_into(doubled.data(), r, half.data(), r);
        for (uint32_t q : col_support_[b]) {
            bits::extract(doubled.data(), (r - q) % r, r, scratch.data());
            for (std::size_t i = 0; i < nw; i++)
                s[i] ^= scratch[i];
        }
    }
    return s;
}

void BitFlipDecoder::accumulate_counters(const std::vector<uint64_t>& s, std::vector<uint8_t>& cnt) const
{
    uint32_t r = params_.r;
    std::fill(cnt.begin(), cnt.end(), 0);
    for (std::size_t wi = 0; wi < s.size(); wi++) {
        uint64_t v = s[wi];
        while (v) {
            uint32_t k = uint32_t(wi * 64 + std::countr_zero(v));
            v &= v - 1;
            for (uint32_t p : row_support_[0]) {
                uint32_t idx = k + p;
                if (idx >= r)
                    idx -= r;
                cnt[idx]++;
            }
            for (uint32_t p : row_support_[1]) {
                uint32_t idx = k + p;
                if (idx >= r)
                    idx -= r;
                cnt[r + idx]++;
            }
        }
    }
}

void BitFlipDecoder::toggle_column(std::vector<uint64_t>& s, uint32_t i) const
{
    uint32_t r = params_.r;
    int b = i < r ? 0 : 1;
    uint32_t base = i < r ? i : i - r;
    for (uint32_t q : col_support_[b]) {
        uint32_t pos = base + q;
        if (pos >= r)
            pos -= r;
        bits::flip(s.data(), pos);
    }
}

uint32_t BitFlipDecoder::column_overlap(const std::vector<uint64_t>& s, uint32_t i) const
{
    uint32_t r = params_.r;
    int b = i < r ? 0 : 1;
    uint32_t base = i < r ? i : i - r;
    uint32_t sigma = 0;
    for (uint32_t q : col_support_[b]) {
        uint32_t pos = base + q;
        if (pos >= r)
            pos -= r;
        sigma += bits::get(s.data(), pos);
    }
    return sigma;
}

DecodeResult BitFlipDecoder::decode(const BitVec& x, const DecoderConfig& cfg,
                                    const BitVec* reference) const
{
    uint32_t n = params_.n;
    if (x.size() != n)
        throw std::invalid_argument("received word length does not match code length");
    if (reference && reference->size() != n)
        throw std::invalid_argument("reference word length does not match code length");
    validate_config(cfg, params_);

    DecodeResult res;
    res.corrected = x;
    std::vector<uint64_t> s = compute_syndrome(res.corrected);
    uint32_t ws = uint32_t(bits::weight(s.data(), s.size()));
    bool reached_zero = ws == 0;
    uint32_t floor_b = (params_.w + 3) / 4;

    std::vector<uint8_t> cnt;
    std::vector<uint32_t> flips;

    for (uint32_t iter = 1; iter <= cfg.max_iterations; iter++) {
        if (reached_zero && !cfg.constant_time)
            break;
        uint32_t ws_before = ws;
        bool per_flip = cfg.update == SyndromeUpdate::per_flip;
        bool need_counters = !per_flip || std::holds_alternative<MaxMinusDelta>(cfg.rule);
        if (need_counters) {
            cnt.resize(n);
            accumulate_counters(s, cnt);
        }

        uint32_t b;
        if (const auto* fixed = std::get_if<FixedPerIteration>(&cfg.rule)) {
            b = fixed->thresholds[std::min<std::size_t>(iter - 1, fixed->thresholds.size() - 1)];
        } else if (const auto* step = std::get_if<StepFunction>(&cfg.rule)) {
            b = step->evaluate(ws);
        } else {
            const auto& md = std::get<MaxMinusDelta>(cfg.rule);
            uint32_t max_sigma = *std::max_element(cnt.begin(), cnt.end());
            b = max_sigma > md.delta ? max_sigma - md.delta : 0;
            b = std::max(b, md.clamp_floor ? floor_b : 1u);
        }

        uint32_t flip_count = 0;
        if (!per_flip) {
            flips.clear();
            for (uint32_t i = 0; i < n; i++)
                if (cnt[i] >= b)
                    flips.push_back(i);
            for (uint32_t i : flips) {
                res.corrected.flip(i);
                toggle_column(s, i);
            }
            flip_count = uint32_t(flips.size());
        } else {
            for (uint32_t i = 0; i < n; i++) {
                if (column_overlap(s, i) >= b) {
                    res.corrected.flip(i);
                    toggle_column(s, i);
                    flip_count++;
                }
            }
        }

        ws = uint32_t(bits::weight(s.data(), s.size()));
        res.sweeps_executed++;
        if (!reached_zero && ws == 0) {
            reached_zero = true;
            res.iterations_used = iter;
        }
        if (cfg.trace) {
            int64_t residual = -1;
            if (reference)
                residual = int64_t((res.corrected ^ *reference).weight());
            res.trace.push_back({iter, ws_before, b, flip_count, ws, residual});
            if (compute_syndrome(res.corrected) != s)
                throw std::logic_error("incremental syndrome diverged from recomputation");
        }
    }

    res.success = reached_zero;
    if (!res.success)
        res.iterations_used = res.sweeps_executed;
    res.final_syndrome_weight = ws;
    return res;
}

std::vector<uint32_t> counters(const PrivateKey& key, const RingElement& s)
{
    uint32_t r = key.params.r;
    if (s.modulus() != r)
        throw std::invalid_argument("syndrome length does not match block size");
    std::vector<uint32_t> cnt(key.params.n, 0);
    for (uint32_t k : s.support()) {
        for (uint32_t p : key.h0.positions) {
            uint32_t idx = k + p;
            if (idx >= r)
                idx -= r;
            cnt[idx]++;
        }
        for (uint32_t p : key.h1.positions) {
            uint32_t idx = k + p;
            if (idx >= r)
                idx -= r;
            cnt[r + idx]++;
        }
    }
    return cnt;
}

RingElement apply_flip(const PrivateKey& key, const RingElement& s, uint32_t i)
{
    return s + column(key, i);
}

namespace {

bool same_code(const Params& p, uint32_t r, uint32_t w) { return p.r == r && p.w == w; }

} // namespace

StepFunction default_step_rule(const Params& params)
{
    // Found by tune_step_function (screened coordinate descent, finalists
    // at 3 codes x 10^4 instances), then validated on a fresh 10 codes x
    // 10^4 run: zero failures, max 5 effective iterations, mean 3.07.
    if (same_code(params, 4801, 90))
        return {{{0, 23}, {1000, 25}, {1700, 29}}};
    // Same procedure at reduced scale (finalists at 2 codes x 1500),
    // fresh-run validation 4 codes x 2500: 25 failures, mean 4.2. This
    // regime keeps a residual failure rate near 1e-3 at 9 sweeps; a
    // 4-segment search collapses back to this rule.
    if (same_code(params, 9857, 142))
        return {{{0, 36}, {2600, 40}, {3900, 45}}};
    // Untuned fallback for custom parameters.
    uint32_t lo = (params.w + 3) / 4;
    uint32_t hi = params.w / 2;
    uint32_t mid = std::min(hi, lo + std::max(1u, params.w / 8));
    return {{{0, lo + (mid - lo) / 2}, {params.r / 4, mid}}};
}

FixedPerIteration default_fixed_rule(const Params& params)
{
    // Per-iteration lists picked from the syndrome-weight trajectories the
    // tuned step rules induce on typical instances, locally refined and
    // validated the same way (preset 128: 6 failures in 10^4, max 8).
    if (same_code(params, 4801, 90))
        return {{29, 26, 23}};
    if (same_code(params, 9857, 142))
        return {{45, 41, 40, 38, 37, 36}};
    StepFunction step = default_step_rule(params);
    return {{step.entries.back().threshold, step.entries.front().threshold}};
}

} // namespace qcmdpc
