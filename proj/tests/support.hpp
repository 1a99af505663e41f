/*
 * Shared test fixtures: toy parameters, naive reference implementations
 * of the ring and code operations (convolution products, dense
 * parity-check matrices, a from-scratch decoder), and small generators.
 * The naive forms are deliberately independent of the library's packed
 * word arithmetic so the two can check each other.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcmdpc/bitvec.hpp"
#include "qcmdpc/decoder.hpp"
#include "qcmdpc/mceliece.hpp"
#include "qcmdpc/qc_mdpc.hpp"
#include "qcmdpc/ring.hpp"
#include "qcmdpc/rng.hpp"

namespace testsup {

using namespace qcmdpc;

inline Params toy_params() { return {1202, 601, 30, 11}; }

inline RingElement random_element(uint32_t r, Rng& rng)
{
    RingElement e(r);
    for (uint32_t i = 0; i < r; i++)
        if (rng.next() & 1)
            e.flip(i);
    return e;
}

inline BitVec random_bits(uint32_t n, Rng& rng)
{
    BitVec v(n);
    for (uint32_t i = 0; i < n; i++)
        if (rng.next() & 1)
            v.flip(i);
    return v;
}

// Coefficient-by-coefficient cyclic convolution.
inline RingElement naive_mul(const RingElement& a, const RingElement& b)
{
    uint32_t r = a.modulus();
    RingElement out(r);
    for (uint32_t i = 0; i < r; i++) {
        if (!a.get(i))
            continue;
        for (uint32_t j = 0; j < r; j++) {
            if (!b.get(j))
                continue;
            uint32_t k = i + j;
            if (k >= r)
                k -= r;
            out.flip(k);
        }
    }
    return out;
}

inline RingElement naive_transpose(const RingElement& a)
{
    uint32_t r = a.modulus();
    RingElement out(r);
    for (uint32_t i = 0; i < r; i++)
        if (a.get(i))
            out.flip((r - i) % r);
    return out;
}

// Exhaustive inverse search; only sensible for tiny r.
inline std::optional<RingElement> brute_force_invert(const RingElement& a)
{
    uint32_t r = a.modulus();
    RingElement one = RingElement::one(r);
    for (uint64_t bits = 0; bits < (uint64_t(1) << r); bits++) {
        RingElement b(r);
        for (uint32_t i = 0; i < r; i++)
            if ((bits >> i) & 1)
                b.flip(i);
        if (naive_mul(a, b) == one)
            return b;
    }
    return std::nullopt;
}

// H = [circ(h0) | circ(h1)] materialized row by row: row j of circ(a)
// carries a_{(i-j) mod r} at column i.
inline std::vector<BitVec> dense_parity_rows(const PrivateKey& key)
{
    uint32_t r = key.params.r, n = key.params.n;
    RingElement h0 = key.h0.densify(), h1 = key.h1.densify();
    std::vector<BitVec> rows;
    rows.reserve(r);
    for (uint32_t j = 0; j < r; j++) {
        BitVec row(n);
        for (uint32_t i = 0; i < r; i++) {
            if (h0.get((i + r - j) % r))
                row.flip(i);
            if (h1.get((i + r - j) % r))
                row.flip(r + i);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RingElement naive_syndrome(const std::vector<BitVec>& rows, const BitVec& x)
{
    uint32_t r = uint32_t(rows.size());
    RingElement s(r);
    for (uint32_t j = 0; j < r; j++) {
        uint32_t dot = 0;
        for (uint32_t i = 0; i < x.size(); i++)
            dot ^= uint32_t(rows[j].get(i) && x.get(i));
        if (dot)
            s.flip(j);
    }
    return s;
}

inline std::vector<uint32_t> naive_counters(const std::vector<BitVec>& rows, const RingElement& s)
{
    uint32_t r = uint32_t(rows.size());
    uint32_t n = rows.empty() ? 0 : rows[0].size();
    std::vector<uint32_t> cnt(n, 0);
    for (uint32_t j = 0; j < r; j++) {
        if (!s.get(j))
            continue;
        for (uint32_t i = 0; i < n; i++)
            if (rows[j].get(i))
                cnt[i]++;
    }
    return cnt;
}

// From-scratch decoder built only on the public ring/code operations,
// recomputing the syndrome at every sweep boundary. Mirrors the engine's
// documented sweep semantics for differential testing.
inline DecodeResult reference_decode(const PrivateKey& key, const BitVec& x, const DecoderConfig& cfg)
{
    uint32_t n = key.params.n, w = key.params.w;
    DecodeResult res;
    res.corrected = x;
    RingElement s = syndrome(key, x);
    uint32_t ws = s.weight();
    bool zero = ws == 0;
    uint32_t floor_b = (w + 3) / 4;

    for (uint32_t iter = 1; iter <= cfg.max_iterations; iter++) {
        if (zero && !cfg.constant_time)
            break;
        std::vector<uint32_t> sigma = counters(key, s);
        uint32_t b;
        if (const auto* fixed = std::get_if<FixedPerIteration>(&cfg.rule)) {
            std::size_t idx = std::min<std::size_t>(iter - 1, fixed->thresholds.size() - 1);
            b = fixed->thresholds[idx];
        } else if (const auto* step = std::get_if<StepFunction>(&cfg.rule)) {
            b = step->evaluate(ws);
        } else {
            const auto& md = std::get<MaxMinusDelta>(cfg.rule);
            uint32_t max_sigma = 0;
            for (uint32_t v : sigma)
                max_sigma = std::max(max_sigma, v);
            b = max_sigma > md.delta ? max_sigma - md.delta : 0;
            b = std::max(b, md.clamp_floor ? floor_b : 1u);
        }

        if (cfg.update == SyndromeUpdate::per_iteration) {
            for (uint32_t i = 0; i < n; i++) {
                if (sigma[i] >= b) {
                    res.corrected.flip(i);
                    s = apply_flip(key, s, i);
                }
            }
        } else {
            for (uint32_t i = 0; i < n; i++) {
                RingElement col = column(key, i);
                uint32_t overlap = 0;
                for (uint32_t pos : col.support())
                    overlap += s.get(pos);
                if (overlap >= b) {
                    res.corrected.flip(i);
                    s = apply_flip(key, s, i);
                }
            }
        }

        s = syndrome(key, res.corrected);
        ws = s.weight();
        res.sweeps_executed++;
        if (!zero && ws == 0) {
            zero = true;
            res.iterations_used = iter;
        }
    }
    res.success = zero;
    if (!res.success)
        res.iterations_used = res.sweeps_executed;
    res.final_syndrome_weight = ws;
    return res;
}

} // namespace testsup
