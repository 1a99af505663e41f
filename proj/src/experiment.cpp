#include "qcmdpc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qcmdpc/rng.hpp"

namespace qcmdpc {

namespace {

constexpr uint64_t domain_keys = 1;
constexpr uint64_t domain_instances = 2;

uint64_t key_seed(uint64_t master, uint32_t code)
{
    return derive_seed(derive_seed(master, domain_keys, 0), code, 0);
}

uint64_t instance_seed(uint64_t master, uint32_t code, uint32_t trial)
{
    return derive_seed(derive_seed(master, domain_instances, 0), code, trial);
}

struct InstanceOutcome {
    uint32_t iterations = 0;
    bool decoded = false;
};

void append_proportion(std::string& out, double p)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", p);
    out += buf;
}

} // namespace

std::vector<KeyPair> experiment_keys(const ExperimentConfig& cfg)
{
    cfg.params.validate();
    std::vector<KeyPair> keys;
    keys.reserve(cfg.codes);
    for (uint32_t c = 0; c < cfg.codes; c++) {
        Rng rng(key_seed(cfg.master_seed, c));
        keys.push_back(keygen(cfg.params, rng));
    }
    return keys;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg)
{
    return run_experiment(cfg, experiment_keys(cfg));
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const std::vector<KeyPair>& keys)
{
    cfg.params.validate();
    if (cfg.codes == 0 || cfg.trials == 0)
        throw std::invalid_argument("experiment needs at least one code and one trial");
    if (keys.size() < cfg.codes)
        throw std::invalid_argument("fewer pregenerated keys than codes");
    uint32_t wt = cfg.error_weight.value_or(cfg.params.t);
    if (wt > cfg.params.n)
        throw std::invalid_argument("error weight exceeds code length");

    DecoderConfig dcfg = cfg.decoder;
    dcfg.trace = dcfg.trace || cfg.collect_traces;
    validate_config(dcfg, cfg.params);

    std::vector<BitFlipDecoder> decoders;
    decoders.reserve(cfg.codes);
    for (uint32_t c = 0; c < cfg.codes; c++)
        decoders.emplace_back(keys[c].priv);

    uint64_t total = uint64_t(cfg.codes) * cfg.trials;
    std::vector<InstanceOutcome> outcomes(total);
    std::vector<std::vector<TraceRow>> trace_slots(cfg.collect_traces ? total : 0);
    BitVec zero(cfg.params.n);

    auto started = std::chrono::steady_clock::now();
    auto work = [&](uint32_t worker, uint32_t stride) {
        for (uint64_t id = worker; id < total; id += stride) {
            uint32_t code = uint32_t(id / cfg.trials);
            uint32_t trial = uint32_t(id % cfg.trials);
            Rng rng(instance_seed(cfg.master_seed, code, trial));
            BitVec e = sample_error(cfg.params.n, wt, rng);
            DecodeResult res = decoders[code].decode(e, dcfg, cfg.collect_traces ? &zero : nullptr);
            // Zero syndrome plus zero residual: the planted error itself was
            // found, not some other codeword's coset.
            bool decoded = res.success && res.corrected.weight() == 0;
            outcomes[id] = {res.iterations_used, decoded};
            if (cfg.collect_traces) {
                auto& slot = trace_slots[id];
                slot.reserve(res.trace.size());
                for (const IterationTrace& it : res.trace)
                    slot.push_back({id, it, decoded});
            }
        }
    };

    uint32_t workers = std::max(1u, cfg.workers);
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (uint32_t k = 0; k < workers; k++)
            pool.emplace_back(work, k, workers);
        for (std::thread& th : pool)
            th.join();
    }
    auto finished = std::chrono::steady_clock::now();

    ExperimentReport report;
    report.total = total;
    report.elapsed_seconds = std::chrono::duration<double>(finished - started).count();
    uint64_t iteration_sum = 0;
    for (const InstanceOutcome& out : outcomes) {
        if (!out.decoded) {
            report.failures++;
            continue;
        }
        report.histogram[out.iterations]++;
        report.max_iterations_observed = std::max(report.max_iterations_observed, out.iterations);
        iteration_sum += out.iterations;
    }
    uint64_t successes = total - report.failures;
    report.mean_iterations = successes ? double(iteration_sum) / double(successes) : 0.0;
    if (cfg.collect_traces) {
        for (auto& slot : trace_slots)
            report.traces.insert(report.traces.end(), slot.begin(), slot.end());
    }
    return report;
}

DecodeResult replay_instance(const ExperimentConfig& cfg, uint32_t code, uint32_t trial)
{
    cfg.params.validate();
    if (code >= cfg.codes || trial >= cfg.trials)
        throw std::out_of_range("instance outside the experiment grid");
    Rng krng(key_seed(cfg.master_seed, code));
    KeyPair kp = keygen(cfg.params, krng);
    BitFlipDecoder decoder(kp.priv);

    DecoderConfig dcfg = cfg.decoder;
    dcfg.trace = dcfg.trace || cfg.collect_traces;
    uint32_t wt = cfg.error_weight.value_or(cfg.params.t);
    Rng rng(instance_seed(cfg.master_seed, code, trial));
    BitVec e = sample_error(cfg.params.n, wt, rng);
    BitVec zero(cfg.params.n);
    return decoder.decode(e, dcfg, cfg.collect_traces ? &zero : nullptr);
}

std::string report_csv(const ExperimentReport& report)
{
    std::string out = "iterations,count,proportion\n";
    double total = double(report.total);
    for (const auto& [iters, count] : report.histogram) {
        out += std::to_string(iters);
        out += ',';
        out += std::to_string(count);
        out += ',';
        append_proportion(out, total ? double(count) / total : 0.0);
        out += '\n';
    }
    out += "inf,";
    out += std::to_string(report.failures);
    out += ',';
    append_proportion(out, total ? double(report.failures) / total : 0.0);
    out += '\n';
    return out;
}

std::string trace_csv(const std::vector<TraceRow>& traces)
{
    std::string out = "instance_id,iter,syndrome_weight_before,threshold,flips,"
                      "syndrome_weight_after,residual_error_weight,outcome\n";
    for (const TraceRow& row : traces) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%" PRIu64 ",%u,%u,%u,%u,%u,%" PRId64 ",%s\n",
                      row.instance_id, row.iteration.iteration,
                      row.iteration.syndrome_weight_before, row.iteration.threshold,
                      row.iteration.flips, row.iteration.syndrome_weight_after,
                      row.iteration.residual_error_weight,
                      row.decoded ? "decoded" : "failed");
        out += buf;
    }
    return out;
}

ReportColumn column_from_report(const std::string& label, const ExperimentReport& report)
{
    return {label, report.histogram, report.failures, report.total};
}

namespace {

uint64_t parse_count(const std::string& field, const std::string& line)
{
    if (field.empty() || field.size() > 19 ||
        field.find_first_not_of("0123456789") != std::string::npos)
        throw std::runtime_error("malformed report CSV row: " + line);
    return std::stoull(field);
}

} // namespace

ReportColumn parse_report_csv(const std::string& label, const std::string& content)
{
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line) || line != "iterations,count,proportion")
        throw std::runtime_error("report CSV must start with the iterations,count,proportion header");
    ReportColumn col;
    col.label = label;
    bool saw_inf = false;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::size_t c1 = line.find(',');
        std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos)
            throw std::runtime_error("malformed report CSV row: " + line);
        std::string iters = line.substr(0, c1);
        uint64_t count = parse_count(line.substr(c1 + 1, c2 - c1 - 1), line);
        if (iters == "inf") {
            col.failures = count;
            saw_inf = true;
        } else {
            if (saw_inf)
                throw std::runtime_error("report CSV rows after the inf row");
            col.histogram[uint32_t(parse_count(iters, line))] += count;
        }
        col.total += count;
    }
    if (!saw_inf)
        throw std::runtime_error("report CSV is missing the inf failure row");
    return col;
}

namespace {

std::vector<std::string> iteration_labels(const std::vector<ReportColumn>& columns,
                                          std::vector<uint32_t>& iteration_rows)
{
    std::set<uint32_t> iters;
    for (const ReportColumn& col : columns)
        for (const auto& [k, v] : col.histogram)
            iters.insert(k);
    iteration_rows.assign(iters.begin(), iters.end());
    std::vector<std::string> labels;
    for (uint32_t k : iteration_rows)
        labels.push_back(std::to_string(k));
    labels.push_back("inf");
    return labels;
}

} // namespace

std::string render_report_table(const std::vector<ReportColumn>& columns)
{
    std::vector<uint32_t> iteration_rows;
    std::vector<std::string> row_labels = iteration_labels(columns, iteration_rows);

    std::ostringstream out;
    out << "iterations";
    for (const ReportColumn& col : columns) {
        out << "  " << col.label << "(count)"
            << "  " << col.label << "(proportion)";
    }
    out << '\n';
    for (std::size_t ri = 0; ri < row_labels.size(); ri++) {
        bool inf = ri + 1 == row_labels.size();
        out << row_labels[ri];
        for (const ReportColumn& col : columns) {
            uint64_t count;
            if (inf) {
                count = col.failures;
            } else {
                auto it = col.histogram.find(iteration_rows[ri]);
                count = it == col.histogram.end() ? 0 : it->second;
            }
            char buf[48];
            std::snprintf(buf, sizeof buf, "  %10llu  %12.6e",
                          (unsigned long long)count,
                          col.total ? double(count) / double(col.total) : 0.0);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

std::string merged_report_csv(const std::vector<ReportColumn>& columns)
{
    std::vector<uint32_t> iteration_rows;
    std::vector<std::string> row_labels = iteration_labels(columns, iteration_rows);

    std::string out = "iterations";
    for (const ReportColumn& col : columns)
        out += ",count_" + col.label + ",proportion_" + col.label;
    out += '\n';
    for (std::size_t ri = 0; ri < row_labels.size(); ri++) {
        bool inf = ri + 1 == row_labels.size();
        out += row_labels[ri];
        for (const ReportColumn& col : columns) {
            uint64_t count;
            if (inf) {
                count = col.failures;
            } else {
                auto it = col.histogram.find(iteration_rows[ri]);
                count = it == col.histogram.end() ? 0 : it->second;
            }
            out += ',';
            out += std::to_string(count);
            out += ',';
            append_proportion(out, col.total ? double(count) / double(col.total) : 0.0);
        }
        out += '\n';
    }
    return out;
}

} // namespace qcmdpc
