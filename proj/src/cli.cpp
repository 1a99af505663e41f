#include "qcmdpc/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qcmdpc/experiment.hpp"
#include "qcmdpc/io.hpp"
#include "qcmdpc/mceliece.hpp"
#include "qcmdpc/tuner.hpp"

namespace qcmdpc {

namespace {

std::vector<uint32_t> split_u32_list(const std::string& text, const std::string& what)
{
    std::vector<uint32_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.empty() || item.size() > 10 || item.find_first_not_of("0123456789") != std::string::npos)
            throw std::runtime_error(what + ": bad value `" + item + "`");
        out.push_back(uint32_t(std::stoul(item)));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

struct ParamsOpts {
    int preset = 0;
    std::string custom;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--preset", preset, "parameter preset: 80 or 128 (bit security)");
        cmd->add_option("--params", custom, "custom parameters as n,r,w,t");
    }

    Params resolve() const
    {
        if (preset && !custom.empty())
            throw std::runtime_error("--preset and --params are mutually exclusive");
        if (preset == 80)
            return Params::preset_80();
        if (preset == 128)
            return Params::preset_128();
        if (preset)
            throw std::runtime_error("unknown preset, use 80 or 128");
        if (custom.empty())
            throw std::runtime_error("one of --preset or --params is required");
        std::vector<uint32_t> v = split_u32_list(custom, "--params");
        if (v.size() != 4)
            throw std::runtime_error("--params needs exactly n,r,w,t");
        Params p{v[0], v[1], v[2], v[3]};
        p.validate();
        return p;
    }
};

struct DecoderOpts {
    std::string variant = "step";
    std::string rule_file;
    std::string thresholds;
    uint32_t delta = 2;
    uint32_t max_iters = 9;
    std::string update = "sweep";
    bool constant_time = false;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--variant", variant, "threshold rule: fixed, maxdelta or step (default step)");
        cmd->add_option("--rule", rule_file, "step function file (variant step; default: built-in tuned rule)");
        cmd->add_option("--thresholds", thresholds,
                        "comma list of per-iteration thresholds (variant fixed; default: built-in list)");
        cmd->add_option("--delta", delta, "max-minus-delta margin (variant maxdelta, default 2)");
        cmd->add_option("--max-iters", max_iters, "iteration budget (default 9)");
        cmd->add_option("--update", update, "syndrome update: sweep (per iteration) or flip (per flip)");
        cmd->add_flag("--constant-time", constant_time,
                      "always execute exactly --max-iters sweeps");
    }

    DecoderConfig resolve(const Params& params) const
    {
        DecoderConfig cfg;
        if (variant == "step") {
            cfg.rule = rule_file.empty() ? default_step_rule(params)
                                         : read_step_function(rule_file, params.r, params.w);
        } else if (variant == "fixed") {
            cfg.rule = thresholds.empty()
                           ? default_fixed_rule(params)
                           : FixedPerIteration{split_u32_list(thresholds, "--thresholds")};
        } else if (variant == "maxdelta") {
            cfg.rule = MaxMinusDelta{delta};
        } else {
            throw std::runtime_error("unknown variant `" + variant + "`, use fixed, maxdelta or step");
        }
        if (update == "sweep")
            cfg.update = SyndromeUpdate::per_iteration;
        else if (update == "flip")
            cfg.update = SyndromeUpdate::per_flip;
        else
            throw std::runtime_error("unknown update mode `" + update + "`, use sweep or flip");
        cfg.max_iterations = max_iters;
        cfg.constant_time = constant_time;
        validate_config(cfg, params);
        return cfg;
    }
};

std::string label_for(const std::string& path)
{
    return std::filesystem::path(path).stem().string();
}

void print_summary(const ExperimentReport& rep, const DecoderConfig& cfg)
{
    std::cout << render_report_table({column_from_report("run", rep)});
    std::printf("instances: %llu  failures: %llu  max effective iterations: %u  mean: %.3f\n",
                (unsigned long long)rep.total, (unsigned long long)rep.failures,
                rep.max_iterations_observed, rep.mean_iterations);
    if (cfg.constant_time)
        std::printf("constant-time mode: every instance executed exactly %u sweeps\n",
                    cfg.max_iterations);
    std::printf("elapsed: %.2f s\n", rep.elapsed_seconds);
}

} // namespace

int run_cli(int argc, const char* const* argv)
{
    CLI::App app{"QC-MDPC McEliece laboratory: keygen/encrypt/decrypt plus a bit-flipping "
                 "decoder workbench with tunable thresholds.\n"
                 "Exit codes: 0 ok, 1 error, 3 decryption ran but decoding failed."};
    app.require_subcommand(1);

    // keygen
    CLI::App* keygen_cmd = app.add_subcommand("keygen", "generate a keypair");
    ParamsOpts keygen_params;
    keygen_params.attach(keygen_cmd);
    uint64_t keygen_seed = 0;
    std::string keygen_out;
    keygen_cmd->add_option("--seed", keygen_seed, "keygen seed (default 0)");
    keygen_cmd->add_option("--out", keygen_out, "output prefix; writes <out>.sk and <out>.pk")->required();

    // encrypt
    CLI::App* encrypt_cmd = app.add_subcommand("encrypt", "encrypt an r-bit plaintext");
    std::string enc_pub, enc_msg, enc_out;
    uint64_t enc_seed = 0;
    std::optional<uint32_t> enc_weight;
    encrypt_cmd->add_option("--pub", enc_pub, "public key file")->required();
    encrypt_cmd->add_option("--msg", enc_msg, "plaintext file (hex of r bits)")->required();
    encrypt_cmd->add_option("--seed", enc_seed, "error sampling seed (default 0)");
    encrypt_cmd->add_option("--error-weight", enc_weight, "planted error weight (default t)");
    encrypt_cmd->add_option("--out", enc_out, "ciphertext file")->required();

    // decrypt
    CLI::App* decrypt_cmd = app.add_subcommand("decrypt", "decrypt a ciphertext");
    std::string dec_priv, dec_ct, dec_out, dec_trace;
    DecoderOpts dec_opts;
    decrypt_cmd->add_option("--priv", dec_priv, "private key file")->required();
    decrypt_cmd->add_option("--ct", dec_ct, "ciphertext file")->required();
    decrypt_cmd->add_option("--out", dec_out, "plaintext output file (default: print hex)");
    decrypt_cmd->add_option("--trace", dec_trace, "write per-sweep decoder trace CSV");
    dec_opts.attach(decrypt_cmd);

    // simulate
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo decoding experiment");
    ParamsOpts sim_params;
    sim_params.attach(sim_cmd);
    DecoderOpts sim_opts;
    sim_opts.attach(sim_cmd);
    uint64_t sim_seed = 0;
    uint32_t sim_codes = 10, sim_trials = 1000, sim_workers = 1;
    std::optional<uint32_t> sim_weight;
    std::string sim_out, sim_trace;
    sim_cmd->add_option("--seed", sim_seed, "master seed (default 0)");
    sim_cmd->add_option("--codes", sim_codes, "number of random keys (default 10)");
    sim_cmd->add_option("--trials", sim_trials, "instances per key (default 1000)");
    sim_cmd->add_option("--workers", sim_workers, "worker threads (default 1; results identical)");
    sim_cmd->add_option("--error-weight", sim_weight, "planted error weight (default t)");
    sim_cmd->add_option("--out", sim_out, "report CSV file");
    sim_cmd->add_option("--trace", sim_trace, "trace CSV file (records every sweep of every instance)");

    // tune
    CLI::App* tune_cmd = app.add_subcommand("tune", "search step-function thresholds");
    ParamsOpts tune_params;
    tune_params.attach(tune_cmd);
    uint64_t tune_seed = 0;
    uint32_t tune_codes = 2, tune_trials = 1000, tune_rounds = 4;
    uint32_t tune_screening = 0, tune_finalists = 3, tune_max_iters = 9;
    uint32_t tune_tmin = 0, tune_tmax = 0;
    std::string tune_bounds = "0", tune_update = "sweep", tune_out;
    tune_cmd->add_option("--seed", tune_seed, "master seed (default 0)");
    tune_cmd->add_option("--codes", tune_codes, "number of random keys (default 2)");
    tune_cmd->add_option("--trials", tune_trials, "instances per key per candidate (default 1000)");
    tune_cmd->add_option("--bounds", tune_bounds, "comma list of syndrome-weight bounds, first 0 (default `0`)");
    tune_cmd->add_option("--threshold-min", tune_tmin, "search floor (default ceil(w/4))");
    tune_cmd->add_option("--threshold-max", tune_tmax, "search ceiling (default w/2)");
    tune_cmd->add_option("--rounds", tune_rounds, "coordinate descent rounds (default 4)");
    tune_cmd->add_option("--screening-trials", tune_screening,
                         "descend at this smaller scale, re-check finalists at full scale (default off)");
    tune_cmd->add_option("--finalists", tune_finalists, "candidates promoted from screening (default 3)");
    tune_cmd->add_option("--max-iters", tune_max_iters, "iteration budget (default 9)");
    tune_cmd->add_option("--update", tune_update, "syndrome update: sweep or flip");
    tune_cmd->add_option("--out", tune_out, "step function output file; also writes <out>.report.csv")->required();

    // report
    CLI::App* report_cmd = app.add_subcommand("report", "merge and render report CSVs");
    std::vector<std::string> report_in;
    std::string report_out;
    report_cmd->add_option("--in", report_in, "report CSV file (repeatable)")->required();
    report_cmd->add_option("--out", report_out, "merged CSV output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (keygen_cmd->parsed()) {
            Params params = keygen_params.resolve();
            Rng rng(keygen_seed);
            KeyPair kp = keygen(params, rng);
            write_private_key(keygen_out + ".sk", kp.priv);
            write_public_key(keygen_out + ".pk", kp.pub);
            std::printf("wrote %s.sk and %s.pk (n=%u r=%u w=%u t=%u)\n",
                        keygen_out.c_str(), keygen_out.c_str(),
                        params.n, params.r, params.w, params.t);
        } else if (encrypt_cmd->parsed()) {
            PublicKey pub = read_public_key(enc_pub);
            BitVec m = read_plaintext(enc_msg, pub.params.r);
            Rng rng(enc_seed);
            uint32_t wt = enc_weight.value_or(pub.params.t);
            BitVec e = sample_error(pub.params.n, wt, rng);
            write_ciphertext(enc_out, encrypt(pub, m, e));
            std::printf("wrote %s (error weight %u)\n", enc_out.c_str(), wt);
        } else if (decrypt_cmd->parsed()) {
            PrivateKey priv = read_private_key(dec_priv);
            BitVec c = read_ciphertext(dec_ct);
            DecoderConfig cfg = dec_opts.resolve(priv.params);
            cfg.trace = cfg.trace || !dec_trace.empty();
            DecryptResult res = decrypt(priv, c, cfg);
            if (!dec_trace.empty()) {
                std::vector<TraceRow> rows;
                for (const IterationTrace& it : res.decode.trace)
                    rows.push_back({0, it, res.ok});
                write_text_file(dec_trace, trace_csv(rows));
            }
            if (!res.ok) {
                std::fprintf(stderr, "decoding failed after %u sweeps (syndrome weight %u)\n",
                             res.decode.sweeps_executed, res.decode.final_syndrome_weight);
                return exit_decrypt_failure;
            }
            if (dec_out.empty())
                std::printf("%s\n", res.plaintext.to_hex().c_str());
            else
                write_plaintext(dec_out, res.plaintext);
            std::fprintf(stderr, "decoded in %u effective iterations (%u sweeps executed)\n",
                         res.decode.iterations_used, res.decode.sweeps_executed);
        } else if (sim_cmd->parsed()) {
            ExperimentConfig cfg;
            cfg.params = sim_params.resolve();
            cfg.decoder = sim_opts.resolve(cfg.params);
            cfg.codes = sim_codes;
            cfg.trials = sim_trials;
            cfg.master_seed = sim_seed;
            cfg.workers = sim_workers;
            cfg.error_weight = sim_weight;
            cfg.collect_traces = !sim_trace.empty();
            ExperimentReport rep = run_experiment(cfg);
            print_summary(rep, cfg.decoder);
            if (!sim_out.empty())
                write_text_file(sim_out, report_csv(rep));
            if (!sim_trace.empty())
                write_text_file(sim_trace, trace_csv(rep.traces));
        } else if (tune_cmd->parsed()) {
            TuningConfig cfg;
            cfg.params = tune_params.resolve();
            cfg.codes = tune_codes;
            cfg.trials_per_code = tune_trials;
            cfg.seed = tune_seed;
            cfg.syndrome_weight_bounds = split_u32_list(tune_bounds, "--bounds");
            cfg.threshold_min = tune_tmin;
            cfg.threshold_max = tune_tmax;
            cfg.max_rounds = tune_rounds;
            cfg.screening_trials = tune_screening;
            cfg.finalists = tune_finalists;
            cfg.max_iterations = tune_max_iters;
            if (tune_update == "flip")
                cfg.update = SyndromeUpdate::per_flip;
            else if (tune_update != "sweep")
                throw std::runtime_error("unknown update mode `" + tune_update + "`");
            TuningReport rep = tune_step_function(cfg);
            write_step_function(tune_out, rep.best.rule, cfg.params.r, cfg.params.w);
            write_text_file(tune_out + ".report.csv", tuning_report_csv(rep));
            uint64_t successes = rep.best.instances - rep.best.failures;
            std::printf("best rule written to %s (candidates: %zu full-scale, %zu screened)\n",
                        tune_out.c_str(), rep.evaluated.size(), rep.screened.size());
            std::printf("best: failures %llu, max iterations %u, mean %.3f over %llu instances\n",
                        (unsigned long long)rep.best.failures, rep.best.max_iterations_observed,
                        successes ? double(rep.best.total_iterations) / double(successes) : 0.0,
                        (unsigned long long)rep.best.instances);
        } else if (report_cmd->parsed()) {
            std::vector<ReportColumn> columns;
            for (const std::string& path : report_in)
                columns.push_back(parse_report_csv(label_for(path), read_text_file(path)));
            std::cout << render_report_table(columns);
            if (!report_out.empty())
                write_text_file(report_out, merged_report_csv(columns));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_error;
    }
    return exit_ok;
}

} // namespace qcmdpc
