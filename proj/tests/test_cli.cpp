#include "doctest.h"

#include <filesystem>
#include <initializer_list>
#include <string>
#include <unistd.h>
#include <vector>

#include "qcmdpc/cli.hpp"
#include "qcmdpc/experiment.hpp"
#include "qcmdpc/io.hpp"
#include "support.hpp"

using namespace qcmdpc;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
               ("qcmdpc_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int cli(std::initializer_list<std::string> args)
{
    std::vector<std::string> owned{"qcmdpc-lab"};
    owned.insert(owned.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& s : owned)
        argv.push_back(s.c_str());
    return run_cli(int(argv.size()), argv.data());
}

const std::string kToyParams = "1202,601,30,11";

} // namespace

TEST_CASE("cli requires a subcommand and rejects unknown ones")
{
    CHECK(cli({}) != exit_ok);
    CHECK(cli({"frobnicate"}) != exit_ok);
    CHECK(cli({"--help"}) == exit_ok);
}

TEST_CASE("cli keygen writes a loadable keypair")
{
    TempDir tmp;
    std::string prefix = tmp.file("key");
    CHECK(cli({"keygen", "--params", kToyParams, "--seed", "42", "--out", prefix}) == exit_ok);

    PrivateKey priv = read_private_key(prefix + ".sk");
    PublicKey pub = read_public_key(prefix + ".pk");
    CHECK(priv.params == testsup::toy_params());
    CHECK(check_keypair(priv, pub));

    // Same seed, same keys.
    std::string prefix2 = tmp.file("key2");
    CHECK(cli({"keygen", "--params", kToyParams, "--seed", "42", "--out", prefix2}) == exit_ok);
    CHECK(read_text_file(prefix + ".sk") == read_text_file(prefix2 + ".sk"));
}

TEST_CASE("cli keygen argument errors")
{
    TempDir tmp;
    CHECK(cli({"keygen", "--out", tmp.file("x")}) == exit_error);
    CHECK(cli({"keygen", "--preset", "80", "--params", kToyParams, "--out", tmp.file("x")}) ==
          exit_error);
    CHECK(cli({"keygen", "--preset", "99", "--out", tmp.file("x")}) == exit_error);
    CHECK(cli({"keygen", "--params", "1,2,3", "--out", tmp.file("x")}) == exit_error);
    CHECK(cli({"keygen", "--params", kToyParams}) != exit_ok);
}

TEST_CASE("cli encrypt and decrypt round trip")
{
    TempDir tmp;
    std::string prefix = tmp.file("key");
    REQUIRE(cli({"keygen", "--params", kToyParams, "--seed", "7", "--out", prefix}) == exit_ok);

    Rng mr(800);
    BitVec m = testsup::random_bits(601, mr);
    write_plaintext(tmp.file("msg.pt"), m);

    CHECK(cli({"encrypt", "--pub", prefix + ".pk", "--msg", tmp.file("msg.pt"), "--seed", "9",
               "--out", tmp.file("c.ct")}) == exit_ok);
    CHECK(cli({"decrypt", "--priv", prefix + ".sk", "--ct", tmp.file("c.ct"), "--out",
               tmp.file("dec.pt")}) == exit_ok);
    CHECK(read_plaintext(tmp.file("dec.pt"), 601) == m);

    // Same encryption seed gives the same ciphertext.
    CHECK(cli({"encrypt", "--pub", prefix + ".pk", "--msg", tmp.file("msg.pt"), "--seed", "9",
               "--out", tmp.file("c2.ct")}) == exit_ok);
    CHECK(read_text_file(tmp.file("c.ct")) == read_text_file(tmp.file("c2.ct")));
}

TEST_CASE("cli decrypt reports failure through its exit code")
{
    TempDir tmp;
    std::string prefix = tmp.file("key");
    REQUIRE(cli({"keygen", "--params", kToyParams, "--seed", "8", "--out", prefix}) == exit_ok);
    write_plaintext(tmp.file("msg.pt"), BitVec(601));

    // Ten times the design error weight is far beyond what bit flipping
    // can strip at these parameters.
    REQUIRE(cli({"encrypt", "--pub", prefix + ".pk", "--msg", tmp.file("msg.pt"), "--seed", "3",
                 "--error-weight", "110", "--out", tmp.file("c.ct")}) == exit_ok);
    CHECK(cli({"decrypt", "--priv", prefix + ".sk", "--ct", tmp.file("c.ct"), "--out",
               tmp.file("dec.pt")}) == exit_decrypt_failure);
    CHECK_FALSE(fs::exists(tmp.file("dec.pt")));
}

TEST_CASE("cli decrypt writes traces and honors decoder options")
{
    TempDir tmp;
    std::string prefix = tmp.file("key");
    REQUIRE(cli({"keygen", "--params", kToyParams, "--seed", "11", "--out", prefix}) == exit_ok);
    Rng mr(801);
    write_plaintext(tmp.file("msg.pt"), testsup::random_bits(601, mr));
    REQUIRE(cli({"encrypt", "--pub", prefix + ".pk", "--msg", tmp.file("msg.pt"), "--seed", "5",
                 "--out", tmp.file("c.ct")}) == exit_ok);

    CHECK(cli({"decrypt", "--priv", prefix + ".sk", "--ct", tmp.file("c.ct"),
               "--out", tmp.file("dec.pt"), "--variant", "maxdelta", "--delta", "2",
               "--update", "flip", "--constant-time", "--trace", tmp.file("tr.csv")}) == exit_ok);
    std::string trace = read_text_file(tmp.file("tr.csv"));
    CHECK(trace.find("instance_id,iter,") == 0);
    CHECK(trace.find("decoded") != std::string::npos);
    // Constant-time decoding executes all nine sweeps.
    size_t rows = 0;
    for (char ch : trace)
        rows += ch == '\n';
    CHECK(rows == 10);

    CHECK(cli({"decrypt", "--priv", prefix + ".sk", "--ct", tmp.file("c.ct"),
               "--variant", "nonsense"}) == exit_error);
    CHECK(cli({"decrypt", "--priv", prefix + ".sk", "--ct", tmp.file("c.ct"),
               "--update", "nonsense"}) == exit_error);
    CHECK(cli({"decrypt", "--priv", prefix + ".sk", "--ct", tmp.file("x.ct")}) == exit_error);
}

TEST_CASE("cli simulate writes a parseable report")
{
    TempDir tmp;
    std::string out = tmp.file("rep.csv");
    CHECK(cli({"simulate", "--params", kToyParams, "--seed", "12", "--codes", "2", "--trials",
               "20", "--out", out}) == exit_ok);
    ReportColumn col = parse_report_csv("rep", read_text_file(out));
    CHECK(col.total == 40);
    CHECK(col.failures == 0);

    // Explicit fixed thresholds and a trace file.
    std::string out2 = tmp.file("rep2.csv");
    CHECK(cli({"simulate", "--params", kToyParams, "--seed", "12", "--codes", "1", "--trials",
               "10", "--variant", "fixed", "--thresholds", "12,10,9", "--out", out2, "--trace",
               tmp.file("tr.csv")}) == exit_ok);
    CHECK(read_text_file(tmp.file("tr.csv")).find("instance_id") == 0);

    CHECK(cli({"simulate", "--params", kToyParams, "--variant", "fixed", "--thresholds",
               "0"}) == exit_error);
}

TEST_CASE("cli simulate is worker-count invariant")
{
    TempDir tmp;
    std::string a = tmp.file("a.csv"), b = tmp.file("b.csv");
    CHECK(cli({"simulate", "--params", kToyParams, "--seed", "13", "--codes", "2", "--trials",
               "25", "--workers", "1", "--out", a}) == exit_ok);
    CHECK(cli({"simulate", "--params", kToyParams, "--seed", "13", "--codes", "2", "--trials",
               "25", "--workers", "7", "--out", b}) == exit_ok);
    CHECK(read_text_file(a) == read_text_file(b));
}

TEST_CASE("cli tune writes a usable rule")
{
    TempDir tmp;
    std::string out = tmp.file("toy.stepfn");
    CHECK(cli({"tune", "--params", kToyParams, "--seed", "14", "--codes", "1", "--trials", "40",
               "--bounds", "0,150", "--threshold-min", "9", "--threshold-max", "11", "--rounds",
               "2", "--out", out}) == exit_ok);

    StepFunction rule = read_step_function(out, 601, 30);
    CHECK(rule.entries.size() == 2);
    std::string report = read_text_file(out + ".report.csv");
    CHECK(report.find("candidate,bounds,thresholds,") == 0);

    // The tuned rule drives a simulation.
    CHECK(cli({"simulate", "--params", kToyParams, "--seed", "15", "--codes", "1", "--trials",
               "10", "--rule", out}) == exit_ok);

    CHECK(cli({"tune", "--params", kToyParams, "--bounds", "5,10", "--out",
               tmp.file("bad.stepfn")}) == exit_error);
}

TEST_CASE("cli report merges columns")
{
    TempDir tmp;
    std::string a = tmp.file("fast.csv"), b = tmp.file("slow.csv");
    REQUIRE(cli({"simulate", "--params", kToyParams, "--seed", "16", "--codes", "1", "--trials",
                 "15", "--out", a}) == exit_ok);
    REQUIRE(cli({"simulate", "--params", kToyParams, "--seed", "16", "--codes", "1", "--trials",
                 "15", "--error-weight", "0", "--out", b}) == exit_ok);

    std::string merged = tmp.file("merged.csv");
    CHECK(cli({"report", "--in", a, "--in", b, "--out", merged}) == exit_ok);
    std::string content = read_text_file(merged);
    CHECK(content.substr(0, content.find('\n')) ==
          "iterations,count_fast,proportion_fast,count_slow,proportion_slow");

    CHECK(cli({"report", "--in", tmp.file("absent.csv")}) == exit_error);
}
