#include "qcmdpc/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcmdpc {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw std::runtime_error(path + ": " + what);
}

std::string strip(const std::string& s)
{
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Params parse_params_header(const std::string& path, const std::string& line, const std::string& magic)
{
    std::istringstream in(line);
    std::string tag;
    Params p;
    if (!(in >> tag >> p.n >> p.r >> p.w >> p.t) || tag != magic)
        fail(path, "expected header `" + magic + " n r w t`");
    std::string rest;
    if (in >> rest)
        fail(path, "trailing tokens in header");
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return p;
}

// `name: i,i,...` with exactly `expected` sorted distinct indices below r.
SparseIndices parse_support_line(const std::string& path, const std::string& line,
                                 const std::string& name, uint32_t r, uint32_t expected)
{
    std::string prefix = name + ":";
    if (line.rfind(prefix, 0) != 0)
        fail(path, "expected line starting with `" + prefix + "`");
    SparseIndices out{r, {}};
    std::istringstream in(line.substr(prefix.size()));
    std::string item;
    while (std::getline(in, item, ',')) {
        item = strip(item);
        if (item.empty() || item.size() > 10 ||
            item.find_first_not_of("0123456789") != std::string::npos)
            fail(path, "bad index `" + item + "` in " + name);
        unsigned long v = std::stoul(item);
        if (v >= r)
            fail(path, name + " index " + item + " >= " + std::to_string(r));
        if (!out.positions.empty() && v <= out.positions.back())
            fail(path, name + " indices must be sorted strictly ascending");
        out.positions.push_back(uint32_t(v));
    }
    if (out.positions.size() != expected)
        fail(path, name + " has " + std::to_string(out.positions.size()) +
                       " indices, expected " + std::to_string(expected));
    return out;
}

std::string tagged_value(const std::string& path, const std::string& line, const std::string& tag)
{
    std::string prefix = tag + ":";
    if (line.rfind(prefix, 0) != 0)
        fail(path, "expected line starting with `" + prefix + "`");
    return strip(line.substr(prefix.size()));
}

std::string next_line(const std::string& path, std::istringstream& in, const std::string& what)
{
    std::string line;
    if (!std::getline(in, line))
        fail(path, "missing " + what);
    return strip(line);
}

void expect_no_more(const std::string& path, std::istringstream& in)
{
    std::string line;
    while (std::getline(in, line))
        if (!strip(line).empty())
            fail(path, "unexpected trailing content: " + strip(line));
}

std::string params_header(const std::string& magic, const Params& p)
{
    return magic + " " + std::to_string(p.n) + " " + std::to_string(p.r) + " " +
           std::to_string(p.w) + " " + std::to_string(p.t);
}

std::string support_line(const std::string& name, const SparseIndices& s)
{
    std::string out = name + ": ";
    for (std::size_t i = 0; i < s.positions.size(); i++) {
        if (i)
            out += ',';
        out += std::to_string(s.positions[i]);
    }
    return out;
}

} // namespace

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(path, "cannot open for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof())
        fail(path, "read error");
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(path, "cannot open for writing");
    out << content;
    out.flush();
    if (!out.good())
        fail(path, "write error");
}

void write_private_key(const std::string& path, const PrivateKey& key)
{
    write_text_file(path, params_header("qcmdpc-private", key.params) + "\n" +
                              support_line("h0", key.h0) + "\n" +
                              support_line("h1", key.h1) + "\n");
}

PrivateKey read_private_key(const std::string& path)
{
    std::istringstream in(read_text_file(path));
    Params p = parse_params_header(path, next_line(path, in, "header"), "qcmdpc-private");
    SparseIndices h0 = parse_support_line(path, next_line(path, in, "h0 line"), "h0", p.r, p.w / 2);
    SparseIndices h1 = parse_support_line(path, next_line(path, in, "h1 line"), "h1", p.r, p.w / 2);
    expect_no_more(path, in);
    return {p, std::move(h0), std::move(h1)};
}

void write_public_key(const std::string& path, const PublicKey& key)
{
    write_text_file(path, params_header("qcmdpc-public", key.params) + "\n" +
                              "q: " + key.q.to_bits().to_hex() + "\n");
}

PublicKey read_public_key(const std::string& path)
{
    std::istringstream in(read_text_file(path));
    Params p = parse_params_header(path, next_line(path, in, "header"), "qcmdpc-public");
    std::string hex = tagged_value(path, next_line(path, in, "q line"), "q");
    expect_no_more(path, in);
    try {
        return {p, RingElement::from_bits(BitVec::from_hex(hex, p.r))};
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

void write_ciphertext(const std::string& path, const BitVec& c)
{
    write_text_file(path, "qcmdpc-ct " + std::to_string(c.size()) + "\n" +
                              "c: " + c.to_hex() + "\n");
}

BitVec read_ciphertext(const std::string& path)
{
    std::istringstream in(read_text_file(path));
    std::istringstream header(next_line(path, in, "header"));
    std::string tag;
    uint32_t n = 0;
    if (!(header >> tag >> n) || tag != "qcmdpc-ct" || n == 0)
        fail(path, "expected header `qcmdpc-ct n`");
    std::string hex = tagged_value(path, next_line(path, in, "c line"), "c");
    expect_no_more(path, in);
    try {
        return BitVec::from_hex(hex, n);
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

void write_plaintext(const std::string& path, const BitVec& m)
{
    write_text_file(path, m.to_hex() + "\n");
}

BitVec read_plaintext(const std::string& path, uint32_t r)
{
    std::string hex = strip(read_text_file(path));
    try {
        return BitVec::from_hex(hex, r);
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

void write_step_function(const std::string& path, const StepFunction& step, uint32_t r, uint32_t w)
{
    step.validate(r, w);
    std::string out = "qcmdpc-stepfn " + std::to_string(r) + " " + std::to_string(w) + "\n";
    for (const auto& e : step.entries)
        out += std::to_string(e.min_syndrome_weight) + " " + std::to_string(e.threshold) + "\n";
    write_text_file(path, out);
}

StepFunction read_step_function(const std::string& path, uint32_t r, uint32_t w)
{
    std::istringstream in(read_text_file(path));
    std::istringstream header(next_line(path, in, "header"));
    std::string tag;
    uint32_t file_r = 0, file_w = 0;
    if (!(header >> tag >> file_r >> file_w) || tag != "qcmdpc-stepfn")
        fail(path, "expected header `qcmdpc-stepfn r w`");
    if (file_r != r || file_w != w)
        fail(path, "step function is for r=" + std::to_string(file_r) + " w=" + std::to_string(file_w) +
                       ", code uses r=" + std::to_string(r) + " w=" + std::to_string(w));
    StepFunction step;
    std::string line;
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty())
            continue;
        std::istringstream row(line);
        uint32_t bound = 0, threshold = 0;
        std::string rest;
        if (!(row >> bound >> threshold) || (row >> rest))
            fail(path, "expected `<bound> <threshold>`, got: " + line);
        step.entries.push_back({bound, threshold});
    }
    try {
        step.validate(r, w);
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return step;
}

} // namespace qcmdpc
