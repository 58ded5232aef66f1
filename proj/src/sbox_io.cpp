#include "apnkit/sbox_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "apnkit/error.hpp"

namespace apnkit::sbox_io {

namespace {

int hex_width(int n) { return (n + 3) / 4; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// log2 of count, or -1 when count is not a power of two in [2, 2^24].
int log2_exact(std::size_t count) {
    for (int n = 1; n <= kMaxDegree; ++n)
        if (count == (std::size_t{1} << n)) return n;
    return -1;
}

std::uint32_t parse_entry(std::string_view tok, int n, std::size_t index) {
    std::uint64_t v = 0;
    try {
        v = parse_hex(tok);
    } catch (const Error&) {
        throw Error(ErrorCode::MalformedHex, "entry " + std::to_string(index) + ": '" + std::string(tok) + "'");
    }
    if (v >> n)
        throw Error(ErrorCode::MalformedHex,
                    "entry " + std::to_string(index) + " = " + std::string(tok) + " does not fit in " +
                        std::to_string(n) + " bits");
    return static_cast<std::uint32_t>(v);
}

VectorFunction from_entries(const std::vector<std::string_view>& toks, int n, std::string label) {
    std::vector<Elem> table(toks.size());
    for (std::size_t i = 0; i < toks.size(); ++i) table[i] = Elem{parse_entry(toks[i], n, i)};
    return VectorFunction(n, std::move(table), std::move(label));
}

}  // namespace

VectorFunction parse(std::string_view text, std::string label) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const auto line = trim(text.substr(0, nl));
        if (!line.empty()) lines.push_back(line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    if (lines.empty()) throw Error(ErrorCode::LengthNotPowerOfTwo, "empty S-box file");

    if (lines.size() == 1) {
        const auto blob = lines.front();
        for (int n = 1; n <= kMaxDegree; ++n) {
            const std::size_t w = static_cast<std::size_t>(hex_width(n));
            if (blob.size() != (std::size_t{1} << n) * w) continue;
            std::vector<std::string_view> toks;
            toks.reserve(std::size_t{1} << n);
            for (std::size_t i = 0; i < blob.size(); i += w) toks.push_back(blob.substr(i, w));
            return from_entries(toks, n, std::move(label));
        }
        throw Error(ErrorCode::LengthNotPowerOfTwo,
                    "blob of " + std::to_string(blob.size()) + " hex digits is not 2^n fixed-width entries");
    }

    const int n = log2_exact(lines.size());
    if (n < 0)
        throw Error(ErrorCode::LengthNotPowerOfTwo, std::to_string(lines.size()) + " lines is not a power of two");
    return from_entries(lines, n, std::move(label));
}

VectorFunction read(std::istream& in, std::string label) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), std::move(label));
}

VectorFunction read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return read(in, path.filename().string());
}

void write(const VectorFunction& f, std::ostream& out, Layout layout) {
    const int w = hex_width(f.degree());
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        out << hex_string(f.at(x), w);
        if (layout == Layout::Lines) out << '\n';
    }
    if (layout == Layout::Blob) out << '\n';
}

void write_file(const VectorFunction& f, const std::filesystem::path& path, Layout layout) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    write(f, out, layout);
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace apnkit::sbox_io
