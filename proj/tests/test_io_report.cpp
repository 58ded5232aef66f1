#include <doctest.h>

#include <cctype>
#include <filesystem>
#include <sstream>
#include <string>

#include "apnkit/apnfam.hpp"
#include "apnkit/report.hpp"
#include "apnkit/sbox_io.hpp"

using namespace apnkit;

namespace {

bool throws_code(auto&& fn, ErrorCode code) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

std::string written(const VectorFunction& f, sbox_io::Layout layout) {
    std::ostringstream out;
    sbox_io::write(f, out, layout);
    return out.str();
}

}  // namespace

TEST_CASE("S-box round trips") {
    for (int n : {2, 3, 4, 5, 8, 10}) {
        const Field field(n);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto f = apnfam::random_quadratic(field, seed);
            for (auto layout : {sbox_io::Layout::Lines, sbox_io::Layout::Blob}) {
                const std::string text = written(f, layout);
                const auto back = sbox_io::parse(text);
                CHECK(back == f);
                CHECK(written(back, layout) == text);
            }
        }
    }
}

TEST_CASE("S-box file format") {
    const Field f4(4);
    const auto g = apnfam::gold_function(f4, 1);
    const std::string lines = written(g, sbox_io::Layout::Lines);
    CHECK(lines.rfind("0\n1\n8\nf\n", 0) == 0);
    CHECK(written(g, sbox_io::Layout::Blob).size() == 16 + 1);
    CHECK(written(apnfam::gold_function(Field(10), 1), sbox_io::Layout::Blob).size() == 1024 * 3 + 1);

    // upper case, 0x prefixes, CRLF and trailing blank lines are accepted
    std::string upper = lines;
    for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    CHECK(sbox_io::parse(upper) == g);
    CHECK(sbox_io::parse("0x0\r\n0x1\r\n2\n3\n\n") == VectorFunction(2, {Elem{0}, Elem{1}, Elem{2}, Elem{3}}));
}

TEST_CASE("S-box parse errors") {
    CHECK(throws_code([] { (void)sbox_io::parse("0\n1\n2\n"); }, ErrorCode::LengthNotPowerOfTwo));
    CHECK(throws_code([] { (void)sbox_io::parse(""); }, ErrorCode::LengthNotPowerOfTwo));
    CHECK(throws_code([] { (void)sbox_io::parse("01234"); }, ErrorCode::LengthNotPowerOfTwo));
    CHECK(throws_code([] { (void)sbox_io::parse("0\n1\ng\n3\n"); }, ErrorCode::MalformedHex));
    CHECK(throws_code([] { (void)sbox_io::parse("0\n1\n2\n4\n"); }, ErrorCode::MalformedHex));  // 4 needs 3 bits
    CHECK(throws_code([] { (void)sbox_io::read_file("/nonexistent/sbox.txt"); }, ErrorCode::Io));

    std::string lines;
    for (int i = 0; i < 255; ++i) lines += "00\n";
    CHECK(throws_code([&] { (void)sbox_io::parse(lines); }, ErrorCode::LengthNotPowerOfTwo));
}

TEST_CASE("exported family re-certifies identically") {
    const Field f(4);
    const auto p = apnfam::construct(f, 2, 1);
    const auto path = std::filesystem::temp_directory_path() / "apnkit_family_k2_s1.txt";
    sbox_io::write_file(apnfam::build_f(f, p), path);
    const auto back = sbox_io::read_file(path);
    std::filesystem::remove(path);
    CHECK(back == apnfam::build_f(f, p));
    const auto a = report::strip_timing(report::to_json(f, apnfam::certify(f, p)));
    const auto b = report::strip_timing(report::to_json(f, apnfam::certify_function(f, p, back)));
    CHECK(report::dump(a) == report::dump(b));
}

TEST_CASE("report JSON") {
    const Field f(8);
    const auto cert = apnfam::certify(f, apnfam::construct(f, 4, 1));
    const auto j = report::to_json(f, cert);
    CHECK(j["field"]["modulus"] == "11b");
    CHECK(j["field"]["n"] == 8);
    CHECK(j["params"]["beta"] == "02");
    CHECK(j["params"]["c1"].get<std::string>().size() == 2);
    CHECK(j["checks"]["differential_uniformity_is_2"] == true);
    CHECK(j["valid"] == true);
    CHECK(j.contains("timings_ms"));

    const auto stripped = report::strip_timing(j);
    CHECK_FALSE(stripped.contains("timings_ms"));
    CHECK(stripped["params"] == j["params"]);

    nlohmann::json nested = {{"a", {{"elapsed_ms", 3}, {"x", 1}}}, {"b", {{{"elapsed_ms", 1}}}}, {"elapsed_ms", 2}};
    CHECK(report::strip_timing(nested) == nlohmann::json{{"a", {{"x", 1}}}, {"b", {nlohmann::json::object()}}});

    const auto summary = report::field_summary(Field(5));
    CHECK(summary["cube_index"].is_null());
    CHECK(report::field_summary(Field(4))["cube_index"] == 5);
    CHECK(report::dump(summary).back() == '\n');
}
