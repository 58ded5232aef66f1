#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apnkit/acceptance.hpp"
#include "apnkit/analysis.hpp"
#include "apnkit/apnfam.hpp"
#include "apnkit/error.hpp"
#include "apnkit/gf2e.hpp"
#include "apnkit/polyzero.hpp"
#include "apnkit/report.hpp"
#include "apnkit/sbox_io.hpp"

using namespace apnkit;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;
constexpr int kExitUsage = 2;

struct Config {
    std::optional<int> n;
    std::optional<int> k;
    std::optional<int> s;
    std::string modulus;
    int jobs = 1;
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 1;

    std::string sbox;
    std::string function = "family";
    std::string delta;
    std::string csv;
    std::string witness_dir = ".";
    std::string layout = "lines";
    std::string level = "quick";
    std::string convention = "graph";
    std::optional<std::uint64_t> mem_mib;
    std::vector<int> only;
    bool quadratic = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const Config& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + c.out);
    f << text;
}

void require_format(const Config& c, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (c.format == a) return;
    throw UsageError("--format " + c.format + " is not available for this subcommand");
}

void emit(const Config& c, const json& j) {
    require_format(c, {"json"});
    write_output(c, report::dump(j));
}

int need_s(const Config& c) {
    if (!c.s) throw UsageError("--s is required");
    return *c.s;
}

int need_n(const Config& c) {
    if (c.n) return *c.n;
    if (c.k) return 2 * *c.k;
    throw UsageError("--n (or --k) is required");
}

int need_k(const Config& c) {
    if (c.k) return *c.k;
    if (c.n) {
        if (*c.n % 2 != 0) throw UsageError("--n must be even for the family (n = 2k)");
        return *c.n / 2;
    }
    throw UsageError("--k (or --n) is required");
}

Field make_field(const Config& c, int n) {
    if (c.modulus.empty()) return Field(n);
    return Field(n, static_cast<std::uint32_t>(parse_hex(c.modulus)));
}

apnfam::FamilyParams family_params(const Config& c, const Field& field) {
    std::optional<Elem> delta;
    if (!c.delta.empty()) delta = field.from_hex(c.delta);
    return apnfam::construct(field, need_k(c), need_s(c), delta);
}

VectorFunction resolve_function(const Config& c) {
    if (!c.sbox.empty()) return sbox_io::read_file(c.sbox);
    const Field field = make_field(c, need_n(c));
    if (c.function == "family") return apnfam::build_f(field, family_params(c, field));
    if (c.function == "f1" || c.function == "f1-printed") {
        const auto p = family_params(c, field);
        const auto form = c.function == "f1" ? apnfam::F1Form::Hexanomial : apnfam::F1Form::AsPrinted;
        return apnfam::build_f1(field, p.k, p.s, p.c1, p.delta, form);
    }
    if (c.function == "gold") return apnfam::gold_function(field, c.s.value_or(1));
    if (c.function == "gold-trace") return apnfam::comparison_gold_trace(field);
    if (c.function == "random-quadratic") return apnfam::random_quadratic(field, c.seed);
    throw UsageError("unknown --function " + c.function);
}

// Options shared by every subcommand.
void add_common(CLI::App* sub, Config& c) {
    sub->add_option("--modulus", c.modulus, "irreducible modulus in hex (default: smallest)");
    sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", c.out, "output file (default: stdout)");
    sub->add_option("--seed", c.seed, "seed for randomized functions and probes");
}

void add_n_or_k(CLI::App* sub, Config& c) {
    auto* n = sub->add_option("--n", c.n, "field degree")->check(CLI::Range(kMinDegree, kMaxDegree));
    auto* k = sub->add_option("--k", c.k, "half degree, n = 2k")->check(CLI::Range(1, kMaxDegree / 2));
    n->excludes(k);
}

void add_function_source(CLI::App* sub, Config& c) {
    add_n_or_k(sub, c);
    sub->add_option("--s", c.s, "exponent parameter");
    sub->add_option("--delta", c.delta, "delta in hex for the family (default: smallest outside GF(2^k))");
    auto* sbox = sub->add_option("--sbox", c.sbox, "S-box file")->check(CLI::ExistingFile);
    sub->add_option("--function", c.function, "built-in function when no --sbox is given")
        ->check(CLI::IsMember({"family", "f1", "f1-printed", "gold", "gold-trace", "random-quadratic"}))
        ->excludes(sbox);
}

// ---------------------------------------------------------------------------

int cmd_field(const Config& c) {
    emit(c, report::field_summary(make_field(c, need_n(c))));
    return kExitOk;
}

int cmd_scan_pa(const Config& c) {
    require_format(c, {"json", "csv"});
    const Field field = make_field(c, need_n(c));
    const int s = need_s(c);
    const auto d = polyzero::zero_distribution(field, s, c.jobs);
    if (!c.csv.empty() || c.format == "csv") {
        std::ostringstream csv;
        polyzero::write_zero_csv(field, s, polyzero::zero_count_table(field, s, c.jobs), csv);
        if (c.format == "csv") write_output(c, csv.str());
        if (!c.csv.empty()) std::ofstream(c.csv) << csv.str();
    }
    if (c.format == "json") emit(c, report::to_json(field, d));
    return d.matches_closed_form ? kExitOk : kExitFinding;
}

int cmd_image_a(const Config& c) {
    const Field field = make_field(c, need_n(c));
    const int s = need_s(c);
    const auto img = polyzero::image_stats(field, s, c.jobs);
    const json j = report::to_json(field, img);
    emit(c, j);
    const bool finding = !img.all_zero_free || (img.k_even && !img.image_claim_holds());
    if (!finding) return kExitOk;
    const std::filesystem::path dir(c.witness_dir);
    std::filesystem::create_directories(dir);
    const auto path = dir / ("image_witness_n" + std::to_string(field.degree()) + "_s" + std::to_string(s) + ".json");
    std::ofstream(path) << report::dump(j);
    std::cerr << report::dump(report::error_json("Finding", "witness written to " + path.string()));
    return kExitFinding;
}

int cmd_cubic(const Config& c) {
    const Field field = make_field(c, need_n(c));
    const auto r = polyzero::cubic_table(field);
    emit(c, report::to_json(field, r));
    return r.sets_equal ? kExitOk : kExitFinding;
}

int cmd_find_coeffs(const Config& c) {
    const Field field = make_field(c, 2 * need_k(c));
    emit(c, report::to_json(field, family_params(c, field)));
    return kExitOk;
}

int cmd_certify(const Config& c) {
    const Field field = make_field(c, 2 * need_k(c));
    const auto p = family_params(c, field);
    const auto cert = c.sbox.empty() ? apnfam::certify(field, p, c.jobs)
                                     : apnfam::certify_function(field, p, sbox_io::read_file(c.sbox), c.jobs);
    emit(c, report::to_json(field, cert));
    return cert.valid() ? kExitOk : kExitFinding;
}

int cmd_walsh(const Config& c) {
    require_format(c, {"json", "csv"});
    const auto f = resolve_function(c);
    if (!c.csv.empty() || c.format == "csv") {
        const Field field = make_field(c, f.degree());
        std::ostringstream csv;
        analysis::write_walsh_csv(f, field, csv);
        if (c.format == "csv") write_output(c, csv.str());
        if (!c.csv.empty()) std::ofstream(c.csv) << csv.str();
    }
    const auto r = analysis::walsh_spectrum(f, c.jobs);
    if (c.format == "json") emit(c, report::to_json(r, f.label()));
    return r.parseval_holds ? kExitOk : kExitFinding;
}

int cmd_diff(const Config& c) {
    const auto f = resolve_function(c);
    const auto r = c.quadratic ? analysis::differential_uniformity_quadratic(f, c.jobs)
                               : analysis::differential_uniformity_generic(f, c.jobs);
    emit(c, report::to_json(r, f.label()));
    return kExitOk;
}

int cmd_gamma_rank(const Config& c) {
    require_format(c, {"json", "text"});
    const auto f = resolve_function(c);
    analysis::GammaRankOptions opts;
    opts.jobs = c.jobs;
    opts.memory_limit_mib = c.mem_mib;
    opts.convention = c.convention == "graph" ? analysis::GammaConvention::Graph
                                              : analysis::GammaConvention::WithoutOrigin;
    const auto t0 = std::chrono::steady_clock::now();
    const auto rank = analysis::gamma_rank(f, opts);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (c.format == "text")
        write_output(c, std::to_string(rank) + "\n");
    else
        emit(c, report::gamma_rank_json(f.degree(), rank, f.label(), opts.convention, ms));
    return kExitOk;
}

int cmd_export(const Config& c) {
    const auto f = resolve_function(c);
    std::ostringstream text;
    sbox_io::write(f, text, c.layout == "blob" ? sbox_io::Layout::Blob : sbox_io::Layout::Lines);
    write_output(c, text.str());
    return kExitOk;
}

int cmd_probe(const Config& c) {
    const auto f = resolve_function(c);
    const int n = f.degree();
    json j = {{"kind", "affine_probe"}, {"n", n}, {"label", f.label()}, {"seed", c.seed}};
    const auto u0 = analysis::differential_uniformity_generic(f, c.jobs).uniformity;
    const auto u1 = analysis::probe_uniformity(f, c.seed);
    j["uniformity"] = {{"original", u0}, {"substituted", u1}, {"equal", u0 == u1}};
    bool ok = u0 == u1;
    if (n <= 10) {
        const auto v0 = analysis::walsh_spectrum(f, c.jobs).magnitude_set();
        const auto v1 = analysis::probe_spectrum_magnitudes(f, c.seed);
        j["spectrum_magnitudes"] = {{"original", v0}, {"substituted", v1}, {"equal", v0 == v1}};
        ok = ok && v0 == v1;
    }
    if (n <= 6) {
        const auto g0 = analysis::gamma_rank(f, {.jobs = c.jobs});
        const auto g1 = analysis::probe_gamma_rank(f, c.seed);
        j["gamma_rank"] = {{"original", g0}, {"substituted", g1}, {"equal", g0 == g1}};
        ok = ok && g0 == g1;
    }
    j["invariant"] = ok;
    emit(c, j);
    return ok ? kExitOk : kExitFinding;
}

int cmd_paper_check(const Config& c) {
    acceptance::Options opts;
    opts.level = c.level == "full" ? acceptance::Level::Full : acceptance::Level::Quick;
    opts.jobs = c.jobs;
    opts.alt_jobs = c.jobs == 4 ? 1 : 4;
    opts.witness_dir = c.witness_dir;
    opts.progress = &std::cout;
    opts.only = c.only;
    const auto result = acceptance::run(opts);
    if (!c.out.empty()) {
        std::ofstream f(c.out);
        if (!f) throw Error(ErrorCode::Io, "cannot write " + c.out);
        f << report::dump(result.to_json());
    }
    std::cout << (result.all_passed() ? "all criteria passed" : "some criteria did not pass") << std::endl;
    return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-field APN toolkit: GF(2^n) arithmetic, P_a zero counts, the five-term APN family, "
                 "differential, Walsh and Gamma-rank analysis"};
    app.require_subcommand(1);
    Config c;
    int (*handler)(const Config&) = nullptr;
    auto sub = [&](const char* name, const char* help, int (*fn)(const Config&)) {
        auto* s = app.add_subcommand(name, help);
        add_common(s, c);
        s->callback([&handler, fn] { handler = fn; });
        return s;
    };

    auto* field = sub("field", "print a field summary", cmd_field);
    add_n_or_k(field, c);

    auto* scan = sub("scan-pa", "zero distribution of x^(2^s+1) + x + a over all a", cmd_scan_pa);
    add_n_or_k(scan, c);
    scan->add_option("--s", c.s, "exponent parameter")->required();
    scan->add_option("--csv", c.csv, "also write n,s,a_hex,zero_count rows here");

    auto* image = sub("image-a", "image statistics of the no-zero coefficient map A", cmd_image_a);
    add_n_or_k(image, c);
    image->add_option("--s", c.s, "exponent parameter")->required();
    image->add_option("--witness-dir", c.witness_dir, "where counterexample witnesses are written");

    auto* cubic = sub("cubic", "rootless x^3+x+a versus d + 1/d over non-cubes", cmd_cubic);
    add_n_or_k(cubic, c);

    auto* find = sub("find-coeffs", "search (beta, gamma) and derive the family coefficients", cmd_find_coeffs);
    add_n_or_k(find, c);
    find->add_option("--s", c.s, "exponent parameter")->required();
    find->add_option("--delta", c.delta, "delta in hex");

    auto* cert = sub("certify", "certify the five-term family member", cmd_certify);
    add_n_or_k(cert, c);
    cert->add_option("--s", c.s, "exponent parameter")->required();
    cert->add_option("--delta", c.delta, "delta in hex");
    cert->add_option("--sbox", c.sbox, "certify this table instead of tabulating F")->check(CLI::ExistingFile);

    auto* walsh = sub("walsh", "Walsh spectrum", cmd_walsh);
    add_function_source(walsh, c);
    walsh->add_option("--csv", c.csv, "also write lambda_hex,mu_hex,walsh_value rows here (2^(2n) rows)");

    auto* diff = sub("diff", "differential uniformity", cmd_diff);
    add_function_source(diff, c);
    diff->add_flag("--quadratic", c.quadratic, "kernel-rank method (function must be quadratic)");

    auto* gamma = sub("gamma-rank", "Gamma-rank of the graph development matrix", cmd_gamma_rank);
    add_function_source(gamma, c);
    gamma->add_option("--convention", c.convention, "graph or without-origin")
        ->check(CLI::IsMember({"graph", "without-origin"}));
    gamma->add_option("--mem-mib", c.mem_mib, "memory cap in MiB (default: APNKIT_GAMMA_MEM_MIB or 1024)");

    auto* exp = sub("export", "write a function table as an S-box file", cmd_export);
    add_function_source(exp, c);
    exp->add_option("--layout", c.layout, "lines or blob")->check(CLI::IsMember({"lines", "blob"}));

    auto* probe = sub("probe", "recompute invariants after a random affine substitution", cmd_probe);
    add_function_source(probe, c);

    auto* check = sub("paper-check", "run the acceptance suite", cmd_paper_check);
    check->add_option("--level", c.level, "quick (n <= 8, no Gamma-rank) or full")
        ->check(CLI::IsMember({"quick", "full"}));
    check->add_option("--witness-dir", c.witness_dir, "where counterexample witnesses are written");
    check->add_option("--only", c.only, "criterion ids to run")->check(CLI::Range(1, 9));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << report::dump(report::error_json("Usage", e.what()));
        return kExitUsage;
    }

    try {
        return handler(c);
    } catch (const UsageError& e) {
        std::cerr << report::dump(report::error_json("Usage", e.what()));
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << report::dump(report::error_json(std::string(error_code_name(e.code())), e.what()));
        return e.code() == ErrorCode::InvariantViolation ? kExitFinding : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << report::dump(report::error_json("Internal", e.what()));
        return kExitUsage;
    }
}
