#include "apnkit/acceptance.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "apnkit/analysis.hpp"
#include "apnkit/apnfam.hpp"
#include "apnkit/oracle.hpp"
#include "apnkit/parallel.hpp"
#include "apnkit/polyzero.hpp"
#include "apnkit/report.hpp"

namespace apnkit::acceptance {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    return buf;
}

std::uint64_t peak_rss_bytes() {
    rusage u{};
    getrusage(RUSAGE_SELF, &u);
    return static_cast<std::uint64_t>(u.ru_maxrss) * 1024;
}

std::vector<int> coprime_exponents(int n) {
    std::vector<int> out;
    for (int s = 1; s < n; ++s)
        if (std::gcd(s, n) == 1) out.push_back(s);
    return out;
}

// What one criterion job produces. `report` is compared across worker counts.
struct JobResult {
    Status status = Status::Fail;
    std::string detail;
    json report;
};

struct Context {
    Level level;
    std::filesystem::path witness_dir;
    // Side effects (witness files) only on the primary run.
    bool primary;
};

using Job = JobResult (*)(int jobs, const Context& ctx);

// ---------------------------------------------------------------------------
// 1. Zero distribution of P_a against the closed forms.

JobResult zero_distributions(int jobs, const Context& ctx) {
    const std::vector<std::pair<int, int>> cases = {{4, 1}, {4, 3}, {6, 1}, {8, 1}, {8, 3}, {10, 1}, {12, 1}};
    JobResult r;
    r.report = json::array();
    bool ok = true;
    double slowest = 0;
    int ran = 0;
    for (auto [n, s] : cases) {
        if (ctx.level == Level::Quick && n > 8) continue;
        const auto t0 = Clock::now();
        const Field field(n);
        const auto d = polyzero::zero_distribution(field, s, jobs);
        const double secs = seconds_since(t0);
        slowest = std::max(slowest, secs);
        ++ran;
        auto j = report::to_json(field, d);
        j["elapsed_ms"] = secs * 1000;
        r.report.push_back(j);
        if (!d.matches_closed_form || secs >= 5.0) {
            ok = false;
            r.detail += "n=" + std::to_string(n) + " s=" + std::to_string(s) + " got " + std::to_string(d.counts.m0) +
                        "/" + std::to_string(d.counts.m1) + "/" + std::to_string(d.counts.m3) + " in " +
                        fmt_seconds(secs) + "; ";
        }
    }
    r.status = ok ? Status::Pass : Status::Fail;
    if (ok) r.detail = std::to_string(ran) + " (n, s) cases match exactly, slowest " + fmt_seconds(slowest);
    return r;
}

// ---------------------------------------------------------------------------
// 2. Every non-cube b gives a zero-free P_{A(b)}.

JobResult noncube_zero_free(int jobs, const Context& ctx) {
    const auto t0 = Clock::now();
    JobResult r;
    r.report = json::array();
    std::uint64_t checked = 0, failures = 0;
    const int max_n = ctx.level == Level::Quick ? 8 : 12;
    for (int n = 2; n <= max_n; n += 2) {
        const Field field(n);
        for (int s : coprime_exponents(n)) {
            const int workers = worker_count(jobs, field.size());
            std::vector<std::uint64_t> bad(static_cast<std::size_t>(workers), 0), seen(bad);
            std::vector<std::uint32_t> first_bad(static_cast<std::size_t>(workers), 0);
            parallel_ranges(workers, 1, field.size(), [&](int w, std::uint64_t lo, std::uint64_t hi) {
                const auto wi = static_cast<std::size_t>(w);
                for (auto b = static_cast<std::uint32_t>(lo); b < hi; ++b) {
                    if (field.is_cube(Elem{b})) continue;
                    ++seen[wi];
                    const Elem a = polyzero::a_map(field, s, Elem{b});
                    if (polyzero::count_zeros_pa(field, s, a) != 0 && bad[wi]++ == 0) first_bad[wi] = b;
                }
            });
            json entry = {{"n", n}, {"s", s}, {"noncubes", 0}, {"failures", 0}};
            std::uint64_t here = 0, here_seen = 0;
            std::optional<std::uint32_t> first;
            for (std::size_t w = 0; w < bad.size(); ++w) {
                here += bad[w];
                here_seen += seen[w];
                if (bad[w] && !first) first = first_bad[w];
            }
            entry["noncubes"] = here_seen;
            entry["failures"] = here;
            if (first) entry["first_failing_b"] = field.to_hex(Elem{*first});
            r.report.push_back(entry);
            checked += here_seen;
            failures += here;
        }
    }
    const double secs = seconds_since(t0);
    const bool ok = failures == 0 && secs < 120.0;
    r.status = ok ? Status::Pass : Status::Fail;
    r.detail = std::to_string(checked) + " non-cubes checked, " + std::to_string(failures) + " with zeros, " +
               fmt_seconds(secs) + " (limit 120 s)";
    return r;
}

// ---------------------------------------------------------------------------
// 3. Rootless x^3 + x + a versus d + 1/d over non-cubes.

JobResult cubic_sets(int, const Context&) {
    const auto t0 = Clock::now();
    JobResult r;
    r.report = json::array();
    bool ok = true;
    for (int n : {2, 4, 6, 8, 10}) {
        const Field field(n);
        const auto c = polyzero::cubic_table(field);
        r.report.push_back({{"n", n},
                            {"rootless_count", c.rootless.size()},
                            {"from_noncubes_count", c.from_noncubes.size()},
                            {"sets_equal", c.sets_equal}});
        if (!c.sets_equal) {
            ok = false;
            r.detail += "n=" + std::to_string(n) + " sets differ; ";
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= 30.0) {
        ok = false;
        r.detail += "took " + fmt_seconds(secs) + "; ";
    }
    r.status = ok ? Status::Pass : Status::Fail;
    if (ok) r.detail = "set equality at n = 2, 4, 6, 8, 10 in " + fmt_seconds(secs) + " (limit 30 s)";
    return r;
}

// ---------------------------------------------------------------------------
// 4. Image of A: size (2^n-1)/3, 2-to-1, and exactly the zero-free a.

JobResult image_claim(int jobs, const Context& ctx) {
    JobResult r;
    r.report = json::array();
    int cases = 0, k_even_cases = 0;
    std::vector<std::string> counterexamples, outside;
    const int max_n = ctx.level == Level::Quick ? 8 : 12;
    for (int n = 2; n <= max_n; n += 2) {
        const Field field(n);
        for (int s : coprime_exponents(n)) {
            const auto img = polyzero::image_stats(field, s, jobs);
            auto j = report::to_json(field, img);
            r.report.push_back(j);
            ++cases;
            if (img.k_even) ++k_even_cases;
            if (img.image_claim_holds()) continue;
            const std::string tag = "n=" + std::to_string(n) + " s=" + std::to_string(s);
            if (!img.k_even) {
                outside.push_back(tag);
                continue;
            }
            counterexamples.push_back(tag);
            if (ctx.primary) {
                std::filesystem::create_directories(ctx.witness_dir);
                const auto path = ctx.witness_dir / ("image_witness_n" + std::to_string(n) + "_s" +
                                                     std::to_string(s) + ".json");
                std::ofstream(path) << report::dump(j);
            }
        }
    }
    if (!counterexamples.empty()) {
        r.status = Status::Finding;
        r.detail = "counterexample at";
        for (const auto& c : counterexamples) r.detail += " " + c;
        r.detail += "; witnesses written to " + ctx.witness_dir.string();
        return r;
    }
    r.status = Status::Pass;
    r.detail = std::to_string(cases) + " (n, s) cases, " + std::to_string(k_even_cases) +
               " with k even: image size, 2-to-1 and converse all hold";
    if (!outside.empty()) {
        r.detail += "; fails outside k even at";
        for (const auto& c : outside) r.detail += " " + c;
    }
    return r;
}

// ---------------------------------------------------------------------------
// 5. Coefficient search and certificates for the five-term family.

JobResult family_certificates(int jobs, const Context& ctx) {
    const std::vector<std::pair<int, int>> cases = {{2, 1}, {2, 3}, {4, 1}, {4, 3}, {4, 5}, {4, 7}, {8, 1}, {8, 3}};
    JobResult r;
    r.report = json::array();
    bool ok = true;
    double slowest_diff_ms = 0;
    for (auto [k, s] : cases) {
        if (ctx.level == Level::Quick && 2 * k > 8) continue;
        const Field field(2 * k);
        const auto p = apnfam::construct(field, k, s);
        const auto cert = apnfam::certify(field, p, jobs);
        r.report.push_back(report::to_json(field, cert));
        const bool fast = cert.differential_method == "quadratic";
        if (k == 8) slowest_diff_ms = std::max(slowest_diff_ms, cert.differential_uniformity_is_2.elapsed_ms);
        if (!cert.valid() || (k == 8 && (!fast || cert.differential_uniformity_is_2.elapsed_ms >= 300000.0))) {
            ok = false;
            r.detail += "k=" + std::to_string(k) + " s=" + std::to_string(s) + " failed; ";
        }
    }
    r.status = ok ? Status::Pass : Status::Fail;
    if (ok) {
        r.detail = std::to_string(r.report.size()) + " certificates valid";
        if (ctx.level == Level::Full)
            r.detail += ", n=16 quadratic path " + fmt_seconds(slowest_diff_ms / 1000) + " (limit 300 s)";
    }
    return r;
}

// ---------------------------------------------------------------------------
// 6. Quadratic and generic differential engines agree.

std::vector<VectorFunction> agreement_corpus() {
    std::vector<VectorFunction> fs;
    for (auto [n, s] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {5, 2}, {6, 1}, {7, 3}, {8, 3}, {9, 2}, {10, 3}})
        fs.push_back(apnfam::gold_function(Field(n), s));
    for (auto [k, s] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {4, 1}, {4, 3}, {4, 5}, {4, 7}}) {
        const Field field(2 * k);
        fs.push_back(apnfam::build_f(field, apnfam::construct(field, k, s)));
    }
    for (int n : {4, 6, 8, 10}) fs.push_back(apnfam::comparison_gold_trace(Field(n)));
    std::uint64_t seed = 1;
    for (int n : {3, 5, 6, 7, 8, 10}) fs.push_back(apnfam::random_quadratic(Field(n), seed++));
    for (int k : {2, 4}) {
        const Field field(2 * k);
        const auto p = apnfam::construct(field, k, 1);
        fs.push_back(apnfam::build_f1(field, k, 1, p.c1, p.delta, apnfam::F1Form::Hexanomial));
        fs.push_back(apnfam::build_f1(field, k, 1, p.c1, p.delta, apnfam::F1Form::AsPrinted));
    }
    return fs;
}

JobResult differential_agreement(int jobs, const Context&) {
    JobResult r;
    r.report = json::array();
    int agree = 0, total = 0;
    for (const auto& f : agreement_corpus()) {
        const auto q = analysis::differential_uniformity_quadratic(f, jobs);
        const auto g = analysis::differential_uniformity_generic(f, jobs);
        ++total;
        const bool same = q.uniformity == g.uniformity;
        if (same) ++agree;
        r.report.push_back({{"label", f.label()},
                            {"n", f.degree()},
                            {"quadratic", q.uniformity},
                            {"generic", g.uniformity},
                            {"agree", same}});
        if (!same) r.detail += f.label() + " n=" + std::to_string(f.degree()) + " disagrees; ";
    }
    const bool ok = agree == total && total >= 20;
    r.status = ok ? Status::Pass : Status::Fail;
    if (ok) r.detail = std::to_string(total) + " functions, exact agreement";
    return r;
}

// ---------------------------------------------------------------------------
// 7. Walsh spectrum of the family at n = 8; larger n report only.

JobResult walsh_family(int jobs, const Context& ctx) {
    const std::vector<std::int64_t> expected = {-32, -16, 0, 16, 32};
    JobResult r;
    r.report = json::object();
    json checked = json::array();
    bool ok = true;
    const auto t0 = Clock::now();
    for (int s : {1, 3, 5, 7}) {
        const Field field(8);
        const auto f = apnfam::build_f(field, apnfam::construct(field, 4, s));
        const auto spec = analysis::walsh_spectrum(f, jobs);
        checked.push_back(report::to_json(spec, f.label()));
        if (spec.value_set() != expected || !spec.parseval_holds) {
            ok = false;
            r.detail += "s=" + std::to_string(s) + " spectrum differs; ";
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= 10.0) {
        ok = false;
        r.detail += "took " + fmt_seconds(secs) + "; ";
    }
    r.report["n8"] = std::move(checked);

    json extra = json::array();
    if (ctx.level == Level::Full) {
        extra.push_back({{"n", 12}, {"applicable", false}, {"note", "k = 6 is divisible by 3; the family is not defined"}});
        const Field field(16);
        const auto f = apnfam::build_f(field, apnfam::construct(field, 8, 1));
        const auto spec = analysis::walsh_spectrum(f, jobs);
        auto j = report::to_json(spec, f.label());
        j["applicable"] = true;
        extra.push_back(std::move(j));
    }
    r.report["report_only"] = std::move(extra);

    r.status = ok ? Status::Pass : Status::Fail;
    if (ok) {
        r.detail = "n=8, s in {1,3,5,7}: value set {0, +-16, +-32}, Parseval exact, " + fmt_seconds(secs) +
                   " (limit 10 s)";
        if (ctx.level == Level::Full) {
            const auto& n16 = r.report["report_only"][1];
            r.detail += "; n=16 report-only gold-like=" + std::string(n16["is_gold_like"].get<bool>() ? "yes" : "no");
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// 8. Gamma-rank: engine versus naive oracle at n <= 6, reference values at n = 8.

JobResult gamma_ranks(int jobs, const Context& ctx) {
    JobResult r;
    if (ctx.level == Level::Quick) {
        r.status = Status::Skipped;
        r.detail = "quick level skips Gamma-rank";
        r.report = nullptr;
        return r;
    }
    r.report = json::object();
    bool ok = true;

    std::vector<VectorFunction> small;
    for (int n = 2; n <= 6; ++n) {
        const Field field(n);
        small.push_back(apnfam::gold_function(field, 1));
        if (n >= 4 && n % 2 == 0) small.push_back(apnfam::comparison_gold_trace(field));
        small.push_back(apnfam::random_quadratic(field, 100 + static_cast<std::uint64_t>(n)));
    }
    {
        const Field field(4);
        small.push_back(apnfam::build_f(field, apnfam::construct(field, 2, 1)));
        // x^(-1), not quadratic
        small.push_back(VectorFunction::tabulate(
            field, [&](Elem x) { return x.is_zero() ? x : field.inv(x); }, "x^-1"));
    }
    json oracle = json::array();
    for (const auto& f : small) {
        const auto engine = analysis::gamma_rank(f, {.jobs = jobs});
        const auto naive = oracle::naive_gamma_rank(f);
        oracle.push_back({{"label", f.label()}, {"n", f.degree()}, {"engine", engine}, {"naive", naive}});
        if (engine != naive) {
            ok = false;
            r.detail += f.label() + " n=" + std::to_string(f.degree()) + " engine " + std::to_string(engine) +
                        " != naive " + std::to_string(naive) + "; ";
        }
    }
    r.report["oracle_agreement"] = std::move(oracle);

    const Field field(8);
    struct Reference {
        VectorFunction f;
        std::uint64_t expected;
    };
    std::vector<Reference> refs;
    refs.push_back({apnfam::build_f(field, apnfam::construct(field, 4, 1)), 13200});
    refs.push_back({apnfam::comparison_gold_trace(field), 13800});
    json n8 = json::array();
    const auto t0 = Clock::now();
    for (const auto& ref : refs) {
        const auto t1 = Clock::now();
        const auto rank = analysis::gamma_rank(ref.f, {.jobs = jobs});
        json j = report::gamma_rank_json(8, rank, ref.f.label(), analysis::GammaConvention::Graph,
                                         seconds_since(t1) * 1000);
        j["expected"] = ref.expected;
        if (rank != ref.expected) {
            ok = false;
            const auto alt = analysis::gamma_rank(ref.f, {.jobs = jobs, .convention = analysis::GammaConvention::WithoutOrigin});
            j["alternate"] = report::gamma_rank_json(8, alt, ref.f.label(), analysis::GammaConvention::WithoutOrigin, 0);
            r.detail += ref.f.label() + " graph convention " + std::to_string(rank) + " != " +
                        std::to_string(ref.expected) + " (without origin: " + std::to_string(alt) + "); ";
        }
        n8.push_back(std::move(j));
    }
    const double secs = seconds_since(t0);
    const std::uint64_t rss = peak_rss_bytes();
    const std::uint64_t cap = std::uint64_t{1} << 30;
    if (secs > 7200.0 || rss > cap || analysis::gamma_matrix_bytes(8) > cap) {
        ok = false;
        r.detail += "resource limit exceeded (" + fmt_seconds(secs) + ", peak RSS " + std::to_string(rss >> 20) +
                    " MiB); ";
    }
    r.report["n8"] = std::move(n8);
    r.status = ok ? Status::Pass : Status::Fail;
    if (ok)
        r.detail = std::to_string(small.size()) + " functions at n <= 6 match the naive oracle; n=8: 13200 and 13800 in " +
                   fmt_seconds(secs) + ", peak RSS " + std::to_string(rss >> 20) + " MiB";
    return r;
}

struct Criterion {
    int id;
    const char* title;
    Job job;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "P_a zero distribution matches the closed forms", zero_distributions},
        {2, "non-cube b gives a zero-free P_A(b)", noncube_zero_free},
        {3, "rootless x^3+x+a equals {d + 1/d : d non-cube}", cubic_sets},
        {4, "image of A: size, 2-to-1 and converse", image_claim},
        {5, "five-term family certificates", family_certificates},
        {6, "quadratic and generic differential engines agree", differential_agreement},
        {7, "Walsh spectrum of the family at n = 8", walsh_family},
        {8, "Gamma-rank", gamma_ranks},
    };
    return list;
}

JobResult run_guarded(Job job, int jobs, const Context& ctx) {
    try {
        return job(jobs, ctx);
    } catch (const std::exception& e) {
        JobResult r;
        r.status = Status::Fail;
        r.detail = std::string("error: ") + e.what();
        r.report = {{"error", e.what()}};
        return r;
    }
}

}  // namespace

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Finding: return "FINDING";
        case Status::Skipped: return "SKIP";
    }
    return "?";
}

bool SuiteResult::all_passed() const {
    return std::all_of(outcomes.begin(), outcomes.end(),
                       [](const Outcome& o) { return o.status == Status::Pass || o.status == Status::Skipped; });
}

int SuiteResult::exit_code() const { return all_passed() ? 0 : 1; }

json SuiteResult::to_json() const {
    json out = {{"kind", "acceptance_suite"}, {"all_passed", all_passed()}};
    json list = json::array();
    for (const auto& o : outcomes)
        list.push_back({{"id", o.id},
                        {"title", o.title},
                        {"status", status_name(o.status)},
                        {"detail", o.detail},
                        {"elapsed_ms", o.seconds * 1000},
                        {"report", o.report}});
    out["criteria"] = std::move(list);
    return out;
}

std::string format_line(const Outcome& o) {
    char head[32];
    std::snprintf(head, sizeof head, "[%-7s] %d ", status_name(o.status).c_str(), o.id);
    return head + o.title + ": " + o.detail + " [" + fmt_seconds(o.seconds) + "]";
}

SuiteResult run(const Options& opts) {
    SuiteResult result;
    auto selected = [&](int id) {
        return opts.only.empty() || std::find(opts.only.begin(), opts.only.end(), id) != opts.only.end();
    };
    auto emit = [&](const Outcome& o) {
        if (opts.progress) *opts.progress << format_line(o) << std::endl;
    };

    const Context primary{opts.level, opts.witness_dir, true};
    const Context rerun{opts.level, opts.witness_dir, false};
    Outcome determinism;
    determinism.id = 9;
    determinism.title = "reports identical for jobs = " + std::to_string(opts.jobs) + " and " + std::to_string(opts.alt_jobs);
    determinism.report = json::array();
    std::vector<int> differing;
    double rerun_seconds = 0;

    for (const auto& c : criteria()) {
        if (!selected(c.id) && !selected(9)) continue;
        auto t0 = Clock::now();
        JobResult first = run_guarded(c.job, opts.jobs, primary);
        Outcome o{c.id, c.title, first.status, first.detail, seconds_since(t0), first.report};
        if (selected(c.id)) {
            emit(o);
            result.outcomes.push_back(o);
        }
        if (!selected(9)) continue;
        t0 = Clock::now();
        const JobResult second = run_guarded(c.job, opts.alt_jobs, rerun);
        rerun_seconds += seconds_since(t0);
        const bool same = report::dump(report::strip_timing(first.report)) ==
                          report::dump(report::strip_timing(second.report));
        determinism.report.push_back({{"id", c.id}, {"identical", same}});
        if (!same) differing.push_back(c.id);
    }

    if (selected(9)) {
        determinism.seconds = rerun_seconds;
        if (determinism.report.empty()) {
            determinism.status = Status::Skipped;
            determinism.detail = "no jobs ran";
        } else if (differing.empty()) {
            determinism.status = Status::Pass;
            determinism.detail = std::to_string(determinism.report.size()) + " job reports byte-identical without timings";
        } else {
            determinism.status = Status::Fail;
            determinism.detail = "reports differ for criteria";
            for (int id : differing) determinism.detail += " " + std::to_string(id);
        }
        emit(determinism);
        result.outcomes.push_back(determinism);
    }
    return result;
}

}  // namespace apnkit::acceptance
