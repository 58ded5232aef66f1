#pragma once

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

// The headline verifications as one executable suite. Criteria 1-8 each run
// as a job producing a JSON report; criterion 9 reruns every job with a
// second worker count and compares the reports with timings stripped.
namespace apnkit::acceptance {

enum class Level { Quick, Full };
enum class Status { Pass, Fail, Finding, Skipped };

std::string status_name(Status s);

struct Options {
    Level level = Level::Full;
    int jobs = 1;
    int alt_jobs = 4;
    // Counterexamples to the A(b) image claim are written here.
    std::filesystem::path witness_dir = ".";
    // One line per criterion as soon as it finishes; may be null.
    std::ostream* progress = nullptr;
    // Restrict to these criterion ids (empty = all). Criterion 9 covers
    // whichever of 1-8 ran.
    std::vector<int> only;
};

struct Outcome {
    int id = 0;
    std::string title;
    Status status = Status::Skipped;
    std::string detail;
    double seconds = 0;
    nlohmann::json report;
};

struct SuiteResult {
    std::vector<Outcome> outcomes;

    bool all_passed() const;
    // 0 when nothing failed, 1 otherwise.
    int exit_code() const;
    nlohmann::json to_json() const;
};

std::string format_line(const Outcome& o);

SuiteResult run(const Options& opts);

}  // namespace apnkit::acceptance
