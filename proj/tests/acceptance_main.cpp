#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "apnkit/acceptance.hpp"

// Runs every criterion at full level and prints one line per criterion.
// APNKIT_ACCEPTANCE_LEVEL=quick trims it to the quick level.
int main(int argc, char** argv) {
    apnkit::acceptance::Options opts;
    const char* level = std::getenv("APNKIT_ACCEPTANCE_LEVEL");
    opts.level = level && std::string(level) == "quick" ? apnkit::acceptance::Level::Quick
                                                        : apnkit::acceptance::Level::Full;
    opts.jobs = 1;
    opts.alt_jobs = 4;
    opts.witness_dir = argc > 1 ? std::filesystem::path(argv[1]) : std::filesystem::current_path();
    opts.progress = &std::cout;
    const auto result = apnkit::acceptance::run(opts);
    std::cout << (result.all_passed() ? "acceptance: all criteria passed" : "acceptance: FAILED") << std::endl;
    return result.exit_code();
}
