#pragma once

// The syzkit command line: nil, fm, verify, cohomology and proptest.
//
// Every command builds a CheckReport. The full report goes to the file named by
// --report (nil also writes report.json next to its fixtures); standard output
// gets a short summary with timings. Exit status is 0 when every required check
// passes, 1 when one fails and 2 on usage, input or I/O errors.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "syzkit/report.hpp"
#include "syzkit/serialize.hpp"

namespace syzkit::cli {

/// Hard caps read from SYZKIT_MAX_K (default 5) and SYZKIT_MAX_D (default 4).
struct Limits {
    int max_K = 5;
    int max_D = 4;
    static Limits from_env();
};

struct Outcome {
    CheckReport checks;
    /// The report file content: command, config, checks, results.
    json report;
};

/// Builds K, checks the whole construction and writes iib.json, iia.json and report.json into out.
Outcome cmd_nil(int K, const std::filesystem::path& out, const Limits& limits = {});

struct FmOutcome {
    Outcome outcome;
    Form form;
};
/// forward: X̌ forms (dthetacheck/dr or dz/dzbar) to X; backward: X forms to X̌ in dz/dzbar.
FmOutcome cmd_fm(const json& input, bool forward, std::optional<int> n = std::nullopt);

Outcome cmd_verify(const std::string& system, const json& input);

struct CohomologyOptions {
    std::optional<int> K;
    std::optional<int> flat;
    /// "x" (symplectic, Tseng-Yau) or "xcheck" (complex, Bott-Chern).
    std::string side = "xcheck";
    /// "bc", "ty" or "mirror".
    std::string which = "bc";
    std::optional<int> p, q;
    int degree = 0;
    bool invariant = false;
    /// "coordinate", "nil" or "recursive".
    std::string frame = "coordinate";
};
Outcome cmd_cohomology(const CohomologyOptions& opt, const Limits& limits = {});

/// suite "all" runs every suite.
Outcome cmd_proptest(const std::string& suite, int trials, std::uint64_t seed);

/// Entry point of the syzkit executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace syzkit::cli
