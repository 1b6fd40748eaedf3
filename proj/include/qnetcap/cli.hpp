#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qnetcap/io.hpp"

namespace qnetcap::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 2,
    kValidationFailure = 3,
    kNotAttainable = 4,
    kNumericFailure = 5,
};

/// Capacity report for a network document. Throws ValidationError.
io::Json analyze(const io::Json& network);

/// Threshold report for a WRN document. `target` and `param` override the
/// document's "target" / "param" keys.
io::Json threshold(const io::Json& spec, std::optional<double> target,
                   std::optional<std::string> param);

inline constexpr const char* kSweepSchema = "# qnetcap-sweep v1";
inline constexpr const char* kSweepHeader =
    "value,lower,upper,rho_min,receiver_noise,tolerable_noise_lower,tolerable_noise_upper";

/// One row per sweep point, "nan" where a column does not apply or the
/// target is unattainable.
std::string sweep_csv(const io::SweepSpec& spec);

struct SelftestSummary {
    int cases = 0;
    int failures = 0;
    std::vector<std::string> messages;
};

/// Randomized cross-checks of max flow and widest path against exhaustive
/// enumeration on small graphs.
SelftestSummary selftest(std::uint64_t seed, int cases);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qnetcap::cli
