#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace pfkit::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,  ///< domain check failed
    kExitUsage = 2,    ///< malformed input or bad arguments
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommandResult {
    json report;
    int exit_code = kExitOk;
};

CommandResult cmd_verify(const json& doc, double tol);
CommandResult cmd_metric(const json& doc, double tol);
CommandResult cmd_model(const ModelRef& ref, double tol);
CommandResult cmd_coherent(const json& doc, double tol);

/// Builds a model from a name in {car, alpha, two-level, biortho} and its
/// parameters. Throws UsageError for unknown names, MalformedInput for
/// missing parameters.
ModelOutput make_model(const ModelRef& ref, double tol);

inline constexpr double kFuzzThreshold = 1e-9;

struct FuzzSummary {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    std::map<std::string, double> max_residual;
    std::uint64_t failed_trials = 0;      ///< trials that threw
    std::uint64_t missing_metric = 0;     ///< solve_metric found no positive metric
    double overall_max = 0.0;
    bool pass = false;
};

/// count independent trials of the full pipeline; trial i draws its pair
/// from a seed derived from (seed, i), so the summary does not depend on
/// jobs.
FuzzSummary run_fuzz(std::uint64_t count, std::uint64_t seed, unsigned jobs = 1);
json to_json(const FuzzSummary& summary);
CommandResult cmd_fuzz(std::uint64_t count, std::uint64_t seed, unsigned jobs);

/// Flattened "path: value" lines.
std::string render_text(const json& report);

/// Default tolerance, overridden by PFKIT_TOL when set and valid.
double default_tolerance();

/// Full command-line entry point.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pfkit::cli
