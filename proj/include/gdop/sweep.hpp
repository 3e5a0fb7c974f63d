#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "gdop/rational.hpp"
#include "gdop/series.hpp"

namespace gdop::sweep {

struct ExperimentConfig {
    std::vector<std::string> functions;
    std::vector<int> n_values;
    std::vector<Rational> alphas;
    double r = 1.0;
    double r1 = 0.0;
    std::vector<int> l_values;
    double trunc_tol = 1e-12;
    int grid_M = 720;
    std::string output_format = "csv";  // csv | json
    std::string output_path;            // empty -> stdout
};

// Parses and validates the JSON config document; returns an error message
// on invalid configs (maps to exit code 2).
std::variant<ExperimentConfig, std::string> parse_config(const std::string& json_text);

// Runs one row per (f, n, alpha), in that nesting order, on `jobs` workers.
// Rows are emitted in deterministic order regardless of completion order.
// Returns the process exit code: 0 ok, 2 config/evaluation error, 3 hard
// bound violation (offending row reported on `log`).
int run_sweep(const ExperimentConfig& cfg, int jobs, std::ostream& out, std::ostream& log);

enum class VerifyLevel { fast, full };

// Test-only hook: perturbs one coefficient of the named closed-form image
// before the dual-path comparison runs.
struct FaultInjection {
    int n = 0;
    Rational alpha;
    int p = 0;
};

// Runs the assertion suite; prints one line per check group. Returns true
// iff everything passed; on failure the first failing assertion is
// identified on `log`.
bool run_verify(VerifyLevel level, std::ostream& log,
                const std::optional<FaultInjection>& fault = std::nullopt);

// Writes the exact moment-table JSON document. Returns 0 on success, 2 on
// cap or I/O errors.
int export_moments(int n, const Rational& alpha, int max_p, const std::string& path,
                   std::ostream& log);

// Resolves the worker count: GDOP_JOBS env overrides the flag; 0 means
// available parallelism.
int resolve_jobs(int flag_jobs);

// Shortest round-trip decimal formatting.
std::string format_double(double v);

// Indexed parallel loop on a small worker pool; rethrows the first worker
// exception.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

// Resolves a function entry: built-in label, or a path to a JSON
// coefficient file {label, radius, coeffs: [[re, im], ...]}.
std::variant<AnalyticSeries, std::string> resolve_function(const std::string& name);

}  // namespace gdop::sweep
