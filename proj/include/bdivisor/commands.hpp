#pragma once

// Subcommands of the bdivisor tool. Each command is a list of named tasks;
// tasks run on a small worker pool and their reports come back in task order.

#include "bdivisor/analysis.hpp"
#include "bdivisor/report.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdivisor::cli {

enum class OutputFormat { Json, Csv };

/// Bad flags or environment; exit code 2.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::int64_t level = 4;
  std::int64_t depth = 6;
  std::int64_t window = 300;
  std::vector<std::int64_t> ells{25, 50, 100};
  /// When set, replaces every non-exact bound.
  std::optional<std::string> tolerance;
  unsigned precision_digits = 50;
  std::uint64_t seed = 20240601;
  OutputFormat format = OutputFormat::Json;
  analysis::VolumeMethod method = analysis::VolumeMethod::Exact;
  double epsilon = 0.01;
  std::int64_t quadrature_panels = 10000;
  std::int64_t monte_carlo_samples = 1000000;

  /// Throws ConfigError.
  void validate() const;
  std::optional<double> tolerance_value() const;
  /// `fallback` unless --tol was given.
  double bound(double fallback) const;
  nlohmann::json to_json() const;
};

struct Task {
  std::string name;
  std::function<std::vector<report::Report>()> run;
};

/// Worker count from BDIVISOR_WORKERS (default: hardware threads, at most 8).
std::size_t worker_budget();

/// Runs tasks concurrently; reports are returned in task order, each stamped
/// with its task's wall time.
std::vector<report::Report> run_tasks(const std::vector<Task>& tasks, std::size_t workers);

std::vector<Task> surface_tasks(const RunConfig& cfg);
std::vector<Task> tower_tasks(const RunConfig& cfg);
std::vector<Task> zeta_tasks(const RunConfig& cfg);
std::vector<Task> dim_tasks(const RunConfig& cfg);
std::vector<Task> theta_tasks(const RunConfig& cfg);
std::vector<Task> residue_tasks(const RunConfig& cfg);
std::vector<Task> toric_tasks(const RunConfig& cfg);
/// Acceptance criteria 1-9, one task per criterion.
std::vector<Task> verify_all_tasks(const RunConfig& cfg);

const std::vector<std::string>& command_names();
std::vector<Task> tasks_for(const std::string& command, const RunConfig& cfg);

/// Validates, sets the working precision, runs and writes the output for
/// `command`. Returns 0 if every check passes, 1 otherwise, 2 on a config error.
int run_command(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err,
                const std::optional<std::string>& out_file = std::nullopt);

} // namespace bdivisor::cli
