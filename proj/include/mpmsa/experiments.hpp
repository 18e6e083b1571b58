#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mpmsa/config.hpp"

namespace mpmsa {

struct Report {
  std::string experiment;
  std::vector<std::string> notes;                            // comment lines above the table
  std::vector<std::pair<std::string, std::string>> columns;  // name, description
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, bool>> pass;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> warnings;
  double runtime_seconds = 0;

  bool all_pass() const;
};

// Experiment names accepted as config kind and as CLI subcommands.
const std::vector<std::string>& experiment_kinds();

// Throws ConfigError on invalid configuration and BudgetExceeded when a volume is too large.
Report run_experiment(const ExperimentConfig& config);

std::string render_csv(const Report& report);
std::string render_summary(const Report& report, const ExperimentConfig& config);
// Writes <out>/summary.json and <out>/<experiment>.csv.
void write_report(const Report& report, const ExperimentConfig& config);

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_budget = 3;

// Runs, writes reports and maps outcomes to exit codes; diagnostics go to err.
int run(const ExperimentConfig& config, std::ostream& err);

}  // namespace mpmsa
