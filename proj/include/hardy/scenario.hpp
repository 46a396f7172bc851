#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hardy/analytic.hpp"
#include "hardy/errors.hpp"

namespace hardy {

/// Raised by parse_command_line for --help; what() holds the usage text.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

/// Scenario tags accepted by the runner, in canonical order.
const std::vector<std::string>& scenario_tags();
/// Names accepted by the rhs and boundary selectors.
const std::vector<std::string>& selector_names();

struct ScenarioConfig {
  std::string scenario;
  int N = 2;
  double beta = 0.0;
  /// Grid sizes; empty selects the scenario default.
  std::vector<int> n;
  double a = 0.45;
  int levels = 12;
  int resolution = 64;
  /// Epsilon sequence; empty selects 4^-j truncated at h^2/4.
  std::vector<double> eps;
  /// Data selectors; empty selects the scenario default during parsing.
  std::string rhs;
  std::string boundary;
  /// Cutoff radius for lambda-omega as a fraction of a.
  double r0_fraction = 0.8;
  int samples = 50;
  unsigned long long seed = 20240611ULL;
  std::string out = "hardy_out";
  /// Record wall time in the seconds column; off keeps CSV output byte-stable.
  bool timing = false;
};

/// Fill scenario-dependent defaults (grid sizes, selectors).
void materialize_defaults(ScenarioConfig& cfg);

/// Validate one config; throws ConfigInvalid naming the offending field.
void validate(const ScenarioConfig& cfg);

/// Human-readable echo of every field, defaults included.
std::string describe(const ScenarioConfig& cfg);

/// Parse flags (and an optional --config file whose keys match the long flag
/// names; flags win). Scenario tags come as positionals or via --scenario; one
/// config is returned per tag. Throws ConfigInvalid.
std::vector<ScenarioConfig> parse_command_line(int argc, const char* const* argv);

/// Convenience wrapper for a single scenario; throws ConfigInvalid unless exactly one tag is given.
ScenarioConfig parse_config(const std::vector<std::string>& args);

/// Built-in data selector as a function of the point.
ScalarFn make_selector(const std::string& name, const HardyParams& p, double a);

struct ReportRow {
  std::string scenario;
  int N = 0;
  double beta = 0.0;
  long n_or_level = 0;
  double param = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double order = 0.0;
  double seconds = 0.0;
  /// Rows of the blow-up scenario, whose residual is not meant to converge.
  bool divergent_by_design = false;
};

struct ScenarioOutcome {
  std::vector<ReportRow> rows;
  bool passed = true;
  std::vector<std::string> messages;
};

/// Run one validated scenario. Library errors are rethrown as hardy::Error
/// tagged with the scenario and its parameters.
ScenarioOutcome run_scenario(const ScenarioConfig& cfg);

inline constexpr const char* kCsvHeader = "scenario,N,beta,n_or_level,param,lhs,rhs,residual,order,seconds";

void write_csv(std::ostream& os, const std::vector<ReportRow>& rows);
std::string format_row(const ReportRow& row);

/// Worker count from HARDY_THREADS (default 1, clamped to [1, jobs]).
int worker_count(int jobs);

}  // namespace hardy
