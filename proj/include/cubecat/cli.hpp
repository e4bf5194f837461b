#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace cubecat {

/// One invocation of the command-line front end.
struct RunConfig {
  /// compute | euler | verify | verify-relations | classify-signs
  std::string subcommand;
  /// kh | nested | odd; `all` is accepted by euler, verify-relations and
  /// `verify --theorem signs`.
  std::string theory = "kh";
  std::string coefficients = "Z";
  std::optional<std::string> pd;
  /// A `.pd` file or a directory of them.
  std::optional<std::string> file;
  std::string orient = "strict";
  std::optional<int> outer_face;
  std::optional<std::string> output;
  std::uint64_t seed = 1;
  int jobs = 1;
  /// verify only: 1 | 2 | mod2 | signs | outerface
  std::string theorem;
  int trials = 100;
  bool dump_cube = false;
  bool dump_states = false;
  /// Pretty homology tables on stderr.
  bool table = false;
};

enum ExitStatus : int { kExitOk = 0, kExitInvalid = 1, kExitCertificationFailed = 2 };

/// Executes the configured subcommand.  JSON goes to `out` (or the output
/// file), diagnostics and pretty tables to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Same, returning the JSON document instead of printing it.
struct RunOutput {
  int status = kExitOk;
  std::string json;
  std::string error;
};
RunOutput run_capture(const RunConfig& config);

/// `CUBECAT_JOBS` when set to a positive integer, otherwise 1.
int default_jobs();

}  // namespace cubecat
