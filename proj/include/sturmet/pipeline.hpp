#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sturmet/config.hpp"
#include "sturmet/eigensolve.hpp"
#include "sturmet/verify.hpp"

namespace sturmet {

// CLI exit codes, documented in the tool's help text.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitVerification = 4;
inline constexpr int kExitDegenerate = 5;
inline constexpr int kExitProblem = 6;
inline constexpr int kExitMetric = 7;

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::string> files_written;
  std::string summary;
};

/// Executes the configured pipeline and writes its artifacts under
/// config.output_dir.  Exceptions are mapped onto the exit codes above;
/// the summary always says what happened.
RunResult run(const RunConfig& config);

void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum);
void write_reality_summary(std::ostream& os, const RealityReport& report);

struct SweepResult {
  std::string parameter;
  std::vector<double> values;
  std::vector<Vector> charges;  ///< per step, branch-ordered
  int collisions = 0;           ///< branch-matching collisions across steps
};

/// Solves the pencil at each parameter value (concurrently up to `workers`)
/// and matches eigencharge branches between adjacent steps by nearest
/// neighbor in the complex plane.
SweepResult run_sweep(const RunConfig& config);

void write_sweep_csv(std::ostream& os, const SweepResult& sweep);
void write_oracle_csv(std::ostream& os, const ConvergenceTable& table);
std::string oracle_text(const ConvergenceTable& table);

}  // namespace sturmet
