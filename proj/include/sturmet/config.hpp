#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "sturmet/assembly.hpp"

namespace sturmet {

enum class PipelineKind { Solve, Verify, Sweep, Oracle };
enum class SweepParameter { KappaSq, Ell };

struct SweepSpec {
  SweepParameter parameter = SweepParameter::KappaSq;
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;  // >= 2
};

/// One batch run: the problem, which pipeline to execute and where the
/// outputs go.  Parsed from a key-per-line text file with [section]
/// headers; see serialize_config for the exact shape.
struct RunConfig {
  ProblemSpec problem;
  PipelineKind pipeline = PipelineKind::Verify;
  std::optional<SweepSpec> sweep;
  std::string output_dir = "out";
  std::map<std::string, double> tolerance_overrides;
  int workers = 1;
  int refinements = 2;        ///< grid halvings for the oracle pipeline
  bool dump_vectors = false;  ///< write eigenvector blocks next to the spectrum
  bool export_pencil = false;
  bool export_metric = false;  ///< write theta/omega/h/w in the matrix text format

  void validate() const;
};

RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

/// Applies named overrides onto the defaults; unknown names raise ConfigError.
Tolerances make_tolerances(const std::map<std::string, double>& overrides);

std::string to_string(PipelineKind kind);
std::string to_string(SweepParameter parameter);

}  // namespace sturmet
