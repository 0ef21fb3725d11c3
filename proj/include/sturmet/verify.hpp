#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sturmet/metric.hpp"

namespace sturmet {

struct VerificationEntry {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ConditionNumbers {
  double right_vectors = 0.0;
  double theta = 0.0;
  double omega = 0.0;
};

struct VerificationReport {
  std::vector<VerificationEntry> entries;
  ConditionNumbers condition_numbers;
  double cond_scale = 1.0;  ///< max(1, cond(right_vectors)); applied to residual entries
  bool overall = false;

  const VerificationEntry* find(std::string_view name) const;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Runs every identity the construction asserts on a solved problem:
/// biorthogonality, both completeness forms, the weight and Hamiltonian
/// spectral representations, quasi-Hermiticity of H and W, Theta
/// Hermiticity/positivity, Theta*W positivity, M-matrix Hermiticity,
/// single-vs-double route agreement, Theta|r_k> = |l_k>, the insertion
/// identity, and (behind the positivity gate) Hermiticity of h and w.
/// Residual entries pass at base_tol * cond_scale; positivity entries
/// demand a positive minimum eigenvalue.
VerificationReport run_suite(const OperatorPencil& pencil, const Spectrum& spectrum,
                             const MetricBundle& bundle, const Tolerances& tol = {});

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  std::vector<double> charges;     ///< lowest computed eigencharges (real parts)
  std::vector<double> reference;   ///< analytic or fine-grid reference values
  std::vector<double> rel_errors;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double observed_order = 0.0;  ///< log2 error ratio at the finest refinement
  bool order_defect = false;    ///< observed order < 1.5
  bool analytic_reference = false;
};

/// Eigencharge errors at successive grid halvings (h -> h/2 via
/// n -> 2n + 1).  Uses the closed-form Hermitian Coulomb charges when the
/// spec admits them, otherwise one extra halving as the reference.
ConvergenceTable convergence_study(const ProblemSpec& spec, int refinements, int n_charges = 3,
                                   const Tolerances& tol = {});

}  // namespace sturmet
