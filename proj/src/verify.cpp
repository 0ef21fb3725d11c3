#include "sturmet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "lapack.hpp"
#include "sturmet/analytic.hpp"

namespace sturmet {

namespace {

bool analytic_oracle_applies(const ProblemSpec& spec) {
  return spec.contour.kind == ContourKind::RealHalfLine &&
         spec.weight.tag == WeightKind::Tag::Coulomb && spec.kappa_sq.imag() == 0.0 &&
         spec.kappa_sq.real() > 0.0 && spec.ell > -1.0;
}

std::vector<double> lowest_real_charges(const Vector& charges, int count, double reality_tol) {
  std::vector<double> re;
  re.reserve(charges.size());
  for (int k = 0; k < charges.size(); ++k)
    if (std::abs(charges[k].imag()) <= reality_tol * (1.0 + std::abs(charges[k])))
      re.push_back(charges[k].real());
  std::sort(re.begin(), re.end());
  re.resize(std::min<size_t>(re.size(), count));
  return re;
}

}  // namespace

const VerificationEntry* VerificationReport::find(std::string_view name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << std::left << std::setw(28) << "identity" << std::right << std::setw(14) << "residual"
     << std::setw(14) << "tolerance" << "  verdict\n";
  for (const auto& e : entries) {
    os << std::left << std::setw(28) << e.name << std::right << std::scientific
       << std::setprecision(3) << std::setw(14) << e.residual << std::setw(14) << e.tolerance
       << "  " << (e.passed ? "pass" : "FAIL") << '\n';
  }
  os << std::scientific << std::setprecision(3);
  os << "cond(right) = " << condition_numbers.right_vectors
     << "  cond(theta) = " << condition_numbers.theta
     << "  cond(omega) = " << condition_numbers.omega << '\n';
  os << "overall: " << (overall ? "pass" : "FAIL") << '\n';
  return os.str();
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries)
    j["entries"].push_back({{"name", e.name},
                            {"residual", e.residual},
                            {"tolerance", e.tolerance},
                            {"passed", e.passed}});
  j["condition_numbers"] = {{"right_vectors", condition_numbers.right_vectors},
                            {"theta", condition_numbers.theta},
                            {"omega", condition_numbers.omega}};
  j["cond_scale"] = cond_scale;
  j["overall"] = overall;
  return j;
}

VerificationReport run_suite(const OperatorPencil& pencil, const Spectrum& spectrum,
                             const MetricBundle& bundle, const Tolerances& tol) {
  const int n = pencil.dim();
  if (spectrum.dim() != n || bundle.theta.rows() != n)
    throw InputMismatch("run_suite: inputs are not from the same problem");
  if (!spectrum.biorthonormal) throw InputMismatch("run_suite: spectrum not biorthonormalized");

  VerificationReport report;

  const RealVector sv = lapack::singular_values(spectrum.right);
  const double cond_right =
      sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1] : std::numeric_limits<double>::infinity();
  report.condition_numbers.right_vectors = cond_right;
  report.cond_scale = std::max(1.0, cond_right);

  const auto theta_eigs = lapack::eig_hermitian(bundle.theta).values;
  const double theta_abs_max = theta_eigs.cwiseAbs().maxCoeff();
  const double theta_abs_min = theta_eigs.cwiseAbs().minCoeff();
  report.condition_numbers.theta =
      theta_abs_min > 0.0 ? theta_abs_max / theta_abs_min : std::numeric_limits<double>::infinity();
  report.condition_numbers.omega =
      bundle.positive ? std::sqrt(report.condition_numbers.theta) : 0.0;

  const double scaled_tol = tol.base_tol * report.cond_scale;
  auto push = [&](const std::string& name, double residual, double tolerance) {
    report.entries.push_back({name, residual, tolerance, residual <= tolerance});
  };

  const Matrix& r = spectrum.right;
  const Matrix& l = spectrum.left;
  const auto b = pencil.b.asDiagonal();
  const Matrix lhb = l.adjoint() * b;        // rows {{lambda_k|
  const Matrix br = b * r;                   // columns |lambda_k}
  const Matrix identity = Matrix::Identity(n, n);

  push("eigenpair_residual", max_residual(pencil, spectrum), tol.tol_eig * report.cond_scale);
  push("biorthogonality", max_abs(Matrix(lhb * r - identity)), scaled_tol);
  push("completeness_kets", max_abs(Matrix(r * lhb - identity)), scaled_tol);
  push("completeness_weighted_kets", max_abs(Matrix(br * l.adjoint() - identity)), scaled_tol);

  const double b_scale = max_abs(Vector(pencil.b));
  push("spectral_rep_weight", max_abs(Matrix(br * lhb - pencil.b_matrix())) / b_scale, scaled_tol);

  const double a_scale = max_abs(pencil.a);
  push("spectral_rep_hamiltonian",
       max_abs(Matrix(br * spectrum.eigencharges.asDiagonal() * lhb - pencil.a)) / a_scale,
       scaled_tol);

  const Matrix h = pencil.hamiltonian();
  const double h_scale = max_abs(h);
  const double th_scale = max_abs(bundle.theta);
  push("quasi_hermiticity_h",
       max_abs(Matrix(h.adjoint() * bundle.theta - bundle.theta * h)) / (h_scale * th_scale),
       scaled_tol);
  push("quasi_hermiticity_w",
       max_abs(Matrix(pencil.b.conjugate().asDiagonal() * bundle.theta -
                      bundle.theta * pencil.b.asDiagonal())) /
           (b_scale * th_scale),
       scaled_tol);

  push("theta_hermiticity", bundle.asymmetry, scaled_tol);
  // positivity entries: residual is the negative part relative to the
  // spectral norm; the threshold is exactly zero.  Recomputed from the
  // bundle's theta so that injected faults register here too.
  push("theta_positivity", std::max(0.0, -theta_eigs.minCoeff()) / theta_abs_max, 0.0);
  const Matrix tw = bundle.theta * pencil.b.asDiagonal();
  const double tw_min = lapack::eig_hermitian(Matrix(0.5 * (tw + tw.adjoint()))).values.minCoeff();
  push("theta_w_positivity", std::max(0.0, -tw_min) / (theta_abs_max * b_scale), 0.0);

  const MMatrix m = m_matrix(spectrum, pencil);
  push("m_hermiticity", m.asymmetry(), scaled_tol);
  push("m_cross_representation", m.cross_residual, scaled_tol);

  MetricOptions relaxed;
  relaxed.fail_on_asymmetry = false;
  const Matrix theta_double = metric_double_series(spectrum, pencil, m, relaxed);
  push("metric_route_agreement", max_abs(Matrix(bundle.theta - theta_double)) / th_scale,
       scaled_tol);

  double worst_map = 0.0;
  for (int k = 0; k < n; ++k) {
    const double lk = l.col(k).norm();
    worst_map = std::max(worst_map, (bundle.theta * r.col(k) - l.col(k)).norm() / lk);
  }
  push("theta_maps_kets", worst_map, scaled_tol);

  // insertion identity: sum |l}} lam {r| . Theta = Theta . sum |r} lam {{l|
  const Matrix lhs = (pencil.b.conjugate().asDiagonal() * l) * spectrum.eigencharges.asDiagonal() *
                     (r.adjoint() * pencil.b.conjugate().asDiagonal());
  const Matrix rhs = br * spectrum.eigencharges.asDiagonal() * lhb;
  push("insertion_identity", max_abs(Matrix(lhs * bundle.theta - bundle.theta * rhs)) /
                                 (a_scale * th_scale),
       scaled_tol);

  if (bundle.positive) {
    push("h_hermiticity",
         max_abs(Matrix(bundle.h_herm - bundle.h_herm.adjoint())) / max_abs(bundle.h_herm),
         scaled_tol);
    push("w_hermiticity",
         max_abs(Matrix(bundle.w_herm - bundle.w_herm.adjoint())) / max_abs(bundle.w_herm),
         scaled_tol);
  }

  report.overall = std::all_of(report.entries.begin(), report.entries.end(),
                               [](const VerificationEntry& e) { return e.passed; });
  return report;
}

ConvergenceTable convergence_study(const ProblemSpec& spec, int refinements, int n_charges,
                                   const Tolerances& tol) {
  spec.validate();
  if (refinements < 0) throw Error("convergence_study: refinements must be >= 0");

  ConvergenceTable table;
  table.analytic_reference = analytic_oracle_applies(spec);

  // n -> 2n + 1 halves h exactly
  std::vector<int> sizes{spec.grid.n_interior};
  for (int k = 0; k < refinements; ++k) sizes.push_back(2 * sizes.back() + 1);

  std::vector<double> reference;
  if (table.analytic_reference) {
    const double kappa = std::sqrt(spec.kappa_sq.real());
    for (int i = 0; i < n_charges; ++i)
      reference.push_back(hermitian_coulomb_charge(i, spec.ell, kappa));
  } else {
    ProblemSpec fine = spec;
    fine.grid = make_grid(spec.grid.x_min, spec.grid.x_max, 2 * sizes.back() + 1);
    reference =
        lowest_real_charges(pencil_eigenvalues(assemble_pencil(fine)), n_charges, tol.reality_tol);
  }

  for (int n : sizes) {
    ProblemSpec level = spec;
    level.grid = make_grid(spec.grid.x_min, spec.grid.x_max, n);
    const Vector charges = pencil_eigenvalues(assemble_pencil(level));

    ConvergenceRow row;
    row.n = n;
    row.h = level.grid.h;
    row.reference = reference;
    if (table.analytic_reference) {
      row.charges = lowest_real_charges(charges, n_charges, tol.reality_tol);
    } else {
      // nearest computed eigenvalue per reference target
      for (double ref : reference) {
        double best = charges[0].real();
        double best_dist = std::abs(charges[0] - Complex{ref, 0.0});
        for (int k = 1; k < charges.size(); ++k) {
          const double dist = std::abs(charges[k] - Complex{ref, 0.0});
          if (dist < best_dist) {
            best_dist = dist;
            best = charges[k].real();
          }
        }
        row.charges.push_back(best);
      }
    }
    const size_t m = std::min(reference.size(), row.charges.size());
    row.reference.resize(m);
    row.charges.resize(m);
    for (size_t i = 0; i < m; ++i)
      row.rel_errors.push_back(std::abs(row.charges[i] - reference[i]) /
                               std::max(std::abs(reference[i]), 1e-300));
    table.rows.push_back(std::move(row));
  }

  if (table.rows.size() >= 2) {
    const auto& coarse = table.rows[table.rows.size() - 2];
    const auto& fine = table.rows.back();
    double sum = 0.0;
    int used = 0;
    for (size_t i = 0; i < fine.rel_errors.size(); ++i) {
      if (fine.rel_errors[i] > 0.0 && coarse.rel_errors[i] > 0.0) {
        sum += std::log2(coarse.rel_errors[i] / fine.rel_errors[i]);
        ++used;
      }
    }
    table.observed_order = used > 0 ? sum / used : 0.0;
    table.order_defect = table.observed_order < 1.5;
  }
  return table;
}

}  // namespace sturmet
