#include <doctest.h>

#include <cmath>

#include "sturmet/verify.hpp"

using namespace sturmet;

namespace {

ProblemSpec hermitian_spec(int n, double x_max = 40.0) {
  ProblemSpec spec;
  spec.ell = 0.0;
  spec.kappa_sq = Complex{0.25, 0.0};
  spec.weight = WeightKind::coulomb();
  spec.contour = ContourSpec::real_half_line();
  spec.grid = make_grid(0.0, x_max, n);
  return spec;
}

struct Solved {
  OperatorPencil pencil;
  Spectrum spectrum;
  MetricBundle bundle;
};

Solved solve_hermitian(int n) {
  Solved out;
  out.pencil = assemble_pencil(hermitian_spec(n));
  out.spectrum = biorthonormalize(solve_pencil(out.pencil), out.pencil);
  out.bundle = build_metric_bundle(out.spectrum, out.pencil);
  return out;
}

}  // namespace

TEST_CASE("hermitian problem passes the full identity suite") {
  const Solved s = solve_hermitian(200);
  const VerificationReport report = run_suite(s.pencil, s.spectrum, s.bundle);
  CHECK(report.overall);
  for (const auto& e : report.entries) {
    INFO(e.name);
    CHECK(e.passed);
    // tight residuals: at most 1e-10 x condition scale on the hermitian oracle
    CHECK(e.residual <= 1e-10 * report.cond_scale);
  }
  CHECK(report.condition_numbers.right_vectors < 50.0);
  CHECK(report.condition_numbers.theta < 1.0 + 1e-9);  // theta = I here
  const auto* herm = report.find("theta_hermiticity");
  REQUIRE(herm != nullptr);
  CHECK(herm->tolerance == doctest::Approx(1e-8 * report.cond_scale));
}

TEST_CASE("2x2 hand pencil: quasi-Hermiticity residual at rounding level") {
  OperatorPencil pencil;
  pencil.a.resize(2, 2);
  pencil.a << Complex{1.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{2.0, 0.0};
  pencil.b = Vector::Ones(2);
  const Spectrum s = biorthonormalize(solve_pencil(pencil), pencil);
  const MetricBundle bundle = build_metric_bundle(s, pencil);
  const VerificationReport report = run_suite(pencil, s, bundle);
  CHECK(report.overall);
  CHECK(report.find("quasi_hermiticity_h")->residual < 1e-14);
  CHECK(report.find("quasi_hermiticity_w")->residual < 1e-14);
}

TEST_CASE("fault injection flips at least one verdict") {
  Solved s = solve_hermitian(100);
  VerificationReport clean = run_suite(s.pencil, s.spectrum, s.bundle);
  REQUIRE(clean.overall);

  SUBCASE("perturbed off-diagonal theta entry") {
    s.bundle.theta(0, 1) += Complex{1e-3, 0.0};
    const VerificationReport faulty = run_suite(s.pencil, s.spectrum, s.bundle);
    CHECK_FALSE(faulty.overall);
    int failed = 0;
    for (const auto& e : faulty.entries) failed += e.passed ? 0 : 1;
    CHECK(failed >= 1);
  }
  SUBCASE("perturbed eigencharge") {
    s.spectrum.eigencharges[2] += Complex{1e-3, 0.0};
    const VerificationReport faulty = run_suite(s.pencil, s.spectrum, s.bundle);
    CHECK_FALSE(faulty.overall);
  }
  SUBCASE("perturbed right vector") {
    s.spectrum.right(3, 4) += Complex{0.0, 1e-3};
    const VerificationReport faulty = run_suite(s.pencil, s.spectrum, s.bundle);
    CHECK_FALSE(faulty.overall);
  }
}

TEST_CASE("report serialization") {
  const Solved s = solve_hermitian(60);
  const VerificationReport report = run_suite(s.pencil, s.spectrum, s.bundle);
  const auto j = report.to_json();
  CHECK(j["overall"].get<bool>() == report.overall);
  CHECK(j["entries"].size() == report.entries.size());
  CHECK(j["condition_numbers"]["right_vectors"].get<double>() ==
        doctest::Approx(report.condition_numbers.right_vectors));
  const std::string text = report.to_text();
  CHECK(text.find("overall: pass") != std::string::npos);
  CHECK(text.find("quasi_hermiticity_h") != std::string::npos);
}

TEST_CASE("run_suite rejects mismatched inputs") {
  const Solved a = solve_hermitian(40);
  const Solved b = solve_hermitian(44);
  CHECK_THROWS_AS(run_suite(a.pencil, b.spectrum, b.bundle), InputMismatch);
}

TEST_CASE("convergence study on the hermitian oracle") {
  const ConvergenceTable table = convergence_study(hermitian_spec(250), 1);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.analytic_reference);
  CHECK(table.rows[0].n == 250);
  CHECK(table.rows[1].n == 501);
  CHECK(table.rows[1].h == doctest::Approx(0.5 * table.rows[0].h).epsilon(1e-12));
  for (double e : table.rows[1].rel_errors) CHECK(e < 1e-3);
  // second-order stencil: errors shrink ~4x per halving
  CHECK(table.observed_order == doctest::Approx(2.0).epsilon(0.15));
  CHECK_FALSE(table.order_defect);
}

TEST_CASE("convergence study with zero refinements is a single row") {
  const ConvergenceTable table = convergence_study(hermitian_spec(120), 0);
  CHECK(table.rows.size() == 1);
  CHECK_FALSE(table.order_defect);
  CHECK(table.rows[0].rel_errors.size() == 3);
}

TEST_CASE("convergence study falls back to a fine-grid reference") {
  ProblemSpec spec;
  spec.ell = 0.3;
  spec.kappa_sq = Complex{-1.0, 0.0};
  spec.weight = WeightKind::pt_coulomb();
  spec.contour = ContourSpec::parabola();
  spec.grid = make_grid(-6.0, 6.0, 60);
  const ConvergenceTable table = convergence_study(spec, 1);
  CHECK_FALSE(table.analytic_reference);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.order_defect == (table.observed_order < 1.5));
}
