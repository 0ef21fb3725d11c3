#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sturmet/assembly.hpp"
#include "sturmet/io.hpp"

using namespace sturmet;

namespace {

ProblemSpec half_line_spec(double ell, double kappa_sq, WeightKind weight, double x_max, int n) {
  ProblemSpec spec;
  spec.ell = ell;
  spec.kappa_sq = Complex{kappa_sq, 0.0};
  spec.weight = weight;
  spec.contour = ContourSpec::real_half_line();
  spec.grid = make_grid(0.0, x_max, n);
  return spec;
}

ProblemSpec pt_demo_spec(int n, double ell = 0.0, Complex kappa_sq = {1.0, 0.0}) {
  ProblemSpec spec;
  spec.ell = ell;
  spec.kappa_sq = kappa_sq;
  spec.weight = WeightKind::pt_coulomb();
  spec.contour = ContourSpec::parabola();
  spec.grid = make_grid(-6.0, 6.0, n);
  return spec;
}

}  // namespace

TEST_CASE("half-line kinetic matrix is the standard three-point Laplacian") {
  // h = 1 on (0, 4) with 3 interior nodes
  const ProblemSpec spec = half_line_spec(0.0, 0.0, WeightKind::identity(), 4.0, 3);
  const Matrix t = assemble_kinetic(spec);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double expect = i == j ? 2.0 : (std::abs(i - j) == 1 ? -1.0 : 0.0);
      CHECK(t(i, j) == Complex{expect, 0.0});
    }
}

TEST_CASE("parabola stencil at x = 0 carries s(0) = 1/2") {
  // middle node of a symmetric 3-node grid sits exactly at x = 0
  ProblemSpec spec = pt_demo_spec(3);
  spec.grid = make_grid(-0.3, 0.3, 3);
  const double h = spec.grid.h;
  const Matrix t = assemble_kinetic(spec);

  const Complex s0 = 1.0 / Complex{2.0, 0.0};
  const Complex sp = 1.0 / Complex{2.0, 2.0 * (0.5 * h)};
  const Complex sm = 1.0 / Complex{2.0, 2.0 * (-0.5 * h)};
  CHECK(std::abs(t(1, 1) - s0 * (sp + sm) / (h * h)) < 1e-12 / (h * h));
  CHECK(std::abs(t(1, 2) + s0 * sp / (h * h)) < 1e-12 / (h * h));
  // weights shrink by ~1/4 against the flat-contour stencil
  CHECK(std::abs(t(1, 1)) * h * h == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("kinetic matrix is conjugate-reflected on the default parabola") {
  const ProblemSpec spec = pt_demo_spec(41);
  const Matrix t = assemble_kinetic(spec);
  const int n = spec.grid.n_interior;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(t(n - 1 - i, n - 1 - j) - std::conj(t(i, j))));
  CHECK(worst < 1e-13 * max_abs(t));
}

TEST_CASE("assemble_pencil weight examples") {
  SUBCASE("identity weight gives B = I exactly") {
    const ProblemSpec spec = half_line_spec(0.0, 1.0, WeightKind::identity(), 10.0, 9);
    const OperatorPencil pencil = assemble_pencil(spec);
    for (int j = 0; j < pencil.dim(); ++j) CHECK(pencil.b[j] == Complex{1.0, 0.0});
  }
  SUBCASE("PT-Coulomb weight at r = -i equals -1") {
    // node x = 0 maps to r = -i on the default parabola
    ProblemSpec spec = pt_demo_spec(3);
    spec.grid = make_grid(-1.0, 1.0, 3);
    const OperatorPencil pencil = assemble_pencil(spec);
    CHECK(std::abs(pencil.b[1] - Complex{-1.0, 0.0}) < 1e-15);
  }
  SUBCASE("half-line Coulomb weight at x = 2") {
    // nodes of (0, 10) with 4 interior points sit at 2, 4, 6, 8
    ProblemSpec spec = half_line_spec(0.0, 1.0, WeightKind::coulomb(), 10.0, 4);
    const OperatorPencil pencil = assemble_pencil(spec);
    CHECK(std::abs(pencil.b[0] - Complex{0.5, 0.0}) < 1e-15);
    // ell = 0: no centrifugal contribution, diagonal is 2/h^2 + kappa_sq
    const double h = spec.grid.h;
    CHECK(std::abs(pencil.a(0, 0) - Complex{2.0 / (h * h) + 1.0, 0.0}) < 1e-12);
  }
}

TEST_CASE("half-line pencil with real weight is real symmetric") {
  const ProblemSpec spec = half_line_spec(1.0, 0.25, WeightKind::coulomb(), 20.0, 50);
  const OperatorPencil pencil = assemble_pencil(spec);
  for (int i = 0; i < pencil.dim(); ++i) {
    CHECK(pencil.b[i].imag() == 0.0);
    for (int j = 0; j < pencil.dim(); ++j) {
      CHECK(pencil.a(i, j).imag() == 0.0);
      CHECK(pencil.a(i, j) == pencil.a(j, i));
    }
  }
}

TEST_CASE("PT demo pencil is discretely PT-symmetric") {
  const OperatorPencil pencil = assemble_pencil(pt_demo_spec(80));
  const int n = pencil.dim();
  double worst_a = 0.0, worst_b = 0.0;
  for (int i = 0; i < n; ++i) {
    worst_b = std::max(worst_b, std::abs(std::conj(pencil.b[n - 1 - i]) - pencil.b[i]));
    for (int j = 0; j < n; ++j)
      worst_a =
          std::max(worst_a, std::abs(std::conj(pencil.a(n - 1 - i, n - 1 - j)) - pencil.a(i, j)));
  }
  CHECK(worst_a <= 1e-13 * max_abs(pencil.a));
  CHECK(worst_b <= 1e-13 * max_abs(Vector(pencil.b)));
}

TEST_CASE("pencil bandwidth is exactly one") {
  const OperatorPencil pencil = assemble_pencil(pt_demo_spec(30, 0.5, Complex{0.3, -0.2}));
  for (int i = 0; i < pencil.dim(); ++i)
    for (int j = 0; j < pencil.dim(); ++j)
      if (std::abs(i - j) > 1) CHECK(pencil.a(i, j) == Complex{0.0, 0.0});
}

TEST_CASE("singular weight on a contour through the origin is rejected") {
  // gamma = 0 puts r(0) = 0 right on the Coulomb singularity
  ProblemSpec spec = pt_demo_spec(5);
  spec.contour = ContourSpec::parabola(2.0, 1.0, 0.0);
  spec.grid = make_grid(-1.0, 1.0, 5);
  CHECK_THROWS_AS(assemble_pencil(spec), SingularWeight);
}

TEST_CASE("power-law weights") {
  CHECK_NOTHROW(WeightKind::power_law(-2).validate());
  CHECK_THROWS_AS(WeightKind::power_law(-3).validate(), Error);
  CHECK(weight_value(WeightKind::power_law(2), Complex{0.0, 2.0}) == Complex{-4.0, 0.0});
  CHECK(weight_value(WeightKind::power_law(0), Complex{3.0, 1.0}) == Complex{1.0, 0.0});
  const Complex w = weight_value(WeightKind::power_law(-2), Complex{0.0, 1.0});
  CHECK(std::abs(w - Complex{-1.0, 0.0}) < 1e-15);
}

TEST_CASE("problem validation catches half-line grids below zero") {
  ProblemSpec spec = half_line_spec(0.0, 1.0, WeightKind::coulomb(), 10.0, 5);
  spec.grid = make_grid(-1.0, 10.0, 5);
  CHECK_THROWS_AS(spec.validate(), InvalidGrid);
}

TEST_CASE("pencil export round-trips through the triplet reader") {
  const OperatorPencil pencil = assemble_pencil(pt_demo_spec(12));
  std::stringstream ss;
  write_pencil(ss, pencil);
  const Matrix a = read_matrix_triplets(ss, "A");
  const Matrix b = read_matrix_triplets(ss, "B");
  CHECK(max_abs(Matrix(a - pencil.a)) == 0.0);
  CHECK(max_abs(Matrix(b - pencil.b_matrix())) == 0.0);
}
