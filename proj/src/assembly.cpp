#include "sturmet/assembly.hpp"

#include <cmath>
#include <ostream>

#include "sturmet/io.hpp"

namespace sturmet {

void WeightKind::validate() const {
  if (tag == Tag::Power && power < -2)
    throw Error("WeightKind: power-law exponent must be >= -2");
}

Complex weight_value(const WeightKind& kind, Complex r) {
  switch (kind.tag) {
    case WeightKind::Tag::Identity:
      return Complex{1.0, 0.0};
    case WeightKind::Tag::PTCoulomb:
      return kImag / r;
    case WeightKind::Tag::Coulomb:
      return 1.0 / r;
    case WeightKind::Tag::Power:
      if (kind.power == 0) return Complex{1.0, 0.0};
      return std::pow(r, kind.power);
  }
  throw Error("weight_value: unknown tag");
}

void ProblemSpec::validate() const {
  contour.validate();
  weight.validate();
  if (!std::isfinite(ell)) throw Error("ProblemSpec: ell must be finite");
  if (grid.n_interior < 3) throw InvalidGrid("ProblemSpec: grid has fewer than 3 nodes");
  if (contour.kind == ContourKind::RealHalfLine && grid.x_min < 0.0)
    throw InvalidGrid("ProblemSpec: half-line contour requires x_min >= 0");
}

Matrix OperatorPencil::hamiltonian() const {
  Matrix h = a;
  h.diagonal().array() -= kappa_sq;
  return h;
}

Matrix assemble_kinetic(const ProblemSpec& spec) {
  spec.validate();
  const Grid& g = spec.grid;
  const int n = g.n_interior;
  const double h2 = g.h * g.h;

  Matrix t = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const double x = g.nodes[j];
    const Complex s = 1.0 / contour_derivative(spec.contour, x);
    const Complex sp = 1.0 / contour_derivative(spec.contour, x + 0.5 * g.h);
    const Complex sm = 1.0 / contour_derivative(spec.contour, x - 0.5 * g.h);
    t(j, j) = s * (sp + sm) / h2;
    if (j + 1 < n) t(j, j + 1) = -s * sp / h2;
    if (j > 0) t(j, j - 1) = -s * sm / h2;
  }
  return t;
}

OperatorPencil assemble_pencil(const ProblemSpec& spec, double weight_floor) {
  OperatorPencil pencil;
  pencil.a = assemble_kinetic(spec);
  pencil.kappa_sq = spec.kappa_sq;

  const Grid& g = spec.grid;
  const int n = g.n_interior;
  const double cf = spec.ell * (spec.ell + 1.0);

  Vector r(n);
  pencil.b.resize(n);
  for (int j = 0; j < n; ++j) {
    r[j] = contour_point(spec.contour, g.nodes[j]);
    pencil.b[j] = weight_value(spec.weight, r[j]);
  }

  const double r_scale = r.cwiseAbs().maxCoeff();
  const double w_scale = pencil.b.cwiseAbs().maxCoeff();
  for (int j = 0; j < n; ++j) {
    if (std::abs(r[j]) <= weight_floor * r_scale || std::abs(pencil.b[j]) <= weight_floor * w_scale)
      throw SingularWeight("assemble_pencil: contour passes too near r = 0 at node " +
                           std::to_string(j));
    pencil.a(j, j) += cf / (r[j] * r[j]) + spec.kappa_sq;
  }
  return pencil;
}

void write_pencil(std::ostream& os, const OperatorPencil& pencil) {
  os << "% sturmet pencil: A then B, entries 'row col re im'\n";
  write_matrix_triplets(os, pencil.a, "A");
  write_matrix_triplets(os, pencil.b_matrix(), "B");
}

}  // namespace sturmet
