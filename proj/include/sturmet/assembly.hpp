#pragma once

#include <iosfwd>

#include "sturmet/contour.hpp"
#include "sturmet/types.hpp"

namespace sturmet {

/// Weight operator W appearing on the eigenvalue side of H phi = lambda W phi.
/// Always a local multiplication operator, hence diagonal on the grid.
struct WeightKind {
  enum class Tag { Identity, PTCoulomb, Coulomb, Power };

  Tag tag = Tag::PTCoulomb;
  int power = 0;  ///< exponent for Tag::Power; N = -2 is allowed but experimental

  void validate() const;

  static WeightKind identity() { return {Tag::Identity, 0}; }
  static WeightKind pt_coulomb() { return {Tag::PTCoulomb, 0}; }
  static WeightKind coulomb() { return {Tag::Coulomb, 0}; }
  static WeightKind power_law(int n) { return {Tag::Power, n}; }
};

Complex weight_value(const WeightKind& kind, Complex r);

/// Physical parameters of one Sturm-Schroedinger pencil.
struct ProblemSpec {
  double ell = 0.0;             ///< centrifugal parameter, any real
  Complex kappa_sq{1.0, 0.0};   ///< fixed energy shift entering the operator side
  WeightKind weight = WeightKind::pt_coulomb();
  ContourSpec contour{};
  Grid grid;

  void validate() const;
};

/// Dense pencil (A, B): A = T + diag(ell(ell+1)/r^2) + kappa_sq * I is
/// tridiagonal, B = diag(W(r(x_j))).  The diagonal of B is stored as a
/// vector; b_matrix() expands it on demand.
struct OperatorPencil {
  Matrix a;
  Vector b;
  Complex kappa_sq{0.0, 0.0};

  int dim() const { return static_cast<int>(b.size()); }
  Matrix b_matrix() const { return Matrix(b.asDiagonal()); }
  /// The operator the quasi-Hermiticity identities refer to: A - kappa_sq I.
  Matrix hamiltonian() const;
};

/// Conservative three-point discretization of -(1/r') d/dx [(1/r') d/dx]
/// with Dirichlet closure at both grid ends.  Reduces to the standard -u''
/// stencil on the real half-line.
Matrix assemble_kinetic(const ProblemSpec& spec);

/// Full pencil; throws SingularWeight when the contour passes too close to
/// r = 0 for the requested weight (relative floor `weight_floor`).
OperatorPencil assemble_pencil(const ProblemSpec& spec, double weight_floor = 1e-12);

/// Text export, one entry per line: row col re im (1-based indices).
void write_pencil(std::ostream& os, const OperatorPencil& pencil);

}  // namespace sturmet
