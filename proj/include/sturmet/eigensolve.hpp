#pragma once

#include <optional>
#include <vector>

#include "sturmet/assembly.hpp"
#include "sturmet/types.hpp"

namespace sturmet {

/// Full two-sided eigensystem of a pencil A v = lambda B v.
///
/// right.col(k) solves A r = lambda_k B r; left.col(k) solves the adjoint
/// problem A^H l = conj(lambda_k) B^H l.  After biorthonormalize() the
/// pairs satisfy left_j^H B right_k = delta_jk.
struct Spectrum {
  Vector eigencharges;
  Matrix right;
  Matrix left;
  RealVector pairing_residuals;        ///< |conj(mu_match) - lambda| / (1 + |lambda|)
  std::vector<bool> degenerate_flags;  ///< pairing ambiguity or clustered eigenvalue
  bool biorthonormal = false;

  int dim() const { return static_cast<int>(eigencharges.size()); }
};

struct RealityReport {
  int n_real = 0;
  int n_complex_pairs = 0;
  int n_unpaired = 0;
  bool broken = false;
};

/// Eigendecomposition of C = B^{-1} A and of C^H, conjugate-matched
/// greedily with collision detection.  Pairs are sorted by (Re, Im)
/// ascending.  Eigenvectors are polished by inverse iteration when the
/// raw residual misses tolerances.polish_target.
Spectrum solve_pencil(const OperatorPencil& pencil, const Tolerances& tol = {});

/// Values-only fast path (used by sweeps and convergence studies).
Vector pencil_eigenvalues(const OperatorPencil& pencil);

/// Rescales pairs so that left_j^H B right_k = delta_jk.
///
/// Scale split: when the pencil carries a diagonal symmetrizer D (every
/// assembled contour pencil does), the right vector is normalized in the
/// complex-symmetric weighted norm |r^T D B r| = 1 and the left vector
/// absorbs the rest; this is the normalization under which the
/// spectral-series metric comes out Hermitian (see metric.hpp).  Without
/// a symmetrizer the conjugated norm |r^H B r| = 1 is used instead, which
/// reproduces left = right on Hermitian pencils.  Phase gauge: first
/// significant right-vector component real positive.
///
/// Throws DegenerateSpectrum when two eigencharges sit closer than
/// degeneracy_tol * max|lambda|, and NearDefectivePair when a unit-vector
/// pair has |l^H B r| < defect_tol (exceptional point).
Spectrum biorthonormalize(Spectrum spectrum, const OperatorPencil& pencil,
                          const Tolerances& tol = {});

RealityReport classify_reality(const Spectrum& spectrum, double reality_tol = 1e-8);

/// Diagonal D (max-entry 1) with D*A complex symmetric: the identity for
/// an already-symmetric A, otherwise the standard tridiagonal recursion
/// D_{j+1}/D_j = A(j,j+1)/A(j+1,j).  Empty when A admits neither.
std::optional<Vector> symmetrizer_diagonal(const Matrix& a);

/// Max relative eigenpair residual ||A r - lambda B r|| / (||A|| + |lambda| ||B||).
double max_residual(const OperatorPencil& pencil, const Spectrum& spectrum);

}  // namespace sturmet
