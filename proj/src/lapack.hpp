#pragma once

// Thin wrappers over the complex LAPACK drivers.  Column-major Eigen
// matrices map onto the Fortran layout directly; inputs are copied because
// the drivers overwrite their arguments.

#include "sturmet/types.hpp"

namespace sturmet::lapack {

struct EigResult {
  Vector values;
  Matrix vectors;  // empty when vectors were not requested
};

/// Full complex eigendecomposition (Hessenberg + shifted QR inside zgeev).
/// Throws EigensolverFailure on non-convergence.
EigResult eig(const Matrix& m, bool want_vectors);

/// Same contract for a real matrix via dgeev; conjugate pairs are unpacked
/// from the packed real-Schur layout into complex vectors.
EigResult eig_real(const RealMatrix& m, bool want_vectors);

/// Eigendecomposition of a Hermitian matrix (zheevd), values ascending.
/// Only the Hermitian part of `m` participates, per LAPACK convention.
struct HermEigResult {
  RealVector values;
  Matrix vectors;
};
HermEigResult eig_hermitian(const Matrix& m);

/// Singular values, descending (zgesdd, values only).
RealVector singular_values(const Matrix& m);

/// Reciprocal 1-norm condition estimate via zgetrf + zgecon.
/// Returns 0 for an exactly singular factorization.
double rcond_1norm(const Matrix& m);

/// Dense solve a x = b (zgesv).  Throws EigensolverFailure on singular a.
Vector solve(Matrix a, Vector b);

}  // namespace sturmet::lapack
