#pragma once

#include <string>
#include <utility>

#include "sturmet/eigensolve.hpp"
#include "sturmet/types.hpp"

namespace sturmet {

/// M_{jk} = <lambda_j| Theta |lambda_k> evaluated as <<lambda_j|lambda_k>,
/// which needs no Theta.  cross_residual records the worst deviation of the
/// two W^{-1} representations of the same matrix.
struct MMatrix {
  Matrix m;
  double cross_residual = 0.0;

  double asymmetry() const;
};

struct MetricOptions {
  double herm_tol = 1e-8;          ///< asymmetry gate for the series metrics
  double pd_floor = 1e-10;         ///< relative positive-definiteness floor
  bool fail_on_asymmetry = true;   ///< throw AsymmetryExceeded past herm_tol
};

/// Theta, its Hermitian square root and the Hermitized operator pair.
/// When theta fails the positivity gate, `positive` is false and the
/// omega/h/w blocks stay empty.
struct MetricBundle {
  Matrix theta;
  double asymmetry = 0.0;  ///< pre-symmetrization relative asymmetry of the route
  std::string route;

  Matrix omega;
  Matrix omega_inv;
  Matrix h_herm;
  Matrix w_herm;

  double theta_min_eig = 0.0;
  double theta_max_eig = 0.0;
  double theta_w_min_eig = 0.0;
  bool positive = false;
};

/// W = I metric: Theta = sum_k |l_k><l_k|.  Requires the B = I
/// biorthonormalization convention (<<l|r> = delta).
Matrix metric_w_identity(const Spectrum& spectrum);

/// Single-series Sturmian metric Theta = sum_k |l_k><l_k| W, Hermitian
/// symmetrized afterward; the discarded asymmetry lands in *asymmetry_out.
Matrix metric_single_series(const Spectrum& spectrum, const OperatorPencil& pencil,
                            const MetricOptions& opts = {}, double* asymmetry_out = nullptr);

/// Double-series metric Theta = sum_{jk} W^H l_j M_{jk} l_k^H W.
Matrix metric_double_series(const Spectrum& spectrum, const OperatorPencil& pencil,
                            const MMatrix& m, const MetricOptions& opts = {},
                            double* asymmetry_out = nullptr);

MMatrix m_matrix(const Spectrum& spectrum, const OperatorPencil& pencil);

/// Unique Hermitian positive square root and its inverse.  Throws
/// NotPositiveDefinite when min eig <= pd_floor * max eig.
std::pair<Matrix, Matrix> factorize_omega(const Matrix& theta, double pd_floor = 1e-10);

/// (h, w) = (Omega H Omega^{-1}, Omega W Omega^{-1}) with H = A - kappa_sq I.
std::pair<Matrix, Matrix> hermitize(const OperatorPencil& pencil, const Matrix& omega,
                                    const Matrix& omega_inv);

/// Single-series metric plus square-root factorization and Hermitized pair,
/// with the positivity gate applied.
MetricBundle build_metric_bundle(const Spectrum& spectrum, const OperatorPencil& pencil,
                                 const MetricOptions& opts = {});

}  // namespace sturmet
