#include "sturmet/metric.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lapack.hpp"

namespace sturmet {

namespace {

void require_biorthonormal(const Spectrum& spectrum, const char* who) {
  if (!spectrum.biorthonormal)
    throw Error(std::string(who) + ": spectrum must be biorthonormalized first");
}

void require_full_rank(const Matrix& left, const char* who) {
  const double rcond = lapack::rcond_1norm(left);
  const double floor =
      static_cast<double>(left.rows()) * std::numeric_limits<double>::epsilon();
  if (rcond < floor)
    throw RankDeficient(std::string(who) + ": left-vector matrix numerically singular (rcond " +
                        std::to_string(rcond) + ")");
}

Matrix symmetrize_checked(Matrix theta, const MetricOptions& opts, const char* who,
                          double* asymmetry_out) {
  const double scale = max_abs(theta);
  const double asym = scale > 0.0 ? max_abs(Matrix(theta - theta.adjoint())) / scale : 0.0;
  if (asymmetry_out) *asymmetry_out = asym;
  if (opts.fail_on_asymmetry && asym > opts.herm_tol)
    throw AsymmetryExceeded(std::string(who) + ": pre-symmetrization asymmetry " +
                            std::to_string(asym) + " exceeds " + std::to_string(opts.herm_tol));
  theta = 0.5 * (theta + theta.adjoint()).eval();
  return theta;
}

}  // namespace

double MMatrix::asymmetry() const {
  const double scale = max_abs(m);
  return scale > 0.0 ? max_abs(Matrix(m - m.adjoint())) / scale : 0.0;
}

Matrix metric_w_identity(const Spectrum& spectrum) {
  require_biorthonormal(spectrum, "metric_w_identity");
  require_full_rank(spectrum.left, "metric_w_identity");
  return spectrum.left * spectrum.left.adjoint();
}

Matrix metric_single_series(const Spectrum& spectrum, const OperatorPencil& pencil,
                            const MetricOptions& opts, double* asymmetry_out) {
  require_biorthonormal(spectrum, "metric_single_series");
  if (pencil.dim() != spectrum.dim())
    throw InputMismatch("metric_single_series: pencil/spectrum size mismatch");
  require_full_rank(spectrum.left, "metric_single_series");

  // identity weight collapses to the W = I formula bit for bit
  Matrix theta = spectrum.left * (spectrum.left.adjoint() * pencil.b.asDiagonal());
  return symmetrize_checked(std::move(theta), opts, "metric_single_series", asymmetry_out);
}

Matrix metric_double_series(const Spectrum& spectrum, const OperatorPencil& pencil,
                            const MMatrix& m, const MetricOptions& opts,
                            double* asymmetry_out) {
  require_biorthonormal(spectrum, "metric_double_series");
  if (pencil.dim() != spectrum.dim() || m.m.rows() != spectrum.dim())
    throw InputMismatch("metric_double_series: size mismatch");
  require_full_rank(spectrum.left, "metric_double_series");

  const Matrix wket = pencil.b.conjugate().asDiagonal() * spectrum.left;  // columns W^H |l_k>
  Matrix theta = wket * m.m * wket.adjoint();
  return symmetrize_checked(std::move(theta), opts, "metric_double_series", asymmetry_out);
}

MMatrix m_matrix(const Spectrum& spectrum, const OperatorPencil& pencil) {
  require_biorthonormal(spectrum, "m_matrix");
  if (pencil.dim() != spectrum.dim()) throw InputMismatch("m_matrix: size mismatch");

  MMatrix out;
  out.m = spectrum.left.adjoint() * spectrum.right;  // <<lambda | lambda'>

  // Eq.-(27)-style cross-checks through W^{-1}; distinct float paths even
  // though W is diagonal.
  const Vector w_inv = pencil.b.cwiseInverse();
  const Matrix rep2 = (pencil.b.asDiagonal() * spectrum.left).adjoint() *
                      (w_inv.asDiagonal() * spectrum.right);
  const Matrix rep3 = spectrum.left.adjoint() *
                      (w_inv.asDiagonal() * (pencil.b.asDiagonal() * spectrum.right));
  const double scale = std::max(1e-300, max_abs(out.m));
  out.cross_residual = std::max(max_abs(Matrix(rep2 - out.m)), max_abs(Matrix(rep3 - out.m))) / scale;
  return out;
}

std::pair<Matrix, Matrix> factorize_omega(const Matrix& theta, double pd_floor) {
  if (theta.rows() != theta.cols()) throw InputMismatch("factorize_omega: square matrix required");
  auto sys = lapack::eig_hermitian(theta);
  const double max_eig = sys.values.maxCoeff();
  const double min_eig = sys.values.minCoeff();
  if (min_eig <= pd_floor * std::max(max_eig, 0.0))
    throw NotPositiveDefinite("factorize_omega: min eigenvalue " + std::to_string(min_eig) +
                              " fails the positivity floor");

  const RealVector roots = sys.values.cwiseSqrt();
  Matrix omega = sys.vectors * roots.asDiagonal() * sys.vectors.adjoint();
  Matrix omega_inv = sys.vectors * roots.cwiseInverse().asDiagonal() * sys.vectors.adjoint();
  return {std::move(omega), std::move(omega_inv)};
}

std::pair<Matrix, Matrix> hermitize(const OperatorPencil& pencil, const Matrix& omega,
                                    const Matrix& omega_inv) {
  if (omega.rows() != pencil.dim() || omega_inv.rows() != pencil.dim())
    throw InputMismatch("hermitize: size mismatch");
  Matrix h = omega * pencil.hamiltonian() * omega_inv;
  Matrix w = omega * pencil.b.asDiagonal() * omega_inv;
  return {std::move(h), std::move(w)};
}

MetricBundle build_metric_bundle(const Spectrum& spectrum, const OperatorPencil& pencil,
                                 const MetricOptions& opts) {
  MetricBundle bundle;
  bundle.route = "single_series";
  bundle.theta = metric_single_series(spectrum, pencil, opts, &bundle.asymmetry);

  auto theta_eigs = lapack::eig_hermitian(bundle.theta).values;
  bundle.theta_min_eig = theta_eigs.minCoeff();
  bundle.theta_max_eig = theta_eigs.maxCoeff();

  const Matrix tw = bundle.theta * pencil.b.asDiagonal();
  const Matrix tw_herm = 0.5 * (tw + tw.adjoint());
  bundle.theta_w_min_eig = lapack::eig_hermitian(tw_herm).values.minCoeff();

  bundle.positive = bundle.theta_min_eig > opts.pd_floor * std::max(bundle.theta_max_eig, 0.0);
  if (bundle.positive) {
    auto [omega, omega_inv] = factorize_omega(bundle.theta, opts.pd_floor);
    bundle.omega = std::move(omega);
    bundle.omega_inv = std::move(omega_inv);
    auto [h, w] = hermitize(pencil, bundle.omega, bundle.omega_inv);
    bundle.h_herm = std::move(h);
    bundle.w_herm = std::move(w);
  }
  return bundle;
}

}  // namespace sturmet
