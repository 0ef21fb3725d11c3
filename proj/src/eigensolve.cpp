#include "sturmet/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lapack.hpp"

namespace sturmet {

namespace {

Matrix reduced_operator(const OperatorPencil& pencil) {
  // C = B^{-1} A with diagonal B: scale rows.
  Matrix c = pencil.a;
  for (int i = 0; i < pencil.dim(); ++i) c.row(i) /= pencil.b[i];
  return c;
}

bool is_real(const Matrix& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

// dgeev on purely real pencils, zgeev otherwise
lapack::EigResult eig_dispatch(const Matrix& m, bool want_vectors) {
  if (is_real(m)) return lapack::eig_real(m.real(), want_vectors);
  return lapack::eig(m, want_vectors);
}

// One or two inverse-iteration steps on (c - lambda I); keeps the best
// vector by residual.
void polish_vector(const Matrix& c, Complex lambda, Eigen::Ref<Vector> v, double res,
                   double target, double c_scale) {
  const double shift = 64.0 * std::numeric_limits<double>::epsilon() * c_scale;
  Matrix shifted = c;
  shifted.diagonal().array() -= (lambda + Complex{shift, 0.0});
  for (int it = 0; it < 2 && res > target; ++it) {
    Vector y;
    try {
      y = lapack::solve(shifted, Vector(v));
    } catch (const EigensolverFailure&) {
      return;  // exactly singular shift; keep what we have
    }
    const double ny = y.norm();
    if (!(ny > 0.0) || !std::isfinite(ny)) return;
    y /= ny;
    const double res_new = (c * y - lambda * y).norm();
    if (res_new >= res) return;
    v = y;
    res = res_new;
  }
}

// Residuals for all pairs in one product, then targeted inverse-iteration
// polish of the few (typically zero) columns that miss the target.
void polish_system(const Matrix& c, lapack::EigResult& sys, const Tolerances& tol) {
  const double c_scale = max_abs(c);
  const double target = tol.polish_target * c_scale;
  const Matrix residual = c * sys.vectors - sys.vectors * sys.values.asDiagonal();
  for (int k = 0; k < sys.values.size(); ++k) {
    const double res = residual.col(k).norm();
    if (res > target)
      polish_vector(c, sys.values[k], sys.vectors.col(k), res, target, c_scale);
  }
}

std::vector<int> sort_order(const Vector& values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (values[i].real() != values[j].real()) return values[i].real() < values[j].real();
    return values[i].imag() < values[j].imag();
  });
  return order;
}

int first_significant_index(const Vector& v) {
  const double top = v.cwiseAbs().maxCoeff();
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) >= 1e-2 * top) return i;
  return 0;
}

}  // namespace

Vector pencil_eigenvalues(const OperatorPencil& pencil) {
  auto res = eig_dispatch(reduced_operator(pencil), /*want_vectors=*/false);
  const auto order = sort_order(res.values);
  Vector sorted(res.values.size());
  for (size_t k = 0; k < order.size(); ++k) sorted[k] = res.values[order[k]];
  return sorted;
}

Spectrum solve_pencil(const OperatorPencil& pencil, const Tolerances& tol) {
  const int n = pencil.dim();
  if (pencil.a.rows() != n || pencil.a.cols() != n)
    throw InputMismatch("solve_pencil: pencil dimensions disagree");

  const Matrix c = reduced_operator(pencil);
  const Matrix c_adj = c.adjoint();
  auto right_sys = eig_dispatch(c, true);
  auto adj_sys = eig_dispatch(c_adj, true);
  polish_system(c, right_sys, tol);
  polish_system(c_adj, adj_sys, tol);

  Spectrum s;
  s.eigencharges.resize(n);
  s.right.resize(n, n);
  s.left.resize(n, n);
  s.pairing_residuals.resize(n);
  s.degenerate_flags.assign(n, false);

  const auto order = sort_order(right_sys.values);
  const double lam_scale =
      1.0 + right_sys.values.cwiseAbs().maxCoeff();
  const double match_tol = tol.degeneracy_tol * lam_scale;

  std::vector<bool> used(n, false);
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    const Complex lambda = right_sys.values[src];
    s.eigencharges[k] = lambda;
    s.right.col(k) = right_sys.vectors.col(src);

    // greedy conjugate match against the adjoint system
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    int candidates_within_tol = 0;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double dist = std::abs(std::conj(adj_sys.values[i]) - lambda);
      if (dist <= match_tol) ++candidates_within_tol;
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    used[best] = true;
    // adjoint-problem vector: A^H l = conj(lambda) B^H l  <=>  l = B^{-H} u
    // with C^H u = conj(lambda) u
    s.left.col(k) = adj_sys.vectors.col(best).array() / pencil.b.array().conjugate();
    s.pairing_residuals[k] = best_dist / (1.0 + std::abs(lambda));
    if (candidates_within_tol > 1) s.degenerate_flags[k] = true;  // pairing ambiguity
  }
  return s;
}

std::optional<Vector> symmetrizer_diagonal(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  const double a_scale = std::max(1.0, max_abs(a));

  if (max_abs(Matrix(a - a.transpose())) <= 1e-12 * a_scale) return Vector::Ones(n);

  bool tridiagonal = true;
  for (int j = 0; j < n && tridiagonal; ++j)
    for (int i = 0; i < n; ++i)
      if (std::abs(i - j) > 1 && a(i, j) != Complex{0.0, 0.0}) {
        tridiagonal = false;
        break;
      }
  if (!tridiagonal) return std::nullopt;

  Vector d = Vector::Ones(n);
  for (int j = 0; j + 1 < n; ++j) {
    const Complex lo = a(j + 1, j);
    const Complex hi = a(j, j + 1);
    if (lo == Complex{0.0, 0.0} || hi == Complex{0.0, 0.0}) {
      if (std::abs(lo) != std::abs(hi)) return std::nullopt;
      d[j + 1] = d[j];  // decoupled blocks
    } else {
      d[j + 1] = d[j] * hi / lo;
    }
  }

  const Matrix da = d.asDiagonal() * a;
  if (max_abs(Matrix(da - da.transpose())) > 1e-10 * std::max(1.0, max_abs(da)))
    return std::nullopt;

  const double top = d.cwiseAbs().maxCoeff();
  if (top > 0.0 && std::isfinite(top)) d /= top;
  return d;
}

Spectrum biorthonormalize(Spectrum spectrum, const OperatorPencil& pencil,
                          const Tolerances& tol) {
  const int n = spectrum.dim();
  if (pencil.dim() != n) throw InputMismatch("biorthonormalize: pencil/spectrum size mismatch");

  const double lam_scale = spectrum.eigencharges.cwiseAbs().maxCoeff();
  const double gap_floor = tol.degeneracy_tol * lam_scale;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const double gap = std::abs(spectrum.eigencharges[j] - spectrum.eigencharges[k]);
      if (gap < gap_floor)
        throw DegenerateSpectrum("biorthonormalize: eigencharges " + std::to_string(j) + " and " +
                                 std::to_string(k) + " are degenerate (gap " +
                                 std::to_string(gap) + ")");
    }

  const std::optional<Vector> d = symmetrizer_diagonal(pencil.a);
  const Vector db = d ? Vector(d->array() * pencil.b.array()) : pencil.b;

  for (int k = 0; k < n; ++k) {
    Vector r = spectrum.right.col(k);
    r /= r.norm();
    Vector l = spectrum.left.col(k);
    l /= l.norm();

    const Complex raw = l.dot(pencil.b.asDiagonal() * r);  // l^H B r, unit vectors
    if (std::abs(raw) < tol.defect_tol)
      throw NearDefectivePair("biorthonormalize: pair " + std::to_string(k) +
                              " nearly self-orthogonal (|l^H B r| = " + std::to_string(std::abs(raw)) +
                              ")");

    // gauge: first significant right component real positive
    const int i0 = first_significant_index(r);
    r *= std::abs(r[i0]) / r[i0];

    // weighted norm fixing the scale split; real rescale only
    const Complex tau = d ? Complex((r.array() * db.array() * r.array()).sum())
                          : r.dot(db.asDiagonal() * r);
    double scale = std::sqrt(std::abs(tau));
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      scale = 1.0;  // self-orthogonal in the weighted norm; flag and carry on
      spectrum.degenerate_flags[k] = true;
    }
    r /= scale;

    const Complex prod = l.dot(pencil.b.asDiagonal() * r);
    l /= std::conj(prod);

    spectrum.right.col(k) = r;
    spectrum.left.col(k) = l;
  }
  spectrum.biorthonormal = true;
  return spectrum;
}

RealityReport classify_reality(const Spectrum& spectrum, double reality_tol) {
  RealityReport report;
  const int n = spectrum.dim();
  std::vector<int> complex_modes;
  for (int k = 0; k < n; ++k) {
    const Complex lam = spectrum.eigencharges[k];
    if (std::abs(lam.imag()) <= reality_tol * (1.0 + std::abs(lam)))
      ++report.n_real;
    else
      complex_modes.push_back(k);
  }

  std::vector<bool> used(complex_modes.size(), false);
  for (size_t i = 0; i < complex_modes.size(); ++i) {
    if (used[i]) continue;
    const Complex lam = spectrum.eigencharges[complex_modes[i]];
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (size_t j = i + 1; j < complex_modes.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(std::conj(lam) - spectrum.eigencharges[complex_modes[j]]);
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(j);
      }
    }
    if (best >= 0 && best_dist <= reality_tol * (1.0 + std::abs(lam))) {
      used[i] = used[best] = true;
      ++report.n_complex_pairs;
    } else {
      used[i] = true;
      ++report.n_unpaired;
    }
  }
  report.broken = report.n_unpaired > 0;
  return report;
}

double max_residual(const OperatorPencil& pencil, const Spectrum& spectrum) {
  const double a_scale = max_abs(pencil.a);
  const double b_scale = max_abs(Vector(pencil.b));
  double worst = 0.0;
  for (int k = 0; k < spectrum.dim(); ++k) {
    const Complex lam = spectrum.eigencharges[k];
    const Vector r = spectrum.right.col(k);
    const double res = (pencil.a * r - lam * (pencil.b.asDiagonal() * r)).norm() /
                       ((a_scale + std::abs(lam) * b_scale) * r.norm());
    worst = std::max(worst, res);
  }
  return worst;
}

}  // namespace sturmet
