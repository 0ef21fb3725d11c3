#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sturmet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr Complex kImag{0.0, 1.0};

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvalidGrid final : Error { using Error::Error; };
struct SingularWeight final : Error { using Error::Error; };
struct EigensolverFailure final : Error { using Error::Error; };
struct DegenerateSpectrum final : Error { using Error::Error; };
struct NearDefectivePair final : Error { using Error::Error; };
struct RankDeficient final : Error { using Error::Error; };
struct AsymmetryExceeded final : Error { using Error::Error; };
struct NotPositiveDefinite final : Error { using Error::Error; };
struct SingularQuantumNumbers final : Error { using Error::Error; };
struct NonpositiveEnergy final : Error { using Error::Error; };
struct InputMismatch final : Error { using Error::Error; };
struct ConfigError final : Error { using Error::Error; };
struct IoError final : Error { using Error::Error; };

/// Numerical thresholds shared across the solver, metric and verification
/// stages.  Every field can be overridden from the CLI (--tol name=value)
/// or the [tolerances] config section.
struct Tolerances {
  double tol_eig = 1e-10;        ///< eigenpair residual bound, relative to the operator scale
  double polish_target = 1e-12;  ///< inverse-iteration polish target (relative)
  double degeneracy_tol = 1e-8;  ///< eigencharge gap floor, scaled by max |lambda|
  double defect_tol = 1e-8;      ///< |<<l|W|r>| floor for unit vectors (exceptional point guard)
  double reality_tol = 1e-8;     ///< |Im lambda| <= reality_tol * (1 + |lambda|)
  double herm_tol = 1e-8;        ///< metric asymmetry gate (relative)
  double pd_floor = 1e-10;       ///< positive-definiteness floor, relative to max eigenvalue
  double weight_floor = 1e-12;   ///< singular-weight floor, relative to the node scale
  double base_tol = 1e-8;        ///< verification base tolerance (condition-scaled)
  double oracle_tol = 1e-3;      ///< relative eigencharge error accepted by the oracle pipeline
};

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

}  // namespace sturmet
