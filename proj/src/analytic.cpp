#include "sturmet/analytic.hpp"

#include <cmath>

namespace sturmet {

namespace {
constexpr double kDenomFloor = 1e-12;
}

void QuantumNumbers::validate() const {
  if (n < 0) throw Error("QuantumNumbers: n must be non-negative");
  if (q != 1 && q != -1) throw Error("QuantumNumbers: q must be +1 or -1");
  if (!std::isfinite(ell)) throw Error("QuantumNumbers: ell must be finite");
}

double quasi_parity_denominator(const QuantumNumbers& qn) {
  qn.validate();
  return 2.0 * qn.n + 1.0 - qn.q - 2.0 * qn.q * qn.ell;
}

double pt_coulomb_energy(const QuantumNumbers& qn, double lambda) {
  const double denom = quasi_parity_denominator(qn);
  if (std::abs(denom) < kDenomFloor)
    throw SingularQuantumNumbers("pt_coulomb_energy: 2n+1-q-2q*ell vanishes");
  return (lambda * lambda) / (denom * denom);
}

std::pair<double, double> pt_coulomb_eigencharge(const QuantumNumbers& qn, double energy) {
  const double denom = quasi_parity_denominator(qn);
  if (std::abs(denom) < kDenomFloor)
    throw SingularQuantumNumbers("pt_coulomb_eigencharge: 2n+1-q-2q*ell vanishes");
  if (!(energy > 0.0)) throw NonpositiveEnergy("pt_coulomb_eigencharge: requires E > 0");
  const double lam = std::sqrt(energy) * denom;
  return {lam, -lam};
}

double hermitian_coulomb_charge(int n, double ell, double kappa) {
  if (n < 0) throw Error("hermitian_coulomb_charge: n must be non-negative");
  if (!(ell > -1.0)) throw Error("hermitian_coulomb_charge: requires ell > -1");
  if (!(kappa > 0.0)) throw Error("hermitian_coulomb_charge: requires kappa > 0");
  return 2.0 * kappa * (n + ell + 1.0);
}

}  // namespace sturmet
