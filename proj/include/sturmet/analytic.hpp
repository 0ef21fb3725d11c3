#pragma once

#include <utility>

#include "sturmet/types.hpp"

namespace sturmet {

/// (n, q, ell) with quasi-parity q = +-1.  The level formula divides by
/// denom = 2n + 1 - q - 2*q*ell; configurations with denom = 0 are rejected.
struct QuantumNumbers {
  int n = 0;
  int q = -1;
  double ell = 0.0;

  void validate() const;
};

double quasi_parity_denominator(const QuantumNumbers& qn);

/// E = lambda^2 / (2n + 1 - q - 2 q ell)^2; strictly positive for lambda != 0.
double pt_coulomb_energy(const QuantumNumbers& qn, double lambda);

/// Formal inversion of the level formula: both branches +-sqrt(E)*denom.
std::pair<double, double> pt_coulomb_eigencharge(const QuantumNumbers& qn, double energy);

/// Eigencharges of the Hermitian half-line Coulomb Sturmian problem at
/// fixed kappa: lambda_n = 2 kappa (n + ell + 1).
double hermitian_coulomb_charge(int n, double ell, double kappa);

}  // namespace sturmet
