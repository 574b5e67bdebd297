#pragma once

// Fidelities between density matrices and their closed-form companions.

#include <span>
#include <vector>

#include "qfid/linalg.hpp"

namespace qfid {

/// sum_i sqrt(p_i q_i).
double classical_fidelity(const ProbVector& p, const ProbVector& q);

/// ||rho^{1/2} sigma^{1/2}||_1, from singular values.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
/// tr(rho^{1/4} sigma^{1/2} rho^{1/4}) = Re tr(rho^{1/2} sigma^{1/2}).
double holevo_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
/// tr(rho # sigma).
double matsumoto_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
/// (1/2) ||rho - sigma||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

struct FidelityReport {
  double uhlmann = 0.0;
  double holevo = 0.0;
  double matsumoto = 0.0;
  double trace_distance = 0.0;
};

FidelityReport fidelity_report(const DensityMatrix& rho, const DensityMatrix& sigma);

struct FidelityTriple {
  double uhlmann = 0.0;
  double holevo = 0.0;
  double matsumoto = 0.0;
};

/// Exact values for two pure states: (|<psi|phi>|, |<psi|phi>|^2, |<psi|phi>|^inf),
/// where the last is 1 iff the overlap magnitude rounds to 1 (>= 1 - 1e-15).
FidelityTriple pure_state_fidelities(std::span<const cplx> psi, std::span<const cplx> phi);

/// (<psi|rho|psi>^{1/2}, <psi|rho^{1/2}|psi>, <psi|rho^{-1}|psi>^{-1/2}) for PD rho.
FidelityTriple pure_mixed_fidelities(const DensityMatrix& rho, std::span<const cplx> psi);

/// <tau, rho> <tau^{-1}, sigma> for PD tau.
double alberti_objective(const DensityMatrix& rho, const DensityMatrix& sigma, const HermMat& tau);

/// Gradient of F(., sigma) at rho: (1/2) rho^{-1} # sigma. Both PD.
HermMat uhlmann_gradient(const DensityMatrix& rho, const DensityMatrix& sigma);

struct Povm {
  std::vector<HermMat> elements;
  /// Throws InvalidState unless every element is PSD and they sum to I within 1e-10.
  void validate() const;
};

struct OptimalMeasurement {
  Povm povm;
  ProbVector p;
  ProbVector q;
};

/// Measurement in the eigenbasis of rho^{-1} # sigma; its classical fidelity
/// equals the Uhlmann fidelity. Both inputs PD.
OptimalMeasurement optimal_povm(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Outcome distribution of a POVM.
ProbVector measure(const Povm& povm, const DensityMatrix& rho);

struct RotationResult {
  UnitaryMatrix u;
  double value;
};

/// U = rho^{-1/2} (sigma # rho) sigma^{-1/2}; value = F(rho, U sigma U^H),
/// which equals the Matsumoto fidelity. Both inputs PD.
RotationResult matsumoto_via_rotation(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Rescales the tiny floating drift of a PSD matrix back to a unit-trace
/// density matrix (clamping |negative eigenvalues| <= kPsdTol). Used for
/// outputs of channels, mixtures and compositions.
DensityMatrix renormalized(const HermMat& h);

}  // namespace qfid
