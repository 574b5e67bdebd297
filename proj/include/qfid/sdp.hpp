#pragma once

// Primal-dual interior-point solver for the two block-structured fidelity SDPs:
//
//   matsumoto:  max tr(W)      s.t. [[rho, W], [W, sigma]] >= 0,   W Hermitian
//   uhlmann:    max Re tr(X)   s.t. [[rho, X], [X^H, sigma]] >= 0, X complex
//
// and their duals
//
//   min (1/2)<Y, rho> + (1/2)<Z, sigma>  s.t. [[Y, I + A], [I - A, Z]] >= 0,
//
// with A anti-Hermitian (matsumoto) or A = 0 (uhlmann).

#include <cstddef>
#include <string>
#include <vector>

#include "qfid/linalg.hpp"

namespace qfid {

enum class SdpKind { matsumoto, uhlmann };

const char* to_string(SdpKind kind);

struct FidelitySdp {
  SdpKind kind;
  DensityMatrix rho;
  DensityMatrix sigma;
};

struct SdpOptions {
  double gap_tol = 1e-8;
  int max_iter = 200;
  /// eps used for (rho + eps I)/(1 + n eps) when an input is singular.
  double regularize = 1e-7;
};

struct IterationRecord {
  int iteration;
  double mu;
  double gap;
};

struct SdpSolution {
  SdpKind kind = SdpKind::matsumoto;
  CMatrix primal;  // W (Hermitian) or X
  HermMat dual_Y;
  HermMat dual_Z;
  CMatrix dual_A;  // anti-Hermitian; zero for uhlmann
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  double regularization = 0.0;  // eps applied to the inputs, 0 when none
  std::vector<IterationRecord> trace_log;
};

/// Throws ConvergenceError (message carries the last log entries) when the
/// iteration cap is hit, InvalidState when the start is infeasible.
SdpSolution solve(const FidelitySdp& problem, const SdpOptions& opts = {});

struct VerificationReport {
  double primal_residual = 0.0;      // max(0, -lambda_min(primal block))
  double dual_residual = 0.0;        // max(0, -lambda_min(dual block))
  double dual_constraint_residual = 0.0;  // max |(X + X^H)/2 - I|, and A anti-Hermitian
  double primal_value = 0.0;         // recomputed
  double dual_value = 0.0;           // recomputed
  double weak_duality_margin = 0.0;  // dual_value - primal_value
  bool primal_feasible = false;
  bool dual_feasible = false;
  bool weak_duality = false;
  bool ok() const noexcept { return primal_feasible && dual_feasible && weak_duality; }
};

/// Independent re-check of a solution with full eigenvalue tests (tolerance 1e-8).
/// Uses the regularized inputs when the solution records a regularization.
VerificationReport verify_solution(const FidelitySdp& problem, const SdpSolution& sol);

/// Checks a dual candidate (Y, Z, A) alone against the dual block and
/// constraint; primal fields of the report are left at zero.
VerificationReport verify_dual(const FidelitySdp& problem, const HermMat& y, const HermMat& z, const CMatrix& a);

/// The problem actually solved: inputs regularized by eps when nonzero.
FidelitySdp regularized_problem(const FidelitySdp& problem, double eps);

}  // namespace qfid
