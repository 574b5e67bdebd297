#pragma once

// Data-parallel drivers. Every driver takes an Exec tag: `parallel` runs the
// independent items under OpenMP, `serial` is the reference loop. Both fill
// results by index, so their output is identical.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "qfid/fidelity.hpp"

namespace qfid {

enum class Exec { serial, parallel };

/// Runs body(i) for i in [0, n). The first exception (lowest index) thrown by
/// any item is rethrown after the loop.
void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body);

// --- qubit sweep -----------------------------------------------------------

enum class FixedState { pure, mixed };  // |0><0| or diag(3/4, 1/4)

struct SweepConfig {
  FixedState fixed = FixedState::pure;
  std::vector<double> theta_grid;   // within [0, pi/2]
  std::vector<double> lambda_grid;  // within [0, 1]

  /// Uniform grids with the given point counts (101 x 101 by default).
  static SweepConfig uniform(FixedState fixed, std::size_t n_theta = 101, std::size_t n_lambda = 101);
  void validate() const;
};

struct SweepRow {
  double theta;
  double lambda;
  double uhlmann;
  double holevo;
  double matsumoto;
};

DensityMatrix sweep_fixed_state(FixedState fixed);
/// (1+lambda)/2 |theta><theta| + (1-lambda)/2 |theta_perp><theta_perp|,
/// |theta> = cos(theta)|0> + sin(theta)|1>.
DensityMatrix sweep_state(double theta, double lambda);
/// One grid point; lambda == 1 takes the exact pure-state paths.
SweepRow sweep_point(FixedState fixed, double theta, double lambda);

/// Rows in theta-major order.
std::vector<SweepRow> sweep_grid(const SweepConfig& cfg, Exec exec);

// --- batches ---------------------------------------------------------------

using StatePair = std::pair<DensityMatrix, DensityMatrix>;
std::vector<FidelityReport> fidelity_batch(const std::vector<StatePair>& pairs, Exec exec);

}  // namespace qfid
