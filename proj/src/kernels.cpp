#include "qfid/kernels.hpp"

#include <cmath>
#include <exception>
#include <numbers>

#include "qfid/errors.hpp"

namespace qfid {

void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

SweepConfig SweepConfig::uniform(FixedState fixed, std::size_t n_theta, std::size_t n_lambda) {
  if (n_theta < 1 || n_lambda < 1) throw InvalidArgument("sweep grids need at least one point");
  SweepConfig cfg;
  cfg.fixed = fixed;
  for (std::size_t k = 0; k < n_theta; ++k)
    cfg.theta_grid.push_back(n_theta == 1 ? 0.0 : (std::numbers::pi / 2) * static_cast<double>(k) / (n_theta - 1));
  for (std::size_t k = 0; k < n_lambda; ++k)
    cfg.lambda_grid.push_back(n_lambda == 1 ? 0.0 : static_cast<double>(k) / (n_lambda - 1));
  return cfg;
}

void SweepConfig::validate() const {
  if (theta_grid.empty() || lambda_grid.empty()) throw InvalidArgument("sweep grids must be nonempty");
  for (double t : theta_grid)
    if (!(t >= 0.0 && t <= std::numbers::pi / 2)) throw InvalidArgument("theta grid must lie in [0, pi/2]");
  for (double l : lambda_grid)
    if (!(l >= 0.0 && l <= 1.0)) throw InvalidArgument("lambda grid must lie in [0, 1]");
}

DensityMatrix sweep_fixed_state(FixedState fixed) {
  if (fixed == FixedState::pure) return DensityMatrix(HermMat::diagonal({1.0, 0.0}));
  return DensityMatrix(HermMat::diagonal({0.75, 0.25}));
}

namespace {

std::vector<cplx> theta_ket(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace

DensityMatrix sweep_state(double theta, double lambda) {
  const std::vector<cplx> k = theta_ket(theta);
  const std::vector<cplx> kp = {-std::sin(theta), std::cos(theta)};
  HermMat s = HermMat::projector(k) * ((1.0 + lambda) / 2) + HermMat::projector(kp) * ((1.0 - lambda) / 2);
  return renormalized(s);
}

SweepRow sweep_point(FixedState fixed, double theta, double lambda) {
  FidelityTriple f;
  if (lambda == 1.0) {
    const std::vector<cplx> k = theta_ket(theta);
    if (fixed == FixedState::pure) {
      const std::vector<cplx> zero = {1.0, 0.0};
      f = pure_state_fidelities(zero, k);
    } else {
      f = pure_mixed_fidelities(sweep_fixed_state(fixed), k);
    }
  } else {
    const DensityMatrix rho = sweep_fixed_state(fixed);
    const DensityMatrix sigma = sweep_state(theta, lambda);
    f = {uhlmann_fidelity(rho, sigma), holevo_fidelity(rho, sigma), matsumoto_fidelity(rho, sigma)};
  }
  return {theta, lambda, f.uhlmann, f.holevo, f.matsumoto};
}

std::vector<SweepRow> sweep_grid(const SweepConfig& cfg, Exec exec) {
  cfg.validate();
  const std::size_t nl = cfg.lambda_grid.size();
  std::vector<SweepRow> rows(cfg.theta_grid.size() * nl);
  for_each_index(rows.size(), exec, [&](std::size_t i) {
    rows[i] = sweep_point(cfg.fixed, cfg.theta_grid[i / nl], cfg.lambda_grid[i % nl]);
  });
  return rows;
}

std::vector<FidelityReport> fidelity_batch(const std::vector<StatePair>& pairs, Exec exec) {
  std::vector<FidelityReport> out(pairs.size());
  for_each_index(pairs.size(), exec, [&](std::size_t i) { out[i] = fidelity_report(pairs[i].first, pairs[i].second); });
  return out;
}

}  // namespace qfid
