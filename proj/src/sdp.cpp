#include "qfid/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qfid/errors.hpp"

namespace qfid {

const char* to_string(SdpKind kind) { return kind == SdpKind::matsumoto ? "matsumoto" : "uhlmann"; }

namespace {

constexpr double kVerifyTol = 1e-8;
constexpr double kCentering = 0.1;
constexpr double kStepFraction = 0.95;
constexpr double kDamping = 1e-12;

struct Entry {
  std::size_t row;
  std::size_t col;
  cplx value;
};

// Sparse 2n x 2n constraint matrix F_i together with its n x n block E_i.
struct Basis {
  std::vector<std::vector<Entry>> f;  // entries of F_i
  std::vector<std::vector<Entry>> e;  // entries of E_i
  std::vector<double> c;              // objective coefficients
};

// Orthonormal real basis of the Hermitian (matsumoto) or all complex (uhlmann)
// n x n matrices, lifted to the off-diagonal blocks.
Basis make_basis(SdpKind kind, std::size_t n) {
  Basis b;
  auto push = [&](std::vector<Entry> e) {
    std::vector<Entry> f;
    double c = 0.0;
    for (const Entry& t : e) {
      f.push_back({t.row, n + t.col, t.value});
      f.push_back({n + t.col, t.row, std::conj(t.value)});
      if (t.row == t.col) c += t.value.real();
    }
    b.f.push_back(std::move(f));
    b.e.push_back(std::move(e));
    b.c.push_back(c);
  };
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i1(0.0, 1.0);
  if (kind == SdpKind::matsumoto) {
    for (std::size_t k = 0; k < n; ++k) push({{k, k, 1.0}});
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        push({{j, k, r}, {k, j, r}});
        push({{j, k, i1 * r}, {k, j, -i1 * r}});
      }
  } else {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        push({{j, k, 1.0}});
        push({{j, k, i1}});
      }
  }
  return b;
}

// <F, M> = Re tr(F^H M) for sparse F.
double inner_sparse(const std::vector<Entry>& f, const CMatrix& m) {
  double s = 0.0;
  for (const Entry& t : f) s += (std::conj(t.value) * m(t.row, t.col)).real();
  return s;
}

CMatrix assemble_block(const std::vector<double>& x, const Basis& b, std::size_t n) {
  CMatrix w(n, n);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (const Entry& t : b.e[i]) w(t.row, t.col) += x[i] * t.value;
  return w;
}

// S(x) = F0 + sum_i x_i F_i, rebuilt from x each iteration so it never drifts.
CMatrix primal_block_of(const std::vector<double>& x, const Basis& b, const HermMat& f0) {
  CMatrix s = f0.mat();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (const Entry& t : b.f[i]) s(t.row, t.col) += x[i] * t.value;
  return s;
}

HermMat block_diag(const HermMat& a, const HermMat& b) { return compose(a, b, ComposeMode::dirsum); }

// Largest alpha in (0, 1] with P + alpha dP > 0, times the boundary fraction.
double step_length(const CMatrix& chol, const HermMat& dp) {
  const CMatrix li_dp = solve_lower(chol, dp.mat());
  const CMatrix scaled = solve_lower(chol, li_dp.adjoint());  // L^{-1} dP L^{-H}
  const double lmin = eigenvalues(HermMat(scaled)).front();
  if (lmin >= 0.0) return 1.0;
  return std::min(1.0, kStepFraction * (-1.0 / lmin));
}

CMatrix inverse_from_cholesky(const CMatrix& chol) {
  const std::size_t n = chol.rows();
  const CMatrix li = solve_lower(chol, CMatrix::identity(n));
  return li.adjoint() * li;
}

// Real dense Cholesky solve of M dx = r (M symmetric positive definite).
// Returns false if a pivot is not positive.
bool try_solve_spd(std::vector<double> m, std::vector<double>& r, std::size_t k) {
  for (std::size_t j = 0; j < k; ++j) {
    double d = m[j * k + j];
    for (std::size_t p = 0; p < j; ++p) d -= m[j * k + p] * m[j * k + p];
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    m[j * k + j] = ljj;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = m[i * k + j];
      for (std::size_t p = 0; p < j; ++p) s -= m[i * k + p] * m[j * k + p];
      m[i * k + j] = s / ljj;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    double s = r[i];
    for (std::size_t p = 0; p < i; ++p) s -= m[i * k + p] * r[p];
    r[i] = s / m[i * k + i];
  }
  for (std::size_t i = k; i-- > 0;) {
    double s = r[i];
    for (std::size_t p = i + 1; p < k; ++p) s -= m[p * k + i] * r[p];
    r[i] = s / m[i * k + i];
  }
  return true;
}

// Tikhonov damping only when the undamped factorisation breaks down: near the
// optimum the Schur diagonal grows like 1/mu and a fixed relative shift would
// swamp the step.
std::vector<double> solve_spd(const std::vector<double>& m, const std::vector<double>& r, std::size_t k) {
  std::vector<double> x = r;
  if (try_solve_spd(m, x, k)) return x;
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(m[i * k + i]));
  std::vector<double> damped = m;
  for (std::size_t i = 0; i < k; ++i) damped[i * k + i] += kDamping * std::max(1.0, scale);
  x = r;
  if (!try_solve_spd(std::move(damped), x, k)) throw ConvergenceError("SDP Newton system lost positive definiteness", 0.0);
  return x;
}

std::string log_tail(const std::vector<IterationRecord>& log) {
  std::ostringstream os;
  os << "last iterations:";
  for (std::size_t k = log.size() > 5 ? log.size() - 5 : 0; k < log.size(); ++k)
    os << " [" << log[k].iteration << ": mu=" << log[k].mu << " gap=" << log[k].gap << "]";
  return os.str();
}

}  // namespace

FidelitySdp regularized_problem(const FidelitySdp& problem, double eps) {
  if (eps == 0.0) return problem;
  return {problem.kind, problem.rho.regularized(eps), problem.sigma.regularized(eps)};
}

SdpSolution solve(const FidelitySdp& problem, const SdpOptions& opts) {
  const std::size_t n = problem.rho.dim();
  if (problem.sigma.dim() != n) throw InvalidArgument("sdp: dimension mismatch");
  if (!(opts.gap_tol > 0.0)) throw InvalidArgument("sdp: gap tolerance must be positive");
  if (opts.max_iter < 1) throw InvalidArgument("sdp: iteration cap must be >= 1");

  SdpSolution sol;
  sol.kind = problem.kind;
  const bool singular = !is_positive_definite(problem.rho) || !is_positive_definite(problem.sigma);
  sol.regularization = singular ? opts.regularize : 0.0;
  if (singular && !(opts.regularize > 0.0))
    throw InvalidState("sdp: singular input needs a positive regularization");
  const FidelitySdp prob = regularized_problem(problem, sol.regularization);

  const Basis basis = make_basis(problem.kind, n);
  const std::size_t m = basis.f.size();
  const std::size_t nn = 2 * n;
  const HermMat f0 = block_diag(prob.rho, prob.sigma);

  std::vector<double> x(m, 0.0);
  HermMat s = f0;
  CMatrix chol_s;
  try {
    chol_s = cholesky(s);
  } catch (const SingularInput&) {
    throw InvalidState(std::string("sdp: infeasible start, block ") +
                       (is_positive_definite(prob.rho) ? "sigma" : "rho") + " is not positive definite");
  }
  // Dual start from (Y, Z, A) = (2I, 2I, 0).
  CMatrix z0(nn, nn);
  for (std::size_t i = 0; i < n; ++i) {
    z0(i, i) = 1.0;
    z0(n + i, n + i) = 1.0;
    z0(i, n + i) = -0.5;
    z0(n + i, i) = -0.5;
  }
  HermMat z(z0);

  int it = 0;
  for (;; ++it) {
    const double gap = hs_inner(s.mat(), z.mat());
    const double mu = gap / static_cast<double>(nn);
    double rd_norm = 0.0;
    std::vector<double> rd(m);
    for (std::size_t i = 0; i < m; ++i) {
      rd[i] = -basis.c[i] - inner_sparse(basis.f[i], z.mat());
      rd_norm = std::max(rd_norm, std::abs(rd[i]));
    }
    sol.trace_log.push_back({it, mu, gap});
    if (gap <= opts.gap_tol && rd_norm <= 1e-10) break;
    if (it >= opts.max_iter)
      throw ConvergenceError("sdp: iteration cap reached; " + log_tail(sol.trace_log), gap);

    const CMatrix s_inv = inverse_from_cholesky(chol_s);
    const CMatrix& zm = z.mat();

    // Schur complement M_ij = Re tr(F_i S^{-1} F_j Z).
    std::vector<double> schur(m * m);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i <= j; ++i) {
        cplx acc = 0.0;
        for (const Entry& fj : basis.f[j])
          for (const Entry& fi : basis.f[i]) acc += fi.value * fj.value * s_inv(fi.col, fj.row) * zm(fj.col, fi.row);
        schur[i * m + j] = schur[j * m + i] = acc.real();
      }
    const double target = kCentering * mu;
    CMatrix rc = target * s_inv - zm;
    std::vector<double> rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = inner_sparse(basis.f[i], rc) - rd[i];
    const std::vector<double> dx = solve_spd(schur, rhs, m);

    CMatrix ds_m(nn, nn);
    for (std::size_t i = 0; i < m; ++i)
      for (const Entry& t : basis.f[i]) ds_m(t.row, t.col) += dx[i] * t.value;
    const HermMat ds(ds_m);
    const CMatrix corr = s_inv * ds.mat() * zm;
    CMatrix dz_m = rc - 0.5 * (corr + corr.adjoint());
    // The Schur solve degrades near the boundary; the F_i are mutually
    // orthogonal, so restore <F_i, dZ> = rd_i by projection.
    for (std::size_t i = 0; i < m; ++i) {
      double nrm2 = 0.0;
      for (const Entry& t : basis.f[i]) nrm2 += std::norm(t.value);
      const double fix = (rd[i] - inner_sparse(basis.f[i], dz_m)) / nrm2;
      for (const Entry& t : basis.f[i]) dz_m(t.row, t.col) += fix * t.value;
    }
    const HermMat dz(dz_m);

    const double ap = step_length(chol_s, ds);
    double ad = 0.0;
    try {
      ad = step_length(cholesky(z), dz);
    } catch (const SingularInput& e) {
      throw ConvergenceError("sdp: dual iterate left the cone; " + log_tail(sol.trace_log), e.min_eigenvalue());
    }
    for (std::size_t i = 0; i < m; ++i) x[i] += ap * dx[i];
    s = HermMat(primal_block_of(x, basis, f0));
    z = z + ad * dz;
    try {
      chol_s = cholesky(s);
    } catch (const SingularInput& e) {
      throw ConvergenceError("sdp: primal iterate left the cone; " + log_tail(sol.trace_log), e.min_eigenvalue());
    }
  }

  sol.iterations = it;
  sol.primal = assemble_block(x, basis, n);
  double pv = 0.0;
  for (std::size_t i = 0; i < m; ++i) pv += basis.c[i] * x[i];
  sol.primal_value = pv;

  CMatrix z11(n, n), z22(n, n), xdual(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      z11(i, j) = 2.0 * z(i, j);
      z22(i, j) = 2.0 * z(n + i, n + j);
      xdual(i, j) = -2.0 * z(i, n + j);
    }
  sol.dual_Y = HermMat(z11);
  sol.dual_Z = HermMat(z22);
  if (problem.kind == SdpKind::matsumoto) {
    sol.dual_A = 0.5 * (xdual - xdual.adjoint());
  } else {
    sol.dual_A = CMatrix(n, n);
  }
  sol.dual_value = 0.5 * hs_inner(sol.dual_Y.mat(), prob.rho.mat()) + 0.5 * hs_inner(sol.dual_Z.mat(), prob.sigma.mat());
  sol.gap = sol.dual_value - sol.primal_value;
  return sol;
}

VerificationReport verify_dual(const FidelitySdp& problem, const HermMat& y, const HermMat& z, const CMatrix& a) {
  const std::size_t n = problem.rho.dim();
  VerificationReport rep;
  const CMatrix x = CMatrix::identity(n) + a;
  const double lmin = eigenvalues(block_matrix(y, x, z)).front();
  rep.dual_residual = std::max(0.0, -lmin);
  // A must be anti-Hermitian (and zero for the Uhlmann dual).
  double cres = frobenius(a + a.adjoint());
  if (problem.kind == SdpKind::uhlmann) cres = std::max(cres, frobenius(a));
  rep.dual_constraint_residual = cres;
  rep.dual_feasible = rep.dual_residual <= kVerifyTol && cres <= 1e-10;
  rep.dual_value = 0.5 * hs_inner(y.mat(), problem.rho.mat()) + 0.5 * hs_inner(z.mat(), problem.sigma.mat());
  rep.weak_duality_margin = rep.dual_value;
  rep.weak_duality = true;
  return rep;
}

VerificationReport verify_solution(const FidelitySdp& problem, const SdpSolution& sol) {
  const FidelitySdp prob = regularized_problem(problem, sol.regularization);
  VerificationReport rep = verify_dual(prob, sol.dual_Y, sol.dual_Z, sol.dual_A);
  const std::size_t n = prob.rho.dim();
  if (sol.primal.rows() != n || sol.primal.cols() != n) throw InvalidArgument("verify_solution: primal has wrong shape");
  double herm_res = 0.0;
  if (prob.kind == SdpKind::matsumoto) herm_res = frobenius(sol.primal - sol.primal.adjoint());
  const double lmin = eigenvalues(block_matrix(prob.rho, sol.primal, prob.sigma)).front();
  rep.primal_residual = std::max(0.0, -lmin) + herm_res;
  rep.primal_feasible = rep.primal_residual <= kVerifyTol;
  rep.primal_value = sol.primal.trace().real();
  rep.weak_duality_margin = rep.dual_value - rep.primal_value;
  rep.weak_duality = rep.weak_duality_margin >= -kVerifyTol;
  return rep;
}

}  // namespace qfid
