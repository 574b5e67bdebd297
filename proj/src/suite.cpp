#include "qfid/suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "qfid/ensembles.hpp"
#include "qfid/errors.hpp"
#include "qfid/fidelity.hpp"
#include "qfid/geomean.hpp"
#include "qfid/geometry.hpp"
#include "qfid/io.hpp"
#include "qfid/sdp.hpp"

namespace qfid {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

using FidFn = double (*)(const DensityMatrix&, const DensityMatrix&);
constexpr std::array<FidFn, 3> kFid = {uhlmann_fidelity, holevo_fidelity, matsumoto_fidelity};
constexpr std::array<const char*, 3> kFidName = {"uhlmann", "holevo", "matsumoto"};

struct CellSpec {
  std::string measure;
  Expect expect = Expect::holds;
  double tol = 0.0;
  std::string note;
};

struct CellOutcome {
  double value = kNaN;  // holds: violation; counterexample: measured value
  bool witness = false;
};

struct Trial {
  std::size_t dim = 0;
  std::vector<CellOutcome> cells;
  std::vector<std::pair<std::string, CMatrix>> inputs;
  std::string error;

  void record(const std::string& name, const CMatrix& m) { inputs.emplace_back(name, m); }
  void record(const std::string& name, const HermMat& m) { inputs.emplace_back(name, m.mat()); }
};

using TrialFn = std::function<void(Rng&, std::size_t dim, int trial, Trial&)>;

struct RowSpec {
  RowSpec(std::string n, std::string g, std::vector<CellSpec> c, TrialFn f)
      : name(std::move(n)), group(std::move(g)), cells(std::move(c)), fn(std::move(f)) {}

  std::string name;
  std::string group;
  std::vector<CellSpec> cells;
  TrialFn fn;
  std::size_t min_dim = 2;
  std::size_t max_dim = 6;
  bool sdp = false;
  // When nonempty, the cells are split into several report rows (name, cell count)
  // that share trials.
  std::vector<std::pair<std::string, std::size_t>> parts;
};

// --- random helpers --------------------------------------------------------

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

double uniform_in(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

// Random state with random rank: full rank half the time.
DensityMatrix rand_state(Rng& rng, std::size_t dim) {
  const std::size_t rank = rng.uniform() < 0.5 ? dim : pick(rng, 1, dim);
  return random_density(dim, rank, rng);
}

DensityMatrix state_from_factor(const CMatrix& g) {
  HermMat w(g * g.adjoint());
  return renormalized(w * (1.0 / w.trace()));
}

// Columns [c0, c1) of m.
CMatrix columns(const CMatrix& m, std::size_t c0, std::size_t c1) {
  CMatrix r(m.rows(), c1 - c0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = c0; j < c1; ++j) r(i, j - c0) = m(i, j);
  return r;
}

CMatrix hstack(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

double cplx_overlap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::abs(s);
}

// Unit vector orthogonal to psi.
std::vector<cplx> orthogonal_to(const std::vector<cplx>& psi, Rng& rng) {
  std::vector<cplx> v = random_pure_state(psi.size(), rng);
  for (int pass = 0; pass < 2; ++pass) {
    cplx d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) d += std::conj(psi[i]) * v[i];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * psi[i];
    double n = 0.0;
    for (const cplx& z : v) n += std::norm(z);
    for (cplx& z : v) z /= std::sqrt(n);
  }
  return v;
}

double min_eig(const HermMat& h) { return eigenvalues(h).front(); }

double rel_diff(const CMatrix& a, const CMatrix& b) { return frobenius(a - b) / std::max(1.0, frobenius(b)); }

std::vector<CellSpec> fidelity_cells(double tol, std::array<Expect, 3> expect = {Expect::holds, Expect::holds, Expect::holds}) {
  std::vector<CellSpec> c;
  for (int k = 0; k < 3; ++k) c.push_back({kFidName[k], expect[k], tol, ""});
  return c;
}

std::vector<CellSpec> single_cell(const std::string& measure, double tol) { return {{measure, Expect::holds, tol, ""}}; }

// --- summary-table rows ----------------------------------------------------

std::vector<RowSpec> table_rows(const SuiteOptions& o) {
  const double tol = o.tol;
  std::vector<RowSpec> rows;

  rows.push_back({"Symmetry", "table", fidelity_cells(tol), [](Rng& rng, std::size_t d, int, Trial& t) {
                    const DensityMatrix rho = rand_state(rng, d), sigma = rand_state(rng, d);
                    t.record("rho", rho.herm());
                    t.record("sigma", sigma.herm());
                    for (int k = 0; k < 3; ++k) t.cells[k].value = std::abs(kFid[k](rho, sigma) - kFid[k](sigma, rho));
                  }});

  rows.push_back({"Bounds", "table", fidelity_cells(tol), [](Rng& rng, std::size_t d, int, Trial& t) {
                    const DensityMatrix rho = rand_state(rng, d), sigma = rand_state(rng, d);
                    t.record("rho", rho.herm());
                    t.record("sigma", sigma.herm());
                    for (int k = 0; k < 3; ++k) {
                      const double f = kFid[k](rho, sigma);
                      t.cells[k].value = std::max({0.0, -f, f - 1.0});
                    }
                  }});

  {
    auto cells = fidelity_cells(tol, {Expect::holds, Expect::holds, Expect::counterexample});
    cells[2].tol = 1e-12;
    cells[2].note = "non-orthogonal distinct pure states with value <= 1e-12";
    rows.push_back({"Orthogonality", "table", cells, [](Rng& rng, std::size_t d, int, Trial& t) {
                      // Orthogonal mixed pair on complementary spans of a Haar basis.
                      const CMatrix u = random_unitary(d, rng).mat();
                      const std::size_t k = pick(rng, 1, d - 1);
                      const DensityMatrix rho = state_from_factor(columns(u, 0, k) * random_ginibre(k, k, rng));
                      const DensityMatrix sigma = state_from_factor(columns(u, k, d) * random_ginibre(d - k, d - k, rng));
                      // Non-orthogonal distinct pure states.
                      const std::vector<cplx> psi = random_pure_state(d, rng), phi = random_pure_state(d, rng);
                      const DensityMatrix p1 = DensityMatrix::pure(psi), p2 = DensityMatrix::pure(phi);
                      t.record("rho_orthogonal", rho.herm());
                      t.record("sigma_orthogonal", sigma.herm());
                      t.record("psi", p1.herm());
                      t.record("phi", p2.herm());
                      for (int m = 0; m < 2; ++m) {
                        const double f_orth = kFid[m](rho, sigma);
                        const double f_non = kFid[m](p1, p2);
                        t.cells[m].value = std::max(f_orth, f_non <= 1e-12 ? 1.0 : 0.0);
                      }
                      const double fgm = matsumoto_fidelity(p1, p2);
                      t.cells[2].value = fgm;
                      t.cells[2].witness = fgm <= 1e-12 && cplx_overlap(psi, phi) >= 1e-6;
                    }});
  }

  {
    auto cells = fidelity_cells(tol, {Expect::counterexample, Expect::counterexample, Expect::holds});
    cells[0].note = cells[1].note = "trivially intersecting, non-orthogonal images with value > 1e-6";
    RowSpec r{"Distinct image", "table", cells, [](Rng& rng, std::size_t d, int trial, Trial& t) {
                const std::size_t a = pick(rng, 1, d - 1), b = pick(rng, 1, d - 1);
                const std::size_t kmin = a + b > d ? a + b - d : 0;
                std::size_t k = pick(rng, kmin, std::min(a, b));
                if (trial % 2 == 0) k = kmin;
                const DensityMatrix rho = state_from_factor(random_ginibre(d, a, rng));
                const CMatrix qa = image_basis(rho);
                CMatrix shared = qa * random_ginibre(a, k, rng);
                const CMatrix gs = hstack(shared, random_ginibre(d, b - k, rng)) * random_ginibre(b, b, rng);
                const DensityMatrix sigma = state_from_factor(gs);
                t.record("rho", rho.herm());
                t.record("sigma", sigma.herm());
                const bool trivial = image_intersection_trivial(rho, sigma);
                const double fgm = matsumoto_fidelity(rho, sigma);
                if (trivial != (k == 0)) {
                  t.cells[2].value = 1.0;
                } else {
                  t.cells[2].value = k == 0 ? fgm : (fgm <= 1e-12 ? 1.0 : 0.0);
                }
                for (int m = 0; m < 2; ++m) {
                  const double f = kFid[m](rho, sigma);
                  t.cells[m].value = f;
                  t.cells[m].witness = trivial && f > 1e-6;
                }
              }};
    r.min_dim = r.max_dim = 4;
    rows.push_back(std::move(r));
  }

  rows.push_back({"Unity condition", "table", fidelity_cells(tol), [](Rng& rng, std::size_t d, int, Trial& t) {
                    const DensityMatrix rho = rand_state(rng, d), sigma = rand_state(rng, d);
                    t.record("rho", rho.herm());
                    t.record("sigma", sigma.herm());
                    const bool distinct = frobenius((rho.herm() - sigma.herm()).mat()) > 1e-3;
                    for (int k = 0; k < 3; ++k) {
                      double v = std::abs(kFid[k](rho, rho) - 1.0);
                      if (distinct) v += std::max(0.0, kFid[k](rho, sigma) - (1.0 - 1e-9));
                      t.cells[k].value = v;
                    }
                  }});

  rows.push_back({"Additivity", "table", fidelity_cells(tol), [](Rng& rng, std::size_t d, int, Trial& t) {
                    const std::size_t d1 = pick(rng, 1, d - 1), d2 = d - d1;
                    const std::vector<double> lam = random_simplex(2, rng);
                    const DensityMatrix r1 = rand_state(rng, d1), s1 = rand_state(rng, d1);
                    const DensityMatrix r2 = rand_state(rng, d2), s2 = rand_state(rng, d2);
                    const DensityMatrix rho = renormalized(compose(r1.herm() * lam[0], r2.herm() * lam[1], ComposeMode::dirsum));
                    const DensityMatrix sigma = renormalized(compose(s1.herm() * lam[0], s2.herm() * lam[1], ComposeMode::dirsum));
                    t.record("rho", rho.herm());
                    t.record("sigma", sigma.herm());
                    for (int k = 0; k < 3; ++k)
                      t.cells[k].value = std::abs(kFid[k](rho, sigma) - lam[0] * kFid[k](r1, s1) - lam[1] * kFid[k](r2, s2));
                  }});

  rows.push_back({"Multiplicativity", "table", fidelity_cells(tol), [](Rng& rng, std::size_t, int, Trial& t) {
                    const std::size_t d1 = pick(rng, 2, 3), d2 = pick(rng, 2, 3);
                    t.dim = d1 * d2;
                    const DensityMatrix r1 = rand_state(rng, d1), s1 = rand_state(rng, d1);
                    const DensityMatrix r2 = rand_state(rng, d2), s2 = rand_state(rng, d2);
                    const DensityMatrix rho = renormalized(compose(r1, r2, ComposeMode::kron));
                    const DensityMatrix sigma = renormalized(compose(s1, s2, ComposeMode::kron));
                    t.record("rho1", r1.herm());
                    t.record("sigma1", s1.herm());
                    t.record("rho2", r2.herm());
                    t.record("sigma2", s2.herm());
                    for (int k = 0; k < 3; ++k)
                      t.cells[k].value = std::abs(kFid[k](rho, sigma) - kFid[k](r1, s1) * kFid[k](r2, s2));
                  }});

  rows.push_back({"Unitary invariance", "table", fidelity_cells(tol), [](Rng& rng, std::size_t d, int, Trial& t) {
                    const DensityMatrix rho = rand_state(rng, d), sigma = rand_state(rng, d);
                    const CMatrix u = random_unitary(d, rng).mat();
                    const DensityMatrix ru = renormalized(rho.herm().congruence(u));
                    const DensityMatrix su = renormalized(sigma.herm().congruence(u));
                    t.record("rho", rho.herm());
                    t.record("sigma", sigma.herm());
                    t.record("U", u);
                    for (int k = 0; k < 3; ++k) t.cells[k].value = std::abs(kFid[k](ru, su) - kFid[k](rho, sigma));
                  }});

  {
    auto cells = fidelity_cells(tol);
    cells[0].note = cells[2].note = "CPTP and transpose-composed PTP maps";
    cells[1].note = "CPTP maps only";
    rows.push_back({"Monotonicity", "table", cells, [](Rng& rng, std::size_t d, int, Trial& t) {
                      const DensityMatrix rho = rand_state(rng, d), sigma = rand_state(rng, d);
                      const KrausChannel cp = random_channel(d, pick(rng, 1, 3), false, rng);
                      const KrausChannel ptp = random_channel(d, pick(rng, 1, 3), true, rng);
                      t.record("rho", rho.herm());
                      t.record("sigma", sigma.herm());
                      for (std::size_t i = 0; i < cp.kraus_ops.size(); ++i) t.record("cp_K" + std::to_string(i), cp.kraus_ops[i]);
                      for (std::size_t i = 0; i < ptp.kraus_ops.size(); ++i)
                        t.record("ptp_K" + std::to_string(i), ptp.kraus_ops[i]);
                      const DensityMatrix rc = cp.apply(rho), sc = cp.apply(sigma);
                      const DensityMatrix rp = ptp.apply(rho), sp = ptp.apply(sigma);
                      for (int k = 0; k < 3; ++k) {
                        const double f = kFid[k](rho, sigma);
                        double v = std::max(0.0, f - kFid[k](rc, sc));
                        if (k != 1) v = std::max(v, f - kFid[k](rp, sp));
                        t.cells[k].value = v;
                      }
                    }});
  }

  rows.push_back({"Joint concavity", "table", fidelity_cells(tol), [](Rng& rng, std::size_t d, int, Trial& t) {
                    const std::size_t n = pick(rng, 2, 3);
                    const std::vector<double> p = random_simplex(n, rng);
                    std::vector<DensityMatrix> rs, ss;
                    HermMat rmix = HermMat::zeros(d), smix = HermMat::zeros(d);
                    for (std::size_t i = 0; i < n; ++i) {
                      rs.push_back(rand_state(rng, d));
                      ss.push_back(rand_state(rng, d));
                      rmix += rs.back().herm() * p[i];
                      smix += ss.back().herm() * p[i];
                      t.record("rho" + std::to_string(i), rs.back().herm());
                      t.record("sigma" + std::to_string(i), ss.back().herm());
                    }
                    const DensityMatrix rho = renormalized(rmix), sigma = renormalized(smix);
                    for (int k = 0; k < 3; ++k) {
                      double avg = 0.0;
                      for (std::size_t i = 0; i < n; ++i) avg += p[i] * kFid[k](rs[i], ss[i]);
                      t.cells[k].value = std::max(0.0, avg - kFid[k](rho, sigma));
                    }
                  }});

  rows.push_back({"First F-vdG", "table", fidelity_cells(tol), [](Rng& rng, std::size_t d, int, Trial& t) {
                    const DensityMatrix rho = rand_state(rng, d), sigma = rand_state(rng, d);
                    t.record("rho", rho.herm());
                    t.record("sigma", sigma.herm());
                    const double delta = trace_distance(rho, sigma);
                    for (int k = 0; k < 3; ++k) {
                      const double f = kFid[k](rho, sigma);
                      t.cells[k].value = std::max(0.0, f * f + delta * delta - 1.0);
                    }
                  }});

  {
    auto cells = fidelity_cells(tol, {Expect::holds, Expect::holds, Expect::counterexample});
    cells[2].note = "pure states with overlap cos(0.05): value + distance = sin(0.05) < 1";
    rows.push_back({"Second F-vdG", "table", cells, [](Rng& rng, std::size_t d, int, Trial& t) {
                      const DensityMatrix rho = rand_state(rng, d), sigma = rand_state(rng, d);
                      const double delta = trace_distance(rho, sigma);
                      for (int k = 0; k < 2; ++k) t.cells[k].value = std::max(0.0, 1.0 - kFid[k](rho, sigma) - delta);
                      const std::vector<cplx> psi = random_pure_state(d, rng);
                      const std::vector<cplx> perp = orthogonal_to(psi, rng);
                      std::vector<cplx> phi(d);
                      for (std::size_t i = 0; i < d; ++i) phi[i] = std::cos(0.05) * psi[i] + std::sin(0.05) * perp[i];
                      const DensityMatrix p1 = DensityMatrix::pure(psi), p2 = DensityMatrix::pure(phi);
                      t.record("rho", rho.herm());
                      t.record("sigma", sigma.herm());
                      t.record("psi", p1.herm());
                      t.record("phi", p2.herm());
                      const double s = matsumoto_fidelity(p1, p2) + trace_distance(p1, p2);
                      t.cells[2].value = s;
                      t.cells[2].witness = s < 1.0 && std::abs(s - std::sin(0.05)) <= 1e-8;
                    }});
  }

  rows.push_back({"Classical limit", "table", fidelity_cells(tol), [](Rng& rng, std::size_t d, int, Trial& t) {
                    const CMatrix u = random_unitary(d, rng).mat();
                    const std::vector<double> p = random_simplex(d, rng), q = random_simplex(d, rng);
                    const DensityMatrix rho = renormalized(HermMat::diagonal(p).congruence(u));
                    const DensityMatrix sigma = renormalized(HermMat::diagonal(q).congruence(u));
                    t.record("rho", rho.herm());
                    t.record("sigma", sigma.herm());
                    const double fcl = classical_fidelity(ProbVector(p), ProbVector(q));
                    for (int k = 0; k < 3; ++k) t.cells[k].value = std::abs(kFid[k](rho, sigma) - fcl);
                  }});

  rows.push_back({"Pure states", "table", fidelity_cells(tol), [](Rng& rng, std::size_t d, int trial, Trial& t) {
                    const std::vector<cplx> psi = random_pure_state(d, rng);
                    std::vector<cplx> phi = random_pure_state(d, rng);
                    if (trial % 10 == 0) {
                      const cplx ph = std::polar(1.0, uniform_in(rng, 0.0, 2 * std::numbers::pi));
                      for (std::size_t i = 0; i < d; ++i) phi[i] = ph * psi[i];
                    }
                    const DensityMatrix p1 = DensityMatrix::pure(psi), p2 = DensityMatrix::pure(phi);
                    t.record("psi", p1.herm());
                    t.record("phi", p2.herm());
                    const FidelityTriple e = pure_state_fidelities(psi, phi);
                    const std::array<double, 3> expected = {e.uhlmann, e.holevo, e.matsumoto};
                    for (int k = 0; k < 3; ++k) t.cells[k].value = std::abs(kFid[k](p1, p2) - expected[k]);
                  }});

  for (auto& r : rows)
    if (r.name != "Distinct image") {
      r.min_dim = o.min_dim;
      r.max_dim = o.max_dim;
    }
  return rows;
}

// --- geometric mean properties ---------------------------------------------

std::vector<RowSpec> geomean_rows(const SuiteOptions& o) {
  const double tol = o.tol;
  std::vector<RowSpec> rows;
  auto pair_row = [&](const std::string& name, std::function<double(const HermMat&, const HermMat&, Rng&, Trial&)> f) {
    rows.push_back({name, "geomean", single_cell("value", tol), [f](Rng& rng, std::size_t d, int, Trial& t) {
                      const HermMat a = random_pd(d, rng), b = random_pd(d, rng);
                      t.record("A", a);
                      t.record("B", b);
                      t.cells[0].value = f(a, b, rng, t);
                    }});
  };

  pair_row("GM symmetry", [](const HermMat& a, const HermMat& b, Rng&, Trial&) {
    return rel_diff(geometric_mean(a, b).mat(), geometric_mean(b, a).mat());
  });
  pair_row("GM positive definite output", [](const HermMat& a, const HermMat& b, Rng&, Trial&) {
    const double l = min_eig(geometric_mean(a, b));
    return l > 0.0 ? 0.0 : 1.0 - l;
  });
  rows.push_back({"GM commuting inputs", "geomean", single_cell("value", tol), [](Rng& rng, std::size_t d, int, Trial& t) {
                    const CMatrix u = random_unitary(d, rng).mat();
                    std::vector<double> x(d), y(d);
                    for (auto& v : x) v = 0.1 + rng.exponential();
                    for (auto& v : y) v = 0.1 + rng.exponential();
                    const HermMat a = HermMat::diagonal(x).congruence(u), b = HermMat::diagonal(y).congruence(u);
                    t.record("A", a);
                    t.record("B", b);
                    t.cells[0].value = rel_diff(geometric_mean(a, b).mat(), sqrtm(a).mat() * sqrtm(b).mat());
                  }});
  pair_row("GM congruence", [](const HermMat& a, const HermMat& b, Rng& rng, Trial& t) {
    const CMatrix x = random_ginibre(a.dim(), a.dim(), rng);
    t.record("X", x);
    return rel_diff(geometric_mean(a, b).congruence(x).mat(), geometric_mean(a.congruence(x), b.congruence(x)).mat());
  });
  pair_row("GM inverses", [](const HermMat& a, const HermMat& b, Rng&, Trial&) {
    return rel_diff(invm(geometric_mean(a, b)).mat(), geometric_mean(invm(a), invm(b)).mat());
  });
  pair_row("GM monotonicity", [](const HermMat& b, const HermMat& d, Rng& rng, Trial& t) {
    const std::size_t n = b.dim();
    const CMatrix g1 = random_ginibre(n, pick(rng, 1, n), rng), g2 = random_ginibre(n, pick(rng, 1, n), rng);
    const HermMat a = b + HermMat(g1 * g1.adjoint()), c = d + HermMat(g2 * g2.adjoint());
    t.record("A", a);
    t.record("C", c);
    return std::max(0.0, -min_eig(geometric_mean(a, c) - geometric_mean(b, d)));
  });
  pair_row("GM arithmetic-geometric mean inequality", [](const HermMat& a, const HermMat& b, Rng&, Trial&) {
    return std::max(0.0, -min_eig((a + b) * 0.5 - geometric_mean(a, b)));
  });
  rows.push_back({"GM tensor distributivity", "geomean", single_cell("value", tol), [](Rng& rng, std::size_t, int, Trial& t) {
                    const std::size_t d1 = pick(rng, 2, 3), d2 = pick(rng, 2, 3);
                    t.dim = d1 * d2;
                    const HermMat a = random_pd(d1, rng), c = random_pd(d1, rng);
                    const HermMat b = random_pd(d2, rng), d = random_pd(d2, rng);
                    t.record("A", a);
                    t.record("B", b);
                    t.record("C", c);
                    t.record("D", d);
                    const HermMat lhs = geometric_mean(compose(a, b, ComposeMode::kron), compose(c, d, ComposeMode::kron));
                    const HermMat rhs = compose(geometric_mean(a, c), geometric_mean(b, d), ComposeMode::kron);
                    t.cells[0].value = rel_diff(lhs.mat(), rhs.mat());
                  }});
  pair_row("GM positive maps", [](const HermMat& a, const HermMat& b, Rng& rng, Trial& t) {
    double v = 0.0;
    for (bool ptp : {false, true}) {
      const KrausChannel ch = random_channel(a.dim(), pick(rng, 1, 3), ptp, rng);
      for (std::size_t i = 0; i < ch.kraus_ops.size(); ++i)
        t.record(std::string(ptp ? "ptp" : "cp") + "_K" + std::to_string(i), ch.kraus_ops[i]);
      v = std::max(v, -min_eig(geometric_mean(ch.apply(a), ch.apply(b)) - ch.apply(geometric_mean(a, b))));
    }
    return std::max(0.0, v);
  });
  pair_row("GM feasibility and maximality", [](const HermMat& a, const HermMat& b, Rng& rng, Trial& t) {
    const HermMat g = geometric_mean(a, b);
    double v = maximality_witness(a, b, g) ? 0.0 : 1.0;
    // Feasible Hermitian W: hermitized A^{1/2} V B^{1/2} (V a contraction),
    // scaled back into the feasible set by bisection.
    const std::size_t n = a.dim();
    CMatrix vmat = random_unitary(n, rng).mat() * uniform_in(rng, 0.2, 1.0);
    const HermMat w0(sqrtm(a).mat() * vmat * sqrtm(b).mat());
    double lo = 0.0, hi = 1.0;
    if (maximality_witness(a, b, w0)) {
      lo = 1.0;
    } else {
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        (maximality_witness(a, b, w0 * mid) ? lo : hi) = mid;
      }
    }
    const HermMat w = w0 * lo;
    t.record("W", w);
    v += std::max(0.0, -min_eig(g - w) - kPsdTol);
    return v;
  });

  for (auto& r : rows) {
    if (r.name == "GM tensor distributivity") continue;
    r.min_dim = o.min_dim;
    r.max_dim = o.max_dim;
  }
  return rows;
}

// --- remaining module invariants -------------------------------------------

DensityMatrix rand_pd_state(Rng& rng, std::size_t d) { return random_density(d, d, rng); }

std::vector<RowSpec> module_rows(const SuiteOptions& o) {
  const double tol = o.tol;
  std::vector<RowSpec> rows;

  rows.push_back({"Fidelity ordering", "fidelity",
                  {{"matsumoto<=holevo", Expect::holds, tol, ""}, {"holevo<=uhlmann", Expect::holds, tol, ""}},
                  [](Rng& rng, std::size_t d, int, Trial& t) {
                    const DensityMatrix rho = rand_state(rng, d), sigma = rand_state(rng, d);
                    t.record("rho", rho.herm());
                    t.record("sigma", sigma.herm());
                    const FidelityReport f = fidelity_report(rho, sigma);
                    t.cells[0].value = std::max(0.0, f.matsumoto - f.holevo);
                    t.cells[1].value = std::max(0.0, f.holevo - f.uhlmann);
                  }});

  {
    RowSpec r{"SDP", "sdp",
              {{"matsumoto", Expect::holds, 1e-6, "|SDP - tr(rho#sigma)|"},
               {"uhlmann", Expect::holds, 1e-6, "|SDP - ||rho^1/2 sigma^1/2||_1|"},
               {"uhlmann>=matsumoto", Expect::holds, tol, ""},
               {"gap", Expect::holds, 0.0, "max(0, gap - gap_tol)"},
               {"certificate", Expect::holds, tol, "max residual of the independent re-check"},
               {"dual_constraint", Expect::holds, 1e-10, ""}},
              [](Rng& rng, std::size_t d, int, Trial& t) {
                const DensityMatrix rho = rand_pd_state(rng, d), sigma = rand_pd_state(rng, d);
                t.record("rho", rho.herm());
                t.record("sigma", sigma.herm());
                const SdpOptions opts;
                const FidelitySdp pm{SdpKind::matsumoto, rho, sigma}, pu{SdpKind::uhlmann, rho, sigma};
                const SdpSolution sm = solve(pm, opts), su = solve(pu, opts);
                t.cells[0].value = std::abs(sm.primal_value - matsumoto_fidelity(rho, sigma));
                t.cells[1].value = std::abs(su.primal_value - uhlmann_fidelity(rho, sigma));
                t.cells[2].value = std::max(0.0, sm.primal_value - su.primal_value);
                t.cells[3].value = std::max({0.0, sm.gap - opts.gap_tol, su.gap - opts.gap_tol});
                double cert = 0.0, cons = 0.0;
                for (const auto* pr : {&pm, &pu}) {
                  const SdpSolution& s = pr == &pm ? sm : su;
                  const VerificationReport v = verify_solution(*pr, s);
                  cert = std::max({cert, v.primal_residual, v.dual_residual, -v.weak_duality_margin});
                  cons = std::max(cons, v.dual_constraint_residual);
                }
                t.cells[4].value = cert;
                t.cells[5].value = cons;
              }};
    r.sdp = true;
    r.min_dim = o.min_dim;
    r.max_dim = o.sdp_max_dim;
    r.parts = {{"SDP oracle equivalence", 2}, {"SDP Hermitian-restriction ordering", 1}, {"SDP strong duality", 3}};
    rows.push_back(std::move(r));
  }
  {
    RowSpec r{"SDP commuting inputs", "sdp",
              {{"matsumoto", Expect::holds, 1e-6, "vs classical fidelity"}, {"uhlmann", Expect::holds, 1e-6, "vs classical fidelity"}},
              [](Rng& rng, std::size_t d, int, Trial& t) {
                const CMatrix u = random_unitary(d, rng).mat();
                const std::vector<double> p = random_simplex(d, rng), q = random_simplex(d, rng);
                const DensityMatrix rho = renormalized(HermMat::diagonal(p).congruence(u));
                const DensityMatrix sigma = renormalized(HermMat::diagonal(q).congruence(u));
                t.record("rho", rho.herm());
                t.record("sigma", sigma.herm());
                const double fcl = classical_fidelity(ProbVector(p), ProbVector(q));
                t.cells[0].value = std::abs(solve({SdpKind::matsumoto, rho, sigma}).primal_value - fcl);
                t.cells[1].value = std::abs(solve({SdpKind::uhlmann, rho, sigma}).primal_value - fcl);
              }};
    r.sdp = true;
    r.min_dim = o.min_dim;
    r.max_dim = o.sdp_max_dim;
    rows.push_back(std::move(r));
  }

  auto geo_pair = [&](const std::string& name, std::function<double(const DensityMatrix&, const DensityMatrix&, Rng&, Trial&)> f) {
    RowSpec r{name, "geometry", single_cell("value", tol), [f](Rng& rng, std::size_t d, int, Trial& t) {
                const DensityMatrix rho = rand_pd_state(rng, d), sigma = rand_pd_state(rng, d);
                t.record("rho", rho.herm());
                t.record("sigma", sigma.herm());
                t.cells[0].value = f(rho, sigma, rng, t);
              }};
    r.min_dim = o.min_dim;
    r.max_dim = o.max_dim;
    rows.push_back(std::move(r));
  };
  geo_pair("Midpoint trace", [](const DensityMatrix& rho, const DensityMatrix& sigma, Rng&, Trial&) {
    return std::abs(geodesic_point(rho, sigma, 0.5).trace() - matsumoto_fidelity(rho, sigma));
  });
  geo_pair("Midpoint equidistance", [](const DensityMatrix& rho, const DensityMatrix& sigma, Rng&, Trial&) {
    const HermMat m = geometric_mean(rho, sigma);
    return std::abs(spd_distance(rho, m) - spd_distance(m, sigma));
  });
  geo_pair("Distance congruence invariance", [](const DensityMatrix& rho, const DensityMatrix& sigma, Rng& rng, Trial& t) {
    const CMatrix x = random_ginibre(rho.dim(), rho.dim(), rng);
    t.record("X", x);
    return std::abs(spd_distance(rho.herm().congruence(x), sigma.herm().congruence(x)) - spd_distance(rho, sigma));
  });
  {
    RowSpec r{"Least-squares midpoint", "geometry", single_cell("value", tol), [](Rng& rng, std::size_t d, int, Trial& t) {
                const DensityMatrix rho = rand_pd_state(rng, d), sigma = rand_pd_state(rng, d);
                t.record("rho", rho.herm());
                t.record("sigma", sigma.herm());
                auto cost = [&](const HermMat& tau) {
                  const double a = spd_distance(rho, tau), b = spd_distance(tau, sigma);
                  return a * a + b * b;
                };
                const HermMat mid = geometric_mean(rho, sigma);
                const double c0 = cost(mid);
                double v = 0.0;
                const std::array<HermMat, 4> dirs = {HermMat{{1, 0}, {0, 0}}, HermMat{{0, 0}, {0, 1}},
                                                     HermMat{{0, 1}, {1, 0}}, HermMat{{0, cplx(0, -1)}, {cplx(0, 1), 0}}};
                for (double h : {1e-3, -1e-3, 1e-2, -1e-2})
                  for (const auto& e : dirs) v = std::max(v, c0 - cost(mid + e * h));
                t.cells[0].value = std::max(0.0, v);
              }};
    r.min_dim = r.max_dim = 2;
    rows.push_back(std::move(r));
  }
  {
    RowSpec r{"Qubit metric reduction", "geometry", single_cell("value", 1e-4), [](Rng& rng, std::size_t, int, Trial& t) {
                const double alpha = uniform_in(rng, -1.0, 1.0);
                const double r0 = uniform_in(rng, 0.5, 3.0);
                const double dphi = uniform_in(rng, 0.2, 1.5);
                auto r_of = [&](double phi) { return hyperbolic_geodesic_r(phi, r0, dphi); };
                auto curve = [&](double phi) {
                  return qubit_from_coords({alpha, r_of(phi), std::numbers::pi / 2, phi});
                };
                t.record("endpoint_0", curve(0.0));
                t.record("endpoint_1", curve(dphi));
                t.cells[0].value = std::abs(path_length(curve, 0.0, dphi) - hyperbolic_path_length(r_of, 0.0, dphi));
              }};
    r.min_dim = r.max_dim = 2;
    rows.push_back(std::move(r));
  }
  return rows;
}

// --- runner ----------------------------------------------------------------

std::vector<SuiteRow> run_row(const RowSpec& spec, std::uint64_t row_seed, int trials, Exec exec) {
  std::vector<Trial> results(static_cast<std::size_t>(trials));
  std::vector<std::uint64_t> seeds(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) seeds[i] = derive_seed(row_seed, i);
  const std::size_t span = spec.max_dim - spec.min_dim + 1;

  for_each_index(results.size(), exec, [&](std::size_t i) {
    Trial& t = results[i];
    t.dim = spec.min_dim + i % span;
    t.cells.assign(spec.cells.size(), CellOutcome{});
    Rng rng(seeds[i]);
    try {
      spec.fn(rng, t.dim, static_cast<int>(i), t);
    } catch (const std::exception& e) {
      t.error = e.what();
      for (std::size_t c = 0; c < t.cells.size(); ++c) {
        t.cells[c].value = spec.cells[c].expect == Expect::holds ? kInf : kNaN;
        t.cells[c].witness = false;
      }
    }
  });

  std::vector<SuiteCell> cells;
  std::vector<std::size_t> worst_trial(spec.cells.size(), 0);
  for (std::size_t c = 0; c < spec.cells.size(); ++c) {
    SuiteCell cell;
    cell.measure = spec.cells[c].measure;
    cell.expect = spec.cells[c].expect;
    cell.tolerance = spec.cells[c].tol;
    cell.note = spec.cells[c].note;
    double worst = -1.0;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const CellOutcome& o = results[i].cells[c];
      if (cell.expect == Expect::holds) {
        if (std::isnan(o.value)) continue;
        if (o.value > worst) {
          worst = o.value;
          worst_trial[c] = i;
        }
      } else if (o.witness) {
        if (cell.witnesses == 0) cell.witness_value = o.value;
        ++cell.witnesses;
      }
    }
    if (cell.expect == Expect::holds) {
      cell.max_violation = std::max(worst, 0.0);
      cell.pass = cell.max_violation <= cell.tolerance;
    } else {
      cell.pass = cell.witnesses >= 1;
    }
    cells.push_back(std::move(cell));
  }

  auto parts = spec.parts;
  if (parts.empty()) parts = {{spec.name, spec.cells.size()}};
  std::vector<SuiteRow> out;
  std::size_t c0 = 0;
  for (const auto& [name, count] : parts) {
    SuiteRow row;
    row.name = name;
    row.group = spec.group;
    row.trials = trials;
    row.cells.assign(cells.begin() + c0, cells.begin() + c0 + count);
    row.pass = std::all_of(row.cells.begin(), row.cells.end(), [](const SuiteCell& c) { return c.pass; });
    if (!row.pass && !results.empty()) {
      std::size_t which = c0;
      for (std::size_t c = c0; c < c0 + count; ++c)
        if (!cells[c].pass) {
          which = c;
          break;
        }
      const std::size_t ti = cells[which].expect == Expect::holds ? worst_trial[which] : 0;
      const Trial& t = results[ti];
      WorstCase w;
      w.seed = seeds[ti];
      w.trial = static_cast<int>(ti);
      w.dim = t.dim;
      w.cell = cells[which].measure + (t.error.empty() ? "" : " (error: " + t.error + ")");
      w.violation = cells[which].expect == Expect::holds ? cells[which].max_violation : kNaN;
      w.matrices = t.inputs;
      row.worst = std::move(w);
    }
    out.push_back(std::move(row));
    c0 += count;
  }
  return out;
}

const char* expect_name(Expect e) { return e == Expect::holds ? "holds" : "counterexample"; }

}  // namespace

bool SuiteReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.pass; });
}

const SuiteRow* SuiteReport::find(const std::string& name) const {
  for (const auto& r : rows)
    if (r.name == name) return &r;
  return nullptr;
}

const std::vector<std::string>& table_row_names() {
  static const std::vector<std::string> names = {
      "Symmetry",   "Bounds",          "Orthogonality", "Distinct image", "Unity condition", "Additivity",      "Multiplicativity",
      "Unitary invariance", "Monotonicity", "Joint concavity", "First F-vdG", "Second F-vdG", "Classical limit", "Pure states"};
  return names;
}

SuiteReport run_suite(const SuiteOptions& opts) {
  if (opts.trials < 0) throw InvalidArgument("suite: trials must be >= 0");
  if (opts.min_dim < 2 || opts.max_dim < opts.min_dim) throw InvalidArgument("suite: need 2 <= min_dim <= max_dim");
  if (opts.sdp_max_dim < opts.min_dim) throw InvalidArgument("suite: sdp_max_dim below min_dim");
  SuiteReport report;
  report.seed = opts.seed;
  report.trials = opts.trials;
  report.min_dim = opts.min_dim;
  report.max_dim = opts.max_dim;
  if (opts.trials == 0) return report;

  std::vector<RowSpec> specs = table_rows(opts);
  for (auto& r : geomean_rows(opts)) specs.push_back(std::move(r));
  for (auto& r : module_rows(opts)) specs.push_back(std::move(r));

  for (std::size_t k = 0; k < specs.size(); ++k) {
    const int trials = specs[k].sdp ? std::max(opts.trials, opts.sdp_trials) : opts.trials;
    for (auto& row : run_row(specs[k], derive_seed(opts.seed, k), trials, opts.exec)) report.rows.push_back(std::move(row));
  }
  for (const auto& name : table_row_names())
    if (!report.find(name)) throw InvalidState("suite: table row '" + name + "' is missing");
  return report;
}

nlohmann::json to_json(const SuiteReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : r.cells) {
      nlohmann::json jc = {{"measure", c.measure}, {"expect", expect_name(c.expect)}, {"pass", c.pass}};
      if (c.expect == Expect::holds) {
        jc["tolerance"] = c.tolerance;
        jc["max_violation"] = c.max_violation;
      } else {
        jc["witnesses"] = c.witnesses;
        jc["witness_value"] = c.witness_value;
      }
      if (!c.note.empty()) jc["note"] = c.note;
      cells.push_back(std::move(jc));
    }
    nlohmann::json jr = {{"name", r.name}, {"group", r.group}, {"trials", r.trials}, {"pass", r.pass}, {"cells", std::move(cells)}};
    if (r.worst) {
      nlohmann::json mats = nlohmann::json::object();
      for (const auto& [name, m] : r.worst->matrices) mats[name] = matrix_to_json(m);
      jr["worst_case"] = {{"seed", r.worst->seed}, {"trial", r.worst->trial},   {"dim", r.worst->dim},
                          {"cell", r.worst->cell}, {"violation", r.worst->violation}, {"matrices", std::move(mats)}};
    }
    rows.push_back(std::move(jr));
  }
  return {{"seed", report.seed},
          {"trials", report.trials},
          {"dims", {report.min_dim, report.max_dim}},
          {"all_pass", report.all_pass()},
          {"rows", std::move(rows)}};
}

std::string format_table(const SuiteReport& report) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-40s %-9s %6s  %-6s %s\n", "property", "group", "trials", "result", "cells");
  os << buf;
  for (const auto& r : report.rows) {
    std::string cells;
    for (const auto& c : r.cells) {
      char cb[128];
      if (c.expect == Expect::holds)
        std::snprintf(cb, sizeof cb, "%s%s=%.1e", cells.empty() ? "" : "  ", c.measure.c_str(), c.max_violation);
      else
        std::snprintf(cb, sizeof cb, "%s%s=X(%d/%d)", cells.empty() ? "" : "  ", c.measure.c_str(), c.witnesses, r.trials);
      cells += cb;
    }
    std::snprintf(buf, sizeof buf, "%-40s %-9s %6d  %-6s ", r.name.c_str(), r.group.c_str(), r.trials, r.pass ? "PASS" : "FAIL");
    os << buf << cells << '\n';
  }
  os << (report.all_pass() ? "all properties pass" : "PROPERTY VIOLATIONS") << '\n';
  return os.str();
}

}  // namespace qfid
