#include "qfid/io.hpp"

#include <cstdio>
#include <fstream>

#include "qfid/errors.hpp"

namespace qfid {

namespace {

std::vector<std::vector<double>> read_grid(const json& j, const char* key, std::size_t n) {
  if (!j.contains(key)) return {};
  const json& g = j.at(key);
  if (!g.is_array() || g.size() != n) throw ParseError(std::string("\"") + key + "\" must have dim rows");
  std::vector<std::vector<double>> out;
  for (const json& row : g) {
    if (!row.is_array() || row.size() != n) throw ParseError(std::string("\"") + key + "\" must be dim x dim");
    std::vector<double> r;
    for (const json& v : row) {
      if (!v.is_number()) throw ParseError(std::string("\"") + key + "\" entries must be numbers");
      r.push_back(v.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

CMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix JSON must be an object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer()) throw ParseError("matrix JSON needs an integer \"dim\"");
  const long long d = j.at("dim").get<long long>();
  if (d < 1) throw ParseError("\"dim\" must be >= 1");
  const auto n = static_cast<std::size_t>(d);
  if (!j.contains("re")) throw ParseError("matrix JSON needs \"re\"");
  const auto re = read_grid(j, "re", n);
  const auto im = read_grid(j, "im", n);
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) m(i, k) = cplx(re[i][k], im.empty() ? 0.0 : im[i][k]);
  return m;
}

json matrix_to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array(), c = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

HermMat hermitian_from_json(const json& j) { return HermMat::checked(matrix_from_json(j)); }

HermMat read_hermitian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    return hermitian_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

DensityMatrix read_density(const std::filesystem::path& path) {
  HermMat h = read_hermitian(path);
  try {
    return DensityMatrix(std::move(h));
  } catch (const InvalidState& e) {
    throw InvalidState(path.string() + ": " + e.what());
  }
}

json to_json(const FidelityReport& r) {
  return {{"uhlmann", r.uhlmann}, {"holevo", r.holevo}, {"matsumoto", r.matsumoto},
          {"trace_distance", r.trace_distance}};
}

json to_json(const SdpSolution& s) {
  json log = json::array();
  for (const auto& rec : s.trace_log) log.push_back({{"iteration", rec.iteration}, {"mu", rec.mu}, {"gap", rec.gap}});
  return {{"kind", to_string(s.kind)},
          {"primal_value", s.primal_value},
          {"dual_value", s.dual_value},
          {"gap", s.gap},
          {"iterations", s.iterations},
          {"regularization", s.regularization},
          {"primal", matrix_to_json(s.primal)},
          {"dual_Y", matrix_to_json(s.dual_Y.mat())},
          {"dual_Z", matrix_to_json(s.dual_Z.mat())},
          {"dual_A", matrix_to_json(s.dual_A)},
          {"trace_log", std::move(log)}};
}

json to_json(const VerificationReport& r) {
  return {{"primal_residual", r.primal_residual},
          {"dual_residual", r.dual_residual},
          {"dual_constraint_residual", r.dual_constraint_residual},
          {"primal_value", r.primal_value},
          {"dual_value", r.dual_value},
          {"weak_duality_margin", r.weak_duality_margin},
          {"primal_feasible", r.primal_feasible},
          {"dual_feasible", r.dual_feasible},
          {"weak_duality", r.weak_duality},
          {"ok", r.ok()}};
}

std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace qfid
