#pragma once

// Randomised property suite: one row per fidelity property of the summary
// table (with a cell per fidelity), plus module invariants for the geometric
// mean, the SDP solver and the cone geometry.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfid/kernels.hpp"
#include "qfid/linalg.hpp"

namespace qfid {

/// holds: every trial satisfies the property within the cell tolerance.
/// counterexample: at least one trial exhibits the documented failure.
enum class Expect { holds, counterexample };

struct SuiteCell {
  std::string measure;  // "uhlmann", "holevo", "matsumoto" or a check name
  Expect expect = Expect::holds;
  double tolerance = 0.0;
  double max_violation = 0.0;  // holds
  int witnesses = 0;           // counterexample: trials exhibiting the failure
  double witness_value = 0.0;  // counterexample: a representative measured value
  bool pass = false;
  std::string note;
};

struct WorstCase {
  std::uint64_t seed = 0;  // trial seed: Rng(seed) replays the instance
  int trial = 0;
  std::size_t dim = 0;
  std::string cell;
  double violation = 0.0;
  std::vector<std::pair<std::string, CMatrix>> matrices;
};

struct SuiteRow {
  std::string name;
  std::string group;  // "table" or the owning module
  int trials = 0;
  std::vector<SuiteCell> cells;
  bool pass = false;
  std::optional<WorstCase> worst;  // set when the row fails
};

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  int trials = 200;
  std::size_t min_dim = 2;
  std::size_t max_dim = 6;
  std::size_t sdp_max_dim = 8;
  int sdp_trials = 300;  // SDP rows use max(trials, sdp_trials) unless trials == 0
  double tol = 1e-8;
  Exec exec = Exec::parallel;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  int trials = 0;
  std::size_t min_dim = 0;
  std::size_t max_dim = 0;
  std::vector<SuiteRow> rows;
  bool all_pass() const;
  const SuiteRow* find(const std::string& name) const;
};

/// Names of the fourteen summary-table rows, in table order.
const std::vector<std::string>& table_row_names();

SuiteReport run_suite(const SuiteOptions& opts);

/// Deterministic JSON (no timing), worst cases serialised for replay.
nlohmann::json to_json(const SuiteReport& report);
/// Fixed-width human-readable table.
std::string format_table(const SuiteReport& report);

}  // namespace qfid
