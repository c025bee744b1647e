// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cawd/generators.hpp"
#include "cawd/heuristics.hpp"
#include "cawd/solver.hpp"

namespace cawd::bench {

/// One solver configuration under comparison.
struct SolverSetup {
  Criterion branching = Criterion::square_root();
  BoundKind bound = BoundKind::Lp;

  std::string slug() const;  // e.g. "sqrt-lp", "random:0-extnorm"
};

/// A grid of generator cells crossed with solver setups, replicated with
/// deterministically derived seeds.
struct ExperimentPlan {
  std::uint64_t master_seed = 1;
  int replications = 15;
  gen::GeneratorSpec base;       // bids field overridden per cell
  std::vector<int> bids_grid;
  std::vector<SolverSetup> setups;
  std::uint64_t node_limit = 0;
  double time_limit_seconds = 0.0;
};

/// Parses the flat key-value plan format:
///
///   master_seed 42
///   family camus
///   goods 10
///   bids 250,500,750
///   replications 15
///   branching sqrt,lpcoef
///   bound lp,extnorm
///
/// '#' starts a comment; setups are the cross product of the branching and
/// bound lists; generator parameters (units_lo, alpha, set_size, ...) use
/// the GeneratorSpec field names.
ExperimentPlan parse_plan(const std::string& text);
ExperimentPlan parse_plan_file(const std::filesystem::path& path);

/// One solver run on one generated instance.
struct ResultRow {
  std::string family;
  int goods = 0;
  int bids = 0;
  int replication = 0;
  std::uint64_t seed = 0;
  std::string branching;
  std::string bound;
  Money init_value;
  Money opt_value;
  double root_lp = 0.0;
  double root_extnorm = 0.0;
  std::uint64_t nodes = 0;
  std::uint64_t lp_calls = 0;
  std::uint64_t lp_calls_saved = 0;
  std::uint64_t prunes = 0;
  bool limit_hit = false;
  std::string error;  // empty on success
  double wall_seconds = 0.0;

  /// CSV serialization without the timing column; used by the determinism
  /// checks (wall time is the one legitimately irreproducible field).
  std::string csv_non_timing() const;
};

struct PlanResult {
  std::vector<ResultRow> rows;
  bool ok = true;  // false when any row carries an error
};

/// Runs every (cell, replication, setup) combination. Instances are shared
/// across setups within a (cell, replication) pair so that comparisons are
/// paired. Per-run failures are recorded in the row, never aborting the
/// plan. When `out_dir` is non-empty, writes results.csv, aggregate.csv and
/// per-metric plot data files into it.
PlanResult run_plan(const ExperimentPlan& plan, const std::filesystem::path& out_dir);

std::string results_csv(const std::vector<ResultRow>& rows);
std::string aggregate_csv(const std::vector<ResultRow>& rows);

}  // namespace cawd::bench
