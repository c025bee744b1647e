// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cawd/heuristics.hpp"
#include "cawd/lp.hpp"
#include "cawd/model.hpp"

namespace cawd {

enum class BoundKind : std::uint8_t {
  Lp,            // fractional relaxation optimum (tight, expensive)
  ExtendedNorm,  // per-good dual rate bound (loose, cheap)
};

struct SolverConfig {
  Criterion branching = Criterion::square_root();
  std::vector<Criterion> init_portfolio = default_portfolio();
  BoundKind bound = BoundKind::Lp;

  /// Reuse the parent bound for the deny branch when the chosen bid's LP
  /// coefficient is zero (the deny-side relaxation then has the same
  /// optimum, so the LP call can be skipped).
  bool reuse_zero_coefficient_bound = true;

  /// Absolute slack added to the bound before the prune comparison; must be
  /// at least the LP optimality tolerance so that a bound underestimated by
  /// solver tolerance can never prune the true optimum.
  double prune_slack = 1e-6;

  /// |coefficient| at or below this counts as zero for the reuse rule.
  double zero_coefficient_tol = 1e-6;

  lp::LpOptions lp;
  std::uint64_t node_limit = 0;      // 0 = unlimited
  double time_limit_seconds = 0.0;   // 0 = unlimited
};

/// One frame of the depth-first search.
struct NodeState {
  Allocation partial;        // bids granted on the path to this node
  StockVec remaining_stock;  // original stock minus the partial's demand
  std::vector<std::int32_t> active;  // undecided bids, each fits remaining_stock

  /// Bound carried over from the parent under the zero-coefficient rule,
  /// together with the parent optimum restricted to this node's active set.
  std::optional<double> inherited_bound;
  std::vector<double> inherited_coefficients;  // aligned with `active`
};

struct SearchStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t lp_calls = 0;        // bound-step LP solves
  std::uint64_t lp_calls_saved = 0;  // bound steps answered by the reuse rule
  std::uint64_t prunes = 0;
  std::vector<std::pair<std::uint64_t, Money>> best_value_trace;  // (node, value)
  double wall_seconds = 0.0;
};

struct SolveResult {
  Allocation best;
  SearchStats stats;
  /// False when a node or time limit stopped the search early; `best` is
  /// then only a lower bound on the optimum.
  bool proven_optimal = true;
  InitializationReport init;
};

/// Exact branch-and-bound winner determination. Depth-first, grant branch
/// first, with the incumbent seeded by the greedy portfolio.
SolveResult solve(const Auction& auction, const SolverConfig& config = {});

/// Position (within `active`) of the bid to branch on. LP-based criteria
/// pick the largest coefficient in `lp_coefficients` (aligned with
/// `active`); static criteria pick the best score. Ties go to the lower
/// bid index.
int choose_bid(const Auction& auction, std::span<const std::int32_t> active,
               const Criterion& branching, std::span<const double> lp_coefficients);

/// The deny-branch bound reuse rule: if the chosen bid's coefficient in the
/// parent LP optimum is zero (within tolerance), the parent objective is
/// also the deny branch's LP optimum and is returned for inheritance.
std::optional<double> maybe_reuse_bound(std::span<const double> parent_coefficients,
                                        int chosen_position, double parent_bound,
                                        double zero_tol);

}  // namespace cawd
