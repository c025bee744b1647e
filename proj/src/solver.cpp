// SPDX-License-Identifier: Apache-2.0
#include "cawd/solver.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cawd {

int choose_bid(const Auction& auction, std::span<const std::int32_t> active,
               const Criterion& branching, std::span<const double> lp_coefficients) {
  if (active.empty()) throw std::invalid_argument("choose_bid: no active bids");
  if (branching.needs_lp()) {
    // LpAdaptive coincides with LpCoefficient here: the node's relaxation
    // is re-solved at every Bound step already.
    if (lp_coefficients.size() != active.size()) {
      throw std::invalid_argument("choose_bid: LP branching needs the node solution");
    }
    int pick = 0;
    for (int c = 1; c < static_cast<int>(active.size()); ++c) {
      if (lp_coefficients[c] > lp_coefficients[pick]) pick = c;
    }
    return pick;
  }
  int pick = 0;
  double best = score(branching, auction, active[0]);
  for (int c = 1; c < static_cast<int>(active.size()); ++c) {
    const double s = score(branching, auction, active[c]);
    if (s > best) {
      best = s;
      pick = c;
    }
  }
  return pick;
}

std::optional<double> maybe_reuse_bound(std::span<const double> parent_coefficients,
                                        int chosen_position, double parent_bound,
                                        double zero_tol) {
  if (chosen_position < 0 ||
      chosen_position >= static_cast<int>(parent_coefficients.size())) {
    return std::nullopt;
  }
  if (std::abs(parent_coefficients[chosen_position]) <= zero_tol) return parent_bound;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

// Best integer-allocation value still reachable below a node whose partial
// value plus bound is `value_with_slack`: all feasible values live on the
// money grid, so flooring to the grid makes the prune comparison exact.
// This is also what lets a root whose LP bound equals the greedy incumbent
// prune immediately.
std::int64_t reachable_cap_scaled(Money partial, double bound, double slack) {
  const double total = partial.to_double() + bound + slack;
  return Money::floor_from_double(total).scaled();
}

}  // namespace

SolveResult solve(const Auction& auction, const SolverConfig& config) {
  if (config.bound == BoundKind::ExtendedNorm && config.branching.needs_lp()) {
    throw std::invalid_argument(
        "solve: LP-based branching requires the LP bound (no node LP solution "
        "exists under the extended-norm bound)");
  }
  if (config.prune_slack < config.lp.optimality_tol) {
    throw std::invalid_argument("solve: prune_slack must cover the LP optimality tol");
  }

  const auto start = Clock::now();
  SolveResult result;
  result.init = initialize(auction, config.init_portfolio, config.lp);
  result.best = result.init.best;

  SearchStats& stats = result.stats;
  stats.best_value_trace.emplace_back(0, result.best.value);

  std::vector<NodeState> stack;
  {
    NodeState root;
    root.remaining_stock = auction.stock;
    root.active.resize(auction.num_bids());
    std::iota(root.active.begin(), root.active.end(), 0);
    stack.push_back(std::move(root));
  }

  while (!stack.empty()) {
    if (config.node_limit != 0 && stats.nodes_visited >= config.node_limit) {
      result.proven_optimal = false;
      break;
    }
    if (config.time_limit_seconds > 0.0 &&
        std::chrono::duration<double>(Clock::now() - start).count() >
            config.time_limit_seconds) {
      result.proven_optimal = false;
      break;
    }

    NodeState node = std::move(stack.back());
    stack.pop_back();
    ++stats.nodes_visited;

    // Update before the leaf check: a leaf can hold the best value.
    if (node.partial.value > result.best.value) {
      result.best = node.partial;
      stats.best_value_trace.emplace_back(stats.nodes_visited, result.best.value);
    }
    if (node.active.empty()) continue;

    // Bound
    double bound;
    std::vector<double> coefficients;
    bool have_coefficients = false;
    if (node.inherited_bound) {
      bound = *node.inherited_bound;
      coefficients = std::move(node.inherited_coefficients);
      have_coefficients = true;
      ++stats.lp_calls_saved;
    } else if (config.bound == BoundKind::Lp) {
      const lp::LpSolution sol = lp::solve_lp(
          lp::build_relaxation(auction, node.remaining_stock, node.active), config.lp);
      ++stats.lp_calls;
      bound = sol.objective_value;
      coefficients.assign(sol.coefficients.data(),
                          sol.coefficients.data() + sol.coefficients.size());
      have_coefficients = true;
    } else {
      bound = lp::extended_norm_bound(auction, node.remaining_stock, node.active);
    }

    // Prune
    if (reachable_cap_scaled(node.partial.value, bound, config.prune_slack) <=
        result.best.value.scaled()) {
      ++stats.prunes;
      continue;
    }

    // Choose
    const int position = choose_bid(auction, node.active, config.branching,
                                    have_coefficients ? std::span<const double>(coefficients)
                                                      : std::span<const double>());
    const std::int32_t chosen = node.active[position];
    const Bid& chosen_bid = auction.bids[chosen];

    // Left call: grant the chosen bid, drop everything that no longer fits.
    NodeState left;
    left.partial = node.partial;
    left.partial.granted.push_back(chosen);
    left.partial.value += chosen_bid.price;
    left.remaining_stock = node.remaining_stock - chosen_bid.quantity;
    left.active.reserve(node.active.size());
    for (std::int32_t i : node.active) {
      if (i != chosen && fits(auction.bids[i].quantity, left.remaining_stock)) {
        left.active.push_back(i);
      }
    }

    // Right call: deny the chosen bid. Reuses this node's storage; the
    // parent bound is inherited when the chosen coefficient was zero.
    std::optional<double> inherited;
    if (config.reuse_zero_coefficient_bound && have_coefficients) {
      inherited = maybe_reuse_bound(coefficients, position, bound,
                                    config.zero_coefficient_tol);
    }
    node.active.erase(node.active.begin() + position);
    if (inherited) {
      coefficients.erase(coefficients.begin() + position);
      node.inherited_bound = inherited;
      node.inherited_coefficients = std::move(coefficients);
    } else {
      node.inherited_bound.reset();
      node.inherited_coefficients.clear();
    }

    stack.push_back(std::move(node));  // deny branch explored second
    stack.push_back(std::move(left));  // grant branch explored first
  }

  // Keep the granted set sorted for stable output.
  std::sort(result.best.granted.begin(), result.best.granted.end());
  stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace cawd
