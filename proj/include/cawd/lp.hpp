// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "cawd/model.hpp"

namespace cawd::lp {

/// The fractional relaxation of a node's remaining winner-determination
/// problem: maximize objective . x subject to constraints * x <= rhs and
/// 0 <= x <= 1. One row per good, one column per active bid.
struct LpProblem {
  Eigen::VectorXd objective;    // price per active bid
  Eigen::MatrixXd constraints;  // goods x active-bids quantity matrix
  Eigen::VectorXd rhs;          // remaining stock per good

  int num_rows() const { return static_cast<int>(constraints.rows()); }
  int num_vars() const { return static_cast<int>(objective.size()); }
};

struct LpOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;   // reduced-cost threshold
  int bland_threshold = 1000;     // non-improving pivots before Bland's rule
  int refactor_interval = 100;    // basis-inverse rebuild cadence
  int max_iterations = 0;         // 0 = 2000 + 50 * (rows + vars)
};

enum class LpStatus : std::uint8_t {
  Optimal,
  InfeasibleGuard,  // rhs had negative entries; never reached via the solver
};

struct LpSolution {
  double objective_value = 0.0;
  Eigen::VectorXd coefficients;  // one per variable, clamped to [0, 1]
  LpStatus status = LpStatus::Optimal;
  int iterations = 0;
};

/// Simplex failed to terminate within the iteration budget. Indicates a
/// cycling bug: Bland's rule makes this unreachable on well-formed input.
class LpError : public std::runtime_error {
 public:
  LpError(const std::string& message, int iterations)
      : std::runtime_error(message + " after " + std::to_string(iterations) +
                           " iterations"),
        iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

/// Assembles the relaxation for the given node state. Every active bid is
/// assumed to fit `remaining_stock` componentwise (the search maintains it).
LpProblem build_relaxation(const Auction& auction, const StockVec& remaining_stock,
                           std::span<const std::int32_t> active_bids);

/// Bounded-variable revised simplex, Dantzig pricing with a Bland's-rule
/// fallback once progress stalls. Deterministic: the same problem always
/// produces bitwise-identical output.
LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

/// Cheap dual-feasibility upper bound: for each good, charge the remaining
/// stock at the best price-per-squared-norm-share any active bid offers,
///
///   bound = sum_j stock_j * max_i p_i q_ij / |q_i|_2^2,
///
/// clamped to the sum of active prices. The inner maximand makes
/// y_j = max_i ... a feasible dual of the relaxation without the x <= 1
/// bounds, so the bound always dominates the LP optimum.
double extended_norm_bound(const Auction& auction, const StockVec& remaining_stock,
                           std::span<const std::int32_t> active_bids);

}  // namespace cawd::lp
