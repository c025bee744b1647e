// SPDX-License-Identifier: Apache-2.0
#include "cawd/lp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

namespace cawd::lp {

LpProblem build_relaxation(const Auction& auction, const StockVec& remaining_stock,
                           std::span<const std::int32_t> active_bids) {
  const int rows = auction.num_goods();
  const int cols = static_cast<int>(active_bids.size());
  LpProblem problem;
  problem.objective.resize(cols);
  problem.constraints.resize(rows, cols);
  problem.rhs = remaining_stock.cast<double>();
  for (int c = 0; c < cols; ++c) {
    const Bid& bid = auction.bids[active_bids[c]];
    problem.objective[c] = bid.price.to_double();
    problem.constraints.col(c) = bid.quantity.cast<double>();
  }
  return problem;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;

enum class VarState : std::uint8_t { AtLower, AtUpper, Basic };

// Variables 0..d-1 are the bid coefficients with bounds [0, 1]; variables
// d..d+m-1 are the row slacks with bounds [0, inf).
struct Tableau {
  const LpProblem& p;
  int d, m;

  std::vector<VarState> state;
  std::vector<int> basis;     // variable index basic in each row
  Eigen::MatrixXd basis_inv;  // explicit inverse of the basis matrix
  Eigen::VectorXd x_basic;    // values of the basic variables, row order

  explicit Tableau(const LpProblem& problem)
      : p(problem), d(problem.num_vars()), m(problem.num_rows()) {
    state.assign(d + m, VarState::AtLower);
    basis.resize(m);
    for (int i = 0; i < m; ++i) {
      basis[i] = d + i;
      state[d + i] = VarState::Basic;
    }
    basis_inv = Eigen::MatrixXd::Identity(m, m);
    x_basic = p.rhs;
  }

  double cost(int var) const { return var < d ? p.objective[var] : 0.0; }
  double lower(int) const { return 0.0; }
  double upper(int var) const { return var < d ? 1.0 : kInf; }

  Eigen::VectorXd column(int var) const {
    if (var < d) return p.constraints.col(var);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e[var - d] = 1.0;
    return e;
  }

  double nonbasic_value(int var) const {
    return state[var] == VarState::AtUpper ? upper(var) : lower(var);
  }

  // Rebuilds basis_inv and x_basic from scratch; the incremental eta
  // updates drift over long pivot sequences.
  void refactorize() {
    Eigen::MatrixXd b(m, m);
    for (int i = 0; i < m; ++i) b.col(i) = column(basis[i]);
    basis_inv = b.partialPivLu().inverse();
    Eigen::VectorXd rhs = p.rhs;
    for (int var = 0; var < d; ++var) {
      if (state[var] == VarState::AtUpper) rhs -= p.constraints.col(var);
    }
    x_basic = basis_inv * rhs;
  }

  Eigen::VectorXd dual_prices() const {
    Eigen::VectorXd cost_basic(m);
    for (int i = 0; i < m; ++i) cost_basic[i] = cost(basis[i]);
    return basis_inv.transpose() * cost_basic;
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x(d);
    for (int var = 0; var < d; ++var) x[var] = nonbasic_value(var);
    for (int i = 0; i < m; ++i) {
      if (basis[i] < d) x[basis[i]] = x_basic[i];
    }
    return x;
  }

  double objective_of(const Eigen::VectorXd& x) const { return p.objective.dot(x); }
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options) {
  const int d = problem.num_vars();
  const int m = problem.num_rows();

  LpSolution solution;
  solution.coefficients = Eigen::VectorXd::Zero(d);
  if (d == 0) return solution;
  if ((problem.rhs.array() < -options.feasibility_tol).any()) {
    solution.status = LpStatus::InfeasibleGuard;
    return solution;
  }
  if (m == 0) {
    // No constraining rows: every positive-price variable sits at 1.
    for (int v = 0; v < d; ++v) {
      if (problem.objective[v] > 0) solution.coefficients[v] = 1.0;
    }
    solution.objective_value = problem.objective.dot(solution.coefficients);
    return solution;
  }

  Tableau t(problem);
  const int max_iter =
      options.max_iterations > 0 ? options.max_iterations : 2000 + 50 * (d + m);

  bool bland = false;
  int stalled = 0;
  int iterations = 0;
  double last_objective = t.objective_of(t.solution());

  for (;;) {
    if (iterations >= max_iter) {
      throw LpError("lp: iteration limit exceeded", iterations);
    }
    ++iterations;

    const Eigen::VectorXd y = t.dual_prices();
    // Reduced costs for all structural variables at once; slacks are -y_i.
    const Eigen::VectorXd reduced =
        problem.objective - problem.constraints.transpose() * y;

    int entering = -1;
    double best_score = options.optimality_tol;
    for (int var = 0; var < d + m; ++var) {
      if (t.state[var] == VarState::Basic) continue;
      const double rc = var < d ? reduced[var] : -y[var - d];
      const bool favorable = t.state[var] == VarState::AtLower
                                 ? rc > options.optimality_tol
                                 : rc < -options.optimality_tol;
      if (!favorable) continue;
      if (bland) {
        entering = var;
        break;
      }
      if (std::abs(rc) > best_score) {
        best_score = std::abs(rc);
        entering = var;
      }
    }
    if (entering < 0) break;  // optimal

    const double rc_entering =
        entering < d ? reduced[entering] : -y[entering - d];
    const double sigma = t.state[entering] == VarState::AtLower ? 1.0 : -1.0;
    const Eigen::VectorXd alpha = t.basis_inv * t.column(entering);

    // Ratio test: the entering variable moves by delta in direction sigma
    // until it hits its own opposite bound or drives a basic variable to
    // one of its bounds.
    double delta = t.upper(entering) - t.lower(entering);
    int leaving_row = -1;
    bool leaving_to_upper = false;
    for (int i = 0; i < m; ++i) {
      const double rate = sigma * alpha[i];
      double limit = kInf;
      bool to_upper = false;
      if (rate > kPivotTol) {
        limit = (t.x_basic[i] - t.lower(t.basis[i])) / rate;
      } else if (rate < -kPivotTol && t.upper(t.basis[i]) < kInf) {
        limit = (t.upper(t.basis[i]) - t.x_basic[i]) / (-rate);
        to_upper = true;
      } else {
        continue;
      }
      if (limit < delta - 1e-12 ||
          (limit < delta + 1e-12 && leaving_row >= 0 &&
           t.basis[i] < t.basis[leaving_row])) {
        delta = limit;
        leaving_row = i;
        leaving_to_upper = to_upper;
      } else if (limit < delta + 1e-12 && leaving_row < 0) {
        delta = limit;
        leaving_row = i;
        leaving_to_upper = to_upper;
      }
    }
    if (delta == kInf) {
      throw LpError("lp: unbounded direction (malformed problem)", iterations);
    }
    delta = std::max(delta, 0.0);

    if (leaving_row < 0) {
      // Bound flip: the entering variable crosses to its other bound.
      t.x_basic -= sigma * delta * alpha;
      t.state[entering] = t.state[entering] == VarState::AtLower
                              ? VarState::AtUpper
                              : VarState::AtLower;
    } else {
      const int leaving = t.basis[leaving_row];
      t.x_basic -= sigma * delta * alpha;
      t.x_basic[leaving_row] = t.nonbasic_value(entering) + sigma * delta;
      t.state[leaving] = leaving_to_upper ? VarState::AtUpper : VarState::AtLower;
      t.basis[leaving_row] = entering;
      t.state[entering] = VarState::Basic;

      const double pivot = alpha[leaving_row];
      if (std::abs(pivot) < kPivotTol) {
        t.refactorize();
      } else {
        // Product-form update of the explicit inverse.
        t.basis_inv.row(leaving_row) /= pivot;
        for (int i = 0; i < m; ++i) {
          if (i == leaving_row) continue;
          t.basis_inv.row(i) -= alpha[i] * t.basis_inv.row(leaving_row);
        }
      }
    }

    if (iterations % options.refactor_interval == 0) t.refactorize();

    const double objective_now = std::abs(rc_entering) * delta;
    if (objective_now <= 1e-12 * (1.0 + std::abs(last_objective))) {
      if (++stalled > options.bland_threshold) bland = true;
    } else {
      stalled = 0;
      last_objective += objective_now;
    }
  }

  t.refactorize();  // clean values for the reported point
  Eigen::VectorXd x = t.solution();
  solution.coefficients = x.cwiseMax(0.0).cwiseMin(1.0);
  solution.objective_value = problem.objective.dot(solution.coefficients);
  solution.iterations = iterations;
  return solution;
}

double extended_norm_bound(const Auction& auction, const StockVec& remaining_stock,
                           std::span<const std::int32_t> active_bids) {
  if (active_bids.empty()) return 0.0;
  const int rows = auction.num_goods();
  Eigen::VectorXd per_good_rate = Eigen::VectorXd::Zero(rows);
  double price_sum = 0.0;
  for (std::int32_t i : active_bids) {
    const Bid& bid = auction.bids[i];
    const double price = bid.price.to_double();
    price_sum += price;
    const Eigen::VectorXd q = bid.quantity.cast<double>();
    const double share = price / q.squaredNorm();
    per_good_rate = per_good_rate.cwiseMax(q * share);
  }
  const double bound = per_good_rate.dot(remaining_stock.cast<double>());
  return std::min(bound, price_sum);
}

}  // namespace cawd::lp
