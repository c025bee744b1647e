// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "cawd/money.hpp"

namespace cawd {

using StockVec = Eigen::VectorXi;

/// One bid: a requested quantity per good and a price for the whole bundle.
struct Bid {
  Eigen::VectorXi quantity;  // one entry per good, all >= 0, not all zero
  Money price;               // > 0

  int total_units() const { return quantity.sum(); }
};

/// A multi-unit combinatorial auction instance: per-good unit stocks and an
/// ordered bid list. The bid order is observable (it is itself one of the
/// greedy orderings), so instances never reorder bids.
///
/// Instances are immutable after construction and safe to share read-only
/// across concurrent solver runs.
struct Auction {
  StockVec stock;          // one entry per good, all >= 1
  std::vector<Bid> bids;

  int num_goods() const { return static_cast<int>(stock.size()); }
  int num_bids() const { return static_cast<int>(bids.size()); }
};

/// Checks every structural invariant: at least one good, positive stocks,
/// no all-zero or non-positive-price bids, and every single bid fitting the
/// stock on its own. Throws std::invalid_argument naming the offending bid.
void validate(const Auction& auction);

inline bool fits(const Eigen::VectorXi& quantity, const StockVec& stock) {
  return (quantity.array() <= stock.array()).all();
}

/// A set of granted bids together with its exact total value.
struct Allocation {
  std::vector<std::int32_t> granted;  // bid indices, ascending
  Money value;
};

/// True iff the summed demand of `subset` fits the stock for every good.
/// Throws std::out_of_range on an invalid bid index.
bool is_conflict_free(const Auction& auction, std::span<const std::int32_t> subset);

/// Exact total price of a conflict-free subset.
/// Throws std::invalid_argument if the subset is not conflict-free.
Money allocation_value(const Auction& auction, std::span<const std::int32_t> subset);

/// Recomputes an Allocation for `subset` from scratch (sorted, revalued).
Allocation make_allocation(const Auction& auction, std::span<const std::int32_t> subset);

/// Exhaustive test oracle: enumerates every conflict-free subset and returns
/// a maximum-value one, ties broken toward the lexicographically smallest
/// index set. Refuses instances with more than `max_bids` bids (the
/// enumeration is exponential). Independent of the LP and search modules.
Allocation brute_force_optimum(const Auction& auction, int max_bids = 24);

}  // namespace cawd
