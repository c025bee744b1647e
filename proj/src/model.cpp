// SPDX-License-Identifier: Apache-2.0
#include "cawd/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cawd {

void validate(const Auction& auction) {
  if (auction.num_goods() < 1) {
    throw std::invalid_argument("auction: needs at least one good");
  }
  for (int j = 0; j < auction.num_goods(); ++j) {
    if (auction.stock[j] < 1) {
      throw std::invalid_argument("auction: stock of good " + std::to_string(j) +
                                  " must be >= 1");
    }
  }
  for (int i = 0; i < auction.num_bids(); ++i) {
    const Bid& bid = auction.bids[i];
    if (bid.quantity.size() != auction.stock.size()) {
      throw std::invalid_argument("auction: bid " + std::to_string(i) +
                                  " has wrong quantity dimension");
    }
    if ((bid.quantity.array() < 0).any()) {
      throw std::invalid_argument("auction: bid " + std::to_string(i) +
                                  " has a negative quantity");
    }
    if (bid.quantity.isZero()) {
      throw std::invalid_argument("auction: bid " + std::to_string(i) +
                                  " requests nothing");
    }
    if (bid.price <= Money{}) {
      throw std::invalid_argument("auction: bid " + std::to_string(i) +
                                  " has non-positive price");
    }
    if (!fits(bid.quantity, auction.stock)) {
      for (int j = 0; j < auction.num_goods(); ++j) {
        if (bid.quantity[j] > auction.stock[j]) {
          throw std::invalid_argument(
              "auction: bid " + std::to_string(i) + " requests " +
              std::to_string(bid.quantity[j]) + " units of good " +
              std::to_string(j) + " but stock is " + std::to_string(auction.stock[j]));
        }
      }
    }
  }
}

bool is_conflict_free(const Auction& auction, std::span<const std::int32_t> subset) {
  Eigen::VectorXi demand = Eigen::VectorXi::Zero(auction.num_goods());
  for (std::int32_t i : subset) {
    if (i < 0 || i >= auction.num_bids()) {
      throw std::out_of_range("subset: bid index " + std::to_string(i) +
                              " out of range");
    }
    demand += auction.bids[i].quantity;
  }
  return (demand.array() <= auction.stock.array()).all();
}

Money allocation_value(const Auction& auction, std::span<const std::int32_t> subset) {
  if (!is_conflict_free(auction, subset)) {
    throw std::invalid_argument("allocation_value: subset is not conflict-free");
  }
  Money total;
  for (std::int32_t i : subset) total += auction.bids[i].price;
  return total;
}

Allocation make_allocation(const Auction& auction, std::span<const std::int32_t> subset) {
  Allocation alloc;
  alloc.granted.assign(subset.begin(), subset.end());
  std::sort(alloc.granted.begin(), alloc.granted.end());
  alloc.value = allocation_value(auction, alloc.granted);
  return alloc;
}

namespace {

// Include-first depth-first enumeration. Visiting the "grant bid i" branch
// before the "deny bid i" branch, combined with strictly-greater updates,
// makes the first maximum found the lexicographically smallest index set.
struct BruteForce {
  const Auction& auction;
  StockVec stock;
  std::vector<std::int32_t> current;
  std::vector<std::int32_t> best;
  Money current_value;
  Money best_value;

  explicit BruteForce(const Auction& a) : auction(a), stock(a.stock) {}

  void descend(int i) {
    if (i == auction.num_bids()) {
      if (current_value > best_value) {
        best_value = current_value;
        best = current;
      }
      return;
    }
    const Bid& bid = auction.bids[i];
    if (fits(bid.quantity, stock)) {
      stock -= bid.quantity;
      current.push_back(i);
      current_value += bid.price;
      descend(i + 1);
      current_value -= bid.price;
      current.pop_back();
      stock += bid.quantity;
    }
    descend(i + 1);
  }
};

}  // namespace

Allocation brute_force_optimum(const Auction& auction, int max_bids) {
  if (auction.num_bids() > max_bids) {
    throw std::invalid_argument(
        "brute_force_optimum: " + std::to_string(auction.num_bids()) +
        " bids exceeds the enumeration cap of " + std::to_string(max_bids));
  }
  BruteForce search(auction);
  search.descend(0);
  Allocation alloc;
  alloc.granted = std::move(search.best);
  alloc.value = search.best_value;
  return alloc;
}

}  // namespace cawd
