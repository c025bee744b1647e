// SPDX-License-Identifier: Apache-2.0
#include "cawd/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cawd/rng.hpp"

namespace cawd {

std::string Criterion::name() const {
  switch (kind) {
    case CriterionKind::SquareRoot: return "sqrt";
    case CriterionKind::Price: return "price";
    case CriterionKind::PricePerUnit: return "ppu";
    case CriterionKind::NormalizedPricePerUnit: return "nppu";
    case CriterionKind::PriceTimesSqrtUnits: return "psqrt";
    case CriterionKind::GivenOrder: return "given";
    case CriterionKind::ReverseGivenOrder: return "rgiven";
    case CriterionKind::Random: return "random:" + std::to_string(seed);
    case CriterionKind::InversePrice: return "invprice";
    case CriterionKind::InverseSquareRoot: return "invsqrt";
    case CriterionKind::InversePricePerUnit: return "invppu";
    case CriterionKind::LpCoefficient: return "lpcoef";
    case CriterionKind::LpAdaptive: return "lpadapt";
  }
  return "?";
}

Criterion Criterion::parse(std::string_view name) {
  if (name.rfind("random", 0) == 0) {
    Criterion c{CriterionKind::Random, 0};
    if (name.size() > 6) {
      if (name[6] != ':') throw std::invalid_argument("unknown criterion: " + std::string(name));
      c.seed = std::stoull(std::string(name.substr(7)));
    }
    return c;
  }
  static const std::pair<const char*, CriterionKind> table[] = {
      {"sqrt", CriterionKind::SquareRoot},
      {"price", CriterionKind::Price},
      {"ppu", CriterionKind::PricePerUnit},
      {"nppu", CriterionKind::NormalizedPricePerUnit},
      {"psqrt", CriterionKind::PriceTimesSqrtUnits},
      {"given", CriterionKind::GivenOrder},
      {"rgiven", CriterionKind::ReverseGivenOrder},
      {"invprice", CriterionKind::InversePrice},
      {"invsqrt", CriterionKind::InverseSquareRoot},
      {"invppu", CriterionKind::InversePricePerUnit},
      {"lpcoef", CriterionKind::LpCoefficient},
      {"lpadapt", CriterionKind::LpAdaptive},
  };
  for (const auto& [text, kind] : table) {
    if (name == text) return {kind, 0};
  }
  throw std::invalid_argument("unknown criterion: " + std::string(name));
}

double score(const Criterion& criterion, const Auction& auction, std::int32_t bid) {
  const Bid& b = auction.bids[bid];
  const double price = b.price.to_double();
  const double units = static_cast<double>(b.total_units());
  switch (criterion.kind) {
    case CriterionKind::SquareRoot: return price / std::sqrt(units);
    case CriterionKind::Price: return price;
    case CriterionKind::PricePerUnit: return price / units;
    case CriterionKind::NormalizedPricePerUnit: {
      const double normalized =
          (b.quantity.cast<double>().array() / auction.stock.cast<double>().array()).sum();
      return price / normalized;
    }
    case CriterionKind::PriceTimesSqrtUnits: return price * std::sqrt(units);
    case CriterionKind::GivenOrder: return -static_cast<double>(bid);
    case CriterionKind::ReverseGivenOrder: return static_cast<double>(bid);
    case CriterionKind::Random:
      return static_cast<double>(mix_seed(criterion.seed, static_cast<std::uint64_t>(bid)));
    case CriterionKind::InversePrice: return -price;
    case CriterionKind::InverseSquareRoot: return -price / std::sqrt(units);
    case CriterionKind::InversePricePerUnit: return -price / units;
    case CriterionKind::LpCoefficient:
    case CriterionKind::LpAdaptive:
      throw std::invalid_argument("score: " + criterion.name() +
                                  " has no static per-bid score");
  }
  return 0.0;
}

namespace {

std::vector<std::int32_t> order_by_scores(const std::vector<double>& scores) {
  std::vector<std::int32_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return scores[a] > scores[b];
  });
  return order;
}

Allocation grant_in_order(const Auction& auction, std::span<const std::int32_t> order) {
  Allocation alloc;
  StockVec stock = auction.stock;
  for (std::int32_t i : order) {
    if (fits(auction.bids[i].quantity, stock)) {
      stock -= auction.bids[i].quantity;
      alloc.granted.push_back(i);
      alloc.value += auction.bids[i].price;
    }
  }
  std::sort(alloc.granted.begin(), alloc.granted.end());
  return alloc;
}

Allocation greedy_lp_adaptive(const Auction& auction, const lp::LpOptions& lp_options) {
  Allocation alloc;
  StockVec stock = auction.stock;
  std::vector<std::int32_t> survivors(auction.num_bids());
  std::iota(survivors.begin(), survivors.end(), 0);
  while (!survivors.empty()) {
    const lp::LpSolution sol =
        lp::solve_lp(lp::build_relaxation(auction, stock, survivors), lp_options);
    int pick = 0;
    for (int c = 1; c < static_cast<int>(survivors.size()); ++c) {
      if (sol.coefficients[c] > sol.coefficients[pick]) pick = c;
    }
    const std::int32_t chosen = survivors[pick];
    stock -= auction.bids[chosen].quantity;
    alloc.granted.push_back(chosen);
    alloc.value += auction.bids[chosen].price;
    std::vector<std::int32_t> next;
    next.reserve(survivors.size());
    for (std::int32_t i : survivors) {
      if (i != chosen && fits(auction.bids[i].quantity, stock)) next.push_back(i);
    }
    survivors = std::move(next);
  }
  std::sort(alloc.granted.begin(), alloc.granted.end());
  return alloc;
}

}  // namespace

std::vector<std::int32_t> lp_coefficient_order(const Auction& auction,
                                               const lp::LpOptions& lp_options) {
  std::vector<std::int32_t> all(auction.num_bids());
  std::iota(all.begin(), all.end(), 0);
  if (all.empty()) return all;
  const lp::LpSolution sol =
      lp::solve_lp(lp::build_relaxation(auction, auction.stock, all), lp_options);
  std::vector<double> scores(sol.coefficients.data(),
                             sol.coefficients.data() + sol.coefficients.size());
  return order_by_scores(scores);
}

Allocation greedy(const Auction& auction, const Criterion& criterion,
                  const lp::LpOptions& lp_options) {
  if (criterion.kind == CriterionKind::LpAdaptive) {
    return greedy_lp_adaptive(auction, lp_options);
  }
  if (criterion.kind == CriterionKind::LpCoefficient) {
    return grant_in_order(auction, lp_coefficient_order(auction, lp_options));
  }
  std::vector<double> scores(auction.num_bids());
  for (std::int32_t i = 0; i < auction.num_bids(); ++i) {
    scores[i] = score(criterion, auction, i);
  }
  return grant_in_order(auction, order_by_scores(scores));
}

InitializationReport initialize(const Auction& auction,
                                std::span<const Criterion> portfolio,
                                const lp::LpOptions& lp_options) {
  if (portfolio.empty()) {
    throw std::invalid_argument("initialize: portfolio must not be empty");
  }
  InitializationReport report;
  bool first = true;
  for (const Criterion& criterion : portfolio) {
    Allocation candidate = greedy(auction, criterion, lp_options);
    report.values.emplace_back(criterion, candidate.value);
    const bool better =
        first || candidate.value > report.best.value ||
        (candidate.value == report.best.value &&
         std::lexicographical_compare(candidate.granted.begin(), candidate.granted.end(),
                                      report.best.granted.begin(),
                                      report.best.granted.end()));
    if (better) report.best = std::move(candidate);
    first = false;
  }
  return report;
}

std::vector<Criterion> default_portfolio() {
  return {
      {CriterionKind::SquareRoot, 0},
      {CriterionKind::Price, 0},
      {CriterionKind::PricePerUnit, 0},
      {CriterionKind::NormalizedPricePerUnit, 0},
      {CriterionKind::PriceTimesSqrtUnits, 0},
      {CriterionKind::LpCoefficient, 0},
      {CriterionKind::LpAdaptive, 0},
      {CriterionKind::GivenOrder, 0},
      {CriterionKind::Random, 1},
      {CriterionKind::Random, 2},
      {CriterionKind::Random, 3},
      {CriterionKind::Random, 4},
      {CriterionKind::InversePrice, 0},
      {CriterionKind::InverseSquareRoot, 0},
      {CriterionKind::InversePricePerUnit, 0},
      {CriterionKind::ReverseGivenOrder, 0},
  };
}

}  // namespace cawd
