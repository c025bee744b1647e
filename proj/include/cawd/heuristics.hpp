// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cawd/lp.hpp"
#include "cawd/model.hpp"

namespace cawd {

/// Bid-ordering criteria. Each defines a total preorder over bids; ties are
/// always broken by ascending bid index, which keeps every ordering (and
/// therefore every greedy allocation and branching decision) deterministic.
enum class CriterionKind : std::uint8_t {
  SquareRoot,              // p / sqrt(sum q)
  Price,                   // p
  PricePerUnit,            // p / sum q
  NormalizedPricePerUnit,  // p / sum_j (q_j / k_j)
  PriceTimesSqrtUnits,     // p * sqrt(sum q)
  GivenOrder,              // earlier bids first
  ReverseGivenOrder,       // later bids first
  Random,                  // seeded random priority per bid
  InversePrice,            // cheapest first
  InverseSquareRoot,
  InversePricePerUnit,
  LpCoefficient,  // coefficient in the root LP optimum, descending
  LpAdaptive,     // re-solves the LP over surviving bids before each pick
};

struct Criterion {
  CriterionKind kind = CriterionKind::SquareRoot;
  std::uint64_t seed = 0;  // Random only

  static Criterion square_root() { return {CriterionKind::SquareRoot, 0}; }
  static Criterion price() { return {CriterionKind::Price, 0}; }
  static Criterion price_per_unit() { return {CriterionKind::PricePerUnit, 0}; }
  static Criterion lp_coefficient() { return {CriterionKind::LpCoefficient, 0}; }
  static Criterion lp_adaptive() { return {CriterionKind::LpAdaptive, 0}; }
  static Criterion given_order() { return {CriterionKind::GivenOrder, 0}; }
  static Criterion random(std::uint64_t seed) { return {CriterionKind::Random, seed}; }

  /// True for criteria whose scores depend on an LP solve.
  bool needs_lp() const {
    return kind == CriterionKind::LpCoefficient || kind == CriterionKind::LpAdaptive;
  }

  std::string name() const;                       // e.g. "sqrt", "random:3"
  static Criterion parse(std::string_view name);  // throws std::invalid_argument

  friend bool operator==(const Criterion&, const Criterion&) = default;
};

/// Score of one bid under a static criterion (higher = chosen earlier).
/// LP-based criteria have no per-bid closed form and are rejected here.
double score(const Criterion& criterion, const Auction& auction, std::int32_t bid);

/// Bid indices ordered by their coefficient in the root LP optimum,
/// descending, ties by ascending index.
std::vector<std::int32_t> lp_coefficient_order(const Auction& auction,
                                               const lp::LpOptions& lp_options = {});

/// Greedy allocation under one criterion: repeatedly grant the best-ranked
/// surviving bid and drop everything that no longer fits. Static criteria
/// reduce to a single sort; LpAdaptive re-solves the LP before each pick.
Allocation greedy(const Auction& auction, const Criterion& criterion,
                  const lp::LpOptions& lp_options = {});

struct InitializationReport {
  Allocation best;
  std::vector<std::pair<Criterion, Money>> values;  // per portfolio entry
};

/// Runs every criterion in the portfolio and keeps the best allocation
/// (ties resolved toward the lexicographically smallest granted set, so the
/// result does not depend on portfolio order).
InitializationReport initialize(const Auction& auction,
                                std::span<const Criterion> portfolio,
                                const lp::LpOptions& lp_options = {});

/// The default 16-member portfolio: the attractive group (square root,
/// price, price per unit, normalized price per unit, price times sqrt
/// units, LP coefficient, LP adaptive), the neutral group (given order and
/// four fixed random seeds), and the unattractive group (the inverse
/// orderings and reverse given order).
std::vector<Criterion> default_portfolio();

}  // namespace cawd
