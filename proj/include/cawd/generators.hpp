// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cawd/model.hpp"

namespace cawd::gen {

/// Benchmark instance families from the combinatorial-auction literature.
/// The single-unit Sandholm families and the CATS-style multipaths family
/// force one unit per good; the CAMUS-style family is multi-unit.
enum class Family : std::uint8_t {
  CamusMultiUnit,
  SandholmRandom,
  SandholmWeightedRandom,
  SandholmUniform,
  SandholmDecay,
  CatsMultipaths,
};

std::string family_name(Family family);
Family parse_family(std::string_view name);  // throws std::invalid_argument

/// Full description of one generated instance. Every parameter is explicit
/// so the sidecar metadata block makes experiments self-describing.
struct GeneratorSpec {
  Family family = Family::SandholmRandom;
  int num_goods = 10;
  int num_bids = 100;
  std::uint64_t seed = 0;

  // CamusMultiUnit: per-good stock range, per-good quantity cap, bundle
  // size cap, superadditive price exponent, and price factor range.
  int units_lo = 2;
  int units_hi = 5;
  int quantity_hi = 3;
  int bundle_hi = 5;
  double beta = 1.2;

  // Price factor range. Semantics per family: absolute price for
  // SandholmRandom/SandholmUniform, per-good factor for the weighted and
  // decay families, superadditive multiplier for CamusMultiUnit, and
  // per-edge factor for CatsMultipaths.
  double price_lo = 0.0;
  double price_hi = 0.0;  // 0/0 = family default

  int set_size = 3;     // SandholmUniform
  double alpha = 0.55;  // SandholmDecay add-another-good probability

  int paths_per_pair = 5;  // CatsMultipaths
  int vertices = 0;        // CatsMultipaths; 0 = derived from edge count

  /// Effective price factor range with family defaults applied.
  std::pair<double, double> price_range() const;
};

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic function of the full spec (including the seed): the same
/// spec always yields a structurally identical instance on any platform.
/// Throws SpecError when the spec cannot be satisfied.
Auction generate(const GeneratorSpec& spec);

/// Metadata comment lines for the instance file header.
std::vector<std::string> spec_metadata(const GeneratorSpec& spec);

}  // namespace cawd::gen
