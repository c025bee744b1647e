// SPDX-License-Identifier: Apache-2.0
#include "cawd/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "cawd/rng.hpp"

namespace cawd::gen {

namespace {

constexpr int kResampleCap = 1000;

Money quantize_price(double raw) {
  Money m = Money::from_double(raw);
  // Prices must be strictly positive; clamp to one grid unit.
  return std::max(m, Money::from_scaled(1));
}

// k distinct values from [0, n) via partial Fisher-Yates, deterministic.
std::vector<int> sample_distinct(Xoshiro256StarStar& rng, int n, int k) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

Bid make_single_unit_bid(int num_goods, const std::vector<int>& goods, Money price) {
  Bid bid;
  bid.quantity = Eigen::VectorXi::Zero(num_goods);
  for (int g : goods) bid.quantity[g] = 1;
  bid.price = price;
  return bid;
}

Auction generate_camus(const GeneratorSpec& spec, Xoshiro256StarStar& rng) {
  const auto [price_lo, price_hi] = spec.price_range();
  Auction auction;
  auction.stock.resize(spec.num_goods);
  for (int j = 0; j < spec.num_goods; ++j) {
    auction.stock[j] = rng.uniform_int(spec.units_lo, spec.units_hi);
  }
  const int bundle_cap = std::min(spec.bundle_hi, spec.num_goods);
  auction.bids.reserve(spec.num_bids);
  for (int i = 0; i < spec.num_bids; ++i) {
    Bid bid;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= kResampleCap) {
        throw SpecError("camus: could not sample a feasible bid");
      }
      const int size = rng.uniform_int(1, bundle_cap);
      const std::vector<int> goods = sample_distinct(rng, spec.num_goods, size);
      bid.quantity = Eigen::VectorXi::Zero(spec.num_goods);
      for (int g : goods) {
        bid.quantity[g] = rng.uniform_int(1, std::min(spec.quantity_hi, auction.stock[g]));
      }
      const double units = static_cast<double>(bid.quantity.sum());
      bid.price = quantize_price(std::pow(units, spec.beta) *
                                 rng.uniform(price_lo, price_hi));
      if (fits(bid.quantity, auction.stock)) break;
    }
    auction.bids.push_back(std::move(bid));
  }
  return auction;
}

Auction generate_sandholm(const GeneratorSpec& spec, Xoshiro256StarStar& rng) {
  const auto [price_lo, price_hi] = spec.price_range();
  Auction auction;
  auction.stock = Eigen::VectorXi::Ones(spec.num_goods);
  auction.bids.reserve(spec.num_bids);
  for (int i = 0; i < spec.num_bids; ++i) {
    std::vector<int> goods;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= kResampleCap) {
        throw SpecError(family_name(spec.family) + ": could not sample a non-empty bid");
      }
      goods.clear();
      switch (spec.family) {
        case Family::SandholmRandom:
        case Family::SandholmWeightedRandom:
          // Uniformly random non-empty subset of the goods.
          for (int g = 0; g < spec.num_goods; ++g) {
            if (rng.next() & 1u) goods.push_back(g);
          }
          break;
        case Family::SandholmUniform:
          goods = sample_distinct(rng, spec.num_goods, spec.set_size);
          break;
        case Family::SandholmDecay: {
          std::vector<int> pool(spec.num_goods);
          std::iota(pool.begin(), pool.end(), 0);
          int taken = 0;
          auto take_one = [&] {
            const int j =
                taken + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                            spec.num_goods - taken)));
            std::swap(pool[taken], pool[j]);
            goods.push_back(pool[taken]);
            ++taken;
          };
          take_one();
          while (taken < spec.num_goods && rng.unit() < spec.alpha) take_one();
          break;
        }
        default:
          break;
      }
      if (!goods.empty()) break;
    }
    std::sort(goods.begin(), goods.end());
    double raw = rng.uniform(price_lo, price_hi);
    if (spec.family == Family::SandholmWeightedRandom ||
        spec.family == Family::SandholmDecay) {
      raw *= static_cast<double>(goods.size());
    }
    auction.bids.push_back(
        make_single_unit_bid(spec.num_goods, goods, quantize_price(raw)));
  }
  return auction;
}

// Random connected simple graph with `edges` edges; goods are the edges.
struct PathGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<std::pair<int, int>>> adjacency;  // (neighbor, edge id)
};

PathGraph build_graph(const GeneratorSpec& spec, Xoshiro256StarStar& rng) {
  const int e = spec.num_goods;
  int v = spec.vertices;
  if (v == 0) {
    v = std::max(2, (3 * e) / 5 + 1);
    while (static_cast<long>(v) * (v - 1) / 2 < e) ++v;
  }
  // The graph must be simple (no parallel edges) and connected.
  const long max_edges = static_cast<long>(v) * (v - 1) / 2;
  if (e < v - 1 || max_edges < e) {
    throw SpecError("multipaths: cannot place " + std::to_string(e) + " edges on " +
                    std::to_string(v) + " vertices");
  }
  PathGraph graph;
  graph.vertices = v;
  std::set<std::pair<int, int>> used;
  for (int u = 1; u < v; ++u) {
    const int w = static_cast<int>(rng.below(static_cast<std::uint64_t>(u)));
    used.emplace(std::min(u, w), std::max(u, w));
  }
  while (static_cast<int>(used.size()) < e) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
    const int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
    if (a == b) continue;
    used.emplace(std::min(a, b), std::max(a, b));
  }
  graph.edges.assign(used.begin(), used.end());
  graph.adjacency.resize(v);
  for (int id = 0; id < e; ++id) {
    const auto [a, b] = graph.edges[id];
    graph.adjacency[a].emplace_back(b, id);
    graph.adjacency[b].emplace_back(a, id);
  }
  return graph;
}

// Randomized depth-first path from source to sink; the graph is connected,
// so one always exists.
std::vector<int> random_path(const PathGraph& graph, Xoshiro256StarStar& rng,
                             int source, int sink) {
  std::vector<bool> visited(graph.vertices, false);
  std::vector<int> path_edges;
  struct Step {
    int vertex;
    std::vector<std::pair<int, int>> neighbors;
    std::size_t next = 0;
  };
  std::vector<Step> walk;
  auto enter = [&](int vertex) {
    visited[vertex] = true;
    Step step{vertex, graph.adjacency[vertex], 0};
    for (std::size_t i = step.neighbors.size(); i > 1; --i) {
      std::swap(step.neighbors[i - 1], step.neighbors[rng.below(i)]);
    }
    walk.push_back(std::move(step));
  };
  enter(source);
  while (!walk.empty()) {
    Step& step = walk.back();
    if (step.vertex == sink) break;
    if (step.next >= step.neighbors.size()) {
      walk.pop_back();
      if (!path_edges.empty()) path_edges.pop_back();
      continue;
    }
    const auto [neighbor, edge_id] = step.neighbors[step.next++];
    if (visited[neighbor]) continue;
    path_edges.push_back(edge_id);
    enter(neighbor);
  }
  return path_edges;
}

Auction generate_multipaths(const GeneratorSpec& spec, Xoshiro256StarStar& rng) {
  const auto [price_lo, price_hi] = spec.price_range();
  const PathGraph graph = build_graph(spec, rng);
  Auction auction;
  auction.stock = Eigen::VectorXi::Ones(spec.num_goods);
  auction.bids.reserve(spec.num_bids);
  while (static_cast<int>(auction.bids.size()) < spec.num_bids) {
    const int source = static_cast<int>(rng.below(graph.vertices));
    int sink = source;
    while (sink == source) sink = static_cast<int>(rng.below(graph.vertices));
    for (int k = 0; k < spec.paths_per_pair &&
                    static_cast<int>(auction.bids.size()) < spec.num_bids;
         ++k) {
      const std::vector<int> edges = random_path(graph, rng, source, sink);
      std::vector<int> goods(edges.begin(), edges.end());
      std::sort(goods.begin(), goods.end());
      const double length = static_cast<double>(goods.size());
      auction.bids.push_back(make_single_unit_bid(
          spec.num_goods, goods,
          quantize_price(length * rng.uniform(price_lo, price_hi))));
    }
  }
  return auction;
}

}  // namespace

std::string family_name(Family family) {
  switch (family) {
    case Family::CamusMultiUnit: return "camus";
    case Family::SandholmRandom: return "sandholm-random";
    case Family::SandholmWeightedRandom: return "sandholm-weighted";
    case Family::SandholmUniform: return "sandholm-uniform";
    case Family::SandholmDecay: return "sandholm-decay";
    case Family::CatsMultipaths: return "multipaths";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  static const std::pair<const char*, Family> table[] = {
      {"camus", Family::CamusMultiUnit},
      {"sandholm-random", Family::SandholmRandom},
      {"sandholm-weighted", Family::SandholmWeightedRandom},
      {"sandholm-uniform", Family::SandholmUniform},
      {"sandholm-decay", Family::SandholmDecay},
      {"multipaths", Family::CatsMultipaths},
  };
  for (const auto& [text, family] : table) {
    if (name == text) return family;
  }
  throw std::invalid_argument("unknown family: " + std::string(name));
}

std::pair<double, double> GeneratorSpec::price_range() const {
  if (price_lo != 0.0 || price_hi != 0.0) return {price_lo, price_hi};
  switch (family) {
    case Family::CamusMultiUnit: return {0.5, 1.5};
    case Family::CatsMultipaths: return {1.0, 2.0};
    default: return {0.0, 1.0};
  }
}

Auction generate(const GeneratorSpec& spec) {
  if (spec.num_goods < 1) throw SpecError("spec: num_goods must be >= 1");
  if (spec.num_bids < 0) throw SpecError("spec: num_bids must be >= 0");
  if (spec.family == Family::SandholmUniform &&
      (spec.set_size < 1 || spec.set_size > spec.num_goods)) {
    throw SpecError("spec: set_size must be in [1, num_goods]");
  }
  if (spec.family == Family::SandholmDecay && (spec.alpha <= 0.0 || spec.alpha >= 1.0)) {
    throw SpecError("spec: alpha must be in (0, 1)");
  }
  if (spec.family == Family::CamusMultiUnit &&
      (spec.units_lo < 1 || spec.units_hi < spec.units_lo)) {
    throw SpecError("spec: units range must satisfy 1 <= lo <= hi");
  }
  const auto [price_lo, price_hi] = spec.price_range();
  if (price_hi < price_lo) throw SpecError("spec: price range is empty");

  Xoshiro256StarStar rng(mix_seed(spec.seed, static_cast<std::uint64_t>(spec.family)));
  Auction auction;
  switch (spec.family) {
    case Family::CamusMultiUnit:
      auction = generate_camus(spec, rng);
      break;
    case Family::SandholmRandom:
    case Family::SandholmWeightedRandom:
    case Family::SandholmUniform:
    case Family::SandholmDecay:
      auction = generate_sandholm(spec, rng);
      break;
    case Family::CatsMultipaths:
      auction = generate_multipaths(spec, rng);
      break;
  }
  validate(auction);
  return auction;
}

std::vector<std::string> spec_metadata(const GeneratorSpec& spec) {
  const auto [price_lo, price_hi] = spec.price_range();
  std::string line = "generator family=" + family_name(spec.family) +
                     " goods=" + std::to_string(spec.num_goods) +
                     " bids=" + std::to_string(spec.num_bids) +
                     " seed=" + std::to_string(spec.seed);
  std::string params = "params price_lo=" + std::to_string(price_lo) +
                       " price_hi=" + std::to_string(price_hi);
  switch (spec.family) {
    case Family::CamusMultiUnit:
      params += " units_lo=" + std::to_string(spec.units_lo) +
                " units_hi=" + std::to_string(spec.units_hi) +
                " quantity_hi=" + std::to_string(spec.quantity_hi) +
                " bundle_hi=" + std::to_string(spec.bundle_hi) +
                " beta=" + std::to_string(spec.beta);
      break;
    case Family::SandholmUniform:
      params += " set_size=" + std::to_string(spec.set_size);
      break;
    case Family::SandholmDecay:
      params += " alpha=" + std::to_string(spec.alpha);
      break;
    case Family::CatsMultipaths:
      params += " paths_per_pair=" + std::to_string(spec.paths_per_pair) +
                " vertices=" + std::to_string(spec.vertices);
      break;
    default:
      break;
  }
  return {"format cawd-instance-v1", line, params};
}

}  // namespace cawd::gen
