// SPDX-License-Identifier: Apache-2.0
#include "cawd/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cawd/rng.hpp"

namespace cawd::bench {

namespace {

constexpr const char* kResultsSchema = "# schema cawd-results-v1";
constexpr const char* kAggregateSchema = "# schema cawd-aggregate-v1";

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream iss(value);
  while (std::getline(iss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

BoundKind parse_bound(const std::string& name) {
  if (name == "lp") return BoundKind::Lp;
  if (name == "extnorm") return BoundKind::ExtendedNorm;
  throw std::invalid_argument("unknown bound kind: " + name);
}

std::string bound_name(BoundKind bound) {
  return bound == BoundKind::Lp ? "lp" : "extnorm";
}

}  // namespace

std::string SolverSetup::slug() const {
  return branching.name() + "-" + bound_name(bound);
}

ExperimentPlan parse_plan(const std::string& text) {
  ExperimentPlan plan;
  std::vector<std::string> branchings = {"sqrt"};
  std::vector<std::string> bounds = {"lp"};
  bool have_family = false, have_bids = false;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key, value;
    if (!(ls >> key)) continue;
    if (!(ls >> value)) {
      throw std::invalid_argument("plan line " + std::to_string(line_no) +
                                  ": key '" + key + "' has no value");
    }
    std::string extra;
    if (ls >> extra) {
      throw std::invalid_argument("plan line " + std::to_string(line_no) +
                                  ": unexpected token '" + extra + "'");
    }
    try {
      if (key == "master_seed") plan.master_seed = std::stoull(value);
      else if (key == "replications") plan.replications = std::stoi(value);
      else if (key == "family") { plan.base.family = gen::parse_family(value); have_family = true; }
      else if (key == "goods") plan.base.num_goods = std::stoi(value);
      else if (key == "bids") {
        for (const std::string& b : split_list(value)) plan.bids_grid.push_back(std::stoi(b));
        have_bids = !plan.bids_grid.empty();
      }
      else if (key == "units_lo") plan.base.units_lo = std::stoi(value);
      else if (key == "units_hi") plan.base.units_hi = std::stoi(value);
      else if (key == "quantity_hi") plan.base.quantity_hi = std::stoi(value);
      else if (key == "bundle_hi") plan.base.bundle_hi = std::stoi(value);
      else if (key == "beta") plan.base.beta = std::stod(value);
      else if (key == "price_lo") plan.base.price_lo = std::stod(value);
      else if (key == "price_hi") plan.base.price_hi = std::stod(value);
      else if (key == "set_size") plan.base.set_size = std::stoi(value);
      else if (key == "alpha") plan.base.alpha = std::stod(value);
      else if (key == "paths_per_pair") plan.base.paths_per_pair = std::stoi(value);
      else if (key == "vertices") plan.base.vertices = std::stoi(value);
      else if (key == "branching") branchings = split_list(value);
      else if (key == "bound") bounds = split_list(value);
      else if (key == "node_limit") plan.node_limit = std::stoull(value);
      else if (key == "time_limit") plan.time_limit_seconds = std::stod(value);
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("plan line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_family) throw std::invalid_argument("plan: missing 'family'");
  if (!have_bids) throw std::invalid_argument("plan: missing 'bids'");
  if (plan.replications < 1) throw std::invalid_argument("plan: replications must be >= 1");
  for (const std::string& b : branchings) {
    for (const std::string& k : bounds) {
      plan.setups.push_back({Criterion::parse(b), parse_bound(k)});
    }
  }
  return plan;
}

ExperimentPlan parse_plan_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_plan(buffer.str());
}

std::string ResultRow::csv_non_timing() const {
  std::ostringstream os;
  os << family << ',' << goods << ',' << bids << ',' << replication << ',' << seed
     << ',' << branching << ',' << bound << ',' << init_value.str() << ','
     << opt_value.str() << ',' << format_double(root_lp) << ','
     << format_double(root_extnorm) << ',' << nodes << ',' << lp_calls << ','
     << lp_calls_saved << ',' << prunes << ',' << (limit_hit ? 1 : 0) << ','
     << error;
  return os.str();
}

namespace {

ResultRow run_one(const Auction& auction, const gen::GeneratorSpec& spec,
                  int replication, const SolverSetup& setup,
                  const ExperimentPlan& plan, double root_lp, double root_extnorm) {
  ResultRow row;
  row.family = gen::family_name(spec.family);
  row.goods = spec.num_goods;
  row.bids = spec.num_bids;
  row.replication = replication;
  row.seed = spec.seed;
  row.branching = setup.branching.name();
  row.bound = bound_name(setup.bound);
  row.root_lp = root_lp;
  row.root_extnorm = root_extnorm;
  try {
    SolverConfig config;
    config.branching = setup.branching;
    config.bound = setup.bound;
    config.node_limit = plan.node_limit;
    config.time_limit_seconds = plan.time_limit_seconds;
    const SolveResult result = solve(auction, config);
    row.init_value = result.init.best.value;
    row.opt_value = result.best.value;
    row.nodes = result.stats.nodes_visited;
    row.lp_calls = result.stats.lp_calls;
    row.lp_calls_saved = result.stats.lp_calls_saved;
    row.prunes = result.stats.prunes;
    row.limit_hit = !result.proven_optimal;
    row.wall_seconds = result.stats.wall_seconds;

    // Dominance chain: init <= opt <= root LP <= extended norm, allowing
    // 1e-6 relative slack on the floating-point sides.
    auto leq = [](double a, double b) { return a <= b + 1e-6 * std::abs(b) + 1e-9; };
    if (row.init_value > row.opt_value ||
        !leq(row.opt_value.to_double(), root_lp) || !leq(root_lp, root_extnorm)) {
      row.error = "dominance-violation";
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

struct Aggregate {
  int count = 0;
  int limit_hits = 0;
  std::map<std::string, std::vector<double>> metrics;
};

const std::vector<std::pair<std::string, double (*)(const ResultRow&)>>& metric_table() {
  static const std::vector<std::pair<std::string, double (*)(const ResultRow&)>> table = {
      {"init", [](const ResultRow& r) { return r.init_value.to_double(); }},
      {"opt", [](const ResultRow& r) { return r.opt_value.to_double(); }},
      {"root_lp", [](const ResultRow& r) { return r.root_lp; }},
      {"root_extnorm", [](const ResultRow& r) { return r.root_extnorm; }},
      {"nodes", [](const ResultRow& r) { return static_cast<double>(r.nodes); }},
      {"lp_calls", [](const ResultRow& r) { return static_cast<double>(r.lp_calls); }},
      {"lp_calls_saved",
       [](const ResultRow& r) { return static_cast<double>(r.lp_calls_saved); }},
      {"prunes", [](const ResultRow& r) { return static_cast<double>(r.prunes); }},
      {"wall_s", [](const ResultRow& r) { return r.wall_seconds; }},
  };
  return table;
}

std::pair<double, double> mean_stddev(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var = xs.size() > 1 ? var / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var)};
}

}  // namespace

std::string results_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << kResultsSchema << "\n";
  os << "family,goods,bids,replication,seed,branching,bound,init,opt,root_lp,"
        "root_extnorm,nodes,lp_calls,lp_calls_saved,prunes,limit_hit,error,wall_s\n";
  for (const ResultRow& row : rows) {
    os << row.csv_non_timing() << ',' << format_double(row.wall_seconds) << "\n";
  }
  return os.str();
}

std::string aggregate_csv(const std::vector<ResultRow>& rows) {
  // Keyed by (bids, branching, bound); families never mix within a plan.
  std::map<std::tuple<int, std::string, std::string>, Aggregate> cells;
  for (const ResultRow& row : rows) {
    Aggregate& agg = cells[{row.bids, row.branching, row.bound}];
    ++agg.count;
    if (row.limit_hit) ++agg.limit_hits;
    for (const auto& [name, fn] : metric_table()) agg.metrics[name].push_back(fn(row));
  }
  std::ostringstream os;
  os << kAggregateSchema << "\n";
  os << "bids,branching,bound,runs,limit_hits";
  for (const auto& [name, fn] : metric_table()) os << ',' << name << "_mean," << name << "_std";
  os << "\n";
  for (const auto& [key, agg] : cells) {
    os << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
       << agg.count << ',' << agg.limit_hits;
    for (const auto& [name, fn] : metric_table()) {
      const auto [mean, stddev] = mean_stddev(agg.metrics.at(name));
      os << ',' << format_double(mean) << ',' << format_double(stddev);
    }
    os << "\n";
  }
  return os.str();
}

PlanResult run_plan(const ExperimentPlan& plan, const std::filesystem::path& out_dir) {
  PlanResult result;
  for (std::size_t cell = 0; cell < plan.bids_grid.size(); ++cell) {
    for (int rep = 0; rep < plan.replications; ++rep) {
      gen::GeneratorSpec spec = plan.base;
      spec.num_bids = plan.bids_grid[cell];
      spec.seed = mix_seed(plan.master_seed, cell, static_cast<std::uint64_t>(rep));
      Auction auction;
      double root_lp = 0.0, root_extnorm = 0.0;
      std::string generation_error;
      try {
        auction = gen::generate(spec);
        std::vector<std::int32_t> all(auction.num_bids());
        std::iota(all.begin(), all.end(), 0);
        root_lp =
            lp::solve_lp(lp::build_relaxation(auction, auction.stock, all)).objective_value;
        root_extnorm = lp::extended_norm_bound(auction, auction.stock, all);
      } catch (const std::exception& e) {
        generation_error = e.what();
      }
      for (const SolverSetup& setup : plan.setups) {
        if (!generation_error.empty()) {
          ResultRow row;
          row.family = gen::family_name(spec.family);
          row.goods = spec.num_goods;
          row.bids = spec.num_bids;
          row.replication = rep;
          row.seed = spec.seed;
          row.branching = setup.branching.name();
          row.bound = bound_name(setup.bound);
          row.error = generation_error;
          result.rows.push_back(std::move(row));
        } else {
          result.rows.push_back(
              run_one(auction, spec, rep, setup, plan, root_lp, root_extnorm));
        }
        if (!result.rows.back().error.empty()) result.ok = false;
      }
    }
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    {
      std::ofstream out(out_dir / "results.csv");
      out << results_csv(result.rows);
    }
    {
      std::ofstream out(out_dir / "aggregate.csv");
      out << aggregate_csv(result.rows);
    }
    // One plot-data file per (metric, setup): rows of "bids mean stddev".
    for (const auto& [metric, fn] : metric_table()) {
      for (const SolverSetup& setup : plan.setups) {
        std::map<int, std::vector<double>> by_bids;
        for (const ResultRow& row : result.rows) {
          if (row.branching == setup.branching.name() &&
              row.bound == bound_name(setup.bound) && row.error.empty()) {
            by_bids[row.bids].push_back(fn(row));
          }
        }
        std::string slug = setup.slug();
        std::replace(slug.begin(), slug.end(), ':', '_');
        std::ofstream out(out_dir / ("plot_" + metric + "__" + slug + ".dat"));
        out << "# x=bids metric=" << metric << " setup=" << setup.slug() << "\n";
        for (const auto& [bids, values] : by_bids) {
          const auto [mean, stddev] = mean_stddev(values);
          out << bids << ' ' << format_double(mean) << ' ' << format_double(stddev)
              << "\n";
        }
      }
    }
  }
  return result;
}

}  // namespace cawd::bench
