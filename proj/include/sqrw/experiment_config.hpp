#pragma once

// JSON description of a named experiment and its dispatcher.
//
//   {
//     "experiment": "taylor-fit",
//     "n": 8,
//     "mean_grid": [0.1, 0.2, 0.3],
//     "draws": 40,
//     "seed": 7,
//     "output": "taylor_n8.csv"
//   }
//
// Unknown keys are rejected so typos do not silently fall back to defaults.

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "csv.hpp"
#include "experiments.hpp"

namespace sqrw {

struct ExperimentSpec {
  std::string name;
  int n = 6;
  std::vector<int> ranks;
  std::vector<double> epsilons{3, 4, 5, 6, 7};
  std::vector<double> mean_grid;
  double q = 0.35;
  double q_max = 0.05;
  double eta_max = 0.996;
  double max_spread = 1.0;
  std::vector<double> dphi_deg{3, 6, 9, 12};
  int samples = 1000;
  int steps = 600;
  int draws = 40;
  int candidates = 5;
  std::optional<experiments::Window> window;
  GaussianWidth width = GaussianWidth::Variance;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  std::string output;  // empty: caller decides

  static const std::vector<std::string>& known_experiments() {
    static const std::vector<std::string> names{
        "uniform-loss-sweep", "taylor-fit", "directional-improvement", "attenuation",
        "general-bound",      "directional-bound", "phase-evolution", "stationary"};
    return names;
  }
};

inline GaussianWidth parse_width(const std::string& s) {
  if (s == "variance") return GaussianWidth::Variance;
  if (s == "stddev") return GaussianWidth::StdDev;
  throw std::invalid_argument("width must be 'variance' or 'stddev', got '" + s + "'");
}

inline std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("linspace needs count >= 1");
  std::vector<double> v;
  for (int i = 0; i < count; ++i) {
    v.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  }
  return v;
}

inline ExperimentSpec parse_experiment_spec(const nlohmann::json& j) {
  static const std::set<std::string> keys{
      "experiment", "n",       "ranks",   "epsilons", "mean_grid", "q",      "q_max",
      "eta_max",    "max_spread", "dphi_deg", "samples", "steps",   "draws",  "candidates",
      "window",     "width",   "seed",    "threads",  "output"};
  if (!j.is_object()) throw std::invalid_argument("experiment spec must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) throw std::invalid_argument("unknown experiment spec key '" + k + "'");
  }
  ExperimentSpec s;
  try {
    s.name = j.at("experiment").get<std::string>();
    if (j.contains("n")) s.n = j["n"].get<int>();
    if (j.contains("ranks")) s.ranks = j["ranks"].get<std::vector<int>>();
    if (j.contains("epsilons")) s.epsilons = j["epsilons"].get<std::vector<double>>();
    if (j.contains("mean_grid")) s.mean_grid = j["mean_grid"].get<std::vector<double>>();
    if (j.contains("q")) s.q = j["q"].get<double>();
    if (j.contains("q_max")) s.q_max = j["q_max"].get<double>();
    if (j.contains("eta_max")) s.eta_max = j["eta_max"].get<double>();
    if (j.contains("max_spread")) s.max_spread = j["max_spread"].get<double>();
    if (j.contains("dphi_deg")) s.dphi_deg = j["dphi_deg"].get<std::vector<double>>();
    if (j.contains("samples")) s.samples = j["samples"].get<int>();
    if (j.contains("steps")) s.steps = j["steps"].get<int>();
    if (j.contains("draws")) s.draws = j["draws"].get<int>();
    if (j.contains("candidates")) s.candidates = j["candidates"].get<int>();
    if (j.contains("window")) {
      const auto w = j["window"].get<std::vector<int>>();
      if (w.size() != 2) throw std::invalid_argument("window must be [lo, hi]");
      s.window = experiments::Window{w[0], w[1]};
    }
    if (j.contains("width")) s.width = parse_width(j["width"].get<std::string>());
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("threads")) s.threads = j["threads"].get<unsigned>();
    if (j.contains("output")) s.output = j["output"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment spec: ") + e.what());
  }
  const auto& names = ExperimentSpec::known_experiments();
  if (std::find(names.begin(), names.end(), s.name) == names.end()) {
    throw std::invalid_argument("unknown experiment '" + s.name + "'");
  }
  require_rank(s.n);
  for (int r : s.ranks) require_rank(r);
  return s;
}

inline ExperimentSpec load_experiment_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read experiment spec '" + path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("experiment spec '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_experiment_spec(j);
}

inline CsvTable run_experiment(const ExperimentSpec& s) {
  namespace ex = experiments;
  const std::vector<int> ranks = s.ranks.empty() ? std::vector<int>{s.n} : s.ranks;
  if (s.name == "uniform-loss-sweep") {
    return ex::to_csv(ex::sweep_uniform_loss(ranks, s.epsilons, s.threads));
  }
  if (s.name == "taylor-fit") {
    const auto grid = s.mean_grid.empty() ? linspace(0.05, 0.95, 19) : s.mean_grid;
    ex::TaylorFitOptions opt;
    opt.draws_per_point = s.draws;
    opt.candidates = s.candidates;
    opt.q_max = s.q_max;
    opt.seed = s.seed;
    opt.threads = s.threads;
    return ex::to_csv(ex::fit_taylor_B(s.n, grid, opt), s.n);
  }
  if (s.name == "directional-improvement") {
    const auto grid = s.mean_grid.empty() ? linspace(0.3, 0.7, 17) : s.mean_grid;
    return ex::to_csv(ex::directional_improvement_scan(s.n, s.q, grid, s.draws, s.seed, s.threads));
  }
  if (s.name == "attenuation") {
    return ex::to_csv(ex::attenuation_scan(s.n, s.eta_max, s.draws, s.seed, s.threads, s.max_spread));
  }
  if (s.name == "general-bound") {
    return ex::to_csv(ex::general_bound_scan(s.n, s.draws, s.seed, s.threads));
  }
  if (s.name == "directional-bound") {
    return ex::to_csv(ex::directional_bound_scan(s.n, s.draws, s.q_max, s.seed));
  }
  if (s.name == "phase-evolution") {
    return ex::to_csv(ex::phase_evolution(s.n, s.dphi_deg, s.samples, s.steps, s.seed, s.width, s.threads));
  }
  if (s.name == "stationary") {
    return ex::to_csv(ex::stationary_scan(ranks, s.dphi_deg, s.samples, s.window, s.seed, s.width, s.threads));
  }
  throw std::invalid_argument("unknown experiment '" + s.name + "'");
}

}  // namespace sqrw
