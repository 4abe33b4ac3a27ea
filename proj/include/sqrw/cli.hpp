#pragma once

// Command-line front end. Exit codes: 0 success, 1 infeasible physics or
// runtime failure, 2 bad arguments.

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analytics.hpp"
#include "csv.hpp"
#include "experiment_config.hpp"
#include "experiments.hpp"
#include "noise.hpp"
#include "pathsum.hpp"
#include "walk.hpp"

namespace sqrw::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;

namespace detail {

inline void emit(const CsvTable& table, const std::string& out, std::ostream& stdout_stream) {
  if (out.empty() || out == "-") {
    write_csv(table, stdout_stream);
  } else {
    write_csv(table, out);
  }
}

inline void summarize(const std::vector<double>& p, std::ostream& diag) {
  const auto it = std::max_element(p.begin(), p.end());
  diag << "p_max=" << format_double(*it) << " t_argmax=" << (it - p.begin()) << '\n';
}

inline CsvTable series_table(const std::vector<double>& p) {
  CsvTable t({"t", "p"});
  for (std::size_t k = 0; k < p.size(); ++k) t.add(static_cast<int>(k), p[k]);
  return t;
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& diag) {
  CLI::App app{"Scattering quantum walk search on the hypercube with loss and phase noise",
               "sqrw"};
  app.require_subcommand(1);

  int n = 6;
  unsigned target = 0;
  int steps = -1;
  std::string out_path = "-";
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;

  auto common = [&](CLI::App* sub, bool needs_n = true) {
    auto* opt = sub->add_option("--n", n, "hypercube rank");
    if (needs_n) opt->required();
    sub->add_option("--target", target, "marked vertex index")->capture_default_str();
    sub->add_option("--out", out_path, "output CSV path, '-' for stdout")->capture_default_str();
  };

  auto* ideal = app.add_subcommand("ideal", "lossless search, CSV (t, p)");
  common(ideal);
  ideal->add_option("--steps", steps, "number of steps (default 30)");

  double eta = 1.0;
  auto* uloss = app.add_subcommand("uniform-loss", "uniform transmission eta, CSV (t, p)");
  common(uloss);
  uloss->add_option("--eta", eta, "transmission per step")->required();
  uloss->add_option("--steps", steps, "number of steps (default 3 t_m)");

  std::vector<double> etas;
  auto* dloss = app.add_subcommand("directional-loss",
                                   "per-direction transmissions, CSV (t, p, norm_sq)");
  common(dloss);
  dloss->add_option("--etas", etas, "comma-separated transmissions, one per direction")
      ->delimiter(',')
      ->required();
  dloss->add_option("--steps", steps, "number of steps (default 3 t_m(<eta>))");

  std::string regime = "static";
  std::string dist = "gaussian";
  std::string width = "variance";
  double dphi_deg = 6.0;
  int samples = 1000;
  auto* phase = app.add_subcommand("phase-noise", "ensemble under random phases, CSV (t, mean_p, stderr)");
  common(phase);
  phase->add_option("--regime", regime, "static | fluctuating")
      ->check(CLI::IsMember({"static", "fluctuating"}))
      ->capture_default_str();
  phase->add_option("--dist", dist, "gaussian | uniform")
      ->check(CLI::IsMember({"gaussian", "uniform"}))
      ->capture_default_str();
  phase->add_option("--dphi-deg", dphi_deg, "Gaussian spread in degrees")->capture_default_str();
  phase->add_option("--width", width, "how --dphi-deg sets the Gaussian: variance | stddev")
      ->check(CLI::IsMember({"variance", "stddev"}))
      ->capture_default_str();
  phase->add_option("--samples", samples, "ensemble size")->capture_default_str();
  phase->add_option("--steps", steps, "number of steps (default 600)");
  phase->add_option("--seed", seed, "master seed")->capture_default_str();
  phase->add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();

  auto* an = app.add_subcommand("analytics", "closed-form predictions as key=value lines");
  common(an);
  an->add_option("--eta", eta, "uniform transmission")->capture_default_str();
  an->add_option("--etas", etas, "optional per-direction transmissions for loss statistics")
      ->delimiter(',');

  int cases = 20;
  auto* oracle = app.add_subcommand("oracle-check",
                                    "path sum vs matrix evolution, CSV (case, p_matrix, p_pathsum, abs_diff)");
  common(oracle, false);
  oracle->add_option("--steps", steps, "largest step count checked (default 5)");
  oracle->add_option("--cases", cases, "random static phase fields")->capture_default_str();
  oracle->add_option("--seed", seed, "seed")->capture_default_str();

  std::string spec_path;
  std::optional<unsigned> thread_override;
  auto* exp = app.add_subcommand("experiment", "run a named experiment from a JSON spec");
  exp->add_option("--spec", spec_path, "experiment JSON file")->required();
  exp->add_option("--out", out_path, "output CSV (overrides the JSON file)");
  exp->add_option("--threads", thread_override, "worker threads (overrides the JSON file)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("sqrw");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    diag << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*ideal) {
      const WalkConfig cfg(n, target);
      const auto p = ideal_series(cfg, CoinPair::standard(n), steps < 0 ? 30 : steps);
      detail::emit(detail::series_table(p), out_path, out);
      detail::summarize(p, diag);
    } else if (*uloss) {
      const WalkConfig cfg(n, target);
      const auto loss = LossModel::uniform(eta);
      const int t_max = steps >= 0 ? steps
                                   : (eta > 0.0 ? std::max(1, 3 * analytics::optimal_time(eta, n)) : 1);
      RandomStream rng(seed);
      const auto p = run_trajectory(cfg, CoinPair::standard(n), loss, std::nullopt, t_max, rng);
      detail::emit(detail::series_table(p), out_path, out);
      detail::summarize(p, diag);
    } else if (*dloss) {
      const WalkConfig cfg(n, target);
      if (etas.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("--etas needs exactly n = " + std::to_string(n) + " values");
      }
      const auto loss = LossModel::directional(etas);
      const auto st = analytics::loss_statistics(etas);
      const int t_max = steps >= 0 ? steps : experiments::search_horizon(st.mean, n);
      const auto pair = CoinPair::standard(n);
      WalkState s = uniform_initial_state(n);
      CsvTable t({"t", "p", "norm_sq"});
      std::vector<double> p{vertex_probability(s, cfg.target)};
      t.add(0, p.back(), norm_squared(s));
      for (int k = 1; k <= t_max; ++k) {
        step_noisy(s, cfg, pair, &loss, nullptr);
        p.push_back(vertex_probability(s, cfg.target));
        t.add(k, p.back(), norm_squared(s));
      }
      detail::emit(t, out_path, out);
      detail::summarize(p, diag);
    } else if (*phase) {
      const WalkConfig cfg(n, target);
      const auto reg = regime == "static" ? PhaseRegime::Static : PhaseRegime::Fluctuating;
      const auto model =
          dist == "uniform"
              ? PhaseModel::uniform(reg)
              : PhaseModel::gaussian(reg, experiments::degrees_to_radians(dphi_deg), parse_width(width));
      const auto avg = run_ensemble(cfg, CoinPair::standard(n), std::nullopt, model,
                                    steps < 0 ? 600 : steps, samples, seed, threads);
      CsvTable t({"t", "mean_p", "stderr"});
      for (std::size_t k = 0; k < avg.size(); ++k) t.add(static_cast<int>(k), avg.mean_p[k], avg.std_error[k]);
      detail::emit(t, out_path, out);
      detail::summarize(avg.mean_p, diag);
    } else if (*an) {
      require_rank(n);
      const auto pred = analytics::predict_uniform_loss(eta, n);
      std::ostringstream os;
      os << "n=" << n << '\n'
         << "eta=" << format_double(eta) << '\n'
         << "x=" << format_double(pred.x) << '\n'
         << "epsilon=" << format_double(pred.epsilon) << '\n'
         << "x_approx=" << format_double(analytics::x_from_epsilon(pred.epsilon, n)) << '\n'
         << "t_m_real=" << format_double(analytics::optimal_time_real(pred.x, n)) << '\n'
         << "t_m=" << pred.t_m << '\n'
         << "pmax_leading=" << format_double(pred.p_max_leading) << '\n';
      if (!etas.empty()) {
        const auto st = analytics::loss_statistics(etas);
        const auto b = analytics::empirical_lower_bound_leading(st.mean, st.q, n);
        os << "mean_eta=" << format_double(st.mean) << '\n'
           << "q=" << format_double(st.q) << '\n'
           << "w=" << format_double(st.w) << '\n'
           << "general_lower_bound_leading=" << format_double(b.value) << '\n';
      }
      if (out_path.empty() || out_path == "-") {
        out << os.str();
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!(f << os.str())) throw std::runtime_error("cannot write '" + out_path + "'");
      }
    } else if (*oracle) {
      if (oracle->count("--n") == 0) n = 3;
      if (n > pathsum::kMaxRank) throw std::invalid_argument("oracle-check supports n <= 4");
      const WalkConfig cfg(n, target);
      const auto pair = CoinPair::standard(n);
      const int t_max = steps < 0 ? 5 : steps;
      RandomStream rng(seed);
      CsvTable t({"case", "p_matrix", "p_pathsum", "abs_diff"});
      double worst = 0.0;
      for (int c = 0; c < cases; ++c) {
        const auto field = sample_phase_field(n, PhaseModel::uniform(PhaseRegime::Static), rng);
        WalkState s = uniform_initial_state(n);
        for (int k = 0; k <= t_max; ++k) {
          if (k > 0) step_noisy(s, cfg, pair, nullptr, &field);
          const double pm = vertex_probability(s, cfg.target);
          const double pp =
              pathsum::pathsum_probability(cfg, pair, pathsum::PhaseHistory::constant(field, k),
                                           cfg.target, k)
                  .probability;
          worst = std::max(worst, std::abs(pm - pp));
          t.add("field" + std::to_string(c) + "_t" + std::to_string(k), pm, pp, std::abs(pm - pp));
        }
      }
      detail::emit(t, out_path, out);
      diag << "max_abs_diff=" << format_double(worst) << '\n';
      if (worst > 1e-10) return 1;
    } else if (*exp) {
      auto spec = load_experiment_spec(spec_path);
      if (thread_override) spec.threads = *thread_override;
      const auto table = run_experiment(spec);
      const std::string dest = exp->count("--out") ? out_path : spec.output;
      detail::emit(table, dest, out);
      diag << "experiment=" << spec.name << " rows=" << table.row_count() << '\n';
    }
  } catch (const InfeasibleParameter& e) {
    diag << "infeasible: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    diag << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    diag << "failed: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace sqrw::cli
