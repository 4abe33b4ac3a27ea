#pragma once

// Figure-level numerical experiments: uniform-loss sweeps, Taylor-coefficient
// fits for direction-dependent loss, improvement and attenuation scans, and
// phase-noise ensembles.
//
// Throughout, p_max of a loss model is the largest simulated target
// probability over the search window t in [1, 3 t_m(<eta>)]. The step t = 0
// is excluded: nothing has been searched yet and every model gives 2^-n there.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "analytics.hpp"
#include "csv.hpp"
#include "fit.hpp"
#include "noise.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "state.hpp"
#include "walk.hpp"

namespace sqrw::experiments {

struct Peak {
  double p = 0.0;
  int t = 0;
};

// Largest entry of p over [t_lo, p.size()); earliest index wins ties.
inline Peak peak(const std::vector<double>& p, int t_lo = 1) {
  Peak best{-1.0, -1};
  for (int t = t_lo; t < static_cast<int>(p.size()); ++t) {
    if (p[static_cast<std::size_t>(t)] > best.p) best = {p[static_cast<std::size_t>(t)], t};
  }
  if (best.t < 0) throw std::invalid_argument("peak: empty search window");
  return best;
}

inline int search_horizon(double mean_eta, int n) {
  if (mean_eta <= 0.0) return 1;
  return std::max(1, 3 * analytics::optimal_time(std::min(mean_eta, 1.0), n));
}

// Target probability under uniform transmission eta is eta^(2t) times the
// lossless value, so one ideal series serves every eta.
class UniformReference {
 public:
  explicit UniformReference(int n, Vertex target = 0)
      : cfg_(n, target), pair_(CoinPair::standard(n)) {}

  int rank() const { return cfg_.n; }

  const std::vector<double>& ideal(int t_max) {
    if (static_cast<int>(ideal_.size()) <= t_max) ideal_ = ideal_series(cfg_, pair_, t_max);
    return ideal_;
  }

  Peak pmax(double eta, int horizon) {
    const auto& base = ideal(horizon);
    Peak best{-1.0, -1};
    for (int t = 1; t <= horizon; ++t) {
      const double p = std::pow(eta, 2 * t) * base[static_cast<std::size_t>(t)];
      if (p > best.p) best = {p, t};
    }
    return best;
  }

  Peak pmax(double eta) { return pmax(eta, search_horizon(eta, cfg_.n)); }

 private:
  WalkConfig cfg_;
  CoinPair pair_;
  std::vector<double> ideal_;
};

inline std::vector<double> loss_series(int n, const LossModel& loss, int t_max) {
  const WalkConfig cfg(n, 0);
  RandomStream unused(0);
  return run_trajectory(cfg, CoinPair::standard(n), loss, std::nullopt, t_max, unused);
}

inline Peak directional_pmax(int n, const std::vector<double>& etas, int horizon) {
  return peak(loss_series(n, LossModel::directional(etas), horizon), 1);
}

// Transmission sets with prescribed mean and RMS deviation: uniform draws on
// [0, 1], recentred and rescaled, rejected when any entry leaves [0, 1].
inline std::optional<std::vector<double>> sample_transmissions(int n, double mean, double q,
                                                               RandomStream& rng,
                                                               int attempts = 200) {
  if (!(mean >= 0.0 && mean <= 1.0) || !(q >= 0.0)) {
    throw InfeasibleParameter("transmission mean must be in [0, 1] and q >= 0");
  }
  if (q == 0.0) return std::vector<double>(static_cast<std::size_t>(n), mean);
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int a = 0; a < attempts; ++a) {
    double sum = 0.0;
    for (auto& v : u) sum += (v = rng.uniform());
    const double m = sum / n;
    double ss = 0.0;
    for (auto& v : u) {
      v -= m;
      ss += v * v;
    }
    const double rms = std::sqrt(ss / n);
    if (rms == 0.0) continue;
    bool ok = true;
    std::vector<double> etas(u.size());
    for (std::size_t d = 0; d < u.size(); ++d) {
      etas[d] = mean + u[d] * (q / rms);
      if (etas[d] < 0.0 || etas[d] > 1.0) ok = false;
    }
    if (ok) return etas;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Uniform loss

struct UniformSweepRow {
  int n;
  double epsilon;
  double eta;
  double x;
  int t_m;
  int t_argmax;
  double p_sim;
  double p_theory;
};

inline std::vector<UniformSweepRow> sweep_uniform_loss(const std::vector<int>& ns,
                                                       const std::vector<double>& epsilons,
                                                       unsigned threads = 1) {
  struct Job {
    int n;
    double eps;
  };
  std::vector<Job> jobs;
  for (int n : ns)
    for (double e : epsilons) {
      if (!(e > 0.0)) throw InfeasibleParameter("epsilon must be > 0");
      jobs.push_back({n, e});
    }
  std::vector<UniformSweepRow> rows(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const auto [n, eps] = jobs[i];
    const double eta = std::isinf(eps) ? 1.0 : 1.0 - std::exp2(-eps);
    const auto pred = analytics::predict_uniform_loss(eta, n);
    const int horizon = std::max(1, 3 * pred.t_m);
    const auto pk = peak(loss_series(n, LossModel::uniform(eta), horizon), 1);
    rows[i] = {n, eps, eta, pred.x, pred.t_m, pk.t, pk.p, pred.p_max_leading};
  });
  return rows;
}

inline CsvTable to_csv(const std::vector<UniformSweepRow>& rows) {
  CsvTable t({"n", "epsilon", "eta", "x", "t_m", "t_argmax", "p_max_sim", "p_max_theory"});
  for (const auto& r : rows) t.add(r.n, r.epsilon, r.eta, r.x, r.t_m, r.t_argmax, r.p_sim, r.p_theory);
  return t;
}

// ---------------------------------------------------------------------------
// Second-order Taylor coefficient B of p_max({eta}) in Q^2

struct TaylorFitOptions {
  int draws_per_point = 40;
  int candidates = 5;    // keep the lowest-|W| of this many sets per draw
  double q_max = 0.05;   // upper end of the sampled Q range
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct FitResult {
  double mean_eta = 0.0;
  double b = 0.0;
  double confidence = 0.0;  // standard error of b
  int points = 0;
  int t_uniform = 0;  // argmax step of the uniform model at mean_eta
  bool straddles = false;  // some draw peaks at a step other than t_uniform
  bool degenerate = false;
};

inline std::vector<FitResult> fit_taylor_B(int n, const std::vector<double>& mean_grid,
                                           const TaylorFitOptions& opt = {}) {
  if (n > 10) throw std::invalid_argument("fit_taylor_B supports n <= 10");
  if (opt.draws_per_point < 30) throw std::invalid_argument("fit_taylor_B needs >= 30 draws per point");

  struct Draw {
    std::size_t point;
    std::vector<double> etas;
    double q2;
  };
  std::vector<Draw> draws;
  std::vector<double> caps(mean_grid.size());
  for (std::size_t i = 0; i < mean_grid.size(); ++i) {
    const double m = mean_grid[i];
    if (!(m > 0.0 && m <= 1.0)) throw InfeasibleParameter("mean transmission must be in (0, 1]");
    RandomStream rng(opt.seed, i);
    caps[i] = std::min(opt.q_max, 0.5 * std::min(m, 1.0 - m));
    if (caps[i] <= 0.0) continue;
    for (int k = 0; k < opt.draws_per_point; ++k) {
      const double q = rng.uniform(0.2 * caps[i], caps[i]);
      std::optional<std::vector<double>> best;
      double best_w = std::numeric_limits<double>::infinity();
      for (int c = 0; c < opt.candidates; ++c) {
        auto etas = sample_transmissions(n, m, q, rng);
        if (!etas) continue;
        const double w = std::abs(analytics::loss_statistics(*etas).w);
        if (w < best_w) {
          best_w = w;
          best = std::move(etas);
        }
      }
      if (!best) continue;
      const auto st = analytics::loss_statistics(*best);
      draws.push_back({i, std::move(*best), st.q * st.q});
    }
  }

  UniformReference ref(n);
  std::vector<Peak> uniform(mean_grid.size());
  for (std::size_t i = 0; i < mean_grid.size(); ++i) uniform[i] = ref.pmax(mean_grid[i]);

  std::vector<double> dp(draws.size());
  std::vector<int> t_dir(draws.size());
  parallel_for(draws.size(), opt.threads, [&](std::size_t j) {
    const auto& d = draws[j];
    const double m = mean_grid[d.point];
    const auto pk = directional_pmax(n, d.etas, search_horizon(m, n));
    dp[j] = pk.p - uniform[d.point].p;
    t_dir[j] = pk.t;
  });

  std::vector<FitResult> out;
  for (std::size_t i = 0; i < mean_grid.size(); ++i) {
    std::vector<double> xs, ys;
    bool straddles = false;
    for (std::size_t j = 0; j < draws.size(); ++j) {
      if (draws[j].point != i) continue;
      xs.push_back(draws[j].q2);
      ys.push_back(dp[j]);
      if (t_dir[j] != uniform[i].t) straddles = true;
    }
    FitResult r;
    r.mean_eta = mean_grid[i];
    r.t_uniform = uniform[i].t;
    r.straddles = straddles;
    r.points = static_cast<int>(xs.size());
    const double max_q2 = xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
    const auto f = fit::fit_through_origin(xs, ys);
    r.degenerate = f.degenerate || max_q2 < 1e-12;
    if (!r.degenerate) {
      r.b = f.slope;
      r.confidence = f.std_error;
    }
    out.push_back(r);
  }
  return out;
}

// Leading run of grid points whose draws all peak at the first point's
// uniform optimal step. B jumps where the optimal step changes, and a point
// whose draws straddle such a change already sits on the jump.
inline std::size_t leading_plateau_length(const std::vector<FitResult>& fits) {
  if (fits.empty()) return 0;
  const int t0 = fits.front().t_uniform;
  std::size_t k = 0;
  while (k < fits.size() && fits[k].t_uniform == t0 && !fits[k].straddles) ++k;
  return k;
}

// Grid indices i where B jumps relative to i - 1 by more than `factor` times
// the median jump. Descriptive only.
inline std::vector<std::size_t> discontinuities(const std::vector<FitResult>& fits,
                                                double factor = 5.0) {
  std::vector<double> jumps;
  for (std::size_t i = 1; i < fits.size(); ++i) jumps.push_back(std::abs(fits[i].b - fits[i - 1].b));
  std::vector<std::size_t> out;
  if (jumps.empty()) return out;
  const double med = fit::median(jumps);
  for (std::size_t i = 1; i < fits.size(); ++i) {
    if (jumps[i - 1] > factor * med && jumps[i - 1] > 0.0) out.push_back(i);
  }
  return out;
}

inline CsvTable to_csv(const std::vector<FitResult>& fits, int n) {
  CsvTable t({"mean_eta", "b", "b_stderr", "b_times_2pow_n", "points", "t_uniform", "straddles",
              "degenerate"});
  for (const auto& f : fits) {
    t.add(f.mean_eta, f.b, f.confidence, std::ldexp(f.b, n), f.points, f.t_uniform, f.straddles,
          f.degenerate);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Directional loss versus uniform loss with the same mean

struct ImprovementRow {
  double mean_eta;
  double q;
  double w;
  bool feasible;
  double p_directional;
  double p_uniform;
  double improvement_pct;
};

inline std::vector<ImprovementRow> directional_improvement_scan(
    int n, double q_target, const std::vector<double>& mean_grid, int draws_per_point,
    std::uint64_t seed, unsigned threads = 1) {
  struct Job {
    double mean;
    std::optional<std::vector<double>> etas;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < mean_grid.size(); ++i) {
    RandomStream rng(seed, i);
    for (int k = 0; k < draws_per_point; ++k) {
      jobs.push_back({mean_grid[i], sample_transmissions(n, mean_grid[i], q_target, rng)});
    }
  }
  UniformReference ref(n);
  std::vector<Peak> uni;
  for (const auto& j : jobs) uni.push_back(j.mean > 0.0 ? ref.pmax(j.mean) : Peak{0.0, 1});
  std::vector<ImprovementRow> rows(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const auto& j = jobs[i];
    if (!j.etas) {
      rows[i] = {j.mean, q_target, 0.0, false, 0.0, uni[i].p, 0.0};
      return;
    }
    const auto st = analytics::loss_statistics(*j.etas);
    const double p = directional_pmax(n, *j.etas, search_horizon(j.mean, n)).p;
    rows[i] = {j.mean, st.q, st.w, true, p, uni[i].p, 100.0 * (p - uni[i].p) / uni[i].p};
  });
  return rows;
}

inline CsvTable to_csv(const std::vector<ImprovementRow>& rows) {
  CsvTable t({"mean_eta", "q", "w", "feasible", "p_max_directional", "p_max_uniform",
              "improvement_pct"});
  for (const auto& r : rows) {
    t.add(r.mean_eta, r.q, r.w, r.feasible, r.p_directional, r.p_uniform, r.improvement_pct);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Attenuating some directions of a uniform eta_max model

struct AttenuationRow {
  double q;
  double mean_eta;
  double eta_max;
  double p_directional;
  double p_uniform_max;
  double rel_diff_pct;
};

// One direction keeps eta_top = eta_max +- tolerance; the others are drawn
// uniformly from [eta_top - s, eta_top] with the spread s itself uniform on
// [0, max_spread].
inline std::vector<AttenuationRow> attenuation_scan(int n, double eta_max, int draws,
                                                    std::uint64_t seed, unsigned threads = 1,
                                                    double max_spread = 1.0,
                                                    double tolerance = 0.001) {
  if (!(eta_max > 0.0 && eta_max <= 1.0)) throw InfeasibleParameter("eta_max must be in (0, 1]");
  std::vector<std::vector<double>> sets;
  RandomStream rng(seed, 0);
  for (int k = 0; k < draws; ++k) {
    const double top = std::min(1.0, eta_max + rng.uniform(-tolerance, tolerance));
    const double spread = rng.uniform(0.0, max_spread);
    const auto keep = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n));
    std::vector<double> e(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
      e[static_cast<std::size_t>(d)] = d == keep ? top : std::max(0.0, top - spread * rng.uniform());
    }
    sets.push_back(std::move(e));
  }
  std::vector<AttenuationRow> rows(sets.size());
  parallel_for(sets.size(), threads, [&](std::size_t i) {
    const auto& e = sets[i];
    const auto st = analytics::loss_statistics(e);
    const double top = *std::max_element(e.begin(), e.end());
    UniformReference ref(n);
    const double pu = ref.pmax(top).p;
    const double pd = directional_pmax(n, e, search_horizon(st.mean, n)).p;
    rows[i] = {st.q, st.mean, top, pd, pu, 100.0 * (pd - pu) / pu};
  });
  return rows;
}

inline CsvTable to_csv(const std::vector<AttenuationRow>& rows) {
  CsvTable t({"q", "mean_eta", "eta_max", "p_max_directional", "p_max_uniform_eta_max",
              "rel_diff_pct"});
  for (const auto& r : rows) t.add(r.q, r.mean_eta, r.eta_max, r.p_directional, r.p_uniform_max, r.rel_diff_pct);
  return t;
}

// ---------------------------------------------------------------------------
// General lower bound p_max({eta}) >= p_max(<eta>) + 2^-n Q^2

struct GeneralBoundRow {
  double mean_eta;
  double q;
  double w;
  double p_directional;
  int t_directional;
  double p_uniform;
  int t_uniform;
  double bound;
  bool holds;
};

// i.i.d. uniform transmissions on [lo, hi] per direction.
inline std::vector<GeneralBoundRow> general_bound_scan(int n, int draws, std::uint64_t seed,
                                                       unsigned threads = 1, double lo = 0.0,
                                                       double hi = 1.0) {
  if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) throw InfeasibleParameter("need 0 <= lo <= hi <= 1");
  RandomStream rng(seed, 0);
  std::vector<std::vector<double>> sets;
  for (int k = 0; k < draws; ++k) {
    std::vector<double> e(static_cast<std::size_t>(n));
    for (auto& v : e) v = rng.uniform(lo, hi);
    sets.push_back(std::move(e));
  }
  std::vector<GeneralBoundRow> rows(sets.size());
  parallel_for(sets.size(), threads, [&](std::size_t i) {
    const auto st = analytics::loss_statistics(sets[i]);
    UniformReference ref(n);
    const int horizon = search_horizon(st.mean, n);
    const Peak pu = st.mean > 0.0 ? ref.pmax(st.mean, horizon) : Peak{0.0, 1};
    const Peak pd = directional_pmax(n, sets[i], horizon);
    const auto b = analytics::empirical_lower_bound(pu.p, st.q, n);
    const bool holds = pd.p >= b.value - tol::accumulated * b.value;
    rows[i] = {st.mean, st.q, st.w, pd.p, pd.t, pu.p, pu.t, b.value, holds};
  });
  return rows;
}

inline CsvTable to_csv(const std::vector<GeneralBoundRow>& rows) {
  CsvTable t({"mean_eta", "q", "w", "p_max_directional", "t_directional", "p_max_uniform",
              "t_uniform", "bound", "holds"});
  for (const auto& r : rows) {
    t.add(r.mean_eta, r.q, r.w, r.p_directional, r.t_directional, r.p_uniform, r.t_uniform,
          r.bound, r.holds);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Step-wise lower bound for mildly non-uniform loss

struct StepBoundRow {
  int set;
  double mean_eta;
  double q;
  int t;
  double p_sim;
  std::optional<double> bound;
};

// `sets` random transmission sets with mean uniform in [mean_lo, mean_hi] and
// Q uniform in [0, q_max]; every step t <= t_m(<eta>) is compared.
inline std::vector<StepBoundRow> directional_bound_scan(int n, int sets, double q_max,
                                                        std::uint64_t seed, double mean_lo = 0.85,
                                                        double mean_hi = 0.99) {
  RandomStream rng(seed, 0);
  const WalkConfig cfg(n, 0);
  const auto pair = CoinPair::standard(n);
  std::vector<StepBoundRow> rows;
  int made = 0;
  while (made < sets) {
    const double m = rng.uniform(mean_lo, mean_hi);
    const double q = rng.uniform(0.0, q_max);
    const auto etas = sample_transmissions(n, m, q, rng);
    if (!etas) continue;
    const auto st = analytics::loss_statistics(*etas);
    const int tm = analytics::optimal_time(st.mean, n);
    const auto ideal = ideal_series(cfg, pair, tm);
    const auto sim = loss_series(n, LossModel::directional(*etas), tm);
    for (int t = 0; t <= tm; ++t) {
      rows.push_back({made, st.mean, st.q, t, sim[static_cast<std::size_t>(t)],
                      analytics::directional_lower_bound(*etas, t, ideal[static_cast<std::size_t>(t)])});
    }
    ++made;
  }
  return rows;
}

inline CsvTable to_csv(const std::vector<StepBoundRow>& rows) {
  CsvTable t({"set", "mean_eta", "q", "t", "p_sim", "bound", "slack"});
  for (const auto& r : rows) {
    if (r.bound) {
      t.add(r.set, r.mean_eta, r.q, r.t, r.p_sim, *r.bound, r.p_sim - *r.bound);
    } else {
      t.add(r.set, r.mean_eta, r.q, r.t, r.p_sim, "", "");
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Phase noise

inline double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

struct PhaseEvolution {
  double dphi_deg;
  AveragedSeries static_series;
  AveragedSeries fluctuating_series;
};

inline std::vector<PhaseEvolution> phase_evolution(int n, const std::vector<double>& dphi_deg,
                                                   int samples, int t_max, std::uint64_t seed,
                                                   GaussianWidth width = GaussianWidth::Variance,
                                                   unsigned threads = 1) {
  if (samples < 100) throw std::invalid_argument("phase_evolution needs >= 100 samples");
  const WalkConfig cfg(n, 0);
  const auto pair = CoinPair::standard(n);
  std::vector<PhaseEvolution> out;
  for (std::size_t i = 0; i < dphi_deg.size(); ++i) {
    const double rad = degrees_to_radians(dphi_deg[i]);
    const auto st = PhaseModel::gaussian(PhaseRegime::Static, rad, width);
    const auto fl = PhaseModel::gaussian(PhaseRegime::Fluctuating, rad, width);
    out.push_back({dphi_deg[i],
                   run_ensemble(cfg, pair, std::nullopt, st, t_max, samples,
                                derive_seed(seed, 2 * i), threads),
                   run_ensemble(cfg, pair, std::nullopt, fl, t_max, samples,
                                derive_seed(seed, 2 * i + 1), threads)});
  }
  return out;
}

inline CsvTable to_csv(const std::vector<PhaseEvolution>& evo) {
  CsvTable t({"dphi_deg", "regime", "t", "mean_p", "stderr"});
  for (const auto& e : evo) {
    for (const auto& [name, s] : {std::pair{"static", &e.static_series},
                                  std::pair{"fluctuating", &e.fluctuating_series}}) {
      for (std::size_t k = 0; k < s->size(); ++k) {
        t.add(e.dphi_deg, name, static_cast<int>(k), s->mean_p[k], s->std_error[k]);
      }
    }
  }
  return t;
}

// Log-linear fit of |mean_p(t) - 2^-n| over [t_lo, t_hi].
inline fit::LineFit decay_fit(const std::vector<double>& mean_p, int n, int t_lo, int t_hi) {
  if (t_lo < 0 || t_hi >= static_cast<int>(mean_p.size()) || t_hi <= t_lo) {
    throw std::invalid_argument("decay_fit: window outside series");
  }
  const double base = std::ldexp(1.0, -n);
  std::vector<double> ts, ys;
  for (int t = t_lo; t <= t_hi; ++t) {
    const double dev = std::abs(mean_p[static_cast<std::size_t>(t)] - base);
    if (dev == 0.0) continue;
    ts.push_back(t);
    ys.push_back(std::log(dev));
  }
  return fit::fit_line(ts, ys);
}

// Same fit applied to the upper envelope max_{s >= t} |mean_p(s) - 2^-n|
// (the envelope is taken within the window).
inline fit::LineFit envelope_decay_fit(const std::vector<double>& mean_p, int n, int t_lo,
                                       int t_hi) {
  if (t_lo < 0 || t_hi >= static_cast<int>(mean_p.size()) || t_hi <= t_lo) {
    throw std::invalid_argument("envelope_decay_fit: window outside series");
  }
  const double base = std::ldexp(1.0, -n);
  std::vector<double> env(mean_p.size(), 0.0);
  double run = 0.0;
  for (int t = t_hi; t >= t_lo; --t) {
    run = std::max(run, std::abs(mean_p[static_cast<std::size_t>(t)] - base));
    env[static_cast<std::size_t>(t)] = run;
  }
  std::vector<double> ts, ys;
  for (int t = t_lo; t <= t_hi; ++t) {
    if (env[static_cast<std::size_t>(t)] == 0.0) continue;
    ts.push_back(t);
    ys.push_back(std::log(env[static_cast<std::size_t>(t)]));
  }
  return fit::fit_line(ts, ys);
}

struct Window {
  int lo;
  int hi;
};

inline Window default_stationary_window(int n) {
  const double s = analytics::sqrt_half_space(n);
  return {static_cast<int>(std::lround(25.0 * s)), static_cast<int>(std::lround(50.0 * s))};
}

inline double window_mean(const std::vector<double>& p, Window w) {
  if (w.lo < 0 || w.hi >= static_cast<int>(p.size()) || w.hi < w.lo) {
    throw std::invalid_argument("window outside series");
  }
  double s = 0.0;
  for (int t = w.lo; t <= w.hi; ++t) s += p[static_cast<std::size_t>(t)];
  return s / (w.hi - w.lo + 1);
}

struct StationaryRow {
  int n;
  double dphi_deg;
  Window window;
  double value;
  double std_error;  // spread of per-sample time averages
};

inline std::vector<StationaryRow> stationary_scan(const std::vector<int>& ns,
                                                  const std::vector<double>& dphi_deg,
                                                  int samples, std::optional<Window> window,
                                                  std::uint64_t seed,
                                                  GaussianWidth width = GaussianWidth::Variance,
                                                  unsigned threads = 1) {
  std::vector<StationaryRow> rows;
  std::uint64_t tag = 0;
  for (int n : ns) {
    const Window w = window.value_or(default_stationary_window(n));
    if (w.hi - w.lo < 50) throw std::invalid_argument("stationary window must span >= 50 steps");
    const WalkConfig cfg(n, 0);
    const auto pair = CoinPair::standard(n);
    for (double deg : dphi_deg) {
      const auto model =
          PhaseModel::gaussian(PhaseRegime::Static, degrees_to_radians(deg), width);
      const auto runs = run_ensemble_series(cfg, pair, std::nullopt, model, w.hi, samples,
                                            derive_seed(seed, tag++), threads);
      std::vector<double> per_sample;
      per_sample.reserve(runs.size());
      for (const auto& r : runs) per_sample.push_back(window_mean(r, w));
      const double count = static_cast<double>(per_sample.size());
      double sum = 0.0;
      for (double v : per_sample) sum += v;
      const double mean = sum / count;
      double ss = 0.0;
      for (double v : per_sample) ss += (v - mean) * (v - mean);
      const double se = per_sample.size() > 1 ? std::sqrt(ss / (count - 1.0) / count) : 0.0;
      rows.push_back({n, deg, w, mean, se});
    }
  }
  return rows;
}

inline CsvTable to_csv(const std::vector<StationaryRow>& rows) {
  CsvTable t({"n", "dphi_deg", "window_lo", "window_hi", "stationary", "stderr"});
  for (const auto& r : rows) t.add(r.n, r.dphi_deg, r.window.lo, r.window.hi, r.value, r.std_error);
  return t;
}

}  // namespace sqrw::experiments
