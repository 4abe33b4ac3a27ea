#pragma once

// Photon loss and phase errors.
//
// A noisy step is D S F C': conditional coin, phase shifts on every
// (port, vertex) mode, shift, then per-direction transmission. Loss
// transmissions act on amplitudes, so a transmission eta removes 1 - eta^2 of
// the probability carried by that mode.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "rng.hpp"
#include "state.hpp"
#include "walk.hpp"

namespace sqrw {

class LossModel {
 public:
  enum class Kind { Uniform, Directional };

  static LossModel uniform(double eta) {
    check_transmission(eta);
    LossModel m;
    m.kind_ = Kind::Uniform;
    m.eta_ = eta;
    return m;
  }

  static LossModel directional(std::vector<double> etas) {
    if (etas.empty()) throw std::invalid_argument("directional loss needs at least one eta");
    for (double e : etas) check_transmission(e);
    LossModel m;
    m.kind_ = Kind::Directional;
    m.etas_ = std::move(etas);
    return m;
  }

  Kind kind() const { return kind_; }
  bool is_uniform() const { return kind_ == Kind::Uniform; }
  double uniform_eta() const { return eta_; }
  const std::vector<double>& etas() const { return etas_; }

  double transmission(int d) const {
    return kind_ == Kind::Uniform ? eta_ : etas_[static_cast<std::size_t>(d)];
  }

  void check_rank(int n) const {
    if (kind_ == Kind::Directional && etas_.size() != static_cast<std::size_t>(n)) {
      throw std::invalid_argument("directional loss has " + std::to_string(etas_.size()) +
                                  " transmissions, rank is " + std::to_string(n));
    }
  }

 private:
  static void check_transmission(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw InfeasibleParameter("transmission coefficient " + std::to_string(eta) +
                                " outside [0, 1]");
    }
  }

  Kind kind_ = Kind::Uniform;
  double eta_ = 1.0;
  std::vector<double> etas_;
};

enum class PhaseRegime { Fluctuating, Static };
enum class PhaseDistribution { Gaussian, Uniform };

// How a Gaussian width Delta-phi (radians) maps to the normal law.
// Variance: sigma^2 = Delta-phi. StdDev: sigma = Delta-phi.
enum class GaussianWidth { Variance, StdDev };

// Per-(d, x) i.i.d. phase law: zero-mean Gaussian, or uniform on [0, 2 pi).
class PhaseModel {
 public:
  static PhaseModel gaussian_sigma(PhaseRegime regime, double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
      throw InfeasibleParameter("phase standard deviation must be finite and >= 0");
    }
    PhaseModel m;
    m.regime_ = regime;
    m.dist_ = PhaseDistribution::Gaussian;
    m.sigma_ = sigma;
    return m;
  }

  static PhaseModel gaussian(PhaseRegime regime, double dphi_rad,
                             GaussianWidth width = GaussianWidth::Variance) {
    if (!(dphi_rad >= 0.0) || !std::isfinite(dphi_rad)) {
      throw InfeasibleParameter("phase spread must be finite and >= 0");
    }
    return gaussian_sigma(regime, width == GaussianWidth::Variance ? std::sqrt(dphi_rad)
                                                                   : dphi_rad);
  }

  static PhaseModel uniform(PhaseRegime regime) {
    PhaseModel m;
    m.regime_ = regime;
    m.dist_ = PhaseDistribution::Uniform;
    return m;
  }

  PhaseRegime regime() const { return regime_; }
  PhaseDistribution distribution() const { return dist_; }
  double sigma() const { return sigma_; }

  double draw(RandomStream& rng) const {
    if (dist_ == PhaseDistribution::Uniform) return 2.0 * std::numbers::pi * rng.uniform();
    if (sigma_ == 0.0) return 0.0;
    return sigma_ * rng.normal();
  }

 private:
  PhaseRegime regime_ = PhaseRegime::Static;
  PhaseDistribution dist_ = PhaseDistribution::Gaussian;
  double sigma_ = 0.0;
};

// Unwrapped phase per (d, x), same layout as WalkState. The phasors
// e^{i phi} are computed once at construction.
class PhaseField {
 public:
  PhaseField() = default;
  PhaseField(int n, std::vector<double> phases) : n_(n), phases_(std::move(phases)) {
    require_rank(n);
    if (phases_.size() != static_cast<std::size_t>(n) * vertex_count(n)) {
      throw std::invalid_argument("phase field needs n * 2^n entries");
    }
    phasors_.reserve(phases_.size());
    for (double p : phases_) {
      if (!std::isfinite(p)) throw std::invalid_argument("phase field entries must be finite");
      phasors_.push_back(std::polar(1.0, p));
    }
  }

  static PhaseField zero(int n) {
    return PhaseField(n, std::vector<double>(static_cast<std::size_t>(n) * vertex_count(n)));
  }

  int rank() const { return n_; }
  std::size_t size() const { return phases_.size(); }
  double phase(int d, Vertex x) const { return phases_[WalkState::index(n_, d, x)]; }
  const std::vector<double>& phases() const { return phases_; }
  const std::vector<Complex>& phasors() const { return phasors_; }

 private:
  int n_ = 0;
  std::vector<double> phases_;
  std::vector<Complex> phasors_;
};

inline PhaseField sample_phase_field(int n, const PhaseModel& model, RandomStream& rng) {
  require_rank(n);
  std::vector<double> phases(static_cast<std::size_t>(n) * vertex_count(n));
  for (auto& p : phases) p = model.draw(rng);
  return PhaseField(n, std::move(phases));
}

inline void apply_loss(WalkState& s, const LossModel& loss) {
  loss.check_rank(s.rank());
  if (loss.is_uniform()) {
    const double eta = loss.uniform_eta();
    if (eta == 1.0) return;
    for (auto& a : s.amplitudes()) a *= eta;
    return;
  }
  const auto nv = static_cast<Vertex>(s.vertices());
  const auto& etas = loss.etas();
  for (Vertex x = 0; x < nv; ++x) {
    auto b = s.block(x);
    for (std::size_t d = 0; d < b.size(); ++d) b[d] *= etas[d];
  }
}

inline void apply_phase_field(WalkState& s, const PhaseField& field) {
  if (field.rank() != s.rank()) throw std::invalid_argument("phase field rank mismatch");
  auto amps = s.amplitudes();
  const auto& ph = field.phasors();
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= ph[i];
}

// D S F C'. A null channel is the identity.
inline void step_noisy(WalkState& s, const WalkConfig& cfg, const CoinPair& pair,
                       const LossModel* loss, const PhaseField* field) {
  apply_marked_coin(s, cfg, pair);
  if (field != nullptr) apply_phase_field(s, *field);
  apply_shift(s);
  if (loss != nullptr) apply_loss(s, *loss);
}

// Target-probability series p(0..t_max) of one realisation. Static phases are
// drawn once before the first step; fluctuating phases are redrawn every step.
inline std::vector<double> run_trajectory(const WalkConfig& cfg, const CoinPair& pair,
                                          const std::optional<LossModel>& loss,
                                          const std::optional<PhaseModel>& phases, int t_max,
                                          RandomStream& rng) {
  if (t_max < 0) throw std::invalid_argument("t_max must be non-negative");
  if (loss) loss->check_rank(cfg.n);
  const LossModel* lp = loss ? &*loss : nullptr;

  WalkState s = uniform_initial_state(cfg.n);
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(t_max) + 1);
  p.push_back(vertex_probability(s, cfg.target));

  std::optional<PhaseField> field;
  if (phases && phases->regime() == PhaseRegime::Static) {
    field = sample_phase_field(cfg.n, *phases, rng);
  }
  for (int t = 0; t < t_max; ++t) {
    if (phases && phases->regime() == PhaseRegime::Fluctuating) {
      field = sample_phase_field(cfg.n, *phases, rng);
    }
    step_noisy(s, cfg, pair, lp, field ? &*field : nullptr);
    p.push_back(vertex_probability(s, cfg.target));
  }
  return p;
}

struct AveragedSeries {
  std::vector<double> mean_p;  // indexed by t
  std::vector<double> std_error;  // standard error of the mean
  int samples = 0;

  std::size_t size() const { return mean_p.size(); }
};

// Per-sample series; sample k uses RandomStream(master_seed, k).
inline std::vector<std::vector<double>> run_ensemble_series(
    const WalkConfig& cfg, const CoinPair& pair, const std::optional<LossModel>& loss,
    const std::optional<PhaseModel>& phases, int t_max, int samples,
    std::uint64_t master_seed, unsigned threads = 1) {
  if (samples < 1) throw std::invalid_argument("ensemble needs at least one sample");
  std::vector<std::vector<double>> runs(static_cast<std::size_t>(samples));
  parallel_for(runs.size(), threads, [&](std::size_t k) {
    RandomStream rng(master_seed, k);
    runs[k] = run_trajectory(cfg, pair, loss, phases, t_max, rng);
  });
  return runs;
}

// Mean and standard error, accumulated in sample order so the result does not
// depend on the thread count.
inline AveragedSeries average_series(const std::vector<std::vector<double>>& runs) {
  AveragedSeries out;
  out.samples = static_cast<int>(runs.size());
  if (runs.empty()) return out;
  const std::size_t len = runs.front().size();
  out.mean_p.assign(len, 0.0);
  out.std_error.assign(len, 0.0);
  const double count = static_cast<double>(runs.size());
  for (std::size_t t = 0; t < len; ++t) {
    double sum = 0.0;
    for (const auto& r : runs) sum += r[t];
    const double mean = sum / count;
    double ss = 0.0;
    for (const auto& r : runs) ss += (r[t] - mean) * (r[t] - mean);
    out.mean_p[t] = mean;
    out.std_error[t] = runs.size() > 1 ? std::sqrt(ss / (count - 1.0) / count) : 0.0;
  }
  return out;
}

inline AveragedSeries run_ensemble(const WalkConfig& cfg, const CoinPair& pair,
                                   const std::optional<LossModel>& loss,
                                   const std::optional<PhaseModel>& phases, int t_max,
                                   int samples, std::uint64_t master_seed,
                                   unsigned threads = 1) {
  return average_series(
      run_ensemble_series(cfg, pair, loss, phases, t_max, samples, master_seed, threads));
}

}  // namespace sqrw
