#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include <sqrw/noise.hpp>

using namespace sqrw;

namespace {

WalkState random_state(int n, RandomStream& rng) {
  WalkState s(n);
  for (auto& a : s.amplitudes()) a = Complex(rng.normal(), rng.normal());
  const double norm = std::sqrt(norm_squared(s));
  for (auto& a : s.amplitudes()) a /= norm;
  return s;
}

}  // namespace

TEST(LossModel, Validation) {
  EXPECT_THROW(LossModel::uniform(-0.1), InfeasibleParameter);
  EXPECT_THROW(LossModel::uniform(1.5), InfeasibleParameter);
  EXPECT_THROW(LossModel::directional({0.5, 1.2}), InfeasibleParameter);
  EXPECT_NO_THROW(LossModel::uniform(0.0));
  auto s = uniform_initial_state(3);
  EXPECT_THROW(apply_loss(s, LossModel::directional({1.0, 0.5})), std::invalid_argument);
}

TEST(ApplyLoss, Examples) {
  RandomStream rng(1);
  const auto s = random_state(3, rng);

  auto a = s;
  apply_loss(a, LossModel::uniform(1.0));
  EXPECT_EQ(a, s);

  auto b = s;
  apply_loss(b, LossModel::uniform(0.0));
  EXPECT_EQ(norm_squared(b), 0.0);

  auto c = WalkState::basis(2, 1, 2);
  apply_loss(c, LossModel::directional({1.0, 0.5}));
  EXPECT_EQ(c.at(1, 2), Complex(0.5));
}

TEST(SamplePhaseField, ZeroSigmaGivesZeros) {
  RandomStream rng(2);
  const auto f = sample_phase_field(4, PhaseModel::gaussian_sigma(PhaseRegime::Static, 0.0), rng);
  for (double p : f.phases()) EXPECT_EQ(p, 0.0);
}

TEST(SamplePhaseField, Deterministic) {
  const auto model = PhaseModel::gaussian_sigma(PhaseRegime::Fluctuating, 0.3);
  RandomStream a(77), b(77);
  EXPECT_EQ(sample_phase_field(5, model, a).phases(), sample_phase_field(5, model, b).phases());
}

TEST(SamplePhaseField, GaussianMeanWithinFiveStandardErrors) {
  const double sigma = 0.1;
  const auto model = PhaseModel::gaussian_sigma(PhaseRegime::Static, sigma);
  RandomStream rng(3);
  const int count = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < count; ++i) {
    const double v = model.draw(rng);
    sum += v;
    sq += v * v;
  }
  EXPECT_LE(std::abs(sum / count), 5.0 / std::sqrt(double(count)) * sigma);
  EXPECT_NEAR(std::sqrt(sq / count), sigma, 0.01 * sigma);
}

TEST(SamplePhaseField, UniformOnFullCircle) {
  const auto model = PhaseModel::uniform(PhaseRegime::Static);
  RandomStream rng(4);
  double sum = 0.0;
  const int count = 100000;
  for (int i = 0; i < count; ++i) {
    const double v = model.draw(rng);
    ASSERT_GE(v, 0.0);
    ASSERT_LT(v, 2 * std::numbers::pi);
    sum += v;
  }
  // Uniform on [0, 2 pi): sd = 2 pi / sqrt(12).
  EXPECT_NEAR(sum / count, std::numbers::pi, 5 * 2 * std::numbers::pi / std::sqrt(12.0 * count));
}

TEST(PhaseModel, WidthConventions) {
  EXPECT_DOUBLE_EQ(PhaseModel::gaussian(PhaseRegime::Static, 0.04).sigma(), 0.2);
  EXPECT_DOUBLE_EQ(PhaseModel::gaussian(PhaseRegime::Static, 0.04, GaussianWidth::StdDev).sigma(), 0.04);
  EXPECT_THROW(PhaseModel::gaussian_sigma(PhaseRegime::Static, -1.0), InfeasibleParameter);
}

TEST(PhaseField, Validation) {
  EXPECT_THROW(PhaseField(2, {0.0, 0.0}), std::invalid_argument);
  std::vector<double> bad(8, 0.0);
  bad[3] = std::nan("");
  EXPECT_THROW(PhaseField(2, bad), std::invalid_argument);
  auto s = uniform_initial_state(3);
  EXPECT_THROW(apply_phase_field(s, PhaseField::zero(2)), std::invalid_argument);
}

TEST(ApplyPhaseField, Examples) {
  RandomStream rng(5);
  const auto s = random_state(3, rng);

  auto a = s;
  apply_phase_field(a, PhaseField::zero(3));
  EXPECT_EQ(a, s);

  auto b = s;
  apply_phase_field(b, PhaseField(3, std::vector<double>(24, std::numbers::pi)));
  for (std::size_t i = 0; i < 24; ++i) EXPECT_NEAR(std::abs(b.amplitudes()[i] + s.amplitudes()[i]), 0.0, 1e-15);
  for (Vertex x = 0; x < 8; ++x) EXPECT_NEAR(vertex_probability(b, x), vertex_probability(s, x), 1e-15);

  auto c = WalkState::basis(2, 0, 0);
  std::vector<double> ph(8, 0.0);
  ph[0] = std::numbers::pi / 2;
  apply_phase_field(c, PhaseField(2, ph));
  EXPECT_NEAR(std::abs(c.at(0, 0) - Complex(0, 1)), 0.0, 1e-15);
}

TEST(StepNoisy, Examples) {
  RandomStream rng(6);
  const WalkConfig cfg(4, 3);
  const auto pair = CoinPair::standard(4);
  const auto s = random_state(4, rng);

  auto ideal = s;
  step_ideal(ideal, cfg, pair);
  auto plain = s;
  step_noisy(plain, cfg, pair, nullptr, nullptr);
  EXPECT_EQ(plain, ideal);

  const auto loss = LossModel::uniform(0.8);
  auto lossy = s;
  step_noisy(lossy, cfg, pair, &loss, nullptr);
  EXPECT_NEAR(norm_squared(lossy), 0.64, 1e-12);

  const auto dir = LossModel::directional({0.9, 0.7, 1.0, 0.5});
  const auto zero = PhaseField::zero(4);
  auto with_zero = s, without = s;
  step_noisy(with_zero, cfg, pair, &dir, &zero);
  step_noisy(without, cfg, pair, &dir, nullptr);
  EXPECT_EQ(with_zero, without);
}

TEST(RunTrajectory, Examples) {
  const WalkConfig cfg(6, 11);
  const auto pair = CoinPair::standard(6);
  RandomStream rng(7);
  const auto zero_sigma = PhaseModel::gaussian_sigma(PhaseRegime::Fluctuating, 0.0);
  const auto p = run_trajectory(cfg, pair, std::nullopt, zero_sigma, 30, rng);
  const auto ideal = ideal_series(cfg, pair, 30);
  ASSERT_EQ(p.size(), 31u);
  EXPECT_DOUBLE_EQ(p[0], 1.0 / 64);
  for (std::size_t t = 0; t < p.size(); ++t) EXPECT_NEAR(p[t], ideal[t], 1e-15);

  const auto model = PhaseModel::gaussian_sigma(PhaseRegime::Static, 0.4);
  RandomStream a(99), b(99);
  EXPECT_EQ(run_trajectory(cfg, pair, std::nullopt, model, 40, a),
            run_trajectory(cfg, pair, std::nullopt, model, 40, b));

  EXPECT_THROW(run_trajectory(cfg, pair, std::nullopt, std::nullopt, -1, rng), std::invalid_argument);
}

// A static trajectory equals stepping by hand with one field drawn up front.
TEST(RunTrajectory, StaticRegimeReusesOneField) {
  const WalkConfig cfg(4, 5);
  const auto pair = CoinPair::standard(4);
  const auto model = PhaseModel::gaussian_sigma(PhaseRegime::Static, 0.7);
  RandomStream a(12), b(12);
  const auto p = run_trajectory(cfg, pair, std::nullopt, model, 20, a);
  const auto field = sample_phase_field(4, model, b);
  auto s = uniform_initial_state(4);
  for (int t = 1; t <= 20; ++t) {
    step_noisy(s, cfg, pair, nullptr, &field);
    EXPECT_DOUBLE_EQ(p[static_cast<std::size_t>(t)], vertex_probability(s, cfg.target));
  }
}

TEST(RunTrajectory, FluctuatingRegimeRedrawsEachStep) {
  const WalkConfig cfg(4, 5);
  const auto pair = CoinPair::standard(4);
  const auto model = PhaseModel::gaussian_sigma(PhaseRegime::Fluctuating, 0.7);
  RandomStream a(12), b(12);
  const auto p = run_trajectory(cfg, pair, std::nullopt, model, 20, a);
  auto s = uniform_initial_state(4);
  for (int t = 1; t <= 20; ++t) {
    const auto field = sample_phase_field(4, model, b);
    step_noisy(s, cfg, pair, nullptr, &field);
    EXPECT_DOUBLE_EQ(p[static_cast<std::size_t>(t)], vertex_probability(s, cfg.target));
  }
}

TEST(RunEnsemble, SingleSample) {
  const WalkConfig cfg(5, 0);
  const auto pair = CoinPair::standard(5);
  const auto model = PhaseModel::gaussian_sigma(PhaseRegime::Static, 0.5);
  const auto avg = run_ensemble(cfg, pair, std::nullopt, model, 25, 1, 31);
  RandomStream rng(31, 0);
  const auto p = run_trajectory(cfg, pair, std::nullopt, model, 25, rng);
  EXPECT_EQ(avg.mean_p, p);
  for (double e : avg.std_error) EXPECT_EQ(e, 0.0);
  EXPECT_EQ(avg.samples, 1);
  EXPECT_THROW(run_ensemble(cfg, pair, std::nullopt, model, 25, 0, 31), std::invalid_argument);
}

TEST(RunEnsemble, ZeroSigmaMatchesIdeal) {
  const WalkConfig cfg(5, 2);
  const auto pair = CoinPair::standard(5);
  const auto model = PhaseModel::gaussian_sigma(PhaseRegime::Fluctuating, 0.0);
  const auto avg = run_ensemble(cfg, pair, std::nullopt, model, 30, 20, 8);
  const auto ideal = ideal_series(cfg, pair, 30);
  for (std::size_t t = 0; t < ideal.size(); ++t) {
    EXPECT_NEAR(avg.mean_p[t], ideal[t], 1e-15);
    EXPECT_NEAR(avg.std_error[t], 0.0, 1e-15);
  }
}

// Fully random fluctuating phases kill the coherent term after one step.
TEST(RunEnsemble, UniformFluctuatingPhasesGiveClassicalValue) {
  const WalkConfig cfg(6, 0);
  const auto avg = run_ensemble(cfg, CoinPair::standard(6), std::nullopt,
                                PhaseModel::uniform(PhaseRegime::Fluctuating), 50, 2000, 2024);
  EXPECT_LE(std::abs(avg.mean_p[50] - 1.0 / 64), 5 * avg.std_error[50]);
}

TEST(RunEnsemble, IndependentOfThreadCount) {
  const WalkConfig cfg(5, 9);
  const auto pair = CoinPair::standard(5);
  const auto model = PhaseModel::gaussian_sigma(PhaseRegime::Fluctuating, 0.3);
  const auto loss = LossModel::directional({0.9, 1.0, 0.8, 0.95, 0.85});
  const auto one = run_ensemble(cfg, pair, loss, model, 40, 37, 5, 1);
  const auto four = run_ensemble(cfg, pair, loss, model, 40, 37, 5, 4);
  EXPECT_EQ(one.mean_p, four.mean_p);
  EXPECT_EQ(one.std_error, four.std_error);
}

TEST(NoiseProperties, UniformLossFactorizes) {
  const int n = 5;
  const WalkConfig cfg(n, 13);
  const auto pair = CoinPair::standard(n);
  for (double eta : {0.0, 0.3, 0.9, 0.999}) {
    const auto loss = LossModel::uniform(eta);
    auto lossy = uniform_initial_state(n);
    auto ideal = lossy;
    for (int t = 1; t <= 40; ++t) {
      step_noisy(lossy, cfg, pair, &loss, nullptr);
      step_ideal(ideal, cfg, pair);
      auto scaled = ideal;
      const double f = std::pow(eta, t);
      for (auto& a : scaled.amplitudes()) a *= f;
      ASSERT_LE(max_abs_diff(lossy, scaled), 1e-12) << "eta=" << eta << " t=" << t;
      ASSERT_NEAR(vertex_probability(lossy, cfg.target),
                  std::pow(eta, 2 * t) * vertex_probability(ideal, cfg.target), 1e-12);
    }
  }
}

TEST(NoiseProperties, UniformLossCommutesWithStep) {
  RandomStream rng(10);
  const WalkConfig cfg(4, 1);
  const auto pair = CoinPair::standard(4);
  const auto loss = LossModel::uniform(0.73);
  const auto s = random_state(4, rng);
  auto a = s, b = s;
  step_ideal(a, cfg, pair);
  apply_loss(a, loss);
  apply_loss(b, loss);
  step_ideal(b, cfg, pair);
  EXPECT_LE(max_abs_diff(a, b), 1e-15);
}

TEST(NoiseProperties, DirectionalPermutationSymmetry) {
  const int n = 5;
  const auto pair = CoinPair::standard(n);
  const std::vector<double> etas{0.95, 0.7, 0.88, 1.0, 0.6};
  RandomStream unused(0);
  const auto base = run_trajectory(WalkConfig(n, 0), pair, LossModel::directional(etas),
                                   std::nullopt, 60, unused);
  std::vector<double> perm = etas;
  std::sort(perm.begin(), perm.end());
  do {
    RandomStream rng(0);
    const auto p = run_trajectory(WalkConfig(n, 0), pair, LossModel::directional(perm),
                                  std::nullopt, 60, rng);
    for (std::size_t t = 0; t < p.size(); ++t) ASSERT_NEAR(p[t], base[t], 1e-10);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(NoiseProperties, PhaseKeepsNormLossNeverRaisesIt) {
  RandomStream rng(11);
  const WalkConfig cfg(5, 7);
  const auto pair = CoinPair::standard(5);
  const auto model = PhaseModel::gaussian_sigma(PhaseRegime::Fluctuating, 1.3);
  const auto loss = LossModel::directional({0.9, 1.0, 0.2, 0.5, 0.99});
  auto phase_only = uniform_initial_state(5);
  auto both = phase_only;
  double last = 1.0;
  for (int t = 0; t < 200; ++t) {
    const auto field = sample_phase_field(5, model, rng);
    step_noisy(phase_only, cfg, pair, nullptr, &field);
    step_noisy(both, cfg, pair, &loss, &field);
    EXPECT_NEAR(norm_squared(phase_only), 1.0, 1e-12);
    const double now = norm_squared(both);
    EXPECT_LE(now, last + 1e-15);
    last = now;
  }
}
