#include <gtest/gtest.h>

#include <cmath>

#include <sqrw/noise.hpp>
#include <sqrw/pathsum.hpp>

using namespace sqrw;
using namespace sqrw::pathsum;

namespace {

PhaseHistory random_history(int n, int t, RandomStream& rng) {
  std::vector<PhaseField> fields;
  for (int s = 0; s < t; ++s) {
    fields.push_back(sample_phase_field(n, PhaseModel::uniform(PhaseRegime::Fluctuating), rng));
  }
  return PhaseHistory(std::move(fields));
}

// Matrix-free evolution with the same per-step fields.
std::vector<double> matrix_probabilities(const WalkConfig& cfg, const CoinPair& pair,
                                         const PhaseHistory& h, int t) {
  auto s = uniform_initial_state(cfg.n);
  for (int k = 1; k <= t; ++k) step_noisy(s, cfg, pair, nullptr, &h.at_step(k));
  std::vector<double> p;
  for (Vertex x = 0; x < cfg.vertices(); ++x) p.push_back(vertex_probability(s, x));
  return p;
}

}  // namespace

TEST(XiProduct, Examples) {
  const auto pair = CoinPair::standard(3);
  const std::vector<int> one{2};
  EXPECT_EQ(xi_product(one, 5, pair), Complex(1.0));

  for (int a1 = 0; a1 < 3; ++a1) {
    for (int a2 = 0; a2 < 3; ++a2) {
      const std::vector<int> a{a1, a2};
      const Vertex unmarked_rel = Vertex{1} << ((a1 + 1) % 3);
      EXPECT_NEAR(std::abs(xi_product(a, unmarked_rel, pair) - Complex(2.0 / 3 - (a1 == a2))), 0.0, 1e-15);
      const Vertex marked_rel = Vertex{1} << a1;
      EXPECT_NEAR(std::abs(xi_product(a, marked_rel, pair) - Complex(-(a1 == a2))), 0.0, 1e-15);
    }
  }
  EXPECT_THROW(xi_product(std::vector<int>{}, 0, pair), std::invalid_argument);
}

TEST(PathSum, ZeroSteps) {
  for (int n : {2, 3, 4}) {
    const WalkConfig cfg(n, 1);
    const auto r = pathsum_probability(cfg, CoinPair::standard(n), PhaseHistory::zero(n, 0), 2, 0);
    EXPECT_NEAR(r.probability, std::ldexp(1.0, -n), 1e-15);
  }
}

TEST(PathSum, MatchesIdealEvolutionAtZeroPhase) {
  const WalkConfig cfg(3, 6);
  const auto pair = CoinPair::standard(3);
  for (int t = 1; t <= 5; ++t) {
    const auto s = evolve_ideal(uniform_initial_state(3), cfg, pair, t);
    for (Vertex x = 0; x < 8; ++x) {
      const auto r = pathsum_probability(cfg, pair, PhaseHistory::zero(3, t), x, t);
      EXPECT_NEAR(r.probability, vertex_probability(s, x), 1e-10) << "t=" << t << " x=" << x;
    }
  }
}

TEST(PathSum, IncoherentPartConstantForStandardPair) {
  RandomStream rng(3);
  const WalkConfig cfg(3, 0);
  for (int t = 1; t <= 5; ++t) {
    const auto h = random_history(3, t, rng);
    for (Vertex x = 0; x < 8; ++x) {
      const auto r = pathsum_probability(cfg, CoinPair::standard(3), h, x, t);
      EXPECT_NEAR(r.incoherent, 0.125, 1e-12);
      EXPECT_NEAR(r.coherent, r.probability - r.incoherent, 1e-15);
    }
  }
}

TEST(PathSum, MatchesMatrixEvolutionWithPhases) {
  RandomStream rng(17);
  for (int n : {2, 3}) {
    for (Vertex target : {Vertex{0}, Vertex{1}, Vertex{3}}) {
      const WalkConfig cfg(n, target);
      for (bool general : {false, true}) {
        const auto pair = general ? CoinPair(random_unitary(n, rng), random_unitary(n, rng))
                                  : CoinPair::standard(n);
        for (int t = 1; t <= 5; ++t) {
          for (bool per_step : {false, true}) {
            const auto h = per_step ? random_history(n, t, rng)
                                    : PhaseHistory::constant(
                                          sample_phase_field(n, PhaseModel::uniform(PhaseRegime::Static), rng), t);
            const auto pm = matrix_probabilities(cfg, pair, h, t);
            for (Vertex x = 0; x < cfg.vertices(); ++x) {
              const double pp = pathsum_probability(cfg, pair, h, x, t).probability;
              ASSERT_NEAR(pp, pm[x], 1e-10) << "n=" << n << " target=" << target << " t=" << t
                                            << " x=" << x << " general=" << general;
            }
          }
        }
      }
    }
  }
}

TEST(IncoherentTerm, Examples) {
  EXPECT_NEAR(incoherent_term(WalkConfig(2, 0), CoinPair::standard(2), 0, 3), 0.25, 1e-12);
  RandomStream rng(23);
  const CoinPair pair(random_unitary(3, rng), random_unitary(3, rng));
  EXPECT_NEAR(incoherent_term(WalkConfig(3, 2), pair, 5, 4), 0.125, 1e-12);
  for (int n : {2, 3, 4}) {
    EXPECT_NEAR(incoherent_term(WalkConfig(n, 0), CoinPair::standard(n), 1, 1), std::ldexp(1.0, -n), 1e-12);
  }
}

TEST(IncoherentTerm, ConstantForRandomUnitaryPairs) {
  RandomStream rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    const CoinPair pair(random_unitary(n, rng), random_unitary(n, rng));
    const WalkConfig cfg(n, static_cast<Vertex>(rng.next_u64() % vertex_count(n)));
    const Vertex x = static_cast<Vertex>(rng.next_u64() % vertex_count(n));
    for (int t = 1; t <= (n == 4 ? 5 : 6); ++t) {
      EXPECT_NEAR(incoherent_term(cfg, pair, x, t), std::ldexp(1.0, -n), 1e-12);
    }
  }
}

TEST(PathSum, SizeLimits) {
  EXPECT_THROW(pathsum_probability(WalkConfig(5, 0), CoinPair::standard(5), PhaseHistory::zero(5, 2), 0, 2),
               InstanceTooLarge);
  EXPECT_THROW(incoherent_term(WalkConfig(4, 0), CoinPair::standard(4), 0, 11), InstanceTooLarge);
  EXPECT_NO_THROW(incoherent_term(WalkConfig(4, 0), CoinPair::standard(4), 0, 9));
  EXPECT_THROW(pathsum_probability(WalkConfig(3, 0), CoinPair::standard(3), PhaseHistory::zero(3, 2), 0, 3),
               std::invalid_argument);
}

// Averaged over uniform static fields the coherent part has zero mean.
TEST(PathSum, CoherentPartAveragesOut) {
  RandomStream rng(31);
  const WalkConfig cfg(3, 0);
  const auto pair = CoinPair::standard(3);
  const int fields = 1000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < fields; ++i) {
    const auto f = sample_phase_field(3, PhaseModel::uniform(PhaseRegime::Static), rng);
    const double c = pathsum_probability(cfg, pair, PhaseHistory::constant(f, 4), 0, 4).coherent;
    sum += c;
    sq += c * c;
  }
  const double mean = sum / fields;
  const double se = std::sqrt((sq / fields - mean * mean) / (fields - 1));
  EXPECT_LE(std::abs(mean), 5 * se);
}
