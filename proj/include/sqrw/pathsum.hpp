#pragma once

// Brute-force path-sum evaluation of the (phase-noisy) search walk.
//
// Paths are written backwards in time: a = (a_1, ..., a_t) where a_1 is the
// direction of the last move and a_t the first. With final vertex x, the
// vertex a move a_j departs from is v_j = x ^ E(j, 1), E(j, 1) = e_{a_1} ^ ...
// ^ e_{a_j}. The amplitude at |a_1, x> after t steps is
//
//   sum over a with that a_1 of
//     g(a_t, v_t) * prod_{j<t} C^{(v_j)}_{a_j a_{j+1}} * exp(i sum_j phi^{(t+1-j)}_{a_j, v_j})
//
// where C^{(v)} is the marked coin at the target and the unmarked coin
// elsewhere, and g(d, v) = (C^{(v)} |s>)_d / sqrt(2^n) is the first coin acting
// on the uniform initial state (+-1/sqrt(n 2^n) for the Grover/-1 pair).
// Phases sit on the departure vertex because F acts before the shift.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "noise.hpp"
#include "state.hpp"
#include "walk.hpp"

namespace sqrw::pathsum {

class InstanceTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxRank = 4;
inline constexpr double kMaxPaths = 1e6;

inline void check_size(int n, int t) {
  if (n > kMaxRank || std::pow(static_cast<double>(n), t) > kMaxPaths) {
    throw InstanceTooLarge("path enumeration over n^t = " + std::to_string(n) + "^" +
                           std::to_string(t) + " paths refused (limit n <= 4, n^t <= 1e6)");
  }
}

// Phase fields of steps 1..t (step s uses fields()[s - 1]).
class PhaseHistory {
 public:
  PhaseHistory() = default;
  explicit PhaseHistory(std::vector<PhaseField> per_step) : fields_(std::move(per_step)) {
    for (const auto& f : fields_) {
      if (f.rank() != fields_.front().rank()) throw std::invalid_argument("phase history rank mismatch");
    }
  }

  static PhaseHistory constant(const PhaseField& field, int t) {
    return PhaseHistory(std::vector<PhaseField>(static_cast<std::size_t>(t), field));
  }
  static PhaseHistory zero(int n, int t) { return constant(PhaseField::zero(n), t); }

  int steps() const { return static_cast<int>(fields_.size()); }
  const PhaseField& at_step(int s) const { return fields_[static_cast<std::size_t>(s - 1)]; }

 private:
  std::vector<PhaseField> fields_;
};

// prod_{j=1}^{t-1} ( C0 + (C1 - C0) [x_rel == E(j,1)] )_{a_j a_{j+1}}, with
// x_rel = x_t ^ x the target relative to the final vertex.
inline Complex xi_product(std::span<const int> a, Vertex x_rel, const CoinPair& pair) {
  if (a.empty()) throw std::invalid_argument("xi_product: path must have t >= 1");
  Complex prod = 1.0;
  Vertex e = 0;
  for (std::size_t j = 0; j + 1 < a.size(); ++j) {
    e ^= Vertex{1} << a[j];
    const CoinMatrix& c = (e == x_rel) ? pair.marked() : pair.unmarked();
    prod *= c(a[j], a[j + 1]);
  }
  return prod;
}

struct PathSumResult {
  double probability;
  double incoherent;  // sum over paths of |amplitude|^2
  double coherent;    // probability - incoherent
};

namespace detail {

struct Enumerator {
  const WalkConfig& cfg;
  const CoinPair& pair;
  const PhaseHistory* history;
  int t;
  double init_scale;
  std::vector<Complex> amps;  // per final direction
  double diag = 0.0;
  int final_dir = 0;

  const CoinMatrix& coin_at(Vertex v) const {
    return v == cfg.target ? pair.marked() : pair.unmarked();
  }

  Complex phasor(int step, int d, Vertex v) const {
    if (history == nullptr) return 1.0;
    return history->at_step(step).phasors()[WalkState::index(cfg.n, d, v)];
  }

  // acc covers moves a_1..a_j; dir = a_j departing from v.
  void visit(int j, Vertex v, int dir, Complex acc) {
    if (j == t) {
      const CoinMatrix& c = coin_at(v);
      Complex row{};
      for (int k = 0; k < cfg.n; ++k) row += c(dir, k);
      const Complex contrib = acc * row * init_scale;
      amps[static_cast<std::size_t>(final_dir)] += contrib;
      diag += std::norm(contrib);
      return;
    }
    const CoinMatrix& c = coin_at(v);
    for (int b = 0; b < cfg.n; ++b) {
      const Vertex prev = v ^ (Vertex{1} << b);
      visit(j + 1, prev, b, acc * c(dir, b) * phasor(t - j, b, prev));
    }
  }
};

}  // namespace detail

// Probability of finding the walker at x after t steps from the uniform
// state, by explicit enumeration of all n^t direction sequences.
inline PathSumResult pathsum_probability(const WalkConfig& cfg, const CoinPair& pair,
                                         const PhaseHistory& history, Vertex x, int t) {
  if (pair.dim() != cfg.n) throw std::invalid_argument("coin pair rank mismatch");
  if (x >= cfg.vertices()) throw std::out_of_range("vertex index out of range");
  if (t < 0) throw std::invalid_argument("t must be >= 0");
  check_size(cfg.n, t);
  if (t == 0) {
    const double p = std::ldexp(1.0, -cfg.n);
    return {p, p, 0.0};
  }
  if (history.steps() < t) throw std::invalid_argument("phase history shorter than t");
  if (history.steps() > 0 && history.at_step(1).rank() != cfg.n) {
    throw std::invalid_argument("phase history rank mismatch");
  }

  detail::Enumerator en{cfg, pair, &history, t,
                        1.0 / std::sqrt(static_cast<double>(cfg.n) * vertex_count(cfg.n)),
                        std::vector<Complex>(static_cast<std::size_t>(cfg.n))};
  for (int a1 = 0; a1 < cfg.n; ++a1) {
    en.final_dir = a1;
    const Vertex v1 = x ^ (Vertex{1} << a1);
    en.visit(1, v1, a1, en.phasor(t, a1, v1));
  }
  double p = 0.0;
  for (const auto& a : en.amps) p += std::norm(a);
  return {p, en.diag, p - en.diag};
}

// (1 / (n 2^n)) sum_a |xi(a)|^2 for the target as seen from x. Equal to 2^-n
// for any pair of unitary coins.
inline double incoherent_term(const WalkConfig& cfg, const CoinPair& pair, Vertex x, int t) {
  if (pair.dim() != cfg.n) throw std::invalid_argument("coin pair rank mismatch");
  if (x >= cfg.vertices()) throw std::out_of_range("vertex index out of range");
  if (t < 0) throw std::invalid_argument("t must be >= 0");
  check_size(cfg.n, t);
  const double norm = 1.0 / (static_cast<double>(cfg.n) * vertex_count(cfg.n));
  if (t == 0) return std::ldexp(1.0, -cfg.n);
  const Vertex x_rel = cfg.target ^ x;
  const int n = cfg.n;

  // Depth-first over a_1, a_2, ... carrying E(j, 1) and the partial product.
  double total = 0.0;
  auto rec = [&](auto&& self, int j, int dir, Vertex e, Complex prod) -> void {
    if (j == t) {
      total += std::norm(prod);
      return;
    }
    const CoinMatrix& c = (e == x_rel) ? pair.marked() : pair.unmarked();
    for (int b = 0; b < n; ++b) {
      self(self, j + 1, b, e ^ (Vertex{1} << b), prod * c(dir, b));
    }
  };
  for (int a1 = 0; a1 < n; ++a1) rec(rec, 1, a1, Vertex{1} << a1, Complex{1.0});
  return total * norm;
}

}  // namespace sqrw::pathsum
