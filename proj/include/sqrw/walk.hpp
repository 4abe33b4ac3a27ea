#pragma once

// Ideal search walk: conditional coin followed by the hypercube shift.
//
// One step is U' = S C' with C' = C0 (x) 1 + (C1 - C0) (x) |x_t><x_t| and
// S |d, x> = |d, x ^ 2^d>. Operators are applied matrix-free.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rng.hpp"
#include "state.hpp"

namespace sqrw {

// Dense n x n complex matrix, row-major. Element (r, c) maps input port c to
// output port r.
class CoinMatrix {
 public:
  CoinMatrix() = default;
  explicit CoinMatrix(int n) : n_(n), m_(static_cast<std::size_t>(n) * n) {}
  CoinMatrix(int n, std::vector<Complex> entries) : n_(n), m_(std::move(entries)) {
    if (m_.size() != static_cast<std::size_t>(n) * n) {
      throw std::invalid_argument("coin matrix needs n*n entries");
    }
  }

  static CoinMatrix identity(int n) {
    CoinMatrix c(n);
    for (int i = 0; i < n; ++i) c(i, i) = 1.0;
    return c;
  }

  int dim() const { return n_; }
  Complex& operator()(int r, int c) { return m_[static_cast<std::size_t>(r) * n_ + c]; }
  const Complex& operator()(int r, int c) const {
    return m_[static_cast<std::size_t>(r) * n_ + c];
  }

  CoinMatrix operator*(const CoinMatrix& o) const {
    CoinMatrix out(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k)
        for (int j = 0; j < n_; ++j) out(i, j) += (*this)(i, k) * o(k, j);
    return out;
  }

  CoinMatrix operator-(const CoinMatrix& o) const {
    CoinMatrix out(n_);
    for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] = m_[i] - o.m_[i];
    return out;
  }

  CoinMatrix operator-() const {
    CoinMatrix out(n_);
    for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] = -m_[i];
    return out;
  }

  CoinMatrix adjoint() const {
    CoinMatrix out(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out(i, j) = std::conj((*this)(j, i));
    return out;
  }

  double max_abs_diff(const CoinMatrix& o) const {
    double d = 0.0;
    for (std::size_t i = 0; i < m_.size(); ++i) d = std::max(d, std::abs(m_[i] - o.m_[i]));
    return d;
  }

  bool is_unitary(double eps = tol::algebraic) const {
    return ((*this).adjoint() * (*this)).max_abs_diff(identity(n_)) <= eps;
  }

 private:
  int n_ = 0;
  std::vector<Complex> m_;
};

// Grover diffusion -1 + 2|s><s|: diagonal 2/n - 1, off-diagonal 2/n.
inline CoinMatrix grover_coin(int n) {
  if (n < 1) throw std::invalid_argument("grover_coin: n must be >= 1");
  CoinMatrix g(n);
  const double off = 2.0 / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = (i == j) ? off - 1.0 : off;
  return g;
}

// Haar-distributed unitary: Gram-Schmidt on a complex Ginibre matrix with
// the column phases fixed by the QR convention.
inline CoinMatrix random_unitary(int n, RandomStream& rng) {
  std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
  for (auto& col : cols)
    for (auto& z : col) z = Complex(rng.normal(), rng.normal());
  for (int j = 0; j < n; ++j) {
    // Modified Gram-Schmidt, done twice for orthogonality at machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        Complex proj{};
        for (int i = 0; i < n; ++i) proj += std::conj(cols[k][i]) * cols[j][i];
        for (int i = 0; i < n; ++i) cols[j][i] -= proj * cols[k][i];
      }
    }
    double nrm = 0.0;
    for (const auto& z : cols[j]) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (auto& z : cols[j]) z /= nrm;
  }
  CoinMatrix u(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) u(i, j) = cols[j][i];
  return u;
}

// Coin applied at unmarked vertices (unmarked) and at the target (marked).
class CoinPair {
 public:
  CoinPair(CoinMatrix unmarked, CoinMatrix marked)
      : c0_(std::move(unmarked)), c1_(std::move(marked)) {
    if (c0_.dim() != c1_.dim()) throw std::invalid_argument("coin pair dimension mismatch");
    if (!c0_.is_unitary() || !c1_.is_unitary()) {
      throw std::invalid_argument("coin pair matrices must be unitary");
    }
    const int n = c0_.dim();
    standard_ = c0_.max_abs_diff(grover_coin(n)) == 0.0 &&
                c1_.max_abs_diff(-CoinMatrix::identity(n)) == 0.0;
  }

  // Grover coin everywhere, -1 at the target.
  static CoinPair standard(int n) {
    return CoinPair(grover_coin(n), -CoinMatrix::identity(n));
  }

  int dim() const { return c0_.dim(); }
  const CoinMatrix& unmarked() const { return c0_; }
  const CoinMatrix& marked() const { return c1_; }
  bool is_standard() const { return standard_; }

 private:
  CoinMatrix c0_;
  CoinMatrix c1_;
  bool standard_ = false;
};

namespace detail {

inline void apply_grover_block(std::span<Complex> b) {
  Complex sum{};
  for (const auto& a : b) sum += a;
  const Complex s = sum * (2.0 / static_cast<double>(b.size()));
  for (auto& a : b) a = s - a;
}

inline void apply_matrix_block(const CoinMatrix& c, std::span<Complex> b,
                               std::vector<Complex>& scratch) {
  const int n = c.dim();
  scratch.assign(b.begin(), b.end());
  for (int r = 0; r < n; ++r) {
    Complex acc{};
    for (int k = 0; k < n; ++k) acc += c(r, k) * scratch[k];
    b[r] = acc;
  }
}

inline void check_dims(const WalkState& s, const WalkConfig& cfg, const CoinPair& pair) {
  if (s.rank() != cfg.n || pair.dim() != cfg.n) {
    throw std::invalid_argument("state, config and coin pair ranks disagree");
  }
}

}  // namespace detail

inline void apply_marked_coin(WalkState& s, const WalkConfig& cfg, const CoinPair& pair) {
  detail::check_dims(s, cfg, pair);
  const auto nv = static_cast<Vertex>(s.vertices());
  if (pair.is_standard()) {
    for (Vertex x = 0; x < nv; ++x) {
      if (x == cfg.target) {
        for (auto& a : s.block(x)) a = -a;
      } else {
        detail::apply_grover_block(s.block(x));
      }
    }
    return;
  }
  std::vector<Complex> scratch;
  for (Vertex x = 0; x < nv; ++x) {
    detail::apply_matrix_block(x == cfg.target ? pair.marked() : pair.unmarked(),
                               s.block(x), scratch);
  }
}

// |d, x> -> |d, x ^ 2^d>; an involution, done by swapping pairs in place.
inline void apply_shift(WalkState& s) {
  const int n = s.rank();
  const auto nv = static_cast<Vertex>(s.vertices());
  auto amps = s.amplitudes();
  for (int d = 0; d < n; ++d) {
    const Vertex bit = Vertex{1} << d;
    for (Vertex x = 0; x < nv; ++x) {
      if (x & bit) continue;
      std::swap(amps[WalkState::index(n, d, x)], amps[WalkState::index(n, d, x | bit)]);
    }
  }
}

inline void step_ideal(WalkState& s, const WalkConfig& cfg, const CoinPair& pair) {
  apply_marked_coin(s, cfg, pair);
  apply_shift(s);
}

inline WalkState evolve_ideal(WalkState s, const WalkConfig& cfg, const CoinPair& pair,
                              int steps) {
  if (steps < 0) throw std::invalid_argument("step count must be non-negative");
  for (int t = 0; t < steps; ++t) step_ideal(s, cfg, pair);
  return s;
}

// Target probability p(t), t = 0..t_max, from the uniform initial state.
inline std::vector<double> ideal_series(const WalkConfig& cfg, const CoinPair& pair,
                                        int t_max) {
  if (t_max < 0) throw std::invalid_argument("t_max must be non-negative");
  WalkState s = uniform_initial_state(cfg.n);
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(t_max) + 1);
  p.push_back(vertex_probability(s, cfg.target));
  for (int t = 0; t < t_max; ++t) {
    step_ideal(s, cfg, pair);
    p.push_back(vertex_probability(s, cfg.target));
  }
  return p;
}

}  // namespace sqrw
