#pragma once

// Single-excitation states on the coin (x) hypercube product space.
//
// Loss is modelled without an explicit vacuum mode: whatever has leaked out
// of the network is simply missing from the norm, so a WalkState may be
// sub-normalized.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqrw {

using Complex = std::complex<double>;
using Vertex = std::uint32_t;

namespace tol {
inline constexpr double algebraic = 1e-12;
inline constexpr double accumulated = 1e-9;
}  // namespace tol

inline constexpr int kMinRank = 1;
inline constexpr int kMaxRank = 16;

// Parameters that are well-formed but physically meaningless (eta > 1,
// negative spreads, ...). The CLI maps these to exit code 1.
class InfeasibleParameter : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline void require_rank(int n) {
  if (n < kMinRank || n > kMaxRank) {
    throw std::invalid_argument("hypercube rank " + std::to_string(n) +
                                " outside supported range [1, 16]");
  }
}

inline std::size_t vertex_count(int n) { return std::size_t{1} << n; }

struct WalkConfig {
  int n = 2;
  Vertex target = 0;

  WalkConfig() = default;
  WalkConfig(int rank, Vertex tgt) : n(rank), target(tgt) {
    require_rank(n);
    if (target >= vertex_count(n)) {
      throw std::invalid_argument("target vertex " + std::to_string(target) +
                                  " does not exist for rank " +
                                  std::to_string(n));
    }
  }

  std::size_t vertices() const { return vertex_count(n); }
};

// Amplitudes a_{d,x} stored vertex-major: index = d + n * x. All coin blocks
// are contiguous and each shift direction is a fixed vertex permutation.
class WalkState {
 public:
  WalkState() = default;

  explicit WalkState(int n) : n_(n) {
    require_rank(n);
    amps_.assign(static_cast<std::size_t>(n) * vertex_count(n), Complex{});
  }

  WalkState(int n, std::vector<Complex> amps) : n_(n), amps_(std::move(amps)) {
    require_rank(n);
    if (amps_.size() != static_cast<std::size_t>(n) * vertex_count(n)) {
      throw std::invalid_argument("amplitude count must be n * 2^n");
    }
  }

  static WalkState basis(int n, int d, Vertex x, Complex value = 1.0) {
    WalkState s(n);
    s.at(d, x) = value;
    return s;
  }

  int rank() const { return n_; }
  std::size_t vertices() const { return vertex_count(n_); }
  std::size_t size() const { return amps_.size(); }

  static std::size_t index(int n, int d, Vertex x) {
    return static_cast<std::size_t>(d) + static_cast<std::size_t>(n) * x;
  }

  Complex& at(int d, Vertex x) { return amps_[index(n_, d, x)]; }
  const Complex& at(int d, Vertex x) const { return amps_[index(n_, d, x)]; }

  // Coin block of vertex x (all n directions).
  std::span<Complex> block(Vertex x) {
    return {amps_.data() + static_cast<std::size_t>(n_) * x,
            static_cast<std::size_t>(n_)};
  }
  std::span<const Complex> block(Vertex x) const {
    return {amps_.data() + static_cast<std::size_t>(n_) * x,
            static_cast<std::size_t>(n_)};
  }

  std::span<Complex> amplitudes() { return amps_; }
  std::span<const Complex> amplitudes() const { return amps_; }

  bool all_finite() const {
    for (const auto& a : amps_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    }
    return true;
  }

  friend bool operator==(const WalkState&, const WalkState&) = default;

 private:
  int n_ = 0;
  std::vector<Complex> amps_;
};

inline WalkState uniform_initial_state(int n) {
  WalkState s(n);
  const double a = 1.0 / std::sqrt(static_cast<double>(s.size()));
  for (auto& v : s.amplitudes()) v = a;
  return s;
}

// Probability of detecting the photon at vertex x, summed over all ports.
inline double vertex_probability(const WalkState& s, Vertex x) {
  if (x >= s.vertices()) {
    throw std::out_of_range("vertex index out of range");
  }
  double p = 0.0;
  for (const auto& a : s.block(x)) p += std::norm(a);
  return p;
}

inline double norm_squared(const WalkState& s) {
  double acc = 0.0;
  for (const auto& a : s.amplitudes()) acc += std::norm(a);
  return acc;
}

// Largest elementwise |a - b|.
inline double max_abs_diff(const WalkState& a, const WalkState& b) {
  if (a.size() != b.size()) throw std::invalid_argument("state size mismatch");
  double m = 0.0;
  auto x = a.amplitudes();
  auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace sqrw
