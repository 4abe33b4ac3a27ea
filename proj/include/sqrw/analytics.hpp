#pragma once

// Closed-form predictions for lossy search.
//
//   x      = -ln(eta) * sqrt(2^(n-1))
//   eps    = -log2(1 - eta)
//   t_m    = sqrt(2^(n-1)) * acot(x)
//   p_max  = exp(-2 x acot x) / (2 (1 + x^2))          (leading order in 1/n)

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>

#include "state.hpp"

namespace sqrw::analytics {

// Branch with range (0, pi/2] on x >= 0.
inline double acot(double x) {
  if (x == 0.0) return std::numbers::pi / 2.0;
  return std::atan(1.0 / x);
}

inline double sqrt_half_space(int n) { return std::sqrt(std::ldexp(1.0, n - 1)); }

// Leading-order rotation frequency |omega'_0| of the ideal search.
inline double search_frequency(int n) { return 1.0 / sqrt_half_space(n); }

struct XParameter {
  double x;
  double epsilon;
};

inline void check_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw InfeasibleParameter("transmission must lie in (0, 1] for the rescaled loss variable");
  }
}

inline XParameter x_parameter(double eta, int n) {
  check_eta(eta);
  const double x = -std::log(eta) * sqrt_half_space(n);
  const double eps = eta == 1.0 ? std::numeric_limits<double>::infinity() : -std::log2(1.0 - eta);
  return {x == 0.0 ? 0.0 : x, eps};
}

// First-order approximation of x for small loss, 2^(n/2 - 1/2 - eps).
inline double x_from_epsilon(double epsilon, int n) {
  return std::exp2(-epsilon + n / 2.0 - 0.5);
}

inline double optimal_time_real(double x, int n) { return sqrt_half_space(n) * acot(x); }

// Nearest integer, ties rounded up.
inline int optimal_time(double eta, int n) {
  const double t = optimal_time_real(x_parameter(eta, n).x, n);
  return static_cast<int>(std::floor(t + 0.5));
}

inline double pmax_leading(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("pmax_leading: x must be >= 0");
  if (std::isinf(x)) return 0.0;
  return 0.5 * std::exp(-2.0 * x * acot(x)) / (1.0 + x * x);
}

struct UniformLossPrediction {
  double x;
  double epsilon;
  int t_m;
  double p_max_leading;
};

inline UniformLossPrediction predict_uniform_loss(double eta, int n) {
  const auto xp = x_parameter(eta, n);
  return {xp.x, xp.epsilon, optimal_time(eta, n), pmax_leading(xp.x)};
}

struct LossStats {
  double mean;  // <eta>
  double q;     // RMS deviation, q^2 = mean(delta^2)
  double w;     // signed cube root of mean(delta^3)
};

inline LossStats loss_statistics(std::span<const double> etas) {
  if (etas.empty()) throw std::invalid_argument("loss_statistics: empty transmission set");
  for (double e : etas) {
    if (!(e >= 0.0 && e <= 1.0)) throw InfeasibleParameter("transmission outside [0, 1]");
  }
  const double n = static_cast<double>(etas.size());
  double sum = 0.0;
  for (double e : etas) sum += e;
  const double mean = sum / n;
  double m2 = 0.0, m3 = 0.0;
  for (double e : etas) {
    const double d = e - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  return {mean, std::sqrt(m2 / n), std::cbrt(m3 / n)};
}

// Lower bound on the target probability at step t under direction-dependent
// loss, given the lossless probability p_ideal at the same step. Empty when
// the bracketed term is negative and the estimate stops being a bound.
inline std::optional<double> directional_lower_bound(std::span<const double> etas, int t,
                                                     double p_ideal) {
  if (etas.empty()) throw std::invalid_argument("directional_lower_bound: empty transmission set");
  if (t < 0) throw std::invalid_argument("directional_lower_bound: t must be >= 0");
  const auto [lo, hi] = std::minmax_element(etas.begin(), etas.end());
  const double eta_max = *hi;
  const double eta_bar = 0.5 * (*hi + *lo);
  if (eta_bar == 0.0) return t == 0 ? std::optional<double>(p_ideal) : std::optional<double>(0.0);
  const double ratio = eta_max / eta_bar;
  const double bracket = std::sqrt(p_ideal) - ratio * (std::pow(ratio, t) - 1.0);
  if (bracket < 0.0) return std::nullopt;
  return std::pow(eta_bar, 2 * t) * bracket * bracket;
}

struct EmpiricalBound {
  enum class Source { Simulated, Leading };
  double value;
  double uniform_term;  // p_max of the uniform model at <eta>
  double correction;    // 2^-n q^2
  Source source;
};

// p_max({eta}) >= p_max(<eta>) + 2^-n Q^2, with p_max(<eta>) supplied by the caller.
inline EmpiricalBound empirical_lower_bound(double pmax_uniform, double q, int n) {
  if (!(q >= 0.0)) throw std::invalid_argument("empirical_lower_bound: q must be >= 0");
  const double corr = std::ldexp(q * q, -n);
  return {pmax_uniform + corr, pmax_uniform, corr, EmpiricalBound::Source::Simulated};
}

// Same bound with p_max(<eta>) taken from the leading-order formula.
inline EmpiricalBound empirical_lower_bound_leading(double mean, double q, int n) {
  auto b = empirical_lower_bound(pmax_leading(x_parameter(mean, n).x), q, n);
  b.source = EmpiricalBound::Source::Leading;
  return b;
}

}  // namespace sqrw::analytics
