#pragma once

// The Lobachevsky function
//
//     Lambda(t) = -INT_0^t ln|2 sin u| du,
//
// an odd, pi-periodic function that appears in every closed-form capacity
// expression in this library.  Two independent evaluation routes are kept:
// an accelerated series (the production path) and a tanh-sinh quadrature of
// the defining integral (the cross-check path).

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sphedra {

inline constexpr double kPi = std::numbers::pi;

namespace detail {

// zeta(2n) for n = 1..40 via the convolution recurrence
//   (n + 1/2) zeta(2n) = sum_{k=1}^{n-1} zeta(2k) zeta(2n-2k),  n >= 2,
// seeded with zeta(2) = pi^2/6.  Every term is positive, so the recurrence
// is stable to the last ulp.
inline const std::array<double, 40>& even_zeta_table() {
  static const std::array<double, 40> table = [] {
    std::array<double, 40> z{};
    z[0] = kPi * kPi / 6.0;
    for (std::size_t n = 2; n <= z.size(); ++n) {
      double s = 0.0;
      for (std::size_t k = 1; k < n; ++k) s += z[k - 1] * z[n - k - 1];
      z[n - 1] = s / (static_cast<double>(n) + 0.5);
    }
    return z;
  }();
  return table;
}

// Series on [0, pi/2].  Integrating ln(sin u / u) term by term through the
// sine product formula turns the slowly convergent Fourier series
// (1/2) sum sin(2nt)/n^2 into
//
//   Lambda(t) = t (1 - ln 2t) + t sum_{k>=1} zeta(2k)/(k(2k+1)) (t/pi)^{2k},
//
// whose tail decays at least like 4^-k on this interval.
inline double lobachevsky_series_core(double t) {
  if (t <= 0.0) return 0.0;
  const auto& zeta = even_zeta_table();
  const double q = (t / kPi) * (t / kPi);
  double qk = 1.0;
  double sum = 0.0;
  for (std::size_t k = 1; k <= zeta.size(); ++k) {
    qk *= q;
    const double term = zeta[k - 1] / (static_cast<double>(k) * (2.0 * k + 1.0)) * qk;
    sum += term;
    if (term < 1e-19) break;
  }
  return t * (1.0 - std::log(2.0 * t)) + t * sum;
}

}  // namespace detail

/// Lobachevsky function, series evaluation with range reduction.
/// Reduces t mod pi into [0, pi), folds onto [0, pi/2] by oddness about pi/2.
inline double lobachevsky(double t) {
  if (!std::isfinite(t)) throw std::domain_error("lobachevsky: non-finite argument");
  double r = std::fmod(t, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r = 0.0;  // rounding pushed -tiny + pi up to pi
  if (r <= 0.5 * kPi) return detail::lobachevsky_series_core(r);
  return -detail::lobachevsky_series_core(kPi - r);
}

namespace detail {

// Tanh-sinh node tables, shared across calls.  Level 0 holds all integer
// multiples of h = 1; level l > 0 holds the odd multiples of h = 2^-l.
// `offset` is the node's distance from the nearer interval endpoint as a
// fraction of the interval width; `weight` is (pi/2) cosh(kh) / cosh^2(w)
// with w = (pi/2) sinh(kh), computed through the offset to avoid overflow.
struct TanhSinhLevel {
  std::vector<double> offset;
  std::vector<double> weight;
};

inline constexpr int kTanhSinhMaxLevel = 10;
inline constexpr double kTanhSinhArgCap = 6.0;  // beyond kh = 6 the weights underflow

inline const std::vector<TanhSinhLevel>& tanh_sinh_levels() {
  static const std::vector<TanhSinhLevel> levels = [] {
    std::vector<TanhSinhLevel> out(kTanhSinhMaxLevel + 1);
    for (int l = 0; l <= kTanhSinhMaxLevel; ++l) {
      const double h = std::ldexp(1.0, -l);
      const int step = (l == 0) ? 1 : 2;
      const int start = (l == 0) ? 0 : 1;
      for (int k = start; k * h <= kTanhSinhArgCap; k += step) {
        const double kh = k * h;
        const double w = 0.5 * kPi * std::sinh(kh);
        const double d = 1.0 / (1.0 + std::exp(2.0 * w));  // (1 - tanh w)/2
        const double weight = 0.5 * kPi * std::cosh(kh) * 4.0 * d * (1.0 - d);
        out[l].offset.push_back(d);
        out[l].weight.push_back(weight);
      }
    }
    return out;
  }();
  return levels;
}

inline double ln_two_sin(double u) { return std::log(std::abs(2.0 * std::sin(u))); }

// INT_a^b ln|2 sin u| du on a panel free of interior zeros of sin.  A flagged
// endpoint is a zero of sin; integrand values near it are computed from the
// offset so the logarithmic singularity is resolved to full precision.
inline double integrate_ln_two_sin_panel(double a, double b, bool sing_left, bool sing_right,
                                         double abs_tol) {
  const auto& levels = tanh_sinh_levels();
  const double width = b - a;
  const double half = 0.5 * width;
  const double mid = 0.5 * (a + b);

  auto node_pair_sum = [&](double d, double weight) {
    const double off = width * d;
    const double fl = sing_left ? std::log(2.0 * std::sin(off)) : ln_two_sin(a + off);
    const double fr = sing_right ? std::log(2.0 * std::sin(off)) : ln_two_sin(b - off);
    return weight * (fl + fr);
  };

  double node_sum = levels[0].weight[0] * ln_two_sin(mid);
  for (std::size_t i = 1; i < levels[0].offset.size(); ++i)
    node_sum += node_pair_sum(levels[0].offset[i], levels[0].weight[i]);

  double estimate = half * node_sum;  // h = 1 at level 0
  for (int l = 1; l <= kTanhSinhMaxLevel; ++l) {
    for (std::size_t i = 0; i < levels[l].offset.size(); ++i)
      node_sum += node_pair_sum(levels[l].offset[i], levels[l].weight[i]);
    const double h = std::ldexp(1.0, -l);
    const double refined = h * half * node_sum;
    const double change = std::abs(refined - estimate);
    estimate = refined;
    if (l >= 3 && change <= abs_tol) return estimate;
  }
  return estimate;
}

}  // namespace detail

/// Lobachevsky function by tanh-sinh quadrature of the defining integral,
/// split at the multiples of pi inside the integration range.  Kept fully
/// independent of the series path (no periodicity or oddness reduction).
inline double lobachevsky_quadrature(double t, double abs_tol = 1e-13) {
  if (!std::isfinite(t)) throw std::domain_error("lobachevsky_quadrature: non-finite argument");
  if (t == 0.0) return 0.0;
  const double lo = std::min(0.0, t);
  const double hi = std::max(0.0, t);

  std::vector<double> cuts;
  std::vector<bool> at_sin_zero;
  cuts.push_back(lo);
  at_sin_zero.push_back(lo == 0.0);
  const long k_lo = static_cast<long>(std::floor(lo / kPi)) + 1;
  for (long k = k_lo; k * kPi < hi; ++k) {
    const double c = k * kPi;
    if (c > lo && c < hi) {
      cuts.push_back(c);
      at_sin_zero.push_back(true);
    }
  }
  cuts.push_back(hi);
  at_sin_zero.push_back(hi == 0.0);

  const double panel_tol = abs_tol / static_cast<double>(cuts.size());
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    integral += detail::integrate_ln_two_sin_panel(cuts[i], cuts[i + 1], at_sin_zero[i],
                                                   at_sin_zero[i + 1], panel_tol);
  // Lambda(t) = -INT_0^t; for t < 0 the panels cover [t, 0], flipping the sign back.
  return (t > 0.0) ? -integral : integral;
}

/// Evaluation-method switch used where callers want to choose the route.
struct LobachevskyEvaluator {
  enum class Method { Series, Quadrature };
  Method method = Method::Series;
  double target_abs_err = 1e-12;

  double operator()(double t) const {
    return method == Method::Series ? lobachevsky(t) : lobachevsky_quadrature(t, target_abs_err);
  }
};

}  // namespace sphedra
