#pragma once

// Capacity of a spherical triangle and its relatives, all in closed form
// through the Lobachevsky function.  With x* the dual angles and
// s = x1 + x2 + x3:
//
//   theta(x)       = -sum_i Lambda(x*_i) - Lambda((pi+s)/2) + 4 Lambda(pi/4)
//   theta_tilde(x) = -sum_i Lambda(x*_i) - Lambda((pi+s)/2)
//   V(x)           =  sum_i (Lambda(x_i) + Lambda(x*_i)) - Lambda((pi+s)/2)
//
// theta is strictly convex on the interior of the moduli space, has
// d theta / dx_i = ln tan(y_i/2), and extends continuously to the closure;
// the gradient however blows up toward the boundary strata I..IV.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "sphedra/lobachevsky.hpp"
#include "sphedra/triangle.hpp"

namespace sphedra {

/// Capacity theta on the closure of the moduli space.
inline double capacity_theta(const TriangleAngles& x, double eps = kBoundaryEps) {
  if (classify(x, eps) == BoundaryType::Exterior)
    throw std::domain_error("capacity_theta: point outside the closed moduli space");
  const auto d = dual_angles(x);
  return -lobachevsky(d[0]) - lobachevsky(d[1]) - lobachevsky(d[2]) -
         lobachevsky(0.5 * (kPi + x.sum())) + 4.0 * lobachevsky(0.25 * kPi);
}

/// theta without the additive normalization; defined on the closures of both
/// the spherical moduli space and the simplex {x_i > 0, sum < pi} of
/// hyperbolic triangles.
inline double capacity_theta_tilde(const TriangleAngles& x, double eps = kBoundaryEps) {
  const bool in_hyperbolic_closure =
      x[0] >= -eps && x[1] >= -eps && x[2] >= -eps && x.sum() <= kPi + eps;
  if (!in_hyperbolic_closure && classify(x, eps) == BoundaryType::Exterior)
    throw std::domain_error(
        "capacity_theta_tilde: point outside both admissible closures");
  const auto d = dual_angles(x);
  return -lobachevsky(d[0]) - lobachevsky(d[1]) - lobachevsky(d[2]) -
         lobachevsky(0.5 * (kPi + x.sum()));
}

/// The tetrahedral volume function V, defined for any finite angle triple.
inline double capacity_V(const TriangleAngles& x) {
  const auto d = dual_angles(x);
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) acc += lobachevsky(x[i]) + lobachevsky(d[i]);
  return acc - lobachevsky(0.5 * (kPi + x.sum()));
}

/// Gradient of theta; component i is ln tan(y_i/2), evaluated in the
/// cancellation-free log form
///   (1/2) [ ln sin x*_i - ln sin x*_j - ln sin x*_k + ln |cos(s/2)| ].
inline std::array<double, 3> grad_theta(const TriangleAngles& x) {
  detail::require_interior(x, "grad_theta");
  const auto d = dual_angles(x);
  const double s = x.sum();
  const std::array<double, 3> ls{std::log(std::sin(d[0])), std::log(std::sin(d[1])),
                                 std::log(std::sin(d[2]))};
  const double lc = std::log(std::abs(std::cos(0.5 * s)));
  std::array<double, 3> g;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    g[i] = 0.5 * (ls[i] - ls[j] - ls[k] + lc);
  }
  return g;
}

/// Hessian of theta: a positive multiple c of the Gram matrix of the
/// triangle's vertex unit vectors,
///   H = c [[1, cos y3, cos y2], [cos y3, 1, cos y1], [cos y2, cos y1, 1]],
///   c = (sin x_i / sin y_i) / (sin y_i sin x_j sin x_k),
/// with c independent of i by the sine law.  Symmetric positive definite on
/// the interior.
inline Matrix3 hessian_theta(const TriangleAngles& x) {
  detail::require_interior(x, "hessian_theta");
  const auto d = dual_angles(x);
  const double s = x.sum();
  std::array<double, 3> cos_y, sin_y;
  for (int i = 0; i < 3; ++i) {
    const double t2 = detail::half_angle_tan_sq(d, s, i);
    cos_y[i] = (1.0 - t2) / (1.0 + t2);
    sin_y[i] = 2.0 * std::sqrt(std::max(t2, 0.0)) / (1.0 + t2);
  }
  std::array<double, 3> scale;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    scale[i] = std::sin(x[i]) / (sin_y[i] * sin_y[i] * std::sin(x[j]) * std::sin(x[k]));
  }
  const double c = scale[0];
  // Sine-law self-check: the three routes to c must coincide.
  for (int i = 1; i < 3; ++i)
    if (std::abs(scale[i] - c) > 1e-10 * std::abs(c))
      throw std::runtime_error("hessian_theta: sine-law consistency check failed");
  Matrix3 h{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    h[i][i] = c;
    h[i][j] = c * cos_y[k];
    h[i][k] = c * cos_y[j];
  }
  return h;
}

/// Value plus optional derivatives; derivatives are populated only when the
/// point is interior at the given tolerance.
struct CapacityValue {
  double value = 0.0;
  std::optional<std::array<double, 3>> gradient;
  std::optional<Matrix3> hessian;
};

inline CapacityValue capacity_at(const TriangleAngles& x, double eps = kBoundaryEps) {
  CapacityValue out;
  out.value = capacity_theta(x, eps);
  if (classify(x, eps) == BoundaryType::Interior) {
    out.gradient = grad_theta(x);
    out.hessian = hessian_theta(x);
  }
  return out;
}

/// Both expansions of the derivative of t -> theta((1-t) a + t p) along a
/// segment from a closure point a to an interior point p:
///   direct:    sum_i ln tan(y_i(t)/2) (p_i - a_i)
///   regrouped: 2 sum_i S(x*_i(t)) (p*_i - a*_i) + C(x(t)) (sum p - sum a)
/// with S(u) = (1/2) ln sin u and C(x) = (1/2) ln |cos(s/2)|.  The regrouped
/// form keeps the mutually cancelling log terms together and is the stabler
/// one near the corner strata.
struct SegmentDerivative {
  double direct = 0.0;
  double regrouped = 0.0;
};

inline SegmentDerivative segment_derivative_forms(const TriangleAngles& a,
                                                  const TriangleAngles& p, double t) {
  if (!(t > 0.0 && t <= 1.0))
    throw std::domain_error("segment_derivative: t must lie in (0, 1]");
  const TriangleAngles x{(1.0 - t) * a[0] + t * p[0], (1.0 - t) * a[1] + t * p[1],
                         (1.0 - t) * a[2] + t * p[2]};
  detail::require_interior(x, "segment_derivative");
  const auto d = dual_angles(x);
  const double s = x.sum();
  const std::array<double, 3> log_sin{std::log(std::sin(d[0])), std::log(std::sin(d[1])),
                                      std::log(std::sin(d[2]))};
  const double log_cos = std::log(std::abs(std::cos(0.5 * s)));

  SegmentDerivative out;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double ln_tan_half = 0.5 * (log_sin[i] - log_sin[j] - log_sin[k] + log_cos);
    out.direct += ln_tan_half * (p[i] - a[i]);
  }
  const auto da = dual_angles(a);
  const auto dp = dual_angles(p);
  for (int i = 0; i < 3; ++i) out.regrouped += 2.0 * (0.5 * log_sin[i]) * (dp[i] - da[i]);
  out.regrouped += 0.5 * log_cos * (p.sum() - a.sum());
  return out;
}

inline double segment_derivative(const TriangleAngles& a, const TriangleAngles& p, double t) {
  return segment_derivative_forms(a, p, t).regrouped;
}

/// Diagnostic for the two octahedron-volume expressions attached to theta:
/// the closed form 16 Lambda(pi/4) - 4 theta(x) versus the sum of the four
/// tetrahedral volumes V over the angle triples of the associated triangles.
/// Their ratio is reported, not asserted.
struct OctahedronVolumeDiagnostic {
  double closed_form = 0.0;
  double tetrahedra_sum = 0.0;
  double ratio = 0.0;
};

inline OctahedronVolumeDiagnostic octahedron_volume_diagnostic(const TriangleAngles& x,
                                                               double eps = kBoundaryEps) {
  OctahedronVolumeDiagnostic out;
  out.closed_form = 16.0 * lobachevsky(0.25 * kPi) - 4.0 * capacity_theta(x, eps);
  out.tetrahedra_sum = capacity_V(x) + capacity_V({x[0], kPi - x[1], kPi - x[2]}) +
                       capacity_V({kPi - x[0], x[1], kPi - x[2]}) +
                       capacity_V({kPi - x[0], kPi - x[1], x[2]});
  out.ratio = out.closed_form / out.tetrahedra_sum;
  return out;
}

}  // namespace sphedra
