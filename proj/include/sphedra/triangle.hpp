#pragma once

// Constant-curvature triangle trigonometry on the moduli space of spherical
// triangles
//
//     M3 = { x in (0,pi)^3 : x*_i > 0, x1 + x2 + x3 > pi },
//
// where x*_i = (pi + x_i - x_j - x_k)/2 are the dual angles.  The closure of
// M3 is a tetrahedron whose boundary splits into six strata (I..VI); the
// classifier below tags points against that stratification.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "sphedra/lobachevsky.hpp"

namespace sphedra {

inline constexpr double kBoundaryEps = 1e-9;     // default classification tolerance
inline constexpr double kInteriorGuard = 1e-12;  // closer than this to the boundary is rejected

struct TriangleAngles {
  std::array<double, 3> v{};
  TriangleAngles() = default;
  TriangleAngles(double a, double b, double c) : v{a, b, c} {}
  double operator[](std::size_t i) const { return v[i]; }
  double& operator[](std::size_t i) { return v[i]; }
  double sum() const { return v[0] + v[1] + v[2]; }
};

struct TriangleLengths {
  std::array<double, 3> v{};
  TriangleLengths() = default;
  TriangleLengths(double a, double b, double c) : v{a, b, c} {}
  double operator[](std::size_t i) const { return v[i]; }
  double& operator[](std::size_t i) { return v[i]; }
  double sum() const { return v[0] + v[1] + v[2]; }
};

enum class BoundaryType { Interior, TypeI, TypeII, TypeIII, TypeIV, TypeV, TypeVI, Exterior };

inline const char* to_string(BoundaryType t) {
  switch (t) {
    case BoundaryType::Interior: return "interior";
    case BoundaryType::TypeI: return "I";
    case BoundaryType::TypeII: return "II";
    case BoundaryType::TypeIII: return "III";
    case BoundaryType::TypeIV: return "IV";
    case BoundaryType::TypeV: return "V";
    case BoundaryType::TypeVI: return "VI";
    case BoundaryType::Exterior: return "exterior";
  }
  return "?";
}

/// Dual angles x*_i = (pi + x_i - x_j - x_k)/2.
inline std::array<double, 3> dual_angles(const TriangleAngles& x) {
  return {0.5 * (kPi + x[0] - x[1] - x[2]),
          0.5 * (kPi + x[1] - x[0] - x[2]),
          0.5 * (kPi + x[2] - x[0] - x[1])};
}

/// Smallest slack among the defining inequalities of M3 (box, duals, angle sum).
/// Positive exactly on the interior.
inline double interior_margin(const TriangleAngles& x) {
  const auto d = dual_angles(x);
  double m = x.sum() - kPi;
  for (int i = 0; i < 3; ++i) {
    m = std::min(m, x[i]);
    m = std::min(m, kPi - x[i]);
    m = std::min(m, d[i]);
  }
  return m;
}

/// Tag a point of R^3 against the stratification of the closed moduli space.
/// Equalities are read as |.| <= eps, strict inequalities as margin > eps;
/// the most degenerate strata (vertices, then edges, then faces) are matched
/// first so that a point lands in exactly one class.
inline BoundaryType classify(const TriangleAngles& x, double eps = kBoundaryEps) {
  const auto d = dual_angles(x);
  const double s = x.sum();

  if (interior_margin(x) > eps) return BoundaryType::Interior;

  // Closure membership up to eps.
  for (int i = 0; i < 3; ++i)
    if (x[i] < -eps || x[i] > kPi + eps || d[i] < -eps) return BoundaryType::Exterior;
  if (s < kPi - eps) return BoundaryType::Exterior;

  auto near_zero = [eps](double a) { return std::abs(a) <= eps; };
  auto strict_open = [eps](double a) { return a > eps && a < kPi - eps; };

  // V: the vertex (pi, pi, pi).
  if (near_zero(x[0] - kPi) && near_zero(x[1] - kPi) && near_zero(x[2] - kPi))
    return BoundaryType::TypeV;

  // VI: the vertices with one angle pi and the other two zero.
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (near_zero(x[i] - kPi) && near_zero(x[j]) && near_zero(x[k])) return BoundaryType::TypeVI;
  }

  // IV: open edges from (pi,pi,pi); x_i = pi, the two adjacent duals vanish.
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (near_zero(x[i] - kPi) && near_zero(d[j]) && near_zero(d[k]) && strict_open(d[i]) &&
        s > kPi + eps)
      return BoundaryType::TypeIV;
  }

  // III: open edges of the triangle cut out by the angle-sum plane.
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (near_zero(d[i]) && near_zero(s - kPi) && strict_open(d[j]) && strict_open(d[k]))
      return BoundaryType::TypeIII;
  }

  // II: one dual vanishes, angle sum still above pi.
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (near_zero(d[i]) && strict_open(d[j]) && strict_open(d[k]) && s > kPi + eps)
      return BoundaryType::TypeII;
  }

  // I: the open angle-sum face (on it the duals equal the angles themselves).
  if (near_zero(s - kPi) && strict_open(d[0]) && strict_open(d[1]) && strict_open(d[2]))
    return BoundaryType::TypeI;

  return BoundaryType::Exterior;
}

/// Strict validity test for a spherical length triple: each side in (0,pi),
/// triangle inequalities, perimeter below 2 pi.
inline bool is_spherical_length_triple(const TriangleLengths& y) {
  for (int i = 0; i < 3; ++i) {
    if (!(y[i] > 0.0 && y[i] < kPi)) return false;
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (!(y[i] < y[j] + y[k])) return false;
  }
  return y.sum() < 2.0 * kPi;
}

namespace detail {

inline void require_interior(const TriangleAngles& x, const char* who) {
  if (!(interior_margin(x) >= kInteriorGuard))
    throw std::domain_error(std::string(who) + ": angles not strictly inside the moduli space");
}

// Right-hand side of the half-angle cosine law
//   tan^2(y_i/2) = -sin x*_i cos((x1+x2+x3)/2) / (sin x*_j sin x*_k),
// strictly positive on the interior.
inline double half_angle_tan_sq(const std::array<double, 3>& d, double s, int i) {
  const int j = (i + 1) % 3, k = (i + 2) % 3;
  return -std::sin(d[i]) * std::cos(0.5 * s) / (std::sin(d[j]) * std::sin(d[k]));
}

// Edge length opposite corner i via the half-angle form; well conditioned all
// the way down to the interior guard.
inline double corner_length_half_angle(const std::array<double, 3>& d, double s, int i) {
  const double t2 = half_angle_tan_sq(d, s, i);
  return 2.0 * std::atan(std::sqrt(std::max(t2, 0.0)));
}

}  // namespace detail

/// Edge length opposite corner i computed through the half-angle cosine law.
/// Preferred for metric extraction and anywhere near-degenerate triangles occur.
inline double corner_length(const TriangleAngles& x, int i) {
  detail::require_interior(x, "corner_length");
  return detail::corner_length_half_angle(dual_angles(x), x.sum(), i);
}

/// Spherical cosine law, angles to lengths:
///   cos y_i = (cos x_i + cos x_j cos x_k) / (sin x_j sin x_k).
/// The arccos value is cross-validated against the half-angle form; a
/// disagreement beyond 1e-10 radians reports an internal inconsistency.
inline TriangleLengths angles_to_lengths(const TriangleAngles& x) {
  detail::require_interior(x, "angles_to_lengths");
  const auto d = dual_angles(x);
  const double s = x.sum();
  const std::array<double, 3> c{std::cos(x[0]), std::cos(x[1]), std::cos(x[2])};
  const std::array<double, 3> sn{std::sin(x[0]), std::sin(x[1]), std::sin(x[2])};
  TriangleLengths y;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    double r = (c[i] + c[j] * c[k]) / (sn[j] * sn[k]);
    r = std::min(1.0, std::max(-1.0, r));
    y[i] = std::acos(r);
    const double y_half = detail::corner_length_half_angle(d, s, i);
    if (std::abs(y[i] - y_half) > 1e-10)
      throw std::runtime_error("angles_to_lengths: cosine-law and half-angle forms disagree");
  }
  return y;
}

/// Dual cosine law, lengths to angles:
///   cos x_i = (cos y_i - cos y_j cos y_k) / (sin y_j sin y_k).
inline TriangleAngles lengths_to_angles(const TriangleLengths& y) {
  for (int i = 0; i < 3; ++i)
    if (!(y[i] > 0.0 && y[i] < kPi))
      throw std::domain_error("lengths_to_angles: side " + std::to_string(i + 1) +
                              " outside (0, pi)");
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (!(y[i] < y[j] + y[k]))
      throw std::domain_error("lengths_to_angles: triangle inequality fails at side " +
                              std::to_string(i + 1));
  }
  if (!(y.sum() < 2.0 * kPi))
    throw std::domain_error("lengths_to_angles: perimeter is not below 2*pi");

  const std::array<double, 3> c{std::cos(y[0]), std::cos(y[1]), std::cos(y[2])};
  const std::array<double, 3> sn{std::sin(y[0]), std::sin(y[1]), std::sin(y[2])};
  TriangleAngles x;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    double r = (c[i] - c[j] * c[k]) / (sn[j] * sn[k]);
    r = std::min(1.0, std::max(-1.0, r));
    x[i] = std::acos(r);
  }
  return x;
}

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Jacobian of the length map, J[i][j] = dy_i/dx_j:
///   dy_i/dx_i = sin x_i / A   with A = sin y_i sin x_j sin x_k,
///   dy_i/dx_j = dy_i/dx_i * cos y_k.
/// A is symmetric under cyclic permutation of the indices (sine law).
inline Matrix3 length_jacobian(const TriangleAngles& x) {
  detail::require_interior(x, "length_jacobian");
  const TriangleLengths y = angles_to_lengths(x);
  Matrix3 jac{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double area_factor = std::sin(y[i]) * std::sin(x[j]) * std::sin(x[k]);
    const double diag = std::sin(x[i]) / area_factor;
    jac[i][i] = diag;
    jac[i][j] = diag * std::cos(y[k]);
    jac[i][k] = diag * std::cos(y[j]);
  }
  return jac;
}

}  // namespace sphedra
