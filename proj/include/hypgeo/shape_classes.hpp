#pragma once

// Ma-Minda generator families phi = 1 + Q for the three geometric classes,
// their boundary values on |zeta| = 1, and the pointwise membership tests.
//
// Boundary parametrization:
//   spiral-type (incl. starlike of order alpha): zeta = e^{i theta},
//     theta in (0, 2 pi), s = cot(theta / 2) in R.
//   strongly starlike: theta in (-pi, pi) \ {0}, sign = sgn(theta),
//     s = cot(|theta| / 2) in (0, inf).

#include <cmath>
#include <complex>
#include <string>
#include <variant>

#include "hypgeo/error.hpp"
#include "hypgeo/format.hpp"
#include "hypgeo/hypergeom.hpp"

namespace hypgeo {

/// Starlike of order alpha, alpha in [0, 1). Evaluates as SpirallikeOrder{0, alpha}.
struct StarlikeOrder {
  double alpha = 0.0;
  friend bool operator==(const StarlikeOrder&, const StarlikeOrder&) = default;
};

/// Strongly starlike of order alpha, alpha in (0, 1).
struct StronglyStarlike {
  double alpha = 0.5;
  friend bool operator==(const StronglyStarlike&, const StronglyStarlike&) = default;
};

/// lambda-spirallike of order alpha, |lambda| < pi/2, alpha in [0, 1).
struct SpirallikeOrder {
  double lambda = 0.0;
  double alpha = 0.0;
  friend bool operator==(const SpirallikeOrder&, const SpirallikeOrder&) = default;
};

using ShapeClass = std::variant<StarlikeOrder, StronglyStarlike, SpirallikeOrder>;

inline void validate(const ShapeClass& cls) {
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, StronglyStarlike>) {
          if (!(c.alpha > 0.0 && c.alpha < 1.0)) {
            throw Error(ErrorCode::InvalidParams, "strongly starlike order must lie in (0, 1)");
          }
        } else {
          if (!(c.alpha >= 0.0 && c.alpha < 1.0)) {
            throw Error(ErrorCode::InvalidParams, "order alpha must lie in [0, 1)");
          }
          if constexpr (std::is_same_v<T, SpirallikeOrder>) {
            if (!(std::abs(c.lambda) < kPi / 2)) {
              throw Error(ErrorCode::InvalidParams, "lambda must satisfy |lambda| < pi/2");
            }
          }
        }
      },
      cls);
}

inline ShapeClass make_starlike(double alpha) {
  ShapeClass c = StarlikeOrder{alpha};
  validate(c);
  return c;
}

inline ShapeClass make_strongly_starlike(double alpha) {
  ShapeClass c = StronglyStarlike{alpha};
  validate(c);
  return c;
}

inline ShapeClass make_spirallike(double lambda, double alpha) {
  ShapeClass c = SpirallikeOrder{lambda, alpha};
  validate(c);
  return c;
}

inline double class_alpha(const ShapeClass& cls) {
  return std::visit([](const auto& c) { return c.alpha; }, cls);
}

inline bool is_strongly_starlike(const ShapeClass& cls) {
  return std::holds_alternative<StronglyStarlike>(cls);
}

/// Family tag used in JSON and on the command line.
inline std::string family_name(const ShapeClass& cls) {
  switch (cls.index()) {
    case 0: return "starlike";
    case 1: return "strongly-starlike";
    default: return "spirallike";
  }
}

inline std::string describe(const ShapeClass& cls) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, StarlikeOrder>) {
          return "starlike of order " + format_real(c.alpha);
        } else if constexpr (std::is_same_v<T, StronglyStarlike>) {
          return "strongly starlike of order " + format_real(c.alpha);
        } else {
          return format_real(c.lambda) + "-spirallike of order " + format_real(c.alpha);
        }
      },
      cls);
}

namespace detail {

struct SpiralView {
  double lambda;
  double alpha;
};

// Starlike of order alpha and the spirallike family share every formula;
// routing both through here keeps them bit-identical at lambda = 0.
inline SpiralView spiral_view(const ShapeClass& cls) {
  if (const auto* s = std::get_if<StarlikeOrder>(&cls)) return {0.0, s->alpha};
  const auto& sp = std::get<SpirallikeOrder>(cls);
  return {sp.lambda, sp.alpha};
}

}  // namespace detail

/// mu = (1 - alpha) e^{i lambda} cos(lambda); Q(z) = 2 mu z / (1 - z).
inline cplx spiral_mu(double lambda, double alpha) {
  return (1.0 - alpha) * std::cos(lambda) * std::polar(1.0, lambda);
}

/// nu = (1 - alpha) cos(lambda).
inline double spiral_nu(double lambda, double alpha) { return (1.0 - alpha) * std::cos(lambda); }

inline cplx q_class(const ShapeClass& cls, cplx z) {
  if (const auto* ss = std::get_if<StronglyStarlike>(&cls)) {
    return std::pow((1.0 + z) / (1.0 - z), ss->alpha) - 1.0;
  }
  const auto v = detail::spiral_view(cls);
  const cplx mu = spiral_mu(v.lambda, v.alpha);
  return 2.0 * mu * z / (1.0 - z);
}

inline cplx phi(const ShapeClass& cls, cplx z) {
  if (const auto* ss = std::get_if<StronglyStarlike>(&cls)) {
    return std::pow((1.0 + z) / (1.0 - z), ss->alpha);
  }
  return 1.0 + q_class(cls, z);
}

struct BoundaryPoint {
  double theta = 0.0;
  cplx zeta = 1.0;
  double s = 0.0;
  int sign = 1;  // sgn(theta); only meaningful for strongly starlike
};

/// Boundary point for theta (any real; reduced to the class's range).
/// theta = 0 (mod 2 pi) is the pole/branch point and is rejected.
inline BoundaryPoint boundary_point(const ShapeClass& cls, double theta) {
  double t = std::remainder(theta, 2.0 * kPi);  // (-pi, pi]
  if (t == 0.0) {
    throw Error(ErrorCode::InvalidParams, "theta = 0 is an exceptional boundary point");
  }
  BoundaryPoint pt;
  if (is_strongly_starlike(cls)) {
    pt.theta = t;
    pt.sign = t > 0 ? 1 : -1;
    pt.s = 1.0 / std::tan(std::abs(t) / 2.0);
  } else {
    if (t < 0) t += 2.0 * kPi;
    pt.theta = t;
    pt.s = 1.0 / std::tan(t / 2.0);
  }
  pt.zeta = std::polar(1.0, pt.theta);
  return pt;
}

/// Boundary point addressed directly by s (and sign for strongly starlike).
inline BoundaryPoint boundary_point_from_s(const ShapeClass& cls, double s, int sign = 1) {
  BoundaryPoint pt;
  pt.s = s;
  if (is_strongly_starlike(cls)) {
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidParams, "strongly starlike boundary needs s > 0");
    pt.sign = sign >= 0 ? 1 : -1;
    pt.theta = pt.sign * 2.0 * std::atan2(1.0, s);
  } else {
    pt.theta = 2.0 * std::atan2(1.0, s);
  }
  pt.zeta = std::polar(1.0, pt.theta);
  return pt;
}

/// Q(zeta): mu(-1 + i s) for spiral-type, e^{i sign pi alpha / 2} s^alpha - 1 for strongly starlike.
inline cplx boundary_Q(const ShapeClass& cls, const BoundaryPoint& pt) {
  if (const auto* ss = std::get_if<StronglyStarlike>(&cls)) {
    const double beta = pt.sign * kPi * ss->alpha / 2.0;
    return std::polar(std::pow(pt.s, ss->alpha), beta) - 1.0;
  }
  const auto v = detail::spiral_view(cls);
  return spiral_mu(v.lambda, v.alpha) * cplx(-1.0, pt.s);
}

/// zeta Q'(zeta): -mu (1 + s^2) / 2, or -(alpha/2) e^{-i gamma} s^alpha (s + 1/s)
/// with gamma = sign pi (1 - alpha) / 2.
inline cplx boundary_zQprime(const ShapeClass& cls, const BoundaryPoint& pt) {
  if (const auto* ss = std::get_if<StronglyStarlike>(&cls)) {
    if (!(pt.s > 0.0)) {
      throw Error(ErrorCode::PrecondFailed, "zeta Q'(zeta) is unbounded at s = 0");
    }
    const double gamma = pt.sign * kPi * (1.0 - ss->alpha) / 2.0;
    const double mag = ss->alpha / 2.0 * std::pow(pt.s, ss->alpha) * (pt.s + 1.0 / pt.s);
    return -std::polar(mag, -gamma);
  }
  const auto v = detail::spiral_view(cls);
  return -spiral_mu(v.lambda, v.alpha) * (1.0 + pt.s * pt.s) / 2.0;
}

struct Membership {
  bool passes = false;
  double slack = 0.0;
};

/// Pointwise defining inequality of the class at w = z f'(z) / f(z).
inline Membership membership_predicate(const ShapeClass& cls, cplx w) {
  double slack = 0.0;
  if (const auto* ss = std::get_if<StronglyStarlike>(&cls)) {
    const double half_opening = kPi * ss->alpha / 2.0;
    slack = (w == cplx(0.0)) ? -half_opening : half_opening - std::abs(std::arg(w));
  } else {
    const auto v = detail::spiral_view(cls);
    slack = (std::polar(1.0, -v.lambda) * w).real() - v.alpha * std::cos(v.lambda);
  }
  return {slack > 0.0, slack};
}

struct Admissibility {
  bool ok = false;
  cplx value;  // zeta_1 P'(zeta_1) at zeta_1 = 1, P = 1/Q
  std::string note;
};

/// Condition (vi) of the admissible class at the simple pole zeta_1 = 1.
inline Admissibility admissibility_vi(const ShapeClass& cls, double tol = 1e-12) {
  if (const auto* ss = std::get_if<StronglyStarlike>(&cls)) {
    return {true, cplx(0.0),
            "beta_1 = 1/alpha = " + format_real(1.0 / ss->alpha) + " > 1, condition (vi) vacuous"};
  }
  const auto v = detail::spiral_view(cls);
  const cplx value = -1.0 / ((1.0 - v.alpha) * (1.0 + std::polar(1.0, 2.0 * v.lambda)));
  const bool in_unit_interval =
      std::abs(value.imag()) <= tol && value.real() >= -tol && value.real() <= 1.0 + tol;
  return {!in_unit_interval, value,
          in_unit_interval ? "P'(1) lies in [0, 1]" : "P'(1) avoids [0, 1]"};
}

}  // namespace hypgeo
