#pragma once

// Independent numerical validators used by the certificate checkers and
// their tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "hypgeo/error.hpp"
#include "hypgeo/format.hpp"
#include "hypgeo/hypergeom.hpp"

namespace hypgeo {

/// |B|^2 - |A|^2 with A = w (w + c - 1), B = (w + a)(w + b), evaluated directly.
inline double ab_difference_direct(cplx w, cplx a, cplx b, cplx c) {
  return std::norm((w + a) * (w + b)) - std::norm(w * (w + c - 1.0));
}

/// The same quantity in the expanded form
///   |w|^2 (2 Re[p conj(w)] + |a|^2 + |b|^2 - |c-1|^2)
///   + (2 Re[a conj(w)] + |a|^2)(2 Re[b conj(w)] + |b|^2).
inline double ab_difference_expanded(cplx w, cplx a, cplx b, cplx c) {
  const cplx p = a + b + 1.0 - c;
  const cplx wc = std::conj(w);
  const double na = std::norm(a), nb = std::norm(b);
  return std::norm(w) * (2.0 * (p * wc).real() + na + nb - std::norm(c - 1.0)) +
         (2.0 * (a * wc).real() + na) * (2.0 * (b * wc).real() + nb);
}

inline double ab_identity_residual(cplx w, cplx a, cplx b, cplx c) {
  return std::abs(ab_difference_direct(w, a, b, c) - ab_difference_expanded(w, a, b, c));
}

/// L s^2 - 2 M s + N >= 0 for every real s.
inline bool quadratic_nonneg_exact(double L, double M, double N) {
  return L >= 0.0 && N >= 0.0 && L * N - M * M >= 0.0;
}

struct QuadraticGrid {
  int n_points = 4096;
  int refine_iters = 80;
  double rel_tol = 1e-9;
};

namespace detail {

// (L s^2 - 2 M s + N) / (1 + s^2) at s = tan(u): bounded on u in [-pi/2, pi/2]
// with the value L at both ends, so the tails s -> +-inf are part of the scan.
inline double quadratic_on_circle(double L, double M, double N, double u) {
  const double sn = std::sin(u), cs = std::cos(u);
  return L * sn * sn - 2.0 * M * sn * cs + N * cs * cs;
}

template <class F>
double golden_min(F&& f, double lo, double hi, int iters) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

}  // namespace detail

/// Sampled counterpart of quadratic_nonneg_exact: scans s = tan(u) for u
/// uniform in [-pi/2, pi/2], refines the smallest sample by golden section and
/// accepts when the normalized minimum is >= -rel_tol * (|L| + |M| + |N|).
inline bool quadratic_nonneg_sampled(double L, double M, double N, const QuadraticGrid& grid = {}) {
  if (L < 0.0) return false;  // s^2 coefficient decides s -> +-inf
  const double scale = std::abs(L) + std::abs(M) + std::abs(N);
  const double floor = -grid.rel_tol * scale;
  const int n = std::max(grid.n_points, 8);
  const double h = kPi / n;
  auto g = [&](double u) { return detail::quadratic_on_circle(L, M, N, u); };

  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double v = g(-kPi / 2 + i * h);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double u0 = -kPi / 2 + best * h;
  const double u_ref = detail::golden_min(g, u0 - h, u0 + h, grid.refine_iters);
  return std::min(best_val, g(u_ref)) >= floor;
}

struct LineSearchSettings {
  double s_min = 1e-8;
  double s_max = 1e8;
  int n_log_points = 2000;
  int refine_iters = 60;
  double min_margin = 1e-9;
};

inline void validate(const LineSearchSettings& ls) {
  if (!(ls.s_min > 0.0 && ls.s_min < ls.s_max)) {
    throw Error(ErrorCode::InvalidParams, "line search needs 0 < s_min < s_max");
  }
  if (ls.n_log_points < 16) throw Error(ErrorCode::InvalidParams, "n_log_points must be >= 16");
  if (ls.refine_iters < 0) throw Error(ErrorCode::InvalidParams, "refine_iters must be >= 0");
  if (!(ls.min_margin >= 0.0)) throw Error(ErrorCode::InvalidParams, "min_margin must be >= 0");
}

enum class EndpointVerdict { SafeBothEnds, DivergesAtZero, DivergesAtInfinity };

inline std::string_view to_string(EndpointVerdict v) {
  switch (v) {
    case EndpointVerdict::SafeBothEnds: return "SafeBothEnds";
    case EndpointVerdict::DivergesAtZero: return "DivergesAtZero";
    case EndpointVerdict::DivergesAtInfinity: return "DivergesAtInfinity";
  }
  return "?";
}

/// One term coefficient * s^exponent of a residual's generalized-polynomial form.
struct PowerTerm {
  double coefficient;
  double exponent;
};

struct MinimizerResult {
  double min_value = 0.0;
  double argmin_s = 0.0;
  EndpointVerdict endpoint_verdict = EndpointVerdict::SafeBothEnds;
  bool conclusive = true;
};

namespace detail {

// Sign of the dominant term as s -> 0 (toward_infinity = false) or s -> inf.
// Terms with equal exponents (to 1e-12) are merged first.
inline int leading_sign(std::span<const PowerTerm> terms, bool toward_infinity) {
  std::vector<PowerTerm> merged;
  for (const auto& t : terms) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const PowerTerm& m) {
      return std::abs(m.exponent - t.exponent) <= 1e-12;
    });
    if (it == merged.end()) {
      merged.push_back(t);
    } else {
      it->coefficient += t.coefficient;
    }
  }
  double scale = 0.0;
  for (const auto& t : terms) scale = std::max(scale, std::abs(t.coefficient));
  const double eps = 1e-14 * scale;
  std::sort(merged.begin(), merged.end(),
            [](const PowerTerm& x, const PowerTerm& y) { return x.exponent < y.exponent; });
  if (toward_infinity) std::reverse(merged.begin(), merged.end());
  for (const auto& t : merged) {
    if (std::abs(t.coefficient) > eps) return t.coefficient > 0 ? 1 : -1;
  }
  return 0;
}

}  // namespace detail

/// Minimizes residual(s) over [s_min, s_max]: log-spaced scan followed by
/// golden-section refinement (in log s) around the three smallest samples.
///
/// When `asymptotics` is non-empty it describes residual(s) as a sum of power
/// terms and fixes the endpoint verdict from the leading terms at s -> 0 and
/// s -> inf; otherwise the sign of the residual at s_min and s_max is used.
template <class Residual>
MinimizerResult minimize_on_positive_line(Residual&& residual, const LineSearchSettings& settings = {},
                                          std::span<const PowerTerm> asymptotics = {}) {
  validate(settings);
  const int n = settings.n_log_points;
  const double t_lo = std::log(settings.s_min), t_hi = std::log(settings.s_max);
  const double dt = (t_hi - t_lo) / (n - 1);

  auto eval = [&](double t) {
    const double s = std::exp(t);
    const double v = residual(s);
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::NonFinite, "residual is not finite at s = " + format_real(s));
    }
    return v;
  };

  std::vector<double> ts(n), vals(n);
  for (int i = 0; i < n; ++i) {
    ts[i] = (i == n - 1) ? t_hi : t_lo + i * dt;
    vals[i] = eval(ts[i]);
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  // ties broken by smaller s
  std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                    [&](int x, int y) { return vals[x] < vals[y] || (vals[x] == vals[y] && x < y); });

  MinimizerResult result;
  result.min_value = vals[order[0]];
  double best_t = ts[order[0]];
  for (int k = 0; k < 3; ++k) {
    const int i = order[k];
    const double lo = ts[std::max(i - 1, 0)], hi = ts[std::min(i + 1, n - 1)];
    const double t = detail::golden_min(eval, lo, hi, settings.refine_iters);
    const double v = eval(t);
    if (v < result.min_value) {
      result.min_value = v;
      best_t = t;
    }
  }
  result.argmin_s = std::exp(best_t);

  int at_zero = 0, at_inf = 0;
  if (!asymptotics.empty()) {
    at_zero = detail::leading_sign(asymptotics, false);
    at_inf = detail::leading_sign(asymptotics, true);
  } else {
    at_zero = vals.front() > 0 ? 1 : -1;
    at_inf = vals.back() > 0 ? 1 : -1;
  }
  if (at_zero <= 0) {
    result.endpoint_verdict = EndpointVerdict::DivergesAtZero;
  } else if (at_inf <= 0) {
    result.endpoint_verdict = EndpointVerdict::DivergesAtInfinity;
  }
  result.conclusive = std::abs(result.min_value) > settings.min_margin;
  return result;
}

/// Sufficient condition for A s^alpha + B + C s^-alpha <= K (s + 1/s) on s > 0.
///
/// Uses max(B, 0)/2 + max{A, C} <= K: the bound B <= (B/2)(s^alpha + s^-alpha)
/// only holds for B >= 0, so a negative B cannot be credited.
inline bool half_plane_bound_check(double A, double B, double C, double K, double alpha) {
  if (!(K > 0.0) || !(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "half_plane_bound_check needs K > 0 and alpha in (0, 1)");
  }
  return std::max(B, 0.0) / 2.0 + std::max(A, C) <= K;
}

}  // namespace hypgeo
