#pragma once

// Closed-form sufficient conditions for f(z) = z 2F1(a,b;c;z) to lie in one of
// the shape classes, and the general boundary-grid check they all specialize.
//
// Every checker evaluates all of its conditions (no short-circuit) and records
// them in the returned Certificate.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypgeo/error.hpp"
#include "hypgeo/format.hpp"
#include "hypgeo/hypergeom.hpp"
#include "hypgeo/oracles.hpp"
#include "hypgeo/shape_classes.hpp"

namespace hypgeo {

enum class CertificateKind {
  GeneralMain,
  StarlikeOrderThm,
  CorA2,
  SpirallikeThm,
  SpirallikeCor1,
  SpirallikeCor2,
  StrongStarlikeThm,
  StrongStarlikeCorP0,
  StrongStarlikeCorMax,
  StrongStarlikeCorFinal,
  TheoremA,
  ConvexityWrapper,
};

inline std::string_view to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::GeneralMain: return "GeneralMain";
    case CertificateKind::StarlikeOrderThm: return "StarlikeOrderThm";
    case CertificateKind::CorA2: return "CorA2";
    case CertificateKind::SpirallikeThm: return "SpirallikeThm";
    case CertificateKind::SpirallikeCor1: return "SpirallikeCor1";
    case CertificateKind::SpirallikeCor2: return "SpirallikeCor2";
    case CertificateKind::StrongStarlikeThm: return "StrongStarlikeThm";
    case CertificateKind::StrongStarlikeCorP0: return "StrongStarlikeCorP0";
    case CertificateKind::StrongStarlikeCorMax: return "StrongStarlikeCorMax";
    case CertificateKind::StrongStarlikeCorFinal: return "StrongStarlikeCorFinal";
    case CertificateKind::TheoremA: return "TheoremA";
    case CertificateKind::ConvexityWrapper: return "ConvexityWrapper";
  }
  return "?";
}

struct Condition {
  std::string name;
  std::string value;
  std::string threshold;
  bool pass = false;
};

struct Certificate {
  Certificate(CertificateKind k, HypergeomParams p, ShapeClass c)
      : kind(k), params(std::move(p)), cls(std::move(c)) {}

  CertificateKind kind;
  bool passed = false;
  std::vector<Condition> conditions;
  HypergeomParams params;
  ShapeClass cls;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, double>> diagnostics;  // insertion-ordered

  void add(std::string name, std::string value, std::string threshold, bool pass) {
    conditions.push_back({std::move(name), std::move(value), std::move(threshold), pass});
    passed = std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.pass; });
  }

  void diag(std::string name, double value) { diagnostics.emplace_back(std::move(name), value); }

  std::optional<double> diagnostic(std::string_view name) const {
    for (const auto& [k, v] : diagnostics) {
      if (k == name) return v;
    }
    return std::nullopt;
  }

  const Condition* first_failure() const {
    for (const auto& c : conditions) {
      if (!c.pass) return &c;
    }
    return nullptr;
  }
};

/// Strict inequalities are decided as value > kStrictMargin.
inline constexpr double kStrictMargin = 1e-12;
/// "x is real" means |Im x| <= kRealTolerance (1 + |x|).
inline constexpr double kRealTolerance = 1e-12;

namespace detail {

inline bool is_real(cplx x, double tol = kRealTolerance) {
  return std::abs(x.imag()) <= tol * (1.0 + std::abs(x));
}

// Non-strict x >= 0 up to rounding relative to the magnitude of its ingredients.
inline bool nonneg(double x, double magnitude) { return x >= -1e-12 * std::max(1.0, magnitude); }

inline cplx eps_phase(int eps, double angle) { return std::polar(1.0, eps * angle); }

inline void require_alpha(double alpha, bool open_at_zero) {
  const bool ok = open_at_zero ? (alpha > 0.0 && alpha < 1.0) : (alpha >= 0.0 && alpha < 1.0);
  if (!ok) {
    throw Error(ErrorCode::InvalidParams,
                std::string("alpha must lie in ") + (open_at_zero ? "(0, 1)" : "[0, 1)"));
  }
}

inline void require_lambda(double lambda) {
  if (!(std::abs(lambda) < kPi / 2)) {
    throw Error(ErrorCode::InvalidParams, "lambda must satisfy |lambda| < pi/2");
  }
}

inline void require_nonzero_ab(const HypergeomParams& p) {
  if (p.a() * p.b() == cplx(0.0)) throw Error(ErrorCode::InvalidParams, "ab must be nonzero");
}

// c = a + b + 1; rejects a + b in {-1, -2, ...}.
inline HypergeomParams p0_params(cplx a, cplx b) {
  if (is_nonpositive_integer(a + b + 1.0)) {
    throw Error(ErrorCode::InvalidParams, "a + b must avoid {-1, -2, ...}");
  }
  return {a, b, a + b + 1.0};
}

inline std::string eps_label(int eps) { return eps > 0 ? "+" : "-"; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Quadratic-in-s coefficients (starlike of order alpha, spirallike with p = 0)
// ---------------------------------------------------------------------------

enum class LMNSource { StarlikeOrder, Spirallike };

struct LMNCoefficients {
  double L = 0.0;
  double M = 0.0;
  double N = 0.0;
  LMNSource source = LMNSource::StarlikeOrder;

  double at(double s) const { return L * s * s - 2.0 * M * s + N; }
};

/// For starlike of order alpha with real p the boundary inequality reads
/// (1 - alpha)^2 (L s^2 - 2 M s + N) >= 0.
inline LMNCoefficients starlike_order_lmn(const HypergeomParams& params, double alpha) {
  const cplx a = params.a(), b = params.b();
  const double p = params.p().real();
  const double one_m = 1.0 - alpha;
  const double re_ab = (a * b).real();
  const double na = std::norm(a), nb = std::norm(b);
  const double common = re_ab / one_m + p * (1.0 - 2.0 * alpha) - na - nb + std::norm(params.c() - 1.0);
  LMNCoefficients out;
  out.source = LMNSource::StarlikeOrder;
  out.L = common - 4.0 * a.imag() * b.imag();
  out.M = (a * b * (std::conj(a) + std::conj(b) - 2.0 + 2.0 * alpha)).imag() / one_m;
  out.N = common - (2.0 * a.real() - na / one_m) * (2.0 * b.real() - nb / one_m);
  return out;
}

/// For lambda-spirallike of order alpha with c = a + b + 1 the boundary
/// inequality reads nu (L s^2 - 2 M s + N) >= 0, nu = (1 - alpha) cos(lambda).
inline LMNCoefficients spirallike_lmn(cplx a, cplx b, double lambda, double alpha) {
  const cplx rot = std::polar(1.0, -lambda) * a * b;  // e^{-i lambda} ab
  const cplx e2 = std::polar(1.0, -2.0 * lambda);
  const cplx ac = std::conj(a), bc = std::conj(b);
  LMNCoefficients out;
  out.source = LMNSource::Spirallike;
  out.L = (rot * (2.0 - alpha + (1.0 - alpha) * e2)).real();
  out.M = (rot * (ac + bc - (1.0 - alpha) * (1.0 + e2))).imag();
  out.N = (rot * (2.0 * ac + 2.0 * bc + alpha - (1.0 - alpha) * e2)).real() -
          std::norm(a) * std::norm(b) / spiral_nu(lambda, alpha);
  return out;
}

namespace detail {

inline void add_lmn_conditions(Certificate& cert, const LMNCoefficients& q) {
  const double det = q.L * q.N - q.M * q.M;
  cert.add("L >= 0", format_real(q.L), ">= 0", nonneg(q.L, std::abs(q.L)));
  cert.add("N >= 0", format_real(q.N), ">= 0", nonneg(q.N, std::abs(q.N)));
  cert.add("LN - M^2 >= 0", format_real(det), ">= 0",
           nonneg(det, std::abs(q.L * q.N) + q.M * q.M));
  cert.diag("L", q.L);
  cert.diag("M", q.M);
  cert.diag("N", q.N);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Starlike of order alpha
// ---------------------------------------------------------------------------

inline Certificate certify_starlike_order(const HypergeomParams& params, double alpha) {
  detail::require_alpha(alpha, false);
  detail::require_nonzero_ab(params);

  Certificate cert(CertificateKind::StarlikeOrderThm, params, StarlikeOrder{alpha});
  const cplx p = params.p();
  cert.add("p real", format_real(p.imag()), "|Im p| <= 1e-12 (1 + |p|)", detail::is_real(p));

  const double margin = (params.a() * params.b()).real() - p.real() * (1.0 - alpha);
  cert.add("Re[ab] > p (1 - alpha)", format_real(margin), "> 1e-12", margin > kStrictMargin);
  if (std::abs(margin) <= kStrictMargin) {
    cert.notes.push_back(
        "boundary case Re[ab] = p (1 - alpha); for a = 2(1 - alpha) with real b <= c and b + c = 3 "
        "use the CorA2 checker, which accepts this limit");
  }
  detail::add_lmn_conditions(cert, starlike_order_lmn(params, alpha));
  cert.diag("p", p.real());
  return cert;
}

/// z 2F1(a, b + is; c + is; z) with real a, b, c, s: starlike of order 1 - a/2
/// when 0 < a <= 2, b + c >= 3 and b <= c (b + c = 3 included).
inline Certificate certify_cor_a2(double a, double b, double c, double s) {
  const HypergeomParams params(a, cplx(b, s), cplx(c, s));
  const double order = 1.0 - a / 2.0;
  const bool order_ok = order >= 0.0 && order < 1.0;
  Certificate cert(CertificateKind::CorA2, params, StarlikeOrder{order_ok ? order : 0.0});

  cert.add("0 < a <= 2", format_real(a), "(0, 2]", a > 0.0 && a <= 2.0 + kStrictMargin);
  cert.add("b + c >= 3", format_real(b + c), ">= 3", b + c >= 3.0 - kStrictMargin);
  cert.add("b <= c", format_real(c - b), "c - b >= 0", c - b >= -kStrictMargin);
  cert.diag("order", order);
  if (cert.passed) {
    cert.notes.push_back("starlike of order " + format_real(order));
    if (std::abs(b + c - 3.0) <= kStrictMargin) {
      cert.notes.push_back("b + c = 3 is the limiting case, accepted");
    }
  }
  return cert;
}

// ---------------------------------------------------------------------------
// lambda-spirallike of order alpha, c = a + b + 1
// ---------------------------------------------------------------------------

inline Certificate certify_spirallike(cplx a, cplx b, double lambda, double alpha) {
  detail::require_alpha(alpha, false);
  detail::require_lambda(lambda);
  Certificate cert(CertificateKind::SpirallikeThm, detail::p0_params(a, b), SpirallikeOrder{lambda, alpha});

  const double re_rot = (std::polar(1.0, -lambda) * a * b).real();
  cert.add("Re[e^{-i lambda} ab] > 0", format_real(re_rot), "> 1e-12", re_rot > kStrictMargin);
  if (re_rot < 0.0) {
    cert.notes.push_back(
        "Re[e^{-i lambda} ab] >= 0 is necessary for lambda-spirallikeness, so f is not "
        "lambda-spirallike");
  }
  detail::add_lmn_conditions(cert, spirallike_lmn(a, b, lambda, alpha));
  return cert;
}

/// Specialization for m = e^{-i lambda} ab > 0 and 0 < |lambda| < pi/2.
inline Certificate certify_spirallike_cor1(cplx a, cplx b, double lambda, double alpha) {
  detail::require_alpha(alpha, false);
  detail::require_lambda(lambda);
  if (lambda == 0.0) throw Error(ErrorCode::PrecondFailed, "requires 0 < |lambda| < pi/2");
  const cplx m = std::polar(1.0, -lambda) * a * b;
  if (!(std::abs(m.imag()) <= kRealTolerance * (1.0 + std::abs(m)) && m.real() > kStrictMargin)) {
    throw Error(ErrorCode::PrecondFailed,
                "e^{-i lambda} ab = " + format_complex(m) + " is not a positive real number");
  }
  Certificate cert(CertificateKind::SpirallikeCor1, detail::p0_params(a, b), SpirallikeOrder{lambda, alpha});

  const double mr = m.real();
  const double one_m = 1.0 - alpha;
  const double c2 = std::cos(2.0 * lambda);
  const double lhs_base = (a + b).imag() - one_m * std::sin(2.0 * lambda);
  const double lhs = lhs_base * lhs_base;
  const double f1 = 2.0 - alpha + one_m * c2;
  const double f2 = 2.0 * (a + b).real() + alpha - one_m * c2 - mr / (one_m * std::cos(lambda));
  const double rhs = f1 * f2;
  cert.add("(Im[a+b] - (1-alpha) sin 2lambda)^2 <= (2-alpha+(1-alpha)cos 2lambda){...}",
           format_real(rhs - lhs), "rhs - lhs >= 0", detail::nonneg(rhs - lhs, lhs + std::abs(rhs)));
  cert.diag("m", mr);
  cert.diag("lhs", lhs);
  cert.diag("rhs", rhs);
  return cert;
}

/// Specialization for m = ab > 0 and (1 - 2 alpha) / (4 (1 - alpha)) < cos^2 lambda < 1.
inline Certificate certify_spirallike_cor2(cplx a, cplx b, double lambda, double alpha) {
  detail::require_alpha(alpha, false);
  detail::require_lambda(lambda);
  const cplx m = a * b;
  if (!(std::abs(m.imag()) <= kRealTolerance * (1.0 + std::abs(m)) && m.real() > kStrictMargin)) {
    throw Error(ErrorCode::PrecondFailed, "ab = " + format_complex(m) + " is not a positive real number");
  }
  const double one_m = 1.0 - alpha;
  const double cl = std::cos(lambda);
  const double cos2 = cl * cl;
  const double lower = (1.0 - 2.0 * alpha) / (4.0 * one_m);
  if (!(cos2 > lower && cos2 < 1.0)) {
    throw Error(ErrorCode::PrecondFailed, "cos^2 lambda = " + format_real(cos2) + " outside (" +
                                              format_real(lower) + ", 1)");
  }
  Certificate cert(CertificateKind::SpirallikeCor2, detail::p0_params(a, b), SpirallikeOrder{lambda, alpha});

  const double mr = m.real();
  const cplx rot_sum = std::polar(1.0, lambda) * (a + b);
  const double lhs_base = rot_sum.imag() / cl - 2.0 * one_m * std::sin(2.0 * lambda);
  const double lhs = lhs_base * lhs_base;
  const double f1 = 4.0 * one_m * cos2 + 2.0 * alpha - 1.0;
  const double f2 = 2.0 * rot_sum.real() / cl - 4.0 * one_m * cos2 + (3.0 - 2.0 * alpha) - mr / (one_m * cos2);
  const double rhs = f1 * f2;
  cert.add("(Im[e^{i lambda}(a+b)]/cos lambda - 2(1-alpha) sin 2lambda)^2 <= (...)(...)",
           format_real(rhs - lhs), "rhs - lhs >= 0", detail::nonneg(rhs - lhs, lhs + std::abs(rhs)));
  cert.diag("m", mr);
  cert.diag("lhs", lhs);
  cert.diag("rhs", rhs);
  return cert;
}

// ---------------------------------------------------------------------------
// Strongly starlike of order alpha
// ---------------------------------------------------------------------------

/// G_eps(x) = S x^3 + T_eps x^2 + U_eps x + V.
struct CubicCoefficients {
  double S = 0.0;
  double T_plus = 0.0;
  double T_minus = 0.0;
  double U_plus = 0.0;
  double U_minus = 0.0;
  double V = 0.0;

  double T(int eps) const { return eps > 0 ? T_plus : T_minus; }
  double U(int eps) const { return eps > 0 ? U_plus : U_minus; }
  double G(int eps, double x) const { return ((S * x + T(eps)) * x + U(eps)) * x + V; }
};

/// Uses Re p; callers check separately that p is real.
inline CubicCoefficients cubic_coefficients(const HypergeomParams& params, double alpha) {
  const cplx a = params.a(), b = params.b();
  const double p = params.p().real();
  const double na = std::norm(a), nb = std::norm(b);
  const double k = na + nb - std::norm(params.c() - 1.0);
  const double ch = std::cos(kPi * alpha / 2.0);
  const double ra = na - 2.0 * a.real(), rb = nb - 2.0 * b.real();

  CubicCoefficients out;
  out.S = 2.0 * p * ch;
  out.V = k - 2.0 * p + ra * rb;
  for (int eps : {1, -1}) {
    const cplx eta = std::polar(1.0, -eps * kPi * alpha / 2.0);
    const double ae = (a * eta).real(), be = (b * eta).real();
    const double t = k - 2.0 * p - 4.0 * p * ch * ch + 4.0 * ae * be;
    const double u = -2.0 * (k - 3.0 * p) * ch + 2.0 * ae * rb + 2.0 * be * ra;
    (eps > 0 ? out.T_plus : out.T_minus) = t;
    (eps > 0 ? out.U_plus : out.U_minus) = u;
  }
  return out;
}

namespace detail {

// Records one "residual(s) > 0 on (0, inf)" condition from the line search.
inline void add_line_condition(Certificate& cert, const std::string& name, const MinimizerResult& r,
                               const LineSearchSettings& ls, const std::string& suffix) {
  const bool ends_ok = r.endpoint_verdict == EndpointVerdict::SafeBothEnds;
  const bool pass = r.min_value > ls.min_margin && ends_ok;
  cert.add(name, format_real(r.min_value),
           "min residual > " + format_real(ls.min_margin) + " and both ends safe", pass);
  cert.diag("min_residual" + suffix, r.min_value);
  cert.diag("argmin_s" + suffix, r.argmin_s);
  if (!r.conclusive) {
    cert.notes.push_back("OracleInconclusive (eps = " + suffix.substr(1) + "): minimum residual " +
                         format_real(r.min_value) + " at s = " + format_real(r.argmin_s) +
                         " lies within the margin; not certified");
  }
  if (!ends_ok) {
    cert.notes.push_back("eps = " + suffix.substr(1) + ": " + std::string(to_string(r.endpoint_verdict)));
  }
}

}  // namespace detail

inline Certificate certify_strong_starlike(const HypergeomParams& params, double alpha,
                                           const LineSearchSettings& ls = {}) {
  detail::require_alpha(alpha, true);
  detail::require_nonzero_ab(params);
  validate(ls);

  Certificate cert(CertificateKind::StrongStarlikeThm, params, StronglyStarlike{alpha});
  const cplx p_c = params.p();
  const double p = p_c.real();
  cert.add("p real", format_real(p_c.imag()), "|Im p| <= 1e-12 (1 + |p|)", detail::is_real(p_c));

  const cplx ab_p = params.a() * params.b() - p;
  const double arg_slack = kPi * alpha / 2.0 - std::abs(std::arg(ab_p));
  cert.add("|arg(ab - p)| < pi alpha / 2", format_real(std::abs(std::arg(ab_p))),
           "< " + format_real(kPi * alpha / 2.0), ab_p != cplx(0.0) && arg_slack > kStrictMargin);

  const CubicCoefficients g = cubic_coefficients(params, alpha);
  cert.diag("S", g.S);
  cert.diag("T_plus", g.T_plus);
  cert.diag("T_minus", g.T_minus);
  cert.diag("U_plus", g.U_plus);
  cert.diag("U_minus", g.U_minus);
  cert.diag("V", g.V);

  for (int eps : {1, -1}) {
    const double k = (ab_p * detail::eps_phase(eps, kPi * (1.0 - alpha) / 2.0)).real();
    auto residual = [&](double s) {
      const double x = std::pow(s, alpha);
      return alpha * (s + 1.0 / s) * x * k - g.G(eps, x);
    };
    const PowerTerm terms[] = {{alpha * k, 1.0 + alpha}, {alpha * k, alpha - 1.0}, {-g.S, 3.0 * alpha},
                               {-g.T(eps), 2.0 * alpha}, {-g.U(eps), alpha},      {-g.V, 0.0}};
    const auto r = minimize_on_positive_line(residual, ls, terms);
    const std::string sfx = "_" + detail::eps_label(eps);
    detail::add_line_condition(cert, "G_" + detail::eps_label(eps) + "(s^alpha) <= rhs on (0, inf)", r, ls, sfx);
  }
  return cert;
}

/// Lemma-form coefficients of the p = 0 inequality, divided by s^alpha:
/// A s^alpha + B + C s^-alpha <= K (s + 1/s).
struct P0Coefficients {
  double A, B, C, K;
};

inline P0Coefficients p0_coefficients(cplx a, cplx b, double alpha, int eps) {
  const cplx ab = a * b;
  const cplx sum_c = std::conj(a) + std::conj(b);
  P0Coefficients out;
  out.A = 2.0 * (detail::eps_phase(-eps, kPi * alpha) * ab).real();
  out.B = 2.0 * (detail::eps_phase(-eps, kPi * alpha / 2.0) * ab * (sum_c - 2.0)).real();
  out.C = std::norm(ab) - 2.0 * (ab * (sum_c - 1.0)).real();
  out.K = alpha * (detail::eps_phase(eps, kPi * (1.0 - alpha) / 2.0) * ab).real();
  return out;
}

namespace detail {

inline void add_arg_ab_condition(Certificate& cert, cplx ab, double alpha) {
  const double arg = std::abs(std::arg(ab));
  cert.add("|arg(ab)| < pi alpha / 2", format_real(arg), "< " + format_real(kPi * alpha / 2.0),
           ab != cplx(0.0) && kPi * alpha / 2.0 - arg > kStrictMargin);
}

}  // namespace detail

inline Certificate certify_sst_cor_p0(cplx a, cplx b, double alpha, const LineSearchSettings& ls = {}) {
  detail::require_alpha(alpha, true);
  validate(ls);
  Certificate cert(CertificateKind::StrongStarlikeCorP0, detail::p0_params(a, b), StronglyStarlike{alpha});
  detail::add_arg_ab_condition(cert, a * b, alpha);

  for (int eps : {1, -1}) {
    const auto q = p0_coefficients(a, b, alpha, eps);
    auto residual = [&](double s) {
      const double x = std::pow(s, alpha);
      return q.K * (s + 1.0 / s) * x - ((q.A * x + q.B) * x + q.C);
    };
    const PowerTerm terms[] = {{q.K, 1.0 + alpha}, {q.K, alpha - 1.0}, {-q.A, 2.0 * alpha},
                               {-q.B, alpha},      {-q.C, 0.0}};
    const auto r = minimize_on_positive_line(residual, ls, terms);
    const std::string sfx = "_" + detail::eps_label(eps);
    detail::add_line_condition(cert, "p = 0 inequality (eps = " + detail::eps_label(eps) + ") on (0, inf)",
                               r, ls, sfx);
  }
  return cert;
}

/// Closed-form crude bound of the p = 0 inequality: for eps = +-1,
/// max(B, 0)/2 + max{A, C} <= K (see half_plane_bound_check).
inline Certificate certify_sst_cor_max(cplx a, cplx b, double alpha) {
  detail::require_alpha(alpha, true);
  Certificate cert(CertificateKind::StrongStarlikeCorMax, detail::p0_params(a, b), StronglyStarlike{alpha});
  detail::add_arg_ab_condition(cert, a * b, alpha);

  for (int eps : {1, -1}) {
    const auto q = p0_coefficients(a, b, alpha, eps);
    const double lhs = std::max(q.B, 0.0) / 2.0 + std::max(q.A, q.C);
    const bool pass = q.K > 0.0 && half_plane_bound_check(q.A, q.B, q.C, q.K, alpha);
    cert.add("max(B,0)/2 + max{A, C} <= K (eps = " + detail::eps_label(eps) + ")", format_real(lhs),
             "<= " + format_real(q.K), pass);
    const std::string sfx = "_" + detail::eps_label(eps);
    cert.diag("A" + sfx, q.A);
    cert.diag("B" + sfx, q.B);
    cert.diag("C" + sfx, q.C);
    cert.diag("K" + sfx, q.K);
    if (q.B < 0.0 && !pass && q.K > 0.0 && q.B / 2.0 + std::max(q.A, q.C) <= q.K) {
      cert.notes.push_back("eps = " + sfx.substr(1) +
                           ": B < 0 is not credited; B/2 + max{A, C} <= K alone does not bound the "
                           "p = 0 inequality");
    }
  }
  return cert;
}

namespace detail {

// Checks that a + b is real and ab is real and positive; returns (a + b, ab).
inline std::pair<double, double> real_sum_product(cplx a, cplx b) {
  const cplx l = a + b, m = a * b;
  if (!is_real(l)) throw Error(ErrorCode::PrecondFailed, "a + b = " + format_complex(l) + " is not real");
  if (!is_real(m) || !(m.real() > 0.0)) {
    throw Error(ErrorCode::PrecondFailed, "ab = " + format_complex(m) + " is not a positive real");
  }
  return {l.real(), m.real()};
}

inline double require_real_combination(cplx x, const char* what) {
  if (std::abs(x.imag()) > 1e-10 * (1.0 + std::abs(x))) {
    throw Error(ErrorCode::PrecondFailed, std::string(what) + " has imaginary residue " + format_real(x.imag()));
  }
  return x.real();
}

}  // namespace detail

/// a + b real, ab > 0: (a-2)(b-2) <= 4 cos^2(pi alpha/2) and
/// a + b <= 2 - 2 cos(pi alpha)/cos(pi alpha/2) + alpha tan(pi alpha/2).
inline Certificate certify_sst_cor_final(cplx a, cplx b, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::PrecondFailed, "alpha must lie in (0, 1)");
  const auto [l, m] = detail::real_sum_product(a, b);
  Certificate cert(CertificateKind::StrongStarlikeCorFinal, detail::p0_params(a, b), StronglyStarlike{alpha});

  const double half = kPi * alpha / 2.0;
  const double prod = detail::require_real_combination((a - 2.0) * (b - 2.0), "(a-2)(b-2)");
  const double bound1 = 4.0 * std::cos(half) * std::cos(half);
  const double upper = 2.0 - 2.0 * std::cos(kPi * alpha) / std::cos(half) + alpha * std::tan(half);
  cert.add("(a-2)(b-2) <= 4 cos^2(pi alpha/2)", format_real(prod), "<= " + format_real(bound1),
           prod <= bound1 + kStrictMargin);
  cert.add("a + b <= 2 - 2cos(pi alpha)/cos(pi alpha/2) + alpha tan(pi alpha/2)", format_real(l),
           "<= " + format_real(upper), l <= upper + kStrictMargin);

  const double lower_strict = 2.0 * std::sin(half) * std::sin(half);
  const double lower = m / 2.0 + lower_strict;
  cert.diag("l", l);
  cert.diag("m", m);
  cert.diag("window_lower", lower);
  cert.diag("window_upper", upper);
  cert.notes.push_back("feasibility window for l = a + b: " + format_real(lower_strict) + " < " +
                       format_real(lower) + " <= l <= " + format_real(upper));
  return cert;
}

/// 1/3 < alpha < 1, a + b real, ab > 0:
/// {(a-b)^2 + 6(a+b) - 3} sin^2(pi alpha/2) >= a^2 + ab + b^2.
inline Certificate certify_theorem_A(cplx a, cplx b, double alpha) {
  if (!(alpha > 1.0 / 3.0 && alpha < 1.0)) {
    throw Error(ErrorCode::PrecondFailed, "requires 1/3 < alpha < 1");
  }
  detail::real_sum_product(a, b);
  Certificate cert(CertificateKind::TheoremA, detail::p0_params(a, b), StronglyStarlike{alpha});

  const double diff2 = detail::require_real_combination((a - b) * (a - b), "(a-b)^2");
  const double quad = detail::require_real_combination(a * a + a * b + b * b, "a^2+ab+b^2");
  const double sn = std::sin(kPi * alpha / 2.0);
  const double lhs = (diff2 + 6.0 * (a + b).real() - 3.0) * sn * sn;
  cert.add("{(a-b)^2 + 6(a+b) - 3} sin^2(pi alpha/2) >= a^2 + ab + b^2", format_real(lhs),
           ">= " + format_real(quad), lhs >= quad - kStrictMargin * (1.0 + std::abs(quad)));
  cert.diag("lhs", lhs);
  cert.diag("rhs", quad);
  return cert;
}

// ---------------------------------------------------------------------------
// General boundary-grid check
// ---------------------------------------------------------------------------

struct BoundaryGridSettings {
  int n_uniform = 2048;        // uniform theta samples over the class's range
  int n_cluster = 64;          // geometric samples per side of each exceptional point
  double theta_min = 1e-4;     // exclusion radius around exceptional points
  double cluster_span = 0.1;   // clusters cover [theta_min, cluster_span]
  double rel_tol = 1e-10;      // tolerance of the normalized inequalities
};

/// Grid for the class: theta in (0, 2 pi) for spiral-type, (-pi, pi) for strongly
/// starlike; theta = 0 (and theta = +-pi for strongly starlike) are excluded by theta_min.
inline std::vector<double> boundary_thetas(const ShapeClass& cls, const BoundaryGridSettings& grid) {
  const bool strong = is_strongly_starlike(cls);
  const double lo = strong ? -kPi : 0.0;
  const double hi = strong ? kPi : 2.0 * kPi;
  std::vector<double> exceptional = strong ? std::vector<double>{-kPi, 0.0, kPi} : std::vector<double>{0.0, 2.0 * kPi};

  auto admissible = [&](double t) {
    if (t <= lo || t >= hi) return false;
    for (double e : exceptional) {
      if (std::abs(t - e) < grid.theta_min) return false;
    }
    return true;
  };

  std::vector<double> out;
  for (int j = 0; j < grid.n_uniform; ++j) {
    const double t = lo + (hi - lo) * (j + 0.5) / grid.n_uniform;
    if (admissible(t)) out.push_back(t);
  }
  if (grid.n_cluster > 0) {
    const double ratio = grid.cluster_span / grid.theta_min;
    for (double e : exceptional) {
      for (int side : {-1, 1}) {
        for (int k = 0; k < grid.n_cluster; ++k) {
          const double frac = grid.n_cluster == 1 ? 0.0 : static_cast<double>(k) / (grid.n_cluster - 1);
          const double t = e + side * grid.theta_min * std::pow(ratio, frac);
          if (admissible(t)) out.push_back(t);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Samples the two boundary inequalities
///   D(zeta) = -2 Re[(p Q + ab) conj(zeta Q')] > 0 and |B|^2 - |A|^2 <= D(zeta)
/// on a theta grid. Relaxed mode accepts D = 0 wherever A(zeta) != B(zeta).
/// The verdict is sampled evidence ("grid-consistent"), not a proof.
inline Certificate certify_general(const ShapeClass& cls, const HypergeomParams& params,
                                   const BoundaryGridSettings& grid = {}, bool relaxed = false) {
  validate(cls);
  Certificate cert(CertificateKind::GeneralMain, params, cls);
  const cplx a = params.a(), b = params.b(), c = params.c(), p = params.p();
  const cplx ab = a * b;

  const auto thetas = boundary_thetas(cls, grid);
  double worst_d = std::numeric_limits<double>::infinity(), worst_d_theta = 0.0, worst_d_s = 0.0;
  double worst_m = std::numeric_limits<double>::infinity(), worst_m_theta = 0.0, worst_m_s = 0.0;
  int n_fail_d = 0, n_fail_m = 0;
  double max_abs_s_fail = 0.0;

  for (double theta : thetas) {
    const auto pt = boundary_point(cls, theta);
    const cplx w = boundary_Q(cls, pt);
    const cplx zq = boundary_zQprime(cls, pt);
    const cplx bma = p * w + ab;  // B - A
    const double d = -2.0 * (bma * std::conj(zq)).real();
    const double d_scale = 1.0 + 2.0 * std::abs(bma) * std::abs(zq);
    const double d_norm = d / d_scale;

    bool d_ok = d_norm > kStrictMargin;
    if (!d_ok && relaxed && d_norm >= -kStrictMargin) {
      const cplx A = w * (w + c - 1.0), B = (w + a) * (w + b);
      d_ok = std::abs(B - A) > kStrictMargin * (1.0 + std::abs(A) + std::abs(B));
    }

    const double diff = ab_difference_expanded(w, a, b, c);
    const double m_norm = (d - diff) / (1.0 + std::abs(d) + std::abs(diff));
    const bool m_ok = m_norm >= -grid.rel_tol;

    if (d_norm < worst_d) {
      worst_d = d_norm;
      worst_d_theta = pt.theta;
      worst_d_s = pt.s;
    }
    if (m_norm < worst_m) {
      worst_m = m_norm;
      worst_m_theta = pt.theta;
      worst_m_s = pt.s;
    }
    if (!d_ok) ++n_fail_d;
    if (!m_ok) ++n_fail_m;
    if (!d_ok || !m_ok) max_abs_s_fail = std::max(max_abs_s_fail, std::abs(pt.s));
  }

  cert.add(relaxed ? "D(zeta) >= 0 with A != B on grid" : "D(zeta) > 0 on grid",
           format_real(worst_d) + " at theta=" + format_real(worst_d_theta) + ", s=" + format_real(worst_d_s),
           relaxed ? "normalized D >= 0 where A != B" : "normalized D > 1e-12", n_fail_d == 0);
  cert.add("|B|^2 - |A|^2 <= D(zeta) on grid",
           format_real(worst_m) + " at theta=" + format_real(worst_m_theta) + ", s=" + format_real(worst_m_s),
           "normalized (D - (|B|^2-|A|^2)) >= -" + format_real(grid.rel_tol), n_fail_m == 0);

  cert.diag("n_grid", static_cast<double>(thetas.size()));
  cert.diag("min_D_normalized", worst_d);
  cert.diag("min_main_normalized", worst_m);
  cert.diag("n_fail_D", n_fail_d);
  cert.diag("n_fail_main", n_fail_m);
  cert.diag("worst_main_s", worst_m_s);
  cert.diag("max_abs_s_failing", max_abs_s_fail);
  cert.notes.push_back(cert.passed ? "grid-consistent (sampled evidence, not a proof)"
                                   : "grid check failed (sampled)");

  if (const auto* sp = std::get_if<SpirallikeOrder>(&cls)) {
    const double p_im_mu = std::abs(p) * std::abs(spiral_mu(sp->lambda, sp->alpha).imag());
    if (p_im_mu > kRealTolerance) {
      cert.notes.push_back(
          "structural obstruction: with lambda != 0 and p != 0, |B|^2 - |A|^2 carries the cubic term "
          "-2 p Im(mu) |mu|^2 s^3 which the quadratic right-hand side cannot dominate; the check can "
          "only succeed for lambda = 0 or p = 0");
    }
  }
  return cert;
}

/// Convexity counterpart: g = (c/(ab)) (2F1(a,b;c;z) - 1) is in K(phi) when
/// z 2F1(a+1, b+1; c+1; z) is in S*(phi). Delegates to the class's checker
/// with shifted parameters.
inline Certificate certify_convexity(const ShapeClass& cls, const HypergeomParams& params,
                                     const LineSearchSettings& ls = {},
                                     const BoundaryGridSettings& grid = {}) {
  validate(cls);
  detail::require_nonzero_ab(params);
  const HypergeomParams shifted = params.shifted();

  std::optional<Certificate> inner;
  if (const auto* st = std::get_if<StarlikeOrder>(&cls)) {
    inner = certify_starlike_order(shifted, st->alpha);
  } else if (const auto* ss = std::get_if<StronglyStarlike>(&cls)) {
    inner = certify_strong_starlike(shifted, ss->alpha, ls);
  } else {
    const auto& sp = std::get<SpirallikeOrder>(cls);
    if (sp.lambda == 0.0) {
      inner = certify_starlike_order(shifted, sp.alpha);
    } else if (std::abs(shifted.p()) <= kRealTolerance) {
      inner = certify_spirallike(shifted.a(), shifted.b(), sp.lambda, sp.alpha);
    } else {
      inner = certify_general(cls, shifted, grid);
    }
  }

  Certificate cert(CertificateKind::ConvexityWrapper, params, cls);
  for (const auto& c : inner->conditions) cert.add(c.name, c.value, c.threshold, c.pass);
  cert.diagnostics = inner->diagnostics;
  cert.notes.push_back("delegated to " + std::string(to_string(inner->kind)) + " with (a+1, b+1, c+1) = (" +
                       format_complex(shifted.a()) + ", " + format_complex(shifted.b()) + ", " +
                       format_complex(shifted.c()) + ")");
  for (const auto& n : inner->notes) cert.notes.push_back(n);
  return cert;
}

}  // namespace hypgeo
