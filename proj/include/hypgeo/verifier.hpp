#pragma once

// Direct check of the class's defining inequality for f(z) = z 2F1(a,b;c;z)
// on a polar grid inside the disk, and the certificate-vs-verifier cross-check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hypgeo/certificates.hpp"
#include "hypgeo/error.hpp"
#include "hypgeo/format.hpp"
#include "hypgeo/hypergeom.hpp"
#include "hypgeo/shape_classes.hpp"

namespace hypgeo {

enum class RadialSpacing { Uniform, Geometric };

inline std::string_view to_string(RadialSpacing s) {
  return s == RadialSpacing::Uniform ? "uniform" : "geometric-toward-boundary";
}

inline RadialSpacing parse_radial_spacing(std::string_view s) {
  if (s == "uniform") return RadialSpacing::Uniform;
  if (s == "geometric" || s == "geometric-toward-boundary") return RadialSpacing::Geometric;
  throw Error(ErrorCode::InvalidParams, "unknown radial spacing '" + std::string(s) + "'");
}

struct DiskGridSettings {
  int n_radii = 40;
  double r_max = 0.995;
  int n_angles = 720;
  RadialSpacing spacing = RadialSpacing::Geometric;
  double violation_tolerance = 1e-9;  // a point is a violation when slack < -tolerance
};

inline void validate(const DiskGridSettings& g) {
  if (g.n_radii < 1) throw Error(ErrorCode::InvalidParams, "n_radii must be >= 1");
  if (!(g.r_max > 0.0 && g.r_max < 1.0)) throw Error(ErrorCode::InvalidParams, "r_max must lie in (0, 1)");
  if (g.n_angles < 8) throw Error(ErrorCode::InvalidParams, "n_angles must be >= 8");
  if (!(g.violation_tolerance >= 0.0)) {
    throw Error(ErrorCode::InvalidParams, "violation_tolerance must be >= 0");
  }
}

/// Increasing radii ending at r_max. Geometric spacing makes 1 - r geometric,
/// so the rings bunch up toward the boundary.
inline std::vector<double> grid_radii(const DiskGridSettings& g) {
  validate(g);
  std::vector<double> r(g.n_radii);
  for (int k = 0; k < g.n_radii; ++k) {
    const double frac = static_cast<double>(k + 1) / g.n_radii;
    r[k] = g.spacing == RadialSpacing::Uniform ? g.r_max * frac : 1.0 - std::pow(1.0 - g.r_max, frac);
  }
  r.back() = g.r_max;
  return r;
}

enum class VerificationStatus { Consistent, Violated, Degenerate };

inline std::string_view to_string(VerificationStatus s) {
  switch (s) {
    case VerificationStatus::Consistent: return "Consistent";
    case VerificationStatus::Violated: return "Violated";
    case VerificationStatus::Degenerate: return "Degenerate";
  }
  return "?";
}

struct VerificationReport {
  VerificationReport(ShapeClass c, HypergeomParams p, DiskGridSettings g)
      : cls(std::move(c)), params(std::move(p)), grid(g) {}

  ShapeClass cls;
  HypergeomParams params;
  DiskGridSettings grid;
  double min_slack = std::numeric_limits<double>::infinity();
  cplx argmin_z = 0.0;
  long n_violations = 0;
  long n_f_zeros = 0;
  long n_eval_errors = 0;  // non-convergence and other per-point failures
  VerificationStatus status = VerificationStatus::Consistent;
  std::vector<double> radii;
  std::vector<double> radial_min_slack;  // min slack on each ring, NaN if none evaluated
  std::vector<std::string> notes;
};

namespace detail {

struct RingResult {
  double min_slack = std::numeric_limits<double>::infinity();
  int argmin_j = -1;
  long n_violations = 0;
  long n_f_zeros = 0;
  long n_eval_errors = 0;
  std::string first_error;
};

inline RingResult evaluate_ring(const ShapeClass& cls, const HypergeomParams& params, double r, int n_angles,
                                double tol, const SeriesSettings& settings) {
  RingResult out;
  for (int j = 0; j < n_angles; ++j) {
    const cplx z = std::polar(r, 2.0 * kPi * j / n_angles);
    double slack = 0.0;
    try {
      slack = membership_predicate(cls, log_derivative_q(params, z, settings)).slack;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ZeroOfF) {
        ++out.n_f_zeros;
      } else {
        ++out.n_eval_errors;
      }
      if (out.first_error.empty()) out.first_error = e.what();
      continue;
    }
    if (!std::isfinite(slack)) {
      ++out.n_eval_errors;
      if (out.first_error.empty()) out.first_error = "non-finite q at z = " + format_complex(z);
      continue;
    }
    if (slack < -tol) ++out.n_violations;
    if (slack < out.min_slack) {  // strict: ties keep the smaller angle index
      out.min_slack = slack;
      out.argmin_j = j;
    }
  }
  return out;
}

}  // namespace detail

/// Rings whose minimum slack is below that of some larger ring by more than
/// tol. For spiral-type classes Re q is harmonic off zeros of F, so such a drop
/// is unexpected; it is reported, not treated as an error.
inline std::vector<std::string> monotone_slack_findings(const VerificationReport& rep, double tol = 1e-9) {
  std::vector<std::string> out;
  if (is_strongly_starlike(rep.cls)) return out;
  double outer_max = -std::numeric_limits<double>::infinity();
  for (std::size_t k = rep.radii.size(); k-- > 0;) {
    const double v = rep.radial_min_slack[k];
    if (std::isnan(v)) continue;
    if (v < outer_max - tol) {
      out.push_back("monotone-slack finding: min slack " + format_real(v) + " at r = " + format_real(rep.radii[k]) +
                    " is below " + format_real(outer_max) + " attained further out");
    }
    outer_max = std::max(outer_max, v);
  }
  return out;
}

/// Evaluates q = z f'/f at z = r_k e^{2 pi i j / n_angles} and applies the
/// class's membership predicate. z = 0 contributes the slack of q(0) = 1.
/// Rings are distributed over `threads` workers; the reduction runs in ring
/// order so the report does not depend on the thread count.
inline VerificationReport verify_on_disk(const ShapeClass& cls, const HypergeomParams& params,
                                         const DiskGridSettings& grid = {}, const SeriesSettings& settings = {},
                                         unsigned threads = 1) {
  validate(cls);
  validate(grid);
  validate(settings);
  if (settings.radius_cap < grid.r_max) {
    throw Error(ErrorCode::InvalidParams, "radius_cap " + format_real(settings.radius_cap) + " is below r_max " +
                                              format_real(grid.r_max));
  }

  VerificationReport rep(cls, params, grid);
  rep.radii = grid_radii(grid);
  const std::size_t n = rep.radii.size();
  std::vector<detail::RingResult> rings(n);

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < n; k += stride) {
      rings[k] = detail::evaluate_ring(cls, params, rep.radii[k], grid.n_angles, grid.violation_tolerance, settings);
    }
  };
  const std::size_t nt = std::clamp<std::size_t>(threads, 1, n);
  if (nt == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(work, t, nt);
    for (auto& th : pool) th.join();
  }

  rep.min_slack = membership_predicate(cls, 1.0).slack;
  rep.argmin_z = 0.0;
  if (rep.min_slack < -grid.violation_tolerance) ++rep.n_violations;
  std::string first_error;
  rep.radial_min_slack.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& rr = rings[k];
    rep.n_violations += rr.n_violations;
    rep.n_f_zeros += rr.n_f_zeros;
    rep.n_eval_errors += rr.n_eval_errors;
    if (first_error.empty()) first_error = rr.first_error;
    rep.radial_min_slack[k] = rr.argmin_j < 0 ? std::numeric_limits<double>::quiet_NaN() : rr.min_slack;
    if (rr.argmin_j >= 0 && rr.min_slack < rep.min_slack) {
      rep.min_slack = rr.min_slack;
      rep.argmin_z = std::polar(rep.radii[k], 2.0 * kPi * rr.argmin_j / grid.n_angles);
    }
  }

  if (rep.n_f_zeros > 0 || rep.n_eval_errors > 0) {
    rep.status = VerificationStatus::Degenerate;
    rep.notes.push_back("first failure: " + first_error);
  } else if (rep.n_violations > 0) {
    rep.status = VerificationStatus::Violated;
  }
  for (auto& f : monotone_slack_findings(rep)) rep.notes.push_back(std::move(f));
  return rep;
}

enum class CrossCheckVerdict { Sound, Info, Unsound };

inline std::string_view to_string(CrossCheckVerdict v) {
  switch (v) {
    case CrossCheckVerdict::Sound: return "SOUND";
    case CrossCheckVerdict::Info: return "INFO";
    case CrossCheckVerdict::Unsound: return "UNSOUND";
  }
  return "?";
}

struct CrossCheckResult {
  Certificate certificate;
  VerificationReport report;
  CrossCheckVerdict verdict = CrossCheckVerdict::Sound;
  std::string explanation;
};

/// The function a certificate speaks about: z 2F1 with the certificate's
/// parameters, or with (a+1, b+1, c+1) for the convexity wrapper.
inline HypergeomParams verified_params(const Certificate& cert) {
  return cert.kind == CertificateKind::ConvexityWrapper ? cert.params.shifted() : cert.params;
}

/// A passing certificate must come with a Consistent report. A failing
/// certificate next to a Consistent report is a gap of the sufficient
/// condition (INFO), never an error.
inline CrossCheckResult cross_check(const Certificate& cert, const DiskGridSettings& grid = {},
                                    const SeriesSettings& settings = {}, unsigned threads = 1) {
  auto rep = verify_on_disk(cert.cls, verified_params(cert), grid, settings, threads);
  CrossCheckResult out{cert, std::move(rep), CrossCheckVerdict::Sound, {}};
  const auto status = out.report.status;
  if (cert.passed) {
    if (status == VerificationStatus::Consistent) {
      out.explanation = "certificate passed and the verifier is consistent";
    } else {
      out.verdict = CrossCheckVerdict::Unsound;
      out.explanation = "certificate passed but the verifier reports " + std::string(to_string(status));
    }
  } else if (status == VerificationStatus::Consistent) {
    out.verdict = CrossCheckVerdict::Info;
    out.explanation = "certificate failed while the verifier is consistent: the sufficient condition is not necessary";
  } else {
    out.explanation = "certificate failed and the verifier reports " + std::string(to_string(status));
  }
  return out;
}

inline CrossCheckResult cross_check(const ShapeClass& cls, const HypergeomParams& params, const Certificate& cert,
                                    const DiskGridSettings& grid = {}, const SeriesSettings& settings = {},
                                    unsigned threads = 1) {
  if (!(cls == cert.cls) || !(params == cert.params)) {
    throw Error(ErrorCode::PrecondFailed, "certificate was produced for a different class or parameters");
  }
  return cross_check(cert, grid, settings, threads);
}

}  // namespace hypgeo
