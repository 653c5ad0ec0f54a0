#pragma once

// JSON shapes for parameters, classes, certificates, verification reports and
// cross-check results. Complex numbers are [re, im] arrays.

#include <cmath>
#include <string>

#include <json.hpp>

#include "hypgeo/certificates.hpp"
#include "hypgeo/error.hpp"
#include "hypgeo/hypergeom.hpp"
#include "hypgeo/shape_classes.hpp"
#include "hypgeo/verifier.hpp"

namespace hypgeo {

using json = nlohmann::ordered_json;

namespace detail {

// Non-finite reals become null; the reader maps null back to NaN.
inline json real_to_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline double real_from_json(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw Error(ErrorCode::InvalidParams, "expected a number, got " + j.dump());
  return j.get<double>();
}

template <class Enum, std::size_t N>
Enum enum_from_string(const std::string& s, const Enum (&values)[N], const char* what) {
  for (Enum v : values) {
    if (to_string(v) == s) return v;
  }
  throw Error(ErrorCode::InvalidParams, std::string("unknown ") + what + " '" + s + "'");
}

inline const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::InvalidParams, std::string("missing JSON member '") + key + "'");
  }
  return j.at(key);
}

}  // namespace detail

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::InvalidParams, "expected [re, im], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const HypergeomParams& p) {
  return {{"a", to_json(p.a())}, {"b", to_json(p.b())}, {"c", to_json(p.c())}};
}

inline HypergeomParams params_from_json(const json& j) {
  return {complex_from_json(detail::member(j, "a")), complex_from_json(detail::member(j, "b")),
          complex_from_json(detail::member(j, "c"))};
}

inline json to_json(const ShapeClass& cls) {
  json j = {{"family", family_name(cls)}, {"alpha", class_alpha(cls)}};
  if (const auto* sp = std::get_if<SpirallikeOrder>(&cls)) j["lambda"] = sp->lambda;
  return j;
}

/// Family names: starlike, strongly-starlike, spirallike.
inline ShapeClass make_class(const std::string& family, double alpha, double lambda = 0.0) {
  if (family == "starlike") return make_starlike(alpha);
  if (family == "strongly-starlike") return make_strongly_starlike(alpha);
  if (family == "spirallike") return make_spirallike(lambda, alpha);
  throw Error(ErrorCode::InvalidParams, "unknown class family '" + family + "'");
}

inline ShapeClass class_from_json(const json& j) {
  const auto family = detail::member(j, "family").get<std::string>();
  const double alpha = detail::member(j, "alpha").get<double>();
  const double lambda = j.contains("lambda") ? j.at("lambda").get<double>() : 0.0;
  return make_class(family, alpha, lambda);
}

inline json to_json(const Certificate& c) {
  json conds = json::array();
  for (const auto& k : c.conditions) {
    conds.push_back({{"name", k.name}, {"value", k.value}, {"threshold", k.threshold}, {"pass", k.pass}});
  }
  json diags = json::object();
  for (const auto& [k, v] : c.diagnostics) diags[k] = detail::real_to_json(v);
  return {{"kind", std::string(to_string(c.kind))},
          {"passed", c.passed},
          {"params", to_json(c.params)},
          {"class", to_json(c.cls)},
          {"conditions", conds},
          {"notes", c.notes},
          {"diagnostics", diags}};
}

inline Certificate certificate_from_json(const json& j) {
  static constexpr CertificateKind kinds[] = {
      CertificateKind::GeneralMain,         CertificateKind::StarlikeOrderThm,       CertificateKind::CorA2,
      CertificateKind::SpirallikeThm,       CertificateKind::SpirallikeCor1,         CertificateKind::SpirallikeCor2,
      CertificateKind::StrongStarlikeThm,   CertificateKind::StrongStarlikeCorP0,    CertificateKind::StrongStarlikeCorMax,
      CertificateKind::StrongStarlikeCorFinal, CertificateKind::TheoremA,            CertificateKind::ConvexityWrapper};
  Certificate c(detail::enum_from_string(detail::member(j, "kind").get<std::string>(), kinds, "certificate kind"),
                params_from_json(detail::member(j, "params")), class_from_json(detail::member(j, "class")));
  for (const auto& k : detail::member(j, "conditions")) {
    c.add(k.at("name").get<std::string>(), k.at("value").get<std::string>(), k.at("threshold").get<std::string>(),
          k.at("pass").get<bool>());
  }
  // A certificate read back keeps its recorded verdict even if it disagrees
  // with its conditions; cross_check relies on this to audit foreign files.
  c.passed = detail::member(j, "passed").get<bool>();
  c.notes = j.value("notes", std::vector<std::string>{});
  if (j.contains("diagnostics")) {
    for (const auto& [k, v] : j.at("diagnostics").items()) c.diag(k, detail::real_from_json(v));
  }
  return c;
}

inline json to_json(const DiskGridSettings& g) {
  return {{"n_radii", g.n_radii},
          {"r_max", g.r_max},
          {"n_angles", g.n_angles},
          {"radial_spacing", std::string(to_string(g.spacing))},
          {"violation_tolerance", g.violation_tolerance}};
}

inline DiskGridSettings grid_from_json(const json& j) {
  DiskGridSettings g;
  g.n_radii = j.value("n_radii", g.n_radii);
  g.r_max = j.value("r_max", g.r_max);
  g.n_angles = j.value("n_angles", g.n_angles);
  if (j.contains("radial_spacing")) g.spacing = parse_radial_spacing(j.at("radial_spacing").get<std::string>());
  g.violation_tolerance = j.value("violation_tolerance", g.violation_tolerance);
  validate(g);
  return g;
}

inline json to_json(const VerificationReport& r) {
  json rings = json::array();
  for (std::size_t k = 0; k < r.radii.size(); ++k) {
    rings.push_back({{"r", r.radii[k]}, {"min_slack", detail::real_to_json(r.radial_min_slack[k])}});
  }
  return {{"status", std::string(to_string(r.status))},
          {"params", to_json(r.params)},
          {"class", to_json(r.cls)},
          {"grid", to_json(r.grid)},
          {"min_slack", detail::real_to_json(r.min_slack)},
          {"argmin_z", to_json(r.argmin_z)},
          {"n_violations", r.n_violations},
          {"n_f_zeros", r.n_f_zeros},
          {"n_eval_errors", r.n_eval_errors},
          {"rings", rings},
          {"notes", r.notes}};
}

inline VerificationReport report_from_json(const json& j) {
  static constexpr VerificationStatus statuses[] = {VerificationStatus::Consistent, VerificationStatus::Violated,
                                                    VerificationStatus::Degenerate};
  VerificationReport r(class_from_json(detail::member(j, "class")), params_from_json(detail::member(j, "params")),
                       grid_from_json(detail::member(j, "grid")));
  r.status = detail::enum_from_string(detail::member(j, "status").get<std::string>(), statuses, "status");
  r.min_slack = detail::real_from_json(detail::member(j, "min_slack"));
  r.argmin_z = complex_from_json(detail::member(j, "argmin_z"));
  r.n_violations = detail::member(j, "n_violations").get<long>();
  r.n_f_zeros = detail::member(j, "n_f_zeros").get<long>();
  r.n_eval_errors = j.value("n_eval_errors", 0L);
  for (const auto& ring : j.value("rings", json::array())) {
    r.radii.push_back(ring.at("r").get<double>());
    r.radial_min_slack.push_back(detail::real_from_json(ring.at("min_slack")));
  }
  r.notes = j.value("notes", std::vector<std::string>{});
  return r;
}

inline json to_json(const CrossCheckResult& x) {
  return {{"verdict", std::string(to_string(x.verdict))},
          {"certificate_passed", x.certificate.passed},
          {"verifier_status", std::string(to_string(x.report.status))},
          {"min_slack", detail::real_to_json(x.report.min_slack)},
          {"explanation", x.explanation},
          {"certificate", to_json(x.certificate)},
          {"report", to_json(x.report)}};
}

}  // namespace hypgeo
