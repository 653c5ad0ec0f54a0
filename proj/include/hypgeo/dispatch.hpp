#pragma once

// Name-based access to the certificate checkers, shared by the CLI and scans.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "hypgeo/certificates.hpp"
#include "hypgeo/error.hpp"
#include "hypgeo/hypergeom.hpp"
#include "hypgeo/json_io.hpp"
#include "hypgeo/shape_classes.hpp"

namespace hypgeo {

inline constexpr std::array<std::string_view, 12> kTheoremNames = {
    "starlike-order", "cor-a2",        "spirallike",  "spirallike-cor1", "spirallike-cor2", "strong-starlike",
    "sst-cor-p0",     "sst-cor-max",   "sst-cor-final", "theorem-a",     "general",         "convexity"};

struct CertifyRequest {
  std::string theorem;
  cplx a = 0.0;
  cplx b = 0.0;
  std::optional<cplx> c;       // required unless the theorem fixes c = a + b + 1
  double alpha = 0.0;
  double lambda = 0.0;
  std::string family;          // class for general / convexity; empty means starlike
  bool relaxed = false;        // general only
  LineSearchSettings line_search;
  BoundaryGridSettings boundary;
};

namespace detail {

inline bool theorem_fixes_c(std::string_view t) {
  return t == "spirallike" || t == "spirallike-cor1" || t == "spirallike-cor2" || t == "sst-cor-p0" ||
         t == "sst-cor-max" || t == "sst-cor-final" || t == "theorem-a";
}

inline cplx require_c(const CertifyRequest& r) {
  if (!r.c) throw Error(ErrorCode::InvalidParams, "theorem '" + r.theorem + "' needs c");
  return *r.c;
}

inline double require_real(cplx x, const char* what) {
  if (x.imag() != 0.0) throw Error(ErrorCode::InvalidParams, std::string(what) + " must be real");
  return x.real();
}

}  // namespace detail

inline bool is_theorem_name(std::string_view name) {
  for (auto n : kTheoremNames) {
    if (n == name) return true;
  }
  return false;
}

/// The class a theorem's certificate speaks about.
inline ShapeClass class_for(const CertifyRequest& r) {
  const auto& t = r.theorem;
  if (t == "starlike-order") return make_starlike(r.alpha);
  if (t == "cor-a2") {
    const double order = 1.0 - r.a.real() / 2.0;
    return StarlikeOrder{order >= 0.0 && order < 1.0 ? order : 0.0};
  }
  if (t == "spirallike" || t == "spirallike-cor1" || t == "spirallike-cor2") return make_spirallike(r.lambda, r.alpha);
  if (t == "strong-starlike" || t.rfind("sst-", 0) == 0 || t == "theorem-a") return make_strongly_starlike(r.alpha);
  if (t == "general" || t == "convexity") return make_class(r.family.empty() ? "starlike" : r.family, r.alpha, r.lambda);
  throw Error(ErrorCode::InvalidParams, "unknown theorem '" + t + "'");
}

/// Runs the named checker. Theorems with c = a + b + 1 accept an explicit c
/// only when it matches.
inline Certificate certify(const CertifyRequest& r) {
  const auto& t = r.theorem;
  if (!is_theorem_name(t)) throw Error(ErrorCode::InvalidParams, "unknown theorem '" + t + "'");
  if (detail::theorem_fixes_c(t) && r.c && std::abs(*r.c - (r.a + r.b + 1.0)) > 1e-12 * (1.0 + std::abs(*r.c))) {
    throw Error(ErrorCode::InvalidParams, "theorem '" + t + "' fixes c = a + b + 1");
  }

  if (t == "starlike-order") return certify_starlike_order({r.a, r.b, detail::require_c(r)}, r.alpha);
  if (t == "cor-a2") {
    const cplx c = detail::require_c(r);
    if (c.imag() != r.b.imag()) throw Error(ErrorCode::InvalidParams, "cor-a2 needs Im b = Im c");
    return certify_cor_a2(detail::require_real(r.a, "a"), r.b.real(), c.real(), r.b.imag());
  }
  if (t == "spirallike") return certify_spirallike(r.a, r.b, r.lambda, r.alpha);
  if (t == "spirallike-cor1") return certify_spirallike_cor1(r.a, r.b, r.lambda, r.alpha);
  if (t == "spirallike-cor2") return certify_spirallike_cor2(r.a, r.b, r.lambda, r.alpha);
  if (t == "strong-starlike") return certify_strong_starlike({r.a, r.b, detail::require_c(r)}, r.alpha, r.line_search);
  if (t == "sst-cor-p0") return certify_sst_cor_p0(r.a, r.b, r.alpha, r.line_search);
  if (t == "sst-cor-max") return certify_sst_cor_max(r.a, r.b, r.alpha);
  if (t == "sst-cor-final") return certify_sst_cor_final(r.a, r.b, r.alpha);
  if (t == "theorem-a") return certify_theorem_A(r.a, r.b, r.alpha);
  const HypergeomParams params(r.a, r.b, detail::require_c(r));
  if (t == "general") return certify_general(class_for(r), params, r.boundary, r.relaxed);
  return certify_convexity(class_for(r), params, r.line_search, r.boundary);
}

}  // namespace hypgeo
