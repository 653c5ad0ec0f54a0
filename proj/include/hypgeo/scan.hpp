#pragma once

// Parameter-region scans: a JSON spec names 1-3 varying symbols over linear
// ranges plus fixed values; every grid point is certified (and optionally
// verified) and written as one CSV row in row-major order.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hypgeo/dispatch.hpp"
#include "hypgeo/error.hpp"
#include "hypgeo/format.hpp"
#include "hypgeo/json_io.hpp"
#include "hypgeo/verifier.hpp"

namespace hypgeo {

inline constexpr std::array<std::string_view, 8> kScanSymbols = {"a_re", "a_im", "b_re", "b_im",
                                                                 "c_re", "c_im", "alpha", "lambda"};
inline constexpr long long kMaxScanPoints = 10'000'000;

struct ScanAxis {
  std::string symbol;
  double from = 0.0;
  double to = 0.0;
  int steps = 2;

  double value(int i) const { return i == steps - 1 ? to : from + (to - from) * i / (steps - 1); }
};

struct ScanSpec {
  std::vector<ScanAxis> varying;
  std::map<std::string, double> fixed;
  std::string theorem;
  std::string family;  // class for general / convexity; defaults per theorem otherwise
  bool verify = false;
  bool relaxed = false;
  DiskGridSettings grid;
  SeriesSettings series;
  LineSearchSettings line_search;
  BoundaryGridSettings boundary;

  long long total_points() const {
    long long n = 1;
    for (const auto& ax : varying) n *= ax.steps;
    return n;
  }
};

namespace detail {

inline bool is_scan_symbol(std::string_view s) {
  return std::find(kScanSymbols.begin(), kScanSymbols.end(), s) != kScanSymbols.end();
}

inline void spec_error(const std::string& msg) { throw Error(ErrorCode::InvalidParams, "scan spec: " + msg); }

}  // namespace detail

/// Schema:
///   {"varying": [{"symbol": "b_re", "from": 0.5, "to": 3, "steps": 26}, ...],
///    "fixed": {"a_re": 2, ...}, "theorem": "starlike-order", "class": "starlike",
///    "verify": false, "relaxed": false,
///    "grid": {...}, "series": {"tol", "max_terms", "radius_cap", "zero_tol"},
///    "line_search": {"s_min", "s_max", "n_log_points", "refine_iters", "min_margin"},
///    "boundary": {"n_uniform", "n_cluster", "theta_min", "cluster_span", "rel_tol"}}
inline ScanSpec parse_scan_spec(const json& j) {
  if (!j.is_object()) detail::spec_error("top level must be an object");
  ScanSpec spec;
  try {
    if (!j.contains("varying") || !j.at("varying").is_array()) detail::spec_error("'varying' must be an array");
    for (const auto& ax : j.at("varying")) {
      ScanAxis a{ax.at("symbol").get<std::string>(), ax.at("from").get<double>(), ax.at("to").get<double>(),
                 ax.at("steps").get<int>()};
      if (!detail::is_scan_symbol(a.symbol)) detail::spec_error("unknown symbol '" + a.symbol + "'");
      if (a.steps < 2) detail::spec_error("axis '" + a.symbol + "' needs steps >= 2");
      if (!std::isfinite(a.from) || !std::isfinite(a.to)) detail::spec_error("axis bounds must be finite");
      for (const auto& prev : spec.varying) {
        if (prev.symbol == a.symbol) detail::spec_error("symbol '" + a.symbol + "' varies twice");
      }
      spec.varying.push_back(a);
    }
    if (spec.varying.empty() || spec.varying.size() > 3) detail::spec_error("need 1 to 3 varying symbols");
    long long total = 1;
    for (const auto& ax : spec.varying) {
      total *= ax.steps;
      if (total > kMaxScanPoints) detail::spec_error("more than 10^7 points");
    }

    if (j.contains("fixed")) {
      for (const auto& [k, v] : j.at("fixed").items()) {
        if (!detail::is_scan_symbol(k)) detail::spec_error("unknown symbol '" + k + "'");
        for (const auto& ax : spec.varying) {
          if (ax.symbol == k) detail::spec_error("symbol '" + k + "' is both fixed and varying");
        }
        spec.fixed[k] = v.get<double>();
      }
    }

    spec.theorem = j.value("theorem", std::string{});
    if (!is_theorem_name(spec.theorem)) detail::spec_error("unknown theorem '" + spec.theorem + "'");
    spec.family = j.value("class", std::string{});
    if (!spec.family.empty() && spec.family != "starlike" && spec.family != "strongly-starlike" &&
        spec.family != "spirallike") {
      detail::spec_error("unknown class '" + spec.family + "'");
    }
    spec.verify = j.value("verify", false);
    spec.relaxed = j.value("relaxed", false);

    if (j.contains("grid")) spec.grid = grid_from_json(j.at("grid"));
    if (j.contains("series")) {
      const auto& s = j.at("series");
      spec.series.tol = s.value("tol", spec.series.tol);
      spec.series.max_terms = s.value("max_terms", spec.series.max_terms);
      spec.series.radius_cap = s.value("radius_cap", spec.series.radius_cap);
      spec.series.zero_tol = s.value("zero_tol", spec.series.zero_tol);
    }
    validate(spec.series);
    if (j.contains("line_search")) {
      const auto& s = j.at("line_search");
      spec.line_search.s_min = s.value("s_min", spec.line_search.s_min);
      spec.line_search.s_max = s.value("s_max", spec.line_search.s_max);
      spec.line_search.n_log_points = s.value("n_log_points", spec.line_search.n_log_points);
      spec.line_search.refine_iters = s.value("refine_iters", spec.line_search.refine_iters);
      spec.line_search.min_margin = s.value("min_margin", spec.line_search.min_margin);
    }
    validate(spec.line_search);
    if (j.contains("boundary")) {
      const auto& s = j.at("boundary");
      spec.boundary.n_uniform = s.value("n_uniform", spec.boundary.n_uniform);
      spec.boundary.n_cluster = s.value("n_cluster", spec.boundary.n_cluster);
      spec.boundary.theta_min = s.value("theta_min", spec.boundary.theta_min);
      spec.boundary.cluster_span = s.value("cluster_span", spec.boundary.cluster_span);
      spec.boundary.rel_tol = s.value("rel_tol", spec.boundary.rel_tol);
    }
  } catch (const json::exception& e) {
    detail::spec_error(e.what());
  }
  return spec;
}

struct ScanRow {
  std::vector<double> coords;
  bool certificate_passed = false;
  std::string failed_condition;
  std::optional<double> min_slack;
  std::string status;  // verifier status, "not-verified", or "error"
};

/// Coordinates of point `index` (last axis fastest).
inline std::vector<double> scan_coordinates(const ScanSpec& spec, long long index) {
  std::vector<double> out(spec.varying.size());
  for (std::size_t k = spec.varying.size(); k-- > 0;) {
    const auto& ax = spec.varying[k];
    out[k] = ax.value(static_cast<int>(index % ax.steps));
    index /= ax.steps;
  }
  return out;
}

inline CertifyRequest scan_request(const ScanSpec& spec, const std::vector<double>& coords) {
  std::map<std::string, double> v = spec.fixed;
  for (std::size_t k = 0; k < coords.size(); ++k) v[spec.varying[k].symbol] = coords[k];
  auto get = [&](const char* s) { return v.count(s) ? v.at(s) : 0.0; };

  CertifyRequest r;
  r.theorem = spec.theorem;
  r.family = spec.family;
  r.a = {get("a_re"), get("a_im")};
  r.b = {get("b_re"), get("b_im")};
  if (v.count("c_re") || v.count("c_im")) r.c = cplx(get("c_re"), get("c_im"));
  r.alpha = get("alpha");
  r.lambda = get("lambda");
  r.relaxed = spec.relaxed;
  r.line_search = spec.line_search;
  r.boundary = spec.boundary;
  return r;
}

inline ScanRow evaluate_scan_point(const ScanSpec& spec, long long index) {
  ScanRow row;
  row.coords = scan_coordinates(spec, index);
  row.status = spec.verify ? "error" : "not-verified";
  try {
    const Certificate cert = certify(scan_request(spec, row.coords));
    row.certificate_passed = cert.passed;
    if (const auto* f = cert.first_failure()) row.failed_condition = f->name;
    if (spec.verify) {
      const auto rep = verify_on_disk(cert.cls, verified_params(cert), spec.grid, spec.series, 1);
      row.min_slack = rep.min_slack;
      row.status = std::string(to_string(rep.status));
    }
  } catch (const Error& e) {
    row.certificate_passed = false;
    row.failed_condition = "error: " + std::string(to_string(e.code()));
  }
  return row;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

inline std::string csv_line(const ScanRow& row) {
  std::string line;
  for (double x : row.coords) line += format_real(x) + ',';
  line += row.certificate_passed ? "true," : "false,";
  line += csv_field(row.failed_condition) + ',';
  if (row.min_slack) line += format_real(*row.min_slack);
  line += ',' + csv_field(row.status) + "\r\n";
  return line;
}

}  // namespace detail

struct ScanSummary {
  long long points = 0;
  long long passed = 0;
  long long violated = 0;    // verifier reported Violated
  long long degenerate = 0;  // verifier reported Degenerate
  long long errors = 0;      // certification threw
  long long unsound = 0;     // certificate passed but verifier not Consistent
};

inline std::string scan_header(const ScanSpec& spec) {
  std::string h;
  for (const auto& ax : spec.varying) h += ax.symbol + ',';
  return h + "certificate_passed,failed_condition,min_slack,status\r\n";
}

/// Writes the header and one row per point to `out`. Rows are computed by
/// `threads` workers in blocks and written in index order, so the bytes do
/// not depend on the thread count.
inline ScanSummary run_scan(const ScanSpec& spec, std::ostream& out, unsigned threads = 1) {
  constexpr long long kBlock = 256;
  const long long total = spec.total_points();
  const unsigned nt = std::max(1u, threads);
  ScanSummary sum;
  out << scan_header(spec);

  std::vector<ScanRow> block;
  for (long long start = 0; start < total; start += kBlock) {
    const long long count = std::min(kBlock, total - start);
    block.assign(static_cast<std::size_t>(count), ScanRow{});
    std::atomic<long long> next{0};
    auto work = [&] {
      for (long long i; (i = next.fetch_add(1)) < count;) block[i] = evaluate_scan_point(spec, start + i);
    };
    if (nt == 1 || count == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < std::min<long long>(nt, count); ++t) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    for (const auto& row : block) {
      out << detail::csv_line(row);
      ++sum.points;
      if (row.certificate_passed) ++sum.passed;
      if (row.status == "Violated") ++sum.violated;
      if (row.status == "Degenerate") ++sum.degenerate;
      if (row.failed_condition.rfind("error: ", 0) == 0) ++sum.errors;
      if (row.certificate_passed && spec.verify && row.status != "Consistent") ++sum.unsound;
    }
  }
  return sum;
}

}  // namespace hypgeo
