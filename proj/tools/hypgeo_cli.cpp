// hypgeo: evaluate z 2F1(a,b;c;z), certify and verify shape-class membership,
// and scan parameter regions.
//
// Exit codes: eval 0 / 2 invalid / 3 evaluation error; certify 0 pass / 1 fail /
// 2 invalid; verify 0 Consistent / 1 Violated / 2 Degenerate or invalid;
// crosscheck 0 SOUND or INFO / 4 UNSOUND / 2 invalid; scan 0 / 2 spec error.

#include <cstdio>
#include <fstream>
#include <locale>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hypgeo/hypgeo.hpp"

namespace {

using namespace hypgeo;

struct Globals {
  double series_tol = 1e-16;
  std::size_t max_terms = 200000;
  double radius_cap = 0.995;
  unsigned threads = 1;
  bool json_out = false;

  SeriesSettings series() const {
    SeriesSettings s;
    s.tol = series_tol;
    s.max_terms = max_terms;
    s.radius_cap = radius_cap;
    validate(s);
    return s;
  }
};

// "re,im" or "re".
cplx parse_complex(const std::string& text, const char* flag) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  double re = 0.0, im = 0.0;
  char comma = 0;
  bool ok = static_cast<bool>(in >> re);
  if (ok && in >> comma) ok = comma == ',' && static_cast<bool>(in >> im) && (in >> std::ws).eof();
  if (!ok) throw Error(ErrorCode::InvalidParams, std::string("cannot parse ") + flag + " '" + text + "' as re,im");
  return {re, im};
}

struct CertifyFlags {
  std::string theorem;
  std::string a = "0", b = "0", c;
  double alpha = 0.0, lambda = 0.0;
  std::string family;
  bool relaxed = false;
  LineSearchSettings ls;
  BoundaryGridSettings boundary;

  void attach(CLI::App* cmd, bool theorem_required) {
    auto* t = cmd->add_option("--theorem", theorem, "starlike-order, cor-a2, spirallike, spirallike-cor1, "
                                                    "spirallike-cor2, strong-starlike, sst-cor-p0, sst-cor-max, "
                                                    "sst-cor-final, theorem-a, general, convexity");
    if (theorem_required) t->required();
    cmd->add_option("--a", a, "a as re,im");
    cmd->add_option("--b", b, "b as re,im");
    cmd->add_option("--c", c, "c as re,im (implied c = a+b+1 for some theorems)");
    cmd->add_option("--alpha", alpha, "order alpha");
    cmd->add_option("--lambda", lambda, "spiral angle lambda (radians)");
    cmd->add_option("--class", family, "class for general/convexity: starlike, strongly-starlike, spirallike");
    cmd->add_flag("--relaxed", relaxed, "general: allow D = 0 where A != B");
    cmd->add_option("--s-min", ls.s_min, "line search lower end");
    cmd->add_option("--s-max", ls.s_max, "line search upper end");
    cmd->add_option("--n-log-points", ls.n_log_points, "line search samples");
    cmd->add_option("--min-margin", ls.min_margin, "line search acceptance margin");
    cmd->add_option("--n-boundary", boundary.n_uniform, "general: uniform boundary samples");
    cmd->add_option("--theta-min", boundary.theta_min, "general: exclusion radius around exceptional points");
  }

  CertifyRequest request() const {
    CertifyRequest r;
    r.theorem = theorem;
    r.a = parse_complex(a, "--a");
    r.b = parse_complex(b, "--b");
    if (!c.empty()) r.c = parse_complex(c, "--c");
    r.alpha = alpha;
    r.lambda = lambda;
    r.family = family;
    r.relaxed = relaxed;
    r.line_search = ls;
    r.boundary = boundary;
    return r;
  }
};

struct GridFlags {
  DiskGridSettings grid;
  std::string spacing = "geometric";

  void attach(CLI::App* cmd) {
    cmd->add_option("--n-radii", grid.n_radii, "number of rings");
    cmd->add_option("--r-max", grid.r_max, "outermost ring radius");
    cmd->add_option("--n-angles", grid.n_angles, "points per ring");
    cmd->add_option("--spacing", spacing, "uniform or geometric");
  }

  DiskGridSettings settings() const {
    DiskGridSettings g = grid;
    g.spacing = parse_radial_spacing(spacing);
    validate(g);
    return g;
  }
};

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

int report_error(const Error& e, int code) {
  std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
  return code;
}

bool is_input_error(ErrorCode c) {
  return c == ErrorCode::InvalidC || c == ErrorCode::InvalidParams || c == ErrorCode::PrecondFailed;
}

int cmd_eval(const Globals& g, const std::string& a, const std::string& b, const std::string& c,
             const std::string& z_text) {
  std::optional<HypergeomParams> params;
  cplx z;
  SeriesSettings s;
  try {
    params.emplace(parse_complex(a, "--a"), parse_complex(b, "--b"), parse_complex(c, "--c"));
    z = parse_complex(z_text, "--z");
    s = g.series();
  } catch (const Error& e) {
    return report_error(e, 2);
  }
  try {
    const cplx F = gauss_2f1(*params, z, s);
    const cplx dF = gauss_2f1_derivative(*params, z, s);
    const cplx f = shifted_f(*params, z, s);
    const cplx q = log_derivative_q(*params, z, s);
    if (g.json_out) {
      print_json({{"params", to_json(*params)}, {"z", to_json(z)}, {"F", to_json(F)}, {"dF", to_json(dF)},
                  {"f", to_json(f)}, {"q", to_json(q)}});
    } else {
      std::cout << "F  = " << format_complex(F) << '\n'
                << "F' = " << format_complex(dF) << '\n'
                << "f  = " << format_complex(f) << '\n'
                << "q  = " << format_complex(q) << '\n';
    }
  } catch (const Error& e) {
    return report_error(e, is_input_error(e.code()) ? 2 : 3);
  }
  return 0;
}

int cmd_certify(const CertifyFlags& flags) {
  try {
    const Certificate cert = certify(flags.request());
    print_json(to_json(cert));
    return cert.passed ? 0 : 1;
  } catch (const Error& e) {
    return report_error(e, 2);
  }
}

int cmd_verify(const Globals& g, const std::string& family, double alpha, double lambda, const std::string& a,
               const std::string& b, const std::string& c, const GridFlags& grid) {
  try {
    const ShapeClass cls = make_class(family, alpha, lambda);
    const HypergeomParams params(parse_complex(a, "--a"), parse_complex(b, "--b"), parse_complex(c, "--c"));
    const auto rep = verify_on_disk(cls, params, grid.settings(), g.series(), g.threads);
    print_json(to_json(rep));
    switch (rep.status) {
      case VerificationStatus::Consistent: return 0;
      case VerificationStatus::Violated: return 1;
      case VerificationStatus::Degenerate: return 2;
    }
    return 2;
  } catch (const Error& e) {
    return report_error(e, 2);
  }
}

int cmd_crosscheck(const Globals& g, const CertifyFlags& flags, const GridFlags& grid, const std::string& cert_file) {
  try {
    std::optional<Certificate> cert;
    if (!cert_file.empty()) {
      std::ifstream in(cert_file);
      if (!in) throw Error(ErrorCode::InvalidParams, "cannot open " + cert_file);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidParams, cert_file + ": " + e.what());
      }
      cert = certificate_from_json(j);
    } else {
      if (flags.theorem.empty()) throw Error(ErrorCode::InvalidParams, "need --theorem or --certificate");
      cert = certify(flags.request());
    }
    const auto result = cross_check(*cert, grid.settings(), g.series(), g.threads);
    print_json(to_json(result));
    return result.verdict == CrossCheckVerdict::Unsound ? 4 : 0;
  } catch (const Error& e) {
    return report_error(e, 2);
  }
}

int cmd_scan(const Globals& g, const std::string& spec_path, const std::string& out_path) {
  ScanSpec spec;
  try {
    std::ifstream in(spec_path);
    if (!in) throw Error(ErrorCode::InvalidParams, "cannot open " + spec_path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidParams, spec_path + ": " + e.what());
    }
    spec = parse_scan_spec(j);
  } catch (const Error& e) {
    return report_error(e, 2);
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return 2;
  }
  const auto sum = run_scan(spec, out, g.threads);
  out.close();
  if (!out) {
    std::cerr << "error: writing " << out_path << " failed\n";
    return 2;
  }
  if (g.json_out) {
    print_json({{"points", sum.points},
                {"passed", sum.passed},
                {"violated", sum.violated},
                {"degenerate", sum.degenerate},
                {"errors", sum.errors},
                {"unsound", sum.unsound}});
  } else {
    std::cout << "points " << sum.points << ", passed " << sum.passed << ", violated " << sum.violated
              << ", degenerate " << sum.degenerate << ", errors " << sum.errors << ", unsound " << sum.unsound
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates and numerical checks for z 2F1(a,b;c;z)"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--series-tol", g.series_tol, "relative series truncation tolerance");
  app.add_option("--max-terms", g.max_terms, "series term limit");
  app.add_option("--radius-cap", g.radius_cap, "largest |z| evaluated");
  app.add_option("--threads", g.threads, "worker threads for verify/crosscheck/scan")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json_out, "machine-readable output on stdout");

  auto* eval = app.add_subcommand("eval", "evaluate F, F', f and q = z f'/f at z");
  std::string ea = "0", eb = "0", ec = "1", ez = "0";
  eval->add_option("--a", ea, "a as re,im");
  eval->add_option("--b", eb, "b as re,im");
  eval->add_option("--c", ec, "c as re,im");
  eval->add_option("--z", ez, "z as re,im");

  auto* cert = app.add_subcommand("certify", "run one closed-form certificate");
  CertifyFlags cflags;
  cflags.attach(cert, true);

  auto* ver = app.add_subcommand("verify", "check the class inequality on a disk grid");
  std::string vfamily, va = "0", vb = "0", vc = "1";
  double valpha = 0.0, vlambda = 0.0;
  GridFlags vgrid;
  ver->add_option("--class", vfamily, "starlike, strongly-starlike or spirallike")->required();
  ver->add_option("--alpha", valpha, "order alpha");
  ver->add_option("--lambda", vlambda, "spiral angle lambda (radians)");
  ver->add_option("--a", va, "a as re,im");
  ver->add_option("--b", vb, "b as re,im");
  ver->add_option("--c", vc, "c as re,im");
  vgrid.attach(ver);

  auto* cross = app.add_subcommand("crosscheck", "certificate followed by the disk verifier");
  CertifyFlags xflags;
  GridFlags xgrid;
  std::string cert_file;
  xflags.attach(cross, false);
  xgrid.attach(cross);
  cross->add_option("--certificate", cert_file, "audit a certificate JSON file instead of certifying");

  auto* scan = app.add_subcommand("scan", "certify (and optionally verify) a parameter grid");
  std::string spec_path, out_path;
  scan->add_option("--spec", spec_path, "scan spec JSON")->required();
  scan->add_option("--out", out_path, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*eval) return cmd_eval(g, ea, eb, ec, ez);
  if (*cert) return cmd_certify(cflags);
  if (*ver) return cmd_verify(g, vfamily, valpha, vlambda, va, vb, vc, vgrid);
  if (*cross) return cmd_crosscheck(g, xflags, xgrid, cert_file);
  return cmd_scan(g, spec_path, out_path);
}
