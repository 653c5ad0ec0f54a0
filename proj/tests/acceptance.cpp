// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//   hypgeo_acceptance --cli <path to hypgeo> --spec <scan spec> --workdir <dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hypgeo/hypgeo.hpp"

using namespace hypgeo;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what, double seconds) {
  std::printf("%s criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", n, what.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

cplx random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

HypergeomParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (;;) {
    const cplx a(u(rng), u(rng) * 0.6), b(u(rng), u(rng) * 0.6), c(u(rng), u(rng) * 0.6);
    if (std::abs(a) > 5 || std::abs(b) > 5 || std::abs(c) > 5) continue;
    if (c.real() < 0.5 && std::abs(c.imag()) < 0.5) continue;
    return {a, b, c};
  }
}

// D - (|B|^2 - |A|^2) at one boundary point.
double boundary_margin(const ShapeClass& cls, const HypergeomParams& p, const BoundaryPoint& pt) {
  const cplx w = boundary_Q(cls, pt), zq = boundary_zQprime(cls, pt);
  const double d = -2.0 * ((p.p() * w + p.a() * p.b()) * std::conj(zq)).real();
  return d - ab_difference_direct(w, p.a(), p.b(), p.c());
}

void identity_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  long bad_ab = 0, bad_ode = 0, bad_swap = 0, bad_fd = 0;
  for (int i = 0; i < 10000; ++i) {
    const cplx w(u(rng), u(rng)), a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
    const double scale = std::max({std::abs(w), std::abs(a), std::abs(b), std::abs(c)});
    if (!(ab_identity_residual(w, a, b, c) < 1e-10 * (1.0 + std::pow(scale, 4)))) ++bad_ab;
  }
  const double h = 1e-6;
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_params(rng);
    const cplx z = random_in_disk(rng, 0.8);
    const cplx f = gauss_2f1(p, z);
    if (!(std::abs(ode_residual(p, z)) < 1e-8 * (1.0 + std::abs(f)))) ++bad_ode;
    if (!(std::abs(f - gauss_2f1(p.swapped(), z)) <= 1e-12 * std::abs(f))) ++bad_swap;
    const cplx fd = (gauss_2f1(p, z + h) - gauss_2f1(p, z - h)) / (2 * h);
    const cplx d = gauss_2f1_derivative(p, z);
    if (!(std::abs(d - fd) < 1e-5 * (1.0 + std::abs(d)))) ++bad_fd;
  }
  const double secs = elapsed_since(t0);
  std::ostringstream os;
  os << "identity suite: AB identity failures " << bad_ab << "/10000, ODE " << bad_ode << "/1000, swap " << bad_swap
     << "/1000, derivative " << bad_fd << "/1000";
  report(1, bad_ab + bad_ode + bad_swap + bad_fd == 0 && secs < 10.0, os.str(), secs);
}

void reduction_equalities() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> u(-3.0, 3.0), al(0.0, 0.95), als(0.05, 0.95), ls(-3.0, 3.0);
  int bad_quad = 0, bad_cubic = 0;
  for (int i = 0; i < 100; ++i) {
    const cplx a(u(rng), u(rng)), b(u(rng), u(rng));
    const double p = u(rng), alpha = al(rng), s = 3.0 * u(rng);
    const HypergeomParams params(a, b, a + b + 1.0 - p);
    const ShapeClass cls = StarlikeOrder{alpha};
    const double direct = boundary_margin(cls, params, boundary_point_from_s(cls, s));
    const double via = (1 - alpha) * (1 - alpha) * starlike_order_lmn(params, alpha).at(s);
    const double scale = 1.0 + std::abs(direct) + (1 + s * s) * (1 + std::norm(a) * std::norm(b));
    if (!(std::abs(via - direct) <= 1e-8 * scale)) ++bad_quad;
  }
  for (int i = 0; i < 100; ++i) {
    const cplx a(u(rng), u(rng)), b(u(rng), u(rng));
    const double p = u(rng), alpha = als(rng), s = std::pow(10.0, ls(rng));
    const int eps = i % 2 ? 1 : -1;
    const HypergeomParams params(a, b, a + b + 1.0 - p);
    const double x = std::pow(s, alpha);
    const cplx w = std::polar(x, eps * kPi * alpha / 2) - 1.0;
    const double direct = ab_difference_direct(w, a, b, params.c());
    const double scale =
        (1 + std::pow(std::abs(w), 4)) * (1 + std::pow(std::max(std::abs(a), std::abs(b)) + 1, 4));
    if (!(std::abs(cubic_coefficients(params, alpha).G(eps, x) - direct) <= 1e-8 * scale)) ++bad_cubic;
  }
  const double secs = elapsed_since(t0);
  std::ostringstream os;
  os << "reduction equalities: quadratic route mismatches " << bad_quad << "/100, cubic route " << bad_cubic << "/100";
  report(2, bad_quad + bad_cubic == 0 && secs < 5.0, os.str(), secs);
}

void certified_instances() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> problems;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };

  need(certify_starlike_order({2, cplx(2, 5), cplx(3, 5)}, 0.0).passed, "starlike-order (2, 2+5i, 3+5i)");
  need(certify_cor_a2(2, 1, 2, 0).passed, "cor-a2 (2, 1, 2)");
  need(certify_strong_starlike({1, 1, 3}, 0.5).passed, "strong-starlike (1, 1, 3)");
  need(certify_sst_cor_p0(1, 1, 0.5).passed, "sst-cor-p0 (1, 1)");
  need(certify_sst_cor_max(1, 1, 0.5).passed, "sst-cor-max (1, 1)");
  need(certify_sst_cor_final(1, 1, 0.5).passed, "sst-cor-final (1, 1)");
  need(certify_theorem_A(1, 1, 0.5).passed, "theorem-a (1, 1)");

  const auto r1 = verify_on_disk(StarlikeOrder{0.0}, {2, cplx(2, 5), cplx(3, 5)});
  const auto r2 = verify_on_disk(StarlikeOrder{0.0}, {2, 1, 2});
  const auto r3 = verify_on_disk(StronglyStarlike{0.5}, {1, 1, 3});
  for (const auto* r : {&r1, &r2, &r3}) {
    need(r->status == VerificationStatus::Consistent && r->min_slack > 0.0,
         "verify " + describe(r->cls) + " " + format_complex(r->params.b()) + ": " +
             std::string(to_string(r->status)) + ", min_slack " + format_real(r->min_slack));
  }
  need(std::abs(r2.min_slack - 1.0 / 1.995) < 1e-9, "min Re q for (2, 1, 2) is " + format_real(r2.min_slack));
  // slack = pi alpha / 2 - |arg q|, so min_slack >= 0 is max |arg q| <= pi / 4
  need(r3.min_slack >= 0.0, "max |arg q| for (1, 1, 3) exceeds pi/4");

  const double secs = elapsed_since(t0);
  std::string what = "certified instances pass and verify Consistent on 40x720";
  for (const auto& p : problems) what += "; problem: " + p;
  std::ostringstream os;
  os << what << " (min slacks " << format_real(r1.min_slack) << ", " << format_real(r2.min_slack) << ", "
     << format_real(r3.min_slack) << ")";
  report(3, problems.empty() && secs < 60.0, os.str(), secs);
}

void random_soundness_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> re(-0.5, 3.0), im(-1.0, 1.0), pr(-1.0, 2.0), al(0.0, 0.9),
      als(0.05, 0.95), lam(-1.2, 1.2), pos(0.2, 3.0);

  // One generator per closed-form checker; each returns a certificate for a random draw.
  const std::vector<std::pair<std::string, std::function<Certificate()>>> makers = {
      {"starlike-order",
       [&] {
         const cplx a(re(rng), im(rng)), b(re(rng), im(rng));
         return certify_starlike_order({a, b, a + b + 1.0 - pr(rng)}, al(rng));
       }},
      {"cor-a2", [&] { return certify_cor_a2(2.0 * pos(rng) / 3.0, pos(rng), pos(rng) + 1.0, im(rng)); }},
      {"spirallike", [&] { return certify_spirallike(cplx(re(rng), im(rng)), cplx(re(rng), im(rng)), lam(rng), al(rng)); }},
      {"strong-starlike",
       [&] {
         const cplx a(re(rng), im(rng) * 0.3), b(re(rng), im(rng) * 0.3);
         return certify_strong_starlike({a, b, a + b + 1.0 - std::round(4 * pr(rng)) / 4}, als(rng));
       }},
      {"sst-cor-p0", [&] { return certify_sst_cor_p0(cplx(re(rng), im(rng) * 0.3), cplx(re(rng), im(rng) * 0.3), als(rng)); }},
      {"sst-cor-max", [&] { return certify_sst_cor_max(cplx(re(rng), im(rng) * 0.3), cplx(re(rng), im(rng) * 0.3), als(rng)); }},
      {"sst-cor-final",
       [&] {
         const double x = pos(rng), y = im(rng);
         return certify_sst_cor_final(cplx(x, y), cplx(x, -y), als(rng));
       }},
      {"theorem-a",
       [&] {
         const double alpha = 0.34 + 0.65 * (al(rng) / 0.9);
         return certify_theorem_A(pos(rng), pos(rng), alpha);
       }},
  };

  DiskGridSettings grid;  // 40 x 720, r_max 0.995
  constexpr int kPerChecker = 25;
  long verified = 0, violated = 0, degenerate = 0;
  std::vector<std::string> violations;
  for (const auto& [name, make] : makers) {
    int found = 0;
    for (int attempt = 0; attempt < 20000 && found < kPerChecker; ++attempt) {
      std::optional<Certificate> cert;
      try {
        cert = make();
      } catch (const Error&) {
        continue;
      }
      if (!cert->passed) continue;
      ++found;
      const auto rep = verify_on_disk(cert->cls, verified_params(*cert), grid);
      ++verified;
      if (rep.status == VerificationStatus::Violated) {
        ++violated;
        violations.push_back(name + " " + describe(cert->cls) + " (" + format_complex(cert->params.a()) + ", " +
                             format_complex(cert->params.b()) + ", " + format_complex(cert->params.c()) +
                             ") min_slack " + format_real(rep.min_slack));
      } else if (rep.status == VerificationStatus::Degenerate) {
        ++degenerate;
      }
    }
  }
  const double secs = elapsed_since(t0);
  std::ostringstream os;
  os << "random soundness sweep: " << verified << " certified draws verified on 40x720, " << violated
     << " Violated, " << degenerate << " Degenerate";
  for (const auto& v : violations) os << "; " << v;
  report(4, verified >= 200 && violated == 0 && secs < 600.0, os.str(), secs);
}

void coherence_chain() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(105);
  std::uniform_real_distribution<double> u(-1.0, 3.0), v(-1.0, 1.0), al(0.05, 0.95), al0(0.0, 0.95),
      w(-2.0, 2.0);
  int chain_bad = 0, max_pass = 0, p0_pass = 0, drawn = 0;
  while (drawn < 500) {
    const cplx a(u(rng), v(rng)), b(u(rng), v(rng));
    const double alpha = al(rng);
    if (is_nonpositive_integer(a + b + 1.0) || a * b == cplx(0.0)) continue;
    ++drawn;
    const bool mx = certify_sst_cor_max(a, b, alpha).passed;
    const bool p0 = certify_sst_cor_p0(a, b, alpha).passed;
    const bool th = certify_strong_starlike({a, b, a + b + 1.0}, alpha).passed;
    max_pass += mx;
    p0_pass += p0;
    if ((mx && !p0) || (p0 && !th)) ++chain_bad;
  }
  int lambda_bad = 0;
  for (int i = 0; i < 500;) {
    const cplx a(w(rng), w(rng) * 0.5), b(w(rng), w(rng) * 0.5);
    const double alpha = al0(rng);
    if (a * b == cplx(0.0) || is_nonpositive_integer(a + b + 1.0)) continue;
    ++i;
    if (certify_spirallike(a, b, 0.0, alpha).passed != certify_starlike_order({a, b, a + b + 1.0}, alpha).passed) {
      ++lambda_bad;
    }
  }
  const double secs = elapsed_since(t0);
  std::ostringstream os;
  os << "coherence chain: " << chain_bad << " counterexamples in 500 draws (" << max_pass << " max-corollary passes, "
     << p0_pass << " p=0 passes); lambda = 0 reduction: " << lambda_bad << " disagreements in 500 draws";
  report(5, chain_bad == 0 && lambda_bad == 0 && max_pass > 0, os.str(), secs);
}

void oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(106);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int compared = 0, quad_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const double L = u(rng), M = u(rng), N = u(rng);
    const double scale = std::abs(L) + std::abs(M) + std::abs(N);
    if (std::abs(L * N - M * M) <= 1e-7 * scale * scale || std::abs(L) <= 1e-7 * scale ||
        std::abs(N) <= 1e-7 * scale) {
      continue;
    }
    ++compared;
    if (quadratic_nonneg_exact(L, M, N) != quadratic_nonneg_sampled(L, M, N)) ++quad_bad;
  }
  std::uniform_real_distribution<double> c3(-3.0, 3.0), pos(0.01, 3.0), al(0.01, 0.99);
  int passing = 0, lemma_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const double A = c3(rng), B = c3(rng), C = c3(rng), K = pos(rng), alpha = al(rng);
    if (!half_plane_bound_check(A, B, C, K, alpha)) continue;
    ++passing;
    for (int k = 0; k < 1000; ++k) {
      const double s = std::pow(10.0, -6.0 + 12.0 * k / 999.0);
      const double lhs = A * std::pow(s, alpha) + B + C * std::pow(s, -alpha);
      if (lhs > K * (s + 1 / s) * (1 + 1e-12) + 1e-12) {
        ++lemma_bad;
        break;
      }
    }
  }
  const double secs = elapsed_since(t0);
  std::ostringstream os;
  os << "oracle equivalence: quadratic disagreements " << quad_bad << "/" << compared
     << ", half-plane bound implication failures " << lemma_bad << "/" << passing << " passing draws of 1000";
  report(6, quad_bad == 0 && lemma_bad == 0 && compared > 9900 && passing > 0, os.str(), secs);
}

void structural_obstruction() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = certify_general(SpirallikeOrder{0.3, 0.0}, {1, 1, 2.5});
  const double s_fail = g.diagnostic("max_abs_s_failing").value_or(0.0);
  bool noted = false;
  for (const auto& n : g.notes) noted = noted || n.find("structural obstruction") != std::string::npos;
  const double secs = elapsed_since(t0);
  std::ostringstream os;
  os << "structural obstruction: general check on spirallike(0.3, 0) with (1, 1, 2.5) "
     << (g.passed ? "passed" : "failed") << ", largest failing |s| " << format_real(s_fail);
  report(7, !g.passed && s_fail >= 10.0 && noted, os.str(), secs);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void scan_determinism(const std::string& cli, const std::string& spec, const std::string& workdir) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string out1 = workdir + "/acceptance_scan_t1.csv", out4 = workdir + "/acceptance_scan_t4.csv";
  std::remove(out1.c_str());
  std::remove(out4.c_str());
  auto run = [&](int threads, const std::string& out) {
    const std::string cmd = "\"" + cli + "\" --threads " + std::to_string(threads) + " scan --spec \"" + spec +
                            "\" --out \"" + out + "\" > /dev/null";
    return std::system(cmd.c_str());
  };
  const int rc1 = run(1, out1), rc4 = run(4, out4);
  const std::string a = read_file(out1), b = read_file(out4);
  const double secs = elapsed_since(t0);
  std::ostringstream os;
  os << "scan determinism: exit codes " << rc1 << "/" << rc4 << ", " << a.size() << " bytes, "
     << (a == b ? "identical" : "different") << " for --threads 1 and 4";
  report(8, rc1 == 0 && rc4 == 0 && !a.empty() && a == b, os.str(), secs);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli, spec, workdir = ".";
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string k = argv[i];
    if (k == "--cli") cli = argv[i + 1];
    else if (k == "--spec") spec = argv[i + 1];
    else if (k == "--workdir") workdir = argv[i + 1];
  }
  if (cli.empty() || spec.empty()) {
    std::cerr << "usage: hypgeo_acceptance --cli <hypgeo> --spec <scan spec> [--workdir <dir>]\n";
    return 2;
  }

  identity_suite();
  reduction_equalities();
  certified_instances();
  random_soundness_sweep();
  coherence_chain();
  oracle_equivalence();
  structural_obstruction();
  scan_determinism(cli, spec, workdir);

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
