#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "hypgeo/hypergeom.hpp"

using namespace hypgeo;

namespace {

cplx random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

// Parameters with |.| <= 5 and c kept away from the poles.
HypergeomParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (;;) {
    const cplx a(u(rng), u(rng) * 0.6), b(u(rng), u(rng) * 0.6), c(u(rng), u(rng) * 0.6);
    if (std::abs(a) > 5 || std::abs(b) > 5 || std::abs(c) > 5) continue;
    if (c.real() < 0.5 && std::abs(c.imag()) < 0.5) continue;
    return {a, b, c};
  }
}

void expect_close(cplx got, cplx want, double rel) {
  EXPECT_LE(std::abs(got - want), rel * (1.0 + std::abs(want))) << "got " << got << " want " << want;
}

}  // namespace

TEST(HypergeomParams, RejectsPoleValuesOfC) {
  for (double c : {0.0, -1.0, -2.0, -7.0}) {
    try {
      HypergeomParams(1.0, 1.0, c);
      FAIL() << "c = " << c << " accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidC);
    }
  }
  EXPECT_THROW(HypergeomParams(1.0, 1.0, cplx(-2.0 + 1e-13, 0.0)), Error);
  EXPECT_NO_THROW(HypergeomParams(1.0, 1.0, cplx(-2.0, 1e-6)));
  EXPECT_NO_THROW(HypergeomParams(1.0, 1.0, -2.5));
}

TEST(HypergeomParams, RejectsNonFinite) {
  try {
    HypergeomParams(std::nan(""), 1.0, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParams);
  }
}

TEST(HypergeomParams, PIsRecomputed) {
  const HypergeomParams p(cplx(1, 2), cplx(3, -1), cplx(0.5, 0.25));
  expect_close(p.p(), cplx(4.5, 0.75), 0);
  expect_close(p.shifted().p(), p.p() + 1.0, 1e-15);
  EXPECT_EQ(p.swapped().swapped(), p);
}

TEST(Gauss2F1, ValueAtOriginIsOne) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(gauss_2f1(random_params(rng), 0.0), cplx(1.0));
}

TEST(Gauss2F1, ClosedForms) {
  expect_close(gauss_2f1({1, 2, 2}, 0.5), 2.0, 1e-14);
  expect_close(gauss_2f1({1, 1, 2}, 0.5), 2.0 * std::log(2.0), 1e-14);
  // 2F1(a, b; b; z) = (1 - z)^-a with complex a and z
  const cplx a(0.7, -1.3), z(0.3, 0.4);
  expect_close(gauss_2f1({a, cplx(2.5, 1.0), cplx(2.5, 1.0)}, z), std::pow(1.0 - z, -a), 1e-13);
  // 2F1(1, 1; 2; z) = -log(1 - z) / z near the radius cap
  const cplx zb = std::polar(0.99, 2.0);
  expect_close(gauss_2f1({1, 1, 2}, zb), -std::log(1.0 - zb) / zb, 1e-12);
}

TEST(Gauss2F1, TerminatingSeriesIsPolynomial) {
  // 2F1(-2, b; c; z) = 1 - 2bz/c + b(b+1) z^2 / (c(c+1))
  const cplx b(1.5, 0.5), c(3.0, -1.0), z(0.4, -0.7);
  const cplx want = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
  expect_close(gauss_2f1({-2.0, b, c}, z), want, 1e-14);
}

TEST(Gauss2F1, Errors) {
  try {
    gauss_2f1({1, 1, 2}, 0.999);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RadiusExceeded);
  }
  SeriesSettings few;
  few.max_terms = 5;
  try {
    gauss_2f1({1, 1, 2}, 0.9, few);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
  SeriesSettings bad;
  bad.radius_cap = 1.0;
  EXPECT_THROW(gauss_2f1({1, 1, 2}, 0.5, bad), Error);
}

TEST(Gauss2F1, PolarPointOnTheCapIsAccepted) {
  for (int j = 0; j < 720; ++j) {
    EXPECT_NO_THROW(gauss_2f1({1, 1, 2}, std::polar(0.995, 2.0 * kPi * j / 720)));
  }
}

TEST(Gauss2F1, SwapIsBitExact) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_params(rng);
    const cplx z = random_in_disk(rng, 0.8);
    const cplx f1 = gauss_2f1(p, z), f2 = gauss_2f1(p.swapped(), z);
    EXPECT_LE(std::abs(f1 - f2), 1e-12 * std::abs(f1));
  }
}

TEST(Gauss2F1Derivative, Examples) {
  expect_close(gauss_2f1_derivative({1, 2, 2}, 0.0), 1.0, 0);
  expect_close(gauss_2f1_derivative({1, 2, 2}, 0.5), 4.0, 1e-13);
  const HypergeomParams p(2, 3, 4);
  const double h = 1e-6, z = 0.3;
  const cplx fd = (gauss_2f1(p, z + h) - gauss_2f1(p, z - h)) / (2 * h);
  expect_close(gauss_2f1_derivative(p, z), fd, 1e-6);
  EXPECT_EQ(gauss_2f1_derivative({0.0, 2, 2}, 0.5), cplx(0.0));
}

TEST(Gauss2F1Derivative, AgreesWithFiniteDifferences) {
  std::mt19937_64 rng(3);
  const double h = 1e-6;
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_params(rng);
    const cplx z = random_in_disk(rng, 0.8);
    const cplx fd = (gauss_2f1(p, z + h) - gauss_2f1(p, z - h)) / (2 * h);
    const cplx d = gauss_2f1_derivative(p, z);
    EXPECT_LE(std::abs(d - fd), 1e-5 * (1.0 + std::abs(d))) << "i = " << i;
  }
}

TEST(ShiftedF, Examples) {
  EXPECT_EQ(shifted_f({1, 1, 3}, 0.0), cplx(0.0));
  expect_close(shifted_f({2, 1, 2}, 0.5), 1.0, 1e-14);
  expect_close(shifted_f({1, 1, 2}, 0.5), std::log(2.0), 1e-14);
}

TEST(LogDerivativeQ, Examples) {
  EXPECT_EQ(log_derivative_q({cplx(3, 1), cplx(-1, 2), 0.5}, 0.0), cplx(1.0));
  expect_close(log_derivative_q({2, 1, 2}, 0.5), 2.0, 1e-13);

  const HypergeomParams p(1, 1, 3);
  const cplx z(0.0, 0.5);
  const double h = 1e-6;
  const cplx fd = (shifted_f(p, z + h) - shifted_f(p, z - h)) / (2 * h);
  expect_close(log_derivative_q(p, z), fd * z / shifted_f(p, z), 1e-6);
}

TEST(LogDerivativeQ, ClosedFormOnTheDisk) {
  // f = z / (1 - z)  =>  q = 1 / (1 - z)
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const cplx z = random_in_disk(rng, 0.99);
    expect_close(log_derivative_q({2, 1, 2}, z), 1.0 / (1.0 - z), 1e-11);
  }
}

TEST(LogDerivativeQ, ZeroOfFIsReported) {
  // 2F1(-1, 2; 1; z) = 1 - 2z vanishes at z = 1/2
  try {
    log_derivative_q({-1, 2, 1}, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroOfF);
  }
}

TEST(OdeResidual, Examples) {
  EXPECT_LT(std::abs(ode_residual({1, 2, 2}, 0.5)), 1e-9);
  EXPECT_LT(std::abs(ode_residual({cplx(2, 1), cplx(1, -1), 3}, std::polar(0.4, kPi / 3))), 1e-8);
  EXPECT_LT(std::abs(ode_residual({cplx(2, 1), cplx(1, -1), 3}, 0.0)), 1e-15);
  EXPECT_THROW(ode_residual({1, 2, 2}, 0.9), Error);
}

TEST(OdeResidual, SmallOnRandomCorpus) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_params(rng);
    const cplx z = random_in_disk(rng, 0.8);
    EXPECT_LT(std::abs(ode_residual(p, z)), 1e-8 * (1.0 + std::abs(gauss_2f1(p, z)))) << "i = " << i;
  }
}
