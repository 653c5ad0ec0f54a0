#pragma once

// Gauss hypergeometric function 2F1(a,b;c;z) on the unit disk by direct power
// series, plus the shifted function f(z) = z F(z) and its logarithmic
// derivative z f'(z) / f(z).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "hypgeo/error.hpp"
#include "hypgeo/format.hpp"

namespace hypgeo {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Tolerance used to decide that c sits on a pole of the series.
inline constexpr double kPoleTolerance = 1e-12;

inline bool is_nonpositive_integer(cplx c, double tol = kPoleTolerance) {
  if (std::abs(c.imag()) > tol) return false;
  const double re = c.real();
  return re <= tol && std::abs(re - std::round(re)) <= tol;
}

/// Parameter triple (a, b, c) of 2F1. Construction rejects c in {0, -1, -2, ...}.
class HypergeomParams {
 public:
  HypergeomParams(cplx a, cplx b, cplx c) : a_(a), b_(b), c_(c) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
        !std::isfinite(b.imag()) || !std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::InvalidParams, "hypergeometric parameters must be finite");
    }
    if (is_nonpositive_integer(c)) {
      throw Error(ErrorCode::InvalidC, "c is a nonpositive integer (c = " + format_complex(c) + ")");
    }
  }

  cplx a() const noexcept { return a_; }
  cplx b() const noexcept { return b_; }
  cplx c() const noexcept { return c_; }

  /// p = a + b + 1 - c, always recomputed.
  cplx p() const noexcept { return a_ + b_ + 1.0 - c_; }

  HypergeomParams swapped() const { return {b_, a_, c_}; }
  /// (a+1, b+1, c+1): the parameters of F' up to the factor ab/c.
  HypergeomParams shifted() const { return {a_ + 1.0, b_ + 1.0, c_ + 1.0}; }

  friend bool operator==(const HypergeomParams&, const HypergeomParams&) = default;

 private:
  cplx a_;
  cplx b_;
  cplx c_;
};

struct SeriesSettings {
  double tol = 1e-16;              // relative truncation tolerance
  std::size_t max_terms = 200000;  //
  double radius_cap = 0.995;       // largest admissible |z|
  double zero_tol = 1e-12;         // |F(z)| at or below this counts as a zero of F
};

inline void validate(const SeriesSettings& s) {
  if (!(s.tol > 0.0)) throw Error(ErrorCode::InvalidParams, "series tol must be positive");
  if (s.max_terms == 0) throw Error(ErrorCode::InvalidParams, "max_terms must be positive");
  if (!(s.radius_cap > 0.0 && s.radius_cap < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "radius_cap must lie in (0, 1)");
  }
  if (!(s.zero_tol >= 0.0)) throw Error(ErrorCode::InvalidParams, "zero_tol must be nonnegative");
}

namespace detail {

struct SeriesSums {
  cplx value;         // sum t_n
  cplx z_derivative;  // sum n t_n = z F'(z)
};

// A few ulps of slack so that std::polar(cap, theta) is accepted.
inline void check_radius(cplx z, double cap) {
  if (std::abs(z) > cap * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())) {
    throw Error(ErrorCode::RadiusExceeded,
                "|z| = " + format_real(std::abs(z)) + " exceeds radius cap " + format_real(cap));
  }
}

// Minimal complex arithmetic over an arbitrary real type, enough for the
// series recurrence. Used with long double and __float128 (std::complex is
// unspecified for the latter).
template <class T>
struct WideComplex {
  T re{}, im{};

  WideComplex() = default;
  WideComplex(T r, T i) : re(r), im(i) {}
  explicit WideComplex(cplx z) : re(z.real()), im(z.imag()) {}

  cplx narrow() const { return {static_cast<double>(re), static_cast<double>(im)}; }
  bool is_zero() const { return re == T(0) && im == T(0); }
  double approx_abs() const { return std::abs(narrow()); }

  friend WideComplex operator+(WideComplex x, WideComplex y) { return {x.re + y.re, x.im + y.im}; }
  friend WideComplex operator*(WideComplex x, WideComplex y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend WideComplex operator*(WideComplex x, T s) { return {x.re * s, x.im * s}; }
  friend WideComplex operator/(WideComplex x, WideComplex y) {
    const T n = y.re * y.re + y.im * y.im;
    return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
  }
};

// Ratio of sum |t_n| (or sum n |t_n|) to |F| above which the double pass is
// redone in long double, and above which quad precision is used instead.
// Rounding costs about log10 of the ratio in digits.
inline constexpr double kCancellationLimit = 1e5;
inline constexpr double kLongDoubleLimit = 1e8;

[[noreturn]] inline void throw_no_convergence(const SeriesSettings& settings, cplx z) {
  throw Error(ErrorCode::NoConvergence, "2F1 series did not converge within " + std::to_string(settings.max_terms) +
                                            " terms at z = " + format_complex(z));
}

template <class T, bool WithDerivative>
SeriesSums sum_series_wide(cplx a_in, cplx b_in, cplx c_in, cplx z_in, const SeriesSettings& settings) {
  using W = WideComplex<T>;
  const W a(a_in), b(b_in), c(c_in), z(z_in);
  W value(1, 0), zder(0, 0), term(1, 0);
  int small_run = 0;
  for (std::size_t n = 0; n < settings.max_terms; ++n) {
    const T dn = static_cast<T>(n);
    const W num = (a + W(dn, 0)) * (b + W(dn, 0));
    term = term * num / ((c + W(dn, 0)) * (dn + 1)) * z;
    value = value + term;
    if constexpr (WithDerivative) zder = zder + term * (dn + 1);
    if (term.is_zero()) return {value.narrow(), zder.narrow()};

    const double t = term.approx_abs();
    bool small = t < settings.tol * value.approx_abs();
    if constexpr (WithDerivative) {
      small = small && (static_cast<double>(n) + 1.0) * t < settings.tol * zder.approx_abs();
    }
    small_run = small ? small_run + 1 : 0;
    if (small_run >= 3) return {value.narrow(), zder.narrow()};
  }
  throw_no_convergence(settings, z_in);
}

// Term recurrence t_{n+1} = t_n (a+n)(b+n) / ((c+n)(n+1)) z. The product
// (a+n)(b+n) is formed first so that swapping a and b is bit-exact. Sums
// that cancel heavily are recomputed in wider precision.
template <bool WithDerivative>
SeriesSums sum_series(cplx a, cplx b, cplx c, cplx z, const SeriesSettings& settings) {
  SeriesSums sums{1.0, 0.0};
  if (z == cplx(0.0)) return sums;

  cplx term = 1.0;
  double mass = 1.0, der_mass = 0.0;
  int small_run = 0;
  auto finish = [&] {
    const double ratio = std::max(mass, der_mass) / std::abs(sums.value);
    if (!(ratio > kCancellationLimit)) return sums;
    if (ratio <= kLongDoubleLimit) return sum_series_wide<long double, WithDerivative>(a, b, c, z, settings);
    return sum_series_wide<__float128, WithDerivative>(a, b, c, z, settings);
  };
  for (std::size_t n = 0; n < settings.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    const cplx num = (a + dn) * (b + dn);
    term = term * num / ((c + dn) * (dn + 1.0)) * z;
    sums.value += term;
    const double t = std::abs(term);
    mass += t;
    if constexpr (WithDerivative) {
      sums.z_derivative += (dn + 1.0) * term;
      der_mass += (dn + 1.0) * t;
    }

    if (term == cplx(0.0)) return finish();  // terminating (polynomial) series

    bool small = t < settings.tol * std::abs(sums.value);
    if constexpr (WithDerivative) {
      small = small && (dn + 1.0) * t < settings.tol * std::abs(sums.z_derivative);
    }
    small_run = small ? small_run + 1 : 0;
    if (small_run >= 3) return finish();
  }
  throw_no_convergence(settings, z);
}

}  // namespace detail

inline cplx gauss_2f1(const HypergeomParams& params, cplx z, const SeriesSettings& settings = {}) {
  validate(settings);
  detail::check_radius(z, settings.radius_cap);
  return detail::sum_series<false>(params.a(), params.b(), params.c(), z, settings).value;
}

/// d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1,b+1;c+1;z).
inline cplx gauss_2f1_derivative(const HypergeomParams& params, cplx z,
                                 const SeriesSettings& settings = {}) {
  detail::check_radius(z, settings.radius_cap);
  const cplx ab = params.a() * params.b();
  if (ab == cplx(0.0)) return 0.0;
  return ab / params.c() * gauss_2f1(params.shifted(), z, settings);
}

inline cplx shifted_f(const HypergeomParams& params, cplx z, const SeriesSettings& settings = {}) {
  return z * gauss_2f1(params, z, settings);
}

/// z f'(z) / f(z) = 1 + z F'(z) / F(z), with the value exactly 1 at z = 0.
///
/// F and z F' come from one pass over the series (z F' = sum n t_n), which is
/// the same quantity as the derivative formula at half the cost.
inline cplx log_derivative_q(const HypergeomParams& params, cplx z,
                             const SeriesSettings& settings = {}) {
  validate(settings);
  if (z == cplx(0.0)) return 1.0;
  detail::check_radius(z, settings.radius_cap);
  const auto sums = detail::sum_series<true>(params.a(), params.b(), params.c(), z, settings);
  if (std::abs(sums.value) <= settings.zero_tol) {
    throw Error(ErrorCode::ZeroOfF, "F(z) vanishes at z = " + format_complex(z));
  }
  return 1.0 + sums.z_derivative / sums.value;
}

/// (1-z) z F'' + [c - (a+b+1) z] F' - ab F, with F' and F'' from the exact
/// derivative formula. Valid for |z| <= 0.9 radius_cap.
inline cplx ode_residual(const HypergeomParams& params, cplx z, const SeriesSettings& settings = {}) {
  detail::check_radius(z, 0.9 * settings.radius_cap);
  const cplx a = params.a(), b = params.b(), c = params.c();
  const cplx f0 = gauss_2f1(params, z, settings);
  const cplx f1 = gauss_2f1_derivative(params, z, settings);
  const cplx f2 = gauss_2f1_derivative(params.shifted(), z, settings) * (a * b / c);
  return (1.0 - z) * z * f2 + (c - (a + b + 1.0) * z) * f1 - a * b * f0;
}

}  // namespace hypgeo
