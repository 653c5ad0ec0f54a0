#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

namespace hypgeo {

// 15 significant digits. Assumes the default "C" numeric locale.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::string format_complex(std::complex<double> z) {
  std::string out = format_real(z.real());
  const double im = z.imag();
  out += (std::signbit(im) ? "-" : "+");
  out += format_real(std::abs(im));
  out += 'i';
  return out;
}

}  // namespace hypgeo
