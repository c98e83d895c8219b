#pragma once

#include <cmath>
#include <stdexcept>

#include "divlat/rational.hpp"

namespace divlat {

/// Riemann zeta at an integer d >= 2 to about 1e-14: direct series plus the
/// integral tail bound N^{1-d}/(d-1) + N^{-d}/2.
inline double zeta(long d) {
  if (d < 2) throw std::invalid_argument("zeta needs d >= 2");
  if (d > 200) return 1.0;
  const long N = 200000;
  double s = 0.0;
  for (long n = N; n >= 1; --n) s += std::pow((double)n, -(double)d);
  double nn = (double)N;
  s += std::pow(nn, 1.0 - (double)d) / ((double)d - 1.0) - 0.5 * std::pow(nn, -(double)d);
  return s;
}

/// log2(zeta(d)), stable for large d where zeta(d) - 1 underflows.
inline double log2_zeta(long d) {
  if (d <= 60) return std::log2(zeta(d));
  double tail = std::pow(2.0, -(double)d) + std::pow(3.0, -(double)d);
  return std::log1p(tail) / std::log(2.0);
}

inline double log2_int(const Int& n) {
  signed long exp;
  double frac = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log2(frac) + (double)exp;
}

/// Volume of the d-dimensional unit ball.
inline double unit_ball_volume(long d) {
  return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

}  // namespace divlat
