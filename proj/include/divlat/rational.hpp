#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <string>
#include <vector>

namespace divlat {

using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using IntMat = std::vector<std::vector<Int>>;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<std::vector<Rat>>;

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Nearest integer to a/b, ties toward +infinity.
inline Int round_quotient(const Int& a, const Int& b) {
  return floor_div(2 * a + b, 2 * b);
}

inline Int round_rat(const Rat& x) {
  return round_quotient(x.get_num(), x.get_den());
}

inline Int floor_rat(const Rat& x) {
  return floor_div(x.get_num(), x.get_den());
}

inline std::string rat_str(const Rat& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline double to_double(const Rat& x) { return x.get_d(); }

inline Rat rat_pow(Rat base, unsigned long e) {
  Rat r(1);
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Int int_pow(Int base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace divlat
