#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "divlat/fp.hpp"
#include "divlat/rational.hpp"

namespace divlat {

struct CodeParams {
  int n = 1;
  int t = 2;
  int k = 1;
  long p = 2;

  int ambient() const { return n * t; }  // row vectors live in F_p^{nt}
  bool operator==(const CodeParams& o) const {
    return n == o.n && t == o.t && k == o.k && p == o.p;
  }
};

/// A left M_n(F_p)-submodule of M_n(F_p)^t isomorphic to k copies of the
/// simple module, in Morita coordinates: the k-dimensional row space of a
/// RREF matrix in F_p^{nt}. A tuple lies in the submodule iff every row of
/// its n x (nt) concatenation lies in the row space.
struct Code {
  CodeParams params;
  FpMat row_space;         // k x nt, reduced row echelon form
  std::vector<int> pivots;

  bool operator==(const Code& o) const {
    return params == o.params && row_space == o.row_space;
  }
};

/// A tuple of t matrices over F_p, n x n each.
struct ResidueTuple {
  std::vector<FpMat> mats;

  FpMat concat() const;  // n x (n t)
};

Code code_from_rows(const CodeParams& params, FpMat rows);

/// Uniform sample over k-dimensional subspaces: rejection-sample k x nt
/// matrices until rank k, canonicalize to RREF.
Code sample_code(const CodeParams& params, std::mt19937_64& rng);

/// All k-dimensional subspaces, each once, in a reproducible order.
std::vector<Code> enumerate_codes(const CodeParams& params, size_t cap = 2000000);

/// Number of k-dimensional subspaces of F_p^d (Gaussian binomial).
Int gaussian_binomial(int d, int k, long p);

bool contains(const Code& code, const ResidueTuple& v);

/// Rank of the concatenated matrix equals n.
bool in_U(const ResidueTuple& v);

struct BalancednessReport {
  Int L = 0;          // common number of codes through each u in U
  bool uniform = false;
  Int bijection_count = 0;  // expected L: subspace count of (k-n) in nt-n
  long u_checked = 0;
};

/// Exhaustive audit over all u in U_p; feasible for small p^{n^2 t}.
BalancednessReport balancedness_audit(const CodeParams& params, size_t cap = 2000000);

/// Expands a code to its explicit set of tuples; test oracle, p^{nk} elements.
std::vector<ResidueTuple> expand_code(const Code& code, size_t cap = 1000000);

}  // namespace divlat
