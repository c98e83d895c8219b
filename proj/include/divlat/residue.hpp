#pragma once

#include <cstdint>
#include <vector>

#include "divlat/catalog.hpp"
#include "divlat/fp.hpp"

namespace divlat {

struct SplitPrime {
  long p = 0;
  long residue_card = 0;  // q = p, degree-one primes only
  std::string family_tag;
};

/// The reduction O -> M_n(F_p) for one chosen split factor, given by the
/// images of the order basis.
struct SplittingMap {
  long p = 0;
  int n = 1;
  std::vector<FpMat> images;   // one n x n matrix per basis element
  long center_root = 0;        // chosen root of the conductor polynomial mod p, 0 if none

  int dim() const { return (int)images.size(); }
};

/// Smallest split prime >= min_bound for the family; throws past the cap.
SplitPrime find_split_prime(const FamilySpec& spec, long min_bound, long cap = 100000000);

/// Builds the reduction map and certifies it: ring homomorphism on all basis
/// pairs, phi(1) = I, and surjectivity (images span M_n(F_p)).
SplittingMap build_reduction(const Family& fam, const SplitPrime& prime);

/// Image of an integral element: sum x_i * images[i] over F_p.
FpMat reduce(const SplittingMap& map, const Element& x);

/// Reduce an integer coordinate vector directly.
FpMat reduce_coords(const SplittingMap& map, const std::vector<Int>& coords);

struct DetCompatReport {
  long samples = 0;
  long violations = 0;
};

/// Checks det(phi_p(x)) = nrd(x) mod p on random integral elements.
DetCompatReport det_compat_audit(const Family& fam, const SplittingMap& map,
                                 long samples, uint64_t seed);

/// |GL_n(F_p)| by the product formula prod_{i<n} (p^n - p^i).
Int gl_order(int n, long p);

}  // namespace divlat
