#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "divlat/algebra.hpp"
#include "divlat/catalog.hpp"
#include "divlat/codes.hpp"
#include "divlat/residue.hpp"

namespace divlat {

/// Row-style Hermite normal form of a full-rank generating set: returns a
/// square upper-triangular basis with positive pivots, entries above each
/// pivot reduced modulo it.
IntMat hnf(const IntMat& generators, int dim);

/// Is v in the row span over Z of the HNF basis?
bool hnf_contains(const IntMat& H, const IntVec& v);

struct LllResult {
  IntMat gram;       // U * G * U^T
  IntMat transform;  // unimodular U
};

/// Integral LLL (delta = 99/100) on an exact integer Gram matrix.
LllResult lll_reduce(const IntMat& gram);

/// Exact Fincke-Pohst enumeration of nonzero vectors with Q(x) <= bound,
/// one representative per +-pair (topmost nonzero coefficient positive).
/// Stops early if visit returns false.
void enumerate_short_vectors(const RatMat& gram, const Rat& bound,
                             const std::function<bool(const IntVec&, const Rat&)>& visit);

struct Provenance {
  std::string family;
  long p = 0;
  std::string code_id;
  std::string form;  // "unity" or "g0-sum"
};

/// Full-rank sublattice of O^t: integer basis rows in the Z-basis of O^t and
/// the exact Gram matrix under the chosen positive form.
struct LatticeInstance {
  int dim = 0;           // d = m n^2 t
  int t = 1;
  IntMat basis;          // HNF rows
  RatMat gram;           // basis * G_{O^t} * basis^T
  RatMat order_gram;     // block-diagonal Gram of q_a on O^t
  Rat gram_det;
  Provenance provenance;
};

/// O^t itself under the form q_a.
LatticeInstance order_lattice(const Family& fam, const PositiveElement& a, int t);

/// Preimage of a code under the coordinate-wise reduction map.
LatticeInstance lift_code(const Family& fam, const PositiveElement& a,
                          const SplittingMap& map, const Code& code);

struct SvpResult {
  Rat min_sq;
  std::vector<IntVec> vectors;  // all minimal vectors up to sign (basis coords)
  long kissing = 0;             // counts both signs
};

SvpResult svp(const LatticeInstance& inst, int dim_cap = 16);

/// Number of primitive vectors with Q(x) <= bound, both signs counted.
/// With early_exit, returns 1 as soon as any primitive vector is found.
long count_primitive_in_ball(const LatticeInstance& inst, const Rat& bound,
                             bool early_exit = false);

struct DensityReport {
  int dimension = 0;
  Rat lambda1_sq;
  Rat covolume_sq;
  double density = 0.0;
  double bound_mh = 0.0;  // 2 zeta(d) / 2^d
  double bound_g0 = 0.0;  // |G0| zeta(d) / 2^d
  Provenance provenance;
};

DensityReport packing_density(const LatticeInstance& inst, const Int& g0_order);

/// beta_p = p^{(nk - n^2 t)/(n^2 m t)}; scaling by it normalizes lift
/// covolumes to Vol(O^t).
double beta_scale(long p, int n, int m, int t, int k);

/// Norm lower bound for points whose reduction is non-invertible:
/// sqrt([A:Q]) N(a)^{1/(2[A:Q])} q^{1/(n m)}.
double bad_point_bound(const Family& fam, const PositiveElement& a, long p);

/// Checks every enumerated point of O failing in_U after reduction against
/// the bound; returns the number of violations (must be zero) and whether the
/// bound is attained.
struct BadPointAudit {
  long checked = 0;
  long singular = 0;
  long violations = 0;
  bool attained = false;  // some singular point meets the bound exactly
};
BadPointAudit audit_bad_points(const Family& fam, const PositiveElement& a,
                               const SplittingMap& map, const Rat& radius_sq);

struct OrderBounds {
  double lambda1_lb;
  double hermite_lb;
  double covering_ub;
};

/// The three bound formulas for O under q_a, evaluated with an explicit
/// discriminant value (conventions differ; the catalog headline value is the
/// reduced discriminant).
OrderBounds order_bounds_with_disc(const Family& fam, const PositiveElement& a,
                                   const Int& disc);
OrderBounds order_bounds(const Family& fam, const PositiveElement& a);

/// Sampled covering-radius lower bound: exact nearest-lattice-point distance
/// maximized over random targets, then locally refined around the best one.
double covering_radius_sample(const LatticeInstance& inst, long samples, uint64_t seed);

/// Serialization helpers for the plain-text basis format.
std::string basis_to_text(const IntMat& basis);
IntMat basis_from_text(const std::string& text);

}  // namespace divlat
