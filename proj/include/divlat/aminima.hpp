#pragma once

#include <vector>

#include "divlat/algebra.hpp"
#include "divlat/lattice.hpp"

namespace divlat {

/// Algebra element with real coordinates (the floating-point side of the
/// module; exactness is recovered only when certifying candidates).
struct RealElement {
  std::vector<double> coords;
};

/// Vector in A_R^t, one real algebra element per coordinate.
struct AVector {
  std::vector<RealElement> parts;
};

RealElement real_from_element(const Element& x);
RealElement real_mul(const OrderSpec& ord, const RealElement& x, const RealElement& y);
RealElement real_involute(const OrderSpec& ord, const RealElement& x);
double real_trace(const OrderSpec& ord, const RealElement& x);
RealElement real_unity(const OrderSpec& ord);
/// Multiplicative inverse via the left-regular representation.
RealElement real_inverse(const OrderSpec& ord, const RealElement& x);

AVector avector_from_coords(const OrderSpec& ord, int t, const std::vector<double>& flat);
AVector avector_from_int_coords(const OrderSpec& ord, int t, const IntVec& coords);
std::vector<double> avector_flatten(const AVector& v);

/// <x,y>_A = sum_i x_i a y_i^*.
RealElement a_inner(const OrderSpec& ord, const AVector& x, const AVector& y,
                    const RealElement& a);

/// Projection of v onto the left-A_R line through u:
/// pr(u,v) = <v,u>_A <u,u>_A^{-1} u, so that <v - pr(u,v), u>_A = 0.
AVector project(const OrderSpec& ord, const AVector& u, const AVector& v,
                const RealElement& a);

/// Orthonormalization under <,>_A; output satisfies <x_i,x_j>_A ~ delta_ij 1_A.
/// Normalizers solve b^* b = <x,x>^{-1} via the principal inverse square root
/// of the positive definite left-regular matrix.
std::vector<AVector> a_gram_schmidt(const OrderSpec& ord, const std::vector<AVector>& vs,
                                    const RealElement& a);

struct MinimaProfile {
  std::vector<double> minima;    // min_1 <= ... <= min_t
  RatVec minima_sq;              // exact squared norms
  IntMat witnesses;              // integer coordinate vectors in the O^t basis
};

/// Greedy A-linear successive minima by exact norm order; the span test is
/// exact rational rank.
MinimaProfile successive_minima(const OrderSpec& ord, const LatticeInstance& inst,
                                size_t enum_cap = 4000000);

struct BalanceResult {
  std::vector<std::vector<double>> basis;  // real basis rows, O^t coordinates
  double lambda1 = 0.0;                    // shortest vector length of the output
  double geo_mean = 0.0;                   // (prod min_j)^{1/t}
  double covolume_in = 0.0;
  double covolume_out = 0.0;
};

/// The minima-balancing transform: y = sum a_j x_j maps to
/// (prod lambda)^{1/t} sum (a_j / lambda_j) x_j. Preserves the covolume and
/// pushes lambda_1 up to the geometric mean of the A-minima.
BalanceResult balance(const OrderSpec& ord, const RealElement& a,
                      const LatticeInstance& inst, const MinimaProfile& profile);

/// Shortest nonzero vector of a positive quadratic form given in doubles.
double double_svp(const std::vector<std::vector<double>>& gram);

/// Decimal text matrix with 15 significant digits, one row per line.
std::string balanced_basis_text(const BalanceResult& bal);

}  // namespace divlat
