#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divlat/rational.hpp"

namespace divlat {

/// Closed-form data for the reduced norm of a catalog order.
/// Degree one (n = 1): nrd = N_{K/Q}, no extra data.
/// Quaternion (n = 2): nrd_{A/K}(x) = x * quat_conj(x) lands in the center;
/// center_cols lists a Z-basis of the center inside the order basis, and
/// nrd_{A/Q} is the K/Q-norm of the center element, i.e. the determinant of
/// multiplication by it on that basis.
struct NrdSpec {
  int n = 1;
  std::vector<std::vector<long>> quat_conj;   // N x N integer matrix, n = 2 only
  std::vector<std::vector<long>> center_cols; // each a length-N coordinate vector
};

/// Z-basis presentation of an order in a Q-division algebra: integer structure
/// constants e_i e_j = sum_k c[i][j][k] e_k, an involution given by an integer
/// matrix, and the coordinates of 1.
struct OrderSpec {
  int dim_total = 0;  // N = m * n^2
  int n = 1;          // sqrt([A:K])
  int m = 1;          // [K:Q]
  std::vector<std::vector<std::vector<long>>> structure_constants;
  std::vector<std::vector<long>> involution;  // column j = coords of e_j^*
  IntVec unity;
  std::optional<NrdSpec> nrd;

  /// Throws if associativity, the involution axioms or the unity axiom fail.
  void validate() const;
};

/// Element of A in order-basis coordinates; lies in the order iff all
/// coordinates are integers.
struct Element {
  RatVec coords;

  bool is_integral() const {
    for (const auto& c : coords)
      if (c.get_den() != 1) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& c : coords)
      if (c != 0) return false;
    return true;
  }
  bool operator==(const Element& o) const { return coords == o.coords; }
};

Element element_from_ints(const std::vector<long>& v);
Element zero_element(const OrderSpec& ord);
Element unity_element(const OrderSpec& ord);

Element mul(const OrderSpec& ord, const Element& x, const Element& y);
Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);
Element scale(const Element& x, const Rat& c);
Element involute(const OrderSpec& ord, const Element& x);

/// Left multiplication matrix of x in the order basis (column j = x * e_j).
RatMat left_mult_matrix(const OrderSpec& ord, const Element& x);

Rat trace_Q(const OrderSpec& ord, const Element& x);
Rat norm_Q(const OrderSpec& ord, const Element& x);

/// Reduced trace T(x)/n and reduced norm over Q via the family's closed form.
Rat reduced_trace(const OrderSpec& ord, const Element& x);
Rat reduced_norm(const OrderSpec& ord, const Element& x);

/// Symmetric positive element a with the Gram matrix of q_a(x) = T(x^* a x)
/// on the order basis. Positivity is certified by exact LDL pivots.
struct PositiveElement {
  Element value;
  RatMat gram;  // gram[i][j] = T(e_i^* a e_j)
};

/// Builds a PositiveElement from a; throws if the form is not positive definite
/// or a is not involution-symmetric.
PositiveElement make_positive(const OrderSpec& ord, const Element& a);

struct UnitGroup {
  std::vector<Element> elements;
  size_t order() const { return elements.size(); }
};

/// Closure of the generators under multiplication; throws if it exceeds cap.
UnitGroup enumerate_group(const OrderSpec& ord, const std::vector<Element>& generators,
                          size_t cap = 100000);

/// a = sum_{g in G0} g^* g, with the G0-invariance of q_a checked on the basis.
PositiveElement build_invariant_form(const OrderSpec& ord, const UnitGroup& g0);

struct NormTraceGap {
  Rat lhs;          // T(x^* a x) / d
  double rhs;       // N(x)^{2/d} N(a)^{1/d}
  bool holds_exact; // lhs^d >= N(x)^2 N(a), compared in exact arithmetic
};

NormTraceGap norm_trace_gap(const OrderSpec& ord, const Element& x, const PositiveElement& a);

/// Exact determinant of a rational matrix (fraction-free elimination).
Rat rat_det(RatMat m);

/// True iff the symmetric rational matrix is positive definite (LDL pivots > 0).
bool is_positive_definite(const RatMat& g);

}  // namespace divlat
