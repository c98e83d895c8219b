#pragma once

#include <optional>
#include <string>
#include <vector>

#include "divlat/algebra.hpp"

namespace divlat {

enum class FamilyKind {
  Cyclotomic,            // K = Q(zeta_m), n = 1
  HurwitzQuaternion,     // (-1,-1)/Q, Hurwitz order
  CyclotomicQuaternion,  // Z[zeta_m] tensor Hurwitz, requires ord_2(m) odd
  DihedralQuaternion,    // cyclic algebra over the real subfield of Q(zeta_m)
  HurwitzRank,           // Hurwitz order at a given module rank t
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::HurwitzQuaternion;
  long m = 0;  // cyclotomic conductor, where applicable
  int t = 2;   // module rank, meaningful for HurwitzRank

  std::string name() const;
  static FamilySpec parse(const std::string& name, long m, int t);
};

/// Derived constants that do not require building the order; valid for
/// conductors far beyond desk scale.
struct FamilyInfo {
  int n = 1;             // sqrt([A:K])
  long center_degree = 1;
  long dim = 1;          // m * n^2 = dimension of A over Q
  Int g0_order{1};
  Int center_discriminant{1};  // d(O_K/Z)
  Int reduced_discriminant{1}; // headline convention used in the bound formulas
  std::string notes;
};

FamilyInfo family_info(const FamilySpec& spec);

/// A fully built order with its finite unit group and invariant form data.
struct Family {
  FamilySpec spec;
  FamilyInfo info;
  OrderSpec order;
  UnitGroup g0;
};

/// Constructs the order and unit group; throws when the admissibility
/// constraint fails or the dimension exceeds the desk-scale cap.
Family build_family(const FamilySpec& spec, int dim_cap = 64);

/// True iff the prime is a valid degree-one split prime for the family.
bool split_criterion(const FamilySpec& spec, long p);

bool is_prime_i64(long n);

/// ord of 2 modulo m; the cyclotomic-quaternion admissibility needs it odd.
long multiplicative_order_mod(long a, long m);
bool cyclo_quaternion_admissible(long m);

/// m_k: product of primes <= k whose 2-order is odd.
Int admissible_m_sequence(long k);

/// d(O_K/Z) for K = Q(zeta_m): m^phi(m) / prod_{l | m} l^{phi(m)/(l-1)}.
Int cyclotomic_discriminant(long m);

long euler_phi(long m);

struct DiscriminantReport {
  Int reduced;                    // headline value (Hurwitz: 2; n=1: field disc)
  Int trd_pairing_det;            // det(trd(e_i e_j)), sign included
  Int trace_form_det;             // det(T(e_i^* e_j)), the q_1 Gram determinant
};

DiscriminantReport order_discriminant(const Family& fam);

/// Smallest probable prime >= lower with p = 1 mod m.
/// Certification: 64 Miller-Rabin rounds plus one strong Lucas test.
Int find_congruence_prime(long m, const Int& lower, long cap_candidates = 2000000);

bool is_probable_prime(const Int& n);

struct AsymptoticBounds {
  double log2_main;        // |G0| zeta(d) t / (2^d e (1 - e^-t))
  double log2_indicator;   // |G0| zeta(d) / 2^d
  double log2_mh;          // 2 zeta(d) / 2^d
  double log2_cyclo_quat;  // 24 m_k / 2^{n_k} for the cyclotomic-quaternion family
  long dim;
};

AsymptoticBounds asymptotic_bounds(const FamilySpec& spec, int t);

}  // namespace divlat
