#include "divlat/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "divlat/zeta.hpp"

namespace divlat {

namespace {

// Coefficients of the m-th cyclotomic polynomial, low degree first.
// Computed by dividing x^m - 1 by Phi_d for all proper divisors d | m.
std::vector<long> cyclotomic_poly(long m) {
  std::vector<long> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    std::vector<long> phi_d = cyclotomic_poly(d);
    // exact polynomial division num /= phi_d
    std::vector<long> quot(num.size() - phi_d.size() + 1, 0);
    std::vector<long> rem = num;
    for (int i = (int)quot.size() - 1; i >= 0; --i) {
      long c = rem[i + phi_d.size() - 1] / phi_d.back();
      quot[i] = c;
      if (c == 0) continue;
      for (size_t j = 0; j < phi_d.size(); ++j) rem[i + j] -= c * phi_d[j];
    }
    for (long r : rem)
      if (r != 0) throw std::logic_error("cyclotomic division not exact");
    num = quot;
  }
  return num;
}

// rows[e] = coordinates of zeta^e in the power basis, for e = 0 .. max_exp.
std::vector<std::vector<long>> power_reduction_table(long m, long max_exp) {
  std::vector<long> phi_poly = cyclotomic_poly(m);
  const long deg = (long)phi_poly.size() - 1;
  std::vector<std::vector<long>> rows;
  for (long e = 0; e <= max_exp; ++e) {
    std::vector<long> row(deg, 0);
    if (e < deg) {
      row[e] = 1;
    } else {
      // zeta^e = zeta * zeta^{e-1}, then reduce by Phi_m (monic)
      std::vector<long> prev = rows[e - 1];
      std::vector<long> shifted(deg + 1, 0);
      for (long i = 0; i < deg; ++i) shifted[i + 1] = prev[i];
      long lead = shifted[deg];
      for (long i = 0; i < deg; ++i) row[i] = shifted[i] - lead * phi_poly[i];
    }
    rows.push_back(row);
  }
  return rows;
}

// Multiplication table of the Hurwitz basis {1, i, j, w}, w = (1+i+j+k)/2.
const long kHurwitzMul[4][4][4] = {
    {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
    {{0, 1, 0, 0}, {-1, 0, 0, 0}, {-1, -1, -1, 2}, {-1, 0, -1, 1}},
    {{0, 0, 1, 0}, {1, 1, 1, -2}, {-1, 0, 0, 0}, {0, 1, 1, -1}},
    {{0, 0, 0, 1}, {0, 1, 1, -1}, {-1, -1, 0, 1}, {-1, 0, 0, 1}},
};

// Quaternion conjugation on that basis: 1, -i, -j, 1 - w (column j = image of e_j).
const long kHurwitzConj[4][4] = {
    {1, 0, 0, 1},
    {0, -1, 0, 0},
    {0, 0, -1, 0},
    {0, 0, 0, -1},
};

OrderSpec hurwitz_order() {
  OrderSpec ord;
  ord.dim_total = 4;
  ord.n = 2;
  ord.m = 1;
  ord.structure_constants.assign(4, std::vector<std::vector<long>>(4, std::vector<long>(4, 0)));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) ord.structure_constants[i][j][k] = kHurwitzMul[i][j][k];
  ord.involution.assign(4, std::vector<long>(4, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ord.involution[i][j] = kHurwitzConj[i][j];
  ord.unity = {Int(1), Int(0), Int(0), Int(0)};
  NrdSpec nrd;
  nrd.n = 2;
  nrd.quat_conj.assign(4, std::vector<long>(4, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) nrd.quat_conj[i][j] = kHurwitzConj[i][j];
  nrd.center_cols = {{1, 0, 0, 0}};
  ord.nrd = nrd;
  return ord;
}

OrderSpec cyclotomic_order(long m) {
  const long deg = euler_phi(m);
  auto red = power_reduction_table(m, 2 * deg - 2 > m ? 2 * deg - 2 : m);
  OrderSpec ord;
  ord.dim_total = (int)deg;
  ord.n = 1;
  ord.m = (int)deg;
  ord.structure_constants.assign(deg, std::vector<std::vector<long>>(deg, std::vector<long>(deg, 0)));
  for (long a = 0; a < deg; ++a)
    for (long b = 0; b < deg; ++b)
      for (long k = 0; k < deg; ++k) ord.structure_constants[a][b][k] = red[a + b][k];
  // zeta^a -> zeta^{m-a}
  ord.involution.assign(deg, std::vector<long>(deg, 0));
  for (long a = 0; a < deg; ++a) {
    const auto& img = red[(m - a) % m];
    for (long i = 0; i < deg; ++i) ord.involution[i][a] = img[i];
  }
  ord.unity.assign(deg, Int(0));
  ord.unity[0] = 1;
  NrdSpec nrd;
  nrd.n = 1;
  ord.nrd = nrd;
  return ord;
}

OrderSpec cyclo_quaternion_order(long m) {
  const long deg = euler_phi(m);
  auto red = power_reduction_table(m, 2 * deg - 2 > m ? 2 * deg - 2 : m);
  const long N = 4 * deg;
  auto idx = [&](long a, long b) { return a * 4 + b; };
  OrderSpec ord;
  ord.dim_total = (int)N;
  ord.n = 2;
  ord.m = (int)deg;
  ord.structure_constants.assign(N, std::vector<std::vector<long>>(N, std::vector<long>(N, 0)));
  for (long a1 = 0; a1 < deg; ++a1)
    for (long b1 = 0; b1 < 4; ++b1)
      for (long a2 = 0; a2 < deg; ++a2)
        for (long b2 = 0; b2 < 4; ++b2) {
          auto& out = ord.structure_constants[idx(a1, b1)][idx(a2, b2)];
          const auto& zc = red[a1 + a2];
          for (long a = 0; a < deg; ++a) {
            if (zc[a] == 0) continue;
            for (long b = 0; b < 4; ++b) {
              long h = kHurwitzMul[b1][b2][b];
              if (h != 0) out[idx(a, b)] += zc[a] * h;
            }
          }
        }
  // (zeta^a h)^* = zeta^{-a} conj(h)
  ord.involution.assign(N, std::vector<long>(N, 0));
  for (long a = 0; a < deg; ++a) {
    const auto& zc = red[(m - a) % m];
    for (long b = 0; b < 4; ++b)
      for (long ai = 0; ai < deg; ++ai) {
        if (zc[ai] == 0) continue;
        for (long bi = 0; bi < 4; ++bi)
          if (kHurwitzConj[bi][b] != 0)
            ord.involution[idx(ai, bi)][idx(a, b)] = zc[ai] * kHurwitzConj[bi][b];
      }
  }
  ord.unity.assign(N, Int(0));
  ord.unity[idx(0, 0)] = 1;

  NrdSpec nrd;
  nrd.n = 2;
  // quaternion conjugation only, identity on the center
  nrd.quat_conj.assign(N, std::vector<long>(N, 0));
  for (long a = 0; a < deg; ++a)
    for (long b = 0; b < 4; ++b)
      for (long bi = 0; bi < 4; ++bi)
        if (kHurwitzConj[bi][b] != 0) nrd.quat_conj[idx(a, bi)][idx(a, b)] = kHurwitzConj[bi][b];
  for (long a = 0; a < deg; ++a) {
    std::vector<long> col(N, 0);
    col[idx(a, 0)] = 1;
    nrd.center_cols.push_back(col);
  }
  ord.nrd = nrd;
  return ord;
}

// Cyclic algebra L + L j over the real subfield, L = Q(u) with u a primitive
// m-th root of unity, j^2 = -1 and j u j^{-1} = u^{-1}. Basis: u^a, u^a j.
OrderSpec dihedral_quaternion_order(long m) {
  const long deg = euler_phi(m);
  long max_exp = std::max(2 * deg - 2, m);
  auto red = power_reduction_table(m, max_exp);
  const long N = 2 * deg;
  OrderSpec ord;
  ord.dim_total = (int)N;
  ord.n = 2;
  ord.m = (int)(deg / 2);
  ord.structure_constants.assign(N, std::vector<std::vector<long>>(N, std::vector<long>(N, 0)));
  auto emit = [&](long a1, bool j1, long a2, bool j2, std::vector<long>& out) {
    // (u^{a1} j^{e1})(u^{a2} j^{e2})
    long e;
    long sign = 1;
    bool outj;
    if (!j1) {
      e = a1 + a2;
      outj = j2;
    } else if (!j2) {
      e = ((a1 - a2) % m + m) % m;
      outj = true;
    } else {
      e = ((a1 - a2) % m + m) % m;
      outj = false;
      sign = -1;
    }
    const auto& zc = red[e];
    for (long a = 0; a < deg; ++a)
      if (zc[a] != 0) out[(outj ? deg : 0) + a] += sign * zc[a];
  };
  for (long a1 = 0; a1 < deg; ++a1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (long a2 = 0; a2 < deg; ++a2)
        for (int j2 = 0; j2 < 2; ++j2)
          emit(a1, j1, a2, j2, ord.structure_constants[j1 * deg + a1][j2 * deg + a2]);
  // (u^a)^* = u^{-a}; (u^a j)^* = -u^a j
  ord.involution.assign(N, std::vector<long>(N, 0));
  for (long a = 0; a < deg; ++a) {
    const auto& zc = red[(m - a) % m];
    for (long i = 0; i < deg; ++i) ord.involution[i][a] = zc[i];
    ord.involution[deg + a][deg + a] = -1;
  }
  ord.unity.assign(N, Int(0));
  ord.unity[0] = 1;

  NrdSpec nrd;
  nrd.n = 2;
  nrd.quat_conj = ord.involution;  // canonical involution coincides here
  // center basis: 1 and theta_c = u^c + u^{m-c}, c = 1 .. deg/2 - 1
  {
    std::vector<long> one(N, 0);
    one[0] = 1;
    nrd.center_cols.push_back(one);
    for (long c = 1; c < deg / 2; ++c) {
      std::vector<long> col(N, 0);
      for (long i = 0; i < deg; ++i) col[i] = red[c][i] + red[m - c][i];
      nrd.center_cols.push_back(col);
    }
  }
  ord.nrd = nrd;
  return ord;
}

Element basis_elt(int N, int i) {
  Element e;
  e.coords.assign(N, Rat(0));
  e.coords[i] = 1;
  return e;
}

}  // namespace

std::string FamilySpec::name() const {
  switch (kind) {
    case FamilyKind::Cyclotomic: return "cyclotomic(" + std::to_string(m) + ")";
    case FamilyKind::HurwitzQuaternion: return "hurwitz";
    case FamilyKind::CyclotomicQuaternion: return "cyclo-quat(" + std::to_string(m) + ")";
    case FamilyKind::DihedralQuaternion: return "dihedral-quat(" + std::to_string(m) + ")";
    case FamilyKind::HurwitzRank: return "hurwitz-rank(" + std::to_string(t) + ")";
  }
  return "?";
}

FamilySpec FamilySpec::parse(const std::string& name, long m, int t) {
  FamilySpec spec;
  spec.m = m;
  spec.t = t;
  if (name == "hurwitz") spec.kind = FamilyKind::HurwitzQuaternion;
  else if (name == "cyclotomic") spec.kind = FamilyKind::Cyclotomic;
  else if (name == "cyclo-quat") spec.kind = FamilyKind::CyclotomicQuaternion;
  else if (name == "dihedral-quat") spec.kind = FamilyKind::DihedralQuaternion;
  else if (name == "hurwitz-rank") spec.kind = FamilyKind::HurwitzRank;
  else throw std::invalid_argument("unknown family: " + name);
  if (spec.kind == FamilyKind::Cyclotomic || spec.kind == FamilyKind::CyclotomicQuaternion ||
      spec.kind == FamilyKind::DihedralQuaternion) {
    if (m < 3) throw std::invalid_argument("family needs a conductor m >= 3");
  }
  return spec;
}

long euler_phi(long m) {
  long result = m, n = m;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

bool is_prime_i64(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

long multiplicative_order_mod(long a, long m) {
  if (m < 2 || std::gcd(a, m) != 1)
    throw std::invalid_argument("multiplicative order needs gcd(a,m)=1, m>=2");
  long x = a % m, ord = 1;
  while (x != 1) {
    x = (x * (a % m)) % m;
    ++ord;
    if (ord > m) throw std::logic_error("order computation ran away");
  }
  return ord;
}

bool cyclo_quaternion_admissible(long m) {
  if (m < 3 || m % 2 == 0) return false;
  return multiplicative_order_mod(2, m) % 2 == 1;
}

Int admissible_m_sequence(long k) {
  if (k < 2) throw std::invalid_argument("admissible_m_sequence needs k >= 2");
  Int m(1);
  for (long p = 3; p <= k; ++p)
    if (is_prime_i64(p) && multiplicative_order_mod(2, p) % 2 == 1) m *= p;
  return m;
}

Int cyclotomic_discriminant(long m) {
  if (m < 3) throw std::invalid_argument("cyclotomic_discriminant needs m >= 3");
  long phi = euler_phi(m);
  Int num = int_pow(Int(m), phi);
  long n = m;
  for (long l = 2; l <= n; ++l) {
    if (!is_prime_i64(l) || m % l != 0) continue;
    Int den = int_pow(Int(l), phi / (l - 1));
    if (num % den != 0) throw std::logic_error("discriminant formula not integral");
    num /= den;
  }
  return num;
}

FamilyInfo family_info(const FamilySpec& spec) {
  FamilyInfo info;
  switch (spec.kind) {
    case FamilyKind::HurwitzQuaternion:
    case FamilyKind::HurwitzRank:
      info.n = 2;
      info.center_degree = 1;
      info.dim = 4;
      info.g0_order = 24;
      info.center_discriminant = 1;
      info.reduced_discriminant = 2;
      break;
    case FamilyKind::Cyclotomic:
      info.n = 1;
      info.center_degree = euler_phi(spec.m);
      info.dim = info.center_degree;
      info.g0_order = (spec.m % 2 == 1) ? Int(2 * spec.m) : Int(spec.m);
      info.center_discriminant = cyclotomic_discriminant(spec.m);
      info.reduced_discriminant = info.center_discriminant;
      break;
    case FamilyKind::CyclotomicQuaternion: {
      if (!cyclo_quaternion_admissible(spec.m))
        throw std::invalid_argument("cyclo-quat needs odd m with ord_2(m) odd");
      long phi = euler_phi(spec.m);
      info.n = 2;
      info.center_degree = phi;
      info.dim = 4 * phi;
      info.g0_order = Int(24) * spec.m;
      info.center_discriminant = cyclotomic_discriminant(spec.m);
      info.reduced_discriminant =
          int_pow(Int(2), phi) * int_pow(info.center_discriminant, 4);
      break;
    }
    case FamilyKind::DihedralQuaternion: {
      if (spec.m < 3 || spec.m % 2 == 0)
        throw std::invalid_argument("dihedral-quat needs odd m >= 3");
      long phi = euler_phi(spec.m);
      info.n = 2;
      info.center_degree = phi / 2;
      info.dim = 2 * phi;
      // The realized finite unit group <u, j> has order 4m; a literal dihedral
      // group of order 2m cannot embed in a division ring (it would need more
      // than one element of order 2).
      info.g0_order = Int(4) * spec.m;
      if (is_prime_i64(spec.m))
        info.center_discriminant = int_pow(Int(spec.m), (spec.m - 3) / 2);
      else
        info.center_discriminant = 0;  // not tabulated for composite m
      info.reduced_discriminant = 0;   // reported from the built order instead
      info.notes = "experimental family; realized unit group is dicyclic of order 4m";
      break;
    }
  }
  return info;
}

Family build_family(const FamilySpec& spec, int dim_cap) {
  Family fam;
  fam.spec = spec;
  fam.info = family_info(spec);
  if (fam.info.dim > dim_cap)
    throw std::invalid_argument("family dimension exceeds desk-scale cap");

  switch (spec.kind) {
    case FamilyKind::HurwitzQuaternion:
    case FamilyKind::HurwitzRank: {
      fam.order = hurwitz_order();
      Element i = basis_elt(4, 1), w = basis_elt(4, 3);
      fam.g0 = enumerate_group(fam.order, {i, w});
      break;
    }
    case FamilyKind::Cyclotomic: {
      fam.order = cyclotomic_order(spec.m);
      Element zeta = basis_elt(fam.order.dim_total, 1);
      Element minus_one = scale(unity_element(fam.order), Rat(-1));
      fam.g0 = enumerate_group(fam.order, {zeta, minus_one});
      break;
    }
    case FamilyKind::CyclotomicQuaternion: {
      fam.order = cyclo_quaternion_order(spec.m);
      const int N = fam.order.dim_total;
      Element i = basis_elt(N, 1), w = basis_elt(N, 3), zeta = basis_elt(N, 4);
      fam.g0 = enumerate_group(fam.order, {i, w, zeta});
      break;
    }
    case FamilyKind::DihedralQuaternion: {
      fam.order = dihedral_quaternion_order(spec.m);
      const int N = fam.order.dim_total;
      long deg = euler_phi(spec.m);
      Element u = basis_elt(N, 1), j = basis_elt(N, (int)deg);
      fam.g0 = enumerate_group(fam.order, {u, j});
      break;
    }
  }
  fam.order.validate();
  if (Int((long)fam.g0.order()) != fam.info.g0_order)
    throw std::logic_error("unit group order does not match catalog value");
  return fam;
}

bool split_criterion(const FamilySpec& spec, long p) {
  if (p < 3 || !is_prime_i64(p)) return false;
  switch (spec.kind) {
    case FamilyKind::HurwitzQuaternion:
    case FamilyKind::HurwitzRank:
      return true;  // every odd prime splits (-1,-1)/Q
    case FamilyKind::Cyclotomic:
    case FamilyKind::CyclotomicQuaternion:
    case FamilyKind::DihedralQuaternion:
      return p % spec.m == 1;
  }
  return false;
}

DiscriminantReport order_discriminant(const Family& fam) {
  const OrderSpec& ord = fam.order;
  const int N = ord.dim_total;
  RatMat trd_pairing(N, RatVec(N, Rat(0)));
  RatMat trace_form(N, RatVec(N, Rat(0)));
  for (int i = 0; i < N; ++i) {
    Element ei = basis_elt(N, i);
    Element ei_star = involute(ord, ei);
    for (int j = 0; j < N; ++j) {
      Element ej = basis_elt(N, j);
      trd_pairing[i][j] = reduced_trace(ord, mul(ord, ei, ej));
      trace_form[i][j] = trace_Q(ord, mul(ord, ei_star, ej));
    }
  }
  DiscriminantReport rep;
  Rat d1 = rat_det(trd_pairing);
  Rat d2 = rat_det(trace_form);
  if (d1.get_den() != 1 || d2.get_den() != 1)
    throw std::logic_error("pairing determinant not integral");
  rep.trd_pairing_det = d1.get_num();
  rep.trace_form_det = d2.get_num();
  rep.reduced = fam.info.reduced_discriminant;
  if (rep.reduced == 0) {
    // fall back to sqrt(|det trd pairing|) when it is a perfect square
    Int a = abs(rep.trd_pairing_det);
    Int r = sqrt(a);
    rep.reduced = (r * r == a) ? r : a;
  }
  return rep;
}

namespace {

const long kSmallPrimes[] = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151,
    157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233,
    239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311};

bool miller_rabin(const Int& n, const Int& base) {
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Int x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Strong Lucas test with Selfridge parameters.
bool strong_lucas(const Int& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  long d_abs = 5;
  int sign = 1;
  Int D;
  while (true) {
    D = sign > 0 ? Int(d_abs) : Int(-d_abs);
    int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && abs(D) < n) return false;
    d_abs += 2;
    sign = -sign;
    if (d_abs > 1000000) return false;
  }
  Int P(1), Q = (1 - D) / 4;

  Int k = n + 1;
  unsigned long s = mpz_scan1(k.get_mpz_t(), 0);
  Int d = k;
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  // compute U_d, V_d, Q^d by binary ladder
  Int U(1), V = P, Qk = Q % n;
  long bits = (long)mpz_sizeinbase(d.get_mpz_t(), 2);
  Int inv2 = (n + 1) / 2;  // n odd
  for (long i = bits - 2; i >= 0; --i) {
    // double: U_{2m} = U V; V_{2m} = V^2 - 2 Q^m
    Int U2 = (U * V) % n;
    Int V2 = (V * V - 2 * Qk) % n;
    Int Q2 = (Qk * Qk) % n;
    U = U2;
    V = V2;
    Qk = Q2;
    if (mpz_tstbit(d.get_mpz_t(), i)) {
      // increment: U_{m+1} = (P U + V)/2; V_{m+1} = (D U + P V)/2
      Int Un = ((P * U + V) % n * inv2) % n;
      Int Vn = ((D * U + P * V) % n * inv2) % n;
      U = Un;
      V = Vn;
      Qk = (Qk * Q) % n;
    }
  }
  auto normed = [&](Int x) { x %= n; if (x < 0) x += n; return x; };
  if (normed(U) == 0 || normed(V) == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    V = (V * V - 2 * Qk) % n;
    if (normed(V) == 0) return true;
    Qk = (Qk * Qk) % n;
  }
  return false;
}

}  // namespace

bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  for (long p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (long p : kSmallPrimes)
    if (!miller_rabin(n, Int(p))) return false;
  return strong_lucas(n);
}

Int find_congruence_prime(long m, const Int& lower, long cap_candidates) {
  if (m < 1) throw std::invalid_argument("find_congruence_prime needs m >= 1");
  Int c = lower < 2 ? Int(2) : lower;
  if (m > 1) {
    Int r = c % m;
    Int delta = (1 - r) % m;
    if (delta < 0) delta += m;
    c += delta;
  }
  for (long tries = 0; tries < cap_candidates; ++tries) {
    if (is_probable_prime(c)) return c;
    c += (m > 1) ? m : 1;
  }
  throw std::runtime_error("find_congruence_prime: candidate cap exhausted");
}

AsymptoticBounds asymptotic_bounds(const FamilySpec& spec, int t) {
  FamilyInfo info = family_info(spec);
  AsymptoticBounds b;
  b.dim = info.dim * t;
  double log2_g0 = log2_int(info.g0_order);
  double lz = log2_zeta(b.dim);
  double log2e = std::log2(std::exp(1.0));
  b.log2_main = log2_g0 + lz + std::log2((double)t) - (double)b.dim -
                log2e - std::log2(1.0 - std::exp(-(double)t));
  b.log2_indicator = log2_g0 + lz - (double)b.dim;
  b.log2_mh = 1.0 + lz - (double)b.dim;
  if (spec.kind == FamilyKind::CyclotomicQuaternion) {
    long nk = 8 * euler_phi(spec.m);
    b.log2_cyclo_quat = std::log2(24.0) + std::log2((double)spec.m) - (double)nk;
  } else {
    b.log2_cyclo_quat = b.log2_indicator;
  }
  return b;
}

}  // namespace divlat
