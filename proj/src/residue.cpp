#include "divlat/residue.hpp"

#include <numeric>
#include <random>
#include <stdexcept>

namespace divlat {

SplitPrime find_split_prime(const FamilySpec& spec, long min_bound, long cap) {
  long start = std::max<long>(min_bound, 3);
  for (long p = start; p < cap; ++p) {
    if (split_criterion(spec, p)) {
      SplitPrime sp;
      sp.p = p;
      sp.residue_card = p;
      sp.family_tag = spec.name();
      return sp;
    }
  }
  throw std::runtime_error("find_split_prime: search cap exhausted");
}

namespace {

// Order-m element of F_p^x (a root of the m-th cyclotomic polynomial mod p,
// valid for p = 1 mod m).
long root_of_unity_mod(long m, long p) {
  Fp f(p);
  if ((p - 1) % m != 0) throw std::invalid_argument("p != 1 mod m");
  for (long g = 2; g < p; ++g) {
    long cand = f.pow(g, (p - 1) / m);
    if (cand == 1) continue;
    // order of cand divides m; must be exactly m
    bool exact = true;
    for (long d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      if (f.pow(cand, d) == 1) { exact = false; break; }
    }
    if (exact) return cand;
  }
  throw std::runtime_error("no root of unity found");
}

// 2x2 images of the quaternion units i, j over F_p: phi(i) = [[0,1],[-1,0]],
// phi(j) = [[a,b],[b,-a]] with a^2 + b^2 = -1 mod p.
void quaternion_images(long p, FpMat& mi, FpMat& mj, FpMat& mw) {
  Fp f(p);
  long a = -1, b = -1;
  for (long x = 0; x < p && a < 0; ++x) {
    long need = f.sub(p - 1, f.mul(x, x));  // -1 - x^2
    for (long y = 0; y < p; ++y) {
      if (f.mul(y, y) == need) {
        a = x;
        b = y;
        break;
      }
    }
  }
  if (a < 0) throw std::runtime_error("no solution of a^2+b^2=-1 mod p");
  mi = FpMat(2, 2, p);
  mi.at(0, 1) = 1;
  mi.at(1, 0) = p - 1;
  mj = FpMat(2, 2, p);
  mj.at(0, 0) = a;
  mj.at(0, 1) = b;
  mj.at(1, 0) = b;
  mj.at(1, 1) = f.sub(0, a);
  FpMat mk = fp_mul(mi, mj);
  long inv2 = f.inv(2);
  mw = FpMat(2, 2, p);
  FpMat one = FpMat::identity(2, p);
  FpMat sum = fp_add(fp_add(one, mi), fp_add(mj, mk));
  mw = fp_scale(sum, inv2);
}

void certify_map(const Family& fam, SplittingMap& map) {
  const OrderSpec& ord = fam.order;
  const int N = ord.dim_total;
  const int n = map.n;
  Fp f(map.p);
  // phi(1) = I
  {
    FpMat img(n, n, map.p);
    for (int i = 0; i < N; ++i)
      if (ord.unity[i] != 0)
        img = fp_add(img, fp_scale(map.images[i], ord.unity[i].get_si()));
    if (!(img == FpMat::identity(n, map.p)))
      throw std::runtime_error("reduction: phi(1) != I");
  }
  // homomorphism on all basis pairs
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      FpMat lhs = fp_mul(map.images[i], map.images[j]);
      FpMat rhs(n, n, map.p);
      const auto& row = ord.structure_constants[i][j];
      for (int k = 0; k < N; ++k)
        if (row[k] != 0) rhs = fp_add(rhs, fp_scale(map.images[k], row[k]));
      if (!(lhs == rhs)) throw std::runtime_error("reduction: not a homomorphism");
    }
  // surjectivity: images span M_n(F_p)
  FpMat span(N, n * n, map.p);
  for (int i = 0; i < N; ++i)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) span.at(i, r * n + c) = map.images[i].at(r, c);
  if (fp_rank(span) != n * n) throw std::runtime_error("reduction: not surjective");
}

}  // namespace

SplittingMap build_reduction(const Family& fam, const SplitPrime& prime) {
  if (!split_criterion(fam.spec, prime.p))
    throw std::invalid_argument("prime does not satisfy the family split criterion");
  const long p = prime.p;
  SplittingMap map;
  map.p = p;
  map.n = fam.info.n;
  const int N = fam.order.dim_total;
  map.images.assign(N, FpMat(map.n, map.n, p));
  Fp f(p);

  switch (fam.spec.kind) {
    case FamilyKind::HurwitzQuaternion:
    case FamilyKind::HurwitzRank: {
      FpMat mi, mj, mw;
      quaternion_images(p, mi, mj, mw);
      map.images[0] = FpMat::identity(2, p);
      map.images[1] = mi;
      map.images[2] = mj;
      map.images[3] = mw;
      break;
    }
    case FamilyKind::Cyclotomic: {
      long r = root_of_unity_mod(fam.spec.m, p);
      map.center_root = r;
      long pw = 1;
      for (int a = 0; a < N; ++a) {
        map.images[a] = FpMat(1, 1, p);
        map.images[a].at(0, 0) = pw;
        pw = f.mul(pw, r);
      }
      break;
    }
    case FamilyKind::CyclotomicQuaternion: {
      long r = root_of_unity_mod(fam.spec.m, p);
      map.center_root = r;
      FpMat mi, mj, mw;
      quaternion_images(p, mi, mj, mw);
      FpMat hur[4] = {FpMat::identity(2, p), mi, mj, mw};
      long deg = euler_phi(fam.spec.m);
      long pw = 1;
      for (long a = 0; a < deg; ++a) {
        for (int b = 0; b < 4; ++b) map.images[a * 4 + b] = fp_scale(hur[b], pw);
        pw = f.mul(pw, r);
      }
      break;
    }
    case FamilyKind::DihedralQuaternion: {
      // u -> diag(r, r^-1), j -> [[0,1],[-1,0]], valid for p = 1 mod m
      long r = root_of_unity_mod(fam.spec.m, p);
      map.center_root = r;
      long deg = euler_phi(fam.spec.m);
      FpMat mj(2, 2, p);
      mj.at(0, 1) = 1;
      mj.at(1, 0) = p - 1;
      long pw = 1, pwinv = 1, rinv = f.inv(r);
      for (long a = 0; a < deg; ++a) {
        FpMat ua(2, 2, p);
        ua.at(0, 0) = pw;
        ua.at(1, 1) = pwinv;
        map.images[a] = ua;
        map.images[deg + a] = fp_mul(ua, mj);
        pw = f.mul(pw, r);
        pwinv = f.mul(pwinv, rinv);
      }
      break;
    }
  }
  certify_map(fam, map);
  return map;
}

FpMat reduce(const SplittingMap& map, const Element& x) {
  if (!x.is_integral()) throw std::invalid_argument("reduce: non-integral coordinates");
  const int n = map.n;
  Fp f(map.p);
  FpMat img(n, n, map.p);
  for (int i = 0; i < map.dim(); ++i) {
    Int c = x.coords[i].get_num() % map.p;
    long cl = f.norm(c.get_si());
    if (cl != 0) img = fp_add(img, fp_scale(map.images[i], cl));
  }
  return img;
}

FpMat reduce_coords(const SplittingMap& map, const std::vector<Int>& coords) {
  const int n = map.n;
  Fp f(map.p);
  FpMat img(n, n, map.p);
  for (int i = 0; i < map.dim(); ++i) {
    Int c = coords[i] % map.p;
    long cl = f.norm(c.get_si());
    if (cl != 0) img = fp_add(img, fp_scale(map.images[i], cl));
  }
  return img;
}

DetCompatReport det_compat_audit(const Family& fam, const SplittingMap& map,
                                 long samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-20, 20);
  const int N = fam.order.dim_total;
  const int n = fam.info.n;
  Fp f(map.p);
  DetCompatReport rep;
  rep.samples = samples;
  for (long s = 0; s < samples; ++s) {
    Element x;
    x.coords.reserve(N);
    for (int i = 0; i < N; ++i) x.coords.emplace_back(dist(rng));
    long lhs = fp_det(reduce(map, x));

    // right side of the diagram: nrd_{A/K}(x), a center element, pushed
    // through the same split factor; its image must be scalar
    Element y;
    if (n == 1) {
      y = x;
    } else {
      const NrdSpec& spec = *fam.order.nrd;
      Element xc = zero_element(fam.order);
      for (int j = 0; j < N; ++j) {
        if (x.coords[j] == 0) continue;
        for (int i = 0; i < N; ++i)
          if (spec.quat_conj[i][j] != 0) xc.coords[i] += x.coords[j] * spec.quat_conj[i][j];
      }
      y = mul(fam.order, x, xc);
    }
    FpMat ym = reduce(map, y);
    bool scalar = true;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (ym.at(r, c) != (r == c ? ym.at(0, 0) : 0)) scalar = false;
    if (!scalar || lhs != ym.at(0, 0)) {
      ++rep.violations;
      continue;
    }

    // for commutative centers the full norm factors through all conjugate
    // reductions: N_{K/Q}(x) = prod_j (x at root r^j) mod p
    if (n == 1 && map.center_root != 0) {
      long prod = 1;
      long mm = fam.spec.m;
      for (long j = 1; j < mm; ++j) {
        if (std::gcd(j, mm) != 1) continue;
        long rj = f.pow(map.center_root, j);
        long val = 0, pw = 1;
        for (int a = 0; a < N; ++a) {
          Int c = x.coords[a].get_num() % map.p;
          val = f.add(val, f.mul(f.norm(c.get_si()), pw));
          pw = f.mul(pw, rj);
        }
        prod = f.mul(prod, val);
      }
      Int nq = norm_Q(fam.order, x).get_num() % map.p;
      if (prod != f.norm(nq.get_si())) ++rep.violations;
    }
  }
  return rep;
}

Int gl_order(int n, long p) {
  Int pn = int_pow(Int(p), n);
  Int res(1);
  Int pi(1);
  for (int i = 0; i < n; ++i) {
    res *= (pn - pi);
    pi *= p;
  }
  return res;
}

}  // namespace divlat
