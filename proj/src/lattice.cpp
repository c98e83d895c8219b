#include "divlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "divlat/zeta.hpp"

namespace divlat {

namespace {

RatMat block_diag_gram(const RatMat& g, int t) {
  const int N = (int)g.size();
  RatMat big(N * t, RatVec(N * t, Rat(0)));
  for (int s = 0; s < t; ++s)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) big[s * N + i][s * N + j] = g[i][j];
  return big;
}

RatMat conjugate_gram(const IntMat& basis, const RatMat& g) {
  const int d = (int)basis.size();
  RatMat tmp(d, RatVec(d, Rat(0)));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      if (basis[i][k] == 0) continue;
      Rat c(basis[i][k]);
      for (int j = 0; j < d; ++j) tmp[i][j] += c * g[k][j];
    }
  RatMat out(d, RatVec(d, Rat(0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Rat v(0);
      for (int k = 0; k < d; ++k)
        if (basis[j][k] != 0) v += tmp[i][k] * basis[j][k];
      out[i][j] = v;
    }
  return out;
}

// Clears denominators: returns integer gram and the scale s with G_int = s*G.
std::pair<IntMat, Int> integral_gram(const RatMat& g) {
  Int s(1);
  for (const auto& row : g)
    for (const auto& v : row)
      s = lcm(s, v.get_den());
  const int d = (int)g.size();
  IntMat out(d, IntVec(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Rat v = g[i][j] * s;
      out[i][j] = v.get_num();
    }
  return {out, s};
}

RatMat to_rat(const IntMat& m) {
  RatMat out(m.size(), RatVec(m[0].size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) out[i][j] = Rat(m[i][j]);
  return out;
}

IntVec apply_transform(const IntVec& coeffs, const IntMat& u) {
  const int d = (int)u.size();
  IntVec out(u[0].size(), Int(0));
  for (int i = 0; i < d; ++i) {
    if (coeffs[i] == 0) continue;
    for (size_t j = 0; j < u[i].size(); ++j) out[j] += coeffs[i] * u[i][j];
  }
  return out;
}

bool is_primitive(const IntVec& v) {
  Int g(0);
  for (const auto& x : v) g = gcd(g, x);
  return g == 1;
}

}  // namespace

LatticeInstance order_lattice(const Family& fam, const PositiveElement& a, int t) {
  LatticeInstance inst;
  const int N = fam.order.dim_total;
  inst.dim = N * t;
  inst.t = t;
  inst.basis.assign(inst.dim, IntVec(inst.dim, Int(0)));
  for (int i = 0; i < inst.dim; ++i) inst.basis[i][i] = 1;
  inst.order_gram = block_diag_gram(a.gram, t);
  inst.gram = inst.order_gram;
  inst.gram_det = rat_det(inst.gram);
  inst.provenance.family = fam.spec.name();
  inst.provenance.form = "q_a";
  return inst;
}

LatticeInstance lift_code(const Family& fam, const PositiveElement& a,
                          const SplittingMap& map, const Code& code) {
  const int n = fam.info.n;
  if (code.params.n != n || code.params.p != map.p)
    throw std::invalid_argument("lift_code: map and code parameters disagree");
  const int t = code.params.t;
  const int N = fam.order.dim_total;
  const int d = N * t;
  const long p = map.p;
  const int res_dim = n * n * t;  // F_p-dimension of the residue space
  Fp f(p);

  // rho: Z^d -> F_p^{res_dim}, basis (block s, order index b) -> flattened phi(e_b)
  FpMat rho(res_dim, d, p);
  for (int s = 0; s < t; ++s)
    for (int b = 0; b < N; ++b)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          rho.at(s * n * n + r * n + c, s * N + b) = map.images[b].at(r, c);

  // F_p-basis of the residue subspace cut out by the code: for each RREF row w
  // and each matrix row position r, the tuple with row r equal to w.
  std::vector<std::vector<int64_t>> sub_basis;
  for (int row = 0; row < code.params.k; ++row)
    for (int r = 0; r < n; ++r) {
      std::vector<int64_t> vec(res_dim, 0);
      for (int s = 0; s < t; ++s)
        for (int c = 0; c < n; ++c)
          vec[s * n * n + r * n + c] = code.row_space.at(row, s * n + c);
      sub_basis.push_back(std::move(vec));
    }

  // particular preimages: solve rho * x = target over F_p via RREF once
  FpMat solve(res_dim, d + (int)sub_basis.size(), p);
  for (int i = 0; i < res_dim; ++i)
    for (int j = 0; j < d; ++j) solve.at(i, j) = rho.at(i, j);
  for (size_t v = 0; v < sub_basis.size(); ++v)
    for (int i = 0; i < res_dim; ++i) solve.at(i, d + (int)v) = sub_basis[v][i];
  std::vector<int> pivots;
  {
    // eliminate on the first d columns only
    int rank = 0;
    for (int col = 0; col < d && rank < res_dim; ++col) {
      int piv = -1;
      for (int r = rank; r < res_dim; ++r)
        if (solve.at(r, col) != 0) { piv = r; break; }
      if (piv < 0) continue;
      for (int j = 0; j < solve.cols; ++j) std::swap(solve.at(piv, j), solve.at(rank, j));
      int64_t sc = f.inv(solve.at(rank, col));
      for (int j = 0; j < solve.cols; ++j) solve.at(rank, j) = f.mul(solve.at(rank, j), sc);
      for (int r = 0; r < res_dim; ++r) {
        if (r == rank) continue;
        int64_t c = solve.at(r, col);
        if (!c) continue;
        for (int j = 0; j < solve.cols; ++j)
          solve.at(r, j) = f.sub(solve.at(r, j), f.mul(c, solve.at(rank, j)));
      }
      pivots.push_back(col);
      ++rank;
    }
    if (rank != res_dim) throw std::runtime_error("lift_code: reduction not surjective");
  }

  IntMat gens;
  for (int i = 0; i < d; ++i) {
    IntVec row(d, Int(0));
    row[i] = p;
    gens.push_back(std::move(row));
  }
  // lifts of a basis of ker(rho mod p): one free column each
  {
    std::vector<bool> is_pivot(d, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int fc = 0; fc < d; ++fc) {
      if (is_pivot[fc]) continue;
      IntVec row(d, Int(0));
      row[fc] = 1;
      for (int r = 0; r < res_dim; ++r) {
        int64_t c = solve.at(r, fc);
        if (c) row[pivots[r]] = p - c;
      }
      gens.push_back(std::move(row));
    }
  }
  // particular preimages of the residue subspace basis
  for (size_t v = 0; v < sub_basis.size(); ++v) {
    IntVec row(d, Int(0));
    for (int r = 0; r < res_dim; ++r) {
      int64_t c = solve.at(r, d + (int)v);
      if (c) row[pivots[r]] = c;
    }
    gens.push_back(std::move(row));
  }

  LatticeInstance inst;
  inst.dim = d;
  inst.t = t;
  inst.basis = hnf(gens, d);
  inst.order_gram = block_diag_gram(a.gram, t);
  inst.gram = conjugate_gram(inst.basis, inst.order_gram);
  inst.gram_det = rat_det(inst.gram);
  inst.provenance.family = fam.spec.name();
  inst.provenance.p = p;
  inst.provenance.form = "q_a";
  {
    std::string id = std::to_string(code.params.k) + "of" + std::to_string(n * t) + ":";
    for (int r = 0; r < code.row_space.rows; ++r)
      for (int c = 0; c < code.row_space.cols; ++c)
        id += std::to_string(code.row_space.at(r, c)) + (c + 1 == code.row_space.cols ? ";" : ",");
    inst.provenance.code_id = id;
  }

  // index identity: det(basis) = p^{n^2 t - n k}
  Int det(1);
  for (int i = 0; i < d; ++i) det *= inst.basis[i][i];
  Int expect = int_pow(Int(p), (unsigned long)(n * n * t - n * code.params.k));
  if (det != expect) throw std::logic_error("lift_code: index identity violated");
  return inst;
}

SvpResult svp(const LatticeInstance& inst, int dim_cap) {
  if (inst.dim > dim_cap) throw std::invalid_argument("svp: dimension cap exceeded");
  auto [gi, scale] = integral_gram(inst.gram);
  LllResult red = lll_reduce(gi);
  RatMat g = to_rat(red.gram);

  Rat best(0);
  for (int i = 0; i < inst.dim; ++i)
    if (best == 0 || g[i][i] < best) best = g[i][i];

  // pass 1: shrink to the true minimum
  enumerate_short_vectors(g, best, [&](const IntVec&, const Rat& norm) {
    if (norm < best && norm > 0) best = norm;
    return true;
  });
  // pass 2: collect everything at the minimum
  SvpResult res;
  res.min_sq = best / scale;
  enumerate_short_vectors(g, best, [&](const IntVec& x, const Rat& norm) {
    if (norm == best) {
      res.vectors.push_back(apply_transform(x, red.transform));
      res.kissing += 2;
    }
    return true;
  });
  return res;
}

long count_primitive_in_ball(const LatticeInstance& inst, const Rat& bound,
                             bool early_exit) {
  auto [gi, scale] = integral_gram(inst.gram);
  LllResult red = lll_reduce(gi);
  RatMat g = to_rat(red.gram);
  Rat scaled_bound = bound * scale;
  long count = 0;
  enumerate_short_vectors(g, scaled_bound, [&](const IntVec& x, const Rat&) {
    if (is_primitive(x)) {
      count += 2;
      if (early_exit) return false;
    }
    return true;
  });
  return count;
}

DensityReport packing_density(const LatticeInstance& inst, const Int& g0_order) {
  SvpResult s = svp(inst);
  DensityReport rep;
  rep.dimension = inst.dim;
  rep.lambda1_sq = s.min_sq;
  rep.covolume_sq = inst.gram_det;
  // density = V_d (lambda1/2)^d / covolume, d even so (lambda1^2/4)^{d/2} is exact
  Rat radius_pow = rat_pow(s.min_sq / 4, inst.dim / 2);
  rep.density = unit_ball_volume(inst.dim) * to_double(radius_pow) /
                std::sqrt(to_double(rep.covolume_sq));
  double z = zeta(inst.dim);
  rep.bound_mh = 2.0 * z * std::pow(2.0, -(double)inst.dim);
  rep.bound_g0 = to_double(Rat(g0_order)) * z * std::pow(2.0, -(double)inst.dim);
  rep.provenance = inst.provenance;
  return rep;
}

double beta_scale(long p, int n, int m, int t, int k) {
  double expo = double(n * k - n * n * t) / double(n * n * m * t);
  return std::pow((double)p, expo);
}

double bad_point_bound(const Family& fam, const PositiveElement& a, long p) {
  const int NQ = fam.order.dim_total;  // [A:Q]
  double na = to_double(norm_Q(fam.order, a.value));
  return std::sqrt((double)NQ) * std::pow(na, 1.0 / (2.0 * NQ)) *
         std::pow((double)p, 1.0 / double(fam.info.n * fam.order.m));
}

BadPointAudit audit_bad_points(const Family& fam, const PositiveElement& a,
                               const SplittingMap& map, const Rat& radius_sq) {
  LatticeInstance inst = order_lattice(fam, a, 1);
  const int NQ = fam.order.dim_total;
  Rat na = norm_Q(fam.order, a.value);
  long nm = fam.info.n * fam.order.m;

  BadPointAudit audit;
  auto [gi, scale] = integral_gram(inst.gram);
  LllResult red = lll_reduce(gi);
  RatMat g = to_rat(red.gram);
  enumerate_short_vectors(g, radius_sq * scale, [&](const IntVec& x, const Rat& norm_scaled) {
    IntVec coords = apply_transform(x, red.transform);
    ++audit.checked;
    FpMat img = reduce_coords(map, coords);
    if (fp_det(img) != 0) return true;
    ++audit.singular;
    Rat norm = norm_scaled / scale;
    // need norm >= NQ * na^{1/NQ} * p^{2/(n m)}; compare via
    // (norm / NQ)^{NQ * nm} >= na^{nm} * p^{2 NQ}
    Rat lhs = rat_pow(norm / NQ, (unsigned long)(NQ * nm));
    Rat rhs = rat_pow(na, (unsigned long)nm) * rat_pow(Rat(map.p), (unsigned long)(2 * NQ));
    if (lhs < rhs) ++audit.violations;
    if (lhs == rhs) audit.attained = true;
    return true;
  });
  return audit;
}

OrderBounds order_bounds_with_disc(const Family& fam, const PositiveElement& a,
                                   const Int& disc) {
  const int NQ = fam.order.dim_total;
  double na = to_double(norm_Q(fam.order, a.value));
  double d = to_double(Rat(disc));
  OrderBounds b;
  b.lambda1_lb = std::sqrt((double)NQ) * std::pow(na, 1.0 / (2.0 * NQ));
  b.hermite_lb = (double)NQ / std::pow(d, 1.0 / NQ);
  b.covering_ub = std::pow(d, 1.0 / NQ) *
                  (std::sqrt((double)NQ) / (2.0 * M_PI) + 3.0 / M_PI) *
                  std::pow(na, -1.0 / (2.0 * NQ));
  return b;
}

OrderBounds order_bounds(const Family& fam, const PositiveElement& a) {
  return order_bounds_with_disc(fam, a, fam.info.reduced_discriminant);
}

namespace {

// Double-precision closest-vector distance^2 via Babai start plus full
// zigzag enumeration; adequate far from ties.
struct DoubleGso {
  std::vector<std::vector<double>> mu;
  std::vector<double> bstar;
};

DoubleGso double_gso(const RatMat& gram) {
  const int n = (int)gram.size();
  DoubleGso g;
  g.mu.assign(n, std::vector<double>(n, 0.0));
  g.bstar.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      double v = to_double(gram[i][j]);
      for (int l = 0; l < j; ++l) v -= g.mu[j][l] * g.mu[i][l] * g.bstar[l];
      g.mu[i][j] = v / g.bstar[j];
    }
    double v = to_double(gram[i][i]);
    for (int l = 0; l < i; ++l) v -= g.mu[i][l] * g.mu[i][l] * g.bstar[l];
    g.bstar[i] = v;
  }
  return g;
}

struct CvpState {
  const DoubleGso& gso;
  int n;
  const std::vector<double>& target;  // GSO coordinates of the target
  double best;
  std::vector<double> x;

  void descend(int level, double used) {
    if (level < 0) {
      if (used < best) best = used;
      return;
    }
    double center = target[level];
    for (int j = level + 1; j < n; ++j) center -= gso.mu[j][level] * x[j];
    double b = gso.bstar[level];
    double v0 = std::round(center);
    for (int dir = 0; dir < 2; ++dir) {
      double v = dir == 0 ? v0 : v0 - 1.0;
      double step = dir == 0 ? 1.0 : -1.0;
      while (true) {
        double dv = v - center;
        double term = used + dv * dv * b;
        if (term >= best) break;
        x[level] = v;
        descend(level - 1, term);
        v += step;
      }
    }
    x[level] = 0;
  }
};

double cvp_distance_sq(const RatMat& gram, const DoubleGso& gso,
                       const std::vector<double>& t_coeffs) {
  const int n = (int)gram.size();
  // convert basis coordinates of the target to GSO coordinates:
  // t = sum c_i b_i, GSO coordinate along b*_level is c_level + sum_{j>level} c_j mu[j][level]
  std::vector<double> tg(n, 0.0);
  for (int level = 0; level < n; ++level) {
    double v = t_coeffs[level];
    for (int j = level + 1; j < n; ++j) v += t_coeffs[j] * gso.mu[j][level];
    tg[level] = v;
  }
  // Babai estimate as the initial radius
  std::vector<double> xb(n, 0.0);
  double babai = 0.0;
  for (int level = n - 1; level >= 0; --level) {
    double center = tg[level];
    for (int j = level + 1; j < n; ++j) center -= gso.mu[j][level] * xb[j];
    xb[level] = std::round(center);
    double dv = xb[level] - center;
    babai += dv * dv * gso.bstar[level];
  }
  CvpState st{gso, n, tg, babai * (1.0 + 1e-12) + 1e-12, std::vector<double>(n, 0.0)};
  st.descend(n - 1, 0.0);
  return st.best;
}

}  // namespace

double covering_radius_sample(const LatticeInstance& inst, long samples, uint64_t seed) {
  auto [gi, scale] = integral_gram(inst.gram);
  LllResult red = lll_reduce(gi);
  RatMat g = to_rat(red.gram);
  DoubleGso gso = double_gso(g);
  const int n = inst.dim;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  double best = 0.0;
  std::vector<double> best_t(n, 0.0);
  for (long s = 0; s < samples; ++s) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = unif(rng);
    double d2 = cvp_distance_sq(g, gso, t);
    if (d2 > best) {
      best = d2;
      best_t = t;
    }
  }
  // local refinement: shrinking random perturbations around the best target
  double radius = 0.05;
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int round = 0; round < 6; ++round) {
    for (int trial = 0; trial < 400; ++trial) {
      std::vector<double> t(n);
      for (int i = 0; i < n; ++i) t[i] = best_t[i] + radius * gauss(rng);
      double d2 = cvp_distance_sq(g, gso, t);
      if (d2 > best) {
        best = d2;
        best_t = t;
      }
    }
    radius *= 0.5;
  }
  return std::sqrt(best / to_double(Rat(scale)));
}

}  // namespace divlat
