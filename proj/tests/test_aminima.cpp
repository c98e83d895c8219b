#include <doctest.h>

#include <cmath>
#include <random>

#include "divlat/aminima.hpp"

using namespace divlat;

namespace {

Family hurwitz() { return build_family(FamilySpec::parse("hurwitz", 0, 2)); }

AVector random_avector(const OrderSpec& ord, int t, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> flat(ord.dim_total * t);
  for (auto& v : flat) v = dist(rng);
  return avector_from_coords(ord, t, flat);
}

double max_abs_diff(const RealElement& x, const RealElement& y) {
  double m = 0.0;
  for (size_t i = 0; i < x.coords.size(); ++i)
    m = std::max(m, std::abs(x.coords[i] - y.coords[i]));
  return m;
}

}  // namespace

TEST_SUITE("aminima") {

TEST_CASE("a_inner axioms") {
  Family fam = hurwitz();
  const OrderSpec& ord = fam.order;
  RealElement one = real_unity(ord);
  std::mt19937_64 rng(71);

  // unit coordinate vector: <e1, e1> = 1_A for a = 1
  AVector e1 = avector_from_coords(ord, 2, {1, 0, 0, 0, 0, 0, 0, 0});
  CHECK(max_abs_diff(a_inner(ord, e1, e1, one), one) < 1e-14);

  for (int rep = 0; rep < 200; ++rep) {
    AVector x = random_avector(ord, 2, rng), y = random_avector(ord, 2, rng);
    // <x,y>^* = <y,x>
    RealElement lhs = real_involute(ord, a_inner(ord, x, y, one));
    RealElement rhs = a_inner(ord, y, x, one);
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    // T(<x,x>_A) = q_a(x) = sum T(x_i^* a x_i); a = 1 central here
    double q = 0.0;
    for (const auto& part : x.parts)
      q += real_trace(ord, real_mul(ord, real_involute(ord, part), part));
    CHECK(real_trace(ord, a_inner(ord, x, x, one)) == doctest::Approx(q).epsilon(1e-12));
    // left A-linearity: <alpha x, y> = alpha <x, y>
    RealElement alpha;
    alpha.coords = {0.5, -1.25, 2.0, 0.75};
    AVector ax = x;
    for (auto& part : ax.parts) part = real_mul(ord, alpha, part);
    CHECK(max_abs_diff(a_inner(ord, ax, y, one),
                       real_mul(ord, alpha, a_inner(ord, x, y, one))) < 1e-11);
  }
}

TEST_CASE("projection") {
  Family fam = hurwitz();
  const OrderSpec& ord = fam.order;
  RealElement one = real_unity(ord);
  std::mt19937_64 rng(73);

  // orthogonal coordinate vectors project to zero
  AVector u = avector_from_coords(ord, 2, {1, 0, 0, 0, 0, 0, 0, 0});
  AVector v = avector_from_coords(ord, 2, {0, 0, 0, 0, 1, 0, 0, 0});
  AVector pr = project(ord, u, v, one);
  for (const auto& part : pr.parts)
    for (double c : part.coords) CHECK(std::abs(c) < 1e-13);

  for (int rep = 0; rep < 200; ++rep) {
    AVector x = random_avector(ord, 2, rng), y = random_avector(ord, 2, rng);
    // v = alpha u is reproduced exactly
    RealElement alpha;
    alpha.coords = {1.5, 0.5, -0.25, 1.0};
    AVector ax = x;
    for (auto& part : ax.parts) part = real_mul(ord, alpha, part);
    AVector pr2 = project(ord, x, ax, one);
    double diff = 0.0;
    for (size_t i = 0; i < pr2.parts.size(); ++i)
      diff = std::max(diff, max_abs_diff(pr2.parts[i], ax.parts[i]));
    CHECK(diff < 1e-10);
    // residual orthogonality <v - pr(u,v), u> = 0
    AVector res = y;
    AVector p = project(ord, x, y, one);
    for (size_t i = 0; i < res.parts.size(); ++i)
      for (size_t c = 0; c < res.parts[i].coords.size(); ++c)
        res.parts[i].coords[c] -= p.parts[i].coords[c];
    RealElement inner = a_inner(ord, res, x, one);
    for (double c : inner.coords) CHECK(std::abs(c) < 1e-10);
    // pr(0, v) = 0
    AVector zero = avector_from_coords(ord, 2, std::vector<double>(8, 0.0));
    AVector pz = project(ord, zero, y, one);
    for (const auto& part : pz.parts)
      for (double c : part.coords) CHECK(c == 0.0);
  }
}

TEST_CASE("gram-schmidt orthonormalizes") {
  Family fam = hurwitz();
  const OrderSpec& ord = fam.order;
  RealElement one = real_unity(ord);
  RealElement unity = real_unity(ord);

  // the standard basis is already orthonormal
  std::vector<AVector> std_basis = {
      avector_from_coords(ord, 2, {1, 0, 0, 0, 0, 0, 0, 0}),
      avector_from_coords(ord, 2, {0, 0, 0, 0, 1, 0, 0, 0})};
  std::vector<AVector> xs = a_gram_schmidt(ord, std_basis, one);
  for (int i = 0; i < 2; ++i)
    for (size_t c = 0; c < 8; ++c)
      CHECK(std::abs(avector_flatten(xs[i])[c] - avector_flatten(std_basis[i])[c]) < 1e-12);

  // (1, 0), (1, 1)
  std::vector<AVector> vs = {avector_from_coords(ord, 2, {1, 0, 0, 0, 0, 0, 0, 0}),
                             avector_from_coords(ord, 2, {1, 0, 0, 0, 1, 0, 0, 0})};
  std::vector<AVector> ys = a_gram_schmidt(ord, vs, one);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      RealElement inner = a_inner(ord, ys[i], ys[j], one);
      RealElement want = i == j ? unity : RealElement{std::vector<double>(4, 0.0)};
      CHECK(max_abs_diff(inner, want) < 1e-10);
    }

  // 1000 random free pairs: delta_ij within 1e-9, span preserved
  std::mt19937_64 rng(79);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<AVector> rs = {random_avector(ord, 2, rng), random_avector(ord, 2, rng)};
    std::vector<AVector> os;
    try {
      os = a_gram_schmidt(ord, rs, one);
    } catch (const std::domain_error&) {
      continue;  // random pair happened to be (near) dependent
    }
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        RealElement inner = a_inner(ord, os[i], os[j], one);
        RealElement want = i == j ? unity : RealElement{std::vector<double>(4, 0.0)};
        worst = std::max(worst, max_abs_diff(inner, want));
      }
    CHECK(worst < 1e-9);
    // reconstruction: v_j lies in the left span of x_1..x_j
    for (int j = 0; j < 2; ++j) {
      AVector recon = avector_from_coords(ord, 2, std::vector<double>(8, 0.0));
      for (int i = 0; i <= j; ++i) {
        RealElement coef = a_inner(ord, rs[j], os[i], one);
        AVector term = os[i];
        for (auto& part : term.parts) part = real_mul(ord, coef, part);
        for (int s = 0; s < 2; ++s)
          for (int c = 0; c < 4; ++c)
            recon.parts[s].coords[c] += term.parts[s].coords[c];
      }
      double resid = 0.0;
      for (int s = 0; s < 2; ++s)
        for (int c = 0; c < 4; ++c)
          resid = std::max(resid,
                           std::abs(recon.parts[s].coords[c] - rs[j].parts[s].coords[c]));
      CHECK(resid < 1e-9);
    }
  }
}

TEST_CASE("successive minima on block lattices") {
  Family fam = hurwitz();
  PositiveElement one = make_positive(fam.order, unity_element(fam.order));
  LatticeInstance o2 = order_lattice(fam, one, 2);
  MinimaProfile prof = successive_minima(fam.order, o2);
  CHECK(prof.minima_sq[0] == 4);
  CHECK(prof.minima_sq[1] == 4);

  // O + cO: min1 = 2, min2 = 2c
  for (long c : {2L, 3L, 4L}) {
    LatticeInstance inst = order_lattice(fam, one, 2);
    for (int i = 4; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        inst.basis[i][j] *= c;
        inst.gram[i][j] *= c;
        inst.gram[j][i] *= c;  // scales row and column; diagonal gets c^2
      }
    inst.gram_det = rat_det(inst.gram);
    MinimaProfile p2 = successive_minima(fam.order, inst);
    CHECK(p2.minima_sq[0] == 4);
    CHECK(p2.minima_sq[1] == 4 * c * c);
    // min_1 is the shortest vector
    SvpResult sv = svp(inst);
    CHECK(p2.minima_sq[0] == sv.min_sq);
  }
}

TEST_CASE("witnesses are A-linearly independent") {
  Family fam = hurwitz();
  PositiveElement a = build_invariant_form(fam.order, fam.g0);
  SplittingMap map = build_reduction(fam, find_split_prime(fam.spec, 3));
  std::mt19937_64 rng(83);
  for (int rep = 0; rep < 3; ++rep) {
    Code code = sample_code(CodeParams{2, 2, 3, 3}, rng);
    LatticeInstance inst = lift_code(fam, a, map, code);
    MinimaProfile prof = successive_minima(fam.order, inst);
    CHECK(prof.minima_sq[0] <= prof.minima_sq[1]);
    // the two witnesses generate an 8-dimensional real span under left A-action
    AVector w1 = avector_from_int_coords(fam.order, 2, prof.witnesses[0]);
    AVector w2 = avector_from_int_coords(fam.order, 2, prof.witnesses[1]);
    RealElement af = real_from_element(a.value);
    CHECK_NOTHROW(a_gram_schmidt(fam.order, {w1, w2}, af));
  }
}

TEST_CASE("balance on an uneven block lattice") {
  Family fam = hurwitz();
  PositiveElement one = make_positive(fam.order, unity_element(fam.order));
  LatticeInstance inst = order_lattice(fam, one, 2);
  for (int i = 4; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      inst.basis[i][j] *= 4;
      inst.gram[i][j] *= 4;
      inst.gram[j][i] *= 4;
    }
  inst.gram_det = rat_det(inst.gram);
  MinimaProfile prof = successive_minima(fam.order, inst);
  CHECK(prof.minima_sq[0] == 4);
  CHECK(prof.minima_sq[1] == 64);
  BalanceResult bal = balance(fam.order, real_unity(fam.order), inst, prof);
  // lambda_1 reaches the geometric mean (2 * 8)^{1/2} = 4
  CHECK(bal.lambda1 >= 4.0 * (1 - 1e-9));
  CHECK(bal.covolume_out == doctest::Approx(bal.covolume_in).epsilon(1e-9));

  // an already balanced lattice keeps its shortest vector
  LatticeInstance o2 = order_lattice(fam, one, 2);
  MinimaProfile p0 = successive_minima(fam.order, o2);
  BalanceResult b0 = balance(fam.order, real_unity(fam.order), o2, p0);
  CHECK(b0.lambda1 == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(b0.covolume_out == doctest::Approx(b0.covolume_in).epsilon(1e-9));
}

TEST_CASE("norm formula for orthonormal systems") {
  Family fam = hurwitz();
  const OrderSpec& ord = fam.order;
  RealElement one = real_unity(ord);
  std::mt19937_64 rng(89);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<AVector> rs = {random_avector(ord, 2, rng), random_avector(ord, 2, rng)};
    std::vector<AVector> xs;
    try {
      xs = a_gram_schmidt(ord, rs, one);
    } catch (const std::domain_error&) {
      continue;
    }
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    RealElement a1{{dist(rng), dist(rng), dist(rng), dist(rng)}};
    RealElement a2{{dist(rng), dist(rng), dist(rng), dist(rng)}};
    AVector v = avector_from_coords(ord, 2, std::vector<double>(8, 0.0));
    AVector t1 = xs[0], t2 = xs[1];
    for (auto& part : t1.parts) part = real_mul(ord, a1, part);
    for (auto& part : t2.parts) part = real_mul(ord, a2, part);
    for (int s = 0; s < 2; ++s)
      for (int c = 0; c < 4; ++c)
        v.parts[s].coords[c] = t1.parts[s].coords[c] + t2.parts[s].coords[c];
    double lhs = real_trace(ord, a_inner(ord, v, v, one));
    double rhs = real_trace(ord, real_mul(ord, real_mul(ord, real_involute(ord, a1), one), a1)) +
                 real_trace(ord, real_mul(ord, real_mul(ord, real_involute(ord, a2), one), a2));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

}  // TEST_SUITE
