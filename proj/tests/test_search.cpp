#include <doctest.h>

#include <cmath>
#include <functional>

#include "divlat/search.hpp"

using namespace divlat;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int steps) {
  double h = (b - a) / steps;
  double s = f(a) + f(b);
  for (int i = 1; i < steps; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("test function integrals") {
  TestFunction disc{TestFunction::Kind::Indicator, 1.0, 2, 2};
  CHECK(integral(disc) == doctest::Approx(M_PI).epsilon(1e-12));
  TestFunction tiny{TestFunction::Kind::Indicator, 1e-8, 8, 2};
  CHECK(integral(tiny) < 1e-50);

  // rogers profile vs radial quadrature in d = 4, t = 2
  TestFunction fr{TestFunction::Kind::RogersRadial, 1.7, 4, 2};
  double surface = 2.0 * M_PI * M_PI;  // S_3
  double quad = simpson(
      [&](double rho) { return fr.evaluate(rho) * rho * rho * rho; }, 0.0,
      fr.support_radius(), 200000);
  CHECK(integral(fr) == doctest::Approx(surface * quad).epsilon(1e-8));
  // the profile is continuous at both breakpoints
  double lo = fr.r * std::exp((1.0 - 2.0) / 4.0);
  double hi = fr.support_radius();
  CHECK(fr.evaluate(lo - 1e-9) == doctest::Approx(fr.evaluate(lo + 1e-9)).epsilon(1e-6));
  CHECK(fr.evaluate(hi - 1e-9) == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
}

TEST_CASE("target radius") {
  CHECK(target_radius(RadiusMode::Indicator, 1.0, Int(24), 100.0, 8, 2) == 0.0);
  double vol = 4608.0 * 4608.0;  // Hurwitz O^2 under q_a, a = 24
  double r = target_radius(RadiusMode::Indicator, 0.01, Int(24), vol, 8, 2);
  CHECK(unit_ball_volume(8) * std::pow(r, 8.0) ==
        doctest::Approx(0.99 * 24.0 * zeta(8) * vol).epsilon(1e-10));
  double r2 = target_radius(RadiusMode::Indicator, 0.01, Int(48), vol, 8, 2);
  CHECK(std::pow(r2 / r, 8.0) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("lattice sums over primitive vectors") {
  Family fam = build_family(FamilySpec::parse("hurwitz", 0, 2));
  PositiveElement a = build_invariant_form(fam.order, fam.g0);
  LatticeInstance inst = order_lattice(fam, a, 2);
  // lambda_1^2 = 96 under q_a with a = 24; nothing below it
  TestFunction below{TestFunction::Kind::Indicator, std::sqrt(96.0) * 0.999, 8, 2};
  CHECK(lattice_sum(below, inst, 1.0) == 0.0);
  // just above the minimum: the 48 minimal vectors of O^2, a multiple of 24
  TestFunction at{TestFunction::Kind::Indicator, std::sqrt(96.0) * 1.001, 8, 2};
  double count = lattice_sum(at, inst, 1.0);
  CHECK(count == 48.0);
  CHECK(std::fmod(count, 24.0) == 0.0);
  // growing support never decreases the sum
  TestFunction wider{TestFunction::Kind::Indicator, std::sqrt(96.0) * 1.4, 8, 2};
  CHECK(lattice_sum(wider, inst, 1.0) >= count);
}

TEST_CASE("mc average: exhaustive equals the direct code average") {
  Family fam = build_family(FamilySpec::parse("hurwitz", 0, 2));
  PositiveElement a = build_invariant_form(fam.order, fam.g0);
  SplittingMap map = build_reduction(fam, find_split_prime(fam.spec, 3));
  TestFunction f{TestFunction::Kind::Indicator, 14.0, 8, 2};
  McEstimate est = mc_average(fam, a, map, 2, 3, f, 0, 1, 2);
  CHECK(est.stderr_ == 0.0);
  double beta = beta_scale(3, 2, 1, 2, 3);
  std::vector<Code> codes = enumerate_codes(CodeParams{2, 2, 3, 3});
  CHECK(est.samples == (long)codes.size());
  double direct = 0.0;
  for (const auto& code : codes)
    direct += lattice_sum(f, lift_code(fam, a, map, code), beta);
  direct /= (double)codes.size();
  CHECK(est.mean == doctest::Approx(direct).epsilon(1e-13));
  // target field
  double vol = 4608.0 * 4608.0;
  CHECK(est.target == doctest::Approx(integral(f) / (zeta(8) * vol)).epsilon(1e-10));
}

TEST_CASE("mean value at p = 11 over the fifth cyclotomic field") {
  // exhaustive average of the primitive count with integral f = 5 zeta(8) V:
  // the ball catches the 20 singles of norm 4 and the 40 of norm 6, each in
  // exactly one of the 12 codes, so the average is exactly 60/12 = 5
  Family fam = build_family(FamilySpec::parse("cyclotomic", 5, 2));
  PositiveElement a = build_invariant_form(fam.order, fam.g0);
  SplittingMap map = build_reduction(fam, find_split_prime(fam.spec, 11));
  double vol = std::sqrt(to_double(rat_det(a.gram)));
  vol *= vol;  // Vol(O^2)
  double r = std::pow(5.0 * zeta(8) * vol / unit_ball_volume(8), 1.0 / 8.0);
  TestFunction f{TestFunction::Kind::Indicator, r, 8, 2};
  McEstimate est = mc_average(fam, a, map, 2, 1, f, 0, 1, 2);
  CHECK(est.samples == 12);
  CHECK(est.mean == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(est.target == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("sampled mc average is deterministic per seed and worker count") {
  Family fam = build_family(FamilySpec::parse("hurwitz", 0, 2));
  PositiveElement a = build_invariant_form(fam.order, fam.g0);
  SplittingMap map = build_reduction(fam, find_split_prime(fam.spec, 5));
  TestFunction f{TestFunction::Kind::Indicator, 16.0, 8, 2};
  McEstimate e1 = mc_average(fam, a, map, 2, 3, f, 40, 99, 1);
  McEstimate e2 = mc_average(fam, a, map, 2, 3, f, 40, 99, 3);
  CHECK(e1.mean == e2.mean);
  CHECK(e1.stderr_ == e2.stderr_);
}

TEST_CASE("indicator density search finds a dense lattice at p = 7") {
  Family fam = build_family(FamilySpec::parse("hurwitz", 0, 2));
  SplitPrime p7 = find_split_prime(fam.spec, 7);
  SearchConfig cfg;
  cfg.t = 2;
  cfg.k = 3;
  cfg.epsilon = 0.01;
  cfg.workers = 4;
  SearchResult res = density_search(fam, p7, cfg);
  CHECK(res.codes_tried == 400);  // 7^3 + 7^2 + 7 + 1
  CHECK(res.hit);
  REQUIRE(res.best.has_value());
  CHECK(res.best->density >= 0.99 * 24.0 * zeta(8) / 256.0);
  // the best lift beats the Minkowski-Hlawka bound by the symmetry factor
  CHECK(res.best->density > res.best->bound_mh);
  CHECK(res.target_density == doctest::Approx(0.0932157).epsilon(1e-4));
}

TEST_CASE("search rejects out-of-range k") {
  Family fam = build_family(FamilySpec::parse("hurwitz", 0, 2));
  SplitPrime p = find_split_prime(fam.spec, 3);
  SearchConfig cfg;
  cfg.k = 2;  // needs (n-1)t < k < nt, so k = 3 only for n = t = 2
  CHECK_THROWS(density_search(fam, p, cfg));
  cfg.k = 4;
  CHECK_THROWS(density_search(fam, p, cfg));
}

TEST_CASE("rogers mode selects and balances") {
  Family fam = build_family(FamilySpec::parse("hurwitz", 0, 2));
  SplitPrime p = find_split_prime(fam.spec, 11);
  SearchConfig cfg;
  cfg.t = 2;
  cfg.k = 3;
  cfg.epsilon = 0.2;
  cfg.mode = RadiusMode::RogersRadial;
  cfg.sampled = true;
  cfg.budget = 30;
  cfg.seed = 5;
  cfg.workers = 4;
  SearchResult res = density_search(fam, p, cfg);
  CHECK(res.codes_tried == 30);
  if (res.balanced_best) {
    // a selected lift satisfies lambda_1(balanced) > r after scaling
    double beta = beta_scale(11, 2, 1, 2, 3);
    CHECK(res.balanced_best->lambda1 * beta > res.radius * (1 - 1e-9));
  }
}

TEST_CASE("effective conditions") {
  Family fam = build_family(FamilySpec::parse("hurwitz", 0, 2));
  PositiveElement a = build_invariant_form(fam.order, fam.g0);
  EffectiveReport r3 = effective_conditions(fam, a, 3, 0.5, 2);
  CHECK(r3.ratio == doctest::Approx(6561.0 / 5472.0).epsilon(1e-12));  // 1.19901...
  double prev = r3.ratio;
  for (long p : {5L, 7L, 11L, 13L, 17L}) {
    EffectiveReport rp = effective_conditions(fam, a, p, 0.5, 2);
    CHECK(rp.ratio < prev);
    CHECK(rp.ratio > 1.0);
    prev = rp.ratio;
  }
  // rank mode: t^2 < p
  EffectiveReport rt = effective_conditions(fam, a, 11, 0.5, 3);
  CHECK(rt.rank_ok);
  EffectiveReport rf = effective_conditions(fam, a, 7, 0.5, 3);
  CHECK(!rf.rank_ok);
}

TEST_CASE("checkpoint and resume") {
  Family fam = build_family(FamilySpec::parse("hurwitz", 0, 2));
  SplitPrime p3 = find_split_prime(fam.spec, 3);
  SearchConfig cfg;
  cfg.t = 2;
  cfg.k = 3;
  cfg.checkpoint_every = 10;
  cfg.checkpoint_path = "/tmp/divlat_ckpt_test.json";
  SearchResult full = density_search(fam, p3, cfg);
  cfg.resume_from = 20;
  SearchResult resumed = density_search(fam, p3, cfg);
  CHECK(resumed.codes_tried == full.codes_tried - 20);
  // the maximum over the tail cannot exceed the full maximum
  CHECK(resumed.best->density <= full.best->density + 1e-15);
}

}  // TEST_SUITE

TEST_SUITE("search") {

TEST_CASE("zero budget in sampled mode is an empty flagged miss") {
  Family fam = build_family(FamilySpec::parse("hurwitz", 0, 2));
  SplitPrime p = find_split_prime(fam.spec, 7);
  SearchConfig cfg;
  cfg.t = 2;
  cfg.k = 3;
  cfg.sampled = true;
  cfg.budget = 0;
  SearchResult res = density_search(fam, p, cfg);
  CHECK(res.codes_tried == 0);
  CHECK(!res.hit);
  CHECK(!res.best.has_value());
}

}  // TEST_SUITE
