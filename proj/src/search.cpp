#include "divlat/search.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

namespace divlat {

double TestFunction::evaluate(double rho) const {
  if (kind == Kind::Indicator) return rho <= r ? 1.0 : 0.0;
  double lo = r * std::exp((1.0 - t) / (double)d);
  double hi = r * std::exp(1.0 / (double)d);
  if (rho < lo) return (double)t / (double)d;
  if (rho <= hi) return 1.0 / (double)d - std::log(rho / r);
  return 0.0;
}

double TestFunction::support_radius() const {
  if (kind == Kind::Indicator) return r;
  return r * std::exp(1.0 / (double)d);
}

double integral(const TestFunction& f) {
  double vd = unit_ball_volume(f.d);
  if (f.kind == TestFunction::Kind::Indicator) return vd * std::pow(f.r, (double)f.d);
  return vd * std::pow(f.r, (double)f.d) * std::exp(1.0) *
         (1.0 - std::exp(-(double)f.t)) / (double)f.d;
}

double lattice_sum(const TestFunction& f, const LatticeInstance& inst, double scale) {
  double support = f.support_radius();
  double bound_d = (support / scale) * (support / scale);
  Rat bound(bound_d * (1.0 + 1e-12));

  Int gscale(1);
  for (const auto& row : inst.gram)
    for (const auto& v : row) gscale = lcm(gscale, v.get_den());
  IntMat gi(inst.dim, IntVec(inst.dim));
  for (int i = 0; i < inst.dim; ++i)
    for (int j = 0; j < inst.dim; ++j) gi[i][j] = Rat(inst.gram[i][j] * gscale).get_num();
  LllResult red = lll_reduce(gi);
  RatMat g(inst.dim, RatVec(inst.dim));
  for (int i = 0; i < inst.dim; ++i)
    for (int j = 0; j < inst.dim; ++j) g[i][j] = Rat(red.gram[i][j]);

  double sum = 0.0;
  enumerate_short_vectors(g, bound * gscale, [&](const IntVec& x, const Rat& norm) {
    Int gcd_acc(0);
    for (const auto& c : x) gcd_acc = gcd(gcd_acc, c);
    if (gcd_acc != 1) return true;
    double rho = scale * std::sqrt(to_double(norm / gscale));
    sum += 2.0 * f.evaluate(rho);
    return true;
  });
  return sum;
}

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void parallel_for(long count, int workers, const std::function<void(long)>& body) {
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long> next(0);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      while (true) {
        long i = next.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  for (auto& th : pool) th.join();
}

double order_volume(const PositiveElement& a, int t) {
  Rat det = rat_det(a.gram);
  return std::pow(std::sqrt(to_double(det)), (double)t);
}

}  // namespace

McEstimate mc_average(const Family& fam, const PositiveElement& a,
                      const SplittingMap& map, int t, int k, const TestFunction& f,
                      long n_samples, uint64_t seed, int workers) {
  const int n = fam.info.n;
  double beta = beta_scale(map.p, n, fam.order.m, t, k);
  CodeParams params{n, t, k, map.p};

  std::vector<double> sums;
  if (n_samples == 0) {
    std::vector<Code> codes = enumerate_codes(params);
    sums.assign(codes.size(), 0.0);
    parallel_for((long)codes.size(), workers, [&](long i) {
      LatticeInstance inst = lift_code(fam, a, map, codes[i]);
      sums[i] = lattice_sum(f, inst, beta);
    });
  } else {
    sums.assign(n_samples, 0.0);
    parallel_for(n_samples, workers, [&](long i) {
      std::mt19937_64 rng(splitmix64(seed ^ (uint64_t)i));
      Code code = sample_code(params, rng);
      LatticeInstance inst = lift_code(fam, a, map, code);
      sums[i] = lattice_sum(f, inst, beta);
    });
  }

  McEstimate est;
  est.samples = (long)sums.size();
  double mean = 0.0;
  for (double s : sums) mean += s;
  mean /= (double)sums.size();
  est.mean = mean;
  if (n_samples == 0) {
    est.stderr_ = 0.0;  // exhaustive average is exact
  } else {
    double var = 0.0;
    for (double s : sums) var += (s - mean) * (s - mean);
    var /= std::max<long>(1, est.samples - 1);
    est.stderr_ = std::sqrt(var / (double)est.samples);
  }
  est.target = integral(f) / (zeta(f.d) * order_volume(a, t));
  return est;
}

double target_radius(RadiusMode mode, double eps, const Int& g0_order, double vol,
                     long d, int t) {
  if (eps <= 0.0 || eps >= 1.0) {
    if (eps == 1.0) return 0.0;
    throw std::invalid_argument("target_radius: eps must lie in (0,1)");
  }
  double g0 = to_double(Rat(g0_order));
  double vd = unit_ball_volume(d);
  double rhs;
  if (mode == RadiusMode::Indicator) {
    rhs = (1.0 - eps) * g0 * zeta(d) * vol / vd;
  } else {
    rhs = (1.0 - eps) * g0 * zeta(d) * vol * (double)t /
          (vd * std::exp(1.0) * (1.0 - std::exp(-(double)t)));
  }
  return std::pow(rhs, 1.0 / (double)d);
}

namespace {

struct CodeOutcome {
  bool evaluated = false;
  bool hit = false;
  Rat lambda1_sq;
  double density = 0.0;
  long prim_in_ball = 0;
  double balanced_lambda1 = 0.0;
  double balanced_density = 0.0;
  bool balanced_ok = false;
};

void write_checkpoint(const std::string& path, long next_index, long hits) {
  std::ofstream out(path);
  out << "{\"schema\":1,\"next_index\":" << next_index << ",\"hits\":" << hits << "}\n";
}

}  // namespace

SearchResult density_search(const Family& fam, const SplitPrime& prime,
                            const SearchConfig& cfg) {
  const int n = fam.info.n;
  const int nt = n * cfg.t;
  if (!(cfg.k > (n - 1) * cfg.t && cfg.k < nt))
    throw std::invalid_argument("density_search needs (n-1)t < k < nt");

  PositiveElement a = build_invariant_form(fam.order, fam.g0);
  SplittingMap map = build_reduction(fam, prime);
  const long d = (long)fam.order.dim_total * cfg.t;
  double vol = order_volume(a, cfg.t);
  double beta = beta_scale(prime.p, n, fam.order.m, cfg.t, cfg.k);
  double r = target_radius(cfg.mode == RadiusMode::Indicator ? RadiusMode::Indicator
                                                             : RadiusMode::RogersRadial,
                           cfg.epsilon, fam.info.g0_order, vol, d, cfg.t);
  // ball radius in the unscaled lattice, integral gram: count norms <= floor
  Int ball_bound(0);
  if (cfg.mode == RadiusMode::Indicator) {
    double unscaled_sq = (r / beta) * (r / beta);
    ball_bound = floor_rat(Rat(unscaled_sq));
    if (std::abs(unscaled_sq - std::round(unscaled_sq)) < 1e-7)
      throw std::runtime_error("density_search: ball boundary too close to an integer norm");
  }

  CodeParams params{n, cfg.t, cfg.k, prime.p};
  std::vector<Code> codes;
  long total;
  if (cfg.sampled) {
    total = cfg.budget;
  } else {
    codes = enumerate_codes(params);
    total = (long)codes.size();
  }

  std::vector<CodeOutcome> outcomes(total);
  std::vector<char> done_flag(total, 0);
  long watermark = cfg.resume_from;  // all indices below are complete
  std::mutex ckpt_mutex;

  Int g0_order = fam.info.g0_order;
  double zeta_d = zeta(d);
  double g0d = to_double(Rat(g0_order));
  double target_density =
      cfg.mode == RadiusMode::Indicator
          ? (1.0 - cfg.epsilon) * g0d * zeta_d * std::pow(2.0, -(double)d)
          : (1.0 - cfg.epsilon) * g0d * zeta_d * (double)cfg.t *
                std::pow(2.0, -(double)d) /
                (std::exp(1.0) * (1.0 - std::exp(-(double)cfg.t)));

  auto evaluate = [&](long i) {
    Code code;
    if (cfg.sampled) {
      std::mt19937_64 rng(splitmix64(cfg.seed ^ (uint64_t)i));
      code = sample_code(params, rng);
    } else {
      code = codes[i];
    }
    LatticeInstance inst = lift_code(fam, a, map, code);
    CodeOutcome& out = outcomes[i];
    out.evaluated = true;

    SvpResult sv = svp(inst);
    out.lambda1_sq = sv.min_sq;
    DensityReport rep = packing_density(inst, g0_order);
    out.density = rep.density;

    if (cfg.mode == RadiusMode::Indicator) {
      long count = count_primitive_in_ball(inst, Rat(ball_bound), false);
      out.prim_in_ball = count;
      if (count % (long)fam.g0.order() != 0)
        throw std::runtime_error("orbit divisibility violated in indicator search");
      out.hit = (count == 0);
    } else {
      // select by the radial-sum certificate; the two minima facts follow
      TestFunction fr{TestFunction::Kind::RogersRadial, r, d, cfg.t};
      double s = lattice_sum(fr, inst, beta);
      double mn2 = (double)d / (double)cfg.t;
      double cap = (1.0 - cfg.epsilon) * to_double(Rat(g0_order)) / mn2;
      if (s <= cap * (1.0 + 1e-12)) {
        out.hit = true;
        MinimaProfile prof = successive_minima(fam.order, inst);
        double floor_len = r * std::exp((1.0 - cfg.t) / (double)d);
        double log_sum = 0.0;
        for (double l : prof.minima) {
          if (beta * l < floor_len * (1.0 - 1e-9))
            throw std::runtime_error("selected lift violates the minima floor");
          log_sum += std::log(beta * l / r);
        }
        if (log_sum <= 0.0)
          throw std::runtime_error("selected lift violates the minima product bound");
        RealElement ar = real_from_element(a.value);
        BalanceResult bal = balance(fam.order, ar, inst, prof);
        out.balanced_ok = true;
        out.balanced_lambda1 = bal.lambda1;
        out.balanced_density = unit_ball_volume(d) *
                               std::pow(bal.lambda1 / 2.0, (double)d) / bal.covolume_out;
      }
    }

    // advance the contiguous-completion watermark; resume never skips work
    std::lock_guard<std::mutex> lock(ckpt_mutex);
    done_flag[i] = 1;
    long old = watermark;
    while (watermark < total && done_flag[watermark]) ++watermark;
    if (!cfg.checkpoint_path.empty() && watermark / cfg.checkpoint_every > old / cfg.checkpoint_every)
      write_checkpoint(cfg.checkpoint_path, watermark, 0);
  };

  {
    long span = total - cfg.resume_from;
    parallel_for(span, cfg.workers, [&](long i) { evaluate(cfg.resume_from + i); });
  }

  SearchResult res;
  res.seed = cfg.seed;
  res.codes_tried = total - cfg.resume_from;
  res.target_density = target_density;
  res.radius = r;
  for (long i = cfg.resume_from; i < total; ++i) {
    const CodeOutcome& out = outcomes[i];
    if (!out.evaluated) continue;
    if (cfg.keep_per_code) res.per_code_density.emplace_back(i, out.density);
    if (!res.best || out.density > res.best->density) {
      Code code;
      if (cfg.sampled) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ (uint64_t)i));
        code = sample_code(params, rng);
      } else {
        code = codes[i];
      }
      LatticeInstance inst = lift_code(fam, a, map, code);
      res.best = packing_density(inst, g0_order);
      res.best_code_index = i;
    }
    if (out.hit) res.hit = true;
    if (out.balanced_ok) {
      BalancedReport br{out.balanced_lambda1, out.balanced_density, 0.0};
      if (!res.balanced_best || br.density > res.balanced_best->density) {
        res.balanced_best = br;
        res.balanced_code_index = i;
      }
    }
  }
  if (!cfg.checkpoint_path.empty())
    write_checkpoint(cfg.checkpoint_path, total, res.hit ? 1 : 0);
  return res;
}

EffectiveReport effective_conditions(const Family& fam, const PositiveElement& a,
                                     long p, double eps, int t, double rank_c) {
  const int n = fam.info.n;
  const long m = fam.order.m;
  EffectiveReport rep;
  // condition (2): |M_n|^2 / (|M_n|^2 - |M_n \ GL_n|^2) < 1 + eps/3
  Int mn = int_pow(Int(p), (unsigned long)(n * n));
  Int bad = mn - gl_order(n, p);
  Rat ratio = Rat(mn * mn) / Rat(mn * mn - bad * bad);
  rep.ratio = to_double(ratio);
  rep.ratio_bound = 1.0 + eps / 3.0;
  rep.cond_ratio = rep.ratio < rep.ratio_bound;
  // condition (1) surrogate with constant 1
  double volO = std::sqrt(to_double(rat_det(a.gram)));
  double mn2 = (double)(n * n * m);
  rep.lhs_growth = mn2 * mn2 * std::pow(volO, 2.0 / mn2) *
                   std::pow(to_double(Rat(fam.info.g0_order)), -1.0 / mn2);
  rep.rhs_growth = std::pow((double)p, 1.0 / (double)(m * n));
  rep.cond_growth = rep.lhs_growth < rep.rhs_growth;
  rep.rank_ok = (double)p > rank_c * (double)t * (double)t;
  return rep;
}

}  // namespace divlat
