#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divlat/aminima.hpp"
#include "divlat/lattice.hpp"
#include "divlat/zeta.hpp"

namespace divlat {

/// Semi-admissible test functions: the indicator of a ball, or the radial
/// log-profile of bounded support (value t/d inside r e^{(1-t)/d},
/// 1/d - log(rho/r) on the shell, 0 outside).
struct TestFunction {
  enum class Kind { Indicator, RogersRadial };
  Kind kind = Kind::Indicator;
  double r = 1.0;
  long d = 2;
  int t = 2;

  double evaluate(double rho) const;
  double support_radius() const;
};

/// Closed-form integral over R^d.
double integral(const TestFunction& f);

/// Sum of f over the primitive vectors of the scaled lattice (scale * L).
double lattice_sum(const TestFunction& f, const LatticeInstance& inst, double scale);

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
  double target = 0.0;  // (zeta(d) Vol(O^t))^{-1} integral(f)
};

/// Average of the primitive-vector sum over codes, scaled by beta_p.
/// n_samples = 0 runs the exhaustive average over all codes (stderr 0).
McEstimate mc_average(const Family& fam, const PositiveElement& a,
                      const SplittingMap& map, int t, int k, const TestFunction& f,
                      long n_samples, uint64_t seed, int workers = 1);

enum class RadiusMode { Indicator, RogersRadial };

/// Solves the mode's volume equation for r.
/// indicator: V_d r^d = (1-eps) |G0| zeta(d) vol
/// rogers:    V_d r^d e (1 - e^{-t}) = (1-eps) |G0| zeta(d) vol t
double target_radius(RadiusMode mode, double eps, const Int& g0_order, double vol,
                     long d, int t);

struct BalancedReport {
  double lambda1 = 0.0;
  double density = 0.0;
  double covolume = 0.0;
};

struct SearchResult {
  std::optional<DensityReport> best;
  std::optional<BalancedReport> balanced_best;
  long codes_tried = 0;
  uint64_t seed = 0;
  bool hit = false;
  double target_density = 0.0;
  double radius = 0.0;       // r in the scaled metric
  long best_code_index = -1;
  long balanced_code_index = -1;
  std::vector<std::pair<long, double>> per_code_density;  // (code index, density)
};

struct SearchConfig {
  int t = 2;
  int k = 3;
  bool sampled = false;  // false = exhaustive over all codes
  long budget = 0;       // number of draws in sampled mode
  double epsilon = 0.01;
  uint64_t seed = 1;
  int workers = 1;
  RadiusMode mode = RadiusMode::Indicator;
  bool keep_per_code = false;
  long checkpoint_every = 10000;
  std::string checkpoint_path;  // empty = no checkpointing
  long resume_from = 0;         // first code index to process
};

/// Iterates codes (all of them, or a sampled budget), lifting each and
/// keeping the densest instance. Indicator mode reports a hit when some lift
/// has no primitive vector inside the target ball (certified by exact SVP);
/// rogers mode selects lifts whose A-minima beat the radius on geometric
/// mean and runs the balancing transform on them.
SearchResult density_search(const Family& fam, const SplitPrime& prime,
                            const SearchConfig& cfg);

struct EffectiveReport {
  double ratio = 0.0;        // |M_n|^2 / (|M_n|^2 - |M_n \ GL_n|^2)
  double ratio_bound = 0.0;  // 1 + eps/3
  bool cond_ratio = false;
  double lhs_growth = 0.0;   // (n^2 m)^2 Vol(O)^{2/(m n^2)} |G0|^{-1/(m n^2)}
  double rhs_growth = 0.0;   // p^{1/(m n)}
  bool cond_growth = false;
  bool rank_ok = true;       // p > c t^2 when rank mode applies
};

EffectiveReport effective_conditions(const Family& fam, const PositiveElement& a,
                                     long p, double eps, int t, double rank_c = 1.0);

}  // namespace divlat
