#include "divlat/lattice.hpp"

#include <stdexcept>

namespace divlat {

namespace {

struct Gso {
  RatMat mu;     // mu[i][j] for j < i
  RatVec bstar;  // squared Gram-Schmidt norms
};

Gso exact_gso(const RatMat& gram) {
  const int n = (int)gram.size();
  Gso g;
  g.mu.assign(n, RatVec(n, Rat(0)));
  g.bstar.assign(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      Rat v = gram[i][j];
      for (int l = 0; l < j; ++l) v -= g.mu[j][l] * g.mu[i][l] * g.bstar[l];
      g.mu[i][j] = v / g.bstar[j];
    }
    Rat v = gram[i][i];
    for (int l = 0; l < i; ++l) v -= g.mu[i][l] * g.mu[i][l] * g.bstar[l];
    if (v <= 0) throw std::invalid_argument("enumeration: gram not positive definite");
    g.bstar[i] = v;
  }
  return g;
}

struct Enumerator {
  const Gso& gso;
  int n;
  Rat bound;
  const std::function<bool(const IntVec&, const Rat&)>& visit;
  IntVec x;
  bool aborted = false;

  // budget = bound minus the contribution of levels above `level`
  void descend(int level, const Rat& budget, bool zero_above) {
    if (aborted) return;
    if (level < 0) {
      if (!zero_above) {
        if (!visit(x, bound - budget)) aborted = true;
      }
      return;
    }
    Rat center(0);
    for (int j = level + 1; j < n; ++j)
      if (x[j] != 0) center -= gso.mu[j][level] * x[j];
    const Rat& b = gso.bstar[level];

    if (zero_above) {
      // symmetric level: only x >= 0, one representative per +- pair
      for (Int v(0);; ++v) {
        Rat term = Rat(v) * Rat(v) * b;
        if (term > budget) break;
        x[level] = v;
        descend(level - 1, budget - term, v == 0);
        if (aborted) return;
      }
      x[level] = 0;
      return;
    }

    Int v0 = round_rat(center);
    // zigzag v0, v0+1, v0-1, v0+2, ...
    for (int dir = 0; dir < 2; ++dir) {
      Int v = dir == 0 ? v0 : v0 - 1;
      Int step = dir == 0 ? 1 : -1;
      while (true) {
        Rat dv = Rat(v) - center;
        Rat term = dv * dv * b;
        if (term > budget) break;
        x[level] = v;
        descend(level - 1, budget - term, false);
        if (aborted) return;
        v += step;
      }
    }
    x[level] = 0;
  }
};

}  // namespace

void enumerate_short_vectors(const RatMat& gram, const Rat& bound,
                             const std::function<bool(const IntVec&, const Rat&)>& visit) {
  const int n = (int)gram.size();
  if (bound <= 0) return;
  Gso gso = exact_gso(gram);
  Enumerator en{gso, n, bound, visit, IntVec(n, Int(0))};
  en.descend(n - 1, bound, true);
}

}  // namespace divlat
