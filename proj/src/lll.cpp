#include "divlat/lattice.hpp"

#include <stdexcept>

namespace divlat {

namespace {

Int exact_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw std::logic_error("lll: inexact division");
  return q;
}

}  // namespace

// Integral LLL on the Gram matrix (all-integer Gram-Schmidt bookkeeping with
// lambda/d, swap updates per the standard integral formulation).
LllResult lll_reduce(const IntMat& gram_in) {
  const int n = (int)gram_in.size();
  IntMat G = gram_in;
  IntMat U(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) U[i][i] = 1;
  if (n <= 1) return {G, U};

  IntMat lam(n, IntVec(n, 0));
  IntVec d(n + 1);
  d[0] = 1;

  auto red = [&](int k, int l) {
    // |lambda[k][l]| <= d[l+1]/2 after this step
    if (2 * abs(lam[k][l]) <= d[l + 1]) return;
    Int q = round_quotient(lam[k][l], d[l + 1]);
    for (int j = 0; j < n; ++j) U[k][j] -= q * U[l][j];
    // b_k <- b_k - q b_l on the Gram
    G[k][k] += q * q * G[l][l] - 2 * q * G[k][l];
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      G[k][j] -= q * G[l][j];
      G[j][k] = G[k][j];
    }
    lam[k][l] -= q * d[l + 1];
    for (int i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  auto swap_step = [&](int k, int kmax) {
    std::swap(U[k], U[k - 1]);
    std::swap(G[k], G[k - 1]);
    for (int i = 0; i < n; ++i) std::swap(G[i][k], G[i][k - 1]);
    for (int j = 0; j <= k - 2; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    Int l = lam[k][k - 1];
    Int b = exact_div(d[k - 1] * d[k + 1] + l * l, d[k]);
    for (int i = k + 1; i <= kmax; ++i) {
      Int t = lam[i][k];
      lam[i][k] = exact_div(d[k + 1] * lam[i][k - 1] - l * t, d[k]);
      lam[i][k - 1] = exact_div(b * t + l * lam[i][k], d[k + 1]);
    }
    d[k] = b;
  };

  int kmax = 0;
  d[1] = G[0][0];
  int k = 1;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (int j = 0; j <= k; ++j) {
        Int u = G[k][j];
        for (int i = 0; i < j; ++i)
          u = exact_div(d[i + 1] * u - lam[k][i] * lam[j][i], d[i]);
        if (j < k)
          lam[k][j] = u;
        else {
          d[k + 1] = u;
          if (u <= 0) throw std::invalid_argument("lll: gram not positive definite");
        }
      }
    }
    red(k, k - 1);
    // Lovasz with delta = 99/100: swap iff 100 (d[k+1] d[k-1] + lam^2) < 99 d[k]^2
    Int l = lam[k][k - 1];
    if (100 * (d[k + 1] * d[k - 1] + l * l) < 99 * d[k] * d[k]) {
      swap_step(k, kmax);
      k = std::max(1, k - 1);
    } else {
      for (int j = k - 2; j >= 0; --j) red(k, j);
      ++k;
    }
  }
  return {G, U};
}

}  // namespace divlat
