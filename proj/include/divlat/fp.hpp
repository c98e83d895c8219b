#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace divlat {

/// Arithmetic mod an odd prime p < 2^31. Values are kept in [0, p).
struct Fp {
  int64_t p;

  explicit Fp(int64_t prime) : p(prime) {
    if (prime < 2 || prime >= (int64_t(1) << 31))
      throw std::invalid_argument("prime out of supported range");
  }

  int64_t norm(int64_t a) const {
    a %= p;
    return a < 0 ? a + p : a;
  }
  int64_t add(int64_t a, int64_t b) const { return (a + b) % p; }
  int64_t sub(int64_t a, int64_t b) const { return norm(a - b); }
  int64_t mul(int64_t a, int64_t b) const { return (a * b) % p; }
  int64_t pow(int64_t a, int64_t e) const {
    a = norm(a);
    int64_t r = 1;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  int64_t inv(int64_t a) const {
    a = norm(a);
    if (a == 0) throw std::domain_error("inverse of zero mod p");
    return pow(a, p - 2);
  }
};

/// Dense row-major matrix over F_p.
struct FpMat {
  int rows = 0, cols = 0;
  int64_t p = 0;
  std::vector<int64_t> a;

  FpMat() = default;
  FpMat(int r, int c, int64_t prime) : rows(r), cols(c), p(prime), a(size_t(r) * c, 0) {}

  int64_t& at(int i, int j) { return a[size_t(i) * cols + j]; }
  int64_t at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static FpMat identity(int n, int64_t prime) {
    FpMat m(n, n, prime);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const FpMat& o) const {
    return rows == o.rows && cols == o.cols && p == o.p && a == o.a;
  }
};

inline FpMat fp_mul(const FpMat& x, const FpMat& y) {
  if (x.cols != y.rows || x.p != y.p) throw std::invalid_argument("fp_mul shape mismatch");
  Fp f(x.p);
  FpMat z(x.rows, y.cols, x.p);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      int64_t v = x.at(i, k);
      if (!v) continue;
      for (int j = 0; j < y.cols; ++j)
        z.at(i, j) = f.add(z.at(i, j), f.mul(v, y.at(k, j)));
    }
  return z;
}

inline FpMat fp_add(const FpMat& x, const FpMat& y) {
  Fp f(x.p);
  FpMat z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = f.add(z.a[i], y.a[i]);
  return z;
}

inline FpMat fp_scale(const FpMat& x, int64_t c) {
  Fp f(x.p);
  FpMat z = x;
  for (auto& v : z.a) v = f.mul(v, f.norm(c));
  return z;
}

/// In-place reduced row echelon form; returns rank. Records pivot columns if asked.
inline int fp_rref(FpMat& m, std::vector<int>* pivots = nullptr) {
  Fp f(m.p);
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int piv = -1;
    for (int r = rank; r < m.rows; ++r)
      if (m.at(r, col) != 0) { piv = r; break; }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    int64_t s = f.inv(m.at(rank, col));
    for (int j = 0; j < m.cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), s);
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      int64_t c = m.at(r, col);
      if (!c) continue;
      for (int j = 0; j < m.cols; ++j)
        m.at(r, j) = f.sub(m.at(r, j), f.mul(c, m.at(rank, j)));
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

inline int fp_rank(FpMat m) { return fp_rref(m); }

inline int64_t fp_det(FpMat m) {
  if (m.rows != m.cols) throw std::invalid_argument("fp_det needs square matrix");
  Fp f(m.p);
  int64_t det = 1;
  for (int col = 0; col < m.cols; ++col) {
    int piv = -1;
    for (int r = col; r < m.rows; ++r)
      if (m.at(r, col) != 0) { piv = r; break; }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = f.sub(0, det);
    }
    det = f.mul(det, m.at(col, col));
    int64_t s = f.inv(m.at(col, col));
    for (int r = col + 1; r < m.rows; ++r) {
      int64_t c = f.mul(m.at(r, col), s);
      if (!c) continue;
      for (int j = col; j < m.cols; ++j)
        m.at(r, j) = f.sub(m.at(r, j), f.mul(c, m.at(col, j)));
    }
  }
  return det;
}

/// Is v in the row space of the RREF matrix r? Reduces v against the pivots.
inline bool fp_in_rowspace(const FpMat& rref, const std::vector<int>& pivots,
                           std::vector<int64_t> v) {
  Fp f(rref.p);
  for (size_t i = 0; i < pivots.size(); ++i) {
    int64_t c = f.norm(v[pivots[i]]);
    if (!c) continue;
    for (int j = 0; j < rref.cols; ++j)
      v[j] = f.sub(v[j], f.mul(c, rref.at(int(i), j)));
  }
  for (int64_t x : v)
    if (f.norm(x) != 0) return false;
  return true;
}

}  // namespace divlat
