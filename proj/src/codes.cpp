#include "divlat/codes.hpp"

#include <stdexcept>
#include <cmath>
#include <functional>

namespace divlat {

FpMat ResidueTuple::concat() const {
  const int n = mats[0].rows;
  const int t = (int)mats.size();
  FpMat m(n, n * t, mats[0].p);
  for (int s = 0; s < t; ++s)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m.at(r, s * n + c) = mats[s].at(r, c);
  return m;
}

Code code_from_rows(const CodeParams& params, FpMat rows) {
  Code code;
  code.params = params;
  int rank = fp_rref(rows, &code.pivots);
  if (rank != params.k) throw std::invalid_argument("code rows do not have rank k");
  rows.rows = params.k;
  rows.a.resize(size_t(params.k) * rows.cols);
  code.row_space = std::move(rows);
  return code;
}

Code sample_code(const CodeParams& params, std::mt19937_64& rng) {
  if (params.k <= 0 || params.k >= params.ambient() + 1)
    throw std::invalid_argument("sample_code: k out of range");
  std::uniform_int_distribution<long> dist(0, params.p - 1);
  while (true) {
    FpMat rows(params.k, params.ambient(), params.p);
    for (auto& v : rows.a) v = dist(rng);
    FpMat probe = rows;
    if (fp_rank(std::move(probe)) != params.k) continue;
    return code_from_rows(params, rows);
  }
}

Int gaussian_binomial(int d, int k, long p) {
  if (k < 0 || k > d) return 0;
  Int num(1), den(1);
  for (int i = 0; i < k; ++i) {
    num *= int_pow(Int(p), d - i) - 1;
    den *= int_pow(Int(p), i + 1) - 1;
  }
  if (num % den != 0) throw std::logic_error("gaussian binomial not integral");
  return num / den;
}

namespace {

// Enumerates all RREF matrices with the given pivot columns by filling the
// free positions: entry (r, c) is free iff c > pivots[r] and c is not a pivot.
void enumerate_for_pivots(const CodeParams& params, const std::vector<int>& pivots,
                          std::vector<Code>& out, size_t cap) {
  const int k = params.k, d = params.ambient();
  const long p = params.p;
  std::vector<bool> is_pivot(d, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::pair<int, int>> free_pos;
  for (int r = 0; r < k; ++r)
    for (int c = pivots[r] + 1; c < d; ++c)
      if (!is_pivot[c]) free_pos.emplace_back(r, c);

  FpMat m(k, d, p);
  for (int r = 0; r < k; ++r) m.at(r, pivots[r]) = 1;
  size_t nfree = free_pos.size();
  std::vector<long> digits(nfree, 0);
  while (true) {
    if (out.size() >= cap) throw std::runtime_error("enumerate_codes: cap exceeded");
    Code code;
    code.params = params;
    code.row_space = m;
    code.pivots = pivots;
    out.push_back(code);
    // next assignment of free entries
    size_t i = 0;
    for (; i < nfree; ++i) {
      auto [r, c] = free_pos[i];
      if (++digits[i] < p) {
        m.at(r, c) = digits[i];
        break;
      }
      digits[i] = 0;
      m.at(r, c) = 0;
    }
    if (i == nfree) break;
  }
}

void pivot_combinations(int d, int k, int start, std::vector<int>& cur,
                        const std::function<void(const std::vector<int>&)>& fn) {
  if ((int)cur.size() == k) {
    fn(cur);
    return;
  }
  for (int c = start; c < d; ++c) {
    cur.push_back(c);
    pivot_combinations(d, k, c + 1, cur, fn);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Code> enumerate_codes(const CodeParams& params, size_t cap) {
  if (params.k <= 0 || params.k > params.ambient())
    throw std::invalid_argument("enumerate_codes: k out of range");
  if (gaussian_binomial(params.ambient(), params.k, params.p) > (long)cap)
    throw std::runtime_error("enumerate_codes: cap exceeded");
  std::vector<Code> out;
  std::vector<int> cur;
  pivot_combinations(params.ambient(), params.k, 0, cur,
                     [&](const std::vector<int>& piv) {
                       enumerate_for_pivots(params, piv, out, cap);
                     });
  return out;
}

bool contains(const Code& code, const ResidueTuple& v) {
  FpMat cc = v.concat();
  if (cc.cols != code.row_space.cols || cc.p != code.row_space.p)
    throw std::invalid_argument("contains: shape mismatch");
  for (int r = 0; r < cc.rows; ++r) {
    std::vector<int64_t> row(cc.cols);
    for (int c = 0; c < cc.cols; ++c) row[c] = cc.at(r, c);
    if (!fp_in_rowspace(code.row_space, code.pivots, row)) return false;
  }
  return true;
}

bool in_U(const ResidueTuple& v) {
  const int n = v.mats[0].rows;
  return fp_rank(v.concat()) == n;
}

namespace {

ResidueTuple tuple_from_flat(int n, int t, long p, const std::vector<long>& flat) {
  ResidueTuple v;
  v.mats.assign(t, FpMat(n, n, p));
  for (int s = 0; s < t; ++s)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        v.mats[s].at(r, c) = flat[size_t(s) * n * n + r * n + c];
  return v;
}

}  // namespace

BalancednessReport balancedness_audit(const CodeParams& params, size_t cap) {
  const int n = params.n, t = params.t;
  const long p = params.p;
  const size_t total_coords = size_t(n) * n * t;
  double cells = std::pow((double)p, (double)total_coords);
  if (cells > 2e7) throw std::runtime_error("balancedness_audit: residue space too large");

  std::vector<Code> codes = enumerate_codes(params, cap);
  BalancednessReport rep;
  rep.bijection_count = gaussian_binomial(params.ambient() - n, params.k - n, p);
  rep.uniform = true;
  bool first = true;

  std::vector<long> flat(total_coords, 0);
  while (true) {
    ResidueTuple v = tuple_from_flat(n, t, p, flat);
    if (in_U(v)) {
      Int count(0);
      for (const auto& c : codes)
        if (contains(c, v)) ++count;
      ++rep.u_checked;
      if (first) {
        rep.L = count;
        first = false;
      } else if (count != rep.L) {
        rep.uniform = false;
      }
    }
    size_t i = 0;
    for (; i < total_coords; ++i) {
      if (++flat[i] < p) break;
      flat[i] = 0;
    }
    if (i == total_coords) break;
  }
  return rep;
}

std::vector<ResidueTuple> expand_code(const Code& code, size_t cap) {
  const int n = code.params.n, t = code.params.t, k = code.params.k;
  const long p = code.params.p;
  // elements are all F_p-combinations of the k rows placed in each of the
  // n matrix rows independently: p^{nk} tuples
  double size = std::pow((double)p, (double)n * k);
  if (size > (double)cap) throw std::runtime_error("expand_code: cap exceeded");
  Fp f(p);
  const int d = code.params.ambient();

  std::vector<std::vector<long>> coeffs(n, std::vector<long>(k, 0));
  std::vector<ResidueTuple> out;
  while (true) {
    // build the concatenated n x d matrix row by row
    FpMat cc(n, d, p);
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < k; ++j) {
        long c = coeffs[r][j];
        if (!c) continue;
        for (int col = 0; col < d; ++col)
          cc.at(r, col) = f.add(cc.at(r, col), f.mul(c, code.row_space.at(j, col)));
      }
    ResidueTuple v;
    v.mats.assign(t, FpMat(n, n, p));
    for (int s = 0; s < t; ++s)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) v.mats[s].at(r, c) = cc.at(r, s * n + c);
    out.push_back(v);

    int r = 0, j = 0;
    bool done = true;
    for (r = 0; r < n && done; ++r)
      for (j = 0; j < k; ++j) {
        if (++coeffs[r][j] < p) { done = false; break; }
        coeffs[r][j] = 0;
      }
    if (done) break;
  }
  return out;
}

}  // namespace divlat
