#include "divlat/algebra.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace divlat {

namespace {

Element basis_element(int dim, int i) {
  Element e;
  e.coords.assign(dim, Rat(0));
  e.coords[i] = 1;
  return e;
}

}  // namespace

void OrderSpec::validate() const {
  const int N = dim_total;
  if ((int)structure_constants.size() != N || (int)involution.size() != N ||
      (int)unity.size() != N)
    throw std::invalid_argument("order spec: dimension mismatch");
  if (N != m * n * n) throw std::invalid_argument("order spec: N != m*n^2");
  const auto& c = structure_constants;

  // unity is a two-sided identity
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      long lhs = 0, rhs = 0;
      for (int i = 0; i < N; ++i) {
        if (unity[i] == 0) continue;
        long u = unity[i].get_si();
        lhs += u * c[i][j][k];
        rhs += u * c[j][i][k];
      }
      long want = (j == k) ? 1 : 0;
      if (lhs != want || rhs != want)
        throw std::invalid_argument("order spec: unity axiom fails");
    }

  // associativity: (e_i e_j) e_k = e_i (e_j e_k), coordinate by coordinate
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int out = 0; out < N; ++out) {
          long lhs = 0, rhs = 0;
          for (int l = 0; l < N; ++l) {
            if (c[i][j][l] != 0) lhs += c[i][j][l] * c[l][k][out];
            if (c[j][k][l] != 0) rhs += c[j][k][l] * c[i][l][out];
          }
          if (lhs != rhs) throw std::invalid_argument("order spec: associativity fails");
        }

  // sigma^2 = id
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      long v = 0;
      for (int l = 0; l < N; ++l) v += involution[i][l] * involution[l][j];
      if (v != (i == j ? 1 : 0))
        throw std::invalid_argument("order spec: involution not an involution");
    }

  // (e_i e_j)^* = e_j^* e_i^*
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int out = 0; out < N; ++out) {
        long lhs = 0, rhs = 0;
        for (int l = 0; l < N; ++l)
          if (c[i][j][l] != 0) lhs += involution[out][l] * c[i][j][l];
        for (int a = 0; a < N; ++a) {
          if (involution[a][j] == 0) continue;
          for (int b = 0; b < N; ++b)
            if (involution[b][i] != 0) rhs += involution[a][j] * involution[b][i] * c[a][b][out];
        }
        if (lhs != rhs)
          throw std::invalid_argument("order spec: involution not an anti-automorphism");
      }
}

Element element_from_ints(const std::vector<long>& v) {
  Element e;
  e.coords.reserve(v.size());
  for (long x : v) e.coords.emplace_back(x);
  return e;
}

Element zero_element(const OrderSpec& ord) {
  Element e;
  e.coords.assign(ord.dim_total, Rat(0));
  return e;
}

Element unity_element(const OrderSpec& ord) {
  Element e = zero_element(ord);
  for (int i = 0; i < ord.dim_total; ++i) e.coords[i] = Rat(ord.unity[i]);
  return e;
}

Element mul(const OrderSpec& ord, const Element& x, const Element& y) {
  const int N = ord.dim_total;
  if ((int)x.coords.size() != N || (int)y.coords.size() != N)
    throw std::invalid_argument("mul: dimension mismatch");
  Element z = zero_element(ord);
  for (int i = 0; i < N; ++i) {
    if (x.coords[i] == 0) continue;
    for (int j = 0; j < N; ++j) {
      if (y.coords[j] == 0) continue;
      Rat c = x.coords[i] * y.coords[j];
      const auto& row = ord.structure_constants[i][j];
      for (int k = 0; k < N; ++k)
        if (row[k] != 0) z.coords[k] += c * row[k];
    }
  }
  return z;
}

Element add(const Element& x, const Element& y) {
  Element z = x;
  for (size_t i = 0; i < z.coords.size(); ++i) z.coords[i] += y.coords[i];
  return z;
}

Element sub(const Element& x, const Element& y) {
  Element z = x;
  for (size_t i = 0; i < z.coords.size(); ++i) z.coords[i] -= y.coords[i];
  return z;
}

Element scale(const Element& x, const Rat& c) {
  Element z = x;
  for (auto& v : z.coords) v *= c;
  return z;
}

Element involute(const OrderSpec& ord, const Element& x) {
  const int N = ord.dim_total;
  Element z = zero_element(ord);
  for (int j = 0; j < N; ++j) {
    if (x.coords[j] == 0) continue;
    for (int i = 0; i < N; ++i)
      if (ord.involution[i][j] != 0) z.coords[i] += x.coords[j] * ord.involution[i][j];
  }
  return z;
}

RatMat left_mult_matrix(const OrderSpec& ord, const Element& x) {
  const int N = ord.dim_total;
  RatMat mat(N, RatVec(N, Rat(0)));
  for (int j = 0; j < N; ++j) {
    Element col = mul(ord, x, basis_element(N, j));
    for (int i = 0; i < N; ++i) mat[i][j] = col.coords[i];
  }
  return mat;
}

Rat trace_Q(const OrderSpec& ord, const Element& x) {
  const int N = ord.dim_total;
  Rat t(0);
  // trace of left multiplication without materializing the full matrix
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      if (x.coords[i] == 0) continue;
      long c = ord.structure_constants[i][j][j];
      if (c != 0) t += x.coords[i] * c;
    }
  }
  return t;
}

Rat rat_det(RatMat m) {
  const int n = (int)m.size();
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) { piv = r; break; }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rat inv = 1 / m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rat f = m[r][col] * inv;
      for (int j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

Rat norm_Q(const OrderSpec& ord, const Element& x) {
  return rat_det(left_mult_matrix(ord, x));
}

Rat reduced_trace(const OrderSpec& ord, const Element& x) {
  return trace_Q(ord, x) / ord.n;
}

namespace {

// Coordinates of v in the column space of C (N x k, full column rank);
// throws if v is outside the span.
RatVec solve_in_span(const std::vector<std::vector<long>>& cols, const RatVec& v) {
  const int N = (int)v.size();
  const int k = (int)cols.size();
  RatMat aug(N, RatVec(k + 1, Rat(0)));
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < N; ++i) aug[i][j] = cols[j][i];
  for (int i = 0; i < N; ++i) aug[i][k] = v[i];

  RatVec sol(k, Rat(0));
  std::vector<int> pivot_row(k, -1);
  int row = 0;
  for (int col = 0; col < k && row < N; ++col) {
    int piv = -1;
    for (int r = row; r < N; ++r)
      if (aug[r][col] != 0) { piv = r; break; }
    if (piv < 0) throw std::runtime_error("solve_in_span: rank deficient basis");
    std::swap(aug[piv], aug[row]);
    Rat inv = 1 / aug[row][col];
    for (int j = col; j <= k; ++j) aug[row][j] *= inv;
    for (int r = 0; r < N; ++r) {
      if (r == row || aug[r][col] == 0) continue;
      Rat f = aug[r][col];
      for (int j = col; j <= k; ++j) aug[r][j] -= f * aug[row][j];
    }
    pivot_row[col] = row;
    ++row;
  }
  for (int r = row; r < N; ++r)
    if (aug[r][k] != 0) throw std::runtime_error("solve_in_span: vector outside span");
  for (int col = 0; col < k; ++col) sol[col] = aug[pivot_row[col]][k];
  return sol;
}

}  // namespace

Rat reduced_norm(const OrderSpec& ord, const Element& x) {
  if (!ord.nrd) throw std::domain_error("reduced_norm: no closed form for this order");
  const NrdSpec& spec = *ord.nrd;
  if (spec.n == 1) return norm_Q(ord, x);
  if (spec.n != 2) throw std::domain_error("reduced_norm: unsupported degree");

  // y = x * conj(x) lies in the center; its K/Q-norm is the determinant of
  // multiplication by y on the center basis.
  const int N = ord.dim_total;
  Element xc = zero_element(ord);
  for (int j = 0; j < N; ++j) {
    if (x.coords[j] == 0) continue;
    for (int i = 0; i < N; ++i)
      if (spec.quat_conj[i][j] != 0) xc.coords[i] += x.coords[j] * spec.quat_conj[i][j];
  }
  Element y = mul(ord, x, xc);

  const auto& cb = spec.center_cols;
  const int mdeg = (int)cb.size();
  solve_in_span(cb, y.coords);  // certifies centrality

  RatMat mat(mdeg, RatVec(mdeg, Rat(0)));
  for (int j = 0; j < mdeg; ++j) {
    Element bj;
    bj.coords.assign(N, Rat(0));
    for (int i = 0; i < N; ++i) bj.coords[i] = cb[j][i];
    RatVec col = solve_in_span(cb, mul(ord, y, bj).coords);
    for (int i = 0; i < mdeg; ++i) mat[i][j] = col[i];
  }
  return rat_det(mat);
}

bool is_positive_definite(const RatMat& g) {
  const int n = (int)g.size();
  RatMat m = g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i][j] != m[j][i]) return false;
  // LDL^T: pivot at each step must be positive
  for (int k = 0; k < n; ++k) {
    if (m[k][k] <= 0) return false;
    Rat inv = 1 / m[k][k];
    for (int i = k + 1; i < n; ++i) {
      Rat f = m[i][k] * inv;
      for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return true;
}

PositiveElement make_positive(const OrderSpec& ord, const Element& a) {
  if (!(involute(ord, a) == a))
    throw std::invalid_argument("positive element must satisfy a^* = a");
  const int N = ord.dim_total;
  PositiveElement pe;
  pe.value = a;
  pe.gram.assign(N, RatVec(N, Rat(0)));
  std::vector<Element> star(N);
  for (int i = 0; i < N; ++i) star[i] = involute(ord, basis_element(N, i));
  for (int i = 0; i < N; ++i) {
    Element left = mul(ord, star[i], a);
    for (int j = 0; j < N; ++j)
      pe.gram[i][j] = trace_Q(ord, mul(ord, left, basis_element(N, j)));
  }
  if (!is_positive_definite(pe.gram))
    throw std::runtime_error("form T(x^* a x) is not positive definite");
  return pe;
}

UnitGroup enumerate_group(const OrderSpec& ord, const std::vector<Element>& generators,
                          size_t cap) {
  for (const auto& g : generators)
    if (!g.is_integral())
      throw std::invalid_argument("group generators must lie in the order");

  std::map<RatVec, size_t> seen;
  UnitGroup group;
  Element one = unity_element(ord);
  group.elements.push_back(one);
  seen[one.coords] = 0;
  std::vector<size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<size_t> next;
    for (size_t idx : frontier) {
      for (const auto& g : generators) {
        Element h = mul(ord, group.elements[idx], g);
        if (seen.count(h.coords)) continue;
        if (group.elements.size() >= cap)
          throw std::runtime_error("enumerate_group: cap exceeded");
        seen[h.coords] = group.elements.size();
        next.push_back(group.elements.size());
        group.elements.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  for (const auto& g : group.elements) {
    Rat n = norm_Q(ord, g);
    if (!(n == 1 || n == -1))
      throw std::runtime_error("enumerate_group: element with N(g) != +-1");
  }
  return group;
}

PositiveElement build_invariant_form(const OrderSpec& ord, const UnitGroup& g0) {
  Element a = zero_element(ord);
  for (const auto& g : g0.elements)
    a = add(a, mul(ord, involute(ord, g), g));
  PositiveElement pe = make_positive(ord, a);

  // q_a(g x) = q_a(x) on the basis: P_g^T G P_g = G
  const int N = ord.dim_total;
  for (const auto& g : g0.elements) {
    RatMat pg = left_mult_matrix(ord, g);
    RatMat tmp(N, RatVec(N, Rat(0)));
    for (int r = 0; r < N; ++r)
      for (int s = 0; s < N; ++s) {
        if (pe.gram[r][s] == 0) continue;
        for (int j = 0; j < N; ++j)
          if (pg[s][j] != 0) tmp[r][j] += pe.gram[r][s] * pg[s][j];
      }
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        Rat v(0);
        for (int r = 0; r < N; ++r)
          if (pg[r][i] != 0) v += pg[r][i] * tmp[r][j];
        if (v != pe.gram[i][j])
          throw std::runtime_error("invariant form: G0-invariance fails");
      }
  }
  return pe;
}

NormTraceGap norm_trace_gap(const OrderSpec& ord, const Element& x, const PositiveElement& a) {
  const int d = ord.dim_total;
  Element xs = involute(ord, x);
  Rat lhs = trace_Q(ord, mul(ord, mul(ord, xs, a.value), x)) / d;
  Rat nx = norm_Q(ord, x);
  Rat na = norm_Q(ord, a.value);
  NormTraceGap gap;
  gap.lhs = lhs;
  gap.rhs = std::pow(std::abs(to_double(nx)), 2.0 / d) * std::pow(to_double(na), 1.0 / d);
  // lhs >= rhs iff lhs^d >= N(x)^2 N(a), all exact
  gap.holds_exact = rat_pow(lhs, d) >= nx * nx * na;
  return gap;
}

}  // namespace divlat
