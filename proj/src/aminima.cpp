#include "divlat/aminima.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace divlat {

RealElement real_from_element(const Element& x) {
  RealElement r;
  r.coords.reserve(x.coords.size());
  for (const auto& c : x.coords) r.coords.push_back(to_double(c));
  return r;
}

RealElement real_mul(const OrderSpec& ord, const RealElement& x, const RealElement& y) {
  const int N = ord.dim_total;
  RealElement z;
  z.coords.assign(N, 0.0);
  for (int i = 0; i < N; ++i) {
    if (x.coords[i] == 0.0) continue;
    for (int j = 0; j < N; ++j) {
      if (y.coords[j] == 0.0) continue;
      double c = x.coords[i] * y.coords[j];
      const auto& row = ord.structure_constants[i][j];
      for (int k = 0; k < N; ++k)
        if (row[k] != 0) z.coords[k] += c * row[k];
    }
  }
  return z;
}

RealElement real_involute(const OrderSpec& ord, const RealElement& x) {
  const int N = ord.dim_total;
  RealElement z;
  z.coords.assign(N, 0.0);
  for (int j = 0; j < N; ++j) {
    if (x.coords[j] == 0.0) continue;
    for (int i = 0; i < N; ++i)
      if (ord.involution[i][j] != 0) z.coords[i] += x.coords[j] * ord.involution[i][j];
  }
  return z;
}

double real_trace(const OrderSpec& ord, const RealElement& x) {
  const int N = ord.dim_total;
  double t = 0.0;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      long c = ord.structure_constants[i][j][j];
      if (c != 0) t += x.coords[i] * c;
    }
  return t;
}

RealElement real_unity(const OrderSpec& ord) {
  RealElement r;
  r.coords.assign(ord.dim_total, 0.0);
  for (int i = 0; i < ord.dim_total; ++i) r.coords[i] = to_double(Rat(ord.unity[i]));
  return r;
}

namespace {

Eigen::MatrixXd left_regular(const OrderSpec& ord, const RealElement& x) {
  const int N = ord.dim_total;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N, N);
  for (int j = 0; j < N; ++j) {
    RealElement ej;
    ej.coords.assign(N, 0.0);
    ej.coords[j] = 1.0;
    RealElement col = real_mul(ord, x, ej);
    for (int i = 0; i < N; ++i) m(i, j) = col.coords[i];
  }
  return m;
}

Eigen::VectorXd to_vec(const RealElement& x) {
  Eigen::VectorXd v(x.coords.size());
  for (size_t i = 0; i < x.coords.size(); ++i) v(i) = x.coords[i];
  return v;
}

RealElement from_vec(const Eigen::VectorXd& v) {
  RealElement r;
  r.coords.assign(v.size(), 0.0);
  for (int i = 0; i < v.size(); ++i) r.coords[i] = v(i);
  return r;
}

}  // namespace

RealElement real_inverse(const OrderSpec& ord, const RealElement& x) {
  Eigen::MatrixXd L = left_regular(ord, x);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(L);
  if (!lu.isInvertible())
    throw std::domain_error("real_inverse: numerically singular element");
  Eigen::VectorXd one = to_vec(real_unity(ord));
  return from_vec(lu.solve(one));
}

AVector avector_from_coords(const OrderSpec& ord, int t, const std::vector<double>& flat) {
  const int N = ord.dim_total;
  if ((int)flat.size() != N * t) throw std::invalid_argument("avector: length mismatch");
  AVector v;
  v.parts.assign(t, RealElement{});
  for (int s = 0; s < t; ++s)
    v.parts[s].coords.assign(flat.begin() + s * N, flat.begin() + (s + 1) * N);
  return v;
}

AVector avector_from_int_coords(const OrderSpec& ord, int t, const IntVec& coords) {
  std::vector<double> flat(coords.size());
  for (size_t i = 0; i < coords.size(); ++i) flat[i] = to_double(Rat(coords[i]));
  return avector_from_coords(ord, t, flat);
}

std::vector<double> avector_flatten(const AVector& v) {
  std::vector<double> flat;
  for (const auto& p : v.parts) flat.insert(flat.end(), p.coords.begin(), p.coords.end());
  return flat;
}

RealElement a_inner(const OrderSpec& ord, const AVector& x, const AVector& y,
                    const RealElement& a) {
  if (x.parts.size() != y.parts.size()) throw std::invalid_argument("a_inner: shape mismatch");
  RealElement acc;
  acc.coords.assign(ord.dim_total, 0.0);
  for (size_t i = 0; i < x.parts.size(); ++i) {
    RealElement term =
        real_mul(ord, real_mul(ord, x.parts[i], a), real_involute(ord, y.parts[i]));
    for (int k = 0; k < ord.dim_total; ++k) acc.coords[k] += term.coords[k];
  }
  return acc;
}

namespace {

AVector scale_avector(const OrderSpec& ord, const RealElement& alpha, const AVector& u) {
  AVector out;
  out.parts.reserve(u.parts.size());
  for (const auto& p : u.parts) out.parts.push_back(real_mul(ord, alpha, p));
  return out;
}

AVector sub_avector(const AVector& x, const AVector& y) {
  AVector out = x;
  for (size_t i = 0; i < out.parts.size(); ++i)
    for (size_t k = 0; k < out.parts[i].coords.size(); ++k)
      out.parts[i].coords[k] -= y.parts[i].coords[k];
  return out;
}

bool is_zero_avector(const AVector& v, double tol) {
  for (const auto& p : v.parts)
    for (double c : p.coords)
      if (std::abs(c) > tol) return false;
  return true;
}

}  // namespace

AVector project(const OrderSpec& ord, const AVector& u, const AVector& v,
                const RealElement& a) {
  if (is_zero_avector(u, 0.0)) {
    AVector zero = u;
    return zero;
  }
  RealElement uu = a_inner(ord, u, u, a);
  // condition check via the left-regular matrix
  Eigen::MatrixXd L = left_regular(ord, uu);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(L);
  double cond = svd.singularValues()(0) /
                svd.singularValues()(svd.singularValues().size() - 1);
  if (!std::isfinite(cond) || cond > 1e12)
    throw std::domain_error("project: <u,u> numerically singular");
  RealElement vu = a_inner(ord, v, u, a);
  RealElement alpha = real_mul(ord, vu, real_inverse(ord, uu));
  return scale_avector(ord, alpha, u);
}

std::vector<AVector> a_gram_schmidt(const OrderSpec& ord, const std::vector<AVector>& vs,
                                    const RealElement& a) {
  std::vector<AVector> raw;
  for (const auto& v : vs) {
    AVector x = v;
    for (const auto& prev : raw) x = sub_avector(x, project(ord, prev, x, a));
    if (is_zero_avector(x, 1e-9))
      throw std::domain_error("a_gram_schmidt: dependent input detected");
    raw.push_back(std::move(x));
  }
  // normalize: b with b^* b = <x,x>^{-1}; b = principal inverse square root
  std::vector<AVector> out;
  for (const auto& x : raw) {
    RealElement s = a_inner(ord, x, x, a);
    Eigen::MatrixXd L = left_regular(ord, s);
    // Denman-Beavers iteration for the matrix square root of L (positive spectrum)
    Eigen::MatrixXd X = L, Y = Eigen::MatrixXd::Identity(L.rows(), L.cols());
    for (int it = 0; it < 60; ++it) {
      Eigen::MatrixXd Xi = X.inverse(), Yi = Y.inverse();
      Eigen::MatrixXd Xn = 0.5 * (X + Yi), Yn = 0.5 * (Y + Xi);
      double delta = (Xn - X).norm();
      X = Xn;
      Y = Yn;
      if (delta < 1e-14 * (1.0 + X.norm())) break;
    }
    // X ~ sqrt(L); b has left-regular matrix X^{-1}
    Eigen::VectorXd b_coords = X.inverse() * to_vec(real_unity(ord));
    RealElement b = from_vec(b_coords);
    out.push_back(scale_avector(ord, b, x));
  }
  return out;
}

namespace {

// Row echelon accumulator over Q for exact span membership tests.
struct SpanEchelon {
  RatMat rows;            // reduced rows, each with a leading pivot column
  std::vector<int> lead;

  // reduces v against the stored rows; returns the remainder
  RatVec reduce(RatVec v) const {
    for (size_t r = 0; r < rows.size(); ++r) {
      int c = lead[r];
      if (v[c] == 0) continue;
      Rat f = v[c] / rows[r][c];
      for (size_t j = c; j < v.size(); ++j) v[j] -= f * rows[r][j];
    }
    return v;
  }
  bool contains(const RatVec& v) const {
    RatVec r = reduce(v);
    for (const auto& x : r)
      if (x != 0) return false;
    return true;
  }
  void insert(const RatVec& v) {
    RatVec r = reduce(v);
    for (size_t c = 0; c < r.size(); ++c)
      if (r[c] != 0) {
        rows.push_back(r);
        lead.push_back((int)c);
        return;
      }
  }
};

}  // namespace

MinimaProfile successive_minima(const OrderSpec& ord, const LatticeInstance& inst,
                                size_t enum_cap) {
  const int N = ord.dim_total;
  const int t = inst.t;

  // LLL-reduce for enumeration
  Int scale(1);
  for (const auto& row : inst.gram)
    for (const auto& v : row) scale = lcm(scale, v.get_den());
  IntMat gi(inst.dim, IntVec(inst.dim));
  for (int i = 0; i < inst.dim; ++i)
    for (int j = 0; j < inst.dim; ++j) gi[i][j] = Rat(inst.gram[i][j] * scale).get_num();
  LllResult red = lll_reduce(gi);
  RatMat g(inst.dim, RatVec(inst.dim));
  for (int i = 0; i < inst.dim; ++i)
    for (int j = 0; j < inst.dim; ++j) g[i][j] = Rat(red.gram[i][j]);

  Rat bound = g[0][0];
  for (int i = 1; i < inst.dim; ++i)
    if (g[i][i] < bound) bound = g[i][i];

  // coefficient vector w.r.t. reduced basis -> O^t coordinates
  auto to_coords = [&](const IntVec& coeffs) {
    IntVec mid(inst.dim, Int(0));
    for (int i = 0; i < inst.dim; ++i) {
      if (coeffs[i] == 0) continue;
      for (int j = 0; j < inst.dim; ++j) mid[j] += coeffs[i] * red.transform[i][j];
    }
    IntVec v(inst.dim, Int(0));
    for (int i = 0; i < inst.dim; ++i) {
      if (mid[i] == 0) continue;
      for (int j = 0; j < inst.dim; ++j) v[j] += mid[i] * inst.basis[i][j];
    }
    return v;
  };

  while (true) {
    // bound is in units of the scaled integer gram
    std::vector<std::pair<Rat, IntVec>> pts;
    enumerate_short_vectors(g, bound, [&](const IntVec& coeffs, const Rat& norm) {
      if (pts.size() >= enum_cap) throw std::runtime_error("successive_minima: enumeration cap");
      pts.emplace_back(norm / scale, coeffs);
      return true;
    });
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    MinimaProfile prof;
    SpanEchelon span;
    for (const auto& [norm, coeffs] : pts) {
      IntVec v = to_coords(coeffs);
      RatVec vr(v.size());
      for (size_t i = 0; i < v.size(); ++i) vr[i] = Rat(v[i]);
      if (span.contains(vr)) continue;
      prof.minima_sq.push_back(norm);
      prof.minima.push_back(std::sqrt(to_double(norm)));
      prof.witnesses.push_back(v);
      // extend the span by e_b * v for every algebra basis element e_b
      for (int b = 0; b < N; ++b) {
        RatVec row(inst.dim, Rat(0));
        for (int s = 0; s < t; ++s) {
          Element coord;
          coord.coords.assign(N, Rat(0));
          for (int c = 0; c < N; ++c) coord.coords[c] = Rat(v[s * N + c]);
          Element eb;
          eb.coords.assign(N, Rat(0));
          eb.coords[b] = 1;
          Element prod = mul(ord, eb, coord);
          for (int c = 0; c < N; ++c) row[s * N + c] = prod.coords[c];
        }
        span.insert(row);
      }
      if ((int)prof.witnesses.size() == t) return prof;
    }
    bound *= 4;  // not enough independent vectors below the bound yet
  }
}

double double_svp(const std::vector<std::vector<double>>& gram) {
  const int n = (int)gram.size();
  // Cholesky-style GSO
  std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
  std::vector<double> bstar(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      double v = gram[i][j];
      for (int l = 0; l < j; ++l) v -= mu[j][l] * mu[i][l] * bstar[l];
      mu[i][j] = v / bstar[j];
    }
    double v = gram[i][i];
    for (int l = 0; l < i; ++l) v -= mu[i][l] * mu[i][l] * bstar[l];
    if (v <= 0) throw std::domain_error("double_svp: form not positive definite");
    bstar[i] = v;
  }
  double best = gram[0][0];
  for (int i = 1; i < n; ++i) best = std::min(best, gram[i][i]);

  std::vector<double> x(n, 0.0);
  std::function<void(int, double, bool)> descend = [&](int level, double used, bool zero_above) {
    if (level < 0) {
      if (!zero_above && used > 0 && used < best) best = used;
      return;
    }
    double center = 0.0;
    for (int j = level + 1; j < n; ++j) center -= mu[j][level] * x[j];
    double b = bstar[level];
    if (zero_above) {
      for (double v = 0.0;; v += 1.0) {
        double term = used + v * v * b;
        if (term > best * (1.0 + 1e-12)) break;
        x[level] = v;
        descend(level - 1, term, v == 0.0);
      }
      x[level] = 0.0;
      return;
    }
    double v0 = std::round(center);
    for (int dir = 0; dir < 2; ++dir) {
      double v = dir == 0 ? v0 : v0 - 1.0;
      double step = dir == 0 ? 1.0 : -1.0;
      while (true) {
        double dv = v - center;
        double term = used + dv * dv * b;
        if (term > best * (1.0 + 1e-12)) break;
        x[level] = v;
        descend(level - 1, term, false);
        v += step;
      }
    }
    x[level] = 0.0;
  };
  descend(n - 1, 0.0, true);
  return best;
}

std::string balanced_basis_text(const BalanceResult& bal) {
  std::string out;
  char buf[40];
  for (const auto& row : bal.basis) {
    for (size_t j = 0; j < row.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.15g", row[j]);
      if (j) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

BalanceResult balance(const OrderSpec& ord, const RealElement& a,
                      const LatticeInstance& inst, const MinimaProfile& profile) {
  const int t = inst.t;
  const int d = inst.dim;
  if ((int)profile.witnesses.size() != t)
    throw std::invalid_argument("balance: profile rank must equal t");

  std::vector<AVector> ws;
  for (const auto& w : profile.witnesses)
    ws.push_back(avector_from_int_coords(ord, t, w));
  std::vector<AVector> xs = a_gram_schmidt(ord, ws, a);

  double geo = 1.0;
  for (double l : profile.minima) geo *= l;
  geo = std::pow(geo, 1.0 / t);

  BalanceResult res;
  res.geo_mean = geo;
  res.basis.assign(d, std::vector<double>(d, 0.0));
  for (int r = 0; r < d; ++r) {
    AVector y = avector_from_int_coords(ord, t, inst.basis[r]);
    // decompose y = sum a_j x_j with a_j = <y, x_j>_A, then rescale each slot
    AVector acc = avector_from_coords(ord, t, std::vector<double>(d, 0.0));
    for (int j = 0; j < t; ++j) {
      RealElement aj = a_inner(ord, y, xs[j], a);
      for (auto& c : aj.coords) c *= geo / profile.minima[j];
      AVector term = scale_avector(ord, aj, xs[j]);
      for (int s = 0; s < t; ++s)
        for (int c = 0; c < ord.dim_total; ++c)
          acc.parts[s].coords[c] += term.parts[s].coords[c];
    }
    res.basis[r] = avector_flatten(acc);
  }

  // covolume before/after in the q_a metric
  Eigen::MatrixXd order_g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) order_g(i, j) = to_double(inst.order_gram[i][j]);
  Eigen::MatrixXd bin(d, d), bout(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      bin(i, j) = to_double(Rat(inst.basis[i][j]));
      bout(i, j) = res.basis[i][j];
    }
  Eigen::MatrixXd gin = bin * order_g * bin.transpose();
  Eigen::MatrixXd gout = bout * order_g * bout.transpose();
  res.covolume_in = std::sqrt(gin.determinant());
  res.covolume_out = std::sqrt(gout.determinant());

  std::vector<std::vector<double>> gout_v(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gout_v[i][j] = gout(i, j);
  res.lambda1 = std::sqrt(double_svp(gout_v));
  return res;
}

}  // namespace divlat
