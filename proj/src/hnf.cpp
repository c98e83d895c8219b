#include "divlat/lattice.hpp"

#include <stdexcept>

namespace divlat {

IntMat hnf(const IntMat& generators, int dim) {
  IntMat m = generators;
  for (const auto& row : m)
    if ((int)row.size() != dim) throw std::invalid_argument("hnf: row length mismatch");

  int row = 0;
  for (int col = 0; col < dim; ++col) {
    // eliminate below by gcd steps; smallest nonzero entry is the pivot
    while (true) {
      int piv = -1;
      for (int r = row; r < (int)m.size(); ++r) {
        if (m[r][col] == 0) continue;
        if (piv < 0 || mpz_cmpabs(m[r][col].get_mpz_t(), m[piv][col].get_mpz_t()) < 0) piv = r;
      }
      if (piv < 0) throw std::invalid_argument("hnf: generators not full rank");
      std::swap(m[piv], m[row]);
      if (m[row][col] < 0)
        for (int j = 0; j < dim; ++j) m[row][j] = -m[row][j];
      bool clean = true;
      for (int r = row + 1; r < (int)m.size(); ++r) {
        if (m[r][col] == 0) continue;
        Int q = floor_div(m[r][col], m[row][col]);
        if (q != 0)
          for (int j = 0; j < dim; ++j) m[r][j] -= q * m[row][j];
        if (m[r][col] != 0) clean = false;
      }
      if (clean) break;
      // a nonzero remainder below becomes the new, smaller pivot next sweep
    }
    // reduce entries above the pivot
    for (int r = 0; r < row; ++r) {
      Int q = floor_div(m[r][col], m[row][col]);
      if (q != 0)
        for (int j = 0; j < dim; ++j) m[r][j] -= q * m[row][j];
    }
    ++row;
    if (row == dim) break;
  }
  if (row != dim) throw std::invalid_argument("hnf: generators not full rank");
  m.resize(dim);
  return m;
}

bool hnf_contains(const IntMat& H, const IntVec& v) {
  const int dim = (int)H.size();
  IntVec r = v;
  for (int col = 0; col < dim; ++col) {
    if (r[col] == 0) continue;
    if (r[col] % H[col][col] != 0) return false;
    Int q = r[col] / H[col][col];
    for (int j = col; j < dim; ++j) r[j] -= q * H[col][j];
  }
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

std::string basis_to_text(const IntMat& basis) {
  std::string out;
  for (const auto& row : basis) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out += row[j].get_str();
    }
    out += '\n';
  }
  return out;
}

IntMat basis_from_text(const std::string& text) {
  IntMat rows;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    IntVec row;
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && line[i] == ' ') ++i;
      size_t j = i;
      while (j < line.size() && line[j] != ' ') ++j;
      if (j > i) row.emplace_back(line.substr(i, j - i));
      i = j;
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace divlat
