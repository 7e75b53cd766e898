#pragma once

// Dense linear algebra over a finite field, on raw element representations.

#include <span>
#include <utility>
#include <vector>

#include "rrb/finite_field.hpp"

namespace rrb {

using FRep = GaloisField::Rep;
using FMatrix = std::vector<std::vector<FRep>>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(const GaloisField& f, FMatrix& a) {
  std::vector<int> pivots;
  const int rows = static_cast<int>(a.size());
  if (rows == 0) return pivots;
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    const FRep inv = f.inv(a[r][c]);
    for (int j = c; j < cols; ++j) a[r][j] = f.mul(a[r][j], inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const FRep factor = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] = f.sub(a[i][j], f.mul(factor, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(const GaloisField& f, FMatrix a) { return static_cast<int>(rref(f, a).size()); }

inline FRep det(const GaloisField& f, FMatrix a) {
  const int n = static_cast<int>(a.size());
  FRep d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(a[c], a[piv]);
      d = f.neg(d);
    }
    d = f.mul(d, a[c][c]);
    const FRep inv = f.inv(a[c][c]);
    for (int i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const FRep factor = f.mul(a[i][c], inv);
      for (int j = c; j < n; ++j) a[i][j] = f.sub(a[i][j], f.mul(factor, a[c][j]));
    }
  }
  return d;
}

/// Basis of {x : a x = 0}; `cols` is needed when a has no rows.
inline FMatrix kernel(const GaloisField& f, FMatrix a, int cols) {
  const auto pivots = rref(f, a);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  FMatrix basis;
  for (int freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<FRep> v(cols, 0);
    v[freec] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(a[r][freec]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solve a x = y; returns false when inconsistent.
inline bool solve(const GaloisField& f, const FMatrix& a, std::span<const FRep> y, std::vector<FRep>& x) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  FMatrix aug(rows);
  for (int i = 0; i < rows; ++i) {
    aug[i] = a[i];
    aug[i].push_back(y[i]);
  }
  const auto pivots = rref(f, aug);
  if (!pivots.empty() && pivots.back() == cols) return false;
  x.assign(cols, 0);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return true;
}

/// det[alpha_i^(p^j)], the Moore determinant; nonzero iff the alphas are
/// F_p-linearly independent.
inline FieldElement moore_det(std::span<const FieldElement> alpha) {
  require(!alpha.empty(), ErrorKind::InvalidArgument, "moore_det needs at least one element");
  const GaloisField& f = alpha[0].field();
  const int d = static_cast<int>(alpha.size());
  FMatrix m(d, std::vector<FRep>(d));
  for (int i = 0; i < d; ++i) {
    FRep x = alpha[i].rep();
    for (int j = 0; j < d; ++j, x = f.frob(x)) m[i][j] = x;
  }
  return {f, det(f, m)};
}

}  // namespace rrb
