#include "linalg.hpp"

#include <algorithm>

namespace hermlat {

QMat to_rat(const IMat& m) {
  QMat q(m.r, m.c);
  for (std::size_t i = 0; i < m.a.size(); ++i) q.a[i] = Rat(m.a[i]);
  return q;
}

IMat to_int(const QMat& m) {
  IMat z(m.r, m.c);
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    require(den(m.a[i]) == 1, Errc::internal, "matrix entry not integral");
    z.a[i] = num(m.a[i]);
  }
  return z;
}

namespace {

// Shared row-echelon driver. Reduces m in place; mirrors every row operation
// onto *u when u is non-null. Returns the pivot column of each pivot row.
std::vector<std::size_t> echelonize(IMat& m, IMat* u) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.c && row < m.r; ++col) {
    // Euclid over the rows at and below `row` until one entry divides the rest.
    while (true) {
      std::size_t best = m.r;
      for (std::size_t i = row; i < m.r; ++i)
        if (m(i, col) != 0 && (best == m.r || abs(m(i, col)) < abs(m(best, col)))) best = i;
      if (best == m.r) break;  // column is zero below `row`
      if (best != row) {
        for (std::size_t j = 0; j < m.c; ++j) std::swap(m(row, j), m(best, j));
        if (u)
          for (std::size_t j = 0; j < u->c; ++j) std::swap((*u)(row, j), (*u)(best, j));
      }
      bool clean = true;
      for (std::size_t i = row + 1; i < m.r; ++i) {
        if (m(i, col) == 0) continue;
        Int q = fdiv(m(i, col), m(row, col));
        if (q != 0) {
          for (std::size_t j = 0; j < m.c; ++j) m(i, j) -= q * m(row, j);
          if (u)
            for (std::size_t j = 0; j < u->c; ++j) (*u)(i, j) -= q * (*u)(row, j);
        }
        if (m(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m(row, col) == 0) continue;
    if (m(row, col) < 0) {
      for (std::size_t j = 0; j < m.c; ++j) m(row, j) = -m(row, j);
      if (u)
        for (std::size_t j = 0; j < u->c; ++j) (*u)(row, j) = -(*u)(row, j);
    }
    pivots.push_back(col);
    row++;
  }
  // Reduce entries above each pivot into [0, pivot).
  for (std::size_t k = pivots.size(); k-- > 0;) {
    std::size_t col = pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      Int q = fdiv(m(i, col), m(k, col));
      if (q == 0) continue;
      for (std::size_t j = 0; j < m.c; ++j) m(i, j) -= q * m(k, j);
      if (u)
        for (std::size_t j = 0; j < u->c; ++j) (*u)(i, j) -= q * (*u)(k, j);
    }
  }
  return pivots;
}

}  // namespace

IMat hnf_rows(const IMat& m) {
  IMat w = m;
  auto pivots = echelonize(w, nullptr);
  IMat h(pivots.size(), m.c);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < m.c; ++j) h(i, j) = w(i, j);
  return h;
}

std::pair<IMat, IMat> hnf_rows_transform(const IMat& m) {
  IMat w = m;
  IMat u = identity<Int>(m.r);
  auto pivots = echelonize(w, &u);
  IMat h(pivots.size(), m.c);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < m.c; ++j) h(i, j) = w(i, j);
  return {h, u};
}

IMat left_kernel(const IMat& m) {
  // Echelonize m while tracking the transform u; once the first `rank` rows
  // carry the pivots, the remaining rows of u left-multiply m to zero.
  IMat left = m;
  IMat u = identity<Int>(m.r);
  auto pivots = echelonize(left, &u);
  std::size_t rank = pivots.size();
  IMat k(m.r - rank, m.r);
  for (std::size_t i = rank; i < m.r; ++i)
    for (std::size_t j = 0; j < m.r; ++j) k(i - rank, j) = u(i, j);
  return hnf_rows(k);
}

Int det_bareiss(IMat m) {
  require(m.r == m.c, Errc::shape_mismatch, "determinant of non-square matrix");
  std::size_t n = m.r;
  if (n == 0) return 1;
  Int denom = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && m(s, k) == 0) ++s;
      if (s == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(s, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = t / denom;  // exact by Bareiss
      }
    denom = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

QMat inverse_rat(QMat m) {
  require(m.r == m.c, Errc::shape_mismatch, "inverse of non-square matrix");
  std::size_t n = m.r;
  QMat inv = identity<Rat>(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    require(piv < n, Errc::shape_mismatch, "matrix is singular");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    Rat d = m(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m(i, col) == 0) continue;
      Rat f = m(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

IMat inverse_unimodular(const IMat& m) {
  IMat inv = to_int(inverse_rat(to_rat(m)));
  return inv;
}

IMat complete_saturated_rows(const IMat& k, std::size_t n) {
  require(k.c == n || k.r == 0, Errc::shape_mismatch, "kernel row length mismatch");
  std::size_t s = k.r;
  if (s == 0) return identity<Int>(n);
  // Row-reduce the n x s matrix of kernel columns with a transform:
  // u * k^T = [H0; 0] with H0 unimodular (saturation), so the first s columns
  // of u^{-1} span the same column lattice as k^T. Move them last.
  IMat kt = transpose(k);
  auto [h, u] = hnf_rows_transform(kt);
  require(h.r == s, Errc::internal, "kernel rows are not independent");
  IMat uinv = inverse_unimodular(u);
  IMat out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n - s; ++j) out(i, j) = uinv(i, s + j);
    for (std::size_t j = 0; j < s; ++j) out(i, n - s + j) = uinv(i, j);
  }
  return out;
}

bool is_psd(QMat s) {
  require(s.r == s.c, Errc::shape_mismatch, "psd test needs a square matrix");
  std::size_t n = s.r;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (s(i, j) != s(j, i)) return false;
  // Symmetric elimination: a psd matrix with a zero diagonal entry must have
  // the whole row zero; a negative diagonal entry settles the matter.
  for (std::size_t k = 0; k < n; ++k) {
    // Find a positive pivot among the remaining diagonal.
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (s(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // Entire remaining diagonal is zero: psd iff the remaining block is zero.
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (s(i, j) != 0) return false;
      return true;
    }
    if (s(piv, piv) < 0) return false;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(s(piv, j), s(k, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(s(i, piv), s(i, k));
    }
    // Row-wise elimination keeps the trailing block symmetric on its own:
    // the (i,j) and (j,i) updates apply the same symmetric formula.
    for (std::size_t i = k + 1; i < n; ++i) {
      if (s(i, k) == 0) continue;
      Rat f = s(i, k) / s(k, k);
      for (std::size_t j = k; j < n; ++j) s(i, j) -= f * s(k, j);
    }
    // Rows with zero diagonal but nonzero off-diagonal make the form indefinite.
    for (std::size_t i = k + 1; i < n; ++i)
      if (s(i, i) == 0)
        for (std::size_t j = k + 1; j < n; ++j)
          if (s(i, j) != 0) return false;
  }
  return true;
}

Ldl ldl(QMat s) {
  require(s.r == s.c, Errc::shape_mismatch, "cholesky needs a square matrix");
  std::size_t n = s.r;
  Ldl out;
  out.d.assign(n, Rat(0));
  out.u = identity<Rat>(n);
  for (std::size_t k = 0; k < n; ++k) {
    require(s(k, k) > 0, Errc::not_positive_semidefinite,
            "cholesky pivot not positive: matrix is not positive definite");
    out.d[k] = s(k, k);
    for (std::size_t j = k + 1; j < n; ++j) out.u(k, j) = s(k, j) / s(k, k);
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) s(i, j) -= s(k, i) * s(k, j) / s(k, k);
  }
  return out;
}

int rank_mod_p(const IMat& m, i64 p) {
  std::size_t rows = m.r, cols = m.c;
  std::vector<std::vector<i64>> w(rows, std::vector<i64>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) w[i][j] = to_i64(mod_pos(m(i, j), p));
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && w[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(w[piv], w[row]);
    i64 inv = pow_mod64(w[row][col], static_cast<u64>(p - 2), p);
    for (std::size_t j = col; j < cols; ++j) w[row][j] = i128(w[row][j]) * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || w[i][col] == 0) continue;
      i64 f = w[i][col];
      for (std::size_t j = col; j < cols; ++j)
        w[i][j] = mod_pos64(w[i][j] - i128(f) * w[row][j] % p, p);
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace hermlat
