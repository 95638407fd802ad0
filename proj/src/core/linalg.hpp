#pragma once

// Exact dense linear algebra over arbitrary-precision integers and rationals.
//
// Conventions: vectors are rows unless stated otherwise; "row HNF" means the
// canonical upper-echelon Hermite form (positive pivots, entries above each
// pivot reduced into [0, pivot), zero rows dropped), so two integer row
// lattices are equal iff their row HNFs are identical matrices.

#include <cstddef>
#include <vector>

#include "error.hpp"
#include "ints.hpp"

namespace hermlat {

template <class T>
struct Mat {
  std::size_t r = 0, c = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : r(rows), c(cols), a(rows * cols, T(0)) {}

  T& operator()(std::size_t i, std::size_t j) { return a[i * c + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * c + j]; }

  bool operator==(const Mat& o) const { return r == o.r && c == o.c && a == o.a; }
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

template <class T>
Mat<T> identity(std::size_t n) {
  Mat<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
  return m;
}

template <class T>
Mat<T> transpose(const Mat<T>& m) {
  Mat<T> t(m.c, m.r);
  for (std::size_t i = 0; i < m.r; ++i)
    for (std::size_t j = 0; j < m.c; ++j) t(j, i) = m(i, j);
  return t;
}

template <class T>
Mat<T> mul(const Mat<T>& x, const Mat<T>& y) {
  require(x.c == y.r, Errc::shape_mismatch, "matrix product shape mismatch");
  Mat<T> z(x.r, y.c);
  for (std::size_t i = 0; i < x.r; ++i)
    for (std::size_t k = 0; k < x.c; ++k) {
      const T& v = x(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < y.c; ++j) z(i, j) += v * y(k, j);
    }
  return z;
}

template <class T>
std::vector<T> mul_vec(const Mat<T>& m, const std::vector<T>& v) {
  require(m.c == v.size(), Errc::shape_mismatch, "matrix-vector shape mismatch");
  std::vector<T> out(m.r, T(0));
  for (std::size_t i = 0; i < m.r; ++i)
    for (std::size_t j = 0; j < m.c; ++j) out[i] += m(i, j) * v[j];
  return out;
}

QMat to_rat(const IMat& m);

// Rational matrix with every entry integral, converted back.
IMat to_int(const QMat& m);

// Canonical row Hermite normal form (zero rows removed).
IMat hnf_rows(const IMat& m);

// Row HNF together with a unimodular transform: returns (H, U) with
// U * m = [H; 0] and U invertible over the integers. H has no zero rows.
std::pair<IMat, IMat> hnf_rows_transform(const IMat& m);

// Basis of { x in Z^rows(m) : x * m = 0 }, as rows. The result is the full
// kernel of a homomorphism, hence automatically a saturated (pure) sublattice.
IMat left_kernel(const IMat& m);

inline IMat right_kernel(const IMat& m) { return left_kernel(transpose(m)); }

Int det_bareiss(IMat m);

// Exact inverse; fails with shape_mismatch if singular.
QMat inverse_rat(QMat m);

// Inverse of a matrix with determinant +-1; result is integral.
IMat inverse_unimodular(const IMat& m);

// Given rows spanning a saturated sublattice of Z^n, returns an n x n
// unimodular matrix whose *last* s columns span the same sublattice
// (as column vectors). Used to split off the kernel of a degenerate form.
IMat complete_saturated_rows(const IMat& k, std::size_t n);

// True iff the symmetric rational matrix is positive semidefinite
// (decided exactly by symmetric elimination).
bool is_psd(QMat s);

// Cholesky data of a positive definite symmetric rational matrix:
// q(x) = sum_i d[i] * (x[i] + sum_{j>i} u(i,j) x[j])^2, u unitriangular.
struct Ldl {
  std::vector<Rat> d;
  QMat u;
};
Ldl ldl(QMat s);

// Rank of m reduced mod p (p < 2^31, prime).
int rank_mod_p(const IMat& m, i64 p);

}  // namespace hermlat
