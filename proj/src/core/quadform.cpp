#include "quadform.hpp"

#include <sstream>

namespace hermlat {

QuadForm form_from_matrix(IMat a) {
  require(a.r == a.c, Errc::shape_mismatch, "form matrix must be square");
  for (std::size_t i = 0; i < a.r; ++i) {
    require(a(i, i) % 2 == 0, Errc::not_hermitian, "form matrix needs an even diagonal");
    for (std::size_t j = i + 1; j < a.c; ++j)
      require(a(i, j) == a(j, i), Errc::not_hermitian, "form matrix must be symmetric");
  }
  QMat half = to_rat(a);
  for (auto& v : half.a) v /= 2;
  require(is_psd(half), Errc::indefinite_form, "form is not positive semidefinite");
  QuadForm q;
  q.n = a.r;
  q.a = std::move(a);
  return q;
}

QuadForm form_diag(const std::vector<Int>& diag) {
  IMat a(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) a(i, i) = 2 * diag[i];
  return form_from_matrix(std::move(a));
}

QuadForm associate(const HermLattice& l) {
  ZRealization z = realize(l);
  IMat a(z.b.r, z.b.c);
  for (std::size_t i = 0; i < z.b.a.size(); ++i) {
    Rat doubled = z.b.a[i] * 2;
    require(den(doubled) == 1, Errc::internal, "realized form is not half-integral");
    a.a[i] = num(doubled);
  }
  QuadForm q;
  q.n = a.r;
  q.a = std::move(a);  // validation already done by the lattice constructor
  return q;
}

Int form_eval(const QuadForm& q, const std::vector<Int>& x) {
  require(x.size() == q.n, Errc::shape_mismatch, "evaluation point has wrong dimension");
  Int acc = 0;
  for (std::size_t i = 0; i < q.n; ++i) {
    if (x[i] == 0) continue;
    acc += q.a(i, i) / 2 * x[i] * x[i];
    for (std::size_t j = i + 1; j < q.n; ++j) acc += q.a(i, j) * x[i] * x[j];
  }
  return acc;
}

QuadForm substitute(const QuadForm& q, const IMat& s) {
  require(s.r == q.n, Errc::shape_mismatch, "substitution matrix has wrong height");
  IMat st = transpose(s);
  IMat a = mul(st, mul(q.a, s));
  return form_from_matrix(std::move(a));
}

bool check_identity(const QuadForm& q, const IMat& s, const Int& c, const QuadForm& g) {
  if (s.r != q.n || s.c != g.n) return false;
  IMat lhs = mul(transpose(s), mul(q.a, s));
  IMat rhs = g.a;
  for (auto& v : rhs.a) v *= c;
  return lhs == rhs;
}

DefiniteCore definite_core(const QuadForm& q) {
  DefiniteCore out;
  out.kernel = left_kernel(q.a);  // x * a = 0 iff a * x^T = 0 by symmetry
  std::size_t s = out.kernel.r, n = q.n, r = n - s;
  IMat u = complete_saturated_rows(out.kernel, n);
  IMat full = mul(transpose(u), mul(q.a, u));
  QuadForm core;
  core.n = r;
  core.a = IMat(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) core.a(i, j) = full(i, j);
  // The trailing rows/columns must have vanished: the last s columns of u
  // span the kernel.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = r; j < n; ++j)
      require(full(i, j) == 0 && full(j, i) == 0, Errc::internal, "kernel split failed");
  out.core = std::move(core);
  out.basis = IMat(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) out.basis(i, j) = u(i, j);
  return out;
}

std::string to_string(const QuadForm& q) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < q.n; ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < q.n; ++j) {
      if (j) os << ",";
      os << q.a(i, j).str();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace hermlat
