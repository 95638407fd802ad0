#pragma once

// Integral quadratic forms over Z, stored by the even symmetric matrix
// A = 2B so that q(x) = (x^T A x)/2 takes integer values. Forms may be
// degenerate (positive semidefinite); the definite core splits off the
// kernel by a unimodular change of basis.

#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "linalg.hpp"

namespace hermlat {

struct QuadForm {
  std::size_t n = 0;
  IMat a;  // n x n symmetric, even diagonal: q(x) = x^T a x / 2
};

// Validates shape, symmetry, even diagonal, positive semidefiniteness.
QuadForm form_from_matrix(IMat a);

// Diagonal form <d_1, ..., d_r>: q(x) = sum d_i x_i^2.
QuadForm form_diag(const std::vector<Int>& diag);

// The Z-quadratic form of the realization: q(x) = H(x, x) on Z^{2k}.
QuadForm associate(const HermLattice& l);

Int form_eval(const QuadForm& q, const std::vector<Int>& x);

// q composed with the integer substitution x = s * y (s is n x m).
QuadForm substitute(const QuadForm& q, const IMat& s);

// Checks q(s*y) == c * g(y) as polynomials.
bool check_identity(const QuadForm& q, const IMat& s, const Int& c, const QuadForm& g);

// Splits off the kernel: q(u * (y ; 0)) = core(y) with core positive
// definite of rank r; u is unimodular, basis maps core coordinates back
// into the original ones via the first r columns.
struct DefiniteCore {
  QuadForm core;   // r x r positive definite
  IMat basis;      // n x r: x = basis * y realizes core values in q
  IMat kernel;     // rows: basis of the kernel lattice of q
};
DefiniteCore definite_core(const QuadForm& q);

std::string to_string(const QuadForm& q);

}  // namespace hermlat
