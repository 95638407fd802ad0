#pragma once

// Positive definite Hermitian lattices presented by formal Gram matrices.
//
// A lattice is the module generated by g_1..g_k over the ring of integers,
// carrying the Hermitian form recorded by the k x k Gram matrix
// H(g_i, g_j) (linear in the first argument, conjugate-linear in the
// second). The matrix may be singular: then the generators satisfy
// relations and the module has rank < k. Every computation funnels
// through the integral realization: the Z-module Z^{2k} on the
// interleaved basis (g_1, w g_1, g_2, w g_2, ...) with the symmetric
// bilinear form B = Tr(H)/2 and the multiplication-by-w matrix J.

#include <optional>
#include <string>
#include <vector>

#include "numfield.hpp"

namespace hermlat {

struct HermLattice {
  Field field;
  std::size_t k = 0;          // number of generators
  std::vector<AlgInt> gram;   // k*k row-major: H(g_i, g_j)

  const AlgInt& h(std::size_t i, std::size_t j) const { return gram[i * k + j]; }
  AlgInt& h(std::size_t i, std::size_t j) { return gram[i * k + j]; }
};

// Validates shape, conjugate symmetry, nonnegative integer diagonal and
// positive semidefiniteness of the realized form.
HermLattice lattice_from_gram(const Field& f, std::size_t k, std::vector<AlgInt> entries);

// Convenience constructors for the common presentations.
HermLattice lattice_diag(const Field& f, const std::vector<Int>& diag);
HermLattice lattice_binary(const Field& f, const Int& a, const AlgInt& h, const Int& b);

struct ZRealization {
  QMat b;  // 2k x 2k symmetric, 2*b integral, b(x,x) = H(x,x)
  IMat j;  // multiplication by w: j^2 = tau*j - nu
};

ZRealization realize(const HermLattice& l);

// Inverse of realize: recovers a Hermitian lattice from (b, j). When j is in
// the interleaved block shape the generator pairing is undone exactly;
// otherwise every basis vector becomes a generator.
HermLattice abstract_lattice(const Field& f, const QMat& b, const IMat& j);

// Rank of the lattice over the field (half the Z-rank of the realization).
std::size_t rank_of(const HermLattice& l);

// Integer relation rows among the interleaved generators (left kernel of 2B).
IMat relations(const HermLattice& l);

// Hermitian pairing of two module elements given by coordinates in Z^{2k}.
AlgInt pair_elements(const HermLattice& l, const std::vector<Int>& x, const std::vector<Int>& y);

// Ideal generated by all H(x, y): the span of the Gram entries.
Ideal scale_ideal(const HermLattice& l);

// Ideal generated by all H(x, x); always generated by a rational integer.
Ideal norm_ideal(const HermLattice& l);
Int norm_ideal_gen(const HermLattice& l);

bool is_normal(const HermLattice& l);

// Determinantal ideal of order rank(L): generated by all maximal minors of
// the Gram matrix. For a free lattice this is (det of a basis Gram).
Ideal volume_ideal(const HermLattice& l);

// Same lattice with the form multiplied by a positive integer.
HermLattice scale_by(const HermLattice& l, const Int& c);

HermLattice orth_sum(const HermLattice& a, const HermLattice& b);

// Drops generators that lie in the module spanned by the others.
HermLattice prune_generators(const HermLattice& l);

// Componentwise gcd over all Gram entries together; the lattice is
// primitive when this is 1 (the scale ideal is not divisible by any
// rational integer > 1).
Int content_gcd(const HermLattice& l);

// Minkowski reduction of a binary lattice: returns the canonical reduced
// free Gram [a, h; conj(h), b] with a <= b and |2 h_i| <= a componentwise.
// Throws not_binary when rank != 2 and not_free when no free basis exists.
HermLattice minkowski_reduce(const HermLattice& l);

// Isometry test for lattices of rank <= 2 (rank_too_large otherwise).
bool is_isometric(const HermLattice& a, const HermLattice& b);

// Formatted like [a, h, b] / <a, b> for binary forms, full matrix otherwise.
std::string to_string(const HermLattice& l);

}  // namespace hermlat
