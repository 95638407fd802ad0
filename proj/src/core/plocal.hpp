#pragma once

// p-adic representability of integers by positive semidefinite integral
// forms, decided by exact finite computation.
//
// The definite core is first split p-adically into an orthogonal sum of
// scaled unimodular constituents (diagonal entries for odd p; at p = 2 also
// the two binary blocks with odd cross coefficient, which take either every
// value or exactly the even-valuation ones). For odd p representability then
// follows a valuation descent over the constituent scales. At p = 2 each
// constituent's value set is a union of (valuation, unit class mod 8) cells,
// a family closed under sumsets, so the primitively represented residues mod
// 2^(2*emax+1) are computed cell by cell; here emax is the exponent of the
// largest elementary divisor of A = 2G at 2, and a primitive x always has
// v_2(Ax) <= emax, which makes that modulus sufficient (Newton lifting
// applies once v_2(q(x) - n) >= 2 v_2(Ax) + 1). Imprimitive solutions are
// handled by dividing n by p^2.

#include <vector>

#include "quadform.hpp"

namespace hermlat {

// Is n (any integer) represented by q over the p-adic integers?
bool local_represents(const QuadForm& q, const Int& n, const Int& p);

// The set of p-adic integers represented by q, tabulated by valuation and
// unit class. Unit classes: for odd p the two Legendre classes (index 0:
// residues, 1: non-residues); for p = 2 the classes 1, 3, 5, 7 mod 8.
// Row k >= stable_from repeats row k - 2; this periodicity is a theorem
// (the search state depends on n only mod p^stable_from) and is re-verified
// numerically over two extra periods at construction.
struct LocalConditionSet {
  Int p;
  std::size_t classes = 0;     // 2 for odd p, 4 for p = 2
  std::size_t stable_from = 0;
  std::vector<std::vector<bool>> rows;  // k = 0 .. stable_from + 1

  static std::size_t class_index(const Int& p, const Int& unit);

  bool contains(const Int& n) const;  // n >= 0; 0 is always contained
  bool all_true() const;
};

LocalConditionSet local_condition_set(const QuadForm& q, const Int& p);

// Rendered per valuation row: "p=2: v=0: u1,u5 -> ; u3,u7 !-> ..." with the
// periodic tail summarized once.
std::string to_string(const LocalConditionSet& c);

bool is_locally_universal(const QuadForm& q, const Int& p);

// Universal at every relevant prime (hence at all primes).
bool is_locally_universal(const QuadForm& q);
inline bool is_locally_universal(const HermLattice& l) {
  return is_locally_universal(associate(l));
}

// Primes where the form might miss a p-adic integer. Sound only when the
// definite core has rank >= 3: at every other prime a rank >= 3 unimodular
// block represents everything. Throws case_not_covered on smaller ranks.
std::vector<Int> relevant_primes(const QuadForm& q);

// Conjunction of the local conditions at every relevant prime: for a
// positive definite form this is exactly the set of nonnegative integers
// represented by some form in the genus.
struct GenConditions {
  std::vector<LocalConditionSet> local;
  bool contains(const Int& n) const;
};

GenConditions gen_conditions(const QuadForm& q);
inline GenConditions gen_conditions(const HermLattice& l) { return gen_conditions(associate(l)); }

bool gen_represents(const QuadForm& q, const Int& n);
inline bool gen_represents(const HermLattice& l, const Int& n) {
  return gen_represents(associate(l), n);
}

}  // namespace hermlat
