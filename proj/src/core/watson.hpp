#pragma once

// Transformations that shrink a Hermitian lattice toward local universality.
//
// For a positive integer t, the sublattice
//   Lambda_t(L) = { v in L : H(v, w) lies in t*o for every w in L }
// is an o-module between t*L and L. Dividing its form by the largest
// rational integer a that keeps the Gram integral gives the transformed
// lattice lambda_t(L) = Lambda_t(L)^(1/a). Applied repeatedly at primes
// where the completion misses some p-adic integer, the transformation
// reaches a locally universal lattice after finitely many steps.

#include <vector>

#include "lattice.hpp"

namespace hermlat {

struct WatsonStep {
  Int t;            // the modulus used for this step
  Int divisor_a;    // maximal integer divisor of the sublattice Gram
  HermLattice before;
  HermLattice after;  // Lambda_t(before) with its form divided by divisor_a
};

// The sublattice Lambda_t: all v with H(v, g_j) in t*o for every generator
// g_j, computed as an integer congruence kernel on the Z-realization and
// presented on a Z-generating set (automatically omega-stable).
HermLattice lambda_sub(const HermLattice& l, const Int& t);

// Same congruence kernel with an ideal modulus: all v with H(v, g_j) in the
// ideal for every generator. The integer overload is the principal case.
HermLattice lambda_sub(const HermLattice& l, const Ideal& t);

// One transformation step at modulus t.
WatsonStep watson(const HermLattice& l, const Int& t);

struct UniversalChain {
  std::vector<WatsonStep> steps;
  HermLattice final_lattice;  // passes is_locally_universal
};

// Greedy reduction: repeatedly apply watson at the smallest prime where the
// lattice is not locally universal, with t = p, until every relevant prime
// passes. At a ramified prime whose volume exponent is odd the integer step
// only swaps the two local units forever, so the step refines the congruence
// by the prime ideal itself; that is the move that lowers the exponent.
// Throws chain_diverged when the step budget (16) is exhausted.
UniversalChain universal_chain(const HermLattice& l);

}  // namespace hermlat
