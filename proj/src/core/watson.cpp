#include "watson.hpp"

#include <utility>

#include "plocal.hpp"

namespace hermlat {

namespace {

std::vector<Int> row_of(const IMat& m, std::size_t r) {
  std::vector<Int> out(m.c);
  for (std::size_t j = 0; j < m.c; ++j) out[j] = m(r, j);
  return out;
}

// Shared kernel computation: all v in L whose pairings H(v, g_j) land in the
// additive module spanned (in 1/omega coordinates) by (mod_l, 0) and
// (mod_b, mod_c).  The integer congruence is the special case (t,0),(0,t).
HermLattice congruence_sublattice(const HermLattice& l, const Int& mod_l, const Int& mod_b,
                                  const Int& mod_c) {
  const Field& f = l.field;
  std::size_t k = l.k;
  std::size_t n = 2 * k;  // Z-coordinates on the interleaved basis (g_r, w g_r)
  AlgInt w{Int(0), Int(1)};

  // Congruence matrix: an element with coordinates c lies in the sublattice
  // iff for every generator g_j both omega-coordinates of
  //   H(sum_i c_i e_i, g_j) = sum_i c_i * H(e_i, g_j)
  // land in the modulus, where e_{2r} = g_r and e_{2r+1} = w g_r.
  IMat m(n, n);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t r = 0; r < k; ++r) {
      AlgInt plain = l.h(r, j);
      AlgInt twisted = mul(f, w, plain);
      m(2 * j, 2 * r) = plain.a;
      m(2 * j + 1, 2 * r) = plain.b;
      m(2 * j, 2 * r + 1) = twisted.a;
      m(2 * j + 1, 2 * r + 1) = twisted.b;
    }

  // Solve M c == 0 modulo the modulus over Z: rows (c | d) of the left kernel
  // of the stacked matrix [M^T ; B] satisfy c M^T = -d B where B is the block
  // diagonal matrix holding the modulus basis per generator, and c -> (c, d)
  // is a bijection onto that kernel, so the projected rows are a basis.
  IMat stacked(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) stacked(i, j) = m(j, i);
  for (std::size_t j = 0; j < k; ++j) {
    stacked(n + 2 * j, 2 * j) = mod_l;
    stacked(n + 2 * j + 1, 2 * j) = mod_b;
    stacked(n + 2 * j + 1, 2 * j + 1) = mod_c;
  }
  IMat ker = left_kernel(stacked);
  require(ker.r == n, Errc::internal, "congruence kernel has unexpected rank");
  IMat basis(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis(i, j) = ker(i, j);
  basis = hnf_rows(basis);

  std::vector<AlgInt> gram(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Int> vi = row_of(basis, i);
    for (std::size_t j = 0; j < n; ++j) gram[i * n + j] = pair_elements(l, vi, row_of(basis, j));
  }
  return prune_generators(lattice_from_gram(f, n, std::move(gram)));
}

WatsonStep divide_out(const Int& t, const HermLattice& before, HermLattice sub) {
  Int a = content_gcd(sub);
  require(a >= 1, Errc::internal, "sublattice of a nonzero lattice is zero");
  for (AlgInt& e : sub.gram) {
    e.a /= a;
    e.b /= a;
  }
  HermLattice after = lattice_from_gram(before.field, sub.k, std::move(sub.gram));
  return WatsonStep{t, a, before, std::move(after)};
}

}  // namespace

HermLattice lambda_sub(const HermLattice& l, const Int& t) {
  require(t >= 1, Errc::bad_argument, "modulus must be a positive integer");
  if (t == 1) return l;
  return congruence_sublattice(l, t, Int(0), t);
}

HermLattice lambda_sub(const HermLattice& l, const Ideal& t) {
  require(t.l >= 1 && t.c >= 1, Errc::bad_argument, "modulus must be a nonzero ideal");
  if (ideal_is_unit(t)) return l;
  return congruence_sublattice(l, t.l, t.b, t.c);
}

WatsonStep watson(const HermLattice& l, const Int& t) {
  return divide_out(t, l, lambda_sub(l, t));
}

UniversalChain universal_chain(const HermLattice& l) {
  constexpr int cap = 16;
  UniversalChain chain;
  HermLattice cur = l;
  for (int step = 0; step <= cap; ++step) {
    QuadForm q = associate(cur);
    Int failing = 0;
    for (const Int& p : relevant_primes(q))
      if (!is_locally_universal(q, p)) {
        failing = p;
        break;
      }
    if (failing == 0) {
      chain.final_lattice = std::move(cur);
      return chain;
    }
    require(step < cap, Errc::chain_diverged, "transformation chain exceeded its step budget");
    // At a ramified prime whose exponent in the volume is odd, the integer
    // congruence can only swap the two units of the local diagonal back and
    // forth (each pass divides the volume by an even power of p, so the odd
    // exponent is stuck).  Refining the congruence by the prime ideal itself
    // is what lowers the exponent and removes the local obstruction.
    PrimeSplitting ps = split_prime(cur.field, to_i64(failing));
    bool refined = ps.type == SplitType::ramified &&
                   (ideal_valuation(cur.field, volume_ideal(cur), ps) / 2) % 2 == 1;
    WatsonStep ws = refined ? divide_out(failing, cur, lambda_sub(cur, ps.below))
                            : watson(cur, failing);
    cur = ws.after;
    chain.steps.push_back(std::move(ws));
  }
  fail(Errc::chain_diverged, "unreachable");
}

}  // namespace hermlat
