#include <doctest.h>

#include "core/enumerate.hpp"
#include "core/plocal.hpp"
#include "core/watson.hpp"

#include "oracles.hpp"

using namespace hermlat;
using namespace hermlat::testing;

namespace {

HermLattice diag(i64 m, const std::vector<Int>& d) {
  return lattice_diag(Field::create(m), d);
}

// Sorted multiset of Gram diagonal entries after pruning, as a cheap
// presentation-independent fingerprint for diagonalizable lattices.
std::vector<Int> gram_entries(const HermLattice& l) {
  std::vector<Int> out;
  for (const AlgInt& e : l.gram) {
    out.push_back(e.a);
    out.push_back(e.b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("congruence sublattice on diagonal examples") {
  // <1,4> over m=1 at t=2: for v = x g1 + y g2 the pairings are
  // H(v,g1) = x and H(v,g2) = 4y, so the condition is x in 2o, y free:
  // generators 2g1, g2 with Gram diag(4,4).
  HermLattice sub = lambda_sub(diag(1, {1, 4}), 2);
  CHECK(rank_of(sub) == 2);
  HermLattice red = minkowski_reduce(sub);
  CHECK(red.h(0, 0).a == 4);
  CHECK(red.h(1, 1).a == 4);
  CHECK(red.h(0, 1).is_zero());

  // t=1 returns the lattice unchanged
  HermLattice l = diag(1, {1, 4});
  HermLattice same = lambda_sub(l, 1);
  CHECK(gram_entries(same) == gram_entries(l));

  // <1,9> over m=3 at t=3: 3g1 and g2 generate, Gram diag(9,9)
  HermLattice sub3 = minkowski_reduce(lambda_sub(diag(3, {1, 9}), 3));
  CHECK(sub3.h(0, 0).a == 9);
  CHECK(sub3.h(1, 1).a == 9);
  CHECK(sub3.h(0, 1).is_zero());
}

TEST_CASE("sublattice invariants: containment, index, omega-stability") {
  std::vector<std::pair<i64, std::vector<Int>>> cases = {
      {1, {1, 4}}, {1, {1, 12}}, {2, {1, 8}}, {3, {1, 9}}, {5, {1, 10}}, {7, {1, 14}}};
  for (const auto& [m, d] : cases) {
    HermLattice l = diag(m, d);
    for (Int t : {Int(2), Int(3), Int(5)}) {
      HermLattice sub = lambda_sub(l, t);
      CAPTURE(m);
      CAPTURE(t.str());

      // rank is preserved (t*L sits inside Lambda_t)
      CHECK(rank_of(sub) == rank_of(l));

      // volume(Lambda_t) divides into volume(L) with index a power of t:
      // norm ratio of the volume ideals is a power of t
      Ideal vl = volume_ideal(l), vs = volume_ideal(sub);
      CHECK(ideal_divides(l.field, vl, vs));  // vs subset vl
      Int ratio = ideal_norm(vs) / ideal_norm(vl);
      CHECK(ideal_norm(vs) % ideal_norm(vl) == 0);
      while (ratio % t == 0) ratio /= t;
      CHECK(ratio == 1);

      // every value of Lambda_t is a value of L (soft containment signal)
      ValueSet inner = Enumerator(associate(sub)).represented_set(200);
      ValueSet outer = Enumerator(associate(l)).represented_set(200);
      for (u64 v = 0; v <= 200; ++v)
        if (inner.test(v)) CHECK(outer.test(v));
    }
  }
}

TEST_CASE("watson step divides out the maximal integer") {
  WatsonStep s1 = watson(diag(1, {1, 4}), 2);
  CHECK(s1.divisor_a == 4);
  CHECK(is_isometric(s1.after, diag(1, {1, 1})));

  WatsonStep s2 = watson(diag(3, {1, 9}), 3);
  CHECK(s2.divisor_a == 9);
  CHECK(is_isometric(s2.after, diag(3, {1, 1})));

  WatsonStep s3 = watson(diag(1, {1, 12}), 2);
  CHECK(s3.divisor_a == 4);
  CHECK(is_isometric(s3.after, diag(1, {1, 3})));

  // trivial modulus: nothing changes up to isometry
  WatsonStep s4 = watson(diag(1, {1, 4}), 1);
  CHECK(s4.divisor_a == 1);
  CHECK(is_isometric(s4.after, diag(1, {1, 4})));
}

TEST_CASE("watson scaling law on represented sets") {
  // divisor_a * (values of after) = values of Lambda_t, numerically to a bound
  for (auto& [m, d, t] : std::vector<std::tuple<i64, std::vector<Int>, Int>>{
           {1, {1, 4}, 2}, {1, {1, 12}, 2}, {3, {1, 9}, 3}, {7, {1, 14}, 2}}) {
    HermLattice l = diag(m, d);
    HermLattice sub = lambda_sub(l, t);
    WatsonStep st = watson(l, t);
    u64 bound = 240;
    ValueSet of_sub = Enumerator(associate(sub)).represented_set(bound);
    u64 small = bound / static_cast<u64>(to_i64(st.divisor_a));
    ValueSet of_after = Enumerator(associate(st.after)).represented_set(small);
    for (u64 v = 0; v <= small; ++v) {
      CAPTURE(v);
      CHECK(of_after.test(v) == of_sub.test(v * static_cast<u64>(to_i64(st.divisor_a))));
    }
  }
}

TEST_CASE("universal chains on the worked examples") {
  // <1,12> over m=1: one step at 2 lands on <1,3>, which is universal
  UniversalChain c1 = universal_chain(diag(1, {1, 12}));
  REQUIRE(c1.steps.size() == 1);
  CHECK(c1.steps[0].t == 2);
  CHECK(is_isometric(c1.final_lattice, diag(1, {1, 3})));
  CHECK(is_locally_universal(c1.final_lattice));

  // <1,2> over m=19 is already locally universal: empty chain
  UniversalChain c2 = universal_chain(diag(19, {1, 2}));
  CHECK(c2.steps.empty());
  CHECK(is_isometric(c2.final_lattice, diag(19, {1, 2})));

  // <1,14> over m=7: 2 splits, so the norm form is already universal at 2 and
  // the only obstruction sits at the ramified prime 7 with odd exponent. One
  // refined step divides out 7 and lands on the universal lattice <1,2>.
  UniversalChain c3 = universal_chain(diag(7, {1, 14}));
  REQUIRE(c3.steps.size() == 1);
  CHECK(c3.steps[0].t == 7);
  CHECK(c3.steps[0].divisor_a == 7);
  CHECK(is_isometric(c3.final_lattice, diag(7, {1, 2})));
  CHECK(is_locally_universal(c3.final_lattice));

  // <1,3> over m=3 has the same shape of obstruction at 3; the refined step
  // lands on the universal lattice <1,1>.
  UniversalChain c4 = universal_chain(diag(3, {1, 3}));
  REQUIRE(c4.steps.size() == 1);
  CHECK(c4.steps[0].t == 3);
  CHECK(is_isometric(c4.final_lattice, diag(3, {1, 1})));
}

TEST_CASE("chains terminate quickly on assorted rank-2 lattices") {
  // Chains act on rank-2 lattices: a rank-1 module is never locally
  // universal at an inert or ramified prime, so it is excluded by design.
  Field f15 = Field::create(15);
  HermLattice s15 = lattice_binary(f15, 2, AlgInt{0, 1}, 2);
  std::vector<HermLattice> pool = {
      diag(1, {1, 16}),
      diag(2, {1, 32}),
      diag(3, {1, 36}),
      diag(5, {1, 40}),
      diag(11, {1, 44}),
      lattice_binary(Field::create(1), 3, AlgInt{-1, 1}, 6),
      orth_sum(s15, lattice_diag(f15, {Int(9)})),
      orth_sum(lattice_binary(Field::create(6), 2, AlgInt{0, 1}, 3),
               scale_by(lattice_binary(Field::create(6), 2, AlgInt{0, 1}, 3), 3)),
  };
  for (const HermLattice& l : pool) {
    UniversalChain c = universal_chain(l);
    CHECK(c.steps.size() <= 8);
    CHECK(is_locally_universal(c.final_lattice));
  }
}
