#include <doctest.h>

#include "core/enumerate.hpp"
#include "core/lattice.hpp"
#include "core/quadform.hpp"
#include "oracles.hpp"

using namespace hermlat;
using namespace hermlat::testing;

namespace {

AlgInt ai(Int a, Int b) { return AlgInt{a, b}; }

// Same module presented on k+1 generators: the original ones (reordered)
// plus the redundant combination g_0 + w g_{k-1}.
HermLattice scramble(const HermLattice& l, std::mt19937_64&) {
  std::size_t k = l.k;
  const Field& f = l.field;
  std::vector<AlgInt> coef(k);
  coef[0] = AlgInt{Int(1), Int(0)};
  coef[k - 1] = add(coef[k - 1], AlgInt{Int(0), Int(1)});
  std::vector<std::vector<AlgInt>> gens(k + 1, std::vector<AlgInt>(k));
  for (std::size_t i = 0; i < k; ++i) gens[i][i] = AlgInt{Int(1), Int(0)};
  gens[k] = coef;
  std::swap(gens[0], gens[k]);
  auto pair_new = [&](const std::vector<AlgInt>& u, const std::vector<AlgInt>& v) {
    AlgInt acc{};
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        acc = add(acc, mul(f, mul(f, u[i], conj(f, v[j])), l.h(i, j)));
    return acc;
  };
  std::vector<AlgInt> g((k + 1) * (k + 1));
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; j <= k; ++j) g[i * (k + 1) + j] = pair_new(gens[i], gens[j]);
  return lattice_from_gram(f, k + 1, std::move(g));
}

}  // namespace

TEST_CASE("gram validation") {
  Field f = Field::create(1);
  CHECK_NOTHROW(lattice_diag(f, {1, 3}));
  // non conjugate-symmetric
  CHECK_THROWS_AS(lattice_from_gram(f, 2, {ai(1, 0), ai(0, 1), ai(0, 1), ai(3, 0)}), Error);
  // diagonal must be rational
  CHECK_THROWS_AS(lattice_from_gram(f, 2, {ai(1, 1), ai(0, 0), ai(0, 0), ai(3, 0)}), Error);
  // negative diagonal
  CHECK_THROWS_AS(lattice_diag(f, {1, -3}), Error);
  // indefinite: [1, 2, 1] has det 1 - 4 < 0
  CHECK_THROWS_AS(lattice_binary(f, 1, ai(2, 0), 1), Error);
  // semidefinite (singular) is fine: [2, w, 3] over m = 6 with N(w) = 6
  Field f6 = Field::create(6);
  CHECK_NOTHROW(lattice_binary(f6, 2, ai(0, 1), 3));
}

TEST_CASE("realization of a diagonal lattice") {
  Field f = Field::create(1);
  HermLattice l = lattice_diag(f, {1, 3});
  ZRealization z = realize(l);
  CHECK(z.b.r == 4);
  CHECK(z.b(0, 0) == 1);
  CHECK(z.b(1, 1) == 1);  // N(w) * 1
  CHECK(z.b(2, 2) == 3);
  CHECK(z.b(3, 3) == 3);
  CHECK(z.b(0, 1) == 0);
  // multiplication by w on the pair (g, wg): w*g = second, w*(wg) = -g
  CHECK(z.j(0, 1) == -1);
  CHECK(z.j(1, 0) == 1);
  CHECK(z.j(0, 0) == 0);
}

TEST_CASE("realization keeps half-integer cross terms for odd disc") {
  Field f = Field::create(7);  // w = (1+sqrt(-7))/2, tau = 1, nu = 2
  HermLattice l = lattice_diag(f, {1});
  ZRealization z = realize(l);
  // B(g, wg) = Tr(conj(w))/2 = (2*0+1)/2
  CHECK(z.b(0, 1) == Rat(1) / 2);
  CHECK(z.b(1, 1) == 2);  // N(w)
  CHECK(z.j(0, 1) == -2);
  CHECK(z.j(1, 1) == 1);
}

TEST_CASE("abstract undoes realize") {
  auto rng = fixed_rng(21);
  for (int m : {1, 2, 3, 5, 6, 7, 10, 11, 15, 23}) {
    Field f = Field::create(m);
    std::uniform_int_distribution<int> d(1, 9), off(-2, 2);
    for (int trial = 0; trial < 8; ++trial) {
      HermLattice l = [&] {
        if (trial % 2 == 0) return lattice_diag(f, {d(rng), d(rng)});
        // random valid binary: force positivity by making b large
        AlgInt h = ai(off(rng), off(rng));
        Int a = d(rng);
        Int b = (norm(f, h) / a + 1 + d(rng));
        return lattice_binary(f, a, h, b);
      }();
      ZRealization z = realize(l);
      HermLattice back = abstract_lattice(f, z.b, z.j);
      REQUIRE(back.k == l.k);
      CHECK(back.gram == l.gram);
    }
  }
}

TEST_CASE("abstract validates the ring action") {
  Field f = Field::create(1);
  HermLattice l = lattice_diag(f, {1, 3});
  ZRealization z = realize(l);
  IMat bad = z.j;
  bad(0, 1) = 5;  // no longer satisfies j^2 = tau j - nu
  CHECK_THROWS_AS(abstract_lattice(f, z.b, bad), Error);
  QMat asym = z.b;
  asym(0, 1) += 1;
  CHECK_THROWS_AS(abstract_lattice(f, asym, z.j), Error);
}

TEST_CASE("rank and relations for redundant generators") {
  Field f = Field::create(5);
  // g2 = w g1: gram [[2, conj(w) 2], [2w, 10]]
  HermLattice l = lattice_from_gram(f, 2, {ai(2, 0), ai(0, -2), ai(0, 2), ai(10, 0)});
  CHECK(rank_of(l) == 1);
  CHECK(relations(l).r == 2);
  HermLattice p = prune_generators(l);
  CHECK(p.k == 1);
  CHECK(p.h(0, 0).a == 2);
  CHECK(rank_of(lattice_diag(f, {1, 2})) == 2);
  CHECK(relations(lattice_diag(f, {1, 2})).r == 0);
}

TEST_CASE("pairing module elements reproduces the gram") {
  Field f = Field::create(7);
  HermLattice l = lattice_binary(f, 3, ai(1, 0), 5);
  // coordinates: (g1, w g1, g2, w g2)
  std::vector<Int> g1{1, 0, 0, 0}, wg1{0, 1, 0, 0}, g2{0, 0, 1, 0};
  CHECK(pair_elements(l, g1, g2) == ai(1, 0));
  CHECK(pair_elements(l, g2, g1) == conj(f, ai(1, 0)));
  CHECK(pair_elements(l, wg1, g1) == mul(f, AlgInt{0, 1}, ai(3, 0)));
  CHECK(pair_elements(l, g1, wg1) == mul(f, conj(f, AlgInt{0, 1}), ai(3, 0)));
  // H(x, x) of a combination
  std::vector<Int> x{1, 0, 1, 0};  // g1 + g2
  CHECK(pair_elements(l, x, x) == ai(3 + 5 + 2 * 1, 0));
}

TEST_CASE("scale, norm and normality") {
  Field f1 = Field::create(1);
  HermLattice even = lattice_binary(f1, 2, ai(1, 1), 2);  // scale (2, 1+w), norm (2)
  CHECK(ideal_norm(scale_ideal(even)) == 2);
  CHECK(norm_ideal_gen(even) == 2);
  CHECK_FALSE(is_normal(even));
  HermLattice d = lattice_diag(f1, {1, 12});
  CHECK(ideal_is_unit(scale_ideal(d)));
  CHECK(norm_ideal_gen(d) == 1);
  CHECK(is_normal(d));
  Field f5 = Field::create(5);
  HermLattice b = lattice_binary(f5, 2, ai(1, 0), 3);
  CHECK(is_normal(b));
  CHECK(norm_ideal_gen(scale_by(b, 4)) == 4);
}

TEST_CASE("volume ideals") {
  Field f1 = Field::create(1);
  CHECK(volume_ideal(lattice_diag(f1, {1, 12})) == ideal_principal(f1, ai(12, 0)));
  CHECK(volume_ideal(lattice_binary(f1, 3, ai(1, 0), 3)) == ideal_principal(f1, ai(8, 0)));
  // singular rank-one block over m = 6: volume is the unit ideal
  Field f6 = Field::create(6);
  HermLattice s = lattice_binary(f6, 2, ai(0, 1), 3);
  CHECK(rank_of(s) == 1);
  CHECK(ideal_is_unit(volume_ideal(s)));
  CHECK(volume_ideal(scale_by(s, 3)) == ideal_principal(f6, ai(3, 0)));
  // volume is multiplicative over orthogonal sums
  HermLattice sum = orth_sum(s, scale_by(s, 3));
  CHECK(volume_ideal(sum) == ideal_principal(f6, ai(3, 0)));
}

TEST_CASE("associate form values agree with hermitian values") {
  auto rng = fixed_rng(22);
  Field f = Field::create(2);
  HermLattice l = lattice_binary(f, 2, ai(0, 1), 5);
  QuadForm q = associate(l);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Int> x{c(rng), c(rng), c(rng), c(rng)};
    CHECK(form_eval(q, x) == pair_elements(l, x, x).a);
    CHECK(pair_elements(l, x, x).b == 0);
  }
}

TEST_CASE("minkowski reduction of diagonal and binary lattices") {
  Field f1 = Field::create(1);
  CHECK(to_string(minkowski_reduce(lattice_diag(f1, {3, 1}))) == "<1,3>");
  CHECK(to_string(minkowski_reduce(lattice_diag(f1, {1, 12}))) == "<1,12>");
  // already-reduced binary keeps its minima
  HermLattice r = minkowski_reduce(lattice_binary(f1, 7, ai(-2, 1), 11));
  CHECK(r.h(0, 0).a == 7);
  CHECK(r.h(1, 1).a == 11);
  CHECK(is_isometric(r, lattice_binary(f1, 7, ai(-2, 1), 11)));
  // reduction constraints hold
  CHECK(abs(2 * r.h(0, 1).a) <= r.h(0, 0).a);
  CHECK(abs(2 * r.h(0, 1).b) <= r.h(0, 0).a);
}

TEST_CASE("reduction is canonical across presentations") {
  auto rng = fixed_rng(23);
  for (int m : {1, 2, 3, 7, 11}) {
    Field f = Field::create(m);
    std::uniform_int_distribution<int> d(1, 6), off(-1, 1);
    for (int trial = 0; trial < 6; ++trial) {
      AlgInt h = ai(off(rng), off(rng));
      Int a = d(rng);
      Int b = norm(f, h) / a + 1 + d(rng);
      HermLattice l = lattice_binary(f, a, h, b);
      HermLattice red = minkowski_reduce(l);
      HermLattice red2 = minkowski_reduce(scramble(l, rng));
      CHECK(red.gram == red2.gram);
      CHECK(is_isometric(red, l));
    }
  }
}

TEST_CASE("reduction rejects wrong ranks and non-free modules") {
  Field f5 = Field::create(5);
  CHECK_THROWS_AS(minkowski_reduce(lattice_diag(f5, {2})), Error);
  CHECK_THROWS_AS(minkowski_reduce(lattice_diag(f5, {1, 2, 3})), Error);
  // ideal-times-vector module with nonprincipal (2, 1+w): not free
  HermLattice nf = lattice_from_gram(
      f5, 3,
      {ai(4, 0), ai(2, -2), ai(0, 0), ai(2, 2), ai(6, 0), ai(0, 0), ai(0, 0), ai(0, 0), ai(2, 0)});
  CHECK(rank_of(nf) == 2);
  try {
    minkowski_reduce(nf);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_free);
  }
}

TEST_CASE("isometry invariants and unit rotations") {
  Field f1 = Field::create(1);
  CHECK_FALSE(is_isometric(lattice_diag(f1, {1, 12}), lattice_diag(f1, {3, 4})));
  CHECK_FALSE(is_isometric(lattice_diag(f1, {1, 3}), lattice_diag(f1, {1, 6})));
  CHECK(is_isometric(lattice_binary(f1, 3, ai(1, 0), 3), lattice_binary(f1, 3, ai(0, 1), 3)));
  Field f3 = Field::create(3);
  CHECK_FALSE(is_isometric(lattice_diag(f3, {2, 3}), lattice_diag(f3, {1, 6})));
  // different fields cannot be compared
  CHECK_THROWS_AS(is_isometric(lattice_diag(f1, {1}), lattice_diag(f3, {1})), Error);
}

TEST_CASE("isometry distinguishes module classes with equal invariants") {
  Field f5 = Field::create(5);
  // (2, 1+w) e1 with H(e1,e1) = 1, plus a free <2> line
  HermLattice nf = lattice_from_gram(
      f5, 3,
      {ai(4, 0), ai(2, -2), ai(0, 0), ai(2, 2), ai(6, 0), ai(0, 0), ai(0, 0), ai(0, 0), ai(2, 0)});
  HermLattice free2 = lattice_diag(f5, {2, 2});
  CHECK(volume_ideal(nf) == volume_ideal(free2));
  CHECK(scale_ideal(nf) == scale_ideal(free2));
  CHECK(norm_ideal_gen(nf) == norm_ideal_gen(free2));
  CHECK_FALSE(is_isometric(nf, free2));
  CHECK(is_isometric(nf, nf));
}

TEST_CASE("orthogonal sums of singular blocks match stated binary forms") {
  // over m = 6: [2,w,3] + 3[2,w,3] is isometric to [9, 4w, 11]
  Field f6 = Field::create(6);
  HermLattice s6 = lattice_binary(f6, 2, ai(0, 1), 3);
  HermLattice sum6 = orth_sum(s6, scale_by(s6, 3));
  CHECK(rank_of(sum6) == 2);
  CHECK(is_isometric(sum6, lattice_binary(f6, 9, ai(0, 4), 11)));
  // over m = 15: [2,w,2] + 3[2,w,2] is isometric to [8, -3+4w, 8]
  Field f15 = Field::create(15);
  HermLattice s15 = lattice_binary(f15, 2, ai(0, 1), 2);
  HermLattice sum15 = orth_sum(s15, scale_by(s15, 3));
  CHECK(is_isometric(sum15, lattice_binary(f15, 8, ai(-3, 4), 8)));
}

TEST_CASE("content and primitivity") {
  Field f = Field::create(2);
  CHECK(content_gcd(lattice_diag(f, {2, 6})) == 2);
  CHECK(content_gcd(lattice_binary(f, 2, ai(0, 1), 5)) == 1);
  CHECK(content_gcd(scale_by(lattice_binary(f, 2, ai(0, 1), 5), 3)) == 3);
}

TEST_CASE("printing") {
  Field f = Field::create(7);
  CHECK(to_string(lattice_diag(f, {1, 14})) == "<1,14>");
  CHECK(to_string(lattice_binary(f, 3, ai(0, 1), 3)) == "[3, w, 3]");
}
