#include <doctest.h>

#include <cstdio>
#include <map>
#include <set>

#include "core/enumerate.hpp"
#include "oracles.hpp"

using namespace hermlat;
using namespace hermlat::testing;

namespace {

ValueSet from_bools(const std::vector<bool>& b) {
  ValueSet v(b.size() - 1);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) v.set(i);
  return v;
}

}  // namespace

TEST_CASE("value set basics") {
  ValueSet v(100);
  CHECK(v.count() == 0);
  v.set(0);
  v.set(1);
  v.set(2);
  v.set(4);
  v.set(6);
  for (u64 n = 8; n <= 12; ++n) v.set(n);
  v.set(100);
  CHECK(v.count() == 11);
  CHECK(v.test(4));
  CHECK_FALSE(v.test(5));
  CHECK_FALSE(v.test(101));
  CHECK(v.to_rle() == "0-2,4,6,8-12,100");
  CHECK(ValueSet::from_rle(100, "0-2,4,6,8-12,100") == v);
  CHECK_THROWS_AS(ValueSet::from_rle(50, "0-2,60"), Error);
  CHECK_THROWS_AS(ValueSet::from_rle(50, "5-,"), Error);
}

TEST_CASE("value set file round trip") {
  ValueSet v(777);
  auto rng = fixed_rng(1);
  std::uniform_int_distribution<u64> pick(0, 777);
  for (int i = 0; i < 200; ++i) v.set(pick(rng));
  std::string path = "valueset_roundtrip.bin";
  v.write_file(path);
  ValueSet w = ValueSet::read_file(path);
  CHECK(w == v);
  std::remove(path.c_str());
}

TEST_CASE("or_shifted equals the naive translate") {
  auto rng = fixed_rng(2);
  std::uniform_int_distribution<u64> pick(0, 200);
  for (int trial = 0; trial < 20; ++trial) {
    ValueSet a(200), b(200);
    for (int i = 0; i < 30; ++i) a.set(pick(rng));
    for (int i = 0; i < 30; ++i) b.set(pick(rng));
    u64 shift = pick(rng);
    ValueSet expect = a;
    for (u64 n = 0; n <= 200; ++n)
      if (b.test(n) && n + shift <= 200) expect.set(n + shift);
    ValueSet got = a;
    or_shifted(got, b, shift);
    CHECK(got == expect);
  }
}

TEST_CASE("sums of two squares") {
  QuadForm q = form_diag({1, 1});
  Enumerator e(q);
  for (Int n : {0, 1, 2, 4, 5, 8, 9, 10, 13, 16, 17, 18, 20, 25})
    CHECK(e.represents(n));
  for (Int n : {3, 6, 7, 11, 12, 14, 15, 19, 21, 22, 23, 24})
    CHECK_FALSE(e.represents(n));
  CHECK_FALSE(e.represents(-1));
  auto w = e.witness(25);
  REQUIRE(w.has_value());
  CHECK(form_eval(q, *w) == 25);
}

TEST_CASE("represented set matches the diagonal dynamic programming oracle") {
  for (auto diag : std::vector<std::vector<Int>>{
           {1}, {2, 3}, {1, 12}, {1, 5, 7}, {2, 2, 5, 13}, {1, 1, 1, 1}}) {
    u64 bound = 400;
    ValueSet got = represented_set(form_diag(diag), bound);
    CHECK(got == from_bools(oracle_diag_values(diag, bound)));
  }
}

TEST_CASE("represented set matches the rational oracle on dense forms") {
  auto rng = fixed_rng(3);
  int done = 0;
  for (int trial = 0; done < 25; ++trial) {
    std::size_t n = 2 + trial % 3;
    QuadForm q = random_form(rng, n);
    if (det_bareiss(q.a) == 0) continue;
    ++done;
    u64 bound = 150;
    ValueSet got = represented_set(q, bound);
    std::set<Int> expect = oracle_values(q, bound);
    for (u64 v = 0; v <= bound; ++v)
      CHECK(got.test(v) == (expect.count(Int(static_cast<long long>(v))) > 0));
  }
}

TEST_CASE("represented set of a degenerate form equals that of its core") {
  auto rng = fixed_rng(4);
  for (int trial = 0; trial < 12; ++trial) {
    QuadForm q = random_form(rng, 3, /*zero_diag=*/1);
    DefiniteCore dc = definite_core(q);
    u64 bound = 200;
    CHECK(represented_set(q, bound) == represented_set(dc.core, bound));
  }
}

TEST_CASE("multi-component split agrees with direct enumeration") {
  // block diagonal: two binary blocks with no cross terms
  IMat a(4, 4);
  a(0, 0) = 2, a(0, 1) = 1, a(1, 0) = 1, a(1, 1) = 4;
  a(2, 2) = 6, a(2, 3) = 2, a(3, 2) = 2, a(3, 3) = 8;
  QuadForm q = form_from_matrix(a);
  u64 bound = 250;
  ValueSet got = represented_set(q, bound);
  std::set<Int> expect = oracle_values(q, bound);
  for (u64 v = 0; v <= bound; ++v)
    CHECK(got.test(v) == (expect.count(Int(static_cast<long long>(v))) > 0));
}

TEST_CASE("parallel chunking returns the identical set") {
  IMat a(3, 3);
  a(0, 0) = 2, a(0, 1) = 1, a(0, 2) = 0;
  a(1, 0) = 1, a(1, 1) = 4, a(1, 2) = 1;
  a(2, 0) = 0, a(2, 1) = 1, a(2, 2) = 6;
  QuadForm q = form_from_matrix(a);
  CHECK(represented_set(q, 3000, 1) == represented_set(q, 3000, 3));
  QuadForm d = form_diag({1, 14});
  CHECK(represented_set(d, 5000, 1) == represented_set(d, 5000, 4));
}

TEST_CASE("witnesses are valid and exhaustive") {
  auto rng = fixed_rng(5);
  int done = 0;
  for (int trial = 0; done < 15; ++trial) {
    std::size_t n = 2 + trial % 2;
    QuadForm q = random_form(rng, n, trial % 2);
    ++done;
    Enumerator e(q);
    ValueSet vs = e.represented_set(120);
    for (u64 v = 0; v <= 120; ++v) {
      auto w = e.witness(Int(static_cast<long long>(v)));
      if (vs.test(v)) {
        REQUIRE(w.has_value());
        CHECK(form_eval(q, *w) == Int(static_cast<long long>(v)));
      } else {
        CHECK_FALSE(w.has_value());
      }
    }
  }
}

TEST_CASE("short vectors match the oracle list") {
  auto rng = fixed_rng(6);
  int done = 0;
  for (int trial = 0; done < 15; ++trial) {
    std::size_t n = 2 + trial % 3;
    QuadForm q = random_form(rng, n);
    if (det_bareiss(q.a) == 0) continue;
    ++done;
    Int cap = 40;
    auto got = Enumerator(q).short_vectors(cap);
    // oracle: count all nonzero vectors with value <= cap (both signs)
    std::map<Int, int> expect_counts;
    oracle_enumerate(q, cap, [&](const std::vector<Int>& x, const Int& v) {
      bool zero = true;
      for (const Int& c : x) zero = zero && c == 0;
      if (!zero) expect_counts[v]++;
    });
    std::map<Int, int> got_counts;
    std::set<std::vector<Int>> seen;
    for (auto& [v, x] : got) {
      CHECK(form_eval(q, x) == v);
      got_counts[v] += 2;  // one representative per +- pair
      CHECK(seen.insert(x).second);
      std::vector<Int> neg(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
      CHECK(seen.insert(neg).second);
    }
    CHECK(got_counts == expect_counts);
  }
}

TEST_CASE("minimum of a form") {
  CHECK(Enumerator(form_diag({5, 9})).min_nonzero() == 5);
  IMat a = [] {
    IMat m(2, 2);
    m(0, 0) = 6, m(0, 1) = 1, m(1, 0) = 1, m(1, 1) = 6;
    return m;
  }();
  CHECK(Enumerator(form_from_matrix(a)).min_nonzero() == 3);  // q(1,0) = 3
  CHECK(Enumerator(form_diag({0, 4})).min_nonzero() == 4);
}

TEST_CASE("huge entries take the wide arithmetic path") {
  Int big = pow_int(10, 13);
  QuadForm q = form_diag({1, big});
  Enumerator e(q);
  CHECK(e.represents(big + 4));
  CHECK_FALSE(e.represents(big + 3));
  auto w = e.witness(4 * big);
  REQUIRE(w.has_value());
  CHECK(form_eval(q, *w) == 4 * big);
  ValueSet vs = e.represented_set(50);
  CHECK(vs == represented_set(form_diag({1}), 50));
}

TEST_CASE("unary representation by field norms") {
  Field f1 = Field::create(1);
  // sums of two squares, scaled by a
  for (Int n : {0, 1, 2, 4, 5, 8}) CHECK(unary_represents(f1, 1, n));
  for (Int n : {3, 6, 7}) CHECK_FALSE(unary_represents(f1, 1, n));
  CHECK(unary_represents(f1, 3, 15));   // 15/3 = 5 = 1+4
  CHECK_FALSE(unary_represents(f1, 3, 5));  // not divisible
  Field f3 = Field::create(3);
  // norms of Z[(1+sqrt(-3))/2]: x^2 + xy + y^2
  for (Int n : {0, 1, 3, 4, 7, 9, 12, 13}) CHECK(unary_represents(f3, 1, n));
  for (Int n : {2, 5, 6, 10, 11}) CHECK_FALSE(unary_represents(f3, 1, n));
  Field f7 = Field::create(7);
  for (Int n : {1, 2, 4, 7, 8, 11}) CHECK(unary_represents(f7, 1, n));
  for (Int n : {3, 5, 6, 10, 12}) CHECK_FALSE(unary_represents(f7, 1, n));
  // cross check against the rank-one associate form
  Field f5 = Field::create(5);
  QuadForm assoc = associate(lattice_diag(f5, {2}));
  Enumerator e(assoc);
  for (Int n = 0; n <= 60; ++n) CHECK(unary_represents(f5, 2, n) == e.represents(n));
}
