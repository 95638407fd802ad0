#pragma once

// Imaginary quadratic fields Q(sqrt(-m)) and their rings of integers.
//
// The ring of integers is Z[w] where w = sqrt(-m) when m = 1,2 mod 4 and
// w = (1+sqrt(-m))/2 when m = 3 mod 4; uniformly w^2 = tau*w - nu with
// tau in {0,1}. Elements are stored on the basis (1, w); ideals as
// Z-modules with a canonical 2x2 upper-triangular basis in that same
// coordinate system.

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "ints.hpp"
#include "linalg.hpp"

namespace hermlat {

struct Field {
  i64 m = 0;    // squarefree positive; the field is Q(sqrt(-m))
  i64 tau = 0;  // w^2 = tau*w - nu
  i64 nu = 0;
  i64 disc = 0;  // field discriminant: -4m or -m

  static Field create(i64 m);
  bool operator==(const Field& o) const { return m == o.m; }
};

inline void check_same_field(const Field& a, const Field& b) {
  require(a == b, Errc::field_mismatch, "operands live over different fields");
}

// Element a + b*w of the ring of integers.
struct AlgInt {
  Int a = 0, b = 0;

  AlgInt() = default;
  AlgInt(Int x) : a(std::move(x)) {}
  AlgInt(Int x, Int y) : a(std::move(x)), b(std::move(y)) {}

  bool operator==(const AlgInt& o) const { return a == o.a && b == o.b; }
  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }
};

AlgInt add(const AlgInt& x, const AlgInt& y);
AlgInt sub(const AlgInt& x, const AlgInt& y);
AlgInt neg(const AlgInt& x);
AlgInt mul(const Field& f, const AlgInt& x, const AlgInt& y);
AlgInt conj(const Field& f, const AlgInt& x);
Int norm(const Field& f, const AlgInt& x);   // x * conj(x), a nonnegative integer
Int trace(const Field& f, const AlgInt& x);  // x + conj(x)

// Exact division; nullopt when y does not divide x in the ring.
std::optional<AlgInt> divide_exact(const Field& f, const AlgInt& x, const AlgInt& y);

// Human-readable form like "2-3w"; w prints as "w".
std::string to_string(const AlgInt& x);

// The six/four/two units of the ring (|units| = 4 for m=1, 6 for m=3, else 2).
std::vector<AlgInt> units(const Field& f);

// Nonzero integral ideal, stored by its canonical Z-basis
//   ( l, 0 )
//   ( b, c )   rows in coordinates (1, w), l > 0, c > 0, c | l, 0 <= b < l.
// l is the smallest positive rational integer in the ideal.
struct Ideal {
  Int l = 0, b = 0, c = 0;

  bool operator==(const Ideal& o) const { return l == o.l && b == o.b && c == o.c; }
};

Ideal ideal_from_gens(const Field& f, const std::vector<AlgInt>& gens);
Ideal ideal_principal(const Field& f, const AlgInt& g);
Ideal ideal_mul(const Field& f, const Ideal& x, const Ideal& y);
Ideal ideal_add(const Field& f, const Ideal& x, const Ideal& y);  // gcd of ideals
Ideal ideal_conj(const Field& f, const Ideal& x);
Ideal ideal_unit(const Field& f);  // the full ring
Int ideal_norm(const Ideal& x);    // index [ring : ideal]
bool ideal_contains(const Field& f, const Ideal& x, const AlgInt& g);
bool ideal_divides(const Field& f, const Ideal& d, const Ideal& x);  // d | x, i.e. x subset d
bool ideal_is_unit(const Ideal& x);

// Exhaustive search for a generator of norm equal to the ideal norm;
// nullopt when the ideal is not principal.
std::optional<AlgInt> ideal_principal_gen(const Field& f, const Ideal& x);

std::string to_string(const Ideal& x);

// Behaviour of a rational prime p in the field.
enum class SplitType { split, inert, ramified };

struct PrimeSplitting {
  i64 p = 0;
  SplitType type = SplitType::inert;
  Ideal below;  // a prime ideal over p (its conjugate completes the story when split)
};

PrimeSplitting split_prime(const Field& f, i64 p);

// Valuation of a nonzero ideal at the prime over p (sum over both conjugate
// primes when p splits is not taken: this is the valuation at `ps.below`).
int ideal_valuation(const Field& f, const Ideal& x, const PrimeSplitting& ps);

}  // namespace hermlat
