#pragma once

// Exact arithmetic primitives shared by the whole library.
//
// All linear algebra that decides anything (kernels, determinants,
// positive-definiteness, Cholesky data) runs over arbitrary-precision
// integers/rationals; fixed-width integers appear only in enumeration
// hot loops, always behind precomputed magnitude guards.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hermlat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

// floor(sqrt(a)) for a >= 0.
inline Int isqrt(const Int& a) { return boost::multiprecision::sqrt(a); }

inline i64 isqrt64(i64 a) {
  if (a <= 0) return 0;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(a)));
  while (r > 0 && i128(r) * r > a) --r;
  while (i128(r + 1) * (r + 1) <= a) ++r;
  return r;
}

// floor(a / b) for b > 0 (division rounding toward minus infinity).
inline Int fdiv(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

// floor(sqrt(p/q)) for p >= 0, q > 0.
inline Int isqrt_ratio(const Int& p, const Int& q) { return isqrt(fdiv(p, q)); }

inline bool fits_i64(const Int& a) {
  return a >= std::numeric_limits<i64>::min() && a <= std::numeric_limits<i64>::max();
}

inline i64 to_i64(const Int& a) { return static_cast<i64>(a); }

inline std::string to_string(const Int& a) { return a.str(); }

inline std::string to_string(const Rat& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

// Nonnegative remainder a mod b for b > 0.
inline Int mod_pos(const Int& a, const Int& b) {
  Int r = a % b;
  if (r < 0) r += b;
  return r;
}

inline i64 mod_pos64(i64 a, i64 b) {
  i64 r = a % b;
  if (r < 0) r += b;
  return r;
}

// x^e mod n for n > 0.
inline i64 pow_mod64(i64 x, u64 e, i64 n) {
  i128 acc = 1, base = mod_pos64(x, n);
  while (e) {
    if (e & 1) acc = acc * base % n;
    base = base * base % n;
    e >>= 1;
  }
  return static_cast<i64>(acc);
}

// p-adic valuation of a != 0; valuation(0) is reported as -1 ("infinite").
inline int valuation(Int a, const Int& p) {
  if (a == 0) return -1;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

inline Int pow_int(Int base, unsigned e) {
  Int acc = 1;
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

}  // namespace hermlat
