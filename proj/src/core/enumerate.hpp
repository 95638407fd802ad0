#pragma once

// Exact vector enumeration for positive semidefinite integral forms.
//
// The enumerator walks the standard ellipsoid-pruned coordinate tree of the
// definite core, but with all bound tests done in scaled integers: with M the
// common denominator of the Cholesky data, the partial values P and the
// shifted coordinates T = M*(x_i + c_i) satisfy exact integer inequalities
// Dnum_i * T_i^2 <= M^3 * (N - P), so no vector is ever missed or spuriously
// accepted. Coordinates fall back to arbitrary precision when the precomputed
// worst-case magnitudes overflow 63 bits.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quadform.hpp"

namespace hermlat {

// Bitset of nonnegative integers up to an inclusive bound.
struct ValueSet {
  u64 bound = 0;
  std::vector<u64> words;

  explicit ValueSet(u64 b = 0) : bound(b), words(b / 64 + 1, 0) {}

  bool test(u64 n) const { return n <= bound && (words[n >> 6] >> (n & 63)) & 1; }
  void set(u64 n) { words[n >> 6] |= u64(1) << (n & 63); }
  u64 count() const;

  bool operator==(const ValueSet& o) const { return bound == o.bound && words == o.words; }

  // Comma-separated inclusive ranges, e.g. "0-2,4,6,8-12".
  std::string to_rle() const;
  static ValueSet from_rle(u64 bound, const std::string& text);

  // Raw format: "HLVS" + u32 version + u64 bound (little endian) + payload
  // of ceil((bound+1)/8) bytes, least significant bit first.
  void write_file(const std::string& path) const;
  static ValueSet read_file(const std::string& path);
};

// Union of a and the translates a+shift, b truncated to a's bound.
void or_shifted(ValueSet& a, const ValueSet& b, u64 shift);

class Enumerator {
 public:
  explicit Enumerator(QuadForm q);
  ~Enumerator();
  Enumerator(Enumerator&&) noexcept;

  const QuadForm& form() const;

  bool represents(const Int& n) const;

  // A vector x (original coordinates) with q(x) = n, if any.
  std::optional<std::vector<Int>> witness(const Int& n) const;

  ValueSet represented_set(u64 bound, int jobs = 1) const;

  // All nonzero vectors with q(x) <= cap, one representative per +-pair,
  // in original coordinates.
  std::vector<std::pair<Int, std::vector<Int>>> short_vectors(const Int& cap) const;

  // Smallest positive represented integer (0 for the zero form).
  Int min_nonzero() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline bool represents(const QuadForm& q, const Int& n) { return Enumerator(q).represents(n); }

inline ValueSet represented_set(const QuadForm& q, u64 bound, int jobs = 1) {
  return Enumerator(q).represented_set(bound, jobs);
}

// Does the unary Hermitian lattice <a> represent n, i.e. is n/a a norm?
bool unary_represents(const Field& f, const Int& a, const Int& n);

}  // namespace hermlat
