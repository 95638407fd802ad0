#pragma once

#include <stdexcept>
#include <string>

namespace hermlat {

// Every failure the library can signal. The C API maps these 1:1 onto
// negative status codes; the C++ layer throws Error with the matching code.
enum class Errc {
  ok = 0,
  not_squarefree,        // field parameter m is not squarefree / not positive
  zero_ideal,            // ideal operation needs a nonzero ideal
  field_mismatch,        // operands live over different base fields
  not_hermitian,         // matrix is not conjugate-symmetric with integer diagonal
  not_positive_semidefinite,
  indefinite_on_lattice, // formal Gram takes a negative value on a generator
  not_binary,            // operation defined only for rank-2 lattices
  not_free,              // lattice admits no free basis
  rank_too_large,        // isometry testing implemented for rank <= 2 only
  shape_mismatch,        // matrix dimensions do not fit the operation
  indefinite_form,       // quadratic form input is not positive semidefinite
  periodicity_not_reached, // local condition table failed to stabilize
  chain_diverged,        // transformation chain exceeded its step budget
  essential_not_found,   // no admissible pair below the search cap
  fixture_parse,         // malformed fixture file
  case_not_covered,      // parameters outside the supported case split
  bad_argument,          // malformed user input (JSON, flags, ranges)
  internal,              // invariant breach inside the library
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace hermlat
