#include "numfield.hpp"

#include <algorithm>

namespace hermlat {

Field Field::create(i64 m) {
  require(m >= 1, Errc::not_squarefree, "field parameter must be a positive integer");
  for (i64 d = 2; d * d <= m; ++d)
    require(m % (d * d) != 0, Errc::not_squarefree, "field parameter must be squarefree");
  Field f;
  f.m = m;
  if (m % 4 == 3) {
    f.tau = 1;
    f.nu = (1 + m) / 4;
    f.disc = -m;
  } else {
    f.tau = 0;
    f.nu = m;
    f.disc = -4 * m;
  }
  return f;
}

AlgInt add(const AlgInt& x, const AlgInt& y) { return {x.a + y.a, x.b + y.b}; }
AlgInt sub(const AlgInt& x, const AlgInt& y) { return {x.a - y.a, x.b - y.b}; }
AlgInt neg(const AlgInt& x) { return {-x.a, -x.b}; }

AlgInt mul(const Field& f, const AlgInt& x, const AlgInt& y) {
  // (a1 + b1 w)(a2 + b2 w) with w^2 = tau*w - nu.
  Int cross = x.b * y.b;
  return {x.a * y.a - f.nu * cross, x.a * y.b + x.b * y.a + f.tau * cross};
}

AlgInt conj(const Field& f, const AlgInt& x) { return {x.a + f.tau * x.b, -x.b}; }

Int norm(const Field& f, const AlgInt& x) { return x.a * x.a + f.tau * x.a * x.b + f.nu * x.b * x.b; }

Int trace(const Field& f, const AlgInt& x) { return 2 * x.a + f.tau * x.b; }

std::optional<AlgInt> divide_exact(const Field& f, const AlgInt& x, const AlgInt& y) {
  if (y.is_zero()) return std::nullopt;
  Int n = norm(f, y);
  AlgInt z = mul(f, x, conj(f, y));
  if (z.a % n != 0 || z.b % n != 0) return std::nullopt;
  return AlgInt{z.a / n, z.b / n};
}

std::string to_string(const AlgInt& x) {
  if (x.b == 0) return x.a.str();
  std::string w = (x.b == 1) ? "w" : (x.b == -1 ? "-w" : x.b.str() + "w");
  if (x.a == 0) return w;
  return x.a.str() + (x.b > 0 ? "+" : "") + w;
}

std::vector<AlgInt> units(const Field& f) {
  std::vector<AlgInt> out = {{Int(1), Int(0)}, {Int(-1), Int(0)}};
  if (f.m == 1) {
    out.push_back({Int(0), Int(1)});
    out.push_back({Int(0), Int(-1)});
  } else if (f.m == 3) {
    // sixth roots of unity: +-1, +-w, +-(w-1)
    out.push_back({Int(0), Int(1)});
    out.push_back({Int(0), Int(-1)});
    out.push_back({Int(-1), Int(1)});
    out.push_back({Int(1), Int(-1)});
  }
  return out;
}

namespace {

Ideal ideal_from_rows(IMat rows) {
  // Rows are (w-coefficient, 1-coefficient); the HNF then ends in a row
  // (0, l) holding the smallest positive rational integer of the module.
  IMat h = hnf_rows(rows);
  require(h.r == 2, Errc::zero_ideal, "ideal needs a nonzero generator");
  Ideal out;
  out.c = h(0, 0);
  out.b = h(0, 1);
  out.l = h(1, 1);
  return out;
}

}  // namespace

Ideal ideal_from_gens(const Field& f, const std::vector<AlgInt>& gens) {
  IMat rows(2 * gens.size(), 2);
  std::size_t r = 0;
  for (const AlgInt& g : gens) {
    AlgInt wg = mul(f, {Int(0), Int(1)}, g);
    rows(r, 0) = g.b;
    rows(r, 1) = g.a;
    ++r;
    rows(r, 0) = wg.b;
    rows(r, 1) = wg.a;
    ++r;
  }
  return ideal_from_rows(rows);
}

Ideal ideal_principal(const Field& f, const AlgInt& g) { return ideal_from_gens(f, {g}); }

Ideal ideal_mul(const Field& f, const Ideal& x, const Ideal& y) {
  AlgInt gx1{x.l, Int(0)}, gx2{x.b, x.c};
  AlgInt gy1{y.l, Int(0)}, gy2{y.b, y.c};
  return ideal_from_gens(
      f, {mul(f, gx1, gy1), mul(f, gx1, gy2), mul(f, gx2, gy1), mul(f, gx2, gy2)});
}

Ideal ideal_add(const Field& f, const Ideal& x, const Ideal& y) {
  return ideal_from_gens(f, {{x.l, Int(0)}, {x.b, x.c}, {y.l, Int(0)}, {y.b, y.c}});
}

Ideal ideal_conj(const Field& f, const Ideal& x) {
  return ideal_from_gens(f, {conj(f, {x.l, Int(0)}), conj(f, {x.b, x.c})});
}

Ideal ideal_unit(const Field&) {
  Ideal o;
  o.l = 1;
  o.b = 0;
  o.c = 1;
  return o;
}

Int ideal_norm(const Ideal& x) { return x.l * x.c; }

bool ideal_contains(const Field&, const Ideal& x, const AlgInt& g) {
  if (g.b % x.c != 0) return false;
  Int t = g.b / x.c;
  return (g.a - t * x.b) % x.l == 0;
}

bool ideal_divides(const Field& f, const Ideal& d, const Ideal& x) {
  return ideal_contains(f, d, {x.l, Int(0)}) && ideal_contains(f, d, {x.b, x.c});
}

bool ideal_is_unit(const Ideal& x) { return x.l == 1 && x.c == 1; }

std::optional<AlgInt> ideal_principal_gen(const Field& f, const Ideal& x) {
  Int n = ideal_norm(x);
  // N(a+bw) >= (|disc|/4) b^2, so |b| <= sqrt(4 n / |disc|).
  Int bmax = isqrt(4 * n / Int(-f.disc));
  for (Int b = 0; b <= bmax; ++b) {
    // Solve a^2 + tau*a*b + nu*b^2 = n for a: discriminant tau^2 b^2 - 4(nu b^2 - n).
    Int d = Int(f.tau) * f.tau * b * b - 4 * (Int(f.nu) * b * b - n);
    if (d < 0) continue;
    Int s = isqrt(d);
    if (s * s != d) continue;
    for (int sign : {1, -1}) {
      Int twice_a = -Int(f.tau) * b + sign * s;
      if (twice_a % 2 != 0) continue;
      AlgInt g{twice_a / 2, b};
      if (norm(f, g) == n && ideal_contains(f, x, g)) return g;
      if (s == 0) break;
    }
  }
  return std::nullopt;
}

std::string to_string(const Ideal& x) {
  if (ideal_is_unit(x)) return "(1)";
  return "(" + x.l.str() + ", " + to_string(AlgInt{x.b, x.c}) + ")";
}

PrimeSplitting split_prime(const Field& f, i64 p) {
  require(p >= 2, Errc::bad_argument, "prime must be >= 2");
  // Roots of t^2 - tau*t + nu mod p decide the splitting.
  std::vector<i64> roots;
  for (i64 t = 0; t < p; ++t) {
    i64 v = mod_pos64(t * t - f.tau * t + f.nu, p);
    if (v == 0) roots.push_back(t);
  }
  PrimeSplitting ps;
  ps.p = p;
  if (roots.empty()) {
    ps.type = SplitType::inert;
    ps.below = ideal_principal(f, {Int(p), Int(0)});
  } else {
    ps.type = (roots.size() == 2) ? SplitType::split : SplitType::ramified;
    ps.below = ideal_from_gens(f, {{Int(p), Int(0)}, {Int(-roots[0]), Int(1)}});
  }
  return ps;
}

int ideal_valuation(const Field& f, const Ideal& x, const PrimeSplitting& ps) {
  Ideal cur = x;
  Int n = ideal_norm(ps.below);
  Ideal pbar = ideal_conj(f, ps.below);
  int v = 0;
  while (true) {
    Ideal y = ideal_mul(f, cur, pbar);
    if (y.l % n != 0 || y.b % n != 0 || y.c % n != 0) return v;
    cur.l = y.l / n;
    cur.b = y.b / n;
    cur.c = y.c / n;
    // Renormalize b into [0, l).
    cur.b = mod_pos(cur.b, cur.l);
    ++v;
  }
}

}  // namespace hermlat
