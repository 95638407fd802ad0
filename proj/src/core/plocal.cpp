#include "plocal.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <optional>

namespace hermlat {

namespace {

bool is_prime(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// One constituent of a p-adic Jordan splitting of the doubled matrix A = 2G,
// scaled so its own values are p^s times a unimodular piece's.
struct Constituent {
  enum Kind {
    unit_square,   // p^s * u * x^2
    binary_all,    // p^s * (binary with odd cross coefficient, isotropic): every value
    binary_even,   // p^s * (binary with odd cross coefficient, anisotropic): units * p^{2k}
  };
  Kind kind = unit_square;
  int s = 0;
  // unit_square only: for p = 2 the odd part of the coefficient mod 8; for
  // odd p its Legendre class (0 residue, 1 non-residue).
  int cls = 0;
};

// A subset of Z/2^K that is a union of (valuation, odd class mod 8) cells
// plus optionally the zero residue (= everything of valuation >= K). Value
// sets of Jordan constituents have this shape and the family is closed under
// sumsets mod 2^K, so a per-cell calculus decides representability at p = 2.
struct CellSet {
  int K = 1;
  std::vector<std::array<bool, 4>> row;  // row[v][(c - 1) / 2], v = 0 .. K-1
  bool zero = false;

  explicit CellSet(int k) : K(k), row(static_cast<std::size_t>(k), {false, false, false, false}) {}

  void add(int v, int cls) {
    if (v >= K)
      zero = true;
    else
      row[static_cast<std::size_t>(v)][static_cast<std::size_t>((cls - 1) / 2)] = true;
  }
  void add_all_from(int v) {
    for (int k = v; k < K; ++k) row[static_cast<std::size_t>(k)] = {true, true, true, true};
    zero = true;
  }
  bool test(const Int& n) const {  // membership of the residue n mod 2^K
    Int m = mod_pos(n, pow_int(Int(2), K));
    if (m == 0) return zero;
    int v = valuation(m, 2);
    int cls = static_cast<int>(to_i64(mod_pos(m / pow_int(Int(2), v), 8)));
    return row[static_cast<std::size_t>(v)][static_cast<std::size_t>((cls - 1) / 2)];
  }
};

// Sum of one element of valuation va, class ca with one of valuation vb,
// class cb (both odd classes mod 8): the exact set of results, as cells.
void add_cell_sum(CellSet& out, int va, int ca, int vb, int cb) {
  if (va > vb) {
    std::swap(va, vb);
    std::swap(ca, cb);
  }
  int diff = vb - va;
  if (diff >= 3) {
    out.add(va, ca);
  } else if (diff == 2) {
    out.add(va, (ca + 4) % 8);
  } else if (diff == 1) {
    out.add(va, (ca + 2 * (cb % 4)) % 8);
  } else {
    int s8 = (ca + cb) % 8;
    if (s8 % 4 == 2) {
      // half the sum is odd: its class is pinned mod 4 only
      int h = ((ca + cb) / 2) % 8;
      out.add(va + 1, h);
      out.add(va + 1, (h + 4) % 8);
    } else if (s8 == 4) {
      for (int c : {1, 3, 5, 7}) out.add(va + 2, c);
    } else {  // opposite classes: the sum reaches every higher valuation
      out.add_all_from(va + 3);
    }
  }
}

CellSet sum_sets(const CellSet& a, const CellSet& b) {
  CellSet out(a.K);
  if (a.zero) {
    out.zero |= b.zero;
    for (int v = 0; v < out.K; ++v)
      for (int c = 0; c < 4; ++c) out.row[v][c] = out.row[v][c] || b.row[v][c];
  }
  if (b.zero) {
    out.zero |= a.zero;
    for (int v = 0; v < out.K; ++v)
      for (int c = 0; c < 4; ++c) out.row[v][c] = out.row[v][c] || a.row[v][c];
  }
  for (int va = 0; va < a.K; ++va)
    for (int ca = 0; ca < 4; ++ca) {
      if (!a.row[va][ca]) continue;
      for (int vb = 0; vb < b.K; ++vb)
        for (int cb = 0; cb < 4; ++cb) {
          if (!b.row[vb][cb]) continue;
          add_cell_sum(out, va, 2 * ca + 1, vb, 2 * cb + 1);
        }
    }
  return out;
}

// Solver for one (form, prime) pair. Works on the definite core so the
// doubled matrix is nonsingular.
class LocalSolver {
 public:
  LocalSolver(const QuadForm& q, Int p) : p_(std::move(p)) {
    require(is_prime(p_), Errc::bad_argument, "modulus must be prime");
    QuadForm core = definite_core(q).core;
    r_ = core.n;
    if (r_ == 0) return;
    jordan_split(core.a);
    if (p_ == 2) {
      int emax = 0;
      for (const Constituent& c : blocks_)
        emax = std::max(emax, c.kind == Constituent::unit_square ? c.s + 1 : c.s);
      cap_ = 2 * emax + 1;
      build_prim_set();
    } else {
      int smax = 0;
      for (const Constituent& c : blocks_) smax = std::max(smax, c.s);
      cap_ = smax + 2;
    }
  }

  bool represents(const Int& n) const {
    if (r_ == 0) return n == 0;
    if (n == 0) return true;
    if (p_ == 2) {
      Int m = n;
      while (true) {
        if (prim_->test(m)) return true;
        if (valuation(m, 2) < 2) return false;
        m /= 4;
      }
    }
    return odd_descent(n);
  }

  // All rows of the condition table repeat with period 2 from this level on.
  int level_cap() const { return cap_; }

 private:
  // Orthogonal splitting of the doubled matrix into scaled unimodular
  // constituents by symmetric elimination over the p-adic integers. Basis
  // vectors are rescaled by p-adic units along the way (harmless: value sets
  // only change by unit squares), and entries are kept reduced to a working
  // precision that dominates every valuation the splitting ever compares.
  void jordan_split(IMat a) {
    int dexp = valuation(det_bareiss(a), p_);
    big_ = pow_int(p_, 20 * dexp + 40);
    sanity_ = pow_int(p_, dexp + 4);
    std::vector<std::size_t> active(r_);
    for (std::size_t i = 0; i < r_; ++i) active[i] = i;

    auto val_of = [&](const Int& x) -> int {
      if (x == 0 || mod_pos(x, big_) == 0) return INT_MAX;  // indistinguishable from 0
      return valuation(mod_pos(x, big_), p_);
    };
    auto apply = [&](const IMat& e) {
      a = mul(transpose(e), mul(a, e));
      for (Int& x : a.a) x = mod_pos(x, big_);
    };
    for (Int& x : a.a) x = mod_pos(x, big_);

    while (!active.empty()) {
      // minimal valuation among the form's coefficients (diagonal q-coeff
      // a_ii/2 counts as v(a_ii) - 1 when p = 2)
      int mu = INT_MAX;
      for (std::size_t x : active) {
        mu = std::min(mu, val_of(a(x, x)) - (p_ == 2 ? 1 : 0));
        for (std::size_t y : active)
          if (y > x) mu = std::min(mu, val_of(a(x, y)));
      }
      require(mu != INT_MAX, Errc::internal, "jordan split lost the form");

      if (p_ != 2) {
        // a diagonal always attains the minimum after at most one shear
        std::size_t i = r_;
        for (std::size_t x : active)
          if (val_of(a(x, x)) == mu) i = x;
        if (i == r_) {
          std::size_t bi = r_, bj = r_;
          for (std::size_t x : active)
            for (std::size_t y : active)
              if (y > x && val_of(a(x, y)) == mu) bi = x, bj = y;
          IMat e = identity<Int>(r_);
          e(bj, bi) = 1;  // e_i <- e_i + e_j surfaces the cross term
          apply(e);
          i = bi;
          require(val_of(a(i, i)) == mu, Errc::internal, "shear failed to surface a unit");
        }
        split_one(a, active, i, mu);
        continue;
      }

      // p = 2: a diagonal splits off only when it divides its whole row
      std::size_t pick = r_;
      for (std::size_t x : active) {
        if (val_of(a(x, x)) - 1 != mu) continue;
          bool divides = true;
        for (std::size_t y : active)
          if (y != x && val_of(a(x, y)) < val_of(a(x, x))) divides = false;
        if (divides) {
          pick = x;
          break;
        }
      }
      if (pick != r_) {
        split_one(a, active, pick, mu);
        continue;
      }
      std::size_t bi = r_, bj = r_;
      for (std::size_t x : active)
        for (std::size_t y : active)
          if (y > x && val_of(a(x, y)) == mu) bi = x, bj = y;
      require(bi != r_, Errc::internal, "no pivot available at minimal valuation");
      split_two(a, active, bi, bj, mu);
    }
  }

  // Split off the 1-dimensional constituent at index i (diagonal valuation
  // minimal and dividing its row).
  void split_one(IMat& a, std::vector<std::size_t>& active, std::size_t i, int mu) {
    int av = valuation(a(i, i), p_);
    Int pv = pow_int(p_, av);
    Int w = a(i, i) / pv;  // unit scale for the other basis vectors
    IMat e = identity<Int>(r_);
    for (std::size_t j : active) {
      if (j == i) continue;
      require(a(i, j) % pv == 0, Errc::internal, "non-integral elimination step");
      e(j, j) = w;
      e(i, j) = -(a(i, j) / pv);
    }
    a = mul(transpose(e), mul(a, e));
    for (std::size_t j : active)
      if (j != i) a(i, j) = a(j, i) = 0;
    for (Int& x : a.a) x = mod_pos(x, big_);

    Constituent c;
    c.kind = Constituent::unit_square;
    c.s = mu;
    if (p_ == 2) {
      Int d = a(i, i) / 2;
      c.cls = static_cast<int>(to_i64(mod_pos(d / pow_int(Int(2), mu), 8)));
    } else {
      // Legendre class of a_ii / (2 p^mu)
      Int inv2 = (p_ + 1) / 2;
      c.cls = static_cast<int>(
          LocalConditionSet::class_index(p_, mod_pos((a(i, i) / pow_int(p_, mu)) * inv2, p_)));
    }
    blocks_.push_back(c);
    active.erase(std::find(active.begin(), active.end(), i));
  }

  // Split off the 2-dimensional constituent on (i, j) whose cross entry has
  // the strictly minimal valuation mu (p = 2 only).
  void split_two(IMat& a, std::vector<std::size_t>& active, std::size_t i, std::size_t j, int mu) {
    Int p2mu = pow_int(Int(2), 2 * mu);
    Int detb = a(i, i) * a(j, j) - a(i, j) * a(i, j);
    require(detb % p2mu == 0 && (detb / p2mu) % 2 != 0, Errc::internal,
            "binary block with unexpected determinant");
    Int d = detb / p2mu;
    IMat e = identity<Int>(r_);
    for (std::size_t k : active) {
      if (k == i || k == j) continue;
      Int ci = a(j, j) * a(k, i) - a(i, j) * a(k, j);
      Int cj = a(i, i) * a(k, j) - a(i, j) * a(k, i);
      require(ci % p2mu == 0 && cj % p2mu == 0, Errc::internal, "non-integral elimination step");
      e(k, k) = d;
      e(i, k) = -(ci / p2mu);
      e(j, k) = -(cj / p2mu);
    }
    a = mul(transpose(e), mul(a, e));
    for (std::size_t k : active) {
      if (k == i || k == j) continue;
      require(mod_pos(a(i, k), sanity_) == 0 && mod_pos(a(j, k), sanity_) == 0, Errc::internal,
              "elimination left a residual pairing");
      a(i, k) = a(k, i) = a(j, k) = a(k, j) = 0;
    }
    for (Int& x : a.a) x = mod_pos(x, big_);

    Int p_mu1 = pow_int(Int(2), mu + 1);
    require(a(i, i) % p_mu1 == 0 && a(j, j) % p_mu1 == 0, Errc::internal,
            "binary block diagonal too small");
    Int au = a(i, i) / p_mu1, cu = a(j, j) / p_mu1;  // q-block = 2^mu (au x^2 + b xy + cu y^2)
    Constituent c;
    c.s = mu;
    c.kind = (au * cu) % 2 == 0 ? Constituent::binary_all : Constituent::binary_even;
    blocks_.push_back(c);
    active.erase(std::find(active.begin(), active.end(), j));
    active.erase(std::find(active.begin(), active.end(), i));
  }

  // p = 2: residues mod 2^cap_ with a primitive solution. A sum of
  // constituent values is primitively attained exactly when at least one
  // summand uses a primitive vector of its own constituent, and v_2(Ax) <=
  // emax for primitive x makes n mod 2^cap_ decisive.
  void build_prim_set() {
    std::size_t m = blocks_.size();
    std::vector<CellSet> vals, prims;
    for (const Constituent& c : blocks_) {
      CellSet v(cap_), pr(cap_);
      switch (c.kind) {
        case Constituent::unit_square:
          pr.add(c.s, c.cls);
          v.zero = true;
          for (int k = 0; c.s + 2 * k < cap_; ++k) v.add(c.s + 2 * k, c.cls);
          break;
        case Constituent::binary_all:
          pr.add_all_from(c.s);
          v.add_all_from(c.s);
          break;
        case Constituent::binary_even:
          for (int cl : {1, 3, 5, 7}) pr.add(c.s, cl);
          v.zero = true;
          for (int k = 0; c.s + 2 * k < cap_; ++k)
            for (int cl : {1, 3, 5, 7}) v.add(c.s + 2 * k, cl);
          break;
      }
      vals.push_back(std::move(v));
      prims.push_back(std::move(pr));
    }
    CellSet ident(cap_);
    ident.zero = true;  // the zero residue: identity for sumsets
    std::vector<CellSet> pre(m + 1, ident), suf(m + 1, ident);
    for (std::size_t i = 0; i < m; ++i) pre[i + 1] = sum_sets(pre[i], vals[i]);
    for (std::size_t i = m; i-- > 0;) suf[i] = sum_sets(vals[i], suf[i + 1]);
    prim_ = CellSet(cap_);
    for (std::size_t i = 0; i < m; ++i) {
      CellSet with = sum_sets(pre[i], sum_sets(prims[i], suf[i + 1]));
      for (int v = 0; v < cap_; ++v)
        for (int cl = 0; cl < 4; ++cl) prim_->row[v][cl] = prim_->row[v][cl] || with.row[v][cl];
      prim_->zero = prim_->zero || with.zero;
    }
  }

  // Odd p: peel one power of p at a time. The unimodular layer U of the
  // moment represents every unit when it has rank >= 2, everything when it
  // is isotropic (rank >= 3, or a rank-2 pair whose determinant is minus a
  // square); otherwise any deeper value forces x = 0 on U, which scales U by
  // p^2 and divides n by p.
  bool odd_descent(const Int& n) const {
    int a = valuation(n, p_);
    Int w = mod_pos(n / pow_int(p_, a), p_);
    int wcls = static_cast<int>(LocalConditionSet::class_index(p_, w));
    int minus = static_cast<int>(LocalConditionSet::class_index(p_, p_ - 1));
    int smax = cap_;  // = max block scale + 2
    while (a > smax + 1) a -= 2;  // answers are 2-periodic past every scale

    std::vector<Constituent> cur = blocks_;
    for (int t = 0;; ++t) {
      std::vector<int> ucls;
      for (const Constituent& c : cur)
        if (c.s == 0) ucls.push_back(c.cls);
      if (ucls.size() >= 3) return true;
      if (ucls.size() == 2 && (minus + ucls[0] + ucls[1]) % 2 == 0) return true;
      if (t == a) {
        if (ucls.size() >= 2) return true;  // anisotropic pairs still cover the units
        if (ucls.size() == 1) return (ucls[0] + wcls) % 2 == 0;
        return false;
      }
      for (Constituent& c : cur) c.s = (c.s == 0) ? 1 : c.s - 1;
    }
  }

  std::size_t r_ = 0;
  Int p_;
  int cap_ = 1;
  Int big_ = 1, sanity_ = 1;  // working precision for the splitting
  std::vector<Constituent> blocks_;
  std::optional<CellSet> prim_;
};

}  // namespace

bool local_represents(const QuadForm& q, const Int& n, const Int& p) {
  return LocalSolver(q, p).represents(n);
}

std::size_t LocalConditionSet::class_index(const Int& p, const Int& unit) {
  if (p == 2) {
    Int u = mod_pos(unit, 8);
    return static_cast<std::size_t>(to_i64((u - 1) / 2));
  }
  // Euler's criterion by repeated squaring
  Int u = mod_pos(unit, p);
  u64 pm = static_cast<u64>(to_i64(p));
  u64 e = pow_mod64(static_cast<u64>(to_i64(u)), (pm - 1) / 2, pm);
  return e == 1 ? 0 : 1;
}

bool LocalConditionSet::contains(const Int& n) const {
  if (n == 0) return true;
  require(n > 0, Errc::bad_argument, "membership is defined for nonnegative numbers");
  int k = valuation(n, p);
  Int unit = n / pow_int(p, k);
  std::size_t ci = class_index(p, unit);
  std::size_t row = static_cast<std::size_t>(k);
  if (row >= rows.size())
    row = stable_from + ((row - stable_from) % 2);
  return rows[row][ci];
}

bool LocalConditionSet::all_true() const {
  for (const auto& row : rows)
    for (bool b : row)
      if (!b) return false;
  return true;
}

LocalConditionSet local_condition_set(const QuadForm& q, const Int& p) {
  LocalSolver solver(q, p);
  LocalConditionSet out;
  out.p = p;
  out.classes = (p == 2) ? 4 : 2;
  // class representatives
  std::vector<Int> reps;
  if (p == 2) {
    reps = {1, 3, 5, 7};
  } else {
    Int nr = 2;
    while (LocalConditionSet::class_index(p, nr) == 0) ++nr;
    reps = {1, nr};
  }
  std::size_t stable = static_cast<std::size_t>(solver.level_cap());
  out.stable_from = stable;
  // build rows up to stable + 5 and verify two extra periods
  std::vector<std::vector<bool>> rows(stable + 6);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].resize(out.classes);
    for (std::size_t c = 0; c < out.classes; ++c)
      rows[k][c] = solver.represents(pow_int(p, static_cast<int>(k)) * reps[c]);
  }
  for (std::size_t k = stable; k + 2 < rows.size(); ++k)
    require(rows[k] == rows[k + 2], Errc::periodicity_not_reached,
            "local condition table failed to stabilize");
  rows.resize(stable + 2);
  out.rows = std::move(rows);
  return out;
}

std::string to_string(const LocalConditionSet& c) {
  auto class_name = [&](std::size_t i) -> std::string {
    if (c.p == 2) return "u" + std::to_string(2 * i + 1);
    return i == 0 ? "u+" : "u-";
  };
  std::string out = "p=" + c.p.str() + ":";
  for (std::size_t k = 0; k < c.rows.size(); ++k) {
    std::string yes, no;
    for (std::size_t i = 0; i < c.classes; ++i) {
      std::string& side = c.rows[k][i] ? yes : no;
      if (!side.empty()) side += ",";
      side += class_name(i);
    }
    out += " v=" + std::to_string(k) + ":";
    if (!yes.empty()) out += " " + yes + " ->";
    if (!no.empty()) out += " " + no + " !->";
    out += ";";
  }
  out += " v>=" + std::to_string(c.rows.size()) + " repeats with period 2";
  return out;
}

bool is_locally_universal(const QuadForm& q, const Int& p) {
  return local_condition_set(q, p).all_true();
}

bool is_locally_universal(const QuadForm& q) {
  for (const Int& p : relevant_primes(q))
    if (!is_locally_universal(q, p)) return false;
  return true;
}

std::vector<Int> relevant_primes(const QuadForm& q) {
  DefiniteCore dc = definite_core(q);
  require(dc.core.n >= 3, Errc::case_not_covered,
          "finite prime support needs a core of rank >= 3");
  Int det = abs(det_bareiss(dc.core.a));
  std::vector<Int> out{2};
  while (det % 2 == 0) det /= 2;
  for (Int d = 3; d * d <= det; d += 2) {
    if (det % d != 0) continue;
    out.push_back(d);
    while (det % d == 0) det /= d;
  }
  if (det > 1) out.push_back(det);
  return out;
}

GenConditions gen_conditions(const QuadForm& q) {
  GenConditions g;
  for (const Int& p : relevant_primes(q)) {
    LocalConditionSet c = local_condition_set(q, p);
    if (!c.all_true()) g.local.push_back(std::move(c));
  }
  return g;
}

bool GenConditions::contains(const Int& n) const {
  if (n < 0) return false;
  for (const auto& c : local)
    if (!c.contains(n)) return false;
  return true;
}

bool gen_represents(const QuadForm& q, const Int& n) {
  if (n < 0) return false;
  if (n == 0) return true;
  for (const Int& p : relevant_primes(q))
    if (!local_represents(q, n, p)) return false;
  return true;
}

}  // namespace hermlat
