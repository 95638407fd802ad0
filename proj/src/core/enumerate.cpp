#include "enumerate.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

namespace hermlat {

// ---------------------------------------------------------------- ValueSet

u64 ValueSet::count() const {
  u64 acc = 0;
  for (u64 w : words) acc += static_cast<u64>(__builtin_popcountll(w));
  return acc;
}

std::string ValueSet::to_rle() const {
  std::ostringstream os;
  bool first = true;
  u64 n = 0;
  while (n <= bound) {
    if (!test(n)) {
      ++n;
      continue;
    }
    u64 start = n;
    while (n + 1 <= bound && test(n + 1)) ++n;
    if (!first) os << ",";
    first = false;
    if (start == n)
      os << start;
    else
      os << start << "-" << n;
    ++n;
  }
  return os.str();
}

ValueSet ValueSet::from_rle(u64 bound, const std::string& text) {
  ValueSet v(bound);
  std::size_t i = 0;
  auto parse_num = [&]() -> u64 {
    require(i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])),
            Errc::bad_argument, "malformed range list");
    u64 n = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      n = n * 10 + static_cast<u64>(text[i++] - '0');
    return n;
  };
  while (i < text.size()) {
    u64 a = parse_num(), b = a;
    if (i < text.size() && text[i] == '-') {
      ++i;
      b = parse_num();
    }
    require(a <= b && b <= bound, Errc::bad_argument, "range outside the declared bound");
    for (u64 n = a; n <= b; ++n) v.set(n);
    if (i < text.size()) {
      require(text[i] == ',', Errc::bad_argument, "malformed range list");
      ++i;
    }
  }
  return v;
}

void ValueSet::write_file(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  require(os.good(), Errc::bad_argument, "cannot open file for writing: " + path);
  os.write("HLVS", 4);
  std::uint32_t version = 1;
  os.write(reinterpret_cast<const char*>(&version), 4);
  u64 b = bound;
  os.write(reinterpret_cast<const char*>(&b), 8);
  u64 nbytes = bound / 8 + 1;
  std::vector<unsigned char> bytes(nbytes, 0);
  for (u64 n = 0; n <= bound; ++n)
    if (test(n)) bytes[n >> 3] |= static_cast<unsigned char>(1u << (n & 7));
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(nbytes));
  require(os.good(), Errc::bad_argument, "write failed: " + path);
}

ValueSet ValueSet::read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(is.good(), Errc::bad_argument, "cannot open file: " + path);
  char magic[4];
  is.read(magic, 4);
  require(is.good() && std::string(magic, 4) == "HLVS", Errc::bad_argument,
          "bad value-set file header");
  std::uint32_t version = 0;
  is.read(reinterpret_cast<char*>(&version), 4);
  require(version == 1, Errc::bad_argument, "unsupported value-set file version");
  u64 bound = 0;
  is.read(reinterpret_cast<char*>(&bound), 8);
  ValueSet v(bound);
  u64 nbytes = bound / 8 + 1;
  std::vector<unsigned char> bytes(nbytes);
  is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(nbytes));
  require(is.good(), Errc::bad_argument, "truncated value-set file");
  for (u64 n = 0; n <= bound; ++n)
    if (bytes[n >> 3] & (1u << (n & 7))) v.set(n);
  return v;
}

void or_shifted(ValueSet& a, const ValueSet& b, u64 shift) {
  if (shift > a.bound) return;
  u64 ws = shift >> 6, bs = shift & 63;
  std::size_t na = a.words.size(), nb = b.words.size();
  for (std::size_t i = 0; i < nb && i + ws < na; ++i) {
    u64 w = b.words[i];
    if (!w) continue;
    a.words[i + ws] |= w << bs;
    if (bs && i + ws + 1 < na) a.words[i + ws + 1] |= w >> (64 - bs);
  }
  // keep bits above the bound clear
  u64 top = a.bound & 63;
  a.words.back() &= (top == 63) ? ~u64(0) : ((u64(1) << (top + 1)) - 1);
}

namespace {

std::vector<u64> set_elements(const ValueSet& v) {
  std::vector<u64> out;
  for (std::size_t wi = 0; wi < v.words.size(); ++wi) {
    u64 w = v.words[wi];
    while (w) {
      unsigned bit = static_cast<unsigned>(__builtin_ctzll(w));
      out.push_back((static_cast<u64>(wi) << 6) | bit);
      w &= w - 1;
    }
  }
  return out;
}

// ------------------------------------------------ scalar helpers (i64 / Int)

inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}
inline Int floor_div(const Int& a, const Int& b) { return fdiv(a, b); }
inline i64 int_sqrt(i64 a) { return isqrt64(a); }
inline Int int_sqrt(const Int& a) { return isqrt(a); }
inline i64 to_scalar(const Int& v, i64*) { return to_i64(v); }
inline Int to_scalar(const Int& v, Int*) { return v; }
inline Int scalar_to_int(i64 v) { return Int(v); }
inline const Int& scalar_to_int(const Int& v) { return v; }

// One connected block of the definite core, with scaled Cholesky data.
struct Comp {
  std::vector<std::size_t> idx;  // indices into core coordinates
  std::size_t r = 0;
  IMat a;            // 2G restricted to the block
  Int m = 1;         // common denominator of the Cholesky data
  std::vector<Int> dnum;               // d_i * m
  std::vector<std::vector<Int>> u;     // u[i][j]*m for j > i (full row stored)
  Int min_diag = 0;  // smallest q(e_i) on the block

  // Worst-case magnitude of every intermediate for a given search bound.
  Int magnitude(const Int& n) const {
    Int m3 = m * m * m;
    Int worst = n * m3;
    std::vector<Int> xmax(r);
    for (std::size_t i = 0; i < r; ++i) xmax[i] = isqrt(n * m / dnum[i]) + 2;
    for (std::size_t i = 0; i < r; ++i) {
      Int cmax = 0;
      for (std::size_t j = i + 1; j < r; ++j) cmax += abs(u[i][j]) * xmax[j];
      Int tmax = m * xmax[i] + cmax;
      Int w1 = dnum[i] * tmax * tmax;
      Int w2 = dnum[i] * (2 * tmax + m) * m;
      if (w1 > worst) worst = w1;
      if (w2 > worst) worst = w2;
    }
    return worst;
  }
};

enum class Mode { set, find, collect };

// The enumeration walker: exact scaled-integer tree search over one block.
template <class S>
struct Walker {
  const Comp& c;
  S m, m2, m3;
  std::vector<S> dn;
  std::vector<std::vector<S>> u;
  S nm3;           // N * m^3
  Int target;      // find-mode value
  Mode mode;
  ValueSet* out = nullptr;
  std::vector<std::pair<Int, std::vector<Int>>>* vecs = nullptr;
  std::vector<S> x;
  bool found = false;
  std::vector<Int> witness;

  Walker(const Comp& comp, const Int& n, Mode md)
      : c(comp), target(n), mode(md) {
    m = to_scalar(comp.m, static_cast<S*>(nullptr));
    m2 = m * m;
    m3 = m2 * m;
    dn.resize(c.r);
    u.assign(c.r, {});
    for (std::size_t i = 0; i < c.r; ++i) {
      dn[i] = to_scalar(comp.dnum[i], static_cast<S*>(nullptr));
      u[i].resize(c.r);
      for (std::size_t j = i + 1; j < c.r; ++j)
        u[i][j] = to_scalar(comp.u[i][j], static_cast<S*>(nullptr));
    }
    nm3 = to_scalar(n, static_cast<S*>(nullptr)) * m3;
    x.assign(c.r, S(0));
  }

  S shift_of(std::size_t i) const {
    S acc = 0;
    for (std::size_t j = i + 1; j < c.r; ++j)
      if (x[j] != 0) acc += u[i][j] * x[j];
    return acc;
  }

  void record_leaf(const Int& value) {
    if (mode == Mode::set) {
      out->set(static_cast<u64>(to_i64(value)));
    } else if (mode == Mode::find) {
      if (value == target) {
        found = true;
        witness.assign(c.r, Int(0));
        for (std::size_t i = 0; i < c.r; ++i) witness[i] = scalar_to_int(x[i]);
      }
    } else {
      bool zero = true;
      for (std::size_t i = 0; i < c.r && zero; ++i) zero = (x[i] == 0);
      if (!zero) {
        std::vector<Int> v(c.r);
        for (std::size_t i = 0; i < c.r; ++i) v[i] = scalar_to_int(x[i]);
        vecs->push_back({value, std::move(v)});
      }
    }
  }

  // rem = m^3 * (N - partial value above level i); half: restrict to x >= 0.
  void walk(std::size_t i, S rem, bool half) {
    if (found) return;
    S shift = shift_of(i);
    if (mode == Mode::find && i == 0) {
      // Solve dn0 * t^2 == rem - (value gap): at the leaf the value equals
      // N - (rem - dn0 t^2)/m^3; we need value == target, i.e.
      // dn0 t^2 == rem - (N - target)*m^3.
      S need = rem - (nm3 - to_scalar(target, static_cast<S*>(nullptr)) * m3);
      if (need < 0) return;
      if (need % dn[0] != 0) return;
      S t2 = need / dn[0];
      S t = int_sqrt(t2);
      if (t * t != t2) return;
      for (int sg : {1, -1}) {
        S cand = sg > 0 ? t : S(-t);
        S num = cand - shift;
        if (num % m == 0) {
          x[0] = num / m;
          record_leaf(target);
          if (found) return;
        }
        if (t == 0) break;
      }
      return;
    }
    S lim = rem / dn[i];
    S s = int_sqrt(lim);
    S lo = -floor_div(s + shift, m);
    S hi = floor_div(s - shift, m);
    if (half && lo < 0) lo = 0;
    if (i == 0) {
      // innermost: integer stepping of the leaf value
      if (lo > hi) return;
      S t0 = m * lo + shift;
      S w = dn[0] * t0 * t0;
      S dw = dn[0] * (2 * t0 * m + m2);
      S ddw = 2 * dn[0] * m2;
      // leaf value n = N - (rem - w)/m^3, stepped with integer differences
      S v0s = nm3 - rem + w;
      require(v0s % m3 == 0, Errc::internal, "leaf value not integral");
      S val = v0s / m3;
      require(dw % m3 == 0, Errc::internal, "leaf step not integral");
      S dval = dw / m3;
      S ddval = ddw / m3;  // equals the even diagonal entry, always integral
      for (S xi = lo; xi <= hi; ++xi) {
        x[0] = xi;
        record_leaf(scalar_to_int(val));
        val += dval;
        dval += ddval;
      }
      return;
    }
    for (S xi = lo; xi <= hi; ++xi) {
      x[i] = xi;
      S t = m * xi + shift;
      S used = dn[i] * t * t;
      walk(i - 1, rem - used, half && xi == 0);
      if (found) return;
    }
    x[i] = 0;
  }
};

}  // namespace

// ---------------------------------------------------------------- Enumerator

struct Enumerator::Impl {
  QuadForm q;
  DefiniteCore dc;
  std::vector<Comp> comps;  // connected blocks, for value-set sumsets
  Comp whole;               // the full core, for exact-target searches

  static Comp make_comp(const QuadForm& core, std::vector<std::size_t> idx) {
    Comp c;
    c.idx = std::move(idx);
    c.r = c.idx.size();
    c.a = IMat(c.r, c.r);
    for (std::size_t i = 0; i < c.r; ++i)
      for (std::size_t j = 0; j < c.r; ++j) c.a(i, j) = core.a(c.idx[i], c.idx[j]);
    QMat half = to_rat(c.a);
    for (auto& v : half.a) v /= 2;
    Ldl f = ldl(half);
    Int m = 1;
    for (std::size_t i = 0; i < c.r; ++i) {
      m = lcm(m, den(f.d[i]));
      for (std::size_t j = i + 1; j < c.r; ++j) m = lcm(m, den(f.u(i, j)));
    }
    c.m = m;
    c.dnum.resize(c.r);
    c.u.assign(c.r, std::vector<Int>(c.r, Int(0)));
    for (std::size_t i = 0; i < c.r; ++i) {
      c.dnum[i] = num(f.d[i] * m);
      for (std::size_t j = i + 1; j < c.r; ++j) c.u[i][j] = num(f.u(i, j) * m);
    }
    c.min_diag = c.a(0, 0) / 2;
    for (std::size_t i = 1; i < c.r; ++i) {
      Int half_diag = c.a(i, i) / 2;
      if (half_diag < c.min_diag) c.min_diag = half_diag;
    }
    return c;
  }

  explicit Impl(QuadForm qq) : q(std::move(qq)), dc(definite_core(q)) {
    std::size_t r = dc.core.n;
    if (r == 0) return;
    {
      std::vector<std::size_t> all(r);
      std::iota(all.begin(), all.end(), 0);
      whole = make_comp(dc.core, std::move(all));
    }
    // connected components of the core matrix
    std::vector<std::size_t> parent(r);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j)
        if (dc.core.a(i, j) != 0) parent[find(i)] = find(j);
    std::vector<std::vector<std::size_t>> buckets(r);
    for (std::size_t i = 0; i < r; ++i) buckets[find(i)].push_back(i);
    for (auto& bucket : buckets)
      if (!bucket.empty()) comps.push_back(make_comp(dc.core, std::move(bucket)));
    // biggest block last so the sumset folds cheap sets into it
    std::sort(comps.begin(), comps.end(),
              [](const Comp& a, const Comp& b) { return a.r < b.r; });
  }

  static bool fits64(const Comp& c, const Int& n) {
    return c.magnitude(n) < (Int(1) << 62);
  }

  ValueSet comp_set(const Comp& c, u64 bound, int jobs) const {
    ValueSet out(bound);
    out.set(0);
    Int n(static_cast<long long>(bound));
    bool narrow = fits64(c, n);
    if (jobs <= 1 || c.r < 2) {
      if (narrow) {
        Walker<i64> w(c, n, Mode::set);
        w.out = &out;
        w.walk(c.r - 1, w.nm3, true);
      } else {
        Walker<Int> w(c, n, Mode::set);
        w.out = &out;
        w.walk(c.r - 1, w.nm3, true);
      }
      return out;
    }
    // chunk the outermost coordinate across threads
    i64 outer_hi;
    {
      Walker<Int> probe(c, n, Mode::set);
      Int lim = probe.nm3 / probe.dn[c.r - 1];
      outer_hi = to_i64(isqrt(lim) / probe.m);
    }
    int nthreads = std::min<i64>(jobs, outer_hi + 1);
    if (nthreads <= 1) {
      return comp_set(c, bound, 1);
    }
    std::vector<ValueSet> parts(static_cast<std::size_t>(nthreads), ValueSet(bound));
    std::vector<std::thread> threads;
    for (int t = 0; t < nthreads; ++t) {
      threads.emplace_back([&, t] {
        auto run = [&](auto scalar_tag) {
          using S = decltype(scalar_tag);
          Walker<S> w(c, n, Mode::set);
          w.out = &parts[static_cast<std::size_t>(t)];
          // outermost level by hand, striding across threads
          std::size_t lev = c.r - 1;
          for (i64 xi = t; xi <= outer_hi; xi += nthreads) {
            w.x[lev] = S(xi);
            S tv = w.m * S(xi);
            S used = w.dn[lev] * tv * tv;
            if (used > w.nm3) break;
            w.walk(lev - 1, w.nm3 - used, xi == 0);
          }
        };
        if (narrow)
          run(i64(0));
        else
          run(Int(0));
      });
    }
    for (auto& th : threads) th.join();
    for (auto& p : parts)
      for (std::size_t i = 0; i < out.words.size(); ++i) out.words[i] |= p.words[i];
    out.set(0);
    return out;
  }

  ValueSet run_set(u64 bound, int jobs) const {
    ValueSet acc(bound);
    acc.set(0);
    for (const Comp& c : comps) {
      ValueSet cs = comp_set(c, bound, jobs);
      if (acc.count() == 1) {  // acc == {0}
        acc = std::move(cs);
        continue;
      }
      // sumset: iterate elements of the sparser operand
      if (cs.count() <= acc.count()) {
        ValueSet res(bound);
        for (u64 el : set_elements(cs)) or_shifted(res, acc, el);
        acc = std::move(res);
      } else {
        ValueSet res(bound);
        for (u64 el : set_elements(acc)) or_shifted(res, cs, el);
        acc = std::move(res);
      }
    }
    return acc;
  }

  // exact-value search within one block
  std::optional<std::vector<Int>> comp_find(const Comp& c, const Int& n) const {
    if (n == 0) return std::vector<Int>(c.r, Int(0));
    auto go = [&](auto scalar_tag) -> std::optional<std::vector<Int>> {
      using S = decltype(scalar_tag);
      Walker<S> w(c, n, Mode::find);
      w.walk(c.r - 1, w.nm3, false);
      if (w.found) return w.witness;
      return std::nullopt;
    };
    return fits64(c, n) ? go(i64(0)) : go(Int(0));
  }

  // witness in core coordinates, via one exact-target walk of the full core
  std::optional<std::vector<Int>> core_witness(const Int& n) const {
    std::size_t r = dc.core.n;
    if (n == 0) return std::vector<Int>(r, Int(0));
    if (n < 0 || comps.empty()) return std::nullopt;
    return comp_find(whole, n);
  }
};

Enumerator::Enumerator(QuadForm q) : impl_(std::make_unique<Impl>(std::move(q))) {}
Enumerator::~Enumerator() = default;
Enumerator::Enumerator(Enumerator&&) noexcept = default;

const QuadForm& Enumerator::form() const { return impl_->q; }

bool Enumerator::represents(const Int& n) const {
  if (n < 0) return false;
  if (n == 0) return true;
  if (impl_->comps.empty()) return false;
  return impl_->comp_find(impl_->whole, n).has_value();
}

std::optional<std::vector<Int>> Enumerator::witness(const Int& n) const {
  if (n < 0) return std::nullopt;
  auto y = impl_->core_witness(n);
  if (!y) return std::nullopt;
  std::vector<Int> x(impl_->q.n, Int(0));
  for (std::size_t i = 0; i < impl_->q.n; ++i)
    for (std::size_t j = 0; j < impl_->dc.core.n; ++j)
      if (impl_->dc.basis(i, j) != 0) x[i] += impl_->dc.basis(i, j) * (*y)[j];
  return x;
}

ValueSet Enumerator::represented_set(u64 bound, int jobs) const {
  return impl_->run_set(bound, jobs);
}

std::vector<std::pair<Int, std::vector<Int>>> Enumerator::short_vectors(const Int& cap) const {
  std::vector<std::pair<Int, std::vector<Int>>> out;
  if (cap < 0 || impl_->comps.empty()) return out;
  // Enumerate over the whole core at once (blocks joined): walk each block's
  // vectors up to cap and take sum combinations with total value <= cap.
  // Simpler and exact: collect per-block vector lists, then merge.
  std::size_t r = impl_->dc.core.n;
  std::vector<std::vector<std::pair<Int, std::vector<Int>>>> lists;
  for (const Comp& c : impl_->comps) {
    auto go = [&](auto scalar_tag) {
      using S = decltype(scalar_tag);
      Walker<S> w(c, cap, Mode::collect);
      std::vector<std::pair<Int, std::vector<Int>>> vec;
      w.vecs = &vec;
      w.walk(c.r - 1, w.nm3, true);
      return vec;
    };
    lists.push_back(Impl::fits64(c, cap) ? go(i64(0)) : go(Int(0)));
  }
  // combine blocks: each nonzero combination, one per +- pair overall
  // (the leading nonzero block keeps its sign representative; later blocks
  // contribute both signs)
  std::vector<Int> y(r, Int(0));
  auto emit = [&](const Int& value) {
    std::vector<Int> x(impl_->q.n, Int(0));
    for (std::size_t i = 0; i < impl_->q.n; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (impl_->dc.basis(i, j) != 0) x[i] += impl_->dc.basis(i, j) * y[j];
    out.push_back({value, std::move(x)});
  };
  auto rec = [&](auto&& self, std::size_t bi, Int used, bool leading) -> void {
    if (bi == impl_->comps.size()) {
      if (!leading) emit(used);
      return;
    }
    const Comp& c = impl_->comps[bi];
    // zero contribution from this block
    self(self, bi + 1, used, leading);
    for (const auto& [val, v] : lists[bi]) {
      if (used + val > cap) continue;
      for (int sign : {1, -1}) {
        if (leading && sign < 0) continue;  // overall sign representative
        for (std::size_t t = 0; t < c.r; ++t) y[c.idx[t]] = sign > 0 ? v[t] : -v[t];
        self(self, bi + 1, used + val, false);
      }
      for (std::size_t t = 0; t < c.r; ++t) y[c.idx[t]] = 0;
    }
  };
  rec(rec, 0, Int(0), true);
  return out;
}

Int Enumerator::min_nonzero() const {
  if (impl_->comps.empty()) return 0;
  Int cap = impl_->comps[0].min_diag;
  for (const Comp& c : impl_->comps)
    if (c.min_diag < cap) cap = c.min_diag;
  Int best = cap;
  for (const Comp& c : impl_->comps) {
    auto go = [&](auto scalar_tag) {
      using S = decltype(scalar_tag);
      Walker<S> w(c, cap, Mode::collect);
      std::vector<std::pair<Int, std::vector<Int>>> vec;
      w.vecs = &vec;
      w.walk(c.r - 1, w.nm3, true);
      for (auto& [val, v] : vec)
        if (val > 0 && val < best) best = val;
    };
    Impl::fits64(c, cap) ? go(i64(0)) : go(Int(0));
  }
  return best;
}

bool unary_represents(const Field& f, const Int& a, const Int& n) {
  require(a > 0, Errc::bad_argument, "unary lattice needs a positive value");
  if (n == 0) return true;
  if (n < 0 || n % a != 0) return false;
  Int q = n / a;
  // x^2 + tau x y + nu y^2 = q: for each y, the x-discriminant 4q - |disc| y^2
  // must be a perfect square matching parity.
  Int ymax = isqrt(4 * q / Int(-f.disc));
  for (Int y = 0; y <= ymax; ++y) {
    Int d = 4 * q - Int(-f.disc) * y * y;
    if (d < 0) break;
    Int s = isqrt(d);
    if (s * s != d) continue;
    // x = (-tau y +- s) / 2
    for (int sign : {1, -1}) {
      Int t = -Int(f.tau) * y + sign * s;
      if (t % 2 == 0) return true;
      if (s == 0) break;
    }
  }
  return false;
}

}  // namespace hermlat
