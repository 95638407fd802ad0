#include "lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "enumerate.hpp"
#include "quadform.hpp"

namespace hermlat {

namespace {

// Trace form entry: B(alpha g_i, beta g_j) = Tr(alpha * h * conj(beta)) / 2
// for alpha, beta in {1, w}.
Rat half_trace(const Field& f, const AlgInt& x) { return Rat(trace(f, x)) / 2; }

}  // namespace

HermLattice lattice_from_gram(const Field& f, std::size_t k, std::vector<AlgInt> entries) {
  require(entries.size() == k * k, Errc::shape_mismatch, "gram matrix entry count mismatch");
  HermLattice l;
  l.field = f;
  l.k = k;
  l.gram = std::move(entries);
  for (std::size_t i = 0; i < k; ++i) {
    const AlgInt& d = l.h(i, i);
    require(d.b == 0, Errc::not_hermitian, "gram diagonal must be rational integers");
    require(d.a >= 0, Errc::indefinite_on_lattice, "gram diagonal must be nonnegative");
    for (std::size_t j = i + 1; j < k; ++j)
      require(l.h(j, i) == conj(f, l.h(i, j)), Errc::not_hermitian,
              "gram matrix must be conjugate-symmetric");
  }
  ZRealization z = realize(l);
  require(is_psd(z.b), Errc::not_positive_semidefinite,
          "gram matrix is not positive semidefinite");
  return l;
}

HermLattice lattice_diag(const Field& f, const std::vector<Int>& diag) {
  std::size_t k = diag.size();
  std::vector<AlgInt> e(k * k);
  for (std::size_t i = 0; i < k; ++i) e[i * k + i] = AlgInt{diag[i], Int(0)};
  return lattice_from_gram(f, k, std::move(e));
}

HermLattice lattice_binary(const Field& f, const Int& a, const AlgInt& h, const Int& b) {
  return lattice_from_gram(f, 2, {AlgInt{a, Int(0)}, h, conj(f, h), AlgInt{b, Int(0)}});
}

ZRealization realize(const HermLattice& l) {
  const Field& f = l.field;
  std::size_t k = l.k, n = 2 * k;
  ZRealization z;
  z.b = QMat(n, n);
  z.j = IMat(n, n);
  AlgInt w{Int(0), Int(1)};
  for (std::size_t i = 0; i < k; ++i) {
    z.j(2 * i, 2 * i + 1) = -f.nu;
    z.j(2 * i + 1, 2 * i) = 1;
    z.j(2 * i + 1, 2 * i + 1) = f.tau;
    for (std::size_t j = 0; j < k; ++j) {
      const AlgInt& h = l.h(i, j);
      z.b(2 * i, 2 * j) = half_trace(f, h);
      z.b(2 * i, 2 * j + 1) = half_trace(f, mul(f, h, conj(f, w)));
      z.b(2 * i + 1, 2 * j) = half_trace(f, mul(f, w, h));
      z.b(2 * i + 1, 2 * j + 1) = half_trace(f, h) * f.nu;
    }
  }
  return z;
}

namespace {

// Solve B(u,v) = a + (tau/2) b, B(u, Jv) = (tau/2) a + nu b for (a, b).
AlgInt recover_entry(const Field& f, const Rat& b1, const Rat& b2) {
  Rat delta = Rat(f.nu) - Rat(f.tau * f.tau) / 4;
  Rat a = (f.nu * b1 - Rat(f.tau) / 2 * b2) / delta;
  Rat b = (b2 - Rat(f.tau) / 2 * b1) / delta;
  require(den(a) == 1 && den(b) == 1, Errc::not_hermitian,
          "realization does not define an integral Hermitian module");
  return AlgInt{num(a), num(b)};
}

}  // namespace

HermLattice abstract_lattice(const Field& f, const QMat& b, const IMat& j) {
  std::size_t n = b.r;
  require(b.c == n && j.r == n && j.c == n && n % 2 == 0, Errc::shape_mismatch,
          "realization matrices must be square of even size");
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      require(b(r, c) == b(c, r), Errc::not_hermitian, "realized form must be symmetric");
      require(den(b(r, c) * 2) == 1, Errc::not_hermitian, "realized form must be half-integral");
    }
  // j^2 = tau j - nu
  IMat j2 = mul(j, j);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Int want = Int(f.tau) * j(r, c) - (r == c ? Int(f.nu) : Int(0));
      require(j2(r, c) == want, Errc::not_hermitian,
              "multiplication matrix does not satisfy the ring relation");
    }
  // B(Jx, y) + B(x, Jy) = tau B(x, y)
  QMat jq = to_rat(j);
  QMat left = mul(transpose(jq), b), right = mul(b, jq);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      require(left(r, c) + right(r, c) == Rat(f.tau) * b(r, c), Errc::not_hermitian,
              "form is not compatible with the ring action");

  // Interleaved shape: per-pair blocks [[0, -nu], [1, tau]].
  bool interleaved = true;
  for (std::size_t p = 0; p < n / 2 && interleaved; ++p)
    for (std::size_t q = 0; q < n / 2 && interleaved; ++q) {
      Int b00 = j(2 * p, 2 * q), b01 = j(2 * p, 2 * q + 1);
      Int b10 = j(2 * p + 1, 2 * q), b11 = j(2 * p + 1, 2 * q + 1);
      if (p == q)
        interleaved = b00 == 0 && b01 == -f.nu && b10 == 1 && b11 == f.tau;
      else
        interleaved = b00 == 0 && b01 == 0 && b10 == 0 && b11 == 0;
    }

  std::vector<std::size_t> gens;
  if (interleaved)
    for (std::size_t p = 0; p < n / 2; ++p) gens.push_back(2 * p);
  else
    for (std::size_t p = 0; p < n; ++p) gens.push_back(p);

  std::size_t k = gens.size();
  std::vector<AlgInt> entries(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t u = gens[a], v = gens[c];
      Rat b1 = b(u, v);
      // B(u, Jv) = sum_t J(t, v) * B(u, t)
      Rat b2 = 0;
      for (std::size_t t = 0; t < n; ++t)
        if (j(t, v) != 0) b2 += Rat(j(t, v)) * b(u, t);
      entries[a * k + c] = recover_entry(f, b1, b2);
    }
  return lattice_from_gram(f, k, std::move(entries));
}

std::size_t rank_of(const HermLattice& l) {
  QuadForm q = associate(l);
  std::size_t zr = hnf_rows(q.a).r;
  require(zr % 2 == 0, Errc::internal, "realized rank must be even");
  return zr / 2;
}

IMat relations(const HermLattice& l) {
  QuadForm q = associate(l);
  return left_kernel(q.a);
}

AlgInt pair_elements(const HermLattice& l, const std::vector<Int>& x, const std::vector<Int>& y) {
  ZRealization z = realize(l);
  std::size_t n = 2 * l.k;
  require(x.size() == n && y.size() == n, Errc::shape_mismatch, "element coordinate size");
  std::vector<Int> jy(n, Int(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (z.j(r, c) != 0) jy[r] += z.j(r, c) * y[c];
  Rat b1 = 0, b2 = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (z.b(r, c) == 0) continue;
      if (x[r] != 0 && y[c] != 0) b1 += z.b(r, c) * Rat(x[r] * y[c]);
      if (x[r] != 0 && jy[c] != 0) b2 += z.b(r, c) * Rat(x[r] * jy[c]);
    }
  return recover_entry(l.field, b1, b2);
}

Ideal scale_ideal(const HermLattice& l) {
  std::vector<AlgInt> gens;
  for (const AlgInt& e : l.gram)
    if (!e.is_zero()) gens.push_back(e);
  require(!gens.empty(), Errc::zero_ideal, "scale ideal of the zero lattice");
  return ideal_from_gens(l.field, gens);
}

Int norm_ideal_gen(const HermLattice& l) {
  const Field& f = l.field;
  AlgInt w{Int(0), Int(1)};
  Int g = 0;
  for (std::size_t i = 0; i < l.k; ++i) {
    g = gcd(g, l.h(i, i).a);
    for (std::size_t j = i + 1; j < l.k; ++j) {
      g = gcd(g, trace(f, l.h(i, j)));
      g = gcd(g, trace(f, mul(f, w, l.h(i, j))));
    }
  }
  require(g != 0, Errc::zero_ideal, "norm ideal of the zero lattice");
  return g;
}

Ideal norm_ideal(const HermLattice& l) {
  return ideal_principal(l.field, AlgInt{norm_ideal_gen(l), Int(0)});
}

bool is_normal(const HermLattice& l) { return scale_ideal(l) == norm_ideal(l); }

namespace {

AlgInt alg_det(const Field& f, const std::vector<AlgInt>& m, std::size_t n) {
  if (n == 0) return AlgInt{Int(1), Int(0)};
  if (n == 1) return m[0];
  AlgInt acc{Int(0), Int(0)};
  // Laplace expansion along the first row.
  std::vector<AlgInt> minor((n - 1) * (n - 1));
  for (std::size_t c = 0; c < n; ++c) {
    if (m[c].is_zero()) continue;
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t mc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor[(i - 1) * (n - 1) + mc] = m[i * n + j];
        ++mc;
      }
    }
    AlgInt term = mul(f, m[c], alg_det(f, minor, n - 1));
    acc = (c % 2 == 0) ? add(acc, term) : sub(acc, term);
  }
  return acc;
}

}  // namespace

Ideal volume_ideal(const HermLattice& l) {
  std::size_t n = rank_of(l);
  require(n > 0, Errc::zero_ideal, "volume of the zero lattice");
  // All n x n minors of the k x k Gram matrix.
  std::vector<AlgInt> gens;
  std::vector<std::size_t> rsel, csel;
  // iterate over combinations of size n from [0, k)
  auto combinations = [&](auto&& self, std::vector<std::size_t>& sel, std::size_t start,
                          auto&& emit) -> void {
    if (sel.size() == n) {
      emit();
      return;
    }
    for (std::size_t i = start; i < l.k; ++i) {
      sel.push_back(i);
      self(self, sel, i + 1, emit);
      sel.pop_back();
    }
  };
  std::vector<AlgInt> sub(n * n);
  combinations(combinations, rsel, 0, [&] {
    combinations(combinations, csel, 0, [&] {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sub[i * n + j] = l.h(rsel[i], csel[j]);
      AlgInt d = alg_det(l.field, sub, n);
      if (!d.is_zero()) gens.push_back(d);
    });
  });
  return ideal_from_gens(l.field, gens);
}

HermLattice scale_by(const HermLattice& l, const Int& c) {
  require(c > 0, Errc::bad_argument, "scaling factor must be positive");
  HermLattice out = l;
  for (AlgInt& e : out.gram) {
    e.a *= c;
    e.b *= c;
  }
  return out;
}

HermLattice orth_sum(const HermLattice& a, const HermLattice& b) {
  check_same_field(a.field, b.field);
  std::size_t k = a.k + b.k;
  std::vector<AlgInt> e(k * k);
  for (std::size_t i = 0; i < a.k; ++i)
    for (std::size_t j = 0; j < a.k; ++j) e[i * k + j] = a.h(i, j);
  for (std::size_t i = 0; i < b.k; ++i)
    for (std::size_t j = 0; j < b.k; ++j) e[(a.k + i) * k + (a.k + j)] = b.h(i, j);
  HermLattice out;
  out.field = a.field;
  out.k = k;
  out.gram = std::move(e);
  return out;
}

namespace {

// Does the set of module elements (rows, Z^{2k} coordinates) together with
// the w-images and the presentation relations span the whole module?
bool elements_generate(const HermLattice& l, const std::vector<std::vector<Int>>& elems) {
  ZRealization z = realize(l);
  IMat rel = relations(l);
  std::size_t n = 2 * l.k;
  IMat rows(2 * elems.size() + rel.r, n);
  std::size_t r = 0;
  for (const auto& e : elems) {
    for (std::size_t c = 0; c < n; ++c) rows(r, c) = e[c];
    ++r;
    for (std::size_t i = 0; i < n; ++i) {
      Int acc = 0;
      for (std::size_t c = 0; c < n; ++c)
        if (z.j(i, c) != 0) acc += z.j(i, c) * e[c];
      rows(r, i) = acc;
    }
    ++r;
  }
  for (std::size_t i = 0; i < rel.r; ++i, ++r)
    for (std::size_t c = 0; c < n; ++c) rows(r, c) = rel(i, c);
  IMat h = hnf_rows(rows);
  return h == identity<Int>(n);
}

std::vector<Int> unit_coords(std::size_t n, std::size_t i) {
  std::vector<Int> e(n, Int(0));
  e[i] = 1;
  return e;
}

HermLattice subgram(const HermLattice& l, const std::vector<std::size_t>& keep) {
  std::size_t k = keep.size();
  std::vector<AlgInt> e(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) e[i * k + j] = l.h(keep[i], keep[j]);
  HermLattice out;
  out.field = l.field;
  out.k = k;
  out.gram = std::move(e);
  return out;
}

}  // namespace

HermLattice prune_generators(const HermLattice& l) {
  std::vector<std::size_t> keep(l.k);
  for (std::size_t i = 0; i < l.k; ++i) keep[i] = i;
  bool shrunk = true;
  while (shrunk && keep.size() > 1) {
    shrunk = false;
    for (std::size_t drop = keep.size(); drop-- > 0;) {
      std::vector<std::size_t> trial = keep;
      trial.erase(trial.begin() + drop);
      std::vector<std::vector<Int>> elems;
      for (std::size_t g : trial) elems.push_back(unit_coords(2 * l.k, 2 * g));
      if (elements_generate(l, elems)) {
        keep = trial;
        shrunk = true;
        break;
      }
    }
  }
  return subgram(l, keep);
}

Int content_gcd(const HermLattice& l) {
  Int g = 0;
  for (const AlgInt& e : l.gram) g = gcd(gcd(g, e.a), e.b);
  return g;
}

namespace {

// Module elements of value <= cap, one per +- pair, with their values;
// coordinates in Z^{2k}.
std::vector<std::pair<Int, std::vector<Int>>> elements_up_to(const HermLattice& l,
                                                             const Int& cap) {
  QuadForm q = associate(l);
  Enumerator e(q);
  return e.short_vectors(cap);
}

struct Rank2Coords {
  std::size_t ga = 0, gb = 0;  // generator indices forming a basis of the span
  Int delta = 0;               // det of their 2x2 Gram
};

std::optional<Rank2Coords> rank2_frame(const HermLattice& l) {
  for (std::size_t a = 0; a < l.k; ++a)
    for (std::size_t b = a + 1; b < l.k; ++b) {
      Int delta = l.h(a, a).a * l.h(b, b).a - norm(l.field, l.h(a, b));
      if (delta > 0) {
        Rank2Coords fr;
        fr.ga = a;
        fr.gb = b;
        fr.delta = delta;
        return fr;
      }
    }
  return std::nullopt;
}

// delta * (coordinates of g_i in the basis (g_a, g_b)) as ring elements.
std::pair<AlgInt, AlgInt> scaled_coords(const HermLattice& l, const Rank2Coords& fr,
                                        std::size_t i) {
  const Field& f = l.field;
  AlgInt haa = l.h(fr.ga, fr.ga), hbb = l.h(fr.gb, fr.gb);
  AlgInt hab = l.h(fr.ga, fr.gb), hba = l.h(fr.gb, fr.ga);
  AlgInt p = l.h(i, fr.ga), q = l.h(i, fr.gb);
  AlgInt alpha = sub(mul(f, p, hbb), mul(f, q, hba));
  AlgInt beta = sub(mul(f, q, haa), mul(f, p, hab));
  return {alpha, beta};
}

// Steinitz test for rank-2 lattices: the class of the second exterior power.
bool rank2_is_free(const HermLattice& l) {
  auto fr = rank2_frame(l);
  require(fr.has_value(), Errc::internal, "rank-2 frame not found");
  const Field& f = l.field;
  std::vector<std::pair<AlgInt, AlgInt>> co;
  for (std::size_t i = 0; i < l.k; ++i) co.push_back(scaled_coords(l, *fr, i));
  std::vector<AlgInt> wedges;
  for (std::size_t i = 0; i < l.k; ++i)
    for (std::size_t j = i + 1; j < l.k; ++j) {
      AlgInt w = sub(mul(f, co[i].first, co[j].second), mul(f, co[j].first, co[i].second));
      if (!w.is_zero()) wedges.push_back(w);
    }
  Ideal cls = ideal_from_gens(f, wedges);
  return ideal_principal_gen(f, cls).has_value();
}

}  // namespace

HermLattice minkowski_reduce(const HermLattice& l) {
  require(rank_of(l) == 2, Errc::not_binary, "reduction is defined for rank-2 lattices");
  HermLattice p = prune_generators(l);
  const Field& f = l.field;

  IMat rel = relations(p);
  bool plainly_free = (p.k == 2 && rel.r == 0);
  if (!plainly_free)
    require(rank2_is_free(p), Errc::not_free, "lattice admits no free basis");

  // Search elements by growing value cap until some pair spans the module.
  Int cap = 2;
  for (std::size_t i = 0; i < p.k; ++i) cap = std::max(cap, p.h(i, i).a);
  std::vector<std::pair<Int, std::vector<Int>>> vecs;
  auto spans = [&](const std::vector<Int>& v, const std::vector<Int>& w) {
    return elements_generate(p, {v, w});
  };
  std::optional<std::pair<Int, Int>> best;  // minimal (value_v, value_w)
  std::vector<std::pair<std::vector<Int>, std::vector<Int>>> best_pairs;
  while (true) {
    vecs = elements_up_to(p, cap);
    std::sort(vecs.begin(), vecs.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    best.reset();
    best_pairs.clear();
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      if (best && vecs[i].first > best->first) break;
      for (std::size_t j = 0; j < vecs.size(); ++j) {
        if (i == j) continue;
        std::pair<Int, Int> key{vecs[i].first, vecs[j].first};
        if (best && key > *best) continue;
        // Both signs of each vector give unit-equivalent pairs; the +-
        // variants of the second vector still matter for the cross entry.
        for (int sv : {1, -1}) {
          for (int sw : {1, -1}) {
            std::vector<Int> v = vecs[i].second, w = vecs[j].second;
            if (sv < 0)
              for (auto& t : v) t = -t;
            if (sw < 0)
              for (auto& t : w) t = -t;
            if (!spans(v, w)) break;  // sign does not change the span
            if (!best || key < *best) {
              best = key;
              best_pairs.clear();
            }
            if (key == *best) best_pairs.push_back({v, w});
          }
        }
      }
    }
    if (best) break;
    cap *= 2;
  }

  // Canonical representative: minimal (a, b), then the cross entry with the
  // lexicographically greatest (w-part, rational part).
  Int a = best->first, b = best->second;
  std::optional<AlgInt> h;
  for (auto& [v, w] : best_pairs) {
    AlgInt cand = pair_elements(p, v, w);
    if (!h || std::pair<Int, Int>{cand.b, cand.a} > std::pair<Int, Int>{h->b, h->a}) h = cand;
  }
  return lattice_binary(f, a, *h, b);
}

bool is_isometric(const HermLattice& a, const HermLattice& b) {
  check_same_field(a.field, b.field);
  std::size_t ra = rank_of(a), rb = rank_of(b);
  require(ra <= 2 && rb <= 2, Errc::rank_too_large,
          "isometry testing is implemented for rank <= 2");
  if (ra != rb) return false;
  if (ra == 0) return true;
  if (volume_ideal(a) != volume_ideal(b)) return false;
  if (scale_ideal(a) != scale_ideal(b)) return false;
  if (norm_ideal_gen(a) != norm_ideal_gen(b)) return false;

  HermLattice pa = prune_generators(a);
  const HermLattice& pb = b;
  std::size_t ka = pa.k, nb = 2 * pb.k;

  // Candidate images in b for each generator of a, by exact value.
  std::vector<std::vector<std::vector<Int>>> candidates(ka);
  std::map<Int, std::vector<std::vector<Int>>> by_value;
  Int maxval = 0;
  for (std::size_t i = 0; i < ka; ++i) maxval = std::max(maxval, pa.h(i, i).a);
  auto vecs = elements_up_to(pb, maxval);
  for (auto& [val, x] : vecs) {
    by_value[val].push_back(x);
    std::vector<Int> neg = x;
    for (auto& t : neg) t = -t;
    by_value[val].push_back(neg);
  }
  for (std::size_t i = 0; i < ka; ++i) {
    auto it = by_value.find(pa.h(i, i).a);
    if (it == by_value.end()) return false;
    candidates[i] = it->second;
  }

  std::vector<std::vector<Int>> assigned;
  auto backtrack = [&](auto&& self, std::size_t i) -> bool {
    if (i == ka) return elements_generate(pb, assigned);
    for (const auto& w : candidates[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = pair_elements(pb, w, assigned[j]) == pa.h(i, j);
      if (!ok) continue;
      assigned.push_back(w);
      if (self(self, i + 1)) return true;
      assigned.pop_back();
    }
    return false;
  };
  return backtrack(backtrack, 0);
}

std::string to_string(const HermLattice& l) {
  bool diag = true;
  for (std::size_t i = 0; i < l.k && diag; ++i)
    for (std::size_t j = 0; j < l.k && diag; ++j)
      if (i != j && !l.h(i, j).is_zero()) diag = false;
  std::ostringstream os;
  if (diag) {
    os << "<";
    for (std::size_t i = 0; i < l.k; ++i) {
      if (i) os << ",";
      os << l.h(i, i).a.str();
    }
    os << ">";
    return os.str();
  }
  if (l.k == 2) {
    os << "[" << l.h(0, 0).a.str() << ", " << to_string(l.h(0, 1)) << ", " << l.h(1, 1).a.str()
       << "]";
    return os.str();
  }
  os << "[";
  for (std::size_t i = 0; i < l.k; ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < l.k; ++j) {
      if (j) os << ",";
      os << to_string(l.h(i, j));
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace hermlat
