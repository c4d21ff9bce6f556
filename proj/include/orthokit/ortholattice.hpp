#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "orthokit/bits.hpp"
#include "orthokit/clique.hpp"
#include "orthokit/error.hpp"
#include "orthokit/map.hpp"
#include "orthokit/orthoset.hpp"

namespace orthokit {

inline constexpr std::size_t kDefaultLatticeLimit = 1'000'000;

namespace detail {

inline std::vector<Bits> transpose(const std::vector<Bits>& m) {
  const std::size_t n = m.size();
  std::vector<Bits> t(n, Bits(n));
  for (Index i = 0; i < n; ++i) m[i].for_each([&](Index j) { t[j].set(i); });
  return t;
}

}  // namespace detail

/// Finite bounded poset with an order-reversing involution; up[a] = ↑a.
/// Bottom is index 0.
class Orthoposet {
 public:
  Orthoposet() : Orthoposet(std::vector<Bits>{Bits::full(1)}, {0}, {}, 0) {}

  static Orthoposet validate(std::vector<Bits> up, std::vector<Index> comp, std::vector<std::string> labels = {}) {
    const std::size_t n = up.size();
    if (n == 0) throw Error(ErrorCode::InvalidLattice, "empty poset");
    if (comp.size() != n) throw Error(ErrorCode::InvalidLattice, "complement table has wrong length");
    if (!labels.empty() && labels.size() != n) throw Error(ErrorCode::InvalidLattice, "label count differs from size");
    for (Index a = 0; a < n; ++a) {
      if (up[a].length() != n) throw Error(ErrorCode::InvalidLattice, "order row has wrong length", {a});
      if (!up[a].test(a)) throw Error(ErrorCode::InvalidLattice, "order is not reflexive", {a});
      if (comp[a] >= n) throw Error(ErrorCode::InvalidLattice, "complement out of range", {a});
    }
    for (Index a = 0; a < n; ++a) {
      for (Index b = up[a].first(); b < n; b = up[a].next(b + 1)) {
        if (b != a && up[b].test(a)) throw Error(ErrorCode::InvalidLattice, "order is not antisymmetric", {a, b});
        if (!up[b].subset_of(up[a])) throw Error(ErrorCode::InvalidLattice, "order is not transitive", {a, b});
      }
    }
    Index bottom = n, top = n;
    for (Index a = 0; a < n; ++a)
      if (up[a].all()) bottom = a;
    auto down = detail::transpose(up);
    for (Index a = 0; a < n; ++a)
      if (down[a].all()) top = a;
    if (bottom == n || top == n) throw Error(ErrorCode::InvalidLattice, "poset is not bounded");
    for (Index a = 0; a < n; ++a) {
      const Index c = comp[a];
      if (comp[c] != a) throw Error(ErrorCode::InvalidLattice, "complement is not an involution", {a});
      for (Index b = up[a].first(); b < n; b = up[a].next(b + 1))
        if (!up[comp[b]].test(c)) throw Error(ErrorCode::InvalidLattice, "complement is not order-reversing", {a, b});
      // bottom must be the only common lower bound of a and a'
      if ((down[a] & down[c]) != Bits(n, {bottom}))
        throw Error(ErrorCode::InvalidLattice, "a and its complement have a nonzero lower bound", {a});
    }
    // Move bottom to index 0.
    if (bottom != 0) {
      std::vector<Index> perm(n);
      for (Index i = 0; i < n; ++i) perm[i] = i;
      std::swap(perm[0], perm[bottom]);
      std::vector<Bits> up2(n, Bits(n));
      std::vector<Index> comp2(n);
      for (Index a = 0; a < n; ++a) {
        up[a].for_each([&](Index b) { up2[perm[a]].set(perm[b]); });
        comp2[perm[a]] = perm[comp[a]];
      }
      if (!labels.empty()) std::swap(labels[0], labels[bottom]);
      if (top == 0) top = bottom;
      up = std::move(up2);
      comp = std::move(comp2);
    }
    return Orthoposet(std::move(up), std::move(comp), std::move(labels), top);
  }

  std::size_t size() const { return up_.size(); }
  Index bottom() const { return 0; }
  Index top() const { return top_; }
  bool leq(Index a, Index b) const { return up_[a].test(b); }
  Index comp(Index a) const { return comp_[a]; }
  const Bits& up(Index a) const { return up_[a]; }
  const std::vector<Bits>& up_sets() const { return up_; }
  const std::vector<Index>& complements() const { return comp_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Index a) const { return labels_.empty() ? std::to_string(a) : labels_[a]; }

 private:
  Orthoposet(std::vector<Bits> up, std::vector<Index> comp, std::vector<std::string> labels, Index top)
      : up_(std::move(up)), comp_(std::move(comp)), labels_(std::move(labels)), top_(top) {}

  std::vector<Bits> up_;
  std::vector<Index> comp_;
  std::vector<std::string> labels_;
  Index top_ = 0;
};

/// Finite ortholattice, bottom at index 0. Either abstract (order and
/// meet/join tables) or the lattice C(X) of an orthoset, held as its
/// orthoclosed sets in canonical order.
class Ortholattice {
 public:
  /// The one-element lattice C(𝟎).
  Ortholattice() : Ortholattice(Orthoposet()) {}

  /// Abstract lattice from an orthoposet; fails with InvalidLattice if some
  /// pair lacks a meet or join.
  explicit Ortholattice(const Orthoposet& p) {
    auto d = std::make_shared<Data>();
    const std::size_t n = p.size();
    d->n = n;
    d->top = p.top();
    d->comp = p.complements();
    d->labels = p.labels();
    d->up = p.up_sets();
    auto down = detail::transpose(d->up);
    d->meet.assign(n * n, 0);
    d->join.assign(n * n, 0);
    for (Index a = 0; a < n; ++a) {
      for (Index b = a; b < n; ++b) {
        const Bits ub = d->up[a] & d->up[b];
        const Bits lb = down[a] & down[b];
        Index j = n, m = n;
        for (Index c = ub.first(); c < n; c = ub.next(c + 1))
          if (ub.subset_of(d->up[c])) {
            j = c;
            break;
          }
        for (Index c = lb.first(); c < n; c = lb.next(c + 1))
          if (lb.subset_of(down[c])) {
            m = c;
            break;
          }
        if (j == n) throw Error(ErrorCode::InvalidLattice, "no join", {a, b});
        if (m == n) throw Error(ErrorCode::InvalidLattice, "no meet", {a, b});
        d->join[a * n + b] = d->join[b * n + a] = j;
        d->meet[a * n + b] = d->meet[b * n + a] = m;
      }
    }
    for (Index a = 0; a < n; ++a)
      if (d->join[a * n + d->comp[a]] != d->top)
        throw Error(ErrorCode::InvalidLattice, "a join a' is not the top", {a});
    data_ = std::move(d);
  }

  static Ortholattice from_order(std::vector<Bits> up, std::vector<Index> comp, std::vector<std::string> labels = {}) {
    return Ortholattice(Orthoposet::validate(std::move(up), std::move(comp), std::move(labels)));
  }

  /// From the covering relation (pairs a ⋖ b); the order is its reflexive
  /// transitive closure.
  static Ortholattice from_covers(std::size_t n, const std::vector<std::pair<Index, Index>>& covers,
                                  std::vector<Index> comp, std::vector<std::string> labels = {}) {
    std::vector<Bits> up(n, Bits(n));
    for (Index a = 0; a < n; ++a) up[a].set(a);
    for (auto [a, b] : covers) {
      if (a >= n || b >= n) throw Error(ErrorCode::InvalidLattice, "cover pair out of range", {a, b});
      up[a].set(b);
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (Index a = 0; a < n; ++a) {
        Bits r = up[a];
        up[a].for_each([&](Index b) { r |= up[b]; });
        if (!(r == up[a])) {
          up[a] = std::move(r);
          changed = true;
        }
      }
    }
    return from_order(std::move(up), std::move(comp), std::move(labels));
  }

  /// C(X) from its orthoclosed sets (any order; sorted canonically here).
  static Ortholattice from_closed_sets(const Orthoset& x, std::vector<Bits> sets) {
    std::sort(sets.begin(), sets.end(), canonical_less);
    auto d = std::make_shared<Data>();
    d->n = sets.size();
    d->carrier = x;
    d->sets = std::move(sets);
    d->index.reserve(d->n * 2);
    for (Index i = 0; i < d->n; ++i) d->index.emplace(d->sets[i], i);
    d->top = d->n - 1;
    d->comp.resize(d->n);
    for (Index i = 0; i < d->n; ++i) {
      auto it = d->index.find(perp_bits(x, d->sets[i]));
      if (it == d->index.end()) throw Error(ErrorCode::InvalidLattice, "family is not closed under complement", {i});
      d->comp[i] = it->second;
    }
    Ortholattice l;
    l.data_ = std::move(d);
    return l;
  }

  std::size_t size() const { return data_->n; }
  Index bottom() const { return 0; }
  Index top() const { return data_->top; }
  Index comp(Index a) const { return data_->comp[a]; }

  bool leq(Index a, Index b) const {
    if (set_based()) return data_->sets[a].subset_of(data_->sets[b]);
    return data_->up[a].test(b);
  }
  Index meet(Index a, Index b) const {
    if (set_based()) return data_->index.at(data_->sets[a] & data_->sets[b]);
    return data_->meet[a * data_->n + b];
  }
  Index join(Index a, Index b) const {
    if (set_based()) return data_->index.at(closure_bits(*data_->carrier, data_->sets[a] | data_->sets[b]));
    return data_->join[a * data_->n + b];
  }

  bool set_based() const { return data_->carrier.has_value(); }
  const Orthoset& carrier() const { return *data_->carrier; }
  const Bits& set(Index a) const { return data_->sets[a]; }
  const std::vector<Bits>& sets() const { return data_->sets; }
  std::optional<Index> index_of(const Bits& s) const {
    if (!set_based()) return std::nullopt;
    auto it = data_->index.find(s);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  /// Element label; sets print as "{0,s,w}".
  std::string label(Index a) const {
    if (set_based()) {
      std::string s = "{";
      bool first = true;
      data_->sets[a].for_each([&](Index i) {
        s += (first ? "" : ",") + data_->carrier->label(i);
        first = false;
      });
      return s + "}";
    }
    return data_->labels.empty() ? std::to_string(a) : data_->labels[a];
  }
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (Index a = 0; a < size(); ++a) out.push_back(label(a));
    return out;
  }
  std::optional<Index> find(std::string_view name) const {
    for (Index a = 0; a < size(); ++a)
      if (label(a) == name) return a;
    return std::nullopt;
  }

  /// ↑a for every a.
  std::vector<Bits> up_sets() const {
    if (!set_based()) return data_->up;
    const std::size_t n = size();
    std::vector<Bits> up(n, Bits(n));
    for (Index a = 0; a < n; ++a)
      for (Index b = a; b < n; ++b)  // canonical order extends inclusion
        if (data_->sets[a].subset_of(data_->sets[b])) up[a].set(b);
    return up;
  }

  Orthoposet to_orthoposet() const { return Orthoposet::validate(up_sets(), data_->comp, labels()); }

  /// Covering pairs (a, b), a ⋖ b, sorted.
  std::vector<std::pair<Index, Index>> covers() const {
    const auto up = up_sets();
    const auto down = detail::transpose(up);
    std::vector<std::pair<Index, Index>> out;
    for (Index a = 0; a < size(); ++a) {
      Bits strict = up[a];
      strict.reset(a);
      strict.for_each([&](Index b) {
        if ((strict & down[b]).count() == 1) out.emplace_back(a, b);
      });
    }
    return out;
  }

  std::vector<Index> atoms() const {
    std::vector<Index> out;
    for (auto [a, b] : covers())
      if (a == 0) out.push_back(b);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Data {
    std::size_t n = 0;
    Index top = 0;
    std::vector<Index> comp;
    std::vector<std::string> labels;
    std::vector<Bits> up;
    std::vector<Index> meet, join;
    std::optional<Orthoset> carrier;
    std::vector<Bits> sets;
    std::unordered_map<Bits, Index, BitsHash> index;
  };

  std::shared_ptr<const Data> data_;
};

// --- C(X) -----------------------------------------------------------------

/// All orthoclosed subsets of X: the ∩-closure of the point complements.
/// Output order is canonical regardless of `threads`.
inline Ortholattice build_CX(const Orthoset& x, std::size_t limit = kDefaultLatticeLimit, unsigned threads = 1) {
  if (limit < 2) throw Error(ErrorCode::InvalidArgument, "lattice limit must be at least 2");
  std::vector<Bits> gens;
  {
    std::unordered_set<Bits, BitsHash> seen_gen;
    for (Index i = 1; i < x.size(); ++i)
      if (seen_gen.insert(x.row(i)).second) gens.push_back(x.row(i));
  }
  std::unordered_set<Bits, BitsHash> seen;
  std::vector<Bits> all{Bits::full(x.size())};
  seen.insert(all[0]);
  std::vector<Bits> frontier = all;
  auto over = [&] {
    throw Error(ErrorCode::LimitExceeded, "C(X) has more than " + std::to_string(limit) + " elements",
                {static_cast<Index>(limit)});
  };
  if (threads == 0) threads = 1;
  while (!frontier.empty()) {
    std::vector<std::vector<Bits>> local(threads);
    auto work = [&](unsigned t) {
      for (std::size_t i = t; i < frontier.size(); i += threads)
        for (const auto& g : gens) {
          Bits s = frontier[i] & g;
          if (!seen.count(s)) local[t].push_back(std::move(s));
        }
    };
    if (threads == 1 || frontier.size() < 2 * threads) {
      for (unsigned t = 0; t < threads; ++t) work(t);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    std::vector<Bits> next;
    for (auto& v : local)
      for (auto& s : v)
        if (seen.insert(s).second) {
          next.push_back(s);
          if (seen.size() > limit) over();
        }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return Ortholattice::from_closed_sets(x, std::move(all));
}

// --- lattice properties ---------------------------------------------------

struct CoveringWitness {
  Index a, p, c;  // p atom, p ≰ a, a < c < a ∨ p
};

struct LatticeReport {
  std::size_t size = 0;
  bool orthomodular = true;
  std::optional<std::pair<Index, Index>> orthomodular_witness;  // a ≤ b, b ≠ a ∨ (b ∧ a')
  bool atomistic = true;
  std::optional<Index> atomistic_witness;  // not a join of atoms
  bool covering = true;
  std::optional<CoveringWitness> covering_witness;
  bool irreducible = true;
  std::optional<Index> central_witness;
  std::vector<Index> atoms;
};

/// Whether a ↦ (a ∧ z, a ∧ z') is an ortholattice isomorphism onto
/// [0, z] × [0, z'].
inline bool splits_at(const Ortholattice& l, Index z, const std::vector<Bits>& up, const std::vector<Bits>& down) {
  const std::size_t n = l.size();
  const Index zc = l.comp(z);
  for (Index a = 0; a < n; ++a)
    if (l.join(l.meet(a, z), l.meet(a, zc)) != a) return false;
  if (down[z].count() * down[zc].count() != n) return false;
  std::vector<std::pair<Index, Index>> phi(n);
  for (Index a = 0; a < n; ++a) phi[a] = {l.meet(a, z), l.meet(a, zc)};
  {
    auto sorted = phi;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const bool le = up[a].test(b);
      const bool le2 = up[phi[a].first].test(phi[b].first) && up[phi[a].second].test(phi[b].second);
      if (le != le2) return false;
    }
  for (Index a = 0; a < n; ++a) {
    const auto c = phi[l.comp(a)];
    if (c.first != l.meet(l.comp(phi[a].first), z) || c.second != l.meet(l.comp(phi[a].second), zc)) return false;
  }
  return true;
}

inline LatticeReport lattice_report(const Ortholattice& l) {
  LatticeReport r;
  const std::size_t n = l.size();
  r.size = n;
  const auto up = l.up_sets();
  const auto down = detail::transpose(up);
  for (Index a = 1; a < n; ++a)
    if (down[a].count() == 2) r.atoms.push_back(a);

  for (Index a = 0; a < n && r.orthomodular; ++a)
    for (Index b = up[a].first(); b < n; b = up[a].next(b + 1))
      if (l.join(a, l.meet(b, l.comp(a))) != b) {
        r.orthomodular = false;
        r.orthomodular_witness = {a, b};
        break;
      }

  for (Index a = 0; a < n; ++a) {
    Index j = 0;
    for (Index p : r.atoms)
      if (up[p].test(a)) j = l.join(j, p);
    if (j != a) {
      r.atomistic = false;
      r.atomistic_witness = a;
      break;
    }
  }

  for (Index a = 0; a < n && r.covering; ++a)
    for (Index p : r.atoms) {
      if (up[p].test(a)) continue;
      const Index j = l.join(a, p);
      Bits between = up[a] & down[j];
      between.reset(a);
      between.reset(j);
      if (between.any()) {
        r.covering = false;
        r.covering_witness = CoveringWitness{a, p, between.first()};
        break;
      }
    }

  for (Index z = 1; z < n; ++z) {
    if (z == l.top()) continue;
    if (splits_at(l, z, up, down)) {
      r.irreducible = false;
      r.central_witness = z;
      break;
    }
  }
  return r;
}

// --- Dacey spaces ---------------------------------------------------------

struct DaceyReport {
  bool dacey = true;
  std::optional<std::pair<Index, Index>> orthomodular_witness;  // lattice indices
  std::optional<Index> subspace_witness;                        // lattice index of A
  std::optional<Bits> maximal_set_witness;                      // D with D⊥⊥ ≠ A
};

/// Criterion (d): every maximal ⊥-set D inside each A ∈ C(X) has D⊥⊥ = A.
inline DaceyReport dacey_by_maximal_sets(const Orthoset& x, const Ortholattice& cx) {
  DaceyReport r;
  const auto adj = proper_adjacency(x);
  for (Index i = 0; i < cx.size() && r.dacey; ++i) {
    Bits vertices = cx.set(i);
    vertices.reset(0);
    clique::maximal_cliques(adj, vertices, [&](const Bits& d) {
      if (closure_bits(x, d) == cx.set(i)) return true;
      r.dacey = false;
      r.subspace_witness = i;
      r.maximal_set_witness = d;
      return false;
    });
  }
  return r;
}

/// Decides whether C(X) is orthomodular, both from the lattice and from
/// maximal ⊥-sets; the two must agree.
inline DaceyReport dacey_report(const Orthoset& x, const Ortholattice& cx) {
  const auto lr = lattice_report(cx);
  auto r = dacey_by_maximal_sets(x, cx);
  if (r.dacey != lr.orthomodular)
    throw Error(ErrorCode::InternalCriterionMismatch, "orthomodularity and the maximal-set criterion disagree");
  r.orthomodular_witness = lr.orthomodular_witness;
  return r;
}

inline bool is_dacey(const Orthoset& x, std::size_t limit = kDefaultLatticeLimit) {
  return dacey_report(x, build_CX(x, limit)).dacey;
}

// --- lattices as orthosets ------------------------------------------------

/// {0} ∪ atoms, in index order.
inline std::vector<Index> basic_element_indices(const Ortholattice& l) {
  std::vector<Index> out{0};
  for (Index a : l.atoms()) out.push_back(a);
  return out;
}

inline Orthoset orthoset_on(const Ortholattice& l, const std::vector<Index>& elems) {
  const std::size_t m = elems.size();
  std::vector<Bits> rows(m, Bits(m));
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      if (l.leq(elems[i], l.comp(elems[j]))) rows[i].set(j);
  std::vector<std::string> labels;
  for (Index e : elems) labels.push_back(l.label(e));
  return Orthoset::validate(std::move(rows), std::move(labels));
}

/// B(L): bottom and atoms, x ⊥ y iff x ≤ y'.
inline Orthoset basic_elements(const Ortholattice& l) { return orthoset_on(l, basic_element_indices(l)); }

/// L^OS: all of L with x ⊥ y iff x ≤ y'. Index i of L^OS is element i of L.
inline Orthoset lattice_as_orthoset(const Ortholattice& l) {
  std::vector<Index> all(l.size());
  for (Index i = 0; i < all.size(); ++i) all[i] = i;
  return orthoset_on(l, all);
}

/// The map ↓a ↦ a from C(L^OS) to L, as a table indexed by C(L^OS).
/// Throws InvalidLattice if some closed set is not a principal ideal.
inline std::vector<Index> principal_ideal_map(const Ortholattice& l, const Ortholattice& c_of_los) {
  std::vector<Index> table(c_of_los.size());
  for (Index i = 0; i < c_of_los.size(); ++i) {
    const Bits& s = c_of_los.set(i);
    Index top = l.size();
    s.for_each([&](Index a) {
      if (top == l.size() || l.leq(top, a)) top = a;
    });
    for (Index a = 0; a < l.size(); ++a)
      if (s.test(a) != l.leq(a, top)) throw Error(ErrorCode::InvalidLattice, "closed set is not a principal ideal", {i});
    table[i] = top;
  }
  return table;
}

/// Whether `phi` (indexed by a's elements) is an ortholattice isomorphism a → b.
inline bool is_lattice_isomorphism(const Ortholattice& a, const Ortholattice& b, const std::vector<Index>& phi) {
  if (a.size() != b.size() || phi.size() != a.size()) return false;
  Bits hit(b.size());
  for (Index v : phi) {
    if (v >= b.size() || hit.test(v)) return false;
    hit.set(v);
  }
  for (Index x = 0; x < a.size(); ++x) {
    if (phi[a.comp(x)] != b.comp(phi[x])) return false;
    for (Index y = 0; y < a.size(); ++y)
      if (a.leq(x, y) != b.leq(phi[x], phi[y])) return false;
  }
  return true;
}

// --- maps ------------------------------------------------------------------

/// C(f): A ↦ f(A)⊥⊥ as a map between the L^OS carriers of C(dom) and C(cod).
inline OrthoMap C_on_map(const OrthoMap& f, const Ortholattice& cx, const Orthoset& cx_os, const Ortholattice& cy,
                         const Orthoset& cy_os) {
  std::vector<Index> t(cx.size());
  for (Index i = 0; i < cx.size(); ++i) t[i] = *cy.index_of(closure_bits(f.cod(), f.image_bits(cx.set(i))));
  return {cx_os, cy_os, std::move(t)};
}

inline OrthoMap C_on_map(const OrthoMap& f, std::size_t limit = kDefaultLatticeLimit) {
  const auto cx = build_CX(f.dom(), limit);
  const auto cy = build_CX(f.cod(), limit);
  return C_on_map(f, cx, lattice_as_orthoset(cx), cy, lattice_as_orthoset(cy));
}

// --- Dedekind-MacNeille ----------------------------------------------------

/// Checks that a ↦ ↓a ∩ X embeds the orthoposet into C(X) as its
/// Dedekind-MacNeille completion. `xs` must contain the bottom and be
/// join-dense (NotJoinDense otherwise).
inline bool macneille_check(const Orthoposet& p, const std::vector<Index>& xs) {
  const std::size_t n = p.size();
  Bits in_x(n);
  for (Index v : xs) {
    if (v >= n) throw Error(ErrorCode::InvalidArgument, "element out of range", {v});
    in_x.set(v);
  }
  if (!in_x.test(0)) throw Error(ErrorCode::NotJoinDense, "subset does not contain the bottom", {0});
  const auto down = detail::transpose(p.up_sets());
  for (Index a = 0; a < n; ++a) {
    Bits ub = Bits::full(n);
    (down[a] & in_x).for_each([&](Index d) { ub &= p.up(d); });
    if (!ub.subset_of(p.up(a))) throw Error(ErrorCode::NotJoinDense, "element is not a join of subset elements", {a});
  }
  std::vector<Index> elems = in_x.members();
  std::vector<Bits> rows(elems.size(), Bits(elems.size()));
  for (Index i = 0; i < elems.size(); ++i)
    for (Index j = 0; j < elems.size(); ++j)
      if (p.leq(elems[i], p.comp(elems[j]))) rows[i].set(j);
  std::vector<std::string> labels;
  for (Index e : elems) labels.push_back(p.label(e));
  const auto xos = Orthoset::validate(std::move(rows), std::move(labels));
  const auto cx = build_CX(xos);
  auto iota = [&](Index a) {
    Bits b(elems.size());
    for (Index i = 0; i < elems.size(); ++i)
      if (p.leq(elems[i], a)) b.set(i);
    return b;
  };
  std::vector<Bits> image(n);
  for (Index a = 0; a < n; ++a) {
    image[a] = iota(a);
    if (!cx.index_of(image[a])) return false;
  }
  for (Index a = 0; a < n; ++a) {
    if (!(image[p.comp(a)] == perp_bits(xos, image[a]))) return false;
    for (Index b = 0; b < n; ++b)
      if (p.leq(a, b) != image[a].subset_of(image[b])) return false;
  }
  for (Index i = 0; i < cx.size(); ++i) {
    const Bits& s = cx.set(i);
    Bits joined(elems.size()), met = Bits::full(elems.size());
    for (Index a = 0; a < n; ++a) {
      if (image[a].subset_of(s)) joined |= image[a];
      if (s.subset_of(image[a])) met &= image[a];
    }
    if (!(closure_bits(xos, joined) == s) || !(met == s)) return false;
  }
  return true;
}

}  // namespace orthokit
