#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orthokit/map.hpp"
#include "orthokit/ortholattice.hpp"
#include "orthokit/orthoset.hpp"

namespace orthokit {

struct AdjointResult {
  bool adjointable = false;
  std::optional<OrthoMap> canonical;
  /// candidates[y] = C_y = { z ∈ dom : {z}⊥ = S_y }.
  std::vector<Subset> candidates;
  /// profiles[y] = S_y = { x ∈ dom : f(x) ⊥ y }.
  std::vector<Subset> profiles;
  /// Least cod element with empty C_y.
  std::optional<Index> witness;
};

inline AdjointResult find_adjoint(const OrthoMap& f) {
  const auto& x = f.dom();
  const auto& y = f.cod();
  std::vector<Bits> profile(y.size(), Bits(x.size()));
  for (Index a = 0; a < x.size(); ++a) y.row(f(a)).for_each([&](Index b) { profile[b].set(a); });

  std::unordered_map<Bits, Bits, BitsHash> by_row;
  for (Index z = 0; z < x.size(); ++z) {
    auto [it, fresh] = by_row.try_emplace(x.row(z), Bits(x.size()));
    it->second.set(z);
  }

  AdjointResult r;
  std::vector<Index> table(y.size(), 0);
  bool ok = true;
  for (Index b = 0; b < y.size(); ++b) {
    auto it = by_row.find(profile[b]);
    Bits c = it == by_row.end() ? Bits(x.size()) : it->second;
    if (c.none()) {
      if (ok) r.witness = b;
      ok = false;
    } else {
      table[b] = c.first();
    }
    r.candidates.emplace_back(x.fingerprint(), std::move(c));
    r.profiles.emplace_back(x.fingerprint(), std::move(profile[b]));
  }
  r.adjointable = ok;
  if (ok) r.canonical = OrthoMap(y, x, std::move(table));
  return r;
}

inline bool is_adjointable(const OrthoMap& f) { return find_adjoint(f).adjointable; }

/// Literal check of f(x) ⊥ y ⇔ x ⊥ g(y).
inline bool is_adjoint_pair(const OrthoMap& f, const OrthoMap& g) {
  if (!(g.dom() == f.cod()) || !(g.cod() == f.dom()))
    throw Error(ErrorCode::DomainMismatch, "g must map the codomain of f to its domain");
  const auto& x = f.dom();
  const auto& y = f.cod();
  for (Index a = 0; a < x.size(); ++a)
    for (Index b = 0; b < y.size(); ++b)
      if (y.orthogonal(f(a), b) != x.orthogonal(a, g(b))) return false;
  return true;
}

/// The canonical adjoint; throws NotAdjointable.
inline OrthoMap adjoint(const OrthoMap& f) {
  auto r = find_adjoint(f);
  if (!r.adjointable) throw Error(ErrorCode::NotAdjointable, "map has no adjoint", {*r.witness});
  return *r.canonical;
}

// --- classification -------------------------------------------------------

struct ZeroKernelRestriction {
  Suborthoset dom;  // (ker f)⊥
  Suborthoset cod;  // (im f)⊥⊥
  OrthoMap map;
};

struct MapClassification {
  bool adjointable = false;
  bool preserves_perp = false;
  bool reflects_perp = false;
  bool injective = false;
  bool surjective = false;
  bool zero_kernel = false;
  bool image_closed = false;
  bool orthoisomorphism = false;
  bool partial_orthometry = false;
  bool orthometry = false;
  bool coorthometry = false;
  std::optional<bool> projection;
  std::optional<bool> self_adjoint;
  std::optional<bool> scalar;
  Subset kernel;
  Subset image;
  ZeroKernelRestriction restriction;
  /// Generalised inverse, when f is a partial orthometry.
  std::optional<OrthoMap> generalised_inverse;
};

inline ZeroKernelRestriction zero_kernel_restriction(const OrthoMap& f) {
  const auto a = perp(f.dom(), f.kernel());
  const auto b = closure(f.cod(), f.image()).closed;
  auto sa = suborthoset(f.dom(), a);
  auto sb = suborthoset(f.cod(), b);
  std::vector<Index> t(sa.embed.size());
  for (Index i = 0; i < t.size(); ++i) t[i] = *sb.index_of(f(sa.embed[i]));
  OrthoMap m(sa.orthoset, sb.orthoset, std::move(t));
  return {std::move(sa), std::move(sb), std::move(m)};
}

/// Whether g witnesses f as a partial orthometry: adjoint, fgf = f,
/// gfg = g, im f and im g orthoclosed.
inline bool is_generalised_inverse(const OrthoMap& f, const OrthoMap& g) {
  return is_adjoint_pair(f, g) && compose(f, compose(g, f)) == f && compose(g, compose(f, g)) == g &&
         is_orthoclosed(f.cod(), f.image()) && is_orthoclosed(g.cod(), g.image());
}

/// Constructive partial-orthometry decision. Returns the generalised
/// inverse when f is one.
inline std::optional<OrthoMap> partial_orthometry_inverse(const OrthoMap& f, const AdjointResult& adj) {
  if (!adj.adjointable) return std::nullopt;
  const auto& x = f.dom();
  const auto& y = f.cod();
  const Bits a = perp_bits(x, f.kernel().bits());
  const Bits b = closure_bits(y, f.image().bits());
  std::vector<Index> g = adj.canonical->table();
  for (Index w = 0; w < y.size(); ++w) {
    const Bits inside = adj.candidates[w].bits() & a;
    if (inside.any()) g[w] = inside.first();
  }
  Bits hit(y.size());
  bool ok = true;
  a.for_each([&](Index v) {
    const Index w = f(v);
    if (hit.test(w) || !adj.candidates[w].contains(v)) ok = false;
    hit.set(w);
    g[w] = v;
  });
  if (!ok || !b.subset_of(hit)) return std::nullopt;
  OrthoMap inv(y, x, std::move(g));
  if (!is_generalised_inverse(f, inv)) return std::nullopt;
  return inv;
}

/// Every A ∈ C(X) and A⊥ are invariant under f.
inline bool is_scalar(const OrthoMap& f, const Ortholattice& cx) {
  for (Index i = 0; i < cx.size(); ++i) {
    if (!f.image_bits(cx.set(i)).subset_of(cx.set(i))) return false;
    const Bits& c = cx.set(cx.comp(i));
    if (!f.image_bits(c).subset_of(c)) return false;
  }
  return true;
}

/// Classifies f. The scalar flag enumerates C(dom) (LimitExceeded applies);
/// pass `cx` to reuse a lattice already built.
inline MapClassification classify(const OrthoMap& f, const Ortholattice* cx = nullptr,
                                  std::size_t limit = kDefaultLatticeLimit) {
  MapClassification c;
  const auto adj = find_adjoint(f);
  c.adjointable = adj.adjointable;
  c.preserves_perp = preserves_perp(f);
  c.reflects_perp = reflects_perp(f);
  c.injective = f.injective();
  c.surjective = f.surjective();
  c.kernel = f.kernel();
  c.image = f.image();
  c.zero_kernel = c.kernel.bits() == Bits(f.dom().size(), {0});
  c.image_closed = is_orthoclosed(f.cod(), c.image);
  if (c.injective && c.surjective) c.orthoisomorphism = is_adjoint_pair(f, inverse(f));
  c.generalised_inverse = partial_orthometry_inverse(f, adj);
  c.partial_orthometry = c.generalised_inverse.has_value();
  c.orthometry = c.partial_orthometry && c.zero_kernel && c.injective;
  c.coorthometry = c.partial_orthometry && c.surjective;
  c.restriction = zero_kernel_restriction(f);
  if (f.is_endo()) {
    const bool idempotent = compose(f, f) == f;
    c.self_adjoint = is_adjoint_pair(f, f);
    c.projection = idempotent && *c.self_adjoint && c.image_closed;
    if (cx) {
      c.scalar = is_scalar(f, *cx);
    } else {
      c.scalar = is_scalar(f, build_CX(f.dom(), limit));
    }
  }
  return c;
}

// --- Sasaki maps -----------------------------------------------------------

struct SasakiResult {
  Suborthoset subspace;
  /// σ : X → A, on success.
  std::optional<OrthoMap> map;
  /// Least element with no admissible value.
  std::optional<Index> witness;
  /// All elements with no admissible value.
  std::vector<Index> failing;
};

/// σ(a) = a on A; elsewhere the least z ∈ A with {z}⊥ ∩ A = {x}⊥ ∩ A.
inline SasakiResult sasaki_map(const Orthoset& x, const Subset& a) {
  if (!is_orthoclosed(x, a)) throw Error(ErrorCode::NotOrthoclosed, "subset is not orthoclosed");
  SasakiResult r{suborthoset(x, a), std::nullopt, std::nullopt, {}};
  const Bits& ab = a.bits();
  std::unordered_map<Bits, Index, BitsHash> first_with;
  ab.for_each([&](Index z) { first_with.try_emplace(x.row(z) & ab, z); });
  std::vector<Index> table(x.size(), 0);
  for (Index v = 0; v < x.size(); ++v) {
    if (ab.test(v)) {
      table[v] = *r.subspace.index_of(v);
      continue;
    }
    auto it = first_with.find(x.row(v) & ab);
    if (it == first_with.end()) {
      r.failing.push_back(v);
    } else {
      table[v] = *r.subspace.index_of(it->second);
    }
  }
  if (r.failing.empty()) {
    r.map = OrthoMap(x, r.subspace.orthoset, std::move(table));
  } else {
    r.witness = r.failing.front();
  }
  return r;
}

struct InclusionSurvey {
  bool all_adjointable = true;
  std::vector<Subset> failing;
};

inline InclusionSurvey inclusion_survey(const Orthoset& x, const Ortholattice& cx) {
  InclusionSurvey s;
  for (Index i = 0; i < cx.size(); ++i) {
    if (!sasaki_map(x, x.subset(cx.set(i))).map) {
      s.all_adjointable = false;
      s.failing.push_back(x.subset(cx.set(i)));
    }
  }
  return s;
}

inline InclusionSurvey inclusion_survey(const Orthoset& x, std::size_t limit = kDefaultLatticeLimit) {
  return inclusion_survey(x, build_CX(x, limit));
}

/// All A ∈ C(X) with f(A) ⊆ A and f(A⊥) ⊆ A⊥, in canonical order.
inline std::vector<Subset> reducing_subspaces(const OrthoMap& f, std::size_t limit = kDefaultLatticeLimit) {
  if (!f.is_endo()) throw Error(ErrorCode::DomainMismatch, "reducing subspaces need an endomap");
  auto adj = find_adjoint(f);
  if (!adj.adjointable) throw Error(ErrorCode::NotAdjointable, "map has no adjoint", {*adj.witness});
  const auto cx = build_CX(f.dom(), limit);
  std::vector<Subset> out;
  for (Index i = 0; i < cx.size(); ++i) {
    const Bits& c = cx.set(cx.comp(i));
    if (f.image_bits(cx.set(i)).subset_of(cx.set(i)) && f.image_bits(c).subset_of(c))
      out.push_back(f.dom().subset(cx.set(i)));
  }
  return out;
}

// --- quotients and doubling ------------------------------------------------

/// P(f) : P(X) → P(Y), [x] ↦ [f(x)]. Throws NotParallelPreserving with a
/// witness pair x ∥ x′, f(x) ∦ f(x′).
inline OrthoMap quotient_map(const OrthoMap& f, const QuotientData& px, const QuotientData& py) {
  std::vector<Index> t(px.classes.size());
  std::vector<bool> set(px.classes.size(), false);
  std::vector<Index> rep(px.classes.size());
  for (Index v = 0; v < f.dom().size(); ++v) {
    const Index c = px.projection[v];
    const Index image = py.projection[f(v)];
    if (!set[c]) {
      set[c] = true;
      t[c] = image;
      rep[c] = v;
    } else if (t[c] != image) {
      throw Error(ErrorCode::NotParallelPreserving, "map does not preserve equivalence", {rep[c], v});
    }
  }
  return {px.quotient, py.quotient, std::move(t)};
}

inline OrthoMap quotient_map(const OrthoMap& f) {
  return quotient_map(f, irredundant_quotient(f.dom()), irredundant_quotient(f.cod()));
}

struct Doubling {
  Orthoset z;
  OrthoMap h1, h2;  // X → Z, u ↦ u₁ resp. u₂
  OrthoMap k;       // Z → X, collapse
};

/// Replaces u by two equivalent copies: u₁ keeps index u, u₂ is appended.
inline Doubling doubling(const Orthoset& x, Index u) {
  if (u == 0) throw Error(ErrorCode::FalsityChosen, "the falsity element cannot be doubled", {0});
  if (u >= x.size()) throw Error(ErrorCode::InvalidArgument, "element out of range", {u});
  const std::size_t n = x.size();
  std::vector<Bits> rows(n + 1, Bits(n + 1));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (x.orthogonal(i, j)) rows[i].set(j);
  for (Index j = 0; j < n; ++j)
    if (x.orthogonal(u, j)) {
      rows[n].set(j);
      rows[j].set(n);
    }
  std::vector<std::string> labels;
  if (x.has_labels()) {
    labels = x.labels();
    labels[u] = x.label(u) + "1";
    labels.push_back(x.label(u) + "2");
  }
  Orthoset z = Orthoset::validate(std::move(rows), std::move(labels));
  std::vector<Index> t1(n), t2(n), tk(n + 1);
  for (Index i = 0; i < n; ++i) t1[i] = t2[i] = tk[i] = i;
  t2[u] = n;
  tk[n] = u;
  Doubling d{z, OrthoMap(x, z, t1), OrthoMap(x, z, t2), OrthoMap(z, x, tk)};
  if (!is_adjoint_pair(d.h1, d.k) || !is_adjoint_pair(d.h2, d.k))
    throw Error(ErrorCode::InternalCriterionMismatch, "collapse map is not adjoint to the injections");
  return d;
}

}  // namespace orthokit
