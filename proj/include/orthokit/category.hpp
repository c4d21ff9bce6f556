#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orthokit/adjoint.hpp"
#include "orthokit/gallery.hpp"
#include "orthokit/isomorphism.hpp"
#include "orthokit/map.hpp"
#include "orthokit/ortholattice.hpp"
#include "orthokit/orthoset.hpp"

namespace orthokit {

inline constexpr std::uint64_t kDefaultHomCap = 10'000'000;

enum class Category { OS, iOS };

inline void require_irredundant(const Orthoset& x) {
  if (!separation_report(x).irredundant) throw Error(ErrorCode::NotIrredundant, "orthoset is not irredundant");
}

// --- hom-sets ------------------------------------------------------------------

/// Visits every adjointable map X → Y in lexicographic table order.
/// `allowed[x]`, when given, restricts the values of x. Search nodes are
/// capped (CapExceeded). The visitor returns false to stop.
inline void for_each_adjointable(const Orthoset& x, const Orthoset& y,
                                 const std::function<bool(const std::vector<Index>&)>& visit,
                                 std::uint64_t cap = kDefaultHomCap, const std::vector<Bits>* allowed = nullptr) {
  const std::size_t n = x.size(), m = y.size();
  std::vector<Index> table(n, 0);
  // cand[k][b]: z ∈ X whose row agrees with the partial profile S_b on [0, k)
  std::vector<std::vector<Bits>> cand(n + 1, std::vector<Bits>(m, Bits::full(n)));
  std::uint64_t nodes = 0;
  bool stop = false;
  std::function<void(Index)> go = [&](Index k) {
    if (stop) return;
    if (++nodes > cap) throw Error(ErrorCode::CapExceeded, "hom enumeration exceeded " + std::to_string(cap) + " nodes");
    if (k == n) {
      if (!visit(table)) stop = true;
      return;
    }
    for (Index v = 0; v < m && !stop; ++v) {
      if (allowed && !(*allowed)[k].test(v)) continue;
      bool ok = true;
      for (Index b = 0; b < m; ++b) {
        cand[k + 1][b] = cand[k][b];
        if (y.orthogonal(v, b)) {
          cand[k + 1][b] &= x.row(k);
        } else {
          cand[k + 1][b] -= x.row(k);
        }
        if (cand[k + 1][b].none()) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      table[k] = v;
      go(k + 1);
    }
  };
  go(0);
}

inline std::vector<OrthoMap> adjointable_maps(const Orthoset& x, const Orthoset& y, std::uint64_t cap = kDefaultHomCap) {
  std::vector<OrthoMap> out;
  for_each_adjointable(
      x, y,
      [&](const std::vector<Index>& t) {
        out.emplace_back(x, y, t);
        return true;
      },
      cap);
  return out;
}

/// Number of adjointable maps X → Y.
inline std::uint64_t hom_count(const Orthoset& x, const Orthoset& y, std::uint64_t cap = kDefaultHomCap) {
  std::uint64_t c = 0;
  for_each_adjointable(
      x, y,
      [&](const std::vector<Index>&) {
        ++c;
        return true;
      },
      cap);
  return c;
}

enum class LatticeHomMode {
  /// Adjointable maps between the lattices (on their L^OS carriers).
  Adjointable,
  /// Adjointable maps h with h and h⋆ sending basic elements to basic elements.
  BasicPreserving,
};

inline std::uint64_t hom_count(const Ortholattice& l1, const Ortholattice& l2, LatticeHomMode mode,
                               std::uint64_t cap = kDefaultHomCap) {
  const auto x = lattice_as_orthoset(l1);
  const auto y = lattice_as_orthoset(l2);
  if (mode == LatticeHomMode::Adjointable) return hom_count(x, y, cap);
  Bits basic1(x.size()), basic2(y.size());
  for (Index b : basic_element_indices(l1)) basic1.set(b);
  for (Index b : basic_element_indices(l2)) basic2.set(b);
  std::vector<Bits> allowed(x.size(), Bits::full(y.size()));
  basic1.for_each([&](Index a) { allowed[a] = basic2; });
  std::uint64_t c = 0;
  for_each_adjointable(
      x, y,
      [&](const std::vector<Index>& t) {
        const auto star = adjoint(OrthoMap(x, y, t));
        bool ok = true;
        basic2.for_each([&](Index b) { ok = ok && basic1.test(star(b)); });
        if (ok) ++c;
        return true;
      },
      cap, &allowed);
  return c;
}

// --- dagger ----------------------------------------------------------------------

struct DaggerReport {
  bool identity = true;     // id⋆ = id
  bool involution = true;   // f⋆⋆ = f
  bool contravariant = true;  // (g ∘ f)⋆ = f⋆ ∘ g⋆
  std::size_t maps = 0;
  std::size_t pairs = 0;
  std::vector<std::string> failures;
  bool ok() const { return identity && involution && contravariant; }
};

/// Dagger laws on a sample of adjointable maps between irredundant orthosets.
inline DaggerReport dagger_laws_check(const std::vector<OrthoMap>& sample) {
  DaggerReport r;
  std::vector<OrthoMap> stars;
  for (const auto& f : sample) {
    require_irredundant(f.dom());
    require_irredundant(f.cod());
    stars.push_back(adjoint(f));
  }
  std::map<std::uint64_t, Orthoset> objects;
  for (const auto& f : sample) {
    objects.emplace(f.dom().fingerprint(), f.dom());
    objects.emplace(f.cod().fingerprint(), f.cod());
  }
  for (const auto& [fp, x] : objects) {
    const auto id = OrthoMap::identity(x);
    if (!(adjoint(id) == id)) {
      r.identity = false;
      r.failures.push_back("identity");
    }
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    ++r.maps;
    if (!(adjoint(stars[i]) == sample[i])) {
      r.involution = false;
      r.failures.push_back("involution at map " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = 0; j < sample.size(); ++j) {
      if (!(sample[i].cod() == sample[j].dom())) continue;
      ++r.pairs;
      const auto gf = compose(sample[j], sample[i]);
      if (!(adjoint(gf) == compose(stars[i], stars[j]))) {
        r.contravariant = false;
        r.failures.push_back("composite " + std::to_string(j) + " after " + std::to_string(i));
      }
    }
  return r;
}

// --- monos and epis --------------------------------------------------------------

struct MonoEpiReport {
  bool mono = false;
  bool epi = false;
  /// Distinct arrows a, b with f ∘ a = f ∘ b.
  std::optional<std::pair<OrthoMap, OrthoMap>> mono_witness;
  /// Distinct arrows a, b with a ∘ f = b ∘ f.
  std::optional<std::pair<OrthoMap, OrthoMap>> epi_witness;
};

inline MonoEpiReport mono_epi_check(const OrthoMap& f, Category cat) {
  const auto adj = find_adjoint(f);
  if (!adj.adjointable) throw Error(ErrorCode::NotAdjointable, "map has no adjoint", {*adj.witness});
  if (cat == Category::iOS) {
    require_irredundant(f.dom());
    require_irredundant(f.cod());
  }
  const auto one = one_orthoset();
  MonoEpiReport r;
  r.mono = f.injective();
  if (!r.mono) {
    for (Index a = 0; a < f.dom().size() && !r.mono_witness; ++a)
      for (Index b = a + 1; b < f.dom().size(); ++b)
        if (f(a) == f(b)) {
          r.mono_witness = {OrthoMap::point(one, f.dom(), a), OrthoMap::point(one, f.dom(), b)};
          break;
        }
  }
  if (cat == Category::OS) {
    r.epi = f.surjective();
    if (!r.epi) {
      const Bits missed = ~f.image().bits();
      const auto d = doubling(f.cod(), missed.first());
      r.epi_witness = {d.h1, d.h2};
    }
  } else {
    const auto& star = *adj.canonical;
    r.epi = star.injective();
    if (!r.epi) {
      for (Index a = 0; a < star.dom().size() && !r.epi_witness; ++a)
        for (Index b = a + 1; b < star.dom().size(); ++b)
          if (star(a) == star(b)) {
            r.epi_witness = {adjoint(OrthoMap::point(one, f.cod(), a)), adjoint(OrthoMap::point(one, f.cod(), b))};
            break;
          }
    }
  }
  if (r.mono_witness &&
      !(compose(f, r.mono_witness->first) == compose(f, r.mono_witness->second)))
    throw Error(ErrorCode::InternalCriterionMismatch, "mono witness does not equalise");
  if (r.epi_witness && !(compose(r.epi_witness->first, f) == compose(r.epi_witness->second, f)))
    throw Error(ErrorCode::InternalCriterionMismatch, "epi witness does not coequalise");
  return r;
}

// --- equalisers ---------------------------------------------------------------

enum class EqualiserStatus { Exists, FailsOnProbe, ExhaustedNoEqualiser, NotConstructible };

inline std::string to_string(EqualiserStatus s) {
  switch (s) {
    case EqualiserStatus::Exists: return "Exists";
    case EqualiserStatus::FailsOnProbe: return "FailsOnProbe";
    case EqualiserStatus::ExhaustedNoEqualiser: return "ExhaustedNoEqualiser";
    case EqualiserStatus::NotConstructible: return "NotConstructible";
  }
  return "Unknown";
}

enum class ProbeFailure { NoFactorization, NonUniqueFactorization };

struct TraceStep {
  std::string claim;
  bool verified = false;
};

struct EqualiserCertificate {
  EqualiserStatus status = EqualiserStatus::NotConstructible;
  /// X_{f,g}.
  Subset equaliser_set;
  // Exists
  std::optional<Suborthoset> object;
  std::optional<OrthoMap> arrow;
  std::size_t probes = 0;
  std::size_t cones = 0;
  // FailsOnProbe
  std::optional<Orthoset> probe;
  std::optional<OrthoMap> cone;
  std::optional<ProbeFailure> failure;
  // NotConstructible
  std::string reason;
  // ExhaustedNoEqualiser
  std::size_t size_bound = 0;
  std::vector<TraceStep> trace;
};

/// Orthosets with at most three elements.
inline std::vector<Orthoset> small_probes() {
  std::vector<Orthoset> out;
  for (std::size_t k = 0; k <= 2; ++k)
    for (auto& x : all_orthosets(k)) out.push_back(x);
  return out;
}

/// Equaliser of f, g : X → Y via the Sasaki map onto X_{f,g}; the universal
/// property is checked against orthosets with ≤ 3 elements, X and Y.
inline EqualiserCertificate equaliser_from_sasaki(const OrthoMap& f, const OrthoMap& g, Category cat = Category::OS,
                                                  std::uint64_t cap = kDefaultHomCap) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod()))
    throw Error(ErrorCode::DomainMismatch, "maps must share domain and codomain");
  const auto& x = f.dom();
  EqualiserCertificate c;
  Bits eq(x.size());
  for (Index v = 0; v < x.size(); ++v)
    if (f(v) == g(v)) eq.set(v);
  c.equaliser_set = x.subset(eq);
  if (!is_orthoclosed(x, c.equaliser_set)) {
    c.reason = "NotOrthoclosed";
    return c;
  }
  const auto sr = sasaki_map(x, c.equaliser_set);
  if (!sr.map) {
    c.reason = "InclusionNotAdjointable";
    return c;
  }
  const auto e = inclusion(sr.subspace, x);
  auto probes = small_probes();
  probes.push_back(x);
  probes.push_back(f.cod());
  for (const auto& p : probes) {
    if (cat == Category::iOS && !separation_report(p).irredundant) continue;
    ++c.probes;
    bool failed = false;
    for_each_adjointable(
        p, x,
        [&](const std::vector<Index>& t) {
          const OrthoMap h(p, x, t);
          if (!(compose(f, h) == compose(g, h))) return true;
          ++c.cones;
          std::vector<Index> k(p.size());
          for (Index i = 0; i < p.size(); ++i) {
            auto j = sr.subspace.index_of(h(i));
            if (!j) {
              failed = true;
              break;
            }
            k[i] = *j;
          }
          if (!failed && !is_adjointable(OrthoMap(p, sr.subspace.orthoset, k))) failed = true;
          if (failed) {
            c.status = EqualiserStatus::FailsOnProbe;
            c.probe = p;
            c.cone = h;
            c.failure = ProbeFailure::NoFactorization;
            return false;
          }
          return true;
        },
        cap);
    if (failed) return c;
  }
  c.status = EqualiserStatus::Exists;
  c.object = sr.subspace;
  c.arrow = e;
  return c;
}

/// Checks mechanically that the symmetry of the square orthoset and the
/// identity have no equaliser: every cone e : Y → X with |Y| ≤ 3 fails to
/// factor ŝ or ŵ, and for a cone with image {0,s,w} any adjoint ẽ would
/// need e(ẽ(s)) = s and e(ẽ(s)) = w at once.
inline EqualiserCertificate equaliser_nonexistence_demo(Category cat = Category::OS) {
  const auto x = example_square();
  const auto f = square_symmetry();
  const auto id = OrthoMap::identity(x);
  const auto one = one_orthoset();
  const Index s = *x.find("s"), t = *x.find("t"), v = *x.find("v"), w = *x.find("w");
  EqualiserCertificate c;
  c.status = EqualiserStatus::ExhaustedNoEqualiser;
  auto step = [&](std::string claim, bool ok) { c.trace.push_back({std::move(claim), ok}); };
  auto show = [&](const Bits& b) {
    std::string out = "{";
    bool first = true;
    b.for_each([&](Index i) {
      out += (first ? "" : ",") + x.label(i);
      first = false;
    });
    return out + "}";
  };

  step("f is an orthoautomorphism", classify(f).orthoisomorphism);
  Bits eq(x.size());
  for (Index i = 0; i < x.size(); ++i)
    if (f(i) == i) eq.set(i);
  c.equaliser_set = x.subset(eq);
  step("f(x) = x exactly on " + show(eq) + ", so f∘e = e forces im e ⊆ " + show(eq),
       eq == Bits(x.size(), {0, s, w}));
  step(show(eq) + " is orthoclosed", is_orthoclosed(x, c.equaliser_set));
  step("the inclusion of " + show(eq) + " is not adjointable", !sasaki_map(x, c.equaliser_set).map.has_value());

  const auto s_hat = OrthoMap::point(one, x, s);
  const auto w_hat = OrthoMap::point(one, x, w);
  step("ŝ and ŵ are morphisms 1 → X with f∘ŝ = ŝ and f∘ŵ = ŵ",
       is_adjointable(s_hat) && is_adjointable(w_hat) && compose(f, s_hat) == s_hat && compose(f, w_hat) == w_hat);

  c.size_bound = eq.count();
  step("an equaliser is mono, hence injective, so |Y| ≤ " + std::to_string(c.size_bound), true);

  // Exhaustive search over all cones from orthosets with at most three elements.
  std::size_t maps = 0, cones_found = 0, full_image = 0, universal = 0;
  auto factors = [&](const OrthoMap& e, const OrthoMap& probe) {
    const auto& y = e.dom();
    for (Index a = 0; a < y.size(); ++a) {
      if (e(a) != probe(1)) continue;
      for (Index z = 0; z < y.size(); ++z) {
        if (e(z) != probe(0)) continue;
        if (is_adjointable(OrthoMap(one, y, {z, a}))) return true;
      }
    }
    return false;
  };
  for (const auto& y : small_probes()) {
    if (cat == Category::iOS && !separation_report(y).irredundant) continue;
    std::vector<Index> t(y.size(), 0);
    const std::vector<Index> values = eq.members();
    std::function<void(Index)> go = [&](Index k) {
      if (k == y.size()) {
        ++maps;
        const OrthoMap e(y, x, t);
        if (!is_adjointable(e)) return;
        ++cones_found;
        if (e.image().bits() == eq) ++full_image;
        if (factors(e, s_hat) && factors(e, w_hat)) ++universal;
        return;
      }
      for (Index val : values) {
        t[k] = val;
        go(k + 1);
      }
    };
    go(0);
  }
  step("enumerated " + std::to_string(maps) + " maps Y → " + show(eq) + " with |Y| ≤ 3; " +
           std::to_string(cones_found) + " are adjointable cones",
       cones_found > 0);
  step("no cone factors both ŝ and ŵ, so a universal cone would need s, w ∈ im e", universal == 0);

  // The symbolic step, for a cone with im e = {0,s,w}.
  const Bits ker = perp_bits(x, eq);
  step("ker ẽ = (im e)⊥ = " + show(ker), ker == Bits(x.size(), {0, *x.find("u"), *x.find("y")}));
  const Bits s_perp_im = x.row(s) & eq;
  step("s⊥ ∩ im e = " + show(s_perp_im) + ", so s ⊥ e(ẽ(q)) forces ẽ(q) = 0 and q ∈ ker ẽ",
       s_perp_im == Bits(x.size(), {0}));
  const Bits forced_v = eq - x.row(v);
  step("v ∉ ker ẽ, and every element of im e outside " + show(forced_v) +
           " is orthogonal to v, so e(ẽ(s)) = s",
       !ker.test(v) && forced_v == Bits(x.size(), {s}));
  const Bits forced_t = eq - x.row(t);
  step("t ∉ ker ẽ, and every element of im e outside " + show(forced_t) +
           " is orthogonal to t, so e(ẽ(s)) = w",
       !ker.test(t) && forced_t == Bits(x.size(), {w}));
  step("s ≠ w: no adjointable cone has image {0,s,w} (" + std::to_string(full_image) + " found)",
       s != w && full_image == 0);
  (void)id;
  return c;
}

inline bool trace_verified(const EqualiserCertificate& c) {
  if (c.trace.empty()) return false;
  for (const auto& s : c.trace)
    if (!s.verified) return false;
  return true;
}

// --- the functor C -------------------------------------------------------------

struct Arrow {
  std::string name;
  OrthoMap map;
};

struct Diagram {
  std::vector<Orthoset> objects;
  std::vector<Arrow> arrows;

  /// Adds every composite of up to `length` arrows.
  void close_under_composition(std::size_t length) {
    std::vector<Arrow> layer = arrows;
    const std::vector<Arrow> base = arrows;
    for (std::size_t l = 2; l <= length; ++l) {
      std::vector<Arrow> next;
      for (const auto& a : layer)
        for (const auto& b : base)
          if (a.map.cod() == b.map.dom()) next.push_back({b.name + "∘" + a.name, compose(b.map, a.map)});
      arrows.insert(arrows.end(), next.begin(), next.end());
      layer = std::move(next);
    }
  }
};

struct FunctorReport {
  bool identities = true;
  bool composition = true;
  bool dagger = true;
  bool faithful = true;
  bool essentially_surjective = true;
  std::size_t arrows = 0;
  std::size_t composable_pairs = 0;
  std::size_t parallel_pairs = 0;
  std::size_t lattices = 0;
  std::vector<std::string> failures;
  bool ok() const { return identities && composition && dagger && faithful && essentially_surjective; }
};

/// C(id) = id, C(g∘f) = C(g)∘C(f), C(f⋆) = C(f)⋆ and faithfulness on the
/// diagram; C(L^OS) ≅ L for each lattice.
inline FunctorReport functor_C_laws(const Diagram& d, const std::vector<Ortholattice>& lattices = {},
                                    std::size_t limit = kDefaultLatticeLimit) {
  struct Lifted {
    Ortholattice l;
    Orthoset os;
  };
  std::map<std::uint64_t, Lifted> cache;
  auto lift = [&](const Orthoset& x) -> const Lifted& {
    auto it = cache.find(x.fingerprint());
    if (it == cache.end()) {
      auto l = build_CX(x, limit);
      auto os = lattice_as_orthoset(l);
      it = cache.emplace(x.fingerprint(), Lifted{std::move(l), std::move(os)}).first;
    }
    return it->second;
  };
  auto C = [&](const OrthoMap& f) {
    const auto& a = lift(f.dom());
    const auto& b = lift(f.cod());
    return C_on_map(f, a.l, a.os, b.l, b.os);
  };
  FunctorReport r;
  for (const auto& x : d.objects) {
    require_irredundant(x);
    if (!(C(OrthoMap::identity(x)) == OrthoMap::identity(lift(x).os))) {
      r.identities = false;
      r.failures.push_back("identity");
    }
  }
  std::vector<OrthoMap> images;
  for (const auto& a : d.arrows) {
    require_irredundant(a.map.dom());
    require_irredundant(a.map.cod());
    images.push_back(C(a.map));
    ++r.arrows;
    if (!(C(adjoint(a.map)) == adjoint(images.back()))) {
      r.dagger = false;
      r.failures.push_back("dagger at " + a.name);
    }
  }
  for (std::size_t i = 0; i < d.arrows.size(); ++i)
    for (std::size_t j = 0; j < d.arrows.size(); ++j) {
      const auto& f = d.arrows[i].map;
      const auto& g = d.arrows[j].map;
      if (f.cod() == g.dom()) {
        ++r.composable_pairs;
        if (!(C(compose(g, f)) == compose(images[j], images[i]))) {
          r.composition = false;
          r.failures.push_back("composition " + d.arrows[j].name + " after " + d.arrows[i].name);
        }
      }
      if (i < j && f.dom() == g.dom() && f.cod() == g.cod() && !(f == g)) {
        ++r.parallel_pairs;
        if (images[i] == images[j]) {
          r.faithful = false;
          r.failures.push_back("faithfulness " + d.arrows[i].name + " vs " + d.arrows[j].name);
        }
      }
    }
  for (const auto& l : lattices) {
    ++r.lattices;
    const auto c = build_CX(lattice_as_orthoset(l), limit);
    bool iso = false;
    try {
      iso = is_lattice_isomorphism(c, l, principal_ideal_map(l, c));
    } catch (const Error&) {
      iso = false;
    }
    if (!iso) {
      r.essentially_surjective = false;
      r.failures.push_back("C(L^OS) is not isomorphic to L");
    }
  }
  return r;
}

/// Irredundant gallery orthosets, their identities and the named maps
/// between them.
inline Diagram gallery_diagram() {
  Diagram d;
  for (const auto& e : gallery()) {
    const auto* x = std::get_if<Orthoset>(&e.object);
    if (x && separation_report(*x).irredundant) d.objects.push_back(*x);
  }
  auto has = [&](const Orthoset& x) {
    for (const auto& o : d.objects)
      if (o == x) return true;
    return false;
  };
  for (const auto& x : d.objects) d.arrows.push_back({"id", OrthoMap::identity(x)});
  for (const auto& m : gallery_maps())
    if (has(m.map.dom()) && has(m.map.cod()) && is_adjointable(m.map)) d.arrows.push_back({m.name, m.map});
  return d;
}

// --- automorphisms ---------------------------------------------------------------

struct AutomorphismReport {
  std::vector<OrthoMap> automorphisms;
  /// Induced permutation of C(X) per automorphism.
  std::vector<std::vector<Index>> lattice_action;
  /// Automorphisms acting trivially on C(X); these are the scalar ones.
  std::vector<std::size_t> scalar;
};

inline AutomorphismReport enumerate_orthoautomorphisms(const Orthoset& x, std::size_t bound = 10) {
  if (x.proper_count() > bound)
    throw Error(ErrorCode::SizeLimitExceeded, "too many proper elements for automorphism enumeration", {bound});
  const std::size_t n = x.size();
  AutomorphismReport r;
  std::vector<Index> phi(n, 0);
  std::vector<bool> used(n, false);
  used[0] = true;
  std::function<void(Index)> go = [&](Index k) {
    if (k == n) {
      r.automorphisms.emplace_back(x, x, phi);
      return;
    }
    for (Index j = 1; j < n; ++j) {
      if (used[j] || x.row(k).count() != x.row(j).count()) continue;
      bool ok = true;
      for (Index p = 1; p < k && ok; ++p) ok = x.orthogonal(k, p) == x.orthogonal(j, phi[p]);
      if (!ok) continue;
      phi[k] = j;
      used[j] = true;
      go(k + 1);
      used[j] = false;
    }
  };
  go(1);
  const auto cx = build_CX(x);
  for (std::size_t i = 0; i < r.automorphisms.size(); ++i) {
    const auto& f = r.automorphisms[i];
    std::vector<Index> act(cx.size());
    bool trivial = true;
    for (Index a = 0; a < cx.size(); ++a) {
      act[a] = *cx.index_of(f.image_bits(cx.set(a)));
      trivial = trivial && act[a] == a;
    }
    r.lattice_action.push_back(std::move(act));
    if (trivial) r.scalar.push_back(i);
    if (trivial != is_scalar(f, cx))
      throw Error(ErrorCode::InternalCriterionMismatch, "scalar test disagrees with the lattice action");
  }
  return r;
}

}  // namespace orthokit
