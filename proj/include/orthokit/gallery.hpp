#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orthokit/adjoint.hpp"
#include "orthokit/map.hpp"
#include "orthokit/ortholattice.hpp"
#include "orthokit/orthoset.hpp"
#include "orthokit/report.hpp"

namespace orthokit {

// --- orthosets ---------------------------------------------------------------

inline Orthoset zero_orthoset() { return Orthoset::validate({Bits::full(1)}, {"0"}); }

/// 𝟏: one proper element p.
inline Orthoset one_orthoset() { return Orthoset::from_pairs(2, {}, {"0", "p"}); }

/// The square orthoset: the triples {s,t,u}, {u,v,w}, {w,x,y}, {y,z,s}
/// (the straight lines of the picture) are mutually orthogonal; the curved
/// lines only join elements to 0. Twelve proper pairs.
inline Orthoset example_square() {
  enum { s = 1, t, u, v, w, x, y, z };
  return Orthoset::from_pairs(9,
                              {{s, t}, {s, u}, {t, u}, {u, v}, {u, w}, {v, w},
                               {w, x}, {w, y}, {x, y}, {y, z}, {y, s}, {z, s}},
                              {"0", "s", "t", "u", "v", "w", "x", "y", "z"});
}

/// The symmetry of the square fixing s and w.
inline OrthoMap square_symmetry() {
  const auto sq = example_square();
  return {sq, sq, {0, 1, 8, 7, 6, 5, 4, 3, 2}};
}

/// 0 plus n complementary pairs; pair i is (2i-1, 2i).
inline Orthoset mo_n(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "mo_n needs n >= 1");
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<std::string> labels{"0"};
  for (std::size_t i = 0; i < n; ++i) {
    pairs.emplace_back(2 * i + 1, 2 * i + 2);
    const std::string base = n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "a" + std::to_string(i + 1);
    labels.push_back(base);
    labels.push_back(base + "'");
  }
  return Orthoset::from_pairs(2 * n + 1, pairs, std::move(labels));
}

/// B(2^k): k pairwise orthogonal atoms.
inline Orthoset boolean_orthoset(std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "boolean_orthoset needs k >= 1");
  if (k > 16) throw Error(ErrorCode::SizeLimitExceeded, "boolean_orthoset supports at most 16 atoms", {k});
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 1; i <= k; ++i)
    for (Index j = i + 1; j <= k; ++j) pairs.emplace_back(i, j);
  return Orthoset::from_pairs(k + 1, pairs);
}

namespace detail {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// All vectors of GF(p)^d in lexicographic order (last coordinate fastest).
inline std::vector<std::vector<std::uint64_t>> all_vectors(std::uint64_t p, std::size_t d) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> v(d, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = d;
    while (i > 0 && ++v[i - 1] == p) v[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

inline std::uint64_t form(std::uint64_t p, const std::vector<std::uint64_t>& c, const std::vector<std::uint64_t>& u,
                          const std::vector<std::uint64_t>& v) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s = (s + c[i] % p * u[i] % p * v[i]) % p;
  return s;
}

inline std::string vector_label(const std::vector<std::uint64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline void check_form(std::uint64_t p, const std::vector<std::uint64_t>& coeffs) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "field size must be prime");
  if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "form needs at least one coefficient");
  if (coeffs.size() > 8) throw Error(ErrorCode::SizeLimitExceeded, "dimension too large");
  for (const auto& v : all_vectors(p, coeffs.size())) {
    bool zero = true;
    for (auto c : v) zero = zero && c == 0;
    if (!zero && form(p, coeffs, v, v) == 0) {
      std::vector<Index> w(v.begin(), v.end());
      throw Error(ErrorCode::IsotropicForm, "form is isotropic at " + vector_label(v), w);
    }
  }
}

}  // namespace detail

/// All vectors of GF(p)^d with u ⊥ v iff Σ cᵢuᵢvᵢ = 0; the zero vector is
/// falsity. Not irredundant: nonzero multiples are equivalent.
inline Orthoset vector_form_orthoset(std::uint64_t p, const std::vector<std::uint64_t>& coeffs) {
  detail::check_form(p, coeffs);
  const auto vs = detail::all_vectors(p, coeffs.size());
  const std::size_t n = vs.size();
  std::vector<Bits> rows(n, Bits(n));
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) {
    labels.push_back(detail::vector_label(vs[i]));
    for (Index j = 0; j < n; ++j)
      if (detail::form(p, coeffs, vs[i], vs[j]) == 0) rows[i].set(j);
  }
  labels[0] = "0";
  return Orthoset::validate(std::move(rows), std::move(labels));
}

/// One-dimensional subspaces of GF(p)^d under an anisotropic diagonal form;
/// classes are represented by the vector whose first nonzero entry is 1.
inline Orthoset projective_form_orthoset(std::uint64_t p = 3, const std::vector<std::uint64_t>& coeffs = {1, 1}) {
  detail::check_form(p, coeffs);
  std::vector<std::vector<std::uint64_t>> reps{std::vector<std::uint64_t>(coeffs.size(), 0)};
  for (const auto& v : detail::all_vectors(p, coeffs.size())) {
    std::size_t k = 0;
    while (k < v.size() && v[k] == 0) ++k;
    if (k < v.size() && v[k] == 1) reps.push_back(v);
  }
  const std::size_t n = reps.size();
  std::vector<Bits> rows(n, Bits(n));
  std::vector<std::string> labels{"0"};
  for (Index i = 0; i < n; ++i) {
    if (i) labels.push_back(detail::vector_label(reps[i]));
    for (Index j = 0; j < n; ++j)
      if (detail::form(p, coeffs, reps[i], reps[j]) == 0) rows[i].set(j);
  }
  return Orthoset::validate(std::move(rows), std::move(labels));
}

/// n proper elements; each pair (i < j), in row-major order, is orthogonal
/// iff the next std::mt19937_64 draw d satisfies (d >> 11) * 2^-53 < p.
inline Orthoset random_orthoset(std::size_t n, double p, std::uint64_t seed) {
  if (n > 64) throw Error(ErrorCode::SizeLimitExceeded, "random_orthoset supports at most 64 proper elements", {n});
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 1; i <= n; ++i)
    for (Index j = i + 1; j <= n; ++j) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < p) pairs.emplace_back(i, j);
    }
  return Orthoset::from_pairs(n + 1, pairs);
}

/// Every orthoset with k proper elements (labelled, so 2^(k(k-1)/2) of
/// them); bit m of the code is the m-th pair in row-major order.
inline Orthoset orthoset_from_code(std::size_t k, std::uint64_t code) {
  std::vector<std::pair<Index, Index>> pairs;
  std::size_t m = 0;
  for (Index i = 1; i <= k; ++i)
    for (Index j = i + 1; j <= k; ++j, ++m)
      if ((code >> m) & 1u) pairs.emplace_back(i, j);
  return Orthoset::from_pairs(k + 1, pairs);
}

inline std::vector<Orthoset> all_orthosets(std::size_t k) {
  if (k > 7) throw Error(ErrorCode::SizeLimitExceeded, "all_orthosets supports at most 7 proper elements", {k});
  const std::uint64_t count = std::uint64_t{1} << (k * (k - (k ? 1 : 0)) / 2);
  std::vector<Orthoset> out;
  out.reserve(count);
  for (std::uint64_t c = 0; c < count; ++c) out.push_back(orthoset_from_code(k, c));
  return out;
}

struct Orthosum {
  Orthoset sum;
  Subset first, second;
};

/// Disjoint union of proper parts, everything across the parts orthogonal.
inline Orthosum orthosum(const Orthoset& a, const Orthoset& b) {
  const std::size_t n = a.size() + b.size() - 1;
  std::vector<Bits> rows(n, Bits(n));
  auto to_sum = [&](bool second, Index i) -> Index { return i == 0 ? 0 : (second ? a.size() - 1 + i : i); };
  for (Index i = 0; i < a.size(); ++i)
    for (Index j = 0; j < a.size(); ++j)
      if (a.orthogonal(i, j)) rows[to_sum(false, i)].set(to_sum(false, j));
  for (Index i = 0; i < b.size(); ++i)
    for (Index j = 0; j < b.size(); ++j)
      if (b.orthogonal(i, j)) rows[to_sum(true, i)].set(to_sum(true, j));
  for (Index i = 1; i < a.size(); ++i)
    for (Index j = 1; j < b.size(); ++j) {
      rows[to_sum(false, i)].set(to_sum(true, j));
      rows[to_sum(true, j)].set(to_sum(false, i));
    }
  std::vector<std::string> labels{"0"};
  bool distinct = a.has_labels() && b.has_labels();
  for (Index i = 1; i < a.size() && distinct; ++i)
    for (Index j = 1; j < b.size(); ++j)
      if (a.label(i) == b.label(j)) distinct = false;
  if (distinct) {
    for (Index i = 1; i < a.size(); ++i) labels.push_back(a.label(i));
    for (Index j = 1; j < b.size(); ++j) labels.push_back(b.label(j));
  } else {
    labels.clear();
  }
  auto sum = Orthoset::validate(std::move(rows), std::move(labels));
  Bits p1(n), p2(n);
  p1.set(0);
  p2.set(0);
  for (Index i = 1; i < a.size(); ++i) p1.set(to_sum(false, i));
  for (Index j = 1; j < b.size(); ++j) p2.set(to_sum(true, j));
  return {sum, sum.subset(p1), sum.subset(p2)};
}

// --- lattices ----------------------------------------------------------------

/// 2^k as the lattice of subsets of k atoms (C of boolean_orthoset).
inline Ortholattice boolean_lattice(std::size_t k) { return build_CX(boolean_orthoset(k)); }

/// 𝟚 = {0, 1}.
inline Ortholattice two_lattice() {
  return Ortholattice::from_covers(2, {{0, 1}}, {1, 0}, {"0", "1"});
}

/// Horizontal sum of 2^2 (atoms a, a') and 2^3 (atoms b, c, d), with
/// b' = c ∨ d, c' = b ∨ d, d' = b ∨ c.
inline Ortholattice figure1_lattice() {
  enum { zero, a, ac, b, c, d, bc, cc, dc, one };
  return Ortholattice::from_covers(10,
                                   {{zero, a}, {zero, ac}, {a, one}, {ac, one}, {zero, b}, {zero, c}, {zero, d},
                                    {b, cc}, {b, dc}, {c, bc}, {c, dc}, {d, bc}, {d, cc}, {bc, one}, {cc, one},
                                    {dc, one}},
                                   {one, ac, a, bc, cc, dc, b, c, d, zero},
                                   {"0", "a", "a'", "b", "c", "d", "b'", "c'", "d'", "1"});
}

/// Glues two lattices at 0 and 1.
inline Ortholattice horizontal_sum(const Ortholattice& l1, const Ortholattice& l2) {
  if (l1.size() < 2 || l2.size() < 2) throw Error(ErrorCode::InvalidArgument, "horizontal sum needs nontrivial lattices");
  // index map: 0, middle of l1, middle of l2, top
  std::vector<Index> from1(l1.size()), from2(l2.size());
  std::vector<std::string> labels{"0"};
  Index next = 1;
  for (Index i = 1; i < l1.size(); ++i)
    if (i != l1.top()) {
      from1[i] = next++;
      labels.push_back(l1.label(i));
    }
  for (Index i = 1; i < l2.size(); ++i)
    if (i != l2.top()) {
      from2[i] = next++;
      labels.push_back(l2.label(i));
    }
  const Index top = next++;
  labels.push_back("1");
  from1[0] = from2[0] = 0;
  from1[l1.top()] = from2[l2.top()] = top;
  const std::size_t n = next;
  std::vector<Bits> up(n, Bits(n));
  std::vector<Index> comp(n);
  for (Index i = 0; i < l1.size(); ++i) {
    comp[from1[i]] = from1[l1.comp(i)];
    for (Index j = 0; j < l1.size(); ++j)
      if (l1.leq(i, j)) up[from1[i]].set(from1[j]);
  }
  for (Index i = 0; i < l2.size(); ++i) {
    comp[from2[i]] = from2[l2.comp(i)];
    for (Index j = 0; j < l2.size(); ++j)
      if (l2.leq(i, j)) up[from2[i]].set(from2[j]);
  }
  up[0] = Bits::full(n);
  return Ortholattice::from_order(std::move(up), std::move(comp), std::move(labels));
}

/// Componentwise product; (a, b) has index a * |L2| + b.
inline Ortholattice lattice_product(const Ortholattice& l1, const Ortholattice& l2) {
  const std::size_t n1 = l1.size(), n2 = l2.size(), n = n1 * n2;
  std::vector<Bits> up(n, Bits(n));
  std::vector<Index> comp(n);
  std::vector<std::string> labels;
  for (Index a = 0; a < n1; ++a)
    for (Index b = 0; b < n2; ++b) {
      const Index i = a * n2 + b;
      comp[i] = l1.comp(a) * n2 + l2.comp(b);
      labels.push_back("(" + l1.label(a) + "," + l2.label(b) + ")");
      for (Index c = 0; c < n1; ++c)
        for (Index d = 0; d < n2; ++d)
          if (l1.leq(a, c) && l2.leq(b, d)) up[i].set(c * n2 + d);
    }
  return Ortholattice::from_order(std::move(up), std::move(comp), std::move(labels));
}

using Structure = std::variant<Orthoset, Ortholattice>;

enum class SumKind { Orthosum, HorizontalSum, LatticeProduct };

inline Structure sum_and_product(const Structure& a, const Structure& b, SumKind kind) {
  const bool sets = std::holds_alternative<Orthoset>(a) && std::holds_alternative<Orthoset>(b);
  const bool lats = std::holds_alternative<Ortholattice>(a) && std::holds_alternative<Ortholattice>(b);
  switch (kind) {
    case SumKind::Orthosum:
      if (!sets) throw Error(ErrorCode::KindMismatch, "orthosum takes two orthosets");
      return orthosum(std::get<Orthoset>(a), std::get<Orthoset>(b)).sum;
    case SumKind::HorizontalSum:
      if (!lats) throw Error(ErrorCode::KindMismatch, "horizontal sum takes two lattices");
      return horizontal_sum(std::get<Ortholattice>(a), std::get<Ortholattice>(b));
    case SumKind::LatticeProduct:
      if (!lats) throw Error(ErrorCode::KindMismatch, "product takes two lattices");
      return lattice_product(std::get<Ortholattice>(a), std::get<Ortholattice>(b));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown kind");
}

// --- registry ----------------------------------------------------------------

struct GalleryEntry {
  std::string name;
  Structure object;
  std::string description;
  /// Pinned facts; keys of check_report (orthosets) or the lattice report.
  Json expected;
};

inline Json facts_of(const Structure& s) {
  if (const auto* x = std::get_if<Orthoset>(&s)) return check_report(*x);
  const auto& l = std::get<Ortholattice>(s);
  return lattice_report_json(l, lattice_report(l));
}

/// Keys whose computed value differs from the pinned one.
inline std::vector<std::string> verify_entry(const GalleryEntry& e) {
  const Json facts = facts_of(e.object);
  std::vector<std::string> bad;
  for (const auto& [k, v] : e.expected.items())
    if (!facts.contains(k) || facts[k] != v) bad.push_back(k);
  return bad;
}

inline std::vector<GalleryEntry> gallery() {
  std::vector<GalleryEntry> g;
  auto add = [&](std::string name, Structure obj, std::string desc, Json expected) {
    g.push_back({std::move(name), std::move(obj), std::move(desc), std::move(expected)});
  };
  add("zero", zero_orthoset(), "zero orthoset",
      {{"size", 1}, {"rank", 0}, {"frechet", true}, {"dacey", true}, {"lattice_size", 1}});
  add("one", one_orthoset(), "single proper element p",
      {{"size", 2}, {"rank", 1}, {"frechet", true}, {"dacey", true}, {"lattice_size", 2}});
  add("square", example_square(), "square orthoset, not Dacey",
      {{"size", 9},
       {"rank", 3},
       {"rank_witness", {"s", "t", "u"}},
       {"irredundant", true},
       {"atomistic", true},
       {"frechet", true},
       {"dacey", false},
       {"dacey_witness", {{"0", "s"}, {"0", "s", "w"}}},
       {"inclusion_adjointable", false}});
  add("mo1", mo_n(1), "one complementary pair",
      {{"size", 3}, {"rank", 2}, {"lattice_size", 4}, {"dacey", true}, {"irreducible", false}});
  add("mo2", mo_n(2), "two complementary pairs",
      {{"size", 5},
       {"rank", 2},
       {"frechet", true},
       {"dacey", true},
       {"lattice_size", 6},
       {"covering", true},
       {"irreducible", true},
       {"inclusion_adjointable", true}});
  add("mo3", mo_n(3), "three complementary pairs",
      {{"size", 7}, {"rank", 2}, {"lattice_size", 8}, {"dacey", true}, {"irreducible", true}});
  add("bool2", boolean_orthoset(2), "basic elements of the four-element Boolean algebra",
      {{"size", 3}, {"rank", 2}, {"lattice_size", 4}, {"frechet", true}, {"irreducible", false}});
  add("bool3", boolean_orthoset(3), "three orthogonal atoms",
      {{"size", 4}, {"rank", 3}, {"lattice_size", 8}, {"dacey", true}, {"irreducible", false}});
  add("gf3_plane", projective_form_orthoset(3, {1, 1}), "lines of GF(3)^2 under x1^2 + x2^2",
      {{"size", 5}, {"frechet", true}, {"rank", 2}, {"lattice_size", 6}, {"dacey", true}});
  add("doubled_one", doubling(one_orthoset(), 1).z, "one with p doubled",
      {{"size", 3}, {"irredundant", false}, {"frechet", false}, {"classes", 2}, {"lattice_size", 2}});
  add("mo2_plus_one", orthosum(mo_n(2), one_orthoset()).sum, "orthosum of mo2 and one",
      {{"size", 6}, {"irreducible", false}, {"lattice_size", 12}});
  add("basic_figure1", basic_elements(figure1_lattice()), "atoms of the horizontal sum 2^2 + 2^3",
      {{"size", 6},
       {"frechet", true},
       {"dacey", true},
       {"lattice_size", 10},
       {"covering", false},
       {"inclusion_adjointable", false}});
  add("figure1", figure1_lattice(), "horizontal sum of 2^2 and 2^3",
      {{"size", 10}, {"orthomodular", true}, {"atomistic", true}, {"covering", false}, {"irreducible", true}});
  add("two", two_lattice(), "two-element lattice",
      {{"size", 2}, {"orthomodular", true}, {"atomistic", true}, {"covering", true}});
  add("boolean4", boolean_lattice(2), "four-element Boolean algebra",
      {{"size", 4}, {"orthomodular", true}, {"irreducible", false}});
  add("boolean8", boolean_lattice(3), "eight-element Boolean algebra",
      {{"size", 8}, {"orthomodular", true}, {"covering", true}, {"irreducible", false}});
  return g;
}

inline std::optional<GalleryEntry> gallery_entry(const std::string& name) {
  for (auto& e : gallery())
    if (e.name == name) return e;
  return std::nullopt;
}

struct NamedMap {
  std::string name;
  OrthoMap map;
};

/// Maps between gallery orthosets.
inline std::vector<NamedMap> gallery_maps() {
  const auto one = one_orthoset();
  const auto sq = example_square();
  const auto mo2 = mo_n(2);
  const auto db = doubling(one, 1);
  std::vector<NamedMap> m;
  m.push_back({"id_mo2", OrthoMap::identity(mo2)});
  m.push_back({"swap_mo2", OrthoMap(mo2, mo2, {0, 3, 4, 1, 2})});
  m.push_back({"flip_mo2", OrthoMap(mo2, mo2, {0, 2, 1, 3, 4})});
  m.push_back({"zero_mo2", OrthoMap::zero(mo2, mo2)});
  m.push_back({"id_square", OrthoMap::identity(sq)});
  m.push_back({"symmetry_square", square_symmetry()});
  m.push_back({"point_s", OrthoMap::point(one, sq, 1)});
  m.push_back({"point_a", OrthoMap::point(one, mo2, 1)});
  {
    auto sigma = *sasaki_map(sq, sq.subset({0, 1})).map;
    auto iota = inclusion(suborthoset(sq, sq.subset({0, 1})), sq);
    m.push_back({"projection_s", compose(iota, sigma)});
  }
  m.push_back({"zero_square_mo2", OrthoMap::zero(sq, mo2)});
  m.push_back({"h1_doubled_one", db.h1});
  m.push_back({"h2_doubled_one", db.h2});
  m.push_back({"k_doubled_one", db.k});
  return m;
}

}  // namespace orthokit
