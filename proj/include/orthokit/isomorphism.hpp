#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "orthokit/map.hpp"
#include "orthokit/ortholattice.hpp"
#include "orthokit/orthoset.hpp"

namespace orthokit {

namespace detail {

/// Joint colour refinement of both orthogonality graphs; colours are
/// comparable across the inputs.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> joint_colours(const Orthoset& a,
                                                                                 const Orthoset& b) {
  const std::size_t n = a.size();
  std::vector<std::size_t> ca(n), cb(n);
  for (Index i = 0; i < n; ++i) {
    ca[i] = i == 0 ? 0 : a.row(i).count() + 1;
    cb[i] = i == 0 ? 0 : b.row(i).count() + 1;
  }
  for (std::size_t round = 0; round < n; ++round) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    auto signature = [&](const Orthoset& x, const std::vector<std::size_t>& c, Index i) {
      std::vector<std::size_t> s{c[i]};
      std::vector<std::size_t> nb;
      x.row(i).for_each([&](Index j) { nb.push_back(c[j]); });
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      return s;
    };
    std::vector<std::vector<std::size_t>> sa(n), sb(n);
    for (Index i = 0; i < n; ++i) {
      sa[i] = signature(a, ca, i);
      sb[i] = signature(b, cb, i);
      ids.emplace(sa[i], 0);
      ids.emplace(sb[i], 0);
    }
    std::size_t next = 0;
    for (auto& [k, v] : ids) v = next++;
    std::vector<std::size_t> na(n), nb2(n);
    for (Index i = 0; i < n; ++i) {
      na[i] = ids[sa[i]];
      nb2[i] = ids[sb[i]];
    }
    const bool stable = std::set<std::size_t>(na.begin(), na.end()).size() ==
                        std::set<std::size_t>(ca.begin(), ca.end()).size();
    ca = std::move(na);
    cb = std::move(nb2);
    if (stable) break;
  }
  return {ca, cb};
}

}  // namespace detail

/// An orthoisomorphism a → b (0 ↦ 0), or nullopt.
inline std::optional<OrthoMap> find_orthoisomorphism(const Orthoset& a, const Orthoset& b) {
  const std::size_t n = a.size();
  if (b.size() != n) return std::nullopt;
  auto [ca, cb] = detail::joint_colours(a, b);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  // Assign in order of increasing colour-class size.
  std::map<std::size_t, std::size_t> class_size;
  for (auto c : ca) ++class_size[c];
  std::vector<Index> order(n);
  for (Index i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return class_size[ca[x]] < class_size[ca[y]]; });
  std::vector<Index> phi(n, n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> go = [&](std::size_t k) {
    if (k == n) return true;
    const Index i = order[k];
    for (Index j = 0; j < n; ++j) {
      if (used[j] || cb[j] != ca[i]) continue;
      if ((i == 0) != (j == 0)) continue;
      bool ok = true;
      for (std::size_t m = 0; m < k && ok; ++m) {
        const Index p = order[m];
        if (a.orthogonal(i, p) != b.orthogonal(j, phi[p])) ok = false;
      }
      if (!ok) continue;
      phi[i] = j;
      used[j] = true;
      if (go(k + 1)) return true;
      used[j] = false;
    }
    phi[i] = n;
    return false;
  };
  if (!go(0)) return std::nullopt;
  return OrthoMap(a, b, phi);
}

inline bool orthoisomorphic(const Orthoset& a, const Orthoset& b) { return find_orthoisomorphism(a, b).has_value(); }

/// Ortholattice isomorphism, found as an orthoisomorphism of the L^OS
/// carriers (x ≤ y iff {y}⊥ ⊆ {x}⊥ there, and y' is the top of {y}⊥).
inline std::optional<std::vector<Index>> find_lattice_isomorphism(const Ortholattice& a, const Ortholattice& b) {
  if (a.size() != b.size()) return std::nullopt;
  auto iso = find_orthoisomorphism(lattice_as_orthoset(a), lattice_as_orthoset(b));
  if (!iso) return std::nullopt;
  if (!is_lattice_isomorphism(a, b, iso->table()))
    throw Error(ErrorCode::InternalCriterionMismatch, "orthoisomorphism of carriers is not a lattice isomorphism");
  return iso->table();
}

inline bool lattices_isomorphic(const Ortholattice& a, const Ortholattice& b) {
  return find_lattice_isomorphism(a, b).has_value();
}

}  // namespace orthokit
