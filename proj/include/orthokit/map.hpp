#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orthokit/orthoset.hpp"

namespace orthokit {

/// Total function between two orthosets.
class OrthoMap {
 public:
  OrthoMap() = default;
  OrthoMap(Orthoset dom, Orthoset cod, std::vector<Index> table)
      : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
    if (table_.size() != dom_.size())
      throw Error(ErrorCode::InvalidArgument, "map table length differs from domain size");
    for (Index x = 0; x < table_.size(); ++x)
      if (table_[x] >= cod_.size())
        throw Error(ErrorCode::InvalidArgument, "map value out of range at " + std::to_string(x), {x});
  }

  static OrthoMap identity(const Orthoset& x) {
    std::vector<Index> t(x.size());
    for (Index i = 0; i < t.size(); ++i) t[i] = i;
    return {x, x, std::move(t)};
  }
  static OrthoMap zero(const Orthoset& dom, const Orthoset& cod) {
    return {dom, cod, std::vector<Index>(dom.size(), 0)};
  }
  /// The arrow 𝟏 → X sending the proper element of `one` to `target`.
  static OrthoMap point(const Orthoset& one, const Orthoset& x, Index target) {
    return {one, x, {0, target}};
  }

  const Orthoset& dom() const { return dom_; }
  const Orthoset& cod() const { return cod_; }
  const std::vector<Index>& table() const { return table_; }
  Index operator()(Index x) const { return table_[x]; }

  bool is_endo() const { return dom_ == cod_; }
  bool injective() const {
    Bits seen(cod_.size());
    for (Index v : table_) {
      if (seen.test(v)) return false;
      seen.set(v);
    }
    return true;
  }
  bool surjective() const { return image().bits().all(); }

  Subset image() const {
    Bits b(cod_.size());
    for (Index v : table_) b.set(v);
    return {cod_.fingerprint(), b};
  }
  Subset image(const Subset& a) const {
    require_owner(dom_, a);
    Bits b(cod_.size());
    a.bits().for_each([&](Index x) { b.set(table_[x]); });
    return {cod_.fingerprint(), b};
  }
  Bits image_bits(const Bits& a) const {
    Bits b(cod_.size());
    a.for_each([&](Index x) { b.set(table_[x]); });
    return b;
  }
  Subset preimage(const Subset& b) const {
    require_owner(cod_, b);
    Bits r(dom_.size());
    for (Index x = 0; x < table_.size(); ++x)
      if (b.contains(table_[x])) r.set(x);
    return {dom_.fingerprint(), r};
  }
  Subset kernel() const { return preimage(cod_.subset({0})); }

  friend bool operator==(const OrthoMap& a, const OrthoMap& b) {
    return a.table_ == b.table_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
  }

  /// "a->b b->a ..." using labels, in domain index order.
  std::string to_string() const {
    std::string s;
    for (Index x = 0; x < table_.size(); ++x) {
      if (x) s += ' ';
      s += dom_.label(x) + "->" + cod_.label(table_[x]);
    }
    return s;
  }

 private:
  Orthoset dom_, cod_;
  std::vector<Index> table_;
};

/// g ∘ f.
inline OrthoMap compose(const OrthoMap& g, const OrthoMap& f) {
  if (!(f.cod() == g.dom())) throw Error(ErrorCode::DomainMismatch, "cannot compose: codomain and domain differ");
  std::vector<Index> t(f.dom().size());
  for (Index x = 0; x < t.size(); ++x) t[x] = g(f(x));
  return {f.dom(), g.cod(), std::move(t)};
}

/// Inverse of a bijection.
inline OrthoMap inverse(const OrthoMap& f) {
  if (!f.injective() || !f.surjective()) throw Error(ErrorCode::InvalidArgument, "map is not bijective");
  std::vector<Index> t(f.cod().size());
  for (Index x = 0; x < f.dom().size(); ++x) t[f(x)] = x;
  return {f.cod(), f.dom(), std::move(t)};
}

inline bool preserves_perp(const OrthoMap& f) {
  const auto& x = f.dom();
  for (Index i = 0; i < x.size(); ++i)
    for (Index j = i; j < x.size(); ++j)
      if (x.orthogonal(i, j) && !f.cod().orthogonal(f(i), f(j))) return false;
  return true;
}

inline bool reflects_perp(const OrthoMap& f) {
  const auto& x = f.dom();
  for (Index i = 0; i < x.size(); ++i)
    for (Index j = i; j < x.size(); ++j)
      if (!x.orthogonal(i, j) && f.cod().orthogonal(f(i), f(j))) return false;
  return true;
}

/// f ∥ g: values are pairwise equivalent.
inline bool parallel(const OrthoMap& f, const OrthoMap& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) return false;
  for (Index x = 0; x < f.dom().size(); ++x)
    if (f.cod().row(f(x)) != f.cod().row(g(x))) return false;
  return true;
}

/// Inclusion A → X of a suborthoset.
inline OrthoMap inclusion(const Suborthoset& a, const Orthoset& x) { return {a.orthoset, x, a.embed}; }

}  // namespace orthokit
