#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orthokit/bits.hpp"
#include "orthokit/clique.hpp"
#include "orthokit/error.hpp"

namespace orthokit {

class Orthoset;

/// A subset of a particular orthoset, tagged with the owner's fingerprint.
class Subset {
 public:
  Subset() = default;
  Subset(std::uint64_t owner, Bits bits) : owner_(owner), bits_(std::move(bits)) {}

  std::uint64_t owner() const { return owner_; }
  const Bits& bits() const { return bits_; }
  std::size_t universe() const { return bits_.length(); }
  std::size_t count() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(Index i) const { return i < bits_.length() && bits_.test(i); }
  std::vector<Index> members() const { return bits_.members(); }
  bool subset_of(const Subset& o) const {
    check(o);
    return bits_.subset_of(o.bits_);
  }

  Subset operator&(const Subset& o) const {
    check(o);
    return {owner_, bits_ & o.bits_};
  }
  Subset operator|(const Subset& o) const {
    check(o);
    return {owner_, bits_ | o.bits_};
  }
  Subset operator-(const Subset& o) const {
    check(o);
    return {owner_, bits_ - o.bits_};
  }

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.owner_ == b.owner_ && a.bits_ == b.bits_;
  }

 private:
  void check(const Subset& o) const {
    if (owner_ != o.owner_ || bits_.length() != o.bits_.length())
      throw Error(ErrorCode::OwnerMismatch, "subsets belong to different orthosets");
  }

  std::uint64_t owner_ = 0;
  Bits bits_;
};

/// Finite orthoset with falsity at index 0. Immutable; copies share storage.
class Orthoset {
 public:
  /// The zero orthoset.
  Orthoset() : Orthoset(std::vector<Bits>{Bits::full(1)}, {}) {}

  /// Checks O1-O3 on a full relation (rows[i] = elements orthogonal to i).
  /// Errors name the first offending pair in row-major order.
  static Orthoset validate(std::vector<Bits> rows, std::vector<std::string> labels = {}) {
    const std::size_t n = rows.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "an orthoset needs at least the falsity element");
    for (Index i = 0; i < n; ++i)
      if (rows[i].length() != n)
        throw Error(ErrorCode::InvalidArgument, "relation row " + std::to_string(i) + " has wrong length");
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const bool r = rows[i].test(j);
        if (i == 0 && !r)
          throw Error(ErrorCode::FalsityNotOrthogonal, "0 is not orthogonal to " + std::to_string(j), {j});
        if (j == 0 && !r)
          throw Error(ErrorCode::FalsityNotOrthogonal, "0 is not orthogonal to " + std::to_string(i), {i});
        if (i == j && i != 0 && r)
          throw Error(ErrorCode::SelfOrthogonalProper, "proper element " + std::to_string(i) + " is self-orthogonal",
                      {i});
        if (r != rows[j].test(i))
          throw Error(ErrorCode::SymmetryViolation,
                      "relation not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")", {i, j});
      }
    }
    if (!labels.empty() && labels.size() != n)
      throw Error(ErrorCode::InvalidArgument, "label count does not match size");
    return Orthoset(std::move(rows), std::move(labels));
  }

  /// Builds from proper orthogonal pairs; symmetry and the falsity row are
  /// added, a pair (i, i) is rejected.
  static Orthoset from_pairs(std::size_t n, std::span<const std::pair<Index, Index>> pairs,
                             std::vector<std::string> labels = {}) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "an orthoset needs at least the falsity element");
    std::vector<Bits> rows(n, Bits(n));
    for (Index j = 0; j < n; ++j) {
      rows[0].set(j);
      rows[j].set(0);
    }
    for (auto [i, j] : pairs) {
      if (i >= n || j >= n) throw Error(ErrorCode::InvalidArgument, "pair index out of range");
      rows[i].set(j);
      rows[j].set(i);
    }
    return validate(std::move(rows), std::move(labels));
  }
  static Orthoset from_pairs(std::size_t n, std::initializer_list<std::pair<Index, Index>> pairs,
                             std::vector<std::string> labels = {}) {
    return from_pairs(n, std::span<const std::pair<Index, Index>>(pairs.begin(), pairs.size()), std::move(labels));
  }

  std::size_t size() const { return data_->rows.size(); }
  std::size_t proper_count() const { return size() - 1; }
  bool orthogonal(Index i, Index j) const { return data_->rows[i].test(j); }
  const Bits& row(Index i) const { return data_->rows[i]; }
  const std::vector<Bits>& rows() const { return data_->rows; }
  std::uint64_t fingerprint() const { return data_->fingerprint; }

  bool has_labels() const { return !data_->labels.empty(); }
  std::string label(Index i) const { return has_labels() ? data_->labels[i] : std::to_string(i); }
  const std::vector<std::string>& labels() const { return data_->labels; }
  /// Resolves a label, or a decimal index when no label matches.
  std::optional<Index> find(std::string_view name) const {
    for (Index i = 0; i < size(); ++i)
      if (label(i) == name) return i;
    Index v = 0;
    if (name.empty()) return std::nullopt;
    for (char c : name) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + static_cast<Index>(c - '0');
      if (v >= size()) return std::nullopt;
    }
    return v;
  }

  Orthoset with_labels(std::vector<std::string> labels) const { return validate(rows(), std::move(labels)); }

  Subset empty_subset() const { return {fingerprint(), Bits(size())}; }
  Subset full_subset() const { return {fingerprint(), Bits::full(size())}; }
  Subset subset(std::initializer_list<Index> members) const { return {fingerprint(), Bits(size(), members)}; }
  Subset subset(const Bits& bits) const {
    if (bits.length() != size()) throw Error(ErrorCode::OwnerMismatch, "bit vector length differs from orthoset size");
    return {fingerprint(), bits};
  }
  Subset subset(std::span<const Index> members) const {
    Bits b(size());
    for (Index i : members) b.set(i);
    return {fingerprint(), b};
  }
  Subset subset_of_labels(std::initializer_list<std::string_view> names) const {
    Bits b(size());
    for (auto n : names) {
      auto i = find(n);
      if (!i) throw Error(ErrorCode::InvalidArgument, "unknown element " + std::string(n));
      b.set(*i);
    }
    return {fingerprint(), b};
  }

  /// Structural equality of the relation; labels are presentation only.
  friend bool operator==(const Orthoset& a, const Orthoset& b) {
    return a.data_ == b.data_ || (a.fingerprint() == b.fingerprint() && a.rows() == b.rows());
  }

 private:
  struct Data {
    std::vector<Bits> rows;
    std::vector<std::string> labels;
    std::uint64_t fingerprint = 0;
  };

  Orthoset(std::vector<Bits> rows, std::vector<std::string> labels) {
    auto d = std::make_shared<Data>();
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ rows.size();
    for (const auto& r : rows) {
      for (std::size_t w = 0; w < r.word_count(); ++w) {
        h ^= r.word(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
    }
    d->rows = std::move(rows);
    d->labels = std::move(labels);
    d->fingerprint = h;
    data_ = std::move(d);
  }

  std::shared_ptr<const Data> data_;
};

inline void require_owner(const Orthoset& x, const Subset& a) {
  if (a.owner() != x.fingerprint() || a.universe() != x.size())
    throw Error(ErrorCode::OwnerMismatch, "subset does not belong to this orthoset");
}

// --- closure algebra ------------------------------------------------------

inline Bits perp_bits(const Orthoset& x, const Bits& a) {
  Bits r = Bits::full(x.size());
  a.for_each([&](Index i) { r &= x.row(i); });
  return r;
}

/// A⊥, the intersection of the rows of A's members; perp(∅) = X.
inline Subset perp(const Orthoset& x, const Subset& a) {
  require_owner(x, a);
  return {x.fingerprint(), perp_bits(x, a.bits())};
}

inline Bits closure_bits(const Orthoset& x, const Bits& a) { return perp_bits(x, perp_bits(x, a)); }

struct Closure {
  Subset closed;
  bool was_closed = false;
};

inline Closure closure(const Orthoset& x, const Subset& a) {
  require_owner(x, a);
  Bits c = closure_bits(x, a.bits());
  const bool same = c == a.bits();
  return {{x.fingerprint(), std::move(c)}, same};
}

inline bool is_orthoclosed(const Orthoset& x, const Subset& a) { return closure(x, a).was_closed; }

// --- separation properties -------------------------------------------------

struct QuotientData {
  Orthoset quotient;
  std::vector<Index> projection;  // X index -> P(X) index
  std::vector<Subset> classes;    // indexed by P(X) index; class of 0 first
};

struct SeparationReport {
  bool irredundant = false;
  bool atomistic = false;
  bool frechet = false;
  std::vector<Subset> classes;
  /// specialisation[x] = { y : x ≼ y }, i.e. {x}⊥⊥ ⊆ {y}⊥⊥.
  std::vector<Bits> specialisation;
  /// Distinct proper x, y with equal rows (irredundancy failure).
  std::optional<std::pair<Index, Index>> redundant_pair;
  /// Proper x, y with {x}⊥ strictly inside {y}⊥ (atomisticity failure).
  std::optional<std::pair<Index, Index>> non_atomistic_pair;
};

/// ∥-classes in order of least member.
inline std::vector<Bits> parallel_classes(const Orthoset& x) {
  std::vector<Bits> classes;
  std::unordered_map<Bits, std::size_t, BitsHash> by_row;
  for (Index i = 0; i < x.size(); ++i) {
    auto [it, fresh] = by_row.emplace(x.row(i), classes.size());
    if (fresh) classes.emplace_back(x.size());
    classes[it->second].set(i);
  }
  return classes;
}

inline SeparationReport separation_report(const Orthoset& x) {
  SeparationReport r;
  const std::size_t n = x.size();
  r.specialisation.assign(n, Bits(n));
  bool irredundant = true, atomistic = true, frechet = true;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const bool sub = x.row(j).subset_of(x.row(i));
      if (sub) r.specialisation[i].set(j);
      if (i == 0 || j == 0 || i == j || !x.row(i).subset_of(x.row(j))) continue;
      // {i}⊥ ⊆ {j}⊥ with i ≠ j proper
      frechet = false;
      if (x.row(i) == x.row(j)) {
        irredundant = false;
        if (!r.redundant_pair) r.redundant_pair = {i, j};
      } else {
        atomistic = false;
        if (!r.non_atomistic_pair) r.non_atomistic_pair = {i, j};
      }
    }
  }
  r.irredundant = irredundant;
  r.atomistic = atomistic;
  r.frechet = frechet;
  if (r.frechet != (r.irredundant && r.atomistic))
    throw Error(ErrorCode::InternalCriterionMismatch, "Frechet differs from irredundant and atomistic");
  for (auto& c : parallel_classes(x)) r.classes.emplace_back(x.fingerprint(), std::move(c));
  return r;
}

inline QuotientData irredundant_quotient(const Orthoset& x) {
  auto classes = parallel_classes(x);
  const std::size_t m = classes.size();
  std::vector<Index> projection(x.size());
  std::vector<Index> rep(m);
  for (Index c = 0; c < m; ++c) {
    rep[c] = classes[c].first();
    classes[c].for_each([&](Index i) { projection[i] = c; });
  }
  std::vector<Bits> rows(m, Bits(m));
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b)
      if (x.orthogonal(rep[a], rep[b])) rows[a].set(b);
  std::vector<std::string> labels;
  if (x.has_labels()) {
    for (Index c = 0; c < m; ++c) {
      if (classes[c].count() == 1) {
        labels.push_back(x.label(rep[c]));
        continue;
      }
      std::string s = "[";
      bool first = true;
      classes[c].for_each([&](Index i) {
        s += (first ? "" : ",") + x.label(i);
        first = false;
      });
      labels.push_back(s + "]");
    }
  }
  QuotientData q{Orthoset::validate(std::move(rows), std::move(labels)), std::move(projection), {}};
  for (auto& c : classes) q.classes.emplace_back(x.fingerprint(), std::move(c));
  return q;
}

// --- rank, decompositions, suborthosets -----------------------------------

struct RankResult {
  std::size_t rank = 0;
  Subset witness;
};

/// Exact rank: maximum ⊥-set among proper elements.
inline RankResult rank_and_perp_sets(const Orthoset& x, std::size_t max_proper = 64) {
  const std::size_t k = x.proper_count();
  if (k > max_proper || k > 64)
    throw Error(ErrorCode::SizeLimitExceeded,
                std::to_string(k) + " proper elements exceed the bound " + std::to_string(max_proper));
  std::vector<std::uint64_t> adj(k, 0);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j)
      if (i != j && x.orthogonal(i + 1, j + 1)) adj[i] |= std::uint64_t{1} << j;
  const std::uint64_t best = clique::MaxClique(std::move(adj)).solve();
  Bits w(x.size());
  for (Index i = 0; i < k; ++i)
    if ((best >> i) & 1u) w.set(i + 1);
  return {w.count(), {x.fingerprint(), w}};
}

/// Each part equals the orthocomplement of the union of the others.
inline bool is_decomposition(const Orthoset& x, std::span<const Subset> parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "a decomposition needs at least one part");
  for (const auto& p : parts) require_owner(x, p);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Bits others(x.size());
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (j != i) others |= parts[j].bits();
    if (perp_bits(x, others) != parts[i].bits()) return false;
  }
  return true;
}
inline bool is_decomposition(const Orthoset& x, std::initializer_list<Subset> parts) {
  return is_decomposition(x, std::span<const Subset>(parts.begin(), parts.size()));
}

struct Suborthoset {
  Orthoset orthoset;
  std::vector<Index> embed;  // sub index -> parent index
  /// Parent index -> sub index, for members.
  std::optional<Index> index_of(Index parent) const {
    for (Index i = 0; i < embed.size(); ++i)
      if (embed[i] == parent) return i;
    return std::nullopt;
  }
};

inline Suborthoset suborthoset(const Orthoset& x, const Subset& a) {
  require_owner(x, a);
  if (!a.contains(0)) throw Error(ErrorCode::FalsityMissing, "a suborthoset must contain 0");
  std::vector<Index> embed = a.members();
  const std::size_t m = embed.size();
  std::vector<Bits> rows(m, Bits(m));
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      if (x.orthogonal(embed[i], embed[j])) rows[i].set(j);
  std::vector<std::string> labels;
  if (x.has_labels())
    for (Index i : embed) labels.push_back(x.label(i));
  return {Orthoset::validate(std::move(rows), std::move(labels)), std::move(embed)};
}

/// B^{⊥_A} = B⊥ ∩ A, computed in the parent.
inline Subset relative_perp(const Orthoset& x, const Subset& a, const Subset& b) {
  return perp(x, b) & a;
}

/// Proper-element orthogonality graph (row minus the 0 column), for clique
/// enumeration.
inline std::vector<Bits> proper_adjacency(const Orthoset& x) {
  std::vector<Bits> adj = x.rows();
  for (auto& r : adj) r.reset(0);
  adj[0] = Bits(x.size());
  return adj;
}

}  // namespace orthokit
