#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace orthokit {

using Index = std::size_t;

/// Fixed-length dense bit vector. Word-parallel set algebra over element
/// indices; the length is part of the value and binary operations expect
/// equal lengths.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n, bool value = false)
      : n_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    trim();
  }
  Bits(std::size_t n, std::initializer_list<Index> members) : Bits(n) {
    for (Index i : members) set(i);
  }

  static Bits full(std::size_t n) { return Bits(n, true); }

  std::size_t length() const { return n_; }
  std::size_t word_count() const { return words_.size(); }
  std::uint64_t word(std::size_t w) const { return words_[w]; }

  bool test(Index i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool operator[](Index i) const { return test(i); }
  void set(Index i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(Index i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(Index i, bool v) { v ? set(i) : reset(i); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }
  bool all() const { return count() == n_; }

  /// First set index at or after `from`, or length() when there is none.
  Index next(Index from) const {
    if (from >= n_) return n_;
    std::size_t w = from >> 6;
    std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (cur) return (w << 6) + static_cast<Index>(std::countr_zero(cur));
      if (++w == words_.size()) return n_;
      cur = words_[w];
    }
  }
  Index first() const { return next(0); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t cur = words_[w];
      while (cur) {
        f((w << 6) + static_cast<Index>(std::countr_zero(cur)));
        cur &= cur - 1;
      }
    }
  }

  std::vector<Index> members() const {
    std::vector<Index> out;
    out.reserve(count());
    for_each([&](Index i) { out.push_back(i); });
    return out;
  }

  Bits& operator&=(const Bits& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  Bits& operator^=(const Bits& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  /// Set difference.
  Bits& operator-=(const Bits& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  Bits operator~() const {
    Bits r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }

  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }
  friend Bits operator-(Bits a, const Bits& b) { return a -= b; }

  bool subset_of(const Bits& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }

  friend bool operator==(const Bits& a, const Bits& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  std::size_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull ^ n_;
    for (auto w : words_) {
      h ^= w;
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }

  /// "0101..." with index 0 first.
  std::string to_string() const {
    std::string s(n_, '0');
    for_each([&](Index i) { s[i] = '1'; });
    return s;
  }

 private:
  void trim() {
    if (n_ & 63) words_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Canonical subset order: smaller cardinality first, then lexicographic on
/// the ascending member lists (the set holding the lowest differing index
/// comes first).
inline bool canonical_less(const Bits& a, const Bits& b) {
  const auto ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  for (std::size_t w = 0; w < a.word_count(); ++w) {
    const std::uint64_t diff = a.word(w) ^ b.word(w);
    if (diff) {
      const auto bit = std::countr_zero(diff);
      return (a.word(w) >> bit) & 1u;
    }
  }
  return false;
}

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace orthokit
