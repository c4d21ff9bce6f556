#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "orthokit/bits.hpp"

namespace orthokit::clique {

/// Exact maximum clique on at most 64 vertices (adjacency as bit masks).
/// Branch and bound with a greedy-colouring bound; the returned clique is
/// the lexicographically least one of maximum size.
class MaxClique {
 public:
  explicit MaxClique(std::vector<std::uint64_t> adj) : adj_(std::move(adj)) {}

  std::uint64_t solve() {
    const int k = static_cast<int>(adj_.size());
    if (k == 0) return 0;
    const std::uint64_t all = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    best_size_ = greedy(all);
    expand(0, all);
    // Second pass: lexicographically least clique of the optimal size.
    target_ = best_size_;
    found_ = false;
    lex_search(0, 0, all);
    return lex_best_;
  }

 private:
  int greedy(std::uint64_t cand) const {
    int size = 0;
    while (cand) {
      int v = std::countr_zero(cand);
      cand &= adj_[v];
      ++size;
    }
    return size;
  }

  // Colour classes give the bound: a clique uses at most one vertex per colour.
  void colour(std::uint64_t cand, std::vector<int>& order, std::vector<int>& bound) const {
    int c = 0;
    std::uint64_t uncoloured = cand;
    while (uncoloured) {
      ++c;
      std::uint64_t q = uncoloured;
      while (q) {
        int v = std::countr_zero(q);
        const std::uint64_t bit = std::uint64_t{1} << v;
        q &= ~bit & ~adj_[v];
        uncoloured &= ~bit;
        order.push_back(v);
        bound.push_back(c);
      }
    }
  }

  void expand(int size, std::uint64_t cand) {
    std::vector<int> order, bound;
    colour(cand, order, bound);
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (size + bound[i] <= best_size_) return;
      const int v = order[i];
      const std::uint64_t next = cand & adj_[v];
      if (!next) {
        if (size + 1 > best_size_) best_size_ = size + 1;
      } else {
        expand(size + 1, next);
      }
      cand &= ~(std::uint64_t{1} << v);
    }
  }

  void lex_search(std::uint64_t chosen, int size, std::uint64_t cand) {
    if (found_) return;
    if (size == target_) {
      found_ = true;
      lex_best_ = chosen;
      return;
    }
    if (size + std::popcount(cand) < target_) return;
    std::vector<int> order, bound;
    colour(cand, order, bound);
    int max_colour = 0;
    for (int b : bound) max_colour = b > max_colour ? b : max_colour;
    if (size + max_colour < target_) return;
    while (cand && !found_) {
      const int v = std::countr_zero(cand);
      const std::uint64_t bit = std::uint64_t{1} << v;
      lex_search(chosen | bit, size + 1, cand & adj_[v]);
      cand &= ~bit;
      if (size + std::popcount(cand) < target_) return;
    }
  }

  std::vector<std::uint64_t> adj_;
  int best_size_ = 0;
  int target_ = 0;
  bool found_ = false;
  std::uint64_t lex_best_ = 0;
};

/// Bron-Kerbosch with pivoting over an arbitrary vertex subset. `adj[v]`
/// is the neighbourhood of v; `visit` receives each maximal clique and
/// returns false to stop the enumeration. Returns false iff stopped early.
template <class Visit>
bool maximal_cliques(const std::vector<Bits>& adj, const Bits& vertices, Visit&& visit) {
  struct Rec {
    const std::vector<Bits>& adj;
    Visit& visit;
    bool run(Bits& r, Bits p, Bits x) {
      if (p.none() && x.none()) return visit(static_cast<const Bits&>(r));
      // Pivot maximising |P ∩ N(u)|.
      Index pivot = p.length();
      std::size_t best = 0;
      bool have = false;
      (p | x).for_each([&](Index u) {
        const std::size_t c = (p & adj[u]).count();
        if (!have || c > best) {
          have = true;
          best = c;
          pivot = u;
        }
      });
      Bits todo = p - adj[pivot];
      for (Index v = todo.first(); v < todo.length(); v = todo.next(v + 1)) {
        r.set(v);
        const bool go = run(r, p & adj[v], x & adj[v]);
        r.reset(v);
        if (!go) return false;
        p.reset(v);
        x.set(v);
      }
      return true;
    }
  };
  Rec rec{adj, visit};
  Bits r(vertices.length());
  return rec.run(r, vertices, Bits(vertices.length()));
}

}  // namespace orthokit::clique
