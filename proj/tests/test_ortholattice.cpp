#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "orthokit/gallery.hpp"
#include "orthokit/isomorphism.hpp"
#include "orthokit/ortholattice.hpp"

using namespace orthokit;

namespace {

Bits bits_of(const Orthoset& x, std::initializer_list<std::string_view> names) {
  return x.subset_of_labels(names).bits();
}

std::vector<Orthoset> small_corpus() {
  std::vector<Orthoset> out;
  for (std::size_t k = 0; k <= 5; ++k)
    for (auto& x : all_orthosets(k)) out.push_back(x);
  return out;
}

/// The 2^4 Boolean algebra without its two-element sets: not a lattice.
Orthoposet boolean_without_middle() {
  std::vector<unsigned> masks;
  for (unsigned m = 0; m < 16; ++m)
    if (__builtin_popcount(m) != 2) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
    return __builtin_popcount(a) != __builtin_popcount(b) ? __builtin_popcount(a) < __builtin_popcount(b) : a < b;
  });
  const std::size_t n = masks.size();
  std::vector<Bits> up(n, Bits(n));
  std::vector<Index> comp(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if ((masks[i] & masks[j]) == masks[i]) up[i].set(j);
      if (masks[j] == (15u & ~masks[i])) comp[i] = j;
    }
  return Orthoposet::validate(up, comp);
}

}  // namespace

TEST(BuildCX, Mo2) {
  const auto mo2 = mo_n(2);
  const auto l = build_CX(mo2);
  ASSERT_EQ(l.size(), 6u);
  const std::vector<Bits> want{Bits(5, {0}), Bits(5, {0, 1}), Bits(5, {0, 2}), Bits(5, {0, 3}), Bits(5, {0, 4}),
                               Bits::full(5)};
  EXPECT_EQ(l.sets(), want);
}

TEST(BuildCX, One) {
  const auto l = build_CX(one_orthoset());
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l.set(0), Bits(2, {0}));
  EXPECT_EQ(l.set(1), Bits(2, {0, 1}));
}

TEST(BuildCX, SquareContainsSubspaces) {
  const auto sq = example_square();
  const auto l = build_CX(sq);
  const auto a = l.index_of(bits_of(sq, {"0", "s"}));
  const auto b = l.index_of(bits_of(sq, {"0", "s", "w"}));
  ASSERT_TRUE(a && b);
  EXPECT_TRUE(l.leq(*a, *b));
}

TEST(BuildCX, MatchesPowerSetScan) {
  for (const auto& x : small_corpus()) {
    const auto l = build_CX(x);
    auto want = oracle::closed_sets(x);
    ASSERT_EQ(l.size(), want.size());
    for (Index i = 0; i < l.size(); ++i) ASSERT_TRUE(std::count(want.begin(), want.end(), oracle::to_mask(l.set(i))));
  }
}

TEST(BuildCX, CanonicalOrderAndThreadIndependence) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto x = random_orthoset(14, 0.3, seed);
    const auto l1 = build_CX(x, kDefaultLatticeLimit, 1);
    const auto l4 = build_CX(x, kDefaultLatticeLimit, 4);
    EXPECT_EQ(l1.sets(), l4.sets());
    for (Index i = 1; i < l1.size(); ++i) ASSERT_TRUE(canonical_less(l1.set(i - 1), l1.set(i)));
  }
}

TEST(BuildCX, LimitExceeded) {
  try {
    build_CX(boolean_orthoset(6), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LimitExceeded);
  }
}

TEST(LatticeReport, Figure1) {
  const auto l = figure1_lattice();
  const auto r = lattice_report(l);
  EXPECT_EQ(r.size, 10u);
  EXPECT_TRUE(r.orthomodular);
  EXPECT_TRUE(r.atomistic);
  EXPECT_FALSE(r.covering);
  ASSERT_TRUE(r.covering_witness);
  const auto [a, p, c] = *r.covering_witness;
  EXPECT_FALSE(l.leq(p, a));
  EXPECT_TRUE(l.leq(a, c) && a != c);
  EXPECT_TRUE(l.leq(c, l.join(a, p)) && c != l.join(a, p));
  EXPECT_EQ(l.label(a), "b");
  EXPECT_EQ(l.label(p), "a");
  EXPECT_EQ(l.label(c), "c'");
  EXPECT_TRUE(l.leq(*l.find("b"), *l.find("c'")));
  EXPECT_EQ(r.atoms.size(), 5u);
}

TEST(LatticeReport, SquareNotOrthomodular) {
  const auto sq = example_square();
  const auto l = build_CX(sq);
  const auto r = lattice_report(l);
  EXPECT_FALSE(r.orthomodular);
  ASSERT_TRUE(r.orthomodular_witness);
  EXPECT_EQ(l.set(r.orthomodular_witness->first), bits_of(sq, {"0", "s"}));
  EXPECT_EQ(l.set(r.orthomodular_witness->second), bits_of(sq, {"0", "s", "w"}));
}

TEST(LatticeReport, Mo2) {
  const auto r = lattice_report(build_CX(mo_n(2)));
  EXPECT_TRUE(r.orthomodular);
  EXPECT_TRUE(r.atomistic);
  EXPECT_TRUE(r.covering);
  EXPECT_TRUE(r.irreducible);
  EXPECT_FALSE(r.central_witness);
}

TEST(LatticeReport, BooleanReducible) {
  const auto l = boolean_lattice(3);
  const auto r = lattice_report(l);
  EXPECT_FALSE(r.irreducible);
  ASSERT_TRUE(r.central_witness);
  EXPECT_NE(*r.central_witness, l.bottom());
  EXPECT_NE(*r.central_witness, l.top());
}

TEST(LatticeReport, OrthomodularMatchesOracle) {
  for (const auto& x : small_corpus()) ASSERT_EQ(lattice_report(build_CX(x)).orthomodular, oracle::orthomodular(x));
}

TEST(LatticeReport, AtomisticOrthosetGivesAtomisticLattice) {
  for (const auto& x : small_corpus())
    if (separation_report(x).atomistic) ASSERT_TRUE(lattice_report(build_CX(x)).atomistic);
}

TEST(LatticeReport, IrreducibilityTransfer) {
  for (const auto& x : small_corpus()) {
    if (!separation_report(x).atomistic || x.proper_count() == 0) continue;
    ASSERT_EQ(lattice_report(build_CX(x)).irreducible, !oracle::reducible(x));
  }
}

TEST(LatticeReport, WitnessesReverify) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto l = build_CX(random_orthoset(8, 0.4, seed));
    const auto r = lattice_report(l);
    if (r.orthomodular_witness) {
      const auto [a, b] = *r.orthomodular_witness;
      EXPECT_TRUE(l.leq(a, b));
      EXPECT_NE(l.join(a, l.meet(b, l.comp(a))), b);
    }
    if (r.covering_witness) {
      const auto [a, p, c] = *r.covering_witness;
      EXPECT_TRUE(std::count(r.atoms.begin(), r.atoms.end(), p));
      EXPECT_TRUE(l.leq(a, c) && a != c && l.leq(c, l.join(a, p)) && c != l.join(a, p));
    }
    if (r.atomistic_witness) {
      Index j = l.bottom();
      for (Index p : r.atoms)
        if (l.leq(p, *r.atomistic_witness)) j = l.join(j, p);
      EXPECT_NE(j, *r.atomistic_witness);
    }
  }
}

TEST(Dacey, Examples) {
  EXPECT_FALSE(is_dacey(example_square()));
  EXPECT_TRUE(is_dacey(mo_n(2)));
  EXPECT_TRUE(is_dacey(basic_elements(figure1_lattice())));
}

TEST(Dacey, CriteriaAgreeWithOracle) {
  for (const auto& x : small_corpus()) {
    const auto r = dacey_report(x, build_CX(x));
    ASSERT_EQ(r.dacey, oracle::orthomodular(x));
    ASSERT_EQ(r.dacey, oracle::dacey_d(x));
  }
}

TEST(Dacey, SubspaceInheritance) {
  std::vector<Orthoset> xs{mo_n(2), mo_n(3), boolean_orthoset(3), basic_elements(figure1_lattice()),
                           lattice_as_orthoset(figure1_lattice())};
  for (const auto& x : xs) {
    const auto cx = build_CX(x);
    for (Index i = 0; i < cx.size(); ++i) {
      const auto a = x.subset(cx.set(i));
      const auto sub = suborthoset(x, a);
      EXPECT_TRUE(is_dacey(sub.orthoset));
      const auto ca = build_CX(sub.orthoset);
      std::size_t below = 0;
      for (Index j = 0; j < cx.size(); ++j)
        if (cx.set(j).subset_of(cx.set(i))) ++below;
      EXPECT_EQ(ca.size(), below);
      for (Index j = 0; j < ca.size(); ++j) {
        Bits up(x.size());
        ca.set(j).for_each([&](Index k) { up.set(sub.embed[k]); });
        EXPECT_TRUE(cx.index_of(up).has_value());
      }
    }
  }
}

TEST(BasicElements, Figure1) {
  const auto l = figure1_lattice();
  const auto b = basic_elements(l);
  ASSERT_EQ(b.size(), 6u);
  EXPECT_EQ(b.labels(), (std::vector<std::string>{"0", "a", "a'", "b", "c", "d"}));
  EXPECT_TRUE(b.orthogonal(1, 2));
  EXPECT_TRUE(b.orthogonal(3, 4));
  EXPECT_TRUE(b.orthogonal(3, 5));
  EXPECT_TRUE(b.orthogonal(4, 5));
  EXPECT_FALSE(b.orthogonal(1, 3));
  EXPECT_TRUE(separation_report(b).frechet);
}

TEST(BasicElements, SmallLattices) {
  EXPECT_TRUE(orthoisomorphic(basic_elements(two_lattice()), one_orthoset()));
  EXPECT_EQ(basic_elements(boolean_lattice(2)).size(), 3u);
}

TEST(LatticeAsOrthoset, Examples) {
  EXPECT_TRUE(orthoisomorphic(lattice_as_orthoset(two_lattice()), one_orthoset()));
  const auto b = boolean_lattice(2);
  const auto x = lattice_as_orthoset(b);
  ASSERT_EQ(x.size(), 4u);
  EXPECT_TRUE(x.orthogonal(1, 2));
  EXPECT_EQ(x.row(3), Bits(4, {0}));
  const auto f = lattice_as_orthoset(figure1_lattice());
  EXPECT_EQ(f.size(), 10u);
  EXPECT_TRUE(separation_report(f).irredundant);
  EXPECT_EQ(build_CX(f).size(), 10u);
}

TEST(LatticeAsOrthoset, RoundTrip) {
  std::vector<Orthoset> xs{example_square(), mo_n(2), mo_n(3), boolean_orthoset(3)};
  for (std::uint64_t seed = 0; seed < 10; ++seed) xs.push_back(random_orthoset(7, 0.4, seed));
  for (const auto& x : xs) {
    const auto l = build_CX(x);
    const auto los = lattice_as_orthoset(l);
    EXPECT_TRUE(separation_report(los).irredundant);
    EXPECT_TRUE(lattices_isomorphic(build_CX(los), l));
    EXPECT_TRUE(is_lattice_isomorphism(build_CX(los), l, principal_ideal_map(l, build_CX(los))));
  }
}

TEST(LatticeAsOrthoset, SuborthosetIsomorphism) {
  for (const auto& l : {figure1_lattice(), boolean_lattice(3), build_CX(mo_n(3))}) {
    const auto x = lattice_as_orthoset(l);
    Bits y(x.size());
    y.set(0);
    for (Index a : l.atoms()) y.set(a);
    const auto cx = build_CX(x);
    const auto sub = suborthoset(x, x.subset(y));
    const auto cy = build_CX(sub.orthoset);
    ASSERT_EQ(cx.size(), cy.size());
    for (Index i = 0; i < cx.size(); ++i) {
      const Bits meet = cx.set(i) & y;
      Bits local(sub.orthoset.size());
      meet.for_each([&](Index k) { local.set(*sub.index_of(k)); });
      ASSERT_TRUE(cy.index_of(local).has_value());
      EXPECT_EQ(closure_bits(x, meet), cx.set(i));
    }
  }
}

TEST(COnMap, Examples) {
  const auto mo2 = mo_n(2);
  const auto l = build_CX(mo2);
  const auto id = C_on_map(OrthoMap::identity(mo2));
  EXPECT_EQ(id.table(), (std::vector<Index>{0, 1, 2, 3, 4, 5}));
  const auto zero = C_on_map(OrthoMap::zero(mo2, mo2));
  EXPECT_EQ(zero.table(), std::vector<Index>(6, 0));
  const auto swap = C_on_map(OrthoMap(mo2, mo2, {0, 3, 4, 1, 2}));
  EXPECT_EQ(swap.table(), (std::vector<Index>{0, 3, 4, 1, 2, 5}));
  (void)l;
}

TEST(COnMap, AdjointPairsLiftAndPreserveJoins) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto x = random_orthoset(5, 0.4, seed);
    const auto y = random_orthoset(5, 0.4, seed + 100);
    std::vector<Index> t(x.size());
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 200; ++attempt) {
      t[0] = 0;
      for (Index i = 1; i < t.size(); ++i) t[i] = rng() % y.size();
      const OrthoMap f(x, y, t);
      const auto adj = oracle::all_adjoints(f);
      if (adj.empty()) continue;
      const auto cx = build_CX(x), cy = build_CX(y);
      const auto cxo = lattice_as_orthoset(cx), cyo = lattice_as_orthoset(cy);
      const auto cf = C_on_map(f, cx, cxo, cy, cyo);
      const auto cg = C_on_map(adj.front(), cy, cyo, cx, cxo);
      EXPECT_TRUE(oracle::adjoint_pair(cf, cg));
      for (Index a = 0; a < cx.size(); ++a)
        for (Index b = 0; b < cx.size(); ++b) ASSERT_EQ(cf(cx.join(a, b)), cy.join(cf(a), cf(b)));
      break;
    }
  }
}

TEST(MacNeille, Examples) {
  const auto f1 = figure1_lattice();
  std::vector<Index> xs{0};
  for (Index a : f1.atoms()) xs.push_back(a);
  EXPECT_TRUE(macneille_check(f1.to_orthoposet(), xs));
  EXPECT_TRUE(macneille_check(two_lattice().to_orthoposet(), {0, 1}));
  const auto b = boolean_lattice(2);
  std::vector<Index> bx{0};
  for (Index a : b.atoms()) bx.push_back(a);
  EXPECT_TRUE(macneille_check(b.to_orthoposet(), bx));
  EXPECT_TRUE(lattices_isomorphic(build_CX(orthoset_on(b, bx)), b));
}

TEST(MacNeille, NonLatticeCompletesToBoolean) {
  const auto p = boolean_without_middle();
  EXPECT_THROW(Ortholattice{p}, Error);
  std::vector<Index> xs{0, 1, 2, 3, 4};
  EXPECT_TRUE(macneille_check(p, xs));
}

TEST(MacNeille, NotJoinDense) {
  const auto b = boolean_lattice(2);
  try {
    macneille_check(b.to_orthoposet(), {0, b.top()});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotJoinDense);
  }
}

TEST(Ortholattice, InvalidInputs) {
  // Complement not order-reversing.
  EXPECT_THROW(Ortholattice::from_covers(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {3, 1, 2, 0}), Error);
  // Cycle.
  EXPECT_THROW(Ortholattice::from_covers(2, {{0, 1}, {1, 0}}, {1, 0}), Error);
}
