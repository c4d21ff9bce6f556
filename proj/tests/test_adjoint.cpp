#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "orthokit/adjoint.hpp"
#include "orthokit/category.hpp"
#include "orthokit/gallery.hpp"

using namespace orthokit;

namespace {

std::vector<Orthoset> up_to(std::size_t k) {
  std::vector<Orthoset> out;
  for (std::size_t i = 0; i <= k; ++i)
    for (auto& x : all_orthosets(i)) out.push_back(x);
  return out;
}

OrthoMap random_map(const Orthoset& x, const Orthoset& y, std::mt19937_64& rng) {
  std::vector<Index> t(x.size());
  for (auto& v : t) v = rng() % y.size();
  t[0] = 0;
  return {x, y, t};
}

}  // namespace

TEST(FindAdjoint, Identity) {
  for (const auto& x : {example_square(), mo_n(2), doubling(mo_n(1), 1).z}) {
    const auto r = find_adjoint(OrthoMap::identity(x));
    ASSERT_TRUE(r.adjointable);
    EXPECT_TRUE(is_adjoint_pair(OrthoMap::identity(x), *r.canonical));
    if (separation_report(x).irredundant) EXPECT_EQ(*r.canonical, OrthoMap::identity(x));
  }
}

TEST(FindAdjoint, PointIntoSquareHasUniqueAdjoint) {
  const auto sq = example_square();
  const auto one = one_orthoset();
  const auto f = OrthoMap::point(one, sq, *sq.find("s"));
  const auto r = find_adjoint(f);
  ASSERT_TRUE(r.adjointable);
  EXPECT_EQ(r.canonical->table(), (std::vector<Index>{0, 1, 0, 0, 1, 1, 1, 0, 0}));
  EXPECT_EQ(oracle::all_adjoints(f).size(), 1u);
}

TEST(FindAdjoint, FalsityNotFixed) {
  const auto one = one_orthoset();
  const auto r = find_adjoint(OrthoMap(one, one, {1, 1}));
  EXPECT_FALSE(r.adjointable);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, 1u);
}

TEST(FindAdjoint, CandidatesAreExactlyTheAdjointValues) {
  std::mt19937_64 rng(3);
  for (const auto& x : up_to(3))
    for (const auto& y : up_to(3)) {
      oracle::for_each_map(x, y, [&](const OrthoMap& f) {
        const auto r = find_adjoint(f);
        const auto all = oracle::all_adjoints(f);
        ASSERT_EQ(r.adjointable, !all.empty());
        if (!r.adjointable) return;
        EXPECT_TRUE(oracle::adjoint_pair(f, *r.canonical));
        std::size_t product = 1;
        for (const auto& c : r.candidates) product *= c.bits().count();
        EXPECT_EQ(product, all.size());
        for (const auto& g : all)
          for (Index b = 0; b < y.size(); ++b) EXPECT_TRUE(r.candidates[b].contains(g(b)));
        for (const auto& c : r.candidates)
          c.bits().for_each([&](Index a) { EXPECT_EQ(x.row(a), x.row(c.bits().first())); });
      });
    }
}

TEST(IsAdjointPair, Examples) {
  const auto sq = example_square();
  const auto mo2 = mo_n(2);
  EXPECT_TRUE(is_adjoint_pair(OrthoMap::zero(sq, mo2), OrthoMap::zero(mo2, sq)));
  EXPECT_TRUE(is_adjoint_pair(OrthoMap::identity(sq), OrthoMap::identity(sq)));
  const OrthoMap swap(mo2, mo2, {0, 3, 4, 1, 2});
  EXPECT_TRUE(is_adjoint_pair(swap, swap));
  EXPECT_THROW(is_adjoint_pair(swap, OrthoMap::zero(sq, mo2)), Error);
}

TEST(AdjointLaws, ContinuityKernelsAndComposition) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 3000 && checked < 300; ++trial) {
    const auto x = random_orthoset(4, 0.5, rng());
    const auto y = random_orthoset(4, 0.5, rng());
    const auto z = random_orthoset(3, 0.5, rng());
    const auto f = random_map(x, y, rng);
    const auto h = random_map(y, z, rng);
    const auto rf = find_adjoint(f);
    const auto rh = find_adjoint(h);
    if (!rf.adjointable) continue;
    ++checked;
    const auto& g = *rf.canonical;
    EXPECT_EQ(f(0), 0u);
    const auto cx = build_CX(x), cy = build_CX(y);
    for (Index i = 0; i < cx.size(); ++i)
      EXPECT_TRUE(f.image_bits(cx.set(i)).subset_of(closure_bits(y, f.image_bits(cx.set(i)))));
    for (Index i = 0; i < cy.size(); ++i) EXPECT_TRUE(is_orthoclosed(x, f.preimage(y.subset(cy.set(i)))));
    EXPECT_EQ(f.kernel().bits(), perp_bits(x, g.image().bits()));
    EXPECT_EQ(g.kernel().bits(), perp_bits(y, f.image().bits()));
    if (rh.adjointable) EXPECT_TRUE(oracle::adjoint_pair(compose(h, f), compose(g, *rh.canonical)));
  }
  EXPECT_GE(checked, 100);
}

TEST(AdjointLaws, UniquenessIffIrredundant) {
  for (const auto& x : up_to(4)) {
    const bool irr = separation_report(x).irredundant;
    bool all_unique = oracle::all_adjoints(OrthoMap::identity(x)).size() == 1;
    for (const auto& y : up_to(2))
      oracle::for_each_map(x, y, [&](const OrthoMap& f) {
        if (oracle::all_adjoints(f).size() > 1) all_unique = false;
      });
    ASSERT_EQ(irr, all_unique);
  }
}

TEST(Classify, SasakiProjectionInSquare) {
  const auto sq = example_square();
  const auto a = sq.subset_of_labels({"0", "s"});
  const auto p = compose(inclusion(suborthoset(sq, a), sq), *sasaki_map(sq, a).map);
  const auto c = classify(p);
  EXPECT_TRUE(*c.projection);
  EXPECT_TRUE(*c.self_adjoint);
  EXPECT_TRUE(c.partial_orthometry);
  EXPECT_EQ(c.image.bits(), a.bits());
}

TEST(Classify, SwapIsOrthoisomorphism) {
  const auto mo2 = mo_n(2);
  const auto c = classify(OrthoMap(mo2, mo2, {0, 3, 4, 1, 2}));
  EXPECT_TRUE(c.orthoisomorphism);
  EXPECT_TRUE(c.orthometry);
  EXPECT_TRUE(c.coorthometry);
  EXPECT_TRUE(c.preserves_perp && c.reflects_perp);
}

TEST(Classify, ZeroMap) {
  const auto sq = example_square();
  const auto mo2 = mo_n(2);
  const auto c = classify(OrthoMap::zero(sq, mo2));
  EXPECT_TRUE(c.partial_orthometry);
  EXPECT_EQ(c.kernel.bits(), Bits::full(9));
  EXPECT_EQ(c.image.bits(), Bits(5, {0}));
  EXPECT_FALSE(c.projection.has_value());
  EXPECT_EQ(c.restriction.dom.orthoset.size(), 1u);
  EXPECT_EQ(c.restriction.cod.orthoset.size(), 1u);
}

TEST(Classify, FlagImplications) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = random_orthoset(4, 0.5, rng());
    const auto f = random_map(x, x, rng);
    const auto c = classify(f);
    if (c.orthometry) EXPECT_TRUE(c.partial_orthometry && c.injective);
    if (c.coorthometry) EXPECT_TRUE(c.partial_orthometry && c.surjective);
    if (c.generalised_inverse) EXPECT_TRUE(oracle::adjoint_pair(f, *c.generalised_inverse));
  }
}

TEST(Classify, PartialOrthometryMatchesBruteForce) {
  for (const auto& x : up_to(3))
    for (const auto& y : up_to(3))
      oracle::for_each_map(x, y, [&](const OrthoMap& f) {
        ASSERT_EQ(classify(f).partial_orthometry, oracle::partial_orthometry(f)) << f.to_string();
      });
}

TEST(Classify, OrthoisomorphismCriteriaAgree) {
  for (const auto& x : up_to(4)) {
    for (const auto& m : enumerate_orthoautomorphisms(x).automorphisms) {
      const auto c = classify(m);
      EXPECT_TRUE(c.orthoisomorphism);
      EXPECT_TRUE(c.orthometry && c.surjective);
      EXPECT_TRUE(oracle::adjoint_pair(m, inverse(m)));
    }
    oracle::for_each_map(x, x, [&](const OrthoMap& f) {
      if (!f.injective() || !f.surjective() || !is_adjointable(f)) return;
      const bool a = is_adjoint_pair(f, inverse(f));
      const bool b = preserves_perp(f) && reflects_perp(f);
      const bool c = classify(f).orthometry;
      ASSERT_EQ(a, b);
      ASSERT_EQ(a, c);
    });
  }
}

TEST(Classify, ScalarIffParallelToIdentity) {
  for (const auto& x : up_to(4)) {
    const auto r = separation_report(x);
    const auto cx = build_CX(x);
    if (!r.atomistic || !lattice_report(cx).irreducible) continue;
    oracle::for_each_map(x, x, [&](const OrthoMap& f) {
      if (!is_adjointable(f) || f.image().bits() == Bits(x.size(), {0})) return;
      ASSERT_EQ(is_scalar(f, cx), parallel(f, OrthoMap::identity(x)));
    });
  }
}

TEST(Sasaki, SquareOntoS) {
  const auto sq = example_square();
  const auto r = sasaki_map(sq, sq.subset_of_labels({"0", "s"}));
  ASSERT_TRUE(r.map);
  // 0 s t u v w x y z -> 0 s 0 0 s s s 0 0 (suborthoset indices 0, 1)
  EXPECT_EQ(r.map->table(), (std::vector<Index>{0, 1, 0, 0, 1, 1, 1, 0, 0}));
  EXPECT_TRUE(is_adjoint_pair(inclusion(r.subspace, sq), *r.map));
}

TEST(Sasaki, SquareOntoSW) {
  const auto sq = example_square();
  const auto r = sasaki_map(sq, sq.subset_of_labels({"0", "s", "w"}));
  EXPECT_FALSE(r.map);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(sq.label(*r.witness), "t");
  std::vector<std::string> failing;
  for (Index v : r.failing) failing.push_back(sq.label(v));
  EXPECT_EQ(failing, (std::vector<std::string>{"t", "v", "x", "z"}));
}

TEST(Sasaki, NotOrthoclosed) {
  const auto sq = example_square();
  EXPECT_THROW(sasaki_map(sq, sq.subset_of_labels({"0", "s", "t"})), Error);
}

TEST(Sasaki, MatchesAdjointOfInclusion) {
  for (const auto& x : up_to(5)) {
    const auto cx = build_CX(x);
    for (Index i = 0; i < cx.size(); ++i) {
      const auto a = x.subset(cx.set(i));
      const auto r = sasaki_map(x, a);
      const auto iota = inclusion(r.subspace, x);
      ASSERT_EQ(r.map.has_value(), is_adjointable(iota));
      if (r.map) {
        ASSERT_TRUE(oracle::adjoint_pair(iota, *r.map));
        ASSERT_EQ(compose(*r.map, iota), OrthoMap::identity(r.subspace.orthoset));
        ASSERT_TRUE(*classify(compose(iota, *r.map), &cx).projection);
      }
    }
  }
}

TEST(InclusionSurvey, Examples) {
  const auto sq = example_square();
  const auto s = inclusion_survey(sq);
  EXPECT_FALSE(s.all_adjointable);
  bool has_sw = false;
  for (const auto& f : s.failing) has_sw = has_sw || f.bits() == sq.subset_of_labels({"0", "s", "w"}).bits();
  EXPECT_TRUE(has_sw);
  EXPECT_FALSE(inclusion_survey(basic_elements(figure1_lattice())).all_adjointable);
  for (const auto& l : {figure1_lattice(), boolean_lattice(3), build_CX(mo_n(3))})
    EXPECT_TRUE(inclusion_survey(lattice_as_orthoset(l)).all_adjointable);
}

TEST(InclusionSurvey, ImpliesDaceyAndCovering) {
  for (const auto& x : up_to(5)) {
    const auto cx = build_CX(x);
    if (!inclusion_survey(x, cx).all_adjointable) continue;
    const auto r = lattice_report(cx);
    ASSERT_TRUE(r.orthomodular);
    if (separation_report(x).atomistic) ASSERT_TRUE(r.covering);
  }
}

TEST(ReducingSubspaces, Examples) {
  const auto mo2 = mo_n(2);
  EXPECT_EQ(reducing_subspaces(OrthoMap::identity(mo2)).size(), 6u);
  const auto swap = reducing_subspaces(OrthoMap(mo2, mo2, {0, 3, 4, 1, 2}));
  ASSERT_EQ(swap.size(), 2u);
  EXPECT_EQ(swap[0].bits(), Bits(5, {0}));
  EXPECT_EQ(swap[1].bits(), Bits::full(5));
  const auto sq = example_square();
  const auto a = sq.subset_of_labels({"0", "s"});
  const auto p = compose(inclusion(suborthoset(sq, a), sq), *sasaki_map(sq, a).map);
  const auto fam = reducing_subspaces(p);
  bool has_a = false, has_ap = false;
  for (const auto& s : fam) {
    has_a = has_a || s.bits() == a.bits();
    has_ap = has_ap || s.bits() == sq.subset_of_labels({"0", "t", "u", "y", "z"}).bits();
  }
  EXPECT_TRUE(has_a && has_ap);
}

TEST(ReducingSubspaces, FormSubortholattice) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_orthoset(5, 0.4, rng());
    const auto f = random_map(x, x, rng);
    if (!is_adjointable(f)) continue;
    const auto fam = reducing_subspaces(f);
    const auto cx = build_CX(x);
    std::vector<Index> idx;
    for (const auto& s : fam) idx.push_back(*cx.index_of(s.bits()));
    auto in = [&](Index k) { return std::count(idx.begin(), idx.end(), k) > 0; };
    for (Index a : idx) {
      EXPECT_TRUE(in(cx.comp(a)));
      for (Index b : idx) EXPECT_TRUE(in(cx.meet(a, b)) && in(cx.join(a, b)));
    }
  }
}

TEST(QuotientMap, Examples) {
  const auto d = doubling(one_orthoset(), 1);
  EXPECT_TRUE(classify(quotient_map(d.h1)).orthoisomorphism);
  const auto mo2 = mo_n(2);
  EXPECT_EQ(quotient_map(OrthoMap::identity(mo2)), OrthoMap::identity(irredundant_quotient(mo2).quotient));
  const auto z = doubling(mo2, 1).z;
  std::vector<Index> t(z.size());
  for (Index i = 0; i < z.size(); ++i) t[i] = i;
  t[5] = 3;
  try {
    quotient_map(OrthoMap(z, z, t));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotParallelPreserving);
    EXPECT_EQ(e.witness(), (std::vector<Index>{1, 5}));
  }
}

TEST(QuotientMap, AdjointableIffParallelPreservingAndQuotientAdjointable) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    auto x = random_orthoset(3, 0.5, rng());
    x = doubling(x, 1 + rng() % 3).z;
    auto y = random_orthoset(3, 0.5, rng());
    y = doubling(y, 1 + rng() % 3).z;
    const auto f = random_map(x, y, rng);
    bool rhs = false;
    try {
      rhs = is_adjointable(quotient_map(f));
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::NotParallelPreserving);
    }
    ASSERT_EQ(is_adjointable(f), rhs);
  }
}

TEST(Doubling, Examples) {
  const auto d = doubling(one_orthoset(), 1);
  EXPECT_EQ(d.z.size(), 3u);
  EXPECT_FALSE(d.z.orthogonal(1, 2));
  EXPECT_EQ(d.z.labels(), (std::vector<std::string>{"0", "p1", "p2"}));
  const auto mo2 = mo_n(2);
  const auto e = doubling(mo2, 1);
  EXPECT_EQ(e.z.size(), 6u);
  EXPECT_TRUE(e.z.orthogonal(1, 2));
  EXPECT_TRUE(e.z.orthogonal(5, 2));
  EXPECT_EQ(compose(e.k, e.h1), OrthoMap::identity(mo2));
  EXPECT_EQ(compose(e.k, e.h2), OrthoMap::identity(mo2));
  EXPECT_THROW(doubling(mo2, 0), Error);
}
