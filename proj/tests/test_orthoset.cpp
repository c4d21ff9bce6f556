#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "orthokit/gallery.hpp"
#include "orthokit/isomorphism.hpp"
#include "orthokit/orthoset.hpp"

using namespace orthokit;

namespace {

Bits bits_of(const Orthoset& x, std::initializer_list<std::string_view> names) {
  return x.subset_of_labels(names).bits();
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Validate, ZeroOrthoset) {
  const auto z = Orthoset::validate({Bits(1, {0})});
  EXPECT_EQ(z.size(), 1u);
  EXPECT_EQ(z.proper_count(), 0u);
  EXPECT_TRUE(z.orthogonal(0, 0));
}

TEST(Validate, OneOrthoset) {
  const auto one = Orthoset::validate({Bits(2, {0, 1}), Bits(2, {0})});
  EXPECT_TRUE(one.orthogonal(0, 1));
  EXPECT_FALSE(one.orthogonal(1, 1));
}

TEST(Validate, SelfOrthogonalProper) {
  std::vector<Bits> rows{Bits(3, {0, 1, 2}), Bits(3, {0, 1}), Bits(3, {0})};
  try {
    Orthoset::validate(rows);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SelfOrthogonalProper);
    ASSERT_FALSE(e.witness().empty());
    EXPECT_EQ(e.witness()[0], 1u);
  }
}

TEST(Validate, SymmetryAndFalsity) {
  EXPECT_EQ(code_of([] { Orthoset::validate({Bits(3, {0, 1, 2}), Bits(3, {0, 2}), Bits(3, {0})}); }),
            ErrorCode::SymmetryViolation);
  EXPECT_EQ(code_of([] { Orthoset::validate({Bits(3, {0, 1}), Bits(3, {0}), Bits(3, {0})}); }),
            ErrorCode::FalsityNotOrthogonal);
}

TEST(Perp, SquareExamples) {
  const auto sq = example_square();
  EXPECT_EQ(perp(sq, sq.subset_of_labels({"s"})).bits(), bits_of(sq, {"0", "t", "u", "y", "z"}));
  EXPECT_EQ(perp(sq, sq.subset_of_labels({"s", "w"})).bits(), bits_of(sq, {"0", "u", "y"}));
  EXPECT_EQ(perp(sq, sq.empty_subset()).bits(), Bits::full(9));
}

TEST(Perp, OwnerMismatch) {
  const auto sq = example_square();
  const auto mo2 = mo_n(2);
  EXPECT_EQ(code_of([&] { perp(sq, mo2.subset({1})); }), ErrorCode::OwnerMismatch);
}

TEST(Closure, Examples) {
  const auto sq = example_square();
  auto c = closure(sq, sq.subset_of_labels({"s", "w"}));
  EXPECT_EQ(c.closed.bits(), bits_of(sq, {"0", "s", "w"}));
  EXPECT_FALSE(c.was_closed);
  c = closure(sq, sq.subset_of_labels({"0", "s"}));
  EXPECT_EQ(c.closed.bits(), bits_of(sq, {"0", "s"}));
  EXPECT_TRUE(c.was_closed);
  const auto mo2 = mo_n(2);
  c = closure(mo2, mo2.subset({1, 3}));
  EXPECT_EQ(c.closed.bits(), Bits::full(5));
  EXPECT_FALSE(c.was_closed);
}

TEST(Closure, AgreesWithOracleOnSmallOrthosets) {
  for (std::size_t k = 0; k <= 4; ++k)
    for (const auto& x : all_orthosets(k))
      for (oracle::Mask m = 0; m <= oracle::all(x); ++m) {
        Bits b(x.size());
        for (Index i = 0; i < x.size(); ++i)
          if (oracle::has(m, i)) b.set(i);
        ASSERT_EQ(oracle::to_mask(perp_bits(x, b)), oracle::perp(x, m));
      }
}

TEST(Closure, OperatorLawsOnRandomSubsets) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_orthoset(10, 0.4, trial);
    for (int s = 0; s < 20; ++s) {
      Bits a(x.size()), b(x.size());
      for (Index i = 0; i < x.size(); ++i) {
        if (rng() & 1) a.set(i);
        if (rng() & 1) b.set(i);
      }
      const Bits ap = perp_bits(x, a);
      EXPECT_TRUE(a.subset_of(closure_bits(x, a)));
      EXPECT_EQ(ap, perp_bits(x, closure_bits(x, a)));
      EXPECT_EQ(perp_bits(x, a | b), ap & perp_bits(x, b));
      if (a.subset_of(b)) EXPECT_TRUE(perp_bits(x, b).subset_of(ap));
      EXPECT_TRUE(perp_bits(x, a | b).subset_of(ap));
    }
  }
}

TEST(Separation, SquareIsFrechet) {
  const auto r = separation_report(example_square());
  EXPECT_TRUE(r.irredundant);
  EXPECT_TRUE(r.atomistic);
  EXPECT_TRUE(r.frechet);
  EXPECT_EQ(r.classes.size(), 9u);
}

TEST(Separation, One) {
  const auto r = separation_report(one_orthoset());
  EXPECT_TRUE(r.irredundant && r.atomistic && r.frechet);
}

TEST(Separation, DoubledOne) {
  const auto d = doubling(one_orthoset(), 1);
  const auto r = separation_report(d.z);
  EXPECT_FALSE(r.irredundant);
  EXPECT_TRUE(r.atomistic);
  EXPECT_FALSE(r.frechet);
  ASSERT_EQ(r.classes.size(), 2u);
  EXPECT_EQ(r.classes[1].bits(), Bits(3, {1, 2}));
}

TEST(Separation, MatchesDefinitionsExhaustively) {
  for (std::size_t k = 0; k <= 5; ++k)
    for (const auto& x : all_orthosets(k)) {
      const auto r = separation_report(x);
      ASSERT_EQ(r.irredundant, oracle::irredundant(x));
      ASSERT_EQ(r.atomistic, oracle::atomistic(x));
      ASSERT_EQ(r.frechet, oracle::frechet(x));
      ASSERT_EQ(r.frechet, r.irredundant && r.atomistic);
      ASSERT_EQ(r.atomistic, oracle::atomistic_d(x));
      ASSERT_EQ(r.atomistic, oracle::atomistic_e(x));
    }
}

TEST(Quotient, DoubledOneCollapses) {
  const auto q = irredundant_quotient(doubling(one_orthoset(), 1).z);
  EXPECT_TRUE(orthoisomorphic(q.quotient, one_orthoset()));
  EXPECT_EQ(q.projection, (std::vector<Index>{0, 1, 1}));
  ASSERT_EQ(q.classes.size(), 2u);
  EXPECT_EQ(q.classes[0].bits(), Bits(3, {0}));
}

TEST(Quotient, SquareIsItsOwnQuotient) {
  const auto sq = example_square();
  EXPECT_TRUE(orthoisomorphic(irredundant_quotient(sq).quotient, sq));
}

TEST(Quotient, ProjectionRespectsPerpAndLatticeSize) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto x = random_orthoset(7, 0.35, seed);
    const auto d = doubling(x, 1 + seed % 7).z;
    const auto q = irredundant_quotient(d);
    EXPECT_TRUE(separation_report(q.quotient).irredundant);
    for (Index a = 0; a < d.size(); ++a)
      for (Index b = 0; b < d.size(); ++b)
        ASSERT_EQ(d.orthogonal(a, b), q.quotient.orthogonal(q.projection[a], q.projection[b]));
    EXPECT_EQ(oracle::closed_sets(d).size(), oracle::closed_sets(q.quotient).size());
  }
}

TEST(Rank, Examples) {
  const auto sq = example_square();
  auto r = rank_and_perp_sets(sq);
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.witness.bits(), bits_of(sq, {"s", "t", "u"}));
  r = rank_and_perp_sets(zero_orthoset());
  EXPECT_EQ(r.rank, 0u);
  EXPECT_TRUE(r.witness.bits().none());
  const auto mo2 = mo_n(2);
  r = rank_and_perp_sets(mo2);
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.witness.bits(), Bits(5, {1, 2}));
}

TEST(Rank, AgreesWithOracle) {
  for (std::size_t k = 0; k <= 5; ++k)
    for (const auto& x : all_orthosets(k)) ASSERT_EQ(rank_and_perp_sets(x).rank, oracle::rank(x));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto x = random_orthoset(12, 0.5, seed);
    const auto r = rank_and_perp_sets(x);
    EXPECT_EQ(r.rank, oracle::rank(x));
    EXPECT_TRUE(oracle::is_perp_set(x, oracle::to_mask(r.witness.bits())));
    EXPECT_EQ(r.witness.bits().count(), r.rank);
  }
}

TEST(Rank, SizeLimit) {
  EXPECT_EQ(code_of([] { rank_and_perp_sets(random_orthoset(65, 0.1, 1)); }), ErrorCode::SizeLimitExceeded);
}

TEST(Decomposition, Examples) {
  const auto mo2 = mo_n(2);
  EXPECT_FALSE(is_decomposition(mo2, {mo2.subset({0, 1, 2}), mo2.subset({0, 3, 4})}));
  const auto sq = example_square();
  EXPECT_TRUE(is_decomposition(sq, {sq.subset_of_labels({"0", "s"}), sq.subset_of_labels({"0", "t", "u", "y", "z"})}));
  EXPECT_TRUE(is_decomposition(sq, {sq.subset({0}), sq.full_subset()}));
}

TEST(Decomposition, BinaryIffClosed) {
  for (std::size_t k = 0; k <= 4; ++k)
    for (const auto& x : all_orthosets(k))
      for (oracle::Mask m = 0; m <= oracle::all(x); ++m) {
        Bits b(x.size());
        for (Index i = 0; i < x.size(); ++i)
          if (oracle::has(m, i)) b.set(i);
        const auto a = x.subset(b);
        ASSERT_EQ(is_decomposition(x, {a, perp(x, a)}), is_orthoclosed(x, a));
      }
}

TEST(Suborthoset, Examples) {
  const auto sq = example_square();
  const auto s = suborthoset(sq, sq.subset_of_labels({"0", "s", "w"}));
  EXPECT_EQ(s.orthoset.size(), 3u);
  EXPECT_FALSE(s.orthoset.orthogonal(1, 2));
  EXPECT_EQ(s.embed, (std::vector<Index>{0, 1, 5}));
  EXPECT_EQ(suborthoset(sq, sq.subset({0})).orthoset.size(), 1u);
  const auto mo2 = mo_n(2);
  const auto a = suborthoset(mo2, mo2.subset({0, 1, 2}));
  EXPECT_TRUE(a.orthoset.orthogonal(1, 2));
  EXPECT_EQ(code_of([&] { suborthoset(sq, sq.subset({1})); }), ErrorCode::FalsityMissing);
}

TEST(Suborthoset, RelativePerp) {
  const auto sq = example_square();
  const auto a = sq.subset_of_labels({"0", "s", "t", "u"});
  const auto b = sq.subset_of_labels({"s"});
  EXPECT_EQ(relative_perp(sq, a, b).bits(), bits_of(sq, {"0", "t", "u"}));
}
