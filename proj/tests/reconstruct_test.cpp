#include <gtest/gtest.h>

#include "exaut/reconstruct.hpp"
#include "oracles.hpp"

using namespace exaut;
using namespace exaut::playground;

namespace {

ErrorKind kind_of(const std::function<void()>& fn)
{
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Usage;
}

} // namespace

TEST(MinimalStabilizers, Examples)
{
  auto s = minimal_stabilizers(pure_set(4));
  ASSERT_EQ(s.entries.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(s.entries[i].first, std::vector<Point>{static_cast<Point>(i)});
    EXPECT_EQ(s.entries[i].second.order(), 6u);
  }
  EXPECT_TRUE(s.k_star);

  auto one = minimal_stabilizers(pure_set(1));
  ASSERT_EQ(one.entries.size(), 1u);
  EXPECT_TRUE(one.entries[0].second.is_trivial());

  auto c5 = minimal_stabilizers(cycle(5));
  ASSERT_EQ(c5.entries.size(), 5u);
  for (const auto& e : c5.entries)
    EXPECT_EQ(e.second.order(), 2u);
}

TEST(MinimalStabilizers, PairwiseDistinctOnPresets)
{
  for (const auto& m : {pure_set(3), pure_set(6), cycle(5), rook(3), cliques(2, 3), cliques(3, 2)}) {
    auto s = minimal_stabilizers(m);
    // Three disjoint edges: each point determines its partner.
    EXPECT_EQ(s.entries.size(), s.k_star ? m.size() : m.size() / 2);
    for (std::size_t i = 0; i < s.entries.size(); ++i)
      for (std::size_t j = i + 1; j < s.entries.size(); ++j)
        EXPECT_FALSE(same_group(s.entries[i].second, s.entries[j].second));
  }
}

TEST(MinimalStabilizers, WarnsOutsideKStar)
{
  auto s = minimal_stabilizers(pure_set(2));
  EXPECT_FALSE(s.k_star);
  EXPECT_FALSE(s.warning.empty());
  ASSERT_EQ(s.entries.size(), 1u);
  EXPECT_EQ(s.entries[0].first.size(), 2u);
}

TEST(GroupIso, RejectsNonHomomorphisms)
{
  auto s3 = PermGroup::symmetric(3);
  std::vector<Permutation> images(s3.generators().size(), Permutation::parse(3, "(0 1)"));
  EXPECT_EQ(kind_of([&] { GroupIso(s3, images, s3); }), ErrorKind::NotAnAutomorphism);
}

TEST(InducedBijection, ConjugationByCycle)
{
  auto m = pure_set(5);
  auto sigma = Permutation::parse(5, "(0 1 2 3 4)");
  auto f_map = GroupIso::conjugation(automorphism_group(m), sigma);
  EXPECT_EQ(induced_bijection(f_map, m, m), sigma);
  EXPECT_TRUE(verify_conjugation(f_map, sigma));
}

TEST(InducedBijection, Identity)
{
  auto m = cycle(5);
  auto f_map = GroupIso::conjugation(automorphism_group(m), Permutation(5));
  EXPECT_TRUE(induced_bijection(f_map, m, m).is_identity());
}

TEST(InducedBijection, TwoPointsAreAmbiguous)
{
  auto m = pure_set(2);
  auto f_map = GroupIso::conjugation(automorphism_group(m), Permutation(2));
  EXPECT_EQ(kind_of([&] { induced_bijection(f_map, m, m); }), ErrorKind::AmbiguousMatch);
}

TEST(InducedBijection, ExceptionalAutomorphismOfSym6)
{
  auto f_map = exceptional_s6_automorphism();
  for (const auto& img : f_map.images())
    EXPECT_EQ(img.cycles().size(), 3u);
  // Not inner: no point bijection conjugates the generators correctly.
  for (const auto& p : oracle::all_permutations(6))
    ASSERT_FALSE(verify_conjugation(f_map, p));
  auto image = f_map.apply(pointwise_stabilizer(f_map.source(), {0}));
  EXPECT_EQ(orbit(image, 0).size(), 6u);
  auto m = pure_set(6);
  EXPECT_EQ(kind_of([&] { induced_bijection(f_map, m, m); }), ErrorKind::NoMinimalStabilizerMatch);
}

TEST(VerifyConjugation, DetectsWrongBijection)
{
  auto m = pure_set(4);
  auto sigma = Permutation::parse(4, "(0 1 2)");
  auto f_map = GroupIso::conjugation(automorphism_group(m), sigma);
  EXPECT_TRUE(verify_conjugation(f_map, sigma));
  EXPECT_FALSE(verify_conjugation(f_map, sigma * Permutation::parse(4, "(2 3)")));
}

TEST(Bidef, Examples)
{
  auto m = pure_set(4);
  EXPECT_TRUE(bidef_check(m, m, Permutation(4), 3).passed());
  auto sigma = Permutation::parse(4, "(0 2 3)");
  EXPECT_TRUE(bidef_check(m, relabel(m, sigma), sigma, 3).passed());

  auto rep = bidef_check(cycle(5), edgeless(5), Permutation(5), 2);
  EXPECT_EQ(rep.status, Status::ExactFail);
  EXPECT_TRUE(rep.summary["arities"][0]["ok"]);
  EXPECT_FALSE(rep.summary["arities"][1]["ok"]);
}

TEST(Bidef, OrbitCountsMatchBruteForce)
{
  // Orbits on pairs of C5 under the dihedral group: diagonal, edges, non-edges.
  auto rep = bidef_check(cycle(5), cycle(5), Permutation(5), 3);
  EXPECT_EQ(rep.summary["arities"][1]["orbits_m"], 3u);
  // Brute count of orbits on triples.
  auto aut = oracle::brute_automorphisms(cycle(5));
  std::set<std::vector<Point>> seen;
  std::size_t orbits = 0;
  for (Point a = 0; a < 5; ++a)
    for (Point b = 0; b < 5; ++b)
      for (Point c = 0; c < 5; ++c) {
        if (seen.contains({a, b, c}))
          continue;
        ++orbits;
        for (const auto& g : aut)
          seen.insert({g(a), g(b), g(c)});
      }
  EXPECT_EQ(rep.summary["arities"][2]["orbits_m"], orbits);
}

TEST(Scramble, Reproducible)
{
  auto a = scramble_harness(cycle(5), 7);
  auto b = scramble_harness(cycle(5), 7);
  EXPECT_EQ(a.sigma, b.sigma);
  EXPECT_EQ(encode(a.n), encode(b.n));
  auto f = induced_bijection(a.f_map, cycle(5), a.n);
  EXPECT_TRUE(verify_conjugation(a.f_map, f));
  EXPECT_EQ(f, a.sigma);
}

TEST(Scramble, RoundTripSweep)
{
  for (const auto& m : {pure_set(4), pure_set(6), cycle(5), rook(3), cliques(2, 3)})
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      auto s = scramble_harness(m, seed);
      auto r = reconstruct(s.f_map, m, s.n, 3);
      ASSERT_TRUE(r.f) << seed;
      EXPECT_TRUE(r.verified);
      EXPECT_TRUE(r.agrees_everywhere);
      EXPECT_TRUE(r.bidef->passed());
      EXPECT_EQ(r.report.status, Status::ExactPass);
    }
}

TEST(Reconstruct, PreprocessingKeepsTheAnswer)
{
  auto m = path(4);
  EXPECT_FALSE(is_homogeneous(m).homogeneous);
  auto s = scramble_harness(m, 3);
  // Every point stabilizer of P4 is trivial, so matching is ambiguous with
  // or without the canonical structure.
  auto plain = reconstruct(s.f_map, m, s.n, 2, false);
  auto pre = reconstruct(s.f_map, m, s.n, 2, true);
  EXPECT_TRUE(pre.preprocessed);
  ASSERT_TRUE(plain.error && pre.error);
  EXPECT_EQ(plain.error->kind(), ErrorKind::AmbiguousMatch);
  EXPECT_EQ(pre.error->kind(), ErrorKind::AmbiguousMatch);

  auto k = cliques(2, 3);
  auto t = scramble_harness(k, 5);
  auto a = reconstruct(t.f_map, k, t.n, 2, false);
  auto b = reconstruct(t.f_map, k, t.n, 2, true);
  ASSERT_TRUE(a.f && b.f);
  EXPECT_EQ(*a.f, *b.f);
}
