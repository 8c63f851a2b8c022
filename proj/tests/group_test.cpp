#include <gtest/gtest.h>

#include <random>

#include "exaut/group.hpp"
#include "oracles.hpp"

using namespace exaut;

namespace {

Permutation P(std::size_t n, const char* s) { return Permutation::parse(n, s); }

std::set<Permutation> brute_stabilizer(const PermGroup& g, const std::vector<Point>& a,
                                       bool setwise)
{
  std::set<Permutation> result;
  for (const auto& x : oracle::closure(g.generators())) {
    bool ok = true;
    for (Point p : a) {
      bool in = std::find(a.begin(), a.end(), x(p)) != a.end();
      ok = ok && (setwise ? in : x(p) == p);
    }
    if (ok)
      result.insert(x);
  }
  return result;
}

} // namespace

TEST(Bsgs, IdentityGeneratesTrivialGroup)
{
  EXPECT_EQ(PermGroup({Permutation(5)}).order(), 1u);
}

TEST(Bsgs, TranspositionAndFiveCycle)
{
  std::vector<Permutation> gens{P(5, "(0 1)"), P(5, "(0 1 2 3 4)")};
  EXPECT_EQ(oracle::closure(gens).size(), 120u);
  EXPECT_EQ(PermGroup(gens).order(), 120u);
}

TEST(Bsgs, KleinFour)
{
  std::vector<Permutation> gens{P(4, "(0 1)(2 3)"), P(4, "(0 2)(1 3)")};
  EXPECT_EQ(oracle::closure(gens).size(), 4u);
  EXPECT_EQ(PermGroup(gens).order(), 4u);
}

TEST(Bsgs, ErrorsOnEmptyOrMixedDegrees)
{
  EXPECT_THROW(PermGroup(std::vector<Permutation>{}), Error);
  EXPECT_THROW(PermGroup({Permutation(3), Permutation(4)}), Error);
}

TEST(Bsgs, OrderAndMembershipMatchClosureOnRandomGenerators)
{
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 7;
    std::vector<Permutation> gens;
    for (std::size_t k = 0, m = 1 + rng() % 3; k < m; ++k)
      gens.push_back(oracle::random_permutation(n, rng));
    PermGroup g(gens);
    auto ref = oracle::closure(gens);
    ASSERT_EQ(g.order(), ref.size());
    for (const auto& x : oracle::all_permutations(n))
      ASSERT_EQ(g.contains(x), ref.contains(x));
    auto elems = g.elements();
    EXPECT_TRUE(std::equal(elems.begin(), elems.end(), ref.begin(), ref.end()));
  }
}

TEST(Bsgs, BaseChangeKeepsGroup)
{
  PermGroup g = PermGroup::symmetric(6);
  std::vector<Point> prefix{4, 2};
  PermGroup h = g.with_base_prefix(prefix);
  EXPECT_EQ(h.base()[0], 4u);
  EXPECT_EQ(h.base()[1], 2u);
  EXPECT_EQ(h.order(), 720u);
}

TEST(Orbit, Examples)
{
  EXPECT_EQ(orbit(PermGroup::trivial(3), 2), (std::vector<Point>{2}));
  EXPECT_EQ(orbit(PermGroup::symmetric(3), 0), (std::vector<Point>{0, 1, 2}));
  EXPECT_EQ(orbit(PermGroup({P(5, "(0 1)(2 3)")}), 4), (std::vector<Point>{4}));
  EXPECT_THROW((void)orbit(PermGroup::trivial(3), 3), Error);
}

TEST(Stabilizer, PointwiseExamples)
{
  PermGroup s4 = PermGroup::symmetric(4);
  EXPECT_EQ(brute_stabilizer(s4, {0, 1}, false).size(), 2u);
  EXPECT_EQ(pointwise_stabilizer(s4, {0, 1}).order(), 2u);
  EXPECT_EQ(pointwise_stabilizer(s4, {}).order(), 24u);
  EXPECT_EQ(pointwise_stabilizer(PermGroup::trivial(4), {1, 2}).order(), 1u);
}

TEST(Stabilizer, SetwiseExamples)
{
  PermGroup s4 = PermGroup::symmetric(4);
  EXPECT_EQ(brute_stabilizer(s4, {0, 1}, true).size(), 4u);
  EXPECT_EQ(setwise_stabilizer(s4, {0, 1}).order(), 4u);
  EXPECT_EQ(setwise_stabilizer(s4, {0, 1, 2, 3}).order(), 24u);
  PermGroup c5 = PermGroup::cyclic(5);
  EXPECT_EQ(brute_stabilizer(c5, {0, 1}, true).size(), 1u);
  EXPECT_EQ(setwise_stabilizer(c5, {0, 1}).order(), 1u);
}

TEST(Stabilizer, MatchesBruteForceOnRandomGroups)
{
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + rng() % 6;
    std::vector<Permutation> gens{oracle::random_permutation(n, rng),
                                  oracle::random_permutation(n, rng)};
    PermGroup g(gens);
    std::vector<Point> a;
    for (Point x = 0; x < n; ++x)
      if (rng() % 2)
        a.push_back(x);
    auto pw = pointwise_stabilizer(g, a);
    auto sw = setwise_stabilizer(g, a);
    auto ref_pw = brute_stabilizer(g, a, false);
    auto ref_sw = brute_stabilizer(g, a, true);
    ASSERT_EQ(pw.order(), ref_pw.size());
    ASSERT_EQ(sw.order(), ref_sw.size());
    for (const auto& x : ref_sw)
      ASSERT_TRUE(sw.contains(x));
    // pointwise <= setwise, and normal in it
    EXPECT_TRUE(is_subgroup(pw, sw));
    EXPECT_TRUE(is_normal(pw, sw));
  }
}

TEST(Stabilizer, OrbitStabilizerTheorem)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng() % 8;
    PermGroup g({oracle::random_permutation(n, rng), oracle::random_permutation(n, rng)});
    for (Point a = 0; a < n; ++a)
      EXPECT_EQ(orbit(g, a).size() * pointwise_stabilizer(g, {a}).order(), g.order());
  }
}

TEST(Normality, Examples)
{
  PermGroup s3 = PermGroup::symmetric(3);
  EXPECT_TRUE(is_normal(s3, s3));
  EXPECT_FALSE(is_normal(PermGroup({P(3, "(0 1)")}), s3));
  EXPECT_TRUE(is_normal(PermGroup({P(3, "(0 1 2)")}), s3));
  try {
    (void)is_normal(PermGroup({P(4, "(0 3)")}), PermGroup::symmetric(4).with_base_prefix(std::vector<Point>{}));
  } catch (...) {
    FAIL();
  }
  EXPECT_THROW((void)is_normal(PermGroup({P(3, "(0 1)")}), PermGroup({P(3, "(0 1 2)")})), Error);
}

TEST(Transporter, FindsMappingWhenOneExists)
{
  PermGroup d5 = PermGroup({P(5, "(0 1 2 3 4)"), P(5, "(1 4)(2 3)")});
  auto g = d5.transporter({0, 1}, {2, 1});
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ((*g)(0), 2u);
  EXPECT_EQ((*g)(1), 1u);
  EXPECT_TRUE(d5.contains(*g));
  EXPECT_FALSE(d5.transporter({0, 1}, {0, 2}).has_value());
}
