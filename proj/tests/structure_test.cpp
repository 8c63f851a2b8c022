#include <gtest/gtest.h>

#include <random>

#include "exaut/structure.hpp"
#include "exaut/subgroups.hpp"
#include "oracles.hpp"

using namespace exaut;
namespace pg = exaut::playground;

namespace {

void expect_aut_matches_brute_force(const FinStructure& m)
{
  auto g = automorphism_group(m);
  auto ref = oracle::brute_automorphisms(m);
  ASSERT_EQ(g.order(), ref.size());
  for (const auto& x : ref)
    EXPECT_TRUE(g.contains(x));
}

// Brute-force homogeneity: every isomorphism between induced substructures
// extends, checked over all pairs of injective tuples.
bool brute_homogeneous(const FinStructure& m)
{
  auto aut = oracle::brute_automorphisms(m);
  const std::size_t n = m.size();
  std::vector<std::vector<Point>> tuples{{}};
  for (std::size_t s = 1; s <= n; ++s) {
    std::vector<std::vector<Point>> next;
    for (const auto& t : tuples)
      for (Point x = 0; x < n; ++x)
        if (std::find(t.begin(), t.end(), x) == t.end()) {
          auto u = t;
          u.push_back(x);
          next.push_back(u);
        }
    tuples = next;
    for (const auto& a : tuples)
      for (const auto& b : tuples) {
        if (encode(induced_substructure(m, a)) != encode(induced_substructure(m, b)))
          continue;
        bool extends = std::any_of(aut.begin(), aut.end(), [&](const Permutation& p) {
          for (std::size_t i = 0; i < s; ++i)
            if (p(a[i]) != b[i])
              return false;
          return true;
        });
        if (!extends)
          return false;
      }
  }
  return true;
}

} // namespace

TEST(AutomorphismGroup, Examples)
{
  EXPECT_EQ(automorphism_group(pg::edgeless(4)).order(), 24u);
  EXPECT_EQ(oracle::brute_automorphisms(pg::cycle(5)).size(), 10u);
  EXPECT_EQ(automorphism_group(pg::cycle(5)).order(), 10u);
  EXPECT_EQ(oracle::brute_automorphisms(pg::path(3)).size(), 2u);
  EXPECT_EQ(automorphism_group(pg::path(3)).order(), 2u);
}

TEST(AutomorphismGroup, MatchesBruteForceOnRandomStructures)
{
  std::mt19937_64 rng(17);
  Signature sig({{"E", 2}, {"U", 1}, {"T", 3}});
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 1 + rng() % 7;
    FinStructure m(n, sig);
    for (Point a = 0; a < n; ++a) {
      if (rng() % 3 == 0)
        m.add(1, {a});
      for (Point b = 0; b < n; ++b)
        if (a != b && rng() % 4 == 0)
          m.add(0, {a, b});
    }
    if (trial % 2)
      for (int k = 0; k < 3; ++k)
        m.add(2, {static_cast<Point>(rng() % n), static_cast<Point>(rng() % n),
                  static_cast<Point>(rng() % n)});
    expect_aut_matches_brute_force(m);
  }
  for (std::size_t n = 3; n <= 7; ++n)
    expect_aut_matches_brute_force(pg::cycle(n));
  expect_aut_matches_brute_force(pg::cliques(2, 3));
  EXPECT_EQ(automorphism_group(pg::rook(3)).order(), 72u);
}

TEST(InducedSubstructure, Examples)
{
  auto c5 = pg::cycle(5);
  EXPECT_TRUE(isomorphic(induced_substructure(c5, {0, 1, 2, 3, 4}), c5));
  EXPECT_EQ(induced_substructure(c5, {0, 1}).tuples(0).size(), 2u);
  EXPECT_TRUE(induced_substructure(c5, {0, 2}).tuples(0).empty());
}

TEST(Embeddings, Examples)
{
  EXPECT_EQ(embeddings(pg::edgeless(1), pg::cycle(5)).size(), 5u);
  EXPECT_EQ(embeddings(pg::complete(2), pg::cycle(5)).size(), 10u);
  EXPECT_TRUE(embeddings(pg::complete(3), pg::cycle(5)).empty());
  EXPECT_THROW((void)embeddings(pg::pure_set(1), pg::cycle(5)), Error);
}

TEST(Homogeneity, Examples)
{
  EXPECT_TRUE(is_homogeneous(pg::edgeless(5)).homogeneous);
  EXPECT_TRUE(brute_homogeneous(pg::cycle(5)));
  EXPECT_TRUE(is_homogeneous(pg::cycle(5)).homogeneous);

  auto p4 = pg::path(4);
  EXPECT_FALSE(brute_homogeneous(p4));
  auto r = is_homogeneous(p4);
  ASSERT_FALSE(r.homogeneous);
  // The witness pair induces the same substructure and is not in one orbit.
  EXPECT_EQ(encode(induced_substructure(p4, r.source)),
            encode(induced_substructure(p4, r.target)));
  auto aut = oracle::brute_automorphisms(p4);
  for (const auto& g : aut) {
    bool maps = true;
    for (std::size_t i = 0; i < r.source.size(); ++i)
      maps = maps && g(r.source[i]) == r.target[i];
    EXPECT_FALSE(maps);
  }
}

TEST(Homogeneity, AgreesWithBruteForce)
{
  std::vector<FinStructure> cases{pg::cycle(4), pg::cycle(5), pg::cycle(6), pg::path(3),
                                  pg::rook(2),  pg::cliques(2, 2), pg::complete(4),
                                  pg::cliques(3, 2)};
  for (const auto& m : cases)
    EXPECT_EQ(is_homogeneous(m).homogeneous, brute_homogeneous(m));
}

TEST(Homogeneity, AutomorphismsOfSubstructuresExtend)
{
  for (const auto& m : {pg::cycle(5), pg::rook(3), pg::edgeless(5)}) {
    auto g = automorphism_group(m);
    std::vector<std::vector<Point>> subsets{{0, 1}, {0, 2}, {0, 1, 2}, {0, 4}};
    for (const auto& a : subsets) {
      auto k = induced_substructure(m, a);
      auto rebased = g.with_base_prefix(a);
      for (const auto& f : oracle::brute_automorphisms(k)) {
        std::vector<Point> dst;
        for (std::size_t i = 0; i < a.size(); ++i)
          dst.push_back(a[f(static_cast<Point>(i))]);
        auto ext = rebased.transporter_prefix(dst);
        ASSERT_TRUE(ext.has_value());
        EXPECT_EQ(restriction(*ext, a), f);
      }
    }
  }
}

TEST(Closure, DclExamples)
{
  EXPECT_EQ(dcl(pg::edgeless(5), {0}), (std::vector<Point>{0}));
  EXPECT_EQ(dcl(pg::cycle(5), {0, 1}), (std::vector<Point>{0, 1, 2, 3, 4}));
  EXPECT_EQ(dcl(pg::rook(3), std::vector<Point>{0, 1, 2, 3, 4, 5, 6, 7, 8}).size(), 9u);
}

TEST(Closure, AclThresholdExamples)
{
  auto e5 = pg::edgeless(5);
  EXPECT_TRUE(acl_threshold(e5, {}, 4).empty());
  EXPECT_EQ(acl_threshold(e5, {}, 5).size(), 5u);
  EXPECT_THROW((void)acl_threshold(e5, {}, 0), Error);
}

TEST(Closure, DclIsClosureOperator)
{
  std::vector<FinStructure> cases{pg::cycle(5), pg::path(4), pg::rook(3), pg::cliques(2, 3)};
  for (const auto& m : cases) {
    auto g = automorphism_group(m);
    for (std::uint32_t mask = 0; mask < (1u << std::min<std::size_t>(m.size(), 6)); ++mask) {
      std::vector<Point> a;
      for (Point x = 0; x < m.size(); ++x)
        if (mask >> x & 1u)
          a.push_back(x);
      auto c = dcl(g, a);
      EXPECT_TRUE(std::includes(c.begin(), c.end(), a.begin(), a.end()));
      EXPECT_EQ(dcl(g, c), c);
      EXPECT_EQ(acl_threshold(g, a, 1), c);
      auto bigger = a;
      bigger.push_back(static_cast<Point>(m.size() - 1));
      std::sort(bigger.begin(), bigger.end());
      bigger.erase(std::unique(bigger.begin(), bigger.end()), bigger.end());
      auto cb = dcl(g, bigger);
      EXPECT_TRUE(std::includes(cb.begin(), cb.end(), c.begin(), c.end()));
    }
  }
}

TEST(CanonicalRelational, Examples)
{
  auto m = canonical_relational(PermGroup::symmetric(4), 2);
  EXPECT_EQ(automorphism_group(m).order(), 24u);
  // Sym(n) orbits on pairs: equal or distinct.
  EXPECT_EQ(m.signature().size(), 3u);

  auto c5 = PermGroup::cyclic(5);
  auto r = canonical_relational(c5, 5);
  auto aut = automorphism_group(r);
  EXPECT_EQ(aut.order(), 5u);
  EXPECT_TRUE(same_group(aut, c5));

  auto t = canonical_relational(PermGroup::trivial(3), 1);
  EXPECT_EQ(t.signature().size(), 3u);
  EXPECT_EQ(automorphism_group(t).order(), 1u);
}

TEST(CanonicalRelational, RecoversEverySubgroupOfSymN)
{
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& e : all_subgroups(PermGroup::symmetric(n)).subgroups) {
      auto aut = automorphism_group(canonical_relational(e.group, n));
      EXPECT_TRUE(same_group(aut, e.group));
    }
}

TEST(CanonicalForm, InvariantUnderRelabeling)
{
  std::mt19937_64 rng(8);
  for (const auto& m : {pg::cycle(6), pg::rook(3), pg::path(5), pg::cliques(2, 3)})
    for (int k = 0; k < 5; ++k) {
      auto sigma = oracle::random_permutation(m.size(), rng);
      auto n = relabel(m, sigma);
      EXPECT_EQ(canonical_form(m).first, canonical_form(n).first);
      EXPECT_TRUE(isomorphic(m, n));
    }
  EXPECT_FALSE(isomorphic(pg::cycle(6), pg::cliques(2, 3)));
}

TEST(CanonicalForm, DecidesIsomorphismLikeBruteForce)
{
  std::mt19937_64 rng(23);
  Signature sig({{"E", 2}, {"U", 1}});
  auto random_structure = [&](std::size_t n) {
    FinStructure m(n, sig);
    for (Point a = 0; a < n; ++a) {
      if (rng() % 4 == 0)
        m.add(1, {a});
      for (Point b = 0; b < n; ++b)
        if (a != b && rng() % 3 == 0)
          m.add(0, {a, b});
    }
    return m;
  };
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto a = random_structure(n);
    auto b = trial % 3 ? random_structure(n) : relabel(a, oracle::random_permutation(n, rng));
    bool brute = false;
    for (const auto& p : oracle::all_permutations(n))
      if (encode(relabel(a, p)) == encode(b)) {
        brute = true;
        break;
      }
    EXPECT_EQ(isomorphic(a, b), brute);
    auto [enc, order] = canonical_form(a);
    std::vector<Point> pos(n);
    for (std::size_t i = 0; i < n; ++i)
      pos[order[i]] = static_cast<Point>(i);
    EXPECT_EQ(encode(relabel(a, Permutation(pos))), enc);
  }
}
