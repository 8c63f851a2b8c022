#include <gtest/gtest.h>

#include <random>

#include "exaut/finite_group.hpp"
#include "oracles.hpp"

using namespace exaut;

namespace {

Permutation P(std::size_t n, const char* s) { return Permutation::parse(n, s); }

FiniteGroup relabeled(const FiniteGroup& g, std::mt19937_64& rng)
{
  // Shuffle the non-identity indices.
  const std::size_t n = g.order();
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  for (std::size_t i = n; i > 2; --i)
    std::swap(sigma[i - 1], sigma[1 + rng() % (i - 1)]);
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      t[sigma[a]][sigma[b]] = sigma[g.mul(a, b)];
  return FiniteGroup(t);
}

} // namespace

TEST(FiniteGroup, RejectsNonGroups)
{
  EXPECT_THROW(FiniteGroup({{0, 1}, {1, 1}}), Error);
  EXPECT_THROW(FiniteGroup({{1, 0}, {0, 1}}), Error);
  // A Latin square with identity 0 that is not associative.
  std::vector<std::vector<std::size_t>> loop{
    {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(FiniteGroup{loop}, Error);
}

TEST(Quotient, Examples)
{
  auto s3 = PermGroup::symmetric(3);
  EXPECT_EQ(quotient_group(s3, s3).order(), 1u);
  EXPECT_EQ(quotient_group(s3, PermGroup({P(3, "(0 1 2)")})).order(), 2u);

  auto s4 = PermGroup::symmetric(4);
  PermGroup v4({P(4, "(0 1)(2 3)"), P(4, "(0 2)(1 3)")});
  auto q = quotient_group(s4, v4);
  EXPECT_EQ(q.order(), 6u);
  auto iso = group_isomorphism(q, groups::symmetric3());
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(is_isomorphism(q, groups::symmetric3(), *iso));

  EXPECT_THROW((void)quotient_group(s3, PermGroup({P(3, "(0 1)")})), Error);
  EXPECT_THROW((void)quotient_group(PermGroup({P(3, "(0 1 2)")}), PermGroup({P(3, "(0 1)")})),
               Error);
}

TEST(GroupIsomorphism, Examples)
{
  auto triv = groups::cyclic(1);
  auto id = group_isomorphism(triv, triv);
  ASSERT_TRUE(id.has_value());
  EXPECT_EQ(*id, std::vector<std::size_t>{0});

  EXPECT_FALSE(group_isomorphism(groups::cyclic(4), groups::klein_four()).has_value());

  auto s3 = FiniteGroup::from_perm_group(PermGroup::symmetric(3));
  auto d3 = groups::dihedral(3);
  auto m = group_isomorphism(s3, d3);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(is_isomorphism(s3, d3, *m));
}

TEST(GroupIsomorphism, EquivalenceRelation)
{
  std::mt19937_64 rng(3);
  for (const auto& name : groups::catalog_names()) {
    auto g = *groups::by_name(name);
    auto self = group_isomorphism(g, g);
    ASSERT_TRUE(self.has_value());
    EXPECT_TRUE(is_isomorphism(g, g, *self));

    auto h = relabeled(g, rng);
    auto f = group_isomorphism(g, h);
    ASSERT_TRUE(f.has_value()) << name;
    EXPECT_TRUE(is_isomorphism(g, h, *f));
    std::vector<std::size_t> inv(f->size());
    for (std::size_t a = 0; a < f->size(); ++a)
      inv[(*f)[a]] = a;
    EXPECT_TRUE(is_isomorphism(h, g, inv));
  }
}

TEST(GroupIsomorphism, CatalogPairwiseDistinct)
{
  auto names = groups::catalog_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j) {
      bool iso = group_isomorphism(*groups::by_name(names[i]), *groups::by_name(names[j]))
                   .has_value();
      EXPECT_EQ(iso, i == j) << names[i] << " " << names[j];
    }
}

TEST(FiniteGroup, FromPermGroupMatchesClosure)
{
  PermGroup d4({P(4, "(0 1 2 3)"), P(4, "(0 2)")});
  auto g = FiniteGroup::from_perm_group(d4);
  EXPECT_EQ(g.order(), oracle::closure(d4.generators()).size());
  EXPECT_TRUE(group_isomorphism(g, groups::dihedral(4)).has_value());
  EXPECT_FALSE(group_isomorphism(g, groups::quaternion()).has_value());
}
