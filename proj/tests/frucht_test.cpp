#include <gtest/gtest.h>

#include <chrono>

#include "exaut/frucht.hpp"
#include "oracles.hpp"

using namespace exaut;

namespace {

std::size_t find_element(const FiniteGroup& k, std::size_t order)
{
  for (std::size_t a = 0; a < k.order(); ++a)
    if (k.element_order(a) == order)
      return a;
  return 0;
}

std::size_t expected_vertices(const FiniteGroup& k, const std::vector<std::size_t>& gens)
{
  std::size_t n = k.order();
  for (std::size_t i = 0; i < gens.size(); ++i)
    n += k.mul(gens[i], gens[i]) == 0 ? k.order() / 2 * (4 * i + 4) : k.order() * (4 * i + 5);
  return n;
}

} // namespace

TEST(Cayley, SmallExamples)
{
  auto z2 = cayley_color_graph(groups::cyclic(2), {1});
  EXPECT_EQ(z2.arcs, (std::vector<Arc>{{0, 1, 0}, {1, 0, 0}}));

  auto z3 = groups::cyclic(3);
  auto c3 = cayley_color_graph(z3, {1});
  ASSERT_EQ(c3.arcs.size(), 3u);
  for (const auto& a : c3.arcs)
    EXPECT_EQ(a.target, z3.mul(a.source, 1));

  auto s3 = groups::symmetric3();
  auto c = cayley_color_graph(s3, {find_element(s3, 2), find_element(s3, 3)});
  EXPECT_EQ(c.arcs.size(), 12u);
  EXPECT_EQ(std::count_if(c.arcs.begin(), c.arcs.end(), [](const Arc& a) { return a.color == 0; }), 6);
}

TEST(Cayley, Errors)
{
  auto s3 = groups::symmetric3();
  try {
    cayley_color_graph(s3, {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IdentityGenerator);
  }
  try {
    cayley_color_graph(s3, {find_element(s3, 3)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotGenerating);
  }
}

TEST(Frucht, BaseCases)
{
  auto t = frucht_graph(groups::cyclic(1));
  EXPECT_EQ(t.graph.size(), 1u);
  EXPECT_TRUE(verify_frucht(groups::cyclic(1), t.graph, t.translations).holds);

  auto z2 = frucht_graph(groups::cyclic(2));
  EXPECT_EQ(z2.graph.size(), 2u);
  EXPECT_EQ(z2.graph.tuples(0).size(), 2u);
  EXPECT_TRUE(verify_frucht(groups::cyclic(2), z2.graph, z2.translations).holds);
}

TEST(Frucht, TriangleIsNotZ2)
{
  auto cert = verify_frucht(groups::cyclic(2), playground::complete(3));
  EXPECT_FALSE(cert.holds);
  EXPECT_EQ(cert.aut_order, 6u);
}

TEST(Frucht, CatalogIsRealized)
{
  for (const auto& name : groups::catalog_names()) {
    auto k = *groups::by_name(name);
    auto start = std::chrono::steady_clock::now();
    auto f = frucht_graph(k);
    auto cert = verify_frucht(k, f.graph, f.translations);
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_TRUE(cert.holds) << name << ": " << cert.aut_order << " " << cert.witness_problem;
    EXPECT_EQ(cert.isomorphism.size(), k.order());
    EXPECT_LT(secs, 60.0) << name;
    // Automorphism count against brute force where that is affordable.
    if (f.graph.size() <= 8) {
      EXPECT_EQ(oracle::brute_automorphisms(f.graph).size(), k.order()) << name;
    }
  }
}

TEST(Frucht, SizeIsDeterminedByTheGenerators)
{
  for (const auto& name : groups::catalog_names()) {
    auto k = *groups::by_name(name);
    if (k.order() <= 2)
      continue;
    auto f = frucht_graph(k);
    EXPECT_EQ(f.graph.size(), expected_vertices(k, f.generators)) << name;
    EXPECT_EQ(encode(frucht_graph(k).graph), encode(f.graph));
  }
}

TEST(Frucht, GeneratorsPreferSmallOrders)
{
  auto q8 = groups::quaternion();
  auto gens = frucht_generators(q8);
  ASSERT_EQ(gens.size(), 2u);
  for (auto g : gens)
    EXPECT_EQ(q8.element_order(g), 4u);
  auto v4 = frucht_generators(groups::klein_four());
  EXPECT_EQ(v4.size(), 2u);
  auto z6 = groups::cyclic(6);
  auto g6 = frucht_generators(z6);
  ASSERT_EQ(g6.size(), 2u);
  EXPECT_EQ(z6.element_order(g6[0]), 2u);
  EXPECT_EQ(z6.element_order(g6[1]), 3u);
}

TEST(Frucht, BrokenWitnessIsRejected)
{
  auto k = groups::symmetric3();
  auto f = frucht_graph(k);
  auto bad = f.translations;
  std::swap(bad[1], bad[2]);
  auto cert = verify_frucht(k, f.graph, bad);
  EXPECT_FALSE(cert.witness_ok);
  EXPECT_FALSE(cert.holds);
}

TEST(OutPipeline, TrivialGroup)
{
  auto r = out_pipeline(groups::cyclic(1));
  EXPECT_EQ(r.spec.signature.size(), 1u);
  EXPECT_TRUE(r.symmetry.group.is_trivial());
  EXPECT_EQ(r.report.status, Status::ExactPass);
}

TEST(OutPipeline, TwoElementGroup)
{
  auto r = out_pipeline(groups::cyclic(2));
  ASSERT_EQ(r.spec.signature.size(), 3u);
  EXPECT_EQ(r.spec.signature[2].name, "R0_1");
  EXPECT_EQ(r.symmetry.group.order(), 2u);
  EXPECT_EQ(r.report.status, Status::ExactPass);
}

TEST(OutPipeline, Sym3)
{
  auto r = out_pipeline(groups::symmetric3(), 1, 2, "S3");
  EXPECT_EQ(r.symmetry.group.order(), 6u);
  EXPECT_TRUE(r.to_symmetry);
  EXPECT_TRUE(r.symmetry_to_aut);
  EXPECT_EQ(r.report.status, Status::ExactPass) << r.report.to_json().dump();
}
