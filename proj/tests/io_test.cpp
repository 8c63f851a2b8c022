#include <gtest/gtest.h>

#include "exaut/io.hpp"

using namespace exaut;

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

TEST(GroupFile, RoundTrip)
{
  auto g = io::parse_group("degree 5\n(1 4)(2 3)  # a reflection\n\n(0 1 2 3 4)\n");
  EXPECT_EQ(g.degree(), 5u);
  EXPECT_EQ(g.order(), 10u);
  auto again = io::parse_group(io::format_group(g));
  EXPECT_TRUE(same_group(g, again));
}

TEST(GroupFile, NoGeneratorsIsTrivial)
{
  auto g = io::parse_group("degree 3\n");
  EXPECT_EQ(g.degree(), 3u);
  EXPECT_TRUE(g.is_trivial());
}

TEST(GroupFile, Errors)
{
  EXPECT_EQ(kind_of([] { io::parse_group("(0 1)\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { io::parse_group("degree 2\n(0 2)\n"); }), ErrorKind::PointOutOfRange);
  EXPECT_EQ(kind_of([] { io::parse_group("degree x\n"); }), ErrorKind::Parse);
}

TEST(TableFile, RoundTrip)
{
  for (const auto& name : groups::catalog_names()) {
    auto g = *groups::by_name(name);
    auto again = io::parse_table(io::format_table(g));
    EXPECT_EQ(again.table(), g.table()) << name;
  }
}

TEST(TableFile, RejectsNonGroups)
{
  EXPECT_EQ(kind_of([] { io::parse_table("order 2\n0 1\n0 1\n"); }), ErrorKind::InvalidTable);
  EXPECT_EQ(kind_of([] { io::parse_table("order 2\n0 1\n"); }), ErrorKind::InvalidTable);
}

TEST(StructureFile, RoundTrip)
{
  auto m = io::parse_structure("domain 4\nrel P 1\n0\n2\nrel R 3\n0 1 2\n3 3 3\n");
  EXPECT_EQ(m.size(), 4u);
  ASSERT_EQ(m.signature().size(), 2u);
  EXPECT_EQ(m.tuples(0).size(), 2u);
  EXPECT_TRUE(m.holds(1, {3, 3, 3}));
  EXPECT_EQ(io::parse_structure(io::format_structure(m)), m);
}

TEST(StructureFile, GraphShorthand)
{
  auto g = io::parse_structure("graph 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
  EXPECT_EQ(encode(g), encode(playground::cycle(5)));
  EXPECT_EQ(io::parse_structure(io::format_graph(g)), g);
}

TEST(StructureFile, Errors)
{
  EXPECT_EQ(kind_of([] { io::parse_structure("domain 2\n0 1\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { io::parse_structure("domain 2\nrel E 2\n0\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { io::parse_structure("graph 2\n0 0\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { io::parse_structure("graph 2\n0 5\n"); }), ErrorKind::PointOutOfRange);
}

TEST(SpecFile, TriangleFreeMatchesBuiltIn)
{
  auto spec = io::parse_spec(R"(name triangle_free
sig
E 2
end
symmetric_irreflexive E
forbid
graph 3
0 1
1 2
0 2
end
)");
  EXPECT_EQ(spec.name, "triangle_free");
  ASSERT_EQ(spec.forbidden.size(), 1u);
  auto builtin = classes::kn_free(3);
  for (const auto& layer : members_up_to(classes::graphs(), 4))
    for (const auto& g : layer)
      EXPECT_EQ(bool(is_member(g, spec)), bool(is_member(g, builtin)));
}

TEST(SpecFile, RoundTripWithSorts)
{
  auto spec = classes::gamma_class(playground::path(3));
  auto again = io::parse_spec(io::format_spec(spec));
  EXPECT_EQ(again.signature, spec.signature);
  EXPECT_EQ(again.partition, spec.partition);
  ASSERT_EQ(again.symmetric_irreflexive.size(), spec.symmetric_irreflexive.size());
  for (std::size_t i = 0; i < spec.symmetric_irreflexive.size(); ++i) {
    EXPECT_EQ(again.symmetric_irreflexive[i].symbol, spec.symmetric_irreflexive[i].symbol);
    EXPECT_EQ(again.symmetric_irreflexive[i].sorts, spec.symmetric_irreflexive[i].sorts);
  }
  auto colored = classes::colored_graph(2);
  auto c2 = io::parse_spec(io::format_spec(colored));
  EXPECT_EQ(c2.forbidden, colored.forbidden);
}

TEST(SpecFile, Errors)
{
  EXPECT_EQ(kind_of([] { io::parse_spec("partition P\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { io::parse_spec("sig\nP 1\nend\npartition Q\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { io::parse_spec("sig\nE 2\nend\npartition E\n"); }),
            ErrorKind::SignatureMismatch);
  EXPECT_EQ(kind_of([] { io::parse_spec("sig\nE 2\nend\nforbid\ndomain 1\nrel F 1\n0\nend\n"); }),
            ErrorKind::SignatureMismatch);
  EXPECT_EQ(kind_of([] { io::parse_spec("sig\nE 2\n"); }), ErrorKind::Parse);
}

TEST(References, PlaygroundsClassesClosures)
{
  EXPECT_EQ(io::playground_ref("pureset:4").size(), 4u);
  EXPECT_EQ(encode(io::playground_ref("rook:3")), encode(playground::rook(3)));
  EXPECT_EQ(encode(io::playground_ref("cliques:2x3")), encode(playground::cliques(2, 3)));
  EXPECT_EQ(kind_of([] { io::playground_ref("moebius:3"); }), ErrorKind::Usage);

  EXPECT_EQ(io::class_ref("kn_free:4").forbidden.size(), 1u);
  EXPECT_EQ(io::class_ref("gamma:path:3").signature.size(), 5u);

  EXPECT_EQ(io::closure_ref("dcl").kind, Closure::Kind::Dcl);
  EXPECT_EQ(io::closure_ref("threshold:2").threshold, 2u);
  EXPECT_EQ(io::closure_ref("class:graphs").describe(), "class:graphs");
  EXPECT_EQ(kind_of([] { io::closure_ref("acl"); }), ErrorKind::Usage);
}

TEST(IsoFile, Parse)
{
  auto iso = io::parse_iso("degree 3\n(0 1) -> (1 2)\n(0 1 2) -> (0 2 1)\n");
  EXPECT_EQ(iso.degree, 3u);
  ASSERT_EQ(iso.sources.size(), 2u);
  EXPECT_EQ(iso.images[1], Permutation::parse(3, "(0 2 1)"));
  auto again = io::parse_iso(io::format_iso(iso.sources, iso.images));
  EXPECT_EQ(again.images, iso.images);
  EXPECT_EQ(kind_of([] { io::parse_iso("degree 3\n(0 1)\n"); }), ErrorKind::Parse);
}
