#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "exaut/error.hpp"
#include "exaut/finite_group.hpp"
#include "exaut/fraisse.hpp"
#include "exaut/group.hpp"
#include "exaut/report.hpp"
#include "exaut/structure.hpp"

namespace exaut {

struct Arc {
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t color = 0;
  auto operator<=>(const Arc&) const = default;
};

struct CayleyColorGraph {
  FiniteGroup group;
  std::vector<std::size_t> generators;
  /// (g, g s_i, i), sorted.
  std::vector<Arc> arcs;
};

/// Throws IdentityGenerator or NotGenerating.
inline CayleyColorGraph cayley_color_graph(const FiniteGroup& k, const std::vector<std::size_t>& gens)
{
  for (std::size_t s : gens) {
    if (s >= k.order())
      throw Error(ErrorKind::PointOutOfRange, "generator index out of range");
    if (s == 0)
      throw Error(ErrorKind::IdentityGenerator, "the identity cannot be a generator");
  }
  if (k.closure(gens).size() != k.order())
    throw Error(ErrorKind::NotGenerating, "the generators do not generate the group");
  CayleyColorGraph out{k, gens, {}};
  for (std::size_t g = 0; g < k.order(); ++g)
    for (std::size_t i = 0; i < gens.size(); ++i)
      out.arcs.push_back({g, k.mul(g, gens[i]), i});
  std::sort(out.arcs.begin(), out.arcs.end());
  return out;
}

/// Nontrivial elements by increasing order, taken greedily until they
/// generate; then any generator the others already produce is dropped.
inline std::vector<std::size_t> frucht_generators(const FiniteGroup& k)
{
  std::vector<std::size_t> priority(k.order());
  std::iota(priority.begin(), priority.end(), std::size_t{0});
  std::stable_sort(priority.begin(), priority.end(), [&](std::size_t a, std::size_t b) {
    return k.element_order(a) < k.element_order(b);
  });
  auto gens = k.greedy_generators(priority);
  for (std::size_t i = 0; i < gens.size();) {
    auto rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (k.closure(rest).size() == k.order())
      gens = std::move(rest);
    else
      ++i;
  }
  return gens;
}

struct FruchtGraph {
  FiniteGroup group;
  std::vector<std::size_t> generators;
  /// Vertices 0..|K|-1 are the group elements.
  FinStructure graph;
  /// Left translation by each element, as a permutation of the vertices.
  std::vector<Permutation> translations;
};

namespace detail {

struct Gadget {
  std::size_t u = 0, v = 0, color = 0;
  bool involution = false;
  /// The vertex next to u and its pendant path, then the same for v.
  std::vector<Point> near_u, near_v;
};

} // namespace detail

/// Frucht graph of K. Each arc (u, v) of colour i becomes a path u-x-y-v
/// with a pendant path of 2i+1 vertices on x and 2i+2 on y. An involution
/// generator gets one gadget per unordered pair, with 2i+1 pendant vertices
/// on both sides. Orders 1 and 2 give K1 and K2. Vertex count:
/// |K| + sum over directed colours of |K|(4i+5) + sum over involution colours
/// of |K|/2 (4i+4).
inline FruchtGraph frucht_graph(const FiniteGroup& k)
{
  const std::size_t n = k.order();
  FruchtGraph out{k, {}, FinStructure(0, graph_signature()), {}};
  if (n <= 2) {
    if (n == 2)
      out.generators = {1};
    out.graph = graph_structure(n, n == 2 ? std::vector<std::pair<Point, Point>>{{0, 1}}
                                          : std::vector<std::pair<Point, Point>>{});
    for (std::size_t g = 0; g < n; ++g) {
      std::vector<Point> img(n);
      for (std::size_t h = 0; h < n; ++h)
        img[h] = static_cast<Point>(k.mul(g, h));
      out.translations.emplace_back(std::move(img));
    }
    return out;
  }

  out.generators = frucht_generators(k);
  const auto cayley = cayley_color_graph(k, out.generators);
  std::vector<std::pair<Point, Point>> edges;
  Point next = static_cast<Point>(n);
  auto chain = [&](Point anchor, std::size_t len) {
    std::vector<Point> vs{anchor};
    for (std::size_t t = 0; t < len; ++t) {
      edges.emplace_back(vs.back(), next);
      vs.push_back(next++);
    }
    return vs;
  };

  std::vector<detail::Gadget> gadgets;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> lookup;
  for (const auto& a : cayley.arcs) {
    const std::size_t s = out.generators[a.color];
    const bool inv = k.mul(s, s) == 0;
    if (inv && a.source > a.target)
      continue;
    detail::Gadget gd{a.source, a.target, a.color, inv, {}, {}};
    Point x = next++, y = next++;
    edges.emplace_back(static_cast<Point>(a.source), x);
    edges.emplace_back(x, y);
    edges.emplace_back(y, static_cast<Point>(a.target));
    gd.near_u = chain(x, 2 * a.color + 1);
    gd.near_v = chain(y, inv ? 2 * a.color + 1 : 2 * a.color + 2);
    lookup[{a.source, a.target, a.color}] = gadgets.size();
    gadgets.push_back(std::move(gd));
  }
  out.graph = graph_structure(next, edges);

  for (std::size_t g = 0; g < n; ++g) {
    std::vector<Point> img(next);
    for (std::size_t h = 0; h < n; ++h)
      img[h] = static_cast<Point>(k.mul(g, h));
    for (const auto& gd : gadgets) {
      std::size_t u = k.mul(g, gd.u), v = k.mul(g, gd.v);
      bool flipped = gd.involution && u > v;
      const auto& target = gadgets[lookup.at({flipped ? v : u, flipped ? u : v, gd.color})];
      const auto& to_u = flipped ? target.near_v : target.near_u;
      const auto& to_v = flipped ? target.near_u : target.near_v;
      for (std::size_t t = 0; t < gd.near_u.size(); ++t)
        img[gd.near_u[t]] = to_u[t];
      for (std::size_t t = 0; t < gd.near_v.size(); ++t)
        img[gd.near_v[t]] = to_v[t];
    }
    out.translations.emplace_back(std::move(img));
  }
  return out;
}

struct FruchtCertificate {
  bool holds = false;
  std::uint64_t aut_order = 0;
  /// Image in Aut(graph) of each element of K, when isomorphic.
  std::vector<Permutation> isomorphism;
  /// Whether the supplied translations form an injective homomorphism into
  /// Aut(graph). True when none were supplied.
  bool witness_ok = true;
  std::string witness_problem;
};

inline FruchtCertificate verify_frucht(const FiniteGroup& k, const FinStructure& graph,
                                       const std::vector<Permutation>& translations = {})
{
  FruchtCertificate cert;
  PermGroup aut = automorphism_group(graph);
  cert.aut_order = aut.order();
  if (!translations.empty()) {
    if (translations.size() != k.order()) {
      cert.witness_ok = false;
      cert.witness_problem = "one translation is needed per group element";
    }
    for (std::size_t a = 0; a < translations.size() && cert.witness_ok; ++a) {
      if (translations[a].degree() != graph.size() || !is_automorphism(graph, translations[a])) {
        cert.witness_ok = false;
        cert.witness_problem = "translation " + std::to_string(a) + " is not an automorphism";
      }
      for (std::size_t b = 0; b < translations.size() && cert.witness_ok; ++b) {
        if (translations[k.mul(a, b)] != translations[a] * translations[b]) {
          cert.witness_ok = false;
          cert.witness_problem = "translations do not multiply like the group";
        }
        if (a != b && translations[a] == translations[b]) {
          cert.witness_ok = false;
          cert.witness_problem = "translations are not injective";
        }
      }
    }
  }
  if (cert.aut_order == k.order()) {
    auto elems = aut.elements();
    auto map = group_isomorphism(k, FiniteGroup::from_perm_group(aut));
    if (map)
      for (std::size_t a = 0; a < k.order(); ++a)
        cert.isomorphism.push_back(elems[(*map)[a]]);
  }
  cert.holds = !cert.isomorphism.empty() && cert.witness_ok;
  return cert;
}

struct PipelineResult {
  FruchtGraph frucht;
  FruchtCertificate certificate;
  ClassSpec spec;
  AmalgamationReport amalgamation;
  SignatureSymmetry symmetry;
  /// K -> symmetry group and symmetry group -> Aut(graph), as element maps
  /// into the sorted element lists.
  std::optional<std::vector<std::size_t>> to_symmetry;
  std::optional<std::vector<std::size_t>> symmetry_to_aut;
  CheckReport report;
};

/// Group -> Frucht graph -> its class -> amalgamation check -> signature
/// symmetry group, compared with the group at both ends.
inline PipelineResult out_pipeline(const FiniteGroup& k, std::size_t amalgamation_bound = 1,
                                   std::size_t symmetry_bound = 2, std::string name = "")
{
  PipelineResult r{frucht_graph(k), {}, {}, {}, {}, {}, {}, {}};
  r.certificate = verify_frucht(k, r.frucht.graph, r.frucht.translations);
  r.spec = classes::gamma_class(r.frucht.graph);
  r.amalgamation = check_amalgamation(r.spec, amalgamation_bound);
  r.symmetry = signature_symmetry_group(r.spec, symmetry_bound);

  FiniteGroup sym = FiniteGroup::from_perm_group(r.symmetry.group);
  r.to_symmetry = group_isomorphism(k, sym);
  PermGroup aut = automorphism_group(r.frucht.graph);
  r.symmetry_to_aut = group_isomorphism(sym, FiniteGroup::from_perm_group(aut));

  std::size_t edges = r.frucht.graph.tuples(0).size() / 2;
  json gens = json::array();
  for (std::size_t g : r.frucht.generators)
    gens.push_back(k.name(g));
  r.report = CheckReport{"out-pipeline", name, {{"amalgamation_bound", amalgamation_bound},
                                                {"symmetry_bound", symmetry_bound}}};
  r.report.summary = {{"group_order", k.order()},
                      {"generators", gens},
                      {"vertices", r.frucht.graph.size()},
                      {"edges", edges},
                      {"aut_order", r.certificate.aut_order},
                      {"frucht_verified", r.certificate.holds},
                      {"symbols", r.spec.signature.size()},
                      {"amalgamation_problems", r.amalgamation.problems},
                      {"amalgamation_failures", r.amalgamation.failure_count},
                      {"members_checked", r.symmetry.members_checked},
                      {"symmetry_order", r.symmetry.group.order()},
                      {"isomorphic_to_group", r.to_symmetry.has_value()},
                      {"isomorphic_to_aut", r.symmetry_to_aut.has_value()}};
  for (const auto& w : r.symmetry.witnesses)
    r.report.witnesses.push_back({{"sort_permutation", w.sort_permutation.to_string()}});
  r.report.status = exact(r.certificate.holds && r.amalgamation.ok() && r.to_symmetry &&
                          r.symmetry_to_aut);
  return r;
}

} // namespace exaut
