#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "exaut/error.hpp"
#include "exaut/finite_group.hpp"
#include "exaut/fraisse.hpp"
#include "exaut/group.hpp"
#include "exaut/homomorphism.hpp"
#include "exaut/report.hpp"
#include "exaut/structure.hpp"
#include "exaut/subgroups.hpp"

namespace exaut {

inline std::string set_string(const std::vector<Point>& k)
{
  std::string out = "{";
  for (std::size_t i = 0; i < k.size(); ++i)
    out += (i ? "," : "") + std::to_string(k[i]);
  return out + "}";
}

inline json group_json(const PermGroup& g)
{
  json gens = json::array();
  for (const auto& x : g.generators())
    if (!x.is_identity())
      gens.push_back(x.to_string());
  return {{"degree", g.degree()}, {"order", g.order()}, {"generators", gens}};
}

/// The closure operator used to form the family of closed sets: definable
/// closure, orbit-size threshold, or duplication inside a class.
struct Closure {
  enum class Kind { Dcl, Threshold, ClassAcl };
  Kind kind = Kind::Dcl;
  std::size_t threshold = 1;
  std::shared_ptr<const ClassSpec> spec;
  std::size_t copies = 2;

  static Closure dcl() { return {}; }

  static Closure threshold_of(std::size_t t)
  {
    if (t == 0)
      throw Error(ErrorKind::Usage, "closure threshold must be positive");
    Closure c;
    c.kind = Kind::Threshold;
    c.threshold = t;
    return c;
  }

  static Closure class_level(ClassSpec s, std::size_t copies = 2)
  {
    Closure c;
    c.kind = Kind::ClassAcl;
    c.spec = std::make_shared<const ClassSpec>(std::move(s));
    c.copies = copies;
    return c;
  }

  std::string describe() const
  {
    switch (kind) {
      case Kind::Dcl: return "dcl";
      case Kind::Threshold: return "threshold:" + std::to_string(threshold);
      case Kind::ClassAcl: return "class:" + spec->name;
    }
    return "dcl";
  }

  std::vector<Point> operator()(const FinStructure& m, const PermGroup& aut,
                                const std::vector<Point>& a) const
  {
    switch (kind) {
      case Kind::Dcl: return dcl_of(aut, a);
      case Kind::Threshold: return acl_threshold(aut, a, threshold);
      case Kind::ClassAcl: return class_acl(*spec, m, a, copies);
    }
    return a;
  }

private:
  static std::vector<Point> dcl_of(const PermGroup& aut, const std::vector<Point>& a)
  {
    return exaut::dcl(aut, a);
  }
};

/// Sets ordered by size, then lexicographically.
inline bool set_less(const std::vector<Point>& a, const std::vector<Point>& b)
{
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

struct ClosedFamily {
  FinStructure base;
  Closure closure;
  std::size_t size_bound = 0;
  /// Sorted sets, ordered by set_less.
  std::vector<std::vector<Point>> sets;

  std::optional<std::size_t> index_of(const std::vector<Point>& k) const
  {
    auto it = std::lower_bound(sets.begin(), sets.end(), k, set_less);
    if (it == sets.end() || *it != k)
      return std::nullopt;
    return static_cast<std::size_t>(it - sets.begin());
  }
};

/// Closures of every subset of at most `size_bound` points, deduplicated.
inline ClosedFamily enumerate_A(const FinStructure& m, const Closure& closure,
                                std::size_t size_bound,
                                const std::optional<PermGroup>& aut = std::nullopt)
{
  const PermGroup g = aut ? *aut : automorphism_group(m);
  std::set<std::vector<Point>, decltype(&set_less)> found(&set_less);
  detail::for_each_subset(m.size(), size_bound, [&](const std::vector<Point>& a) {
    found.insert(closure(m, g, a));
    return true;
  });
  return {m, closure, size_bound, {found.begin(), found.end()}};
}

/// {f in G : f restricted to K (in the given order) lies in L}, where L acts
/// on the positions 0..|K|-1. Throws NotASubgroupOfAutK when L has the wrong
/// degree.
inline PermGroup g_KL(const PermGroup& g, const std::vector<Point>& k, const PermGroup& l)
{
  if (l.degree() != k.size())
    throw Error(ErrorKind::NotASubgroupOfAutK,
                "L acts on " + std::to_string(l.degree()) + " points but |K| = " +
                  std::to_string(k.size()));
  check_points(g, k);
  const auto lelems = l.elements();
  std::vector<bool> in_k(g.degree(), false);
  for (Point x : k)
    in_k[x] = true;
  std::vector<Point> partial(k.size());
  return coset_search(
    g, k,
    [&](std::size_t level, Point image) {
      if (!in_k[image])
        return false;
      partial[level] = image;
      for (const auto& e : lelems) {
        bool ok = true;
        for (std::size_t i = 0; i <= level && ok; ++i)
          ok = k[e(static_cast<Point>(i))] == partial[i];
        if (ok)
          return true;
      }
      return false;
    },
    [&](const Permutation& x) { return l.contains(restriction(x, k)); });
}

/// As above, also checking that L is made of automorphisms of the
/// substructure induced on K.
inline PermGroup g_KL(const FinStructure& m, const PermGroup& g, const std::vector<Point>& k,
                      const PermGroup& l)
{
  if (l.degree() == k.size()) {
    FinStructure sub = induced_substructure(m, k);
    for (const auto& x : l.generators())
      if (!is_automorphism(sub, x))
        throw Error(ErrorKind::NotASubgroupOfAutK,
                    x.to_string() + " is not an automorphism of the structure on " +
                      set_string(k));
  }
  return g_KL(g, k, l);
}

struct EAPair {
  std::size_t set = 0;
  /// A subgroup of Aut(K), acting on positions of K.
  PermGroup l;
};

/// A finite model of the expanded group of automorphisms: Aut(M), the pairs
/// (K, L), the relations on them, the image map j, and Op tables for the
/// generators of Aut(M).
struct ExAutModel {
  std::string name;
  FinStructure structure;
  PermGroup group;
  ClosedFamily family;
  /// Per closed set: Aut of the induced structure, and its label in labels.
  std::vector<PermGroup> aut_k;
  std::vector<std::size_t> label;
  /// One representative Cayley table per isomorphism type of Aut(K).
  std::vector<FiniteGroup> labels;
  std::vector<EAPair> pairs;
  std::vector<std::vector<std::size_t>> set_pairs;
  /// Per closed set, the pair (K, {id}).
  std::vector<std::size_t> trivial_pair;
  /// Per pair, G_(K,L).
  std::vector<PermGroup> j;
  std::vector<std::pair<std::size_t, std::size_t>> le_ea;
  std::vector<std::pair<std::size_t, std::size_t>> le_a;
  std::size_t closure_of_empty = 0;
  std::vector<std::size_t> p_min;
  std::vector<Permutation> op_generators;
  std::vector<std::vector<std::size_t>> op_set;
  std::vector<std::vector<std::size_t>> op_pair;

  const std::vector<Point>& K(std::size_t pair) const { return family.sets[pairs[pair].set]; }
};

/// Index of f(K) in the family.
inline std::size_t op_set(const ExAutModel& model, const Permutation& f, std::size_t set)
{
  std::vector<Point> image;
  for (Point x : model.family.sets[set])
    image.push_back(f(x));
  std::sort(image.begin(), image.end());
  auto idx = model.family.index_of(image);
  if (!idx)
    throw Error(ErrorKind::Usage, "family is not closed under " + f.to_string());
  return *idx;
}

/// Index of (f(K), f L f^-1) in the pair list.
inline std::size_t op_pair(const ExAutModel& model, const Permutation& f, std::size_t pair)
{
  const auto& k1 = model.K(pair);
  const std::size_t s2 = op_set(model, f, model.pairs[pair].set);
  const auto& k2 = model.family.sets[s2];
  std::vector<Point> sigma(k1.size());
  for (std::size_t i = 0; i < k1.size(); ++i)
    sigma[i] = static_cast<Point>(std::lower_bound(k2.begin(), k2.end(), f(k1[i])) - k2.begin());
  const Permutation s(sigma);
  std::vector<Permutation> gens;
  for (const auto& pi : model.pairs[pair].l.generators())
    gens.push_back(conjugate(s, pi));
  PermGroup l2 = generate_or_trivial(std::move(gens), k2.size());
  for (std::size_t q : model.set_pairs[s2])
    if (same_group(model.pairs[q].l, l2))
      return q;
  throw Error(ErrorKind::Usage, "translated pair is missing from the model");
}

namespace detail {

/// Whether L2 restricted to K1 lies in L1, for K1 a subset of K2.
inline bool restricts_into(const std::vector<Point>& k1, const PermGroup& l1,
                           const std::vector<Point>& k2, const PermGroup& l2)
{
  if (!std::includes(k2.begin(), k2.end(), k1.begin(), k1.end()))
    return false;
  std::vector<Point> q(k1.size());
  std::vector<std::int64_t> back(k2.size(), -1);
  for (std::size_t i = 0; i < k1.size(); ++i) {
    q[i] = static_cast<Point>(std::lower_bound(k2.begin(), k2.end(), k1[i]) - k2.begin());
    back[q[i]] = static_cast<std::int64_t>(i);
  }
  for (const auto& x : l2.generators()) {
    std::vector<Point> img(k1.size());
    for (std::size_t i = 0; i < k1.size(); ++i) {
      auto b = back[x(q[i])];
      if (b < 0)
        return false;
      img[i] = static_cast<Point>(b);
    }
    if (!l1.contains(Permutation(img)))
      return false;
  }
  return true;
}

} // namespace detail

inline ExAutModel build_exaut(const FinStructure& m, const Closure& closure, std::size_t size_bound,
                              std::string name = "", std::uint64_t subgroup_bound = 1000)
{
  ExAutModel model;
  model.name = std::move(name);
  model.structure = m;
  model.group = automorphism_group(m);
  const PermGroup& g = model.group;
  model.family = enumerate_A(m, closure, size_bound, g);
  const auto& sets = model.family.sets;

  model.set_pairs.resize(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s) {
    PermGroup aut = automorphism_group(induced_substructure(m, sets[s]));
    FiniteGroup table = FiniteGroup::from_perm_group(aut);
    std::size_t lab = model.labels.size();
    for (std::size_t i = 0; i < model.labels.size(); ++i)
      if (group_isomorphism(model.labels[i], table)) {
        lab = i;
        break;
      }
    if (lab == model.labels.size())
      model.labels.push_back(std::move(table));
    model.label.push_back(lab);
    for (auto& e : all_subgroups(aut, subgroup_bound).subgroups) {
      model.set_pairs[s].push_back(model.pairs.size());
      model.pairs.push_back({s, std::move(e.group)});
    }
    model.trivial_pair.push_back(model.set_pairs[s].front());
    model.aut_k.push_back(std::move(aut));
  }
  for (const auto& p : model.pairs)
    model.j.push_back(g_KL(g, sets[p.set], p.l));

  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = 0; b < sets.size(); ++b)
      if (std::includes(sets[b].begin(), sets[b].end(), sets[a].begin(), sets[a].end()))
        model.le_a.emplace_back(a, b);
  for (std::size_t p = 0; p < model.pairs.size(); ++p)
    for (std::size_t q = 0; q < model.pairs.size(); ++q)
      if (detail::restricts_into(model.K(p), model.pairs[p].l, model.K(q), model.pairs[q].l))
        model.le_ea.emplace_back(p, q);

  model.closure_of_empty = *model.family.index_of(closure(m, g, {}));
  const auto& c0 = sets[model.closure_of_empty];
  for (std::size_t a = 0; a < sets.size(); ++a) {
    if (sets[a] == c0)
      continue;
    bool minimal = true;
    for (std::size_t b = 0; b < sets.size() && minimal; ++b)
      if (b != a && sets[b] != c0 && sets[b].size() < sets[a].size() &&
          std::includes(sets[a].begin(), sets[a].end(), sets[b].begin(), sets[b].end()))
        minimal = false;
    if (minimal)
      model.p_min.push_back(a);
  }

  for (const auto& f : g.generators()) {
    if (f.is_identity())
      continue;
    model.op_generators.push_back(f);
    std::vector<std::size_t> row_s, row_p;
    for (std::size_t s = 0; s < sets.size(); ++s)
      row_s.push_back(op_set(model, f, s));
    for (std::size_t p = 0; p < model.pairs.size(); ++p)
      row_p.push_back(op_pair(model, f, p));
    model.op_set.push_back(std::move(row_s));
    model.op_pair.push_back(std::move(row_p));
  }
  return model;
}

// ---------------------------------------------------------------------------
// Verifiers.

/// The distinct subgroups in the range of j, with the pairs mapping to each.
struct JRange {
  std::vector<PermGroup> classes;
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::size_t> class_of;

  explicit JRange(const ExAutModel& model)
  {
    for (std::size_t p = 0; p < model.j.size(); ++p) {
      auto c = find(model.j[p]);
      if (!c) {
        c = classes.size();
        classes.push_back(model.j[p]);
        members.emplace_back();
      }
      members[*c].push_back(p);
      class_of.push_back(*c);
    }
  }

  std::optional<std::size_t> find(const PermGroup& h) const
  {
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (classes[c].order() == h.order() && is_subgroup(h, classes[c]))
        return c;
    return std::nullopt;
  }
};

namespace detail {

inline bool normal_in(const PermGroup& h, const PermGroup& g)
{
  return is_subgroup(h, g) && is_normal(h, g);
}

inline json pair_json(const ExAutModel& model, std::size_t p)
{
  return {{"K", set_string(model.K(p))}, {"L", group_json(model.pairs[p].l)}};
}

} // namespace detail

struct StarResult {
  bool holds = true;
  std::uint64_t setwise_order = 0;
  std::uint64_t pointwise_order = 0;
  std::uint64_t quotient_order = 0;
  std::uint64_t aut_k_order = 0;
  /// An automorphism of the structure on K (on positions) that does not
  /// extend, when the isomorphism fails.
  std::optional<Permutation> non_extendable;
};

/// Whether restriction gives G_{K}/G_(K) = Aut(K).
inline StarResult verify_star(const FinStructure& m, const std::vector<Point>& k,
                              const std::optional<PermGroup>& aut = std::nullopt)
{
  const PermGroup g = aut ? *aut : automorphism_group(m);
  StarResult r;
  PermGroup setwise = setwise_stabilizer(g, k);
  PermGroup pointwise = pointwise_stabilizer(g, k);
  PermGroup aut_k = automorphism_group(induced_substructure(m, k));
  FiniteGroup q = quotient_group(setwise, pointwise);
  r.setwise_order = setwise.order();
  r.pointwise_order = pointwise.order();
  r.quotient_order = q.order();
  r.aut_k_order = aut_k.order();
  r.holds = group_isomorphism(q, FiniteGroup::from_perm_group(aut_k)).has_value();
  if (!r.holds) {
    PermGroup rebased = g.with_base_prefix(k);
    for (const auto& a : aut_k.elements()) {
      std::vector<Point> dst(k.size());
      for (std::size_t i = 0; i < k.size(); ++i)
        dst[i] = k[a(static_cast<Point>(i))];
      if (!rebased.transporter_prefix(dst)) {
        r.non_extendable = a;
        break;
      }
    }
  }
  return r;
}

inline CheckReport star_report(const ExAutModel& model)
{
  CheckReport rep{"star", model.name, {{"closure", model.family.closure.describe()},
                                       {"size_bound", model.family.size_bound}}};
  std::size_t fails = 0;
  for (const auto& k : model.family.sets) {
    auto r = verify_star(model.structure, k, model.group);
    if (r.holds)
      continue;
    ++fails;
    rep.witnesses.push_back({{"K", set_string(k)},
                             {"quotient_order", r.quotient_order},
                             {"aut_k_order", r.aut_k_order},
                             {"non_extendable", r.non_extendable ? r.non_extendable->to_string() : ""}});
  }
  rep.summary = {{"sets", model.family.sets.size()}, {"failures", fails}};
  rep.status = exact(fails == 0);
  return rep;
}

/// j is one-to-one on the pairs of the model.
inline CheckReport verify_injectivity(const ExAutModel& model)
{
  CheckReport rep{"injectivity", model.name, {{"closure", model.family.closure.describe()},
                                              {"size_bound", model.family.size_bound}}};
  JRange range(model);
  std::size_t collisions = 0;
  for (const auto& members : range.members)
    if (members.size() > 1) {
      ++collisions;
      json pairs = json::array();
      for (std::size_t p : members)
        pairs.push_back(detail::pair_json(model, p));
      rep.witnesses.push_back({{"subgroup", group_json(model.j[members.front()])},
                               {"pairs", pairs}});
    }
  rep.summary = {{"pairs", model.pairs.size()},
                 {"distinct_images", range.classes.size()},
                 {"collisions", collisions}};
  rep.status = exact(collisions == 0);
  return rep;
}

/// Both directions of the normality correspondence. The first report is the
/// direction from (K, L1 normal in L2) to normal subgroups, which must hold
/// exactly; the second is the converse, which is only reported.
inline std::vector<CheckReport> verify_prop_normality(const ExAutModel& model)
{
  json params = {{"closure", model.family.closure.describe()},
                 {"size_bound", model.family.size_bound}};
  CheckReport forward{"normality-from-pairs", model.name, params};
  CheckReport backward{"normality-to-pairs", model.name, params};

  std::size_t checked = 0, fails = 0;
  for (std::size_t s = 0; s < model.family.sets.size(); ++s)
    for (std::size_t p1 : model.set_pairs[s])
      for (std::size_t p2 : model.set_pairs[s]) {
        const auto& l1 = model.pairs[p1].l;
        const auto& l2 = model.pairs[p2].l;
        if (!detail::normal_in(l1, l2))
          continue;
        ++checked;
        const auto& h1 = model.j[p1];
        const auto& h2 = model.j[p2];
        if (detail::normal_in(h1, h2))
          continue;
        ++fails;
        forward.witnesses.push_back(
          {{"pair1", detail::pair_json(model, p1)}, {"pair2", detail::pair_json(model, p2)}});
      }
  forward.summary = {{"checked", checked}, {"failures", fails}};
  forward.status = exact(fails == 0);

  JRange range(model);
  std::size_t normal_pairs = 0, misses = 0;
  for (std::size_t c1 = 0; c1 < range.classes.size(); ++c1)
    for (std::size_t c2 = 0; c2 < range.classes.size(); ++c2) {
      if (!detail::normal_in(range.classes[c1], range.classes[c2]))
        continue;
      ++normal_pairs;
      bool found = false;
      for (std::size_t p1 : range.members[c1]) {
        for (std::size_t p2 : range.members[c2])
          if (model.pairs[p1].set == model.pairs[p2].set &&
              detail::normal_in(model.pairs[p1].l, model.pairs[p2].l)) {
            found = true;
            break;
          }
        if (found)
          break;
      }
      if (found)
        continue;
      ++misses;
      backward.witnesses.push_back({{"H1", group_json(range.classes[c1])},
                                    {"H1_from", detail::pair_json(model, range.members[c1][0])},
                                    {"H2", group_json(range.classes[c2])},
                                    {"H2_from", detail::pair_json(model, range.members[c2][0])},
                                    {"index", range.classes[c2].order() / range.classes[c1].order()}});
    }
  backward.summary = {{"normal_pairs", normal_pairs}, {"failures", misses}};
  backward.status = empirical(misses == 0);
  return {forward, backward};
}

/// The members of the range of j with no proper normal subgroup in the
/// range, compared with the pointwise stabilizers G_(K).
inline CheckReport verify_char_pointwise(const ExAutModel& model)
{
  CheckReport rep{"pointwise-by-minimality", model.name,
                  {{"closure", model.family.closure.describe()},
                   {"size_bound", model.family.size_bound}}};
  JRange range(model);
  std::set<std::size_t> pointwise;
  for (std::size_t p : model.trivial_pair)
    pointwise.insert(range.class_of[p]);
  std::set<std::size_t> minimal;
  for (std::size_t c = 0; c < range.classes.size(); ++c) {
    bool has_refinement = false;
    for (std::size_t d = 0; d < range.classes.size() && !has_refinement; ++d)
      if (d != c && range.classes[d].order() < range.classes[c].order() &&
          detail::normal_in(range.classes[d], range.classes[c]))
        has_refinement = true;
    if (!has_refinement)
      minimal.insert(c);
  }
  std::size_t mismatches = 0;
  for (std::size_t c = 0; c < range.classes.size(); ++c) {
    bool in_p = pointwise.contains(c), in_m = minimal.contains(c);
    if (in_p == in_m)
      continue;
    ++mismatches;
    rep.witnesses.push_back({{"subgroup", group_json(range.classes[c])},
                             {"from", detail::pair_json(model, range.members[c][0])},
                             {"pointwise", in_p},
                             {"minimal", in_m}});
  }
  rep.summary = {{"range", range.classes.size()},
                 {"pointwise", pointwise.size()},
                 {"minimal", minimal.size()},
                 {"mismatches", mismatches}};
  rep.status = exact(mismatches == 0);
  return rep;
}

/// For each G_(K): the maximal members H' of the range with G_(K) normal in
/// H' (and index at most `index_bound`, if given) must be exactly G_{K},
/// with H'/G_(K) isomorphic to Aut(K).
inline CheckReport verify_char_L(const ExAutModel& model,
                                 std::optional<std::uint64_t> index_bound = std::nullopt)
{
  json params = {{"closure", model.family.closure.describe()},
                 {"size_bound", model.family.size_bound}};
  if (index_bound)
    params["index_bound"] = *index_bound;
  CheckReport rep{"over-group-quotient", model.name, params};
  JRange range(model);
  std::size_t fails = 0;
  for (std::size_t s = 0; s < model.family.sets.size(); ++s) {
    const auto& k = model.family.sets[s];
    const PermGroup& h = model.j[model.trivial_pair[s]];
    std::vector<std::size_t> over;
    for (std::size_t c = 0; c < range.classes.size(); ++c) {
      const auto& hp = range.classes[c];
      if (index_bound && hp.order() / h.order() > *index_bound)
        continue;
      if (detail::normal_in(h, hp))
        over.push_back(c);
    }
    std::vector<std::size_t> maximal;
    for (std::size_t c : over) {
      bool below = false;
      for (std::size_t d : over)
        if (d != c && range.classes[d].order() > range.classes[c].order() &&
            is_subgroup(range.classes[c], range.classes[d]))
          below = true;
      if (!below)
        maximal.push_back(c);
    }
    PermGroup setwise = setwise_stabilizer(model.group, k);
    bool ok = maximal.size() == 1 && same_group(range.classes[maximal[0]], setwise);
    std::uint64_t quotient_order = 0;
    if (maximal.size() == 1) {
      FiniteGroup q = quotient_group(range.classes[maximal[0]], h);
      quotient_order = q.order();
      ok = ok && group_isomorphism(q, FiniteGroup::from_perm_group(model.aut_k[s])).has_value();
    }
    if (ok)
      continue;
    ++fails;
    json maxima = json::array();
    for (std::size_t c : maximal)
      maxima.push_back(group_json(range.classes[c]));
    rep.witnesses.push_back({{"K", set_string(k)},
                             {"maximal_over_groups", maxima},
                             {"setwise_order", setwise.order()},
                             {"quotient_order", quotient_order},
                             {"aut_k_order", model.aut_k[s].order()}});
  }
  rep.summary = {{"sets", model.family.sets.size()}, {"failures", fails}};
  rep.status = exact(fails == 0);
  return rep;
}

/// The identities relating F to composition and to Op on sets and pairs:
/// F(gh) = F(g)F(h); F(j(Op(f,K))) = F(f) F(j(K)) F(f)^-1 with F(j(K)) again
/// a pointwise stabilizer in the range; the same for pairs. Throws
/// NotAnAutomorphism unless F is an automorphism of Aut(M).
inline CheckReport verify_equivariance(const ExAutModel& model, const GroupHom& f_map,
                                       std::uint64_t element_bound = 5040)
{
  const PermGroup& g = model.group;
  if (!f_map.is_isomorphism_onto(g))
    throw Error(ErrorKind::NotAnAutomorphism, "F is not an automorphism of Aut(M)");
  CheckReport rep{"equivariance", model.name, {{"closure", model.family.closure.describe()},
                                               {"size_bound", model.family.size_bound}}};
  JRange range(model);
  std::set<std::size_t> pointwise;
  for (std::size_t p : model.trivial_pair)
    pointwise.insert(range.class_of[p]);
  std::size_t comp_fail = 0, set_fail = 0, pair_fail = 0, range_fail = 0, j_fail = 0;

  for (const auto& x : g.elements(element_bound))
    for (const auto& s : g.generators())
      if (f_map(x * s) != f_map(x) * f_map(s)) {
        if (comp_fail++ == 0)
          rep.witnesses.push_back({{"composition", x.to_string() + " * " + s.to_string()}});
      }

  std::vector<PermGroup> f_of_j;
  for (const auto& h : model.j)
    f_of_j.push_back(f_map.apply(h));
  for (std::size_t p = 0; p < model.pairs.size(); ++p) {
    auto c = range.find(f_of_j[p]);
    bool ok = c.has_value();
    if (ok && model.pairs[p].l.is_trivial())
      ok = pointwise.contains(*c);
    if (!ok) {
      ++range_fail;
      rep.witnesses.push_back({{"range", detail::pair_json(model, p)}});
    }
  }

  for (std::size_t i = 0; i < model.op_generators.size(); ++i) {
    const auto& f = model.op_generators[i];
    const Permutation ff = f_map(f);
    for (std::size_t s = 0; s < model.family.sets.size(); ++s) {
      std::size_t p = model.trivial_pair[s];
      std::size_t q = model.trivial_pair[model.op_set[i][s]];
      if (!same_group(model.j[q], conjugate_group(f, model.j[p])))
        ++j_fail;
      if (!same_group(f_of_j[q], conjugate_group(ff, f_of_j[p]))) {
        ++set_fail;
        rep.witnesses.push_back({{"op_set", f.to_string()}, {"K", set_string(model.family.sets[s])}});
      }
    }
    for (std::size_t p = 0; p < model.pairs.size(); ++p) {
      std::size_t q = model.op_pair[i][p];
      if (!same_group(model.j[q], conjugate_group(f, model.j[p])))
        ++j_fail;
      if (!same_group(f_of_j[q], conjugate_group(ff, f_of_j[p]))) {
        ++pair_fail;
        rep.witnesses.push_back({{"op_pair", f.to_string()}, {"pair", detail::pair_json(model, p)}});
      }
    }
  }
  rep.summary = {{"composition_failures", comp_fail},
                 {"range_failures", range_fail},
                 {"op_set_failures", set_fail},
                 {"op_pair_failures", pair_fail},
                 {"j_translate_failures", j_fail}};
  rep.status = exact(comp_fail + range_fail + set_fail + pair_fail + j_fail == 0);
  return rep;
}

/// Subgroups of Aut(M) of index at most `max_index` that are not of the
/// form G_(K,L) for a pair of the model. Informational.
inline CheckReport index_sweep(const ExAutModel& model, std::uint64_t max_index,
                               std::uint64_t order_bound = 1000)
{
  CheckReport rep{"index-sweep", model.name, {{"closure", model.family.closure.describe()},
                                              {"size_bound", model.family.size_bound},
                                              {"max_index", max_index}}};
  JRange range(model);
  std::size_t low = 0, outside = 0;
  for (const auto& e : all_subgroups(model.group, order_bound).subgroups) {
    if (e.index_in_parent > max_index)
      continue;
    ++low;
    if (range.find(e.group))
      continue;
    ++outside;
    rep.witnesses.push_back({{"subgroup", group_json(e.group)}, {"index", e.index_in_parent}});
  }
  rep.summary = {{"low_index_subgroups", low}, {"outside_range", outside}};
  rep.status = empirical(outside == 0);
  return rep;
}

inline json model_json(const ExAutModel& model)
{
  json sets = json::array();
  for (std::size_t s = 0; s < model.family.sets.size(); ++s)
    sets.push_back({{"K", set_string(model.family.sets[s])},
                    {"aut_order", model.aut_k[s].order()},
                    {"label", model.label[s]}});
  json pmin = json::array();
  for (std::size_t s : model.p_min)
    pmin.push_back(set_string(model.family.sets[s]));
  json pairs = json::array();
  for (std::size_t p = 0; p < model.pairs.size(); ++p) {
    auto entry = detail::pair_json(model, p);
    entry["j"] = group_json(model.j[p]);
    pairs.push_back(entry);
  }
  return {{"playground", model.name},
          {"group", group_json(model.group)},
          {"closure", model.family.closure.describe()},
          {"size_bound", model.family.size_bound},
          {"closed_sets", sets},
          {"closure_of_empty", set_string(model.family.sets[model.closure_of_empty])},
          {"p_min", pmin},
          {"labels", model.labels.size()},
          {"pairs", pairs},
          {"le_ea", model.le_ea.size()},
          {"le_a", model.le_a.size()}};
}

} // namespace exaut
