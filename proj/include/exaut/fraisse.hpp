#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "exaut/error.hpp"
#include "exaut/finite_group.hpp"
#include "exaut/group.hpp"
#include "exaut/structure.hpp"

namespace exaut {

/// A binary symbol required to be symmetric and irreflexive. With `sorts`
/// (two unary symbol indices), every pair in it joins one point of each sort.
struct SymIrr {
  std::size_t symbol = 0;
  std::optional<std::pair<std::size_t, std::size_t>> sorts;
};

/// A hereditary class of finite structures given by local constraints and
/// forbidden induced substructures.
struct ClassSpec {
  std::string name;
  Signature signature;
  /// Unary symbols that must partition the domain.
  std::vector<std::size_t> partition;
  std::vector<SymIrr> symmetric_irreflexive;
  std::vector<FinStructure> forbidden;

  void validate() const
  {
    auto bad = [](const std::string& what) {
      throw Error(ErrorKind::SignatureMismatch, "class spec: " + what);
    };
    std::set<std::size_t> seen;
    for (std::size_t p : partition) {
      if (p >= signature.size() || signature[p].arity != 1)
        bad("partition symbol is not unary");
      if (!seen.insert(p).second)
        bad("partition symbol listed twice");
    }
    seen.clear();
    for (const auto& r : symmetric_irreflexive) {
      if (r.symbol >= signature.size() || signature[r.symbol].arity != 2)
        bad("symmetric irreflexive symbol is not binary");
      if (!seen.insert(r.symbol).second)
        bad("symmetric irreflexive symbol listed twice");
      if (r.sorts)
        for (std::size_t u : {r.sorts->first, r.sorts->second})
          if (u >= signature.size() || signature[u].arity != 1)
            bad("sort of " + signature[r.symbol].name + " is not a unary symbol");
    }
    for (const auto& f : forbidden)
      if (!(f.signature() == signature))
        bad("forbidden structure has a different signature");
  }

  bool is_partition(std::size_t sym) const
  {
    return std::find(partition.begin(), partition.end(), sym) != partition.end();
  }

  const SymIrr* symirr(std::size_t sym) const
  {
    for (const auto& r : symmetric_irreflexive)
      if (r.symbol == sym)
        return &r;
    return nullptr;
  }
};

struct MemberResult {
  bool member = true;
  std::string violation;
  explicit operator bool() const { return member; }
};

inline MemberResult is_member(const FinStructure& m, const ClassSpec& spec)
{
  if (!(m.signature() == spec.signature))
    throw Error(ErrorKind::SignatureMismatch, "is_member: structure signature differs from class");
  const auto& sig = spec.signature;
  if (!spec.partition.empty())
    for (Point x = 0; x < m.size(); ++x) {
      std::size_t count = 0;
      for (std::size_t p : spec.partition)
        count += m.holds(p, {x}) ? 1 : 0;
      if (count != 1)
        return {false, "partition: point " + std::to_string(x) + " lies in " +
                         std::to_string(count) + " of the partition predicates"};
    }
  for (const auto& r : spec.symmetric_irreflexive) {
    const auto& name = sig[r.symbol].name;
    for (const auto& t : m.tuples(r.symbol)) {
      std::string pair = "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + ")";
      if (t[0] == t[1])
        return {false, "irreflexive: " + name + pair};
      if (!m.holds(r.symbol, {t[1], t[0]}))
        return {false, "symmetric: " + name + pair + " without its reverse"};
      if (r.sorts) {
        auto [l, k] = *r.sorts;
        bool ok = (m.holds(l, {t[0]}) && m.holds(k, {t[1]})) ||
                  (m.holds(k, {t[0]}) && m.holds(l, {t[1]}));
        if (!ok)
          return {false, "sorts: " + name + pair + " outside " + sig[l].name + " x " + sig[k].name};
      }
    }
  }
  for (std::size_t i = 0; i < spec.forbidden.size(); ++i)
    if (!embeddings(spec.forbidden[i], m, 1).empty())
      return {false, "forbidden: contains forbidden structure " + std::to_string(i)};
  return {};
}

// ---------------------------------------------------------------------------
// Built-in classes.

namespace classes {

inline ClassSpec pure_set()
{
  return {"pure_set", Signature{}, {}, {}, {}};
}

inline ClassSpec graphs()
{
  return {"graphs", graph_signature(), {}, {{0, std::nullopt}}, {}};
}

/// Graphs omitting the complete graph on n vertices.
inline ClassSpec kn_free(std::size_t n)
{
  ClassSpec spec = graphs();
  spec.name = "kn_free(" + std::to_string(n) + ")";
  spec.forbidden.push_back(playground::complete(n));
  return spec;
}

/// Complete graphs whose edges carry exactly one of n colours E0..E(n-1):
/// every two-point structure with other than one colour is forbidden.
inline ClassSpec colored_graph(std::size_t n)
{
  std::vector<Symbol> symbols;
  for (std::size_t c = 0; c < n; ++c)
    symbols.push_back({"E" + std::to_string(c), 2});
  ClassSpec spec{"colored_graph(" + std::to_string(n) + ")", Signature(symbols), {}, {}, {}};
  for (std::size_t c = 0; c < n; ++c)
    spec.symmetric_irreflexive.push_back({c, std::nullopt});
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) == 1)
      continue;
    FinStructure f(2, spec.signature);
    for (std::size_t c = 0; c < n; ++c)
      if (mask >> c & 1u) {
        f.add(c, {0, 1});
        f.add(c, {1, 0});
      }
    spec.forbidden.push_back(std::move(f));
  }
  return spec;
}

/// Sorted structures built from a graph: unaries P<l> partition the domain,
/// and for every edge {l,k} with l<k a symmetric irreflexive R<l>_<k>
/// between sorts l and k.
inline ClassSpec gamma_class(const FinStructure& gamma)
{
  if (gamma.signature().size() != 1 || gamma.signature()[0].arity != 2)
    throw Error(ErrorKind::SignatureMismatch, "gamma_class expects a graph");
  const std::size_t n = gamma.size();
  std::vector<Symbol> symbols;
  for (std::size_t l = 0; l < n; ++l)
    symbols.push_back({"P" + std::to_string(l), 1});
  std::vector<std::pair<Point, Point>> edges;
  for (const auto& t : gamma.tuples(0))
    if (t[0] < t[1])
      edges.emplace_back(t[0], t[1]);
  for (auto [l, k] : edges)
    symbols.push_back({"R" + std::to_string(l) + "_" + std::to_string(k), 2});
  ClassSpec spec{"gamma_class", Signature(symbols), {}, {}, {}};
  for (std::size_t l = 0; l < n; ++l)
    spec.partition.push_back(l);
  for (std::size_t e = 0; e < edges.size(); ++e)
    spec.symmetric_irreflexive.push_back(
      {n + e, std::make_pair(std::size_t{edges[e].first}, std::size_t{edges[e].second})});
  return spec;
}

} // namespace classes

// ---------------------------------------------------------------------------
// Enumeration.

namespace detail {

struct Slot {
  std::size_t sym;
  std::vector<Tuple> tuples;
};

/// The unique partition predicate holding at x, if any.
inline std::optional<std::size_t> sort_of(const FinStructure& m, const ClassSpec& spec, Point x)
{
  for (std::size_t p : spec.partition)
    if (m.holds(p, {x}))
      return p;
  return std::nullopt;
}

/// Whether a pair of points with partition sorts a, b may carry r.
inline bool sorts_allow(const ClassSpec& spec, const SymIrr& r, std::optional<std::size_t> a,
                        std::optional<std::size_t> b)
{
  if (!r.sorts)
    return true;
  auto [l, k] = *r.sorts;
  if (!spec.is_partition(l) || !spec.is_partition(k))
    return true; // left to is_member
  return (a == l && b == k) || (a == k && b == l);
}

/// All tuples of arity r over {0..p} that mention p.
inline std::vector<Tuple> tuples_with(Point p, unsigned r)
{
  std::vector<Tuple> out;
  Tuple t(r, 0);
  for (;;) {
    if (std::find(t.begin(), t.end(), p) != t.end())
      out.push_back(t);
    unsigned i = r;
    while (i > 0 && t[i - 1] == p) {
      t[i - 1] = 0;
      --i;
    }
    if (i == 0)
      break;
    ++t[i - 1];
  }
  return out;
}

/// Bits for every tuple over (A, x) that mentions x; two points have equal
/// codes iff they realise the same one-point extension of A.
inline std::vector<std::uint8_t> type_code(const FinStructure& m, const std::vector<Point>& a,
                                           Point x)
{
  std::vector<std::uint8_t> code;
  const Point last = static_cast<Point>(a.size());
  for (std::size_t s = 0; s < m.signature().size(); ++s)
    for (const auto& idx : tuples_with(last, m.signature()[s].arity)) {
      Tuple t(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i)
        t[i] = idx[i] == last ? x : a[idx[i]];
      code.push_back(m.holds(s, t) ? 1 : 0);
    }
  return code;
}

} // namespace detail

/// Every member of the class obtained from `base` by adding one point
/// (index base.size()), in a fixed order. Throws OrderBoundExceeded when a
/// single partition choice leaves more than `max_slots` free bits.
inline std::vector<FinStructure> one_point_extensions(const ClassSpec& spec,
                                                      const FinStructure& base,
                                                      std::size_t max_slots = 22)
{
  const auto& sig = spec.signature;
  const Point p = static_cast<Point>(base.size());
  std::vector<std::optional<std::size_t>> choices;
  if (spec.partition.empty())
    choices.push_back(std::nullopt);
  for (std::size_t u : spec.partition)
    choices.push_back(u);

  std::vector<FinStructure> out;
  for (const auto& choice : choices) {
    FinStructure start = base;
    start.add_point();
    if (choice)
      start.add(*choice, {p});
    std::vector<detail::Slot> slots;
    for (std::size_t s = 0; s < sig.size(); ++s) {
      if (spec.is_partition(s))
        continue;
      if (const auto* r = spec.symirr(s)) {
        for (Point y = 0; y < p; ++y)
          if (detail::sorts_allow(spec, *r, choice, detail::sort_of(base, spec, y)))
            slots.push_back({s, {{p, y}, {y, p}}});
        continue;
      }
      for (auto& t : detail::tuples_with(p, sig[s].arity))
        slots.push_back({s, {std::move(t)}});
    }
    if (slots.size() > max_slots)
      throw Error(ErrorKind::OrderBoundExceeded,
                  "one-point extension has " + std::to_string(slots.size()) + " free bits");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
      FinStructure ext = start;
      for (std::size_t i = 0; i < slots.size(); ++i)
        if (mask >> i & 1u)
          for (const auto& t : slots[i].tuples)
            ext.add(slots[i].sym, t);
      if (is_member(ext, spec))
        out.push_back(std::move(ext));
    }
  }
  return out;
}

/// Members of size 0..k up to isomorphism, grouped by size. Relies on the
/// class being hereditary, which every spec of this form is.
inline std::vector<std::vector<FinStructure>> members_up_to(const ClassSpec& spec, std::size_t k)
{
  std::vector<std::vector<FinStructure>> by_size(k + 1);
  FinStructure empty(0, spec.signature);
  if (!is_member(empty, spec))
    return by_size;
  by_size[0].push_back(empty);
  for (std::size_t s = 0; s < k; ++s) {
    std::set<std::vector<std::uint32_t>> seen;
    for (const auto& m : by_size[s])
      for (auto& ext : one_point_extensions(spec, m))
        if (seen.insert(canonical_form(ext).first).second)
          by_size[s + 1].push_back(std::move(ext));
  }
  return by_size;
}

// ---------------------------------------------------------------------------
// Amalgamation.

/// Disjoint union of B1 and B2 over A, where A is B1 restricted to `subset`
/// (in that order) and `e2` embeds A into B2. B1 keeps its labels; the rest
/// of B2 follows in increasing order. No relations are added.
inline FinStructure free_amalgam(const FinStructure& b1, const std::vector<Point>& subset,
                                 const FinStructure& b2, const std::vector<Point>& e2)
{
  std::vector<Point> map2(b2.size(), 0);
  std::vector<bool> in_image(b2.size(), false);
  for (std::size_t i = 0; i < e2.size(); ++i) {
    map2[e2[i]] = subset[i];
    in_image[e2[i]] = true;
  }
  Point next = static_cast<Point>(b1.size());
  for (Point y = 0; y < b2.size(); ++y)
    if (!in_image[y])
      map2[y] = next++;
  auto tables = b1.tables();
  for (std::size_t s = 0; s < tables.size(); ++s)
    for (const auto& t : b2.tuples(s)) {
      Tuple u(t.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        u[i] = map2[t[i]];
      tables[s].push_back(std::move(u));
    }
  return FinStructure(next, b1.signature(), std::move(tables));
}

struct AmalgamationFailure {
  FinStructure b1;
  std::vector<Point> subset;
  FinStructure b2;
  std::vector<Point> e2;
  std::string violation;
};

struct AmalgamationReport {
  std::size_t size_bound = 0;
  std::vector<std::size_t> members_by_size;
  std::uint64_t problems = 0;
  std::uint64_t failure_count = 0;
  std::uint64_t jep_failures = 0;
  std::uint64_t hp_failures = 0;
  /// The first few failures, for reporting.
  std::vector<AmalgamationFailure> failures;

  bool ok() const { return failure_count == 0 && hp_failures == 0; }
};

/// Free amalgamation check up to size k: for every member B1 (up to
/// isomorphism), every proper subset A of B1, every larger member B2 and
/// every embedding of A into B2, the free amalgam must be a member. A = {}
/// covers joint embedding. Hereditariness is checked on every subset of
/// every member.
inline AmalgamationReport check_amalgamation(const ClassSpec& spec, std::size_t k,
                                             std::size_t keep_failures = 16)
{
  if (k == 0)
    throw Error(ErrorKind::Usage, "check_amalgamation needs a size bound of at least 1");
  spec.validate();
  AmalgamationReport report;
  report.size_bound = k;
  const auto members = members_up_to(spec, k);
  for (const auto& layer : members)
    report.members_by_size.push_back(layer.size());

  for (const auto& layer : members)
    for (const auto& b : layer)
      for (std::uint32_t mask = 0; mask < (1u << b.size()); ++mask) {
        std::vector<Point> sub;
        for (Point x = 0; x < b.size(); ++x)
          if (mask >> x & 1u)
            sub.push_back(x);
        if (!is_member(induced_substructure(b, sub), spec))
          ++report.hp_failures;
      }

  // Embeddings of each A into each member, keyed by A's encoding.
  std::map<std::vector<std::uint32_t>, std::vector<std::vector<std::vector<Point>>>> cache;
  std::vector<const FinStructure*> flat;
  for (const auto& layer : members)
    for (const auto& b : layer)
      flat.push_back(&b);

  for (std::size_t s1 = 1; s1 <= k; ++s1)
    for (const auto& b1 : members[s1])
      for (std::uint32_t mask = 0; mask + 1 < (1u << s1); ++mask) {
        std::vector<Point> sub;
        for (Point x = 0; x < s1; ++x)
          if (mask >> x & 1u)
            sub.push_back(x);
        FinStructure a = induced_substructure(b1, sub);
        auto key = encode(a);
        auto it = cache.find(key);
        if (it == cache.end()) {
          std::vector<std::vector<std::vector<Point>>> per;
          for (const auto* b2 : flat)
            per.push_back(b2->size() > a.size() ? embeddings(a, *b2)
                                                : std::vector<std::vector<Point>>{});
          it = cache.emplace(std::move(key), std::move(per)).first;
        }
        for (std::size_t j = 0; j < flat.size(); ++j)
          for (const auto& e2 : it->second[j]) {
            ++report.problems;
            auto c = free_amalgam(b1, sub, *flat[j], e2);
            auto verdict = is_member(c, spec);
            if (verdict)
              continue;
            ++report.failure_count;
            if (sub.empty())
              ++report.jep_failures;
            if (report.failures.size() < keep_failures)
              report.failures.push_back({b1, sub, *flat[j], e2, verdict.violation});
          }
      }
  return report;
}

// ---------------------------------------------------------------------------
// Extension property and generic structures.

/// A one-point extension of M restricted to `base` that M does not realise:
/// `extension` has base's points at 0..|base|-1 and the new point last.
struct ExtensionWitness {
  std::vector<Point> base;
  FinStructure extension;
};

struct ExtensionResult {
  bool holds = true;
  std::optional<ExtensionWitness> missing;
  explicit operator bool() const { return holds; }
};

namespace detail {

template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit)
{
  std::vector<Point> a;
  auto rec = [&](auto&& self, Point from) -> bool {
    if (!visit(a))
      return false;
    if (a.size() == k)
      return true;
    for (Point x = from; x < n; ++x) {
      a.push_back(x);
      bool go = self(self, x + 1);
      a.pop_back();
      if (!go)
        return false;
    }
    return true;
  };
  rec(rec, 0);
}

/// Allowed one-point types over a base structure, cached by its encoding.
class TypeCache {
public:
  explicit TypeCache(const ClassSpec& spec) : spec_(spec) {}

  const std::vector<std::pair<std::vector<std::uint8_t>, FinStructure>>&
  types(const FinStructure& base)
  {
    auto key = encode(base);
    auto it = cache_.find(key);
    if (it != cache_.end())
      return it->second;
    std::vector<std::pair<std::vector<std::uint8_t>, FinStructure>> out;
    std::vector<Point> ids(base.size());
    std::iota(ids.begin(), ids.end(), Point{0});
    for (auto& ext : one_point_extensions(spec_, base))
      out.emplace_back(type_code(ext, ids, static_cast<Point>(base.size())), std::move(ext));
    return cache_.emplace(std::move(key), std::move(out)).first->second;
  }

private:
  const ClassSpec& spec_;
  std::map<std::vector<std::uint32_t>, std::vector<std::pair<std::vector<std::uint8_t>, FinStructure>>>
    cache_;
};

inline std::set<std::vector<std::uint8_t>> realized_types(const FinStructure& m,
                                                          const std::vector<Point>& a)
{
  std::set<std::vector<std::uint8_t>> out;
  for (Point x = 0; x < m.size(); ++x)
    if (std::find(a.begin(), a.end(), x) == a.end())
      out.insert(type_code(m, a, x));
  return out;
}

} // namespace detail

/// Checks that every one-point extension allowed by the class, over every
/// subset of at most k points, is realised in M. Throws NotAMember.
inline ExtensionResult extension_property_check(const FinStructure& m, const ClassSpec& spec,
                                                std::size_t k)
{
  if (auto v = is_member(m, spec); !v)
    throw Error(ErrorKind::NotAMember, "extension_property_check: " + v.violation);
  detail::TypeCache cache(spec);
  ExtensionResult result;
  detail::for_each_subset(m.size(), k, [&](const std::vector<Point>& a) {
    auto have = detail::realized_types(m, a);
    for (const auto& [code, ext] : cache.types(induced_substructure(m, a)))
      if (!have.contains(code)) {
        result.holds = false;
        result.missing = ExtensionWitness{a, ext};
        return false;
      }
    return true;
  });
  return result;
}

struct GenericBuild {
  FinStructure structure;
  bool complete = false;
  std::size_t stages = 0;
  /// Types still missing when the stage bound ran out.
  std::vector<ExtensionWitness> deficiencies;
};

namespace detail {

/// Membership of M, given that M without point z is a member: only the
/// constraints that can involve z are checked.
inline bool member_through(const FinStructure& m, const ClassSpec& spec, Point z)
{
  if (!spec.partition.empty()) {
    std::size_t count = 0;
    for (std::size_t p : spec.partition)
      count += m.holds(p, {z}) ? 1 : 0;
    if (count != 1)
      return false;
  }
  for (const auto& r : spec.symmetric_irreflexive)
    for (const auto& t : m.tuples(r.symbol)) {
      if (t[0] != z && t[1] != z)
        continue;
      if (t[0] == t[1] || !m.holds(r.symbol, {t[1], t[0]}))
        return false;
      if (r.sorts) {
        auto [l, k] = *r.sorts;
        if (!((m.holds(l, {t[0]}) && m.holds(k, {t[1]})) ||
              (m.holds(k, {t[0]}) && m.holds(l, {t[1]}))))
          return false;
      }
    }
  for (const auto& f : spec.forbidden)
    for (Point i = 0; i < f.size(); ++i) {
      std::vector<Point> swap(f.size());
      std::iota(swap.begin(), swap.end(), Point{0});
      std::swap(swap[0], swap[i]);
      if (!embeddings(relabel(f, Permutation(swap)), m, 1, z).empty())
        return false;
    }
  return true;
}

/// Adds a point realising `type` over `a` (a one-point extension of M
/// restricted to a). Relations to each other point are tried in an order
/// drawn from rng, keeping the first choice that stays in the class. If
/// that fails the point is added with no further relations. Returns false
/// if neither is a member.
inline bool add_witness(FinStructure& m, const ClassSpec& spec, const std::vector<Point>& a,
                        const FinStructure& type, std::mt19937_64& rng)
{
  const auto& sig = spec.signature;
  const Point last = static_cast<Point>(a.size());
  FinStructure base = m;
  const Point z = base.add_point();
  for (std::size_t s = 0; s < sig.size(); ++s)
    for (const auto& t : type.tuples(s)) {
      if (std::find(t.begin(), t.end(), last) == t.end())
        continue;
      Tuple u(t.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        u[i] = t[i] == last ? z : a[t[i]];
      base.add(s, u);
    }
  std::vector<bool> in_a(base.size(), false);
  for (Point x : a)
    in_a[x] = true;

  FinStructure cur = base;
  for (Point y = 0; y < z; ++y) {
    if (in_a[y])
      continue;
    std::vector<Slot> slots;
    for (std::size_t s = 0; s < sig.size(); ++s) {
      if (sig[s].arity != 2)
        continue;
      if (const auto* r = spec.symirr(s)) {
        if (sorts_allow(spec, *r, sort_of(cur, spec, z), sort_of(cur, spec, y)))
          slots.push_back({s, {{z, y}, {y, z}}});
      } else {
        slots.push_back({s, {{z, y}}});
        slots.push_back({s, {{y, z}}});
      }
    }
    if (slots.empty() || slots.size() > 16)
      continue;
    const std::uint64_t total = std::uint64_t{1} << slots.size();
    const std::uint64_t offset = rng() % total;
    for (std::uint64_t i = 0; i < total; ++i) {
      const std::uint64_t mask = (offset + i) % total;
      FinStructure next = cur;
      for (std::size_t j = 0; j < slots.size(); ++j)
        if (mask >> j & 1u)
          for (const auto& t : slots[j].tuples)
            next.add(slots[j].sym, t);
      if (member_through(next, spec, z)) {
        cur = std::move(next);
        break;
      }
    }
  }
  if (member_through(cur, spec, z)) {
    m = std::move(cur);
    return true;
  }
  if (member_through(base, spec, z)) {
    m = std::move(base);
    return true;
  }
  return false;
}

} // namespace detail

/// Staged approximation of the generic structure of the class: each stage
/// walks every subset of at most k points (by size, then lexicographically)
/// and adds a witness point for each missing one-point type. Stops when a
/// stage adds nothing or after `stage_bound` stages. Throws
/// SpecNotAmalgamating when free amalgamation fails at size k+1.
inline GenericBuild generic_build(const ClassSpec& spec, std::size_t k, std::size_t stage_bound,
                                  std::uint64_t seed)
{
  auto amalgamation = check_amalgamation(spec, k + 1, 1);
  if (!amalgamation.ok())
    throw Error(ErrorKind::SpecNotAmalgamating,
                spec.name + " fails free amalgamation at size " + std::to_string(k + 1));
  std::mt19937_64 rng(seed);
  detail::TypeCache cache(spec);
  GenericBuild out;
  out.structure = FinStructure(0, spec.signature);
  auto& m = out.structure;

  auto pass = [&](bool add, std::vector<ExtensionWitness>* missing) {
    bool changed = false;
    const std::size_t n = m.size();
    detail::for_each_subset(n, k, [&](const std::vector<Point>& a) {
      auto have = detail::realized_types(m, a);
      for (const auto& [code, ext] : cache.types(induced_substructure(m, a))) {
        if (have.contains(code))
          continue;
        if (add && detail::add_witness(m, spec, a, ext, rng)) {
          changed = true;
          have.insert(code);
        } else if (missing) {
          missing->push_back({a, ext});
        }
      }
      return true;
    });
    return changed;
  };

  for (std::size_t stage = 1; stage <= stage_bound; ++stage) {
    out.stages = stage;
    if (!pass(true, nullptr)) {
      out.complete = true;
      return out;
    }
  }
  pass(false, &out.deficiencies);
  out.complete = out.deficiencies.empty();
  return out;
}

// ---------------------------------------------------------------------------
// Class-level algebraic closure.

namespace detail {

/// M with `copies` - 1 extra copies of a, each related to M \ {a} as a is
/// and unrelated to the others.
inline FinStructure duplicate_point(const FinStructure& m, Point a, std::size_t copies)
{
  auto tables = m.tables();
  std::size_t n = m.size();
  for (std::size_t c = 1; c < copies; ++c) {
    Point fresh = static_cast<Point>(n++);
    for (std::size_t s = 0; s < tables.size(); ++s)
      for (const auto& t : m.tuples(s))
        if (std::find(t.begin(), t.end(), a) != t.end()) {
          Tuple u = t;
          std::replace(u.begin(), u.end(), a, fresh);
          tables[s].push_back(std::move(u));
        }
  }
  return FinStructure(n, m.signature(), std::move(tables));
}

/// `copies` copies of M glued along A, nothing else related.
inline FinStructure glue_copies(const FinStructure& m, const std::vector<Point>& a,
                                std::size_t copies)
{
  FinStructure out = m;
  for (std::size_t c = 1; c < copies; ++c)
    out = free_amalgam(out, a, m, a);
  return out;
}

} // namespace detail

/// Points of M that cannot be duplicated `copies` times over A inside the
/// class, together with A. A point is duplicable if `copies` copies of it
/// over the rest of M form a member, or if `copies` copies of M glued
/// along A do. Throws NotAMember.
inline std::vector<Point> class_acl(const ClassSpec& spec, const FinStructure& m,
                                    const std::vector<Point>& a, std::size_t copies = 2)
{
  if (auto v = is_member(m, spec); !v)
    throw Error(ErrorKind::NotAMember, "class_acl: " + v.violation);
  if (copies < 2)
    throw Error(ErrorKind::Usage, "class_acl needs at least two copies");
  for (Point x : a)
    if (x >= m.size())
      throw Error(ErrorKind::PointOutOfRange, "class_acl: point " + std::to_string(x));
  std::vector<Point> out;
  std::optional<bool> glued;
  for (Point x = 0; x < m.size(); ++x) {
    if (std::find(a.begin(), a.end(), x) != a.end()) {
      out.push_back(x);
      continue;
    }
    if (is_member(detail::duplicate_point(m, x, copies), spec))
      continue;
    if (!glued)
      glued = static_cast<bool>(is_member(detail::glue_copies(m, a, copies), spec));
    if (!*glued)
      out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symmetries of the signature.

struct SymmetryWitness {
  Permutation symbol_permutation;
  /// Induced permutation of partition positions (sorts).
  Permutation sort_permutation;
};

struct SignatureSymmetry {
  PermGroup group;
  std::vector<SymmetryWitness> witnesses;
  std::size_t members_checked = 0;
};

/// Renames the symbols of M along sigma (symbol s becomes sigma(s)).
inline FinStructure rename_symbols(const FinStructure& m, const Permutation& sigma)
{
  std::vector<std::vector<Tuple>> tables(m.signature().size());
  for (std::size_t s = 0; s < tables.size(); ++s)
    tables[sigma(static_cast<Point>(s))] = m.tuples(s);
  return FinStructure(m.size(), m.signature(), std::move(tables));
}

namespace detail {

/// A structure on the symbols of the spec recording arities, partition
/// membership, symmetric-irreflexive flags and sort incidences; its
/// automorphisms are the candidate symbol permutations.
inline FinStructure constraint_structure(const ClassSpec& spec)
{
  const auto& sig = spec.signature;
  std::set<unsigned> arities;
  for (std::size_t s = 0; s < sig.size(); ++s)
    arities.insert(sig[s].arity);
  std::vector<Symbol> symbols{{"partition", 1}, {"symirr", 1}, {"sort", 2}};
  for (unsigned r : arities)
    symbols.push_back({"arity" + std::to_string(r), 1});
  FinStructure c(sig.size(), Signature(symbols));
  for (std::size_t s = 0; s < sig.size(); ++s)
    c.add("arity" + std::to_string(sig[s].arity), {static_cast<Point>(s)});
  for (std::size_t p : spec.partition)
    c.add(0, {static_cast<Point>(p)});
  for (const auto& r : spec.symmetric_irreflexive) {
    c.add(1, {static_cast<Point>(r.symbol)});
    if (r.sorts) {
      c.add(2, {static_cast<Point>(r.symbol), static_cast<Point>(r.sorts->first)});
      c.add(2, {static_cast<Point>(r.symbol), static_cast<Point>(r.sorts->second)});
    }
  }
  return c;
}

} // namespace detail

/// The group of symbol permutations that map the class onto itself: the
/// automorphisms of the constraint system that also permute the forbidden
/// structures, each confirmed on every member of size at most k.
inline SignatureSymmetry signature_symmetry_group(const ClassSpec& spec, std::size_t k,
                                                  std::uint64_t element_bound = 40320)
{
  if (k < 2)
    throw Error(ErrorKind::Usage, "signature_symmetry_group needs a check bound of at least 2");
  spec.validate();
  const std::size_t n = spec.signature.size();
  SignatureSymmetry out{PermGroup::trivial(n), {}, 0};
  if (n == 0)
    return out;
  PermGroup candidates = automorphism_group(detail::constraint_structure(spec));

  std::set<std::vector<std::uint32_t>> forbidden_forms;
  for (const auto& f : spec.forbidden)
    forbidden_forms.insert(canonical_form(f).first);
  auto members = members_up_to(spec, k);

  auto preserves = [&](const Permutation& sigma) {
    for (const auto& f : spec.forbidden)
      if (!forbidden_forms.contains(canonical_form(rename_symbols(f, sigma)).first))
        return false;
    for (const auto& layer : members)
      for (const auto& m : layer)
        if (!is_member(rename_symbols(m, sigma), spec))
          return false;
    return true;
  };
  for (const auto& layer : members)
    out.members_checked += layer.size();

  std::vector<Permutation> gens;
  bool all_gens_ok = true;
  for (const auto& g : candidates.generators())
    if (!g.is_identity() && !preserves(g))
      all_gens_ok = false;
  if (all_gens_ok) {
    gens = candidates.generators();
  } else {
    for (const auto& g : candidates.elements(element_bound))
      if (!g.is_identity() && preserves(g)) {
        PermGroup so_far = generate_or_trivial(gens, n);
        if (!so_far.contains(g))
          gens.push_back(g);
      }
  }
  out.group = generate_or_trivial(gens, n);

  for (const auto& g : out.group.generators()) {
    std::vector<Point> sorts(spec.partition.size());
    for (std::size_t i = 0; i < spec.partition.size(); ++i) {
      Point image = g(static_cast<Point>(spec.partition[i]));
      sorts[i] = static_cast<Point>(
        std::find(spec.partition.begin(), spec.partition.end(), image) - spec.partition.begin());
    }
    out.witnesses.push_back({g, Permutation(sorts)});
  }
  return out;
}

} // namespace exaut
