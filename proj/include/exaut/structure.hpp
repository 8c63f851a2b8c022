#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "exaut/error.hpp"
#include "exaut/group.hpp"
#include "exaut/perm.hpp"

namespace exaut {

struct Symbol {
  std::string name;
  unsigned arity = 1;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

class Signature {
public:
  Signature() = default;

  explicit Signature(std::vector<Symbol> symbols)
  : symbols_(std::move(symbols))
  {
    std::set<std::string> names;
    for (const auto& s : symbols_) {
      if (s.arity == 0)
        throw Error(ErrorKind::Parse, "symbol " + s.name + " has arity 0");
      if (!names.insert(s.name).second)
        throw Error(ErrorKind::Parse, "duplicate symbol " + s.name);
    }
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

  std::optional<std::size_t> index_of(const std::string& name) const
  {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i].name == name)
        return i;
    return std::nullopt;
  }

  std::size_t at(const std::string& name) const
  {
    auto i = index_of(name);
    if (!i)
      throw Error(ErrorKind::SignatureMismatch, "unknown symbol " + name);
    return *i;
  }

  friend bool operator==(const Signature&, const Signature&) = default;

private:
  std::vector<Symbol> symbols_;
};

using Tuple = std::vector<Point>;

/// A finite relational structure on {0..n-1}; each relation is a sorted,
/// duplicate-free tuple set.
class FinStructure {
public:
  FinStructure() = default;

  FinStructure(std::size_t n, Signature sig)
  : n_(n), sig_(std::move(sig)), tables_(sig_.size())
  {}

  FinStructure(std::size_t n, Signature sig, std::vector<std::vector<Tuple>> tables)
  : n_(n), sig_(std::move(sig)), tables_(std::move(tables))
  {
    if (tables_.size() != sig_.size())
      throw Error(ErrorKind::SignatureMismatch, "table count does not match signature");
    for (std::size_t s = 0; s < tables_.size(); ++s) {
      for (const auto& t : tables_[s])
        check_tuple(s, t);
      std::sort(tables_[s].begin(), tables_[s].end());
      tables_[s].erase(std::unique(tables_[s].begin(), tables_[s].end()), tables_[s].end());
    }
  }

  std::size_t size() const noexcept { return n_; }
  const Signature& signature() const noexcept { return sig_; }
  const std::vector<Tuple>& tuples(std::size_t sym) const { return tables_[sym]; }
  const std::vector<std::vector<Tuple>>& tables() const noexcept { return tables_; }

  bool holds(std::size_t sym, const Tuple& t) const
  {
    return std::binary_search(tables_[sym].begin(), tables_[sym].end(), t);
  }

  void add(std::size_t sym, Tuple t)
  {
    check_tuple(sym, t);
    auto& table = tables_[sym];
    auto it = std::lower_bound(table.begin(), table.end(), t);
    if (it == table.end() || *it != t)
      table.insert(it, std::move(t));
  }

  void add(const std::string& sym, Tuple t) { add(sig_.at(sym), std::move(t)); }

  /// Adds a point with no relations; returns its index.
  Point add_point() { return static_cast<Point>(n_++); }

  friend bool operator==(const FinStructure&, const FinStructure&) = default;

private:
  void check_tuple(std::size_t sym, const Tuple& t) const
  {
    if (t.size() != sig_[sym].arity)
      throw Error(ErrorKind::SignatureMismatch, "tuple arity mismatch for " + sig_[sym].name);
    for (Point x : t)
      if (x >= n_)
        throw Error(ErrorKind::PointOutOfRange, "tuple entry out of range in " + sig_[sym].name);
  }

  std::size_t n_ = 0;
  Signature sig_;
  std::vector<std::vector<Tuple>> tables_;
};

// ---------------------------------------------------------------------------
// Constructors for common structures.

inline Signature graph_signature() { return Signature({{"E", 2}}); }

inline FinStructure graph_structure(std::size_t n,
                                    const std::vector<std::pair<Point, Point>>& edges)
{
  FinStructure m(n, graph_signature());
  for (auto [u, v] : edges) {
    if (u == v)
      throw Error(ErrorKind::Parse, "graph edges must not be loops");
    m.add(0, {u, v});
    m.add(0, {v, u});
  }
  return m;
}

namespace playground {

inline FinStructure pure_set(std::size_t n) { return FinStructure(n, Signature{}); }

inline FinStructure edgeless(std::size_t n) { return graph_structure(n, {}); }

inline FinStructure cycle(std::size_t n)
{
  std::vector<std::pair<Point, Point>> e;
  for (Point i = 0; i < n; ++i)
    e.emplace_back(i, static_cast<Point>((i + 1) % n));
  return graph_structure(n, e);
}

inline FinStructure path(std::size_t n)
{
  std::vector<std::pair<Point, Point>> e;
  for (Point i = 0; i + 1 < n; ++i)
    e.emplace_back(i, i + 1);
  return graph_structure(n, e);
}

inline FinStructure complete(std::size_t n)
{
  std::vector<std::pair<Point, Point>> e;
  for (Point i = 0; i < n; ++i)
    for (Point j = i + 1; j < n; ++j)
      e.emplace_back(i, j);
  return graph_structure(n, e);
}

/// m x m rook's graph: (r, c) -> r*m + c, adjacent iff same row or column.
inline FinStructure rook(std::size_t m)
{
  std::vector<std::pair<Point, Point>> e;
  for (Point a = 0; a < m * m; ++a)
    for (Point b = a + 1; b < m * m; ++b)
      if (a / m == b / m || a % m == b % m)
        e.emplace_back(a, b);
  return graph_structure(m * m, e);
}

/// `count` disjoint cliques of `size` vertices each.
inline FinStructure cliques(std::size_t count, std::size_t size)
{
  std::vector<std::pair<Point, Point>> e;
  for (Point c = 0; c < count; ++c)
    for (Point i = 0; i < size; ++i)
      for (Point j = i + 1; j < size; ++j)
        e.emplace_back(static_cast<Point>(c * size + i), static_cast<Point>(c * size + j));
  return graph_structure(count * size, e);
}

} // namespace playground

// ---------------------------------------------------------------------------

/// Restriction of M to the ordered set A, relabeled so that A[i] becomes i.
inline FinStructure induced_substructure(const FinStructure& m, const std::vector<Point>& a)
{
  std::vector<std::int64_t> pos(m.size(), -1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= m.size())
      throw Error(ErrorKind::PointOutOfRange, "induced_substructure point out of range");
    if (pos[a[i]] >= 0)
      throw Error(ErrorKind::Parse, "induced_substructure points must be distinct");
    pos[a[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<std::vector<Tuple>> tables(m.signature().size());
  for (std::size_t s = 0; s < tables.size(); ++s)
    for (const auto& t : m.tuples(s)) {
      Tuple u;
      u.reserve(t.size());
      for (Point x : t) {
        if (pos[x] < 0)
          break;
        u.push_back(static_cast<Point>(pos[x]));
      }
      if (u.size() == t.size())
        tables[s].push_back(std::move(u));
    }
  return FinStructure(a.size(), m.signature(), std::move(tables));
}

/// Image of M under the point relabeling x -> sigma(x).
inline FinStructure relabel(const FinStructure& m, const Permutation& sigma)
{
  if (sigma.degree() != m.size())
    throw Error(ErrorKind::DegreeMismatch, "relabel: permutation degree differs from domain");
  std::vector<std::vector<Tuple>> tables(m.signature().size());
  for (std::size_t s = 0; s < tables.size(); ++s)
    for (auto t : m.tuples(s)) {
      for (auto& x : t)
        x = sigma(x);
      tables[s].push_back(std::move(t));
    }
  return FinStructure(m.size(), m.signature(), std::move(tables));
}

inline bool is_automorphism(const FinStructure& m, const Permutation& p)
{
  if (p.degree() != m.size())
    return false;
  for (std::size_t s = 0; s < m.signature().size(); ++s)
    for (auto t : m.tuples(s)) {
      for (auto& x : t)
        x = p(x);
      if (!m.holds(s, t))
        return false;
    }
  return true;
}

/// Flat encoding [n, |R_0|, tuples of R_0..., |R_1|, ...]; equal encodings
/// mean equal labeled structures over the same signature.
inline std::vector<std::uint32_t> encode(const FinStructure& m)
{
  std::vector<std::uint32_t> out{static_cast<std::uint32_t>(m.size())};
  for (std::size_t s = 0; s < m.signature().size(); ++s) {
    out.push_back(static_cast<std::uint32_t>(m.tuples(s).size()));
    for (const auto& t : m.tuples(s))
      out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

namespace detail {

struct Incidence {
  std::uint32_t sym;
  std::uint32_t pos;
  std::uint32_t tuple;
};

/// Isomorphism-invariant colour refinement of one or two colourings of the
/// same structure, in lockstep so that colour ids agree between them.
class Refiner {
public:
  using Coloring = std::vector<std::uint32_t>;

  explicit Refiner(const FinStructure& m)
  : m_(m), inc_(m.size())
  {
    for (std::size_t s = 0; s < m.signature().size(); ++s) {
      const auto& ts = m.tuples(s);
      for (std::size_t k = 0; k < ts.size(); ++k)
        for (std::size_t p = 0; p < ts[k].size(); ++p)
          inc_[ts[k][p]].push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(p),
                                    static_cast<std::uint32_t>(k)});
    }
  }

  std::size_t size() const { return m_.size(); }

  /// Refines `a` (and `b`, if given) to an equitable colouring. Returns false
  /// if the two colourings stop being compatible.
  bool refine(Coloring& a, Coloring* b) const
  {
    std::size_t classes = count_classes(a);
    for (;;) {
      auto sa = signatures(a);
      std::vector<std::vector<std::uint32_t>> sb;
      if (b)
        sb = signatures(*b);
      std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
      for (const auto& s : sa)
        ids.emplace(s, 0);
      if (b) {
        for (const auto& s : sb)
          if (!ids.contains(s))
            return false;
      }
      std::uint32_t next = 0;
      for (auto& [key, id] : ids)
        id = next++;
      std::vector<std::size_t> hist_a(ids.size(), 0), hist_b(ids.size(), 0);
      for (std::size_t v = 0; v < a.size(); ++v) {
        a[v] = ids.at(sa[v]);
        ++hist_a[a[v]];
      }
      if (b) {
        for (std::size_t v = 0; v < b->size(); ++v) {
          (*b)[v] = ids.at(sb[v]);
          ++hist_b[(*b)[v]];
        }
        if (hist_a != hist_b)
          return false;
      }
      if (ids.size() == classes)
        return true;
      classes = ids.size();
    }
  }

  static Coloring individualize(const Coloring& c, Point v)
  {
    Coloring out(c.size());
    for (std::size_t x = 0; x < c.size(); ++x)
      out[x] = 2 * c[x] + (x == v ? 1u : 0u);
    return out;
  }

  static std::size_t count_classes(const Coloring& c)
  {
    std::set<std::uint32_t> s(c.begin(), c.end());
    return s.size();
  }

  static bool discrete(const Coloring& c) { return count_classes(c) == c.size(); }

  /// Smallest colour with more than one vertex, if any.
  static std::optional<std::uint32_t> first_nonsingleton(const Coloring& c)
  {
    std::map<std::uint32_t, std::size_t> hist;
    for (auto x : c)
      ++hist[x];
    for (auto [color, count] : hist)
      if (count > 1)
        return color;
    return std::nullopt;
  }

private:
  std::vector<std::vector<std::uint32_t>> signatures(const Coloring& c) const
  {
    std::vector<std::vector<std::uint32_t>> out(c.size());
    for (std::size_t v = 0; v < c.size(); ++v) {
      std::vector<std::vector<std::uint32_t>> entries;
      entries.reserve(inc_[v].size());
      for (const auto& in : inc_[v]) {
        const auto& t = m_.tuples(in.sym)[in.tuple];
        std::vector<std::uint32_t> e{in.sym, in.pos};
        for (Point x : t)
          e.push_back(c[x]);
        entries.push_back(std::move(e));
      }
      std::sort(entries.begin(), entries.end());
      auto& sig = out[v];
      sig.push_back(c[v]);
      for (const auto& e : entries)
        sig.insert(sig.end(), e.begin(), e.end());
    }
    return out;
  }

  const FinStructure& m_;
  std::vector<std::vector<Incidence>> inc_;
};

} // namespace detail

/// Aut(M) by individualization-refinement backtracking. Generators are found
/// level by level along the first path, skipping images already in the orbit
/// of the generators found so far.
inline PermGroup automorphism_group(const FinStructure& m)
{
  using detail::Refiner;
  const std::size_t n = m.size();
  if (n == 0)
    return PermGroup::trivial(0);
  Refiner refiner(m);
  Refiner::Coloring c0(n, 0);
  refiner.refine(c0, nullptr);
  std::vector<Refiner::Coloring> path{c0};
  std::vector<Point> base;
  while (auto cell = Refiner::first_nonsingleton(path.back())) {
    Point v = 0;
    while (path.back()[v] != *cell)
      ++v;
    auto next = Refiner::individualize(path.back(), v);
    refiner.refine(next, nullptr);
    base.push_back(v);
    path.push_back(std::move(next));
  }

  auto leaf_map = [&](const Refiner::Coloring& l, const Refiner::Coloring& r) {
    std::vector<Point> by_color(n);
    for (Point x = 0; x < n; ++x)
      by_color[r[x]] = x;
    std::vector<Point> images(n);
    for (Point x = 0; x < n; ++x)
      images[x] = by_color[l[x]];
    return Permutation(std::move(images));
  };

  auto dfs = [&](auto&& self, Refiner::Coloring l,
                 Refiner::Coloring r) -> std::optional<Permutation> {
    if (!refiner.refine(l, &r))
      return std::nullopt;
    auto cell = Refiner::first_nonsingleton(l);
    if (!cell) {
      Permutation p = leaf_map(l, r);
      if (is_automorphism(m, p))
        return p;
      return std::nullopt;
    }
    Point x = 0;
    while (l[x] != *cell)
      ++x;
    auto lx = Refiner::individualize(l, x);
    for (Point y = 0; y < n; ++y) {
      if (r[y] != *cell)
        continue;
      if (auto found = self(self, lx, Refiner::individualize(r, y)))
        return found;
    }
    return std::nullopt;
  };

  std::vector<Permutation> gens;
  for (std::size_t i = base.size(); i-- > 0;) {
    const auto& coloring = path[i];
    Point v = base[i];
    auto orbit_of_v = [&] {
      std::vector<bool> in(n, false);
      std::vector<Point> queue{v};
      in[v] = true;
      for (std::size_t k = 0; k < queue.size(); ++k)
        for (const auto& g : gens) {
          Point y = g(queue[k]);
          if (!in[y]) {
            in[y] = true;
            queue.push_back(y);
          }
        }
      return in;
    };
    auto in_orbit = orbit_of_v();
    for (Point w = 0; w < n; ++w) {
      if (coloring[w] != coloring[v] || in_orbit[w])
        continue;
      if (auto g = dfs(dfs, Refiner::individualize(coloring, v),
                       Refiner::individualize(coloring, w))) {
        gens.push_back(std::move(*g));
        in_orbit = orbit_of_v();
      }
    }
  }
  return generate_or_trivial(std::move(gens), n, base);
}

/// Canonical labeled form: the minimal encoding over the leaves of the
/// individualization-refinement tree, visiting one child per orbit of the
/// stabilizer of the individualized vertices. Returns (encoding, order)
/// where order[k] is the vertex placed at position k. Throws
/// OrderBoundExceeded after `leaf_bound` leaves.
inline std::pair<std::vector<std::uint32_t>, std::vector<Point>>
canonical_form(const FinStructure& m, std::uint64_t leaf_bound = 1000000)
{
  using detail::Refiner;
  const std::size_t n = m.size();
  if (n == 0)
    return {encode(m), {}};
  const PermGroup aut = automorphism_group(m);
  Refiner refiner(m);
  Refiner::Coloring c(n, 0);
  refiner.refine(c, nullptr);
  bool have = false;
  std::uint64_t leaves = 0;
  std::vector<std::uint32_t> best;
  std::vector<Point> best_order;
  std::vector<Point> prefix;
  auto recurse = [&](auto&& self, const Refiner::Coloring& col) -> void {
    auto cell = Refiner::first_nonsingleton(col);
    if (!cell) {
      if (++leaves > leaf_bound)
        throw Error(ErrorKind::OrderBoundExceeded, "canonical_form search too large");
      std::vector<Point> order(n);
      for (Point v = 0; v < n; ++v)
        order[col[v]] = v;
      std::vector<Point> pos(n);
      for (std::size_t i = 0; i < n; ++i)
        pos[order[i]] = static_cast<Point>(i);
      auto enc = encode(relabel(m, Permutation(pos)));
      if (!have || enc < best) {
        have = true;
        best = std::move(enc);
        best_order = std::move(order);
      }
      return;
    }
    const PermGroup stab = pointwise_stabilizer(aut, prefix);
    std::vector<bool> done(n, false);
    for (Point v = 0; v < n; ++v) {
      if (col[v] != *cell || done[v])
        continue;
      for (Point w : orbit(stab, v))
        done[w] = true;
      auto next = Refiner::individualize(col, v);
      refiner.refine(next, nullptr);
      prefix.push_back(v);
      self(self, next);
      prefix.pop_back();
    }
  };
  recurse(recurse, c);
  return {best, best_order};
}

inline bool isomorphic(const FinStructure& a, const FinStructure& b)
{
  return a.size() == b.size() && a.signature() == b.signature() &&
         canonical_form(a).first == canonical_form(b).first;
}

/// Every embedding (injective map preserving and reflecting all relations)
/// of A into M, as image arrays, in lexicographic order. Stops after
/// `limit` results. With `first_image`, only embeddings sending point 0
/// there are listed.
inline std::vector<std::vector<Point>> embeddings(const FinStructure& a, const FinStructure& m,
                                                  std::size_t limit = SIZE_MAX,
                                                  std::optional<Point> first_image = std::nullopt)
{
  if (!(a.signature() == m.signature()))
    throw Error(ErrorKind::SignatureMismatch, "embeddings: signatures differ");
  std::vector<std::vector<Point>> result;
  const std::size_t k = a.size();
  std::vector<Point> img(k);
  std::vector<bool> used(m.size(), false);

  // All tuples over positions 0..i that mention i, checked in both directions.
  auto compatible = [&](std::size_t i) {
    for (std::size_t s = 0; s < a.signature().size(); ++s) {
      const unsigned r = a.signature()[s].arity;
      Tuple idx(r, 0), ta(r), tm(r);
      for (;;) {
        bool mentions = false;
        for (unsigned p = 0; p < r; ++p) {
          ta[p] = idx[p];
          tm[p] = img[idx[p]];
          mentions = mentions || idx[p] == i;
        }
        if (mentions && a.holds(s, ta) != m.holds(s, tm))
          return false;
        unsigned p = 0;
        while (p < r && idx[p] == i) {
          idx[p] = 0;
          ++p;
        }
        if (p == r)
          break;
        ++idx[p];
      }
    }
    return true;
  };

  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      result.push_back(img);
      return;
    }
    for (Point x = 0; x < m.size() && result.size() < limit; ++x) {
      if (used[x] || (i == 0 && first_image && x != *first_image))
        continue;
      img[i] = x;
      if (!compatible(i))
        continue;
      used[x] = true;
      self(self, i + 1);
      used[x] = false;
    }
  };
  recurse(recurse, 0);
  return result;
}

/// Outcome of a homogeneity check: on failure, `source` and `target` are
/// ordered tuples inducing the same substructure such that no automorphism
/// maps one onto the other.
struct HomogeneityResult {
  bool homogeneous = true;
  std::vector<Point> source;
  std::vector<Point> target;
};

/// Checks that every isomorphism between induced substructures extends to
/// an automorphism, size by size, stopping at the first counterexample. Two
/// injective tuples with the same atomic type must lie in one Aut(M)-orbit;
/// per type this is a count against |G| / |G_(tuple)|.
inline HomogeneityResult is_homogeneous(const FinStructure& m,
                                        const std::optional<PermGroup>& aut = std::nullopt)
{
  const std::size_t n = m.size();
  const PermGroup g = aut ? *aut : automorphism_group(m);
  for (std::size_t s = 1; s < n; ++s) {
    struct TypeInfo {
      std::uint64_t count = 0;
      std::vector<Point> first;
    };
    std::map<std::vector<std::uint8_t>, TypeInfo> types;
    std::vector<Point> tuple;
    std::vector<bool> used(n, false);
    std::vector<std::uint8_t> code;

    // Bits for every relation tuple over positions 0..i mentioning i.
    auto extend_code = [&](std::size_t i) {
      for (std::size_t sym = 0; sym < m.signature().size(); ++sym) {
        const unsigned r = m.signature()[sym].arity;
        Tuple idx(r, 0), t(r);
        for (;;) {
          bool mentions = false;
          for (unsigned p = 0; p < r; ++p) {
            t[p] = tuple[idx[p]];
            mentions = mentions || idx[p] == i;
          }
          if (mentions)
            code.push_back(m.holds(sym, t) ? 1 : 0);
          unsigned p = 0;
          while (p < r && idx[p] == i) {
            idx[p] = 0;
            ++p;
          }
          if (p == r)
            break;
          ++idx[p];
        }
      }
    };

    auto enumerate = [&](auto&& self, auto&& visit) -> void {
      if (tuple.size() == s) {
        visit();
        return;
      }
      for (Point x = 0; x < n; ++x) {
        if (used[x])
          continue;
        used[x] = true;
        tuple.push_back(x);
        std::size_t mark = code.size();
        extend_code(tuple.size() - 1);
        self(self, visit);
        code.resize(mark);
        tuple.pop_back();
        used[x] = false;
      }
    };

    enumerate(enumerate, [&] {
      auto& info = types[code];
      if (info.count++ == 0)
        info.first = tuple;
    });

    for (const auto& [type, info] : types) {
      PermGroup rebased = g.with_base_prefix(info.first);
      std::uint64_t stab = 1;
      for (std::size_t i = s; i < rebased.levels().size(); ++i)
        stab *= rebased.levels()[i].orbit.size();
      std::uint64_t orbit_size = g.order() / stab;
      if (orbit_size == info.count)
        continue;
      HomogeneityResult bad{false, info.first, {}};
      enumerate(enumerate, [&] {
        if (!bad.target.empty() || code != type)
          return;
        if (!rebased.transporter_prefix(tuple))
          bad.target = tuple;
      });
      return bad;
    }
  }
  return {};
}

/// {a : the orbit of a under the pointwise stabilizer of A is {a}}.
inline std::vector<Point> dcl(const PermGroup& aut, const std::vector<Point>& a)
{
  PermGroup stab = pointwise_stabilizer(aut, a);
  std::vector<Point> result;
  for (Point x = 0; x < aut.degree(); ++x)
    if (orbit(stab, x).size() == 1)
      result.push_back(x);
  return result;
}

inline std::vector<Point> dcl(const FinStructure& m, const std::vector<Point>& a)
{
  return dcl(automorphism_group(m), a);
}

/// Finite surrogate for algebraic closure: points whose orbit under the
/// pointwise stabilizer of A has at most t elements. t = 1 is dcl.
inline std::vector<Point> acl_threshold(const PermGroup& aut, const std::vector<Point>& a,
                                        std::size_t t)
{
  if (t == 0)
    throw Error(ErrorKind::Usage, "acl threshold must be positive");
  PermGroup stab = pointwise_stabilizer(aut, a);
  std::vector<Point> result;
  for (Point x = 0; x < aut.degree(); ++x)
    if (orbit(stab, x).size() <= t)
      result.push_back(x);
  return result;
}

inline std::vector<Point> acl_threshold(const FinStructure& m, const std::vector<Point>& a,
                                        std::size_t t)
{
  return acl_threshold(automorphism_group(m), a, t);
}

/// One relation symbol per G-orbit on r-tuples (repetitions allowed) for
/// each arity r <= k. Symbols are named `O<r>_<j>`, orbits ordered by their
/// smallest tuple.
inline FinStructure canonical_relational(const PermGroup& g, std::size_t k)
{
  const std::size_t n = g.degree();
  if (k > n)
    throw Error(ErrorKind::Usage, "canonical_relational arity bound exceeds degree");
  std::vector<Symbol> symbols;
  std::vector<std::vector<Tuple>> tables;
  for (std::size_t r = 1; r <= k; ++r) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < r; ++i)
      total *= n;
    auto decode = [&](std::size_t code) {
      Tuple t(r);
      for (std::size_t i = r; i-- > 0;) {
        t[i] = static_cast<Point>(code % n);
        code /= n;
      }
      return t;
    };
    auto encode_tuple = [&](const Tuple& t) {
      std::size_t code = 0;
      for (Point x : t)
        code = code * n + x;
      return code;
    };
    std::vector<std::int64_t> orbit_id(total, -1);
    std::int64_t next = 0;
    for (std::size_t start = 0; start < total; ++start) {
      if (orbit_id[start] >= 0)
        continue;
      std::vector<Tuple> members;
      std::vector<std::size_t> queue{start};
      orbit_id[start] = next;
      for (std::size_t q = 0; q < queue.size(); ++q) {
        Tuple t = decode(queue[q]);
        members.push_back(t);
        for (const auto& s : g.generators()) {
          Tuple u(r);
          for (std::size_t i = 0; i < r; ++i)
            u[i] = s(t[i]);
          auto c = encode_tuple(u);
          if (orbit_id[c] < 0) {
            orbit_id[c] = next;
            queue.push_back(c);
          }
        }
      }
      symbols.push_back({"O" + std::to_string(r) + "_" + std::to_string(next),
                         static_cast<unsigned>(r)});
      tables.push_back(std::move(members));
      ++next;
    }
  }
  return FinStructure(n, Signature(std::move(symbols)), std::move(tables));
}

} // namespace exaut
