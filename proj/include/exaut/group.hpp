#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "exaut/error.hpp"
#include "exaut/perm.hpp"

namespace exaut {

/// A permutation group given by generators, indexed by a base and strong
/// generating set built with deterministic Schreier-Sims.
class PermGroup {
public:
  struct Level {
    Point base = 0;
    /// Strong generators whose first moved base point is this level's base.
    std::vector<Permutation> gens;
    std::vector<Point> orbit;
    /// slot[x] indexes `reps` for x in the basic orbit, -1 otherwise.
    std::vector<std::int32_t> slot;
    /// reps[k](base) == orbit[k]
    std::vector<Permutation> reps;
  };

  PermGroup() = default;

  /// bsgs_build. Throws DegreeMismatch on an empty list or unequal degrees.
  explicit PermGroup(std::vector<Permutation> gens, std::span<const Point> base_prefix = {})
  {
    if (gens.empty())
      throw Error(ErrorKind::DegreeMismatch, "generator list is empty");
    degree_ = gens.front().degree();
    for (const auto& g : gens)
      if (g.degree() != degree_)
        throw Error(ErrorKind::DegreeMismatch, "generators have unequal degrees");
    generators_ = std::move(gens);
    schreier_sims(generators_, base_prefix);
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup({Permutation(degree)}); }

  static PermGroup symmetric(std::size_t degree)
  {
    if (degree < 2)
      return trivial(degree);
    std::vector<Point> cycle(degree);
    std::iota(cycle.begin(), cycle.end(), Point{0});
    return PermGroup({Permutation::from_cycles(degree, {{0, 1}}),
                      Permutation::from_cycles(degree, {cycle})});
  }

  static PermGroup cyclic(std::size_t degree)
  {
    std::vector<Point> cycle(degree);
    std::iota(cycle.begin(), cycle.end(), Point{0});
    return PermGroup({Permutation::from_cycles(degree, {cycle})});
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }

  std::vector<Point> base() const
  {
    std::vector<Point> result;
    for (const auto& l : levels_)
      result.push_back(l.base);
    return result;
  }

  std::vector<Permutation> strong_generators() const
  {
    std::vector<Permutation> result;
    for (const auto& l : levels_)
      result.insert(result.end(), l.gens.begin(), l.gens.end());
    return result;
  }

  /// Generators of the stabilizer of the first `k` base points.
  std::vector<Permutation> strong_generators_from(std::size_t k) const
  {
    std::vector<Permutation> result;
    for (std::size_t i = k; i < levels_.size(); ++i)
      result.insert(result.end(), levels_[i].gens.begin(), levels_[i].gens.end());
    return result;
  }

  std::uint64_t order() const noexcept
  {
    std::uint64_t result = 1;
    for (const auto& l : levels_)
      result *= l.orbit.size();
    return result;
  }

  bool is_trivial() const noexcept { return order() == 1; }

  /// Residue of sifting `g` from level `from`, and the level where it stopped.
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from = 0) const
  {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const auto& l = levels_[i];
      auto s = l.slot[g(l.base)];
      if (s < 0)
        return {std::move(g), i};
      g = l.reps[static_cast<std::size_t>(s)].inverse() * g;
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(const Permutation& g) const
  {
    if (g.degree() != degree_)
      return false;
    return sift(g).first.is_identity();
  }

  /// The same group re-indexed so that its base starts with `prefix`.
  PermGroup with_base_prefix(std::span<const Point> prefix) const
  {
    for (Point p : prefix)
      if (p >= degree_)
        throw Error(ErrorKind::PointOutOfRange, "base point out of range");
    PermGroup result;
    result.degree_ = degree_;
    result.generators_ = generators_;
    auto strong = strong_generators();
    if (strong.empty())
      strong.push_back(Permutation(degree_));
    result.schreier_sims(strong, prefix);
    return result;
  }

  /// Calls `fn(g)` for every element, in transversal-product order.
  template <typename Fn>
  void for_each_element(Fn&& fn) const
  {
    Permutation current(degree_);
    walk(0, current, fn);
  }

  /// All elements sorted by image array; throws OrderBoundExceeded above `bound`.
  std::vector<Permutation> elements(std::uint64_t bound = 100000) const
  {
    if (order() > bound)
      throw Error(ErrorKind::OrderBoundExceeded,
                  "group order " + std::to_string(order()) + " exceeds " + std::to_string(bound));
    std::vector<Permutation> result;
    result.reserve(order());
    for_each_element([&](const Permutation& g) { result.push_back(g); });
    std::sort(result.begin(), result.end());
    return result;
  }

  template <typename Rng>
  Permutation random_element(Rng& rng) const
  {
    Permutation g(degree_);
    for (const auto& l : levels_) {
      auto k = static_cast<std::size_t>(rng() % l.reps.size());
      g = g * l.reps[k];
    }
    return g;
  }

  /// Some g with g(src[i]) == dst[i] for all i, if one exists.
  std::optional<Permutation> transporter(const std::vector<Point>& src,
                                         const std::vector<Point>& dst) const
  {
    return with_base_prefix(src).transporter_prefix(dst);
  }

  /// As transporter(), assuming the base already starts with the source tuple.
  std::optional<Permutation> transporter_prefix(const std::vector<Point>& dst) const
  {
    Permutation g(degree_);
    for (std::size_t i = 0; i < dst.size(); ++i) {
      const auto& l = levels_[i];
      Point p = g.inverse()(dst[i]);
      auto s = l.slot[p];
      if (s < 0)
        return std::nullopt;
      g = g * l.reps[static_cast<std::size_t>(s)];
    }
    return g;
  }

private:
  template <typename Fn>
  void walk(std::size_t level, const Permutation& prefix, Fn& fn) const
  {
    if (level == levels_.size()) {
      fn(prefix);
      return;
    }
    for (const auto& rep : levels_[level].reps)
      walk(level + 1, prefix * rep, fn);
  }

  void rebuild_orbit(std::size_t i)
  {
    auto& l = levels_[i];
    l.orbit.assign(1, l.base);
    l.slot.assign(degree_, -1);
    l.reps.assign(1, Permutation(degree_));
    l.slot[l.base] = 0;
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      Point x = l.orbit[k];
      for (std::size_t j = i; j < levels_.size(); ++j) {
        for (const auto& s : levels_[j].gens) {
          Point y = s(x);
          if (l.slot[y] < 0) {
            l.slot[y] = static_cast<std::int32_t>(l.orbit.size());
            l.orbit.push_back(y);
            l.reps.push_back(s * l.reps[k]);
          }
        }
      }
    }
  }

  void add_strong(Permutation residue, std::size_t level)
  {
    if (level == levels_.size()) {
      Level l;
      l.base = static_cast<Point>(residue.first_moved());
      levels_.push_back(std::move(l));
    }
    levels_[level].gens.push_back(std::move(residue));
  }

  void schreier_sims(const std::vector<Permutation>& gens, std::span<const Point> prefix)
  {
    levels_.clear();
    std::set<Point> used;
    for (Point p : prefix) {
      if (!used.insert(p).second)
        continue;
      Level l;
      l.base = p;
      levels_.push_back(std::move(l));
    }
    for (std::size_t i = 0; i < levels_.size(); ++i)
      rebuild_orbit(i);
    for (const auto& g : gens) {
      auto [residue, level] = sift(g);
      if (!residue.is_identity()) {
        add_strong(std::move(residue), level);
        for (std::size_t i = 0; i < levels_.size(); ++i)
          rebuild_orbit(i);
      }
    }
    // Schreier generators of every level must sift through the levels below.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = levels_.size(); i-- > 0 && !changed;) {
        rebuild_orbit(i);
        const auto& l = levels_[i];
        std::vector<Permutation> level_gens = strong_generators_from(i);
        for (std::size_t k = 0; !changed && k < l.orbit.size(); ++k) {
          for (const auto& s : level_gens) {
            Point y = s(l.orbit[k]);
            const auto& u_y = l.reps[static_cast<std::size_t>(l.slot[y])];
            Permutation h = u_y.inverse() * s * l.reps[k];
            auto [residue, level] = sift(std::move(h), i + 1);
            if (!residue.is_identity()) {
              add_strong(std::move(residue), level);
              for (std::size_t j = 0; j < levels_.size(); ++j)
                rebuild_orbit(j);
              changed = true;
              break;
            }
          }
        }
      }
    }
  }

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Level> levels_;
};

/// Smallest G-invariant set containing `a`, sorted.
inline std::vector<Point> orbit(const PermGroup& g, Point a)
{
  if (a >= g.degree())
    throw Error(ErrorKind::PointOutOfRange,
                "point " + std::to_string(a) + " >= degree " + std::to_string(g.degree()));
  std::vector<Point> result{a};
  std::vector<bool> seen(g.degree(), false);
  seen[a] = true;
  for (std::size_t k = 0; k < result.size(); ++k)
    for (const auto& s : g.generators()) {
      Point y = s(result[k]);
      if (!seen[y]) {
        seen[y] = true;
        result.push_back(y);
      }
    }
  std::sort(result.begin(), result.end());
  return result;
}

/// Orbit partition of the domain, each orbit sorted, orbits ordered by minimum.
inline std::vector<std::vector<Point>> orbits(const PermGroup& g)
{
  std::vector<std::vector<Point>> result;
  std::vector<bool> seen(g.degree(), false);
  for (Point a = 0; a < g.degree(); ++a) {
    if (seen[a])
      continue;
    auto o = orbit(g, a);
    for (Point x : o)
      seen[x] = true;
    result.push_back(std::move(o));
  }
  return result;
}

inline bool is_subgroup(const PermGroup& h, const PermGroup& g)
{
  if (h.degree() != g.degree())
    return false;
  for (const auto& x : h.generators())
    if (!g.contains(x))
      return false;
  return true;
}

inline bool same_group(const PermGroup& a, const PermGroup& b)
{
  return a.order() == b.order() && is_subgroup(a, b);
}

/// Group generated by `gens`, or the trivial group of `degree` when empty.
inline PermGroup generate_or_trivial(std::vector<Permutation> gens, std::size_t degree,
                                     std::span<const Point> base_prefix = {})
{
  std::erase_if(gens, [](const Permutation& p) { return p.is_identity(); });
  if (gens.empty())
    return PermGroup::trivial(degree);
  return PermGroup(std::move(gens), base_prefix);
}

inline void check_points(const PermGroup& g, const std::vector<Point>& points)
{
  for (Point p : points)
    if (p >= g.degree())
      throw Error(ErrorKind::PointOutOfRange,
                  "point " + std::to_string(p) + " >= degree " + std::to_string(g.degree()));
}

/// {g in G : g(a) = a for all a in A}, via a base change putting A first.
inline PermGroup pointwise_stabilizer(const PermGroup& g, const std::vector<Point>& points)
{
  check_points(g, points);
  std::vector<Point> prefix(points);
  std::sort(prefix.begin(), prefix.end());
  prefix.erase(std::unique(prefix.begin(), prefix.end()), prefix.end());
  PermGroup rebased = g.with_base_prefix(prefix);
  auto gens = rebased.strong_generators_from(prefix.size());
  auto rest = rebased.base();
  rest.erase(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(prefix.size()));
  return generate_or_trivial(std::move(gens), g.degree(), rest);
}

/// Backtrack over the first |A| levels of a stabilizer chain with base prefix
/// A. Each leaf is a coset representative of the pointwise stabilizer of A;
/// `keep_partial(i, image)` prunes on the image of A[i], and `accept(g)` tests
/// a full representative. The property must be invariant under right
/// multiplication by the pointwise stabilizer of A.
template <typename KeepPartial, typename Accept>
PermGroup coset_search(const PermGroup& g, const std::vector<Point>& points,
                       KeepPartial&& keep_partial, Accept&& accept)
{
  check_points(g, points);
  PermGroup rebased = g.with_base_prefix(points);
  std::vector<Permutation> gens = rebased.strong_generators_from(points.size());
  PermGroup found = generate_or_trivial(gens, g.degree());

  auto recurse = [&](auto&& self, std::size_t level, const Permutation& prefix) -> void {
    if (level == points.size()) {
      if (!found.contains(prefix) && accept(prefix)) {
        gens.push_back(prefix);
        found = generate_or_trivial(gens, g.degree());
      }
      return;
    }
    const auto& l = rebased.levels()[level];
    std::vector<std::size_t> order(l.reps.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return l.orbit[a] < l.orbit[b]; });
    for (std::size_t k : order) {
      Permutation next = prefix * l.reps[k];
      if (keep_partial(level, next(points[level])))
        self(self, level + 1, next);
    }
  };
  recurse(recurse, 0, Permutation(g.degree()));
  return found;
}

/// {g in G : g(A) = A}.
inline PermGroup setwise_stabilizer(const PermGroup& g, const std::vector<Point>& points)
{
  std::vector<Point> sorted(points);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  check_points(g, sorted);
  std::vector<bool> in_set(g.degree(), false);
  for (Point p : sorted)
    in_set[p] = true;
  return coset_search(
    g, sorted, [&](std::size_t, Point image) { return in_set[image]; },
    [](const Permutation&) { return true; });
}

/// Subgroup generated by the conjugates c h c^-1 of the generators of h.
inline PermGroup conjugate_group(const Permutation& c, const PermGroup& h)
{
  std::vector<Permutation> gens;
  for (const auto& x : h.generators())
    gens.push_back(conjugate(c, x));
  return generate_or_trivial(std::move(gens), h.degree());
}

/// True iff h <= g and every generator of g normalizes h.
/// Throws NotASubgroup when h is not contained in g.
inline bool is_normal(const PermGroup& h, const PermGroup& g)
{
  if (!is_subgroup(h, g))
    throw Error(ErrorKind::NotASubgroup, "first argument is not a subgroup of the second");
  for (const auto& x : g.generators())
    for (const auto& y : h.generators())
      if (!h.contains(conjugate(x, y)))
        return false;
  return true;
}

} // namespace exaut
