#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "exaut/error.hpp"
#include "exaut/group.hpp"
#include "exaut/perm.hpp"

namespace exaut {

/// An abstract finite group as a Cayley table over element indices; index 0
/// is the identity. The table is validated on construction.
class FiniteGroup {
public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<std::size_t>>{{0}}) {}

  explicit FiniteGroup(std::vector<std::vector<std::size_t>> table,
                       std::vector<std::string> names = {})
  : table_(std::move(table)), names_(std::move(names))
  {
    validate();
  }

  std::size_t order() const noexcept { return table_.size(); }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }

  std::size_t inverse(std::size_t a) const
  {
    for (std::size_t b = 0; b < order(); ++b)
      if (table_[a][b] == 0)
        return b;
    return 0;
  }

  std::size_t element_order(std::size_t a) const
  {
    std::size_t k = 1;
    for (std::size_t x = a; x != 0; x = mul(x, a))
      ++k;
    return k;
  }

  std::string name(std::size_t a) const
  {
    return a < names_.size() ? names_[a] : std::to_string(a);
  }

  /// Closure of `gens` as a sorted list of element indices.
  std::vector<std::size_t> closure(const std::vector<std::size_t>& gens) const
  {
    std::vector<bool> in(order(), false);
    std::vector<std::size_t> result{0};
    in[0] = true;
    for (std::size_t k = 0; k < result.size(); ++k)
      for (std::size_t s : gens) {
        std::size_t y = mul(result[k], s);
        if (!in[y]) {
          in[y] = true;
          result.push_back(y);
        }
      }
    std::sort(result.begin(), result.end());
    return result;
  }

  /// Greedy generating set: elements considered in the given priority order,
  /// each kept only if it enlarges the subgroup generated so far.
  std::vector<std::size_t> greedy_generators(const std::vector<std::size_t>& priority) const
  {
    std::vector<std::size_t> gens;
    std::vector<std::size_t> current{0};
    for (std::size_t x : priority) {
      if (current.size() == order())
        break;
      if (std::binary_search(current.begin(), current.end(), x))
        continue;
      gens.push_back(x);
      current = closure(gens);
    }
    return gens;
  }

  /// A small generating set, preferring elements of large order.
  std::vector<std::size_t> generators() const
  {
    std::vector<std::size_t> priority(order());
    std::iota(priority.begin(), priority.end(), std::size_t{0});
    std::vector<std::size_t> orders(order());
    for (std::size_t a = 0; a < order(); ++a)
      orders[a] = element_order(a);
    std::stable_sort(priority.begin(), priority.end(),
                     [&](std::size_t a, std::size_t b) { return orders[a] > orders[b]; });
    return greedy_generators(priority);
  }

  /// Cayley table of the group generated by a permutation group's elements,
  /// sorted by image array so that the identity comes first.
  static FiniteGroup from_perm_group(const PermGroup& g, std::uint64_t bound = 5040)
  {
    auto elems = g.elements(bound);
    std::unordered_map<Permutation, std::size_t, PermutationHash> index;
    for (std::size_t i = 0; i < elems.size(); ++i)
      index.emplace(elems[i], i);
    std::vector<std::vector<std::size_t>> table(elems.size(),
                                                std::vector<std::size_t>(elems.size()));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      names.push_back(elems[i].to_string());
      for (std::size_t j = 0; j < elems.size(); ++j)
        table[i][j] = index.at(elems[i] * elems[j]);
    }
    return FiniteGroup(std::move(table), std::move(names));
  }

private:
  void validate() const
  {
    const std::size_t n = table_.size();
    if (n == 0)
      throw Error(ErrorKind::InvalidTable, "empty table");
    for (const auto& row : table_) {
      if (row.size() != n)
        throw Error(ErrorKind::InvalidTable, "table is not square");
      std::vector<bool> seen(n, false);
      for (std::size_t x : row) {
        if (x >= n || seen[x])
          throw Error(ErrorKind::InvalidTable, "row is not a permutation of the elements");
        seen[x] = true;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<bool> seen(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        if (seen[table_[i][j]])
          throw Error(ErrorKind::InvalidTable, "column is not a permutation of the elements");
        seen[table_[i][j]] = true;
      }
    }
    for (std::size_t a = 0; a < n; ++a)
      if (table_[0][a] != a || table_[a][0] != a)
        throw Error(ErrorKind::InvalidTable, "index 0 is not the identity");
    // Light's associativity test: (x*g)*y == x*(g*y) for g in a generating set.
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<std::size_t> gens;
    std::vector<bool> reached(n, false);
    reached[0] = true;
    std::size_t reached_count = 1;
    for (std::size_t a = 1; a < n && reached_count < n; ++a) {
      if (reached[a])
        continue;
      gens.push_back(a);
      // Words over gens in the magma; the Latin square property keeps this finite.
      std::vector<std::size_t> frontier;
      for (std::size_t x = 0; x < n; ++x)
        if (reached[x])
          frontier.push_back(x);
      for (std::size_t k = 0; k < frontier.size(); ++k)
        for (std::size_t s : gens)
          for (std::size_t y : {table_[frontier[k]][s], table_[s][frontier[k]]})
            if (!reached[y]) {
              reached[y] = true;
              ++reached_count;
              frontier.push_back(y);
            }
    }
    for (std::size_t g : gens)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (table_[table_[x][g]][y] != table_[x][table_[g][y]])
            throw Error(ErrorKind::InvalidTable, "operation is not associative");
  }

  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::string> names_;
};

/// An explicit isomorphism as an element-index map, found by backtracking
/// over images of a generating set. Empty when the groups are not isomorphic.
/// Throws OrderBoundExceeded above `bound`.
inline std::optional<std::vector<std::size_t>>
group_isomorphism(const FiniteGroup& g, const FiniteGroup& h, std::size_t bound = 2000)
{
  const std::size_t n = g.order();
  if (n != h.order())
    return std::nullopt;
  if (n > bound)
    throw Error(ErrorKind::OrderBoundExceeded, "isomorphism search capped at order " +
                                                 std::to_string(bound));
  std::vector<std::size_t> g_orders(n), h_orders(n);
  for (std::size_t a = 0; a < n; ++a) {
    g_orders[a] = g.element_order(a);
    h_orders[a] = h.element_order(a);
  }
  {
    auto x = g_orders, y = h_orders;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y)
      return std::nullopt;
  }
  const auto gens = g.generators();
  std::vector<std::size_t> images(gens.size());
  std::vector<std::size_t> map(n);

  // Extends the map over <gens[0..t)> by breadth-first words; false on a clash.
  auto consistent = [&](std::size_t t) {
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::fill(map.begin(), map.end(), unset);
    std::vector<bool> used(n, false);
    map[0] = 0;
    used[0] = true;
    std::vector<std::size_t> queue{0};
    for (std::size_t k = 0; k < queue.size(); ++k) {
      std::size_t x = queue[k];
      for (std::size_t s = 0; s < t; ++s) {
        std::size_t y = g.mul(x, gens[s]);
        std::size_t fy = h.mul(map[x], images[s]);
        if (map[y] == unset) {
          if (used[fy])
            return false;
          map[y] = fy;
          used[fy] = true;
          queue.push_back(y);
        } else if (map[y] != fy) {
          return false;
        }
      }
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t t) -> bool {
    if (t == gens.size())
      return consistent(t);
    for (std::size_t cand = 0; cand < n; ++cand) {
      if (h_orders[cand] != g_orders[gens[t]])
        continue;
      images[t] = cand;
      if (consistent(t + 1) && self(self, t + 1))
        return true;
    }
    return false;
  };
  if (!search(search, 0))
    return std::nullopt;
  consistent(gens.size());
  return map;
}

inline bool is_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                           const std::vector<std::size_t>& map)
{
  if (g.order() != h.order() || map.size() != g.order())
    return false;
  std::vector<bool> used(h.order(), false);
  for (std::size_t x : map) {
    if (x >= h.order() || used[x])
      return false;
    used[x] = true;
  }
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (map[g.mul(a, b)] != h.mul(map[a], map[b]))
        return false;
  return true;
}

/// Cayley table of G/N on cosets, enumerated breadth-first from the identity
/// coset over the generators of G. Throws NotASubgroup / NotNormal.
inline FiniteGroup quotient_group(const PermGroup& g, const PermGroup& n,
                                  std::size_t index_bound = 5040)
{
  if (!is_subgroup(n, g))
    throw Error(ErrorKind::NotASubgroup, "N is not contained in G");
  if (!is_normal(n, g))
    throw Error(ErrorKind::NotNormal, "N is not normal in G");
  const std::uint64_t index = g.order() / n.order();
  if (index > index_bound)
    throw Error(ErrorKind::OrderBoundExceeded, "quotient order exceeds bound");
  std::vector<Permutation> reps{Permutation(g.degree())};
  auto find = [&](const Permutation& x) -> std::size_t {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (n.contains(reps[i].inverse() * x))
        return i;
    return reps.size();
  };
  for (std::size_t k = 0; k < reps.size(); ++k)
    for (const auto& s : g.generators()) {
      Permutation y = reps[k] * s;
      if (find(y) == reps.size())
        reps.push_back(y);
    }
  std::vector<std::vector<std::size_t>> table(reps.size(), std::vector<std::size_t>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j)
      table[i][j] = find(reps[i] * reps[j]);
  std::vector<std::string> names;
  for (const auto& r : reps)
    names.push_back(r.to_string() + "N");
  return FiniteGroup(std::move(table), std::move(names));
}

namespace groups {

inline FiniteGroup cyclic(std::size_t n)
{
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      t[a][b] = (a + b) % n;
  return FiniteGroup(std::move(t));
}

inline FiniteGroup klein_four()
{
  std::vector<std::vector<std::size_t>> t(4, std::vector<std::size_t>(4));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      t[a][b] = a ^ b;
  return FiniteGroup(std::move(t), {"e", "a", "b", "ab"});
}

/// Dihedral group of order 2n: index r < n is rotation r, n + r is s r.
inline FiniteGroup dihedral(std::size_t n)
{
  const std::size_t m = 2 * n;
  std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      std::size_t xr = x % n, yr = y % n;
      bool xs = x >= n, ys = y >= n;
      // (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j)
      std::size_t r = ys ? (n - xr + yr) % n : (xr + yr) % n;
      t[x][y] = ((xs != ys) ? n : 0) + r;
    }
  return FiniteGroup(std::move(t));
}

inline FiniteGroup symmetric3()
{
  return FiniteGroup::from_perm_group(PermGroup::symmetric(3));
}

/// Quaternion group: 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k.
inline FiniteGroup quaternion()
{
  // unit products: basis index 0=1, 1=i, 2=j, 3=k; entry = (sign, basis)
  const int basis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
  for (std::size_t x = 0; x < 8; ++x)
    for (std::size_t y = 0; y < 8; ++y) {
      std::size_t bx = x / 2, by = y / 2;
      int s = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * sign[bx][by];
      t[x][y] = static_cast<std::size_t>(basis[bx][by]) * 2 + (s < 0 ? 1 : 0);
    }
  return FiniteGroup(std::move(t), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

/// Named built-ins: Z1..Z8, V4, S3, D4 (order 8), Q8.
inline std::optional<FiniteGroup> by_name(const std::string& name)
{
  if (name.size() == 2 && name[0] == 'Z' && name[1] >= '1' && name[1] <= '8')
    return cyclic(static_cast<std::size_t>(name[1] - '0'));
  if (name == "V4")
    return klein_four();
  if (name == "S3")
    return symmetric3();
  if (name == "D4")
    return dihedral(4);
  if (name == "Q8")
    return quaternion();
  return std::nullopt;
}

inline std::vector<std::string> catalog_names()
{
  return {"Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "V4", "S3", "D4", "Q8"};
}

} // namespace groups

} // namespace exaut
