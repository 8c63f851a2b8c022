#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "exaut/error.hpp"
#include "exaut/group.hpp"

namespace exaut {

struct SubgroupEntry {
  PermGroup group;
  bool is_normal_in_parent = false;
  std::uint64_t index_in_parent = 1;
  /// Sorted indices into the parent's sorted element list.
  std::vector<std::size_t> elements;
};

struct SubgroupList {
  PermGroup parent;
  std::vector<SubgroupEntry> subgroups;
};

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline bool test_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1u; }
inline void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

} // namespace detail

/// Every subgroup of G, by cyclic extension: starting from the trivial group,
/// join subgroups found so far with cyclic subgroups until nothing new
/// appears. Output is sorted by order, then by element-index set.
/// Throws OrderBoundExceeded when |G| exceeds `order_bound`.
inline SubgroupList all_subgroups(const PermGroup& g, std::uint64_t order_bound = 1000)
{
  using detail::Bits;
  if (g.order() > order_bound)
    throw Error(ErrorKind::OrderBoundExceeded,
                "all_subgroups: order " + std::to_string(g.order()) + " exceeds bound " +
                  std::to_string(order_bound));
  const auto elems = g.elements(order_bound);
  const std::size_t n = elems.size();
  std::unordered_map<Permutation, std::size_t, PermutationHash> index;
  for (std::size_t i = 0; i < n; ++i)
    index.emplace(elems[i], i);
  std::vector<std::vector<std::uint32_t>> mul(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      mul[i][j] = static_cast<std::uint32_t>(index.at(elems[i] * elems[j]));
  const std::size_t words = (n + 63) / 64;

  auto close = [&](const std::vector<std::size_t>& gens) {
    Bits bits(words, 0);
    std::vector<std::size_t> members{0};
    detail::set_bit(bits, 0);
    for (std::size_t k = 0; k < members.size(); ++k)
      for (std::size_t s : gens) {
        std::size_t y = mul[members[k]][s];
        if (!detail::test_bit(bits, y)) {
          detail::set_bit(bits, y);
          members.push_back(y);
        }
      }
    return bits;
  };

  struct Found {
    Bits bits;
    std::vector<std::size_t> gens;
  };
  std::map<Bits, std::size_t> seen;
  std::vector<Found> found;
  auto add = [&](std::vector<std::size_t> gens) {
    Bits bits = close(gens);
    if (seen.contains(bits))
      return false;
    seen.emplace(bits, found.size());
    found.push_back({std::move(bits), std::move(gens)});
    return true;
  };

  add({});
  // Cyclic subgroups, one generator each.
  std::vector<std::size_t> cyclic_gens;
  for (std::size_t x = 1; x < n; ++x)
    if (add({x}))
      cyclic_gens.push_back(x);

  std::size_t layer_begin = 1;
  while (layer_begin < found.size()) {
    std::size_t layer_end = found.size();
    for (std::size_t k = layer_begin; k < layer_end; ++k)
      for (std::size_t c : cyclic_gens) {
        if (detail::test_bit(found[k].bits, c))
          continue;
        auto gens = found[k].gens;
        gens.push_back(c);
        add(std::move(gens));
      }
    layer_begin = layer_end;
  }

  SubgroupList result{g, {}};
  for (const auto& f : found) {
    SubgroupEntry e;
    for (std::size_t i = 0; i < n; ++i)
      if (detail::test_bit(f.bits, i))
        e.elements.push_back(i);
    std::vector<Permutation> gens;
    for (std::size_t s : f.gens)
      gens.push_back(elems[s]);
    e.group = generate_or_trivial(std::move(gens), g.degree());
    e.index_in_parent = n / e.elements.size();
    e.is_normal_in_parent = true;
    for (const auto& x : g.generators()) {
      std::size_t xi = index.at(x);
      std::size_t xinv = index.at(x.inverse());
      for (std::size_t s : f.gens)
        if (!detail::test_bit(f.bits, mul[mul[xi][s]][xinv]))
          e.is_normal_in_parent = false;
    }
    result.subgroups.push_back(std::move(e));
  }
  std::sort(result.subgroups.begin(), result.subgroups.end(),
            [](const SubgroupEntry& a, const SubgroupEntry& b) {
              if (a.elements.size() != b.elements.size())
                return a.elements.size() < b.elements.size();
              return a.elements < b.elements;
            });
  return result;
}

} // namespace exaut
