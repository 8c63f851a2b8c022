#pragma once

// Brute-force reference computations used only by the test suites. Nothing
// here calls into the Schreier-Sims, refinement, or cyclic-extension code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "exaut/perm.hpp"
#include "exaut/structure.hpp"

namespace oracle {

using exaut::Permutation;
using exaut::Point;

inline std::set<Permutation> closure(const std::vector<Permutation>& gens)
{
  std::set<Permutation> result{Permutation(gens.front().degree())};
  std::vector<Permutation> queue(result.begin(), result.end());
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& s : gens) {
      Permutation y = queue[k] * s;
      if (result.insert(y).second)
        queue.push_back(y);
    }
  return result;
}

inline std::vector<Permutation> all_permutations(std::size_t n)
{
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<Permutation> result;
  do {
    result.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return result;
}

inline std::set<Permutation> brute_automorphisms(const exaut::FinStructure& m)
{
  std::set<Permutation> result;
  for (const auto& p : all_permutations(m.size())) {
    bool ok = true;
    for (std::size_t s = 0; s < m.signature().size() && ok; ++s)
      for (auto t : m.tuples(s)) {
        for (auto& x : t)
          x = p(x);
        if (!m.holds(s, t)) {
          ok = false;
          break;
        }
      }
    if (ok)
      result.insert(p);
  }
  return result;
}

inline Permutation random_permutation(std::size_t n, std::mt19937_64& rng)
{
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t i = n; i > 1; --i)
    std::swap(img[i - 1], img[rng() % i]);
  return Permutation(img);
}

/// Every subgroup of a group with at most 24 elements, as bitmasks over the
/// given element list: all subsets containing the identity that are closed
/// under multiplication. `elems[0]` must be the identity.
inline std::set<std::uint32_t> subgroup_masks(const std::vector<Permutation>& elems)
{
  const std::size_t n = elems.size();
  std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      mul[i][j] = static_cast<std::size_t>(
        std::find(elems.begin(), elems.end(), elems[i] * elems[j]) - elems.begin());
  std::set<std::uint32_t> result;
  const std::uint32_t limit = std::uint32_t{1} << (n - 1);
  std::vector<std::size_t> members;
  for (std::uint32_t rest = 0; rest < limit; ++rest) {
    std::uint32_t mask = (rest << 1) | 1u;
    members.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u)
        members.push_back(i);
    bool closed = true;
    for (std::size_t a : members) {
      for (std::size_t b : members)
        if (!(mask >> mul[a][b] & 1u)) {
          closed = false;
          break;
        }
      if (!closed)
        break;
    }
    if (closed)
      result.insert(mask);
  }
  return result;
}

} // namespace oracle
