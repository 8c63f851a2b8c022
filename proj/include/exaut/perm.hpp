#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "exaut/error.hpp"

namespace exaut {

using Point = std::uint32_t;

/// A bijection of {0, ..., n-1} stored as its image array.
///
/// Composition follows function notation: `compose(p, q)(x) == p(q(x))`.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::size_t degree)
  : images_(degree)
  {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  /// Throws if `images` is not a bijection of {0..n-1}.
  explicit Permutation(std::vector<Point> images)
  : images_(std::move(images))
  {
    std::vector<bool> seen(images_.size(), false);
    for (Point x : images_) {
      if (x >= images_.size() || seen[x])
        throw Error(ErrorKind::Parse, "image array is not a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Builds a permutation from disjoint or non-disjoint cycles; cycles are
  /// applied right to left, as in `(0 1)(1 2)`.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles)
  {
    Permutation result(degree);
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
      const auto& cycle = *it;
      Permutation c(degree);
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (cycle[i] >= degree)
          throw Error(ErrorKind::PointOutOfRange,
                      "cycle point " + std::to_string(cycle[i]) + " >= degree " +
                        std::to_string(degree));
        c.images_[cycle[i]] = cycle[(i + 1) % cycle.size()];
      }
      std::vector<Point> check = c.images_;
      std::sort(check.begin(), check.end());
      if (std::adjacent_find(check.begin(), check.end()) != check.end())
        throw Error(ErrorKind::Parse, "cycle repeats a point");
      result = c * result;
    }
    return result;
  }

  /// Parses cycle notation such as `(0 1)(2 3 4)`; `()` or an empty string is
  /// the identity.
  static Permutation parse(std::size_t degree, std::string_view text)
  {
    std::vector<std::vector<Point>> cycles;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ','))
        ++i;
    };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(')
        throw Error(ErrorKind::Parse, "expected '(' in cycle notation: " + std::string(text));
      ++i;
      std::vector<Point> cycle;
      for (;;) {
        skip_ws();
        if (i >= text.size())
          throw Error(ErrorKind::Parse, "unterminated cycle: " + std::string(text));
        if (text[i] == ')') {
          ++i;
          break;
        }
        if (text[i] < '0' || text[i] > '9')
          throw Error(ErrorKind::Parse, "bad character in cycle: " + std::string(text));
        std::uint64_t value = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9')
          value = value * 10 + static_cast<std::uint64_t>(text[i++] - '0');
        if (value >= degree)
          throw Error(ErrorKind::PointOutOfRange,
                      "point " + std::to_string(value) + " >= degree " + std::to_string(degree));
        if (std::find(cycle.begin(), cycle.end(), static_cast<Point>(value)) != cycle.end())
          throw Error(ErrorKind::Parse, "repeated point in cycle: " + std::string(text));
        cycle.push_back(static_cast<Point>(value));
      }
      if (!cycle.empty())
        cycles.push_back(std::move(cycle));
      skip_ws();
    }
    return from_cycles(degree, cycles);
  }

  std::size_t degree() const noexcept { return images_.size(); }
  const std::vector<Point>& images() const noexcept { return images_; }

  Point operator()(Point x) const { return images_[x]; }

  bool is_identity() const noexcept
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Permutation inverse() const
  {
    Permutation result(degree());
    for (std::size_t i = 0; i < images_.size(); ++i)
      result.images_[images_[i]] = static_cast<Point>(i);
    return result;
  }

  /// (p * q)(x) = p(q(x)).
  friend Permutation operator*(const Permutation& p, const Permutation& q)
  {
    if (p.degree() != q.degree())
      throw Error(ErrorKind::DegreeMismatch,
                  std::to_string(p.degree()) + " vs " + std::to_string(q.degree()));
    Permutation result;
    result.images_.resize(p.degree());
    for (std::size_t i = 0; i < p.degree(); ++i)
      result.images_[i] = p.images_[q.images_[i]];
    return result;
  }

  Permutation pow(std::int64_t e) const
  {
    Permutation base = e < 0 ? inverse() : *this;
    std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    Permutation result(degree());
    while (k) {
      if (k & 1)
        result = result * base;
      base = base * base;
      k >>= 1;
    }
    return result;
  }

  std::uint64_t order() const
  {
    std::uint64_t result = 1;
    std::vector<bool> seen(degree(), false);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i])
        continue;
      std::uint64_t len = 0;
      for (Point x = static_cast<Point>(i); !seen[x]; x = images_[x]) {
        seen[x] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  /// Smallest moved point, or degree() if the permutation is the identity.
  std::size_t first_moved() const noexcept
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return i;
    return images_.size();
  }

  std::vector<std::vector<Point>> cycles() const
  {
    std::vector<std::vector<Point>> result;
    std::vector<bool> seen(degree(), false);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i] || images_[i] == i)
        continue;
      std::vector<Point> cycle;
      for (Point x = static_cast<Point>(i); !seen[x]; x = images_[x]) {
        seen[x] = true;
        cycle.push_back(x);
      }
      result.push_back(std::move(cycle));
    }
    return result;
  }

  std::string to_string() const
  {
    auto cs = cycles();
    if (cs.empty())
      return "()";
    std::ostringstream out;
    for (const auto& c : cs) {
      out << '(';
      for (std::size_t i = 0; i < c.size(); ++i)
        out << (i ? " " : "") << c[i];
      out << ')';
    }
    return out.str();
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b)
  {
    return a.images_ <=> b.images_;
  }

private:
  std::vector<Point> images_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }

/// Conjugate `c * p * c^-1`.
inline Permutation conjugate(const Permutation& c, const Permutation& p)
{
  return c * p * c.inverse();
}

/// The permutation of {0..|points|-1} induced by `p` on the ordered set
/// `points`. Throws NotSetwiseInvariant if `p` does not map the set onto itself.
inline Permutation restriction(const Permutation& p, const std::vector<Point>& points)
{
  std::vector<std::int64_t> index(p.degree(), -1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] >= p.degree())
      throw Error(ErrorKind::PointOutOfRange, "restriction point out of range");
    index[points[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<Point> images(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto j = index[p(points[i])];
    if (j < 0)
      throw Error(ErrorKind::NotSetwiseInvariant,
                  p.to_string() + " maps " + std::to_string(points[i]) + " outside the set");
    images[i] = static_cast<Point>(j);
  }
  return Permutation(std::move(images));
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept
  {
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images())
      h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

} // namespace exaut
