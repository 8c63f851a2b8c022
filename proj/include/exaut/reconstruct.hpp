#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "exaut/error.hpp"
#include "exaut/exaut.hpp"
#include "exaut/group.hpp"
#include "exaut/homomorphism.hpp"
#include "exaut/report.hpp"
#include "exaut/structure.hpp"

namespace exaut {

/// An isomorphism between two permutation groups given on the source
/// generators. Construction checks that the images define a homomorphism
/// that is one-to-one and onto the target; throws NotAnAutomorphism if not.
class GroupIso {
public:
  GroupIso(PermGroup source, std::vector<Permutation> images, PermGroup target)
  : map_(std::move(source), std::move(images), target.degree()), target_(std::move(target))
  {
    if (!map_.is_isomorphism_onto(target_))
      throw Error(ErrorKind::NotAnAutomorphism,
                  "generator images do not define an isomorphism onto the target");
  }

  /// x -> c x c^-1, onto c G c^-1.
  static GroupIso conjugation(const PermGroup& source, const Permutation& c)
  {
    std::vector<Permutation> images;
    for (const auto& x : source.generators())
      images.push_back(conjugate(c, x));
    return GroupIso(source, std::move(images), conjugate_group(c, source));
  }

  const PermGroup& source() const noexcept { return map_.source(); }
  const PermGroup& target() const noexcept { return target_; }
  const GroupHom& hom() const noexcept { return map_; }
  const std::vector<Permutation>& images() const noexcept { return map_.images(); }

  Permutation operator()(const Permutation& x) const { return map_(x); }
  PermGroup apply(const PermGroup& h) const { return map_.apply(h); }

private:
  GroupHom map_;
  PermGroup target_;
};

struct MinimalStabilizers {
  /// Minimal closed sets among closures of single points, with their
  /// pointwise stabilizers.
  std::vector<std::pair<std::vector<Point>, PermGroup>> entries;
  /// Every point is its own closure.
  bool k_star = true;
  std::string warning;
};

inline MinimalStabilizers minimal_stabilizers(const FinStructure& m,
                                              const Closure& closure = Closure::dcl(),
                                              const std::optional<PermGroup>& aut = std::nullopt)
{
  const PermGroup g = aut ? *aut : automorphism_group(m);
  MinimalStabilizers out;
  std::set<std::vector<Point>> closed;
  for (Point a = 0; a < m.size(); ++a) {
    auto c = closure(m, g, {a});
    if (c != std::vector<Point>{a})
      out.k_star = false;
    closed.insert(std::move(c));
  }
  for (const auto& k : closed) {
    bool minimal = true;
    for (const auto& other : closed)
      if (other.size() < k.size() && std::includes(k.begin(), k.end(), other.begin(), other.end()))
        minimal = false;
    if (minimal)
      out.entries.emplace_back(k, pointwise_stabilizer(g, k));
  }
  if (!out.k_star)
    out.warning = "some point is not its own closure; stabilizers of larger closed sets are used";
  return out;
}

/// f with F(G_(a)) = G'_(f(a)), found by matching the image of each point
/// stabilizer against the minimal stabilizers of N. Throws
/// NoMinimalStabilizerMatch when an image matches none, and AmbiguousMatch
/// when it matches several, matches a closed set of more than one point, or
/// two points land on the same image.
inline Permutation induced_bijection(const GroupIso& f_map, const FinStructure& m,
                                     const FinStructure& n,
                                     const Closure& closure = Closure::dcl())
{
  if (m.size() != n.size())
    throw Error(ErrorKind::DegreeMismatch, "the structures have different sizes");
  if (f_map.source().degree() != m.size() || f_map.target().degree() != n.size())
    throw Error(ErrorKind::DegreeMismatch, "the groups do not act on the structures");
  auto targets = minimal_stabilizers(n, closure, f_map.target());
  std::vector<Point> img(m.size());
  std::vector<bool> used(n.size(), false);
  for (Point a = 0; a < m.size(); ++a) {
    PermGroup image = f_map.apply(pointwise_stabilizer(f_map.source(), {a}));
    std::vector<std::size_t> hits;
    for (std::size_t e = 0; e < targets.entries.size(); ++e)
      if (same_group(image, targets.entries[e].second))
        hits.push_back(e);
    if (hits.empty())
      throw Error(ErrorKind::NoMinimalStabilizerMatch,
                  "the image of the stabilizer of " + std::to_string(a) + " (order " +
                    std::to_string(image.order()) + ") is no minimal stabilizer");
    if (hits.size() > 1 || targets.entries[hits[0]].first.size() != 1) {
      std::string cands;
      for (std::size_t e : hits)
        cands += " " + set_string(targets.entries[e].first);
      throw Error(ErrorKind::AmbiguousMatch,
                  "the stabilizer of " + std::to_string(a) + " matches" + cands);
    }
    Point b = targets.entries[hits[0]].first[0];
    if (used[b])
      throw Error(ErrorKind::AmbiguousMatch, "two points are sent to " + std::to_string(b));
    used[b] = true;
    img[a] = b;
  }
  return Permutation(std::move(img));
}

/// F(g) = f g f^-1 for every source generator.
inline bool verify_conjugation(const GroupIso& f_map, const Permutation& f)
{
  if (f.degree() != f_map.source().degree() || f.degree() != f_map.target().degree())
    return false;
  const auto& gens = f_map.source().generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (f_map.images()[i] != conjugate(f, gens[i]))
      return false;
  return true;
}

/// The same on every element of the source, up to `bound` elements.
inline bool conjugation_agrees_everywhere(const GroupIso& f_map, const Permutation& f,
                                          std::uint64_t bound = 720)
{
  if (f.degree() != f_map.source().degree() || f.degree() != f_map.target().degree())
    return false;
  for (const auto& x : f_map.source().elements(bound))
    if (f_map(x) != conjugate(f, x))
      return false;
  return true;
}

namespace detail {

/// Orbit index of every k-tuple (with repetition), tuples numbered in base n.
inline std::vector<std::size_t> tuple_orbit_ids(const PermGroup& g, std::size_t k)
{
  const std::size_t n = g.degree();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i)
    total *= n;
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> id(total, unset);
  std::vector<std::size_t> digits(k);
  std::size_t next = 0;
  for (std::size_t start = 0; start < total; ++start) {
    if (id[start] != unset)
      continue;
    id[start] = next;
    std::vector<std::size_t> queue{start};
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (const auto& s : g.generators()) {
        std::size_t t = queue[q], image = 0, place = 1;
        for (std::size_t i = 0; i < k; ++i, t /= n, place *= n)
          image += s(static_cast<Point>(t % n)) * place;
        if (id[image] == unset) {
          id[image] = next;
          queue.push_back(image);
        }
      }
    ++next;
  }
  return id;
}

inline std::string tuple_string(std::size_t t, std::size_t n, std::size_t k)
{
  std::string out = "(";
  for (std::size_t i = 0; i < k; ++i, t /= n)
    out += (i ? "," : "") + std::to_string(t % n);
  return out + ")";
}

} // namespace detail

/// Whether f carries the Aut(M)-orbits on k-tuples exactly onto the
/// Aut(N)-orbits, for every k up to `arity_bound`.
inline CheckReport bidef_check(const FinStructure& m, const FinStructure& n, const Permutation& f,
                               std::size_t arity_bound, std::string name = "")
{
  CheckReport rep{"bidefinability", std::move(name), {{"arity_bound", arity_bound}}};
  if (m.size() != n.size() || f.degree() != m.size())
    throw Error(ErrorKind::DegreeMismatch, "f is not a bijection between the domains");
  const PermGroup gm = automorphism_group(m), gn = automorphism_group(n);
  const std::size_t size = m.size();
  json per_arity = json::array();
  bool ok = true;
  for (std::size_t k = 1; k <= arity_bound; ++k) {
    auto idm = detail::tuple_orbit_ids(gm, k);
    auto idn = detail::tuple_orbit_ids(gn, k);
    std::map<std::size_t, std::size_t> forward, backward;
    bool arity_ok = true;
    for (std::size_t t = 0; t < idm.size() && arity_ok; ++t) {
      std::size_t image = 0, place = 1;
      for (std::size_t i = 0, r = t; i < k; ++i, r /= size, place *= size)
        image += f(static_cast<Point>(r % size)) * place;
      auto [fi, fnew] = forward.emplace(idm[t], idn[image]);
      auto [bi, bnew] = backward.emplace(idn[image], idm[t]);
      if (fi->second != idn[image] || bi->second != idm[t]) {
        arity_ok = false;
        rep.witnesses.push_back({{"arity", k}, {"tuple", detail::tuple_string(t, size, k)}});
      }
    }
    std::size_t orbits_m = idm.empty() ? 0 : *std::max_element(idm.begin(), idm.end()) + 1;
    std::size_t orbits_n = idn.empty() ? 0 : *std::max_element(idn.begin(), idn.end()) + 1;
    if (orbits_m != orbits_n && arity_ok) {
      arity_ok = false;
      rep.witnesses.push_back({{"arity", k}, {"orbits_m", orbits_m}, {"orbits_n", orbits_n}});
    }
    per_arity.push_back({{"arity", k}, {"orbits_m", orbits_m}, {"orbits_n", orbits_n}, {"ok", arity_ok}});
    ok = ok && arity_ok;
  }
  rep.summary = {{"arities", per_arity}};
  rep.status = exact(ok);
  return rep;
}

struct Scramble {
  FinStructure n;
  GroupIso f_map;
  Permutation sigma;
};

inline Permutation seeded_permutation(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t i = n; i > 1; --i)
    std::swap(img[i - 1], img[rng() % i]);
  return Permutation(std::move(img));
}

/// N = M relabelled by a seeded random sigma, F = conjugation by sigma.
inline Scramble scramble_harness(const FinStructure& m, std::uint64_t seed)
{
  Permutation sigma = seeded_permutation(m.size(), seed);
  return {relabel(m, sigma), GroupIso::conjugation(automorphism_group(m), sigma), sigma};
}

/// Replaces M by the structure with one relation per Aut(M)-orbit on
/// k-tuples, which has the same automorphisms and is homogeneous once k
/// reaches the domain size.
inline FinStructure canonical_preprocess(const FinStructure& m, std::size_t k)
{
  return canonical_relational(automorphism_group(m), std::min(k, m.size()));
}

struct Reconstruction {
  std::optional<Permutation> f;
  bool verified = false;
  bool agrees_everywhere = false;
  std::optional<CheckReport> bidef;
  std::optional<Error> error;
  bool preprocessed = false;
  CheckReport report;
};

/// The whole pipeline: optional canonical preprocessing for structures that
/// are not homogeneous, matching, then both verifications.
inline Reconstruction reconstruct(const GroupIso& f_map, const FinStructure& m,
                                  const FinStructure& n, std::size_t arity_bound = 3,
                                  bool preprocess = false, std::string name = "")
{
  Reconstruction r;
  FinStructure mm = m, nn = n;
  if (preprocess && !is_homogeneous(m, f_map.source()).homogeneous) {
    mm = canonical_preprocess(m, m.size());
    nn = canonical_preprocess(n, n.size());
    r.preprocessed = true;
  }
  r.report = CheckReport{"reconstruct", name, {{"arity_bound", arity_bound},
                                               {"preprocess", preprocess}}};
  try {
    r.f = induced_bijection(f_map, mm, nn);
  } catch (const Error& e) {
    r.error = e;
    r.report.summary = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
    r.report.status = Status::ExactFail;
    return r;
  }
  r.verified = verify_conjugation(f_map, *r.f);
  if (f_map.source().order() <= 720)
    r.agrees_everywhere = conjugation_agrees_everywhere(f_map, *r.f);
  r.bidef = bidef_check(m, n, *r.f, arity_bound, name);
  r.report.summary = {{"f", r.f->to_string()},
                      {"verified", r.verified},
                      {"checked_on_all_elements", f_map.source().order() <= 720},
                      {"agrees_everywhere", r.agrees_everywhere},
                      {"bidef", std::string(to_string(r.bidef->status))},
                      {"preprocessed", r.preprocessed}};
  r.report.witnesses = r.bidef->witnesses;
  r.report.status = exact(r.verified && r.bidef->passed() &&
                          (f_map.source().order() > 720 || r.agrees_everywhere));
  return r;
}

/// An automorphism of Sym(6) sending transpositions to products of three
/// disjoint transpositions. The source is generated by (i i+1), and the
/// images are found by backtracking over the Coxeter relations.
inline GroupIso exceptional_s6_automorphism()
{
  std::vector<Permutation> coxeter;
  for (Point i = 0; i + 1 < 6; ++i)
    coxeter.push_back(Permutation::from_cycles(6, {{i, static_cast<Point>(i + 1)}}));
  std::vector<Permutation> triples;
  for (const auto& p : PermGroup::symmetric(6).elements())
    if (p.order() == 2 && p.cycles().size() == 3)
      triples.push_back(p);

  const Permutation id(6);
  std::vector<Permutation> images;
  auto search = [&](auto&& self) -> bool {
    const std::size_t t = images.size();
    if (t == coxeter.size()) {
      try {
        GroupIso f(PermGroup(coxeter), images, PermGroup::symmetric(6));
        return true;
      } catch (const Error&) {
        return false;
      }
    }
    for (const auto& c : triples) {
      bool ok = true;
      for (std::size_t s = 0; s < t && ok; ++s) {
        Permutation prod = images[s] * c;
        ok = s + 1 == t ? prod.pow(3) == id : prod.pow(2) == id;
      }
      if (!ok)
        continue;
      images.push_back(c);
      if (self(self))
        return true;
      images.pop_back();
    }
    return false;
  };
  if (!search(search))
    throw Error(ErrorKind::NotAnAutomorphism, "no exceptional automorphism found");
  return GroupIso(PermGroup(coxeter), images, PermGroup::symmetric(6));
}

} // namespace exaut
