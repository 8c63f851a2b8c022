#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "exaut/error.hpp"
#include "exaut/group.hpp"

namespace exaut {

/// A homomorphism between permutation groups given by the images of the
/// source generators. It is evaluated through the diagonal subgroup
/// D = <(g, F(g))> on n + m points: F is well defined iff |D| = |G|, and
/// F(x) is read off the element of D whose first block is x.
class GroupHom {
public:
  GroupHom(PermGroup source, std::vector<Permutation> images, std::size_t target_degree)
  : source_(std::move(source)), images_(std::move(images)), target_degree_(target_degree)
  {
    const auto& gens = source_.generators();
    if (images_.size() != gens.size())
      throw Error(ErrorKind::NotAnAutomorphism, "one image is needed per source generator");
    for (const auto& y : images_)
      if (y.degree() != target_degree_)
        throw Error(ErrorKind::DegreeMismatch, "generator image has the wrong degree");
    const std::size_t n = source_.degree();
    std::vector<Permutation> diag;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<Point> img(n + target_degree_);
      for (Point x = 0; x < n; ++x)
        img[x] = gens[i](x);
      for (Point y = 0; y < target_degree_; ++y)
        img[n + y] = static_cast<Point>(n + images_[i](y));
      diag.emplace_back(std::move(img));
    }
    std::vector<Point> prefix(n);
    std::iota(prefix.begin(), prefix.end(), Point{0});
    diagonal_ = PermGroup(std::move(diag), prefix);
  }

  /// Conjugation x -> c x c^-1, as a map from G to c G c^-1.
  static GroupHom conjugation(const PermGroup& g, const Permutation& c)
  {
    std::vector<Permutation> images;
    for (const auto& x : g.generators())
      images.push_back(conjugate(c, x));
    return GroupHom(g, std::move(images), c.degree());
  }

  const PermGroup& source() const noexcept { return source_; }
  const std::vector<Permutation>& images() const noexcept { return images_; }

  bool well_defined() const { return diagonal_.order() == source_.order(); }

  /// The subgroup generated by the generator images.
  PermGroup image() const { return generate_or_trivial(images_, target_degree_); }

  /// Well defined, injective, and onto `target`.
  bool is_isomorphism_onto(const PermGroup& target) const
  {
    if (!well_defined() || target.degree() != target_degree_)
      return false;
    PermGroup im = image();
    return im.order() == source_.order() && same_group(im, target);
  }

  /// F(x) for x in the source. Throws NotAMember outside the source and
  /// NotAnAutomorphism when F is not well defined.
  Permutation operator()(const Permutation& x) const
  {
    if (!well_defined())
      throw Error(ErrorKind::NotAnAutomorphism, "generator images do not define a homomorphism");
    if (!source_.contains(x))
      throw Error(ErrorKind::NotAMember, "element is not in the source group");
    const std::size_t n = source_.degree();
    std::vector<Point> dst(n);
    for (Point p = 0; p < n; ++p)
      dst[p] = x(p);
    auto d = diagonal_.transporter_prefix(dst);
    std::vector<Point> img(target_degree_);
    for (Point y = 0; y < target_degree_; ++y)
      img[y] = static_cast<Point>((*d)(static_cast<Point>(n + y)) - n);
    return Permutation(std::move(img));
  }

  /// F(H) for a subgroup H of the source.
  PermGroup apply(const PermGroup& h) const
  {
    std::vector<Permutation> gens;
    for (const auto& x : h.generators())
      gens.push_back((*this)(x));
    return generate_or_trivial(std::move(gens), target_degree_);
  }

private:
  PermGroup source_;
  std::vector<Permutation> images_;
  std::size_t target_degree_ = 0;
  PermGroup diagonal_;
};

} // namespace exaut
