#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pautom {

/// A partial bijection of {1,2}. There are exactly seven of them and they
/// form an inverse semigroup under diagrammatic composition (left factor
/// acts first). This is the atom every wreath power is built from.
///
/// Images are stored as 0 (undefined), 1 or 2.
class I2Element {
 public:
  static constexpr std::uint8_t kUndefined = 0;

  constexpr I2Element() : im_{0, 0} {}

  static constexpr I2Element of(std::uint8_t image_of_1, std::uint8_t image_of_2) {
    if (image_of_1 > 2 || image_of_2 > 2)
      throw std::invalid_argument("I2Element: images must be 0 (undefined), 1 or 2");
    if (image_of_1 != 0 && image_of_1 == image_of_2)
      throw std::invalid_argument("I2Element: not injective");
    I2Element e;
    e.im_[0] = image_of_1;
    e.im_[1] = image_of_2;
    return e;
  }

  static constexpr I2Element identity() { return of(1, 2); }
  static constexpr I2Element transposition() { return of(2, 1); }
  static constexpr I2Element empty() { return of(0, 0); }

  /// All 7 elements in canonical order: lexicographic by (image_of_1,
  /// image_of_2) with undefined sorted last. Enumeration, serialization and
  /// the sampler all rely on this order being fixed.
  static const std::array<I2Element, 7>& all();

  /// Image of point (1 or 2); 0 when the point is outside the domain.
  constexpr std::uint8_t image(int point) const { return im_[check_point(point) - 1]; }
  constexpr bool defined(int point) const { return image(point) != 0; }

  constexpr int domain_size() const { return (im_[0] != 0) + (im_[1] != 0); }

  /// Index of this element in all(), in [0,7).
  int canonical_index() const;

  constexpr bool operator==(const I2Element& o) const {
    return im_[0] == o.im_[0] && im_[1] == o.im_[1];
  }
  constexpr bool operator!=(const I2Element& o) const { return !(*this == o); }

  std::string str() const;

 private:
  static constexpr int check_point(int point) {
    if (point != 1 && point != 2)
      throw std::invalid_argument("I2Element: point must be 1 or 2");
    return point;
  }

  std::uint8_t im_[2];
};

/// Diagrammatic composition: f acts first, so (f*g)(x) = g(f(x)), defined
/// where x is in dom(f) and f(x) in dom(g). Total: the empty map is a valid
/// result.
constexpr I2Element compose(const I2Element& f, const I2Element& g) {
  std::uint8_t r1 = 0, r2 = 0;
  if (f.defined(1) && g.defined(f.image(1))) r1 = g.image(f.image(1));
  if (f.defined(2) && g.defined(f.image(2))) r2 = g.image(f.image(2));
  return I2Element::of(r1, r2);
}

/// Relation reversal; the unique semigroup inverse.
constexpr I2Element inverse(const I2Element& f) {
  std::uint8_t r1 = 0, r2 = 0;
  if (f.image(1) == 1) r1 = 1;
  if (f.image(2) == 1) r1 = 2;
  if (f.image(1) == 2) r2 = 1;
  if (f.image(2) == 2) r2 = 2;
  return I2Element::of(r1, r2);
}

constexpr bool is_idempotent(const I2Element& f) { return compose(f, f) == f; }

std::ostream& operator<<(std::ostream& os, const I2Element& e);

}  // namespace pautom
