#include "pautom/i2.hpp"

namespace pautom {

const std::array<I2Element, 7>& I2Element::all() {
  static const std::array<I2Element, 7> table = {
      I2Element::of(1, 2),  // identity
      I2Element::of(1, 0),
      I2Element::of(2, 1),  // transposition
      I2Element::of(2, 0),
      I2Element::of(0, 1),
      I2Element::of(0, 2),
      I2Element::of(0, 0),  // empty map
  };
  return table;
}

int I2Element::canonical_index() const {
  // 3*im1 + im2 -> canonical position; 4 and 8 are the non-injective codes.
  static constexpr int lut[9] = {6, 4, 5, 1, -1, 0, 3, 2, -1};
  return lut[3 * im_[0] + im_[1]];
}

std::string I2Element::str() const {
  auto sym = [](std::uint8_t v) { return v == 0 ? '-' : char('0' + v); };
  return std::string("[") + sym(im_[0]) + sym(im_[1]) + "]";
}

std::ostream& operator<<(std::ostream& os, const I2Element& e) { return os << e.str(); }

}  // namespace pautom
