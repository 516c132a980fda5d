#include "pautom/sampling.hpp"

#include <stdexcept>

namespace pautom {

BigCount uniform_below(std::mt19937_64& eng, const BigCount& bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  if (bound == 1) return 0;
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  BigCount v;
  for (;;) {
    v = 0;
    for (std::size_t w = 0; w < words; ++w) {
      v <<= 64;
      v += static_cast<unsigned long>(eng());
    }
    v >>= words * 64 - bits;
    if (v < bound) return v;
  }
}

UniformSampler::UniformSampler(int level, SampleMode mode) : level_(level), mode_(mode) {
  if (level < 1) throw std::invalid_argument("UniformSampler: level must be >= 1");
  totals_.resize(level + 1);
  cumulative_.resize(level + 1);
  cumulative_approx_.resize(level + 1);
  totals_[0] = 1;
  for (int k = 1; k <= level; ++k) {
    const BigCount& m = totals_[k - 1];
    BigCount acc = 0;
    for (std::size_t c = 0; c < 7; ++c) {
      switch (I2Element::all()[c].domain_size()) {
        case 0: acc += 1; break;
        case 1: acc += m; break;
        case 2: acc += m * m; break;
      }
      cumulative_[k][c] = acc;
    }
    totals_[k] = acc;
    if (acc != count_closed_form(k))
      throw std::logic_error("UniformSampler: weight total differs from element count");
    for (std::size_t c = 0; c < 7; ++c)
      cumulative_approx_[k][c] = BigRational(cumulative_[k][c], totals_[k]).get_d();
  }
}

WreathElement::Ptr UniformSampler::sample_node(int k, std::mt19937_64& eng) const {
  std::size_t cat = 6;
  if (mode_ == SampleMode::Exact) {
    const BigCount u = uniform_below(eng, totals_[k]);
    for (std::size_t c = 0; c < 7; ++c)
      if (u < cumulative_[k][c]) {
        cat = c;
        break;
      }
  } else {
    const double u = uniform_unit(eng);
    for (std::size_t c = 0; c < 7; ++c)
      if (u < cumulative_approx_[k][c]) {
        cat = c;
        break;
      }
  }
  const I2Element a = I2Element::all()[cat];
  if (k == 1) return std::make_shared<const WreathElement>(a);
  WreathElement::Ptr ch[2];
  for (int b = 1; b <= 2; ++b)
    if (a.defined(b)) ch[b - 1] = sample_node(k - 1, eng);
  return std::make_shared<const WreathElement>(k, a, ch[0], ch[1]);
}

WreathElement UniformSampler::sample(std::mt19937_64& eng) const {
  return *sample_node(level_, eng);
}

WreathElement UniformSampler::sample_indexed(std::uint64_t seed, std::uint64_t index,
                                             std::uint64_t tag) const {
  std::mt19937_64 eng = make_sample_engine(seed, index, tag);
  return sample(eng);
}

}  // namespace pautom
