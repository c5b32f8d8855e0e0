#pragma once

#include <span>
#include <vector>

namespace wtp {

/// Exponent vector a = (a_1, ..., a_{r-1}), each in [0, 1]. a_i is applied
/// when level-i counts are summed into level i + 1.
struct Exponents {
  std::vector<double> values;

  /// Throws ExponentOutOfRange.
  static Exponents validate(std::vector<double> values);
  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Probability vector w_a = (w_1, ..., w_r), w_1 = a_1 ... a_{r-1}.
struct WeightVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

WeightVector weights_from_exponents(const Exponents& a);

/// a_i = log m_{r-i} / log m_{r-i+1}. Equal neighbours give exactly 1.
Exponents exponents_from_bases(std::span<const int> bases);

/// Direct form: w = (log m_1/log m_r, log m_1/log m_{r-1} - log m_1/log m_r,
/// ..., 1 - log m_1/log m_2).
WeightVector bowen_weights_from_bases(std::span<const int> bases);

}  // namespace wtp
