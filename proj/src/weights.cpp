#include "wtp/weights.hpp"

#include <cmath>
#include <string>

#include "wtp/error.hpp"

namespace wtp {

namespace {

void check_sorted(std::span<const int> bases) {
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i] < 2) {
      throw Error(ErrorCode::DigitOutOfRange, "bases must be at least 2");
    }
    if (i > 0 && bases[i] < bases[i - 1]) {
      throw Error(ErrorCode::BasesNotSorted, "bases must be nondecreasing");
    }
  }
}

}  // namespace

Exponents Exponents::validate(std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      throw Error(ErrorCode::ExponentOutOfRange,
                  "a_" + std::to_string(i + 1) + " = " + std::to_string(values[i]));
    }
  }
  return Exponents{std::move(values)};
}

WeightVector weights_from_exponents(const Exponents& a) {
  Exponents::validate(a.values);
  const std::size_t r = a.size() + 1;
  WeightVector w;
  w.values.assign(r, 0.0);
  // suffix[i] = a_i a_{i+1} ... a_{r-1} (1-based a), suffix[r] = 1
  std::vector<double> suffix(r + 1, 1.0);
  for (std::size_t i = r - 1; i >= 1; --i) {
    suffix[i] = a[i - 1] * suffix[i + 1];
  }
  w.values[0] = suffix[1];
  for (std::size_t i = 2; i <= r; ++i) {
    w.values[i - 1] = (1.0 - a[i - 2]) * suffix[i];
  }
  return w;
}

Exponents exponents_from_bases(std::span<const int> bases) {
  check_sorted(bases);
  const std::size_t r = bases.size();
  std::vector<double> a(r >= 1 ? r - 1 : 0);
  for (std::size_t i = 1; i < r; ++i) {
    const int lo = bases[r - i - 1];
    const int hi = bases[r - i];
    a[i - 1] = lo == hi ? 1.0 : std::log(static_cast<double>(lo)) / std::log(static_cast<double>(hi));
  }
  return Exponents{std::move(a)};
}

WeightVector bowen_weights_from_bases(std::span<const int> bases) {
  check_sorted(bases);
  const std::size_t r = bases.size();
  const double log_m1 = std::log(static_cast<double>(bases[0]));
  // ratio(k) = log m_1 / log m_k, 1-based k
  auto ratio = [&](std::size_t k) {
    return bases[k - 1] == bases[0] ? 1.0 : log_m1 / std::log(static_cast<double>(bases[k - 1]));
  };
  WeightVector w;
  w.values.assign(r, 0.0);
  w.values[0] = ratio(r);
  for (std::size_t i = 2; i <= r; ++i) {
    // entry i pairs m_{r-i+1} with m_{r-i+2}
    w.values[i - 1] = ratio(r - i + 1) - ratio(r - i + 2);
  }
  return w;
}

}  // namespace wtp
