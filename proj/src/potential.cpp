#include "wtp/potential.hpp"

#include <cmath>
#include <string>

#include "wtp/error.hpp"

namespace wtp {

namespace {

constexpr std::size_t kMaxTable = std::size_t{1} << 24;

}  // namespace

Potential Potential::from_entries(const DigitSystem& sys, std::size_t window,
                                  const std::vector<Entry>& entries,
                                  std::optional<double> fallback) {
  if (window == 0) {
    throw Error(ErrorCode::PotentialInvalid, "window must be at least 1");
  }
  std::size_t size = 1;
  for (std::size_t k = 0; k < window; ++k) {
    if (size > kMaxTable / sys.size()) {
      throw Error(ErrorCode::PotentialInvalid, "window table too large");
    }
    size *= sys.size();
  }
  if (fallback && !std::isfinite(*fallback)) {
    throw Error(ErrorCode::PotentialInvalid, "default value must be finite");
  }
  std::vector<double> table(size, fallback.value_or(0.0));
  std::vector<bool> set(size, fallback.has_value());
  for (const auto& [word, value] : entries) {
    if (word.size() != window) {
      throw Error(ErrorCode::PotentialInvalid, "entry length differs from window");
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::PotentialInvalid, "potential values must be finite");
    }
    std::size_t flat = 0;
    for (const Digit& d : word) {
      auto k = sys.index_of(d);
      if (!k) throw Error(ErrorCode::PotentialInvalid, "entry uses a digit outside D");
      flat = flat * sys.size() + *k;
    }
    table[flat] = value;
    set[flat] = true;
  }
  for (bool s : set) {
    if (!s) {
      throw Error(ErrorCode::PotentialInvalid,
                  "table does not cover every window word and has no default");
    }
  }
  return Potential(window, sys.size(), std::move(table));
}

Potential Potential::constant(const DigitSystem& sys, double c) {
  return Potential(1, sys.size(), std::vector<double>(sys.size(), c));
}

Potential Potential::per_digit(const DigitSystem& sys, std::vector<double> values) {
  if (values.size() != sys.size()) {
    throw Error(ErrorCode::PotentialInvalid, "need one value per digit");
  }
  return Potential(1, sys.size(), std::move(values));
}

double Potential::operator()(std::span<const std::size_t> word) const {
  std::size_t flat = 0;
  for (std::size_t k : word) flat = flat * alphabet_ + k;
  return table_[flat];
}

Potential Potential::shifted(double c) const {
  std::vector<double> table = table_;
  for (double& v : table) v += c;
  return Potential(window_, alphabet_, std::move(table));
}

Potential Potential::block_sum(const DigitSystem& sys, std::size_t m) const {
  if (window_ != 1) {
    throw Error(ErrorCode::WindowUnsupported, "block sums are defined for window 1 only");
  }
  // Enumerate blocks in the same order power_system builds them, then map
  // each block to its index in the (re-sorted) power system.
  const DigitSystem power = power_system(sys, m);
  std::vector<double> values(power.size(), 0.0);
  std::vector<std::size_t> idx(m, 0);
  const std::size_t n = sys.size();
  const std::size_t r = sys.rank();
  while (true) {
    Digit block(r, 0);
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) sum += table_[idx[k]];
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        block[i] = block[i] * sys.bases()[i] + sys.digits()[idx[k]][i];
      }
    }
    values[*power.index_of(block)] = sum;
    std::size_t pos = m;
    while (pos > 0) {
      if (++idx[pos - 1] < n) break;
      idx[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return Potential(1, power.size(), std::move(values));
}

}  // namespace wtp
