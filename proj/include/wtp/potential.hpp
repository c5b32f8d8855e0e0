#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wtp/symbolic.hpp"

namespace wtp {

/// Locally constant potential on the top system: f(x) depends on the first
/// `window` digits of x. Stored densely over D^window (index = mixed radix,
/// first digit most significant).
class Potential {
 public:
  using Entry = std::pair<std::vector<Digit>, double>;

  /// Entries not listed take `fallback`; without a fallback the table must
  /// cover every word of D^window. Throws PotentialInvalid.
  static Potential from_entries(const DigitSystem& sys, std::size_t window,
                                const std::vector<Entry>& entries,
                                std::optional<double> fallback = std::nullopt);
  static Potential constant(const DigitSystem& sys, double c);
  /// Window-1 potential, values[k] = f(digits()[k]).
  static Potential per_digit(const DigitSystem& sys, std::vector<double> values);

  std::size_t window() const { return window_; }
  std::size_t alphabet_size() const { return alphabet_; }
  /// f on a window of digit indices (size == window()).
  double operator()(std::span<const std::size_t> word) const;
  double at(std::size_t flat_index) const { return table_[flat_index]; }

  Potential shifted(double c) const;
  /// Birkhoff sum S_m f as a window-1 potential on power_system(sys, m).
  /// Only defined for window 1.
  Potential block_sum(const DigitSystem& sys, std::size_t m) const;

 private:
  Potential(std::size_t window, std::size_t alphabet, std::vector<double> table)
      : window_(window), alphabet_(alphabet), table_(std::move(table)) {}

  std::size_t window_;
  std::size_t alphabet_;
  std::vector<double> table_;
};

}  // namespace wtp
