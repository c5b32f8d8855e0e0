#pragma once

// Exact finite-N nested cylinder counts
//
//   S_N = sum_{x in L_r} ( sum_{y in fiber(x)} ( ... ( sum_{v in L_2 fiber}
//           W(v)^{a_1} )^{a_2} ... )^{a_{r-1}}
//
// where L_i is the set of admissible length-N words at level i and W(v) is
// the number of admissible level-1 words over v (or, with a potential, the
// sum of exp(sup over the cylinder of S_N f)). On symbolic systems the
// cylinder partition is an optimal cover, so S_N is the cover count itself.

#include <cstdint>
#include <optional>
#include <vector>

#include "wtp/potential.hpp"
#include "wtp/symbolic.hpp"
#include "wtp/weights.hpp"

namespace wtp {

struct EstimatorOptions {
  /// Cap on enumerated words across levels 2..r.
  std::uint64_t budget = 10'000'000;
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct NestedCount {
  std::size_t n = 0;
  double log_value = 0.0;

  double rate() const { return log_value / static_cast<double>(n); }
};

/// Throws PotentialWindowTooLarge, ComplexityBudgetExceeded,
/// ExponentLengthMismatch.
NestedCount nested_count(const Chain& chain, const Exponents& a, const Potential* pot,
                         std::size_t n, const EstimatorOptions& options = {});

/// Words enumerated by nested_count at length n (levels 2..r).
BigCount enumeration_cost(const Chain& chain, std::size_t n);

struct EstimateEntry {
  std::size_t n = 0;
  double rate = 0.0;          // log S_N / N
  double fekete_bound = 0.0;  // min over entries so far
};

struct EstimateSeries {
  std::vector<EstimateEntry> entries;
  double fekete_bound = 0.0;
  std::optional<double> closed_form;
};

EstimateSeries entropy_estimate(const Chain& chain, const Exponents& a, const Potential* pot,
                                std::size_t n_max, const EstimatorOptions& options = {});

/// S_{N+M} <= S_N S_M (1 + 1e-9).
bool submultiplicativity_check(const Chain& chain, const Exponents& a, std::size_t n,
                               std::size_t m, const EstimatorOptions& options = {});

}  // namespace wtp
