#pragma once

// Invariant suite behind the `check` command. Every check is deterministic
// for a given seed and returns a named pass/fail with the worst deviation
// it saw.

#include <cstdint>
#include <string>
#include <vector>

#include "wtp/estimator.hpp"
#include "wtp/potential.hpp"
#include "wtp/symbolic.hpp"
#include "wtp/weights.hpp"

namespace wtp {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 0x5eed;
  EstimatorOptions estimator;
  /// Largest N used by the estimator-based checks.
  std::size_t n_max = 6;
};

/// P^a(f + c) = P^a(f) + w_1 c. Sponges use the closed form, other chains
/// the exact finite-N identity log S_N(f + c) = log S_N(f) + N w_1 c.
CheckResult check_pressure_shift(const Chain& chain, const Exponents& a, const Potential* pot,
                                 const CheckOptions& options);
/// h^a nondecreasing in each a_i (sponges, closed form).
CheckResult check_monotonicity(const DigitSystem& sys, int trials, const CheckOptions& options);
/// a = (1, ..., 1) gives log |D|; a_{r-1} = 0 gives log |D_1|.
CheckResult check_collapses(const DigitSystem& sys, const CheckOptions& options);
/// weights_from_exponents(exponents_from_bases(m)) == bowen_weights_from_bases(m).
CheckResult check_weights_consistency(int trials, const CheckOptions& options);
/// S_{N+M} <= S_N S_M for the (N, M) pairs that fit the budget.
CheckResult check_submultiplicativity(const Chain& chain, const Exponents& a,
                                      const CheckOptions& options);
/// words(v) <= paths(v) <= |V| words(v) for every level-2 word v, N <= n_max.
CheckResult check_path_word_ratio(const Chain& chain, std::size_t n_max);
/// Sponges: P^a(S_m f, T^m) = m P^a(f, T) in closed form. All chains:
/// S_N on the m-th power chain equals S_{mN} on the chain.
CheckResult check_power_scaling(const Chain& chain, const Exponents& a, const Potential* pot,
                                std::size_t m_max, const CheckOptions& options);
/// Sponges only: log S_N / N == log Z_0 for every N <= n_max.
CheckResult check_estimator_matches_closed_form(const Chain& chain, const Exponents& a,
                                                const Potential* pot,
                                                const CheckOptions& options);
/// Optimizer and recursion measure reach the closed form and never exceed it.
CheckResult check_variational_bound(const DigitSystem& sys, const Exponents& a,
                                    const Potential* pot);
/// Closed form <= Fekete bound (log S_N / N is an upper bound at every N).
CheckResult check_growth_sandwich(const Chain& chain, const Exponents& a,
                                  const CheckOptions& options);
CheckResult check_dimension_order(const DigitSystem& sys);

/// Every check applicable to the chain, in a fixed order.
std::vector<CheckResult> run_property_suite(const Chain& chain, const Exponents& a,
                                            const Potential* pot, const CheckOptions& options);

}  // namespace wtp
