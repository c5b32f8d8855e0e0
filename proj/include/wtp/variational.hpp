#pragma once

// Bernoulli side of the weighted variational principle on full-shift sponge
// chains. For a product measure with symbol law p on D the objective is
//
//   sum_i w_i H(p pushed to level i) + w_1 sum_e p(e) f(e),
//
// level i keeping the first r - i + 1 coordinates and H in nats.

#include <vector>

#include "wtp/error.hpp"
#include "wtp/potential.hpp"
#include "wtp/symbolic.hpp"
#include "wtp/weights.hpp"

namespace wtp {

struct SymbolDistribution {
  /// p[k] = probability of sys.digits()[k].
  std::vector<double> p;

  /// Throws DistributionInvalid.
  static SymbolDistribution validate(const DigitSystem& sys, std::vector<double> p);
  static SymbolDistribution uniform(const DigitSystem& sys);
};

struct VariationalValue {
  double value = 0.0;
  /// level_terms[i-1] = w_i H(marginal at level i).
  std::vector<double> level_terms;
  double potential_term = 0.0;
};

/// Potential must have window 1 (WindowUnsupported otherwise).
VariationalValue bernoulli_objective(const DigitSystem& sys, const Exponents& a,
                                     const SymbolDistribution& p,
                                     const Potential* pot = nullptr);

/// Chains the Z-recursion into conditional laws: at each prefix the next
/// coordinate is drawn with probability proportional to Z_{j+1}^{exponent}
/// (digit weights e^{f} at the last step).
SymbolDistribution optimal_measure_from_recursion(const DigitSystem& sys, const Exponents& a,
                                                  const Potential* pot = nullptr);

struct OptimizerOptions {
  int max_iterations = 100000;
  /// Stop once the gain stays below this for `patience` iterations.
  double tolerance = 1e-12;
  int patience = 50;
  double initial_step = 0.5;
};

struct BernoulliOptimum {
  SymbolDistribution distribution;
  VariationalValue value;
  int iterations = 0;
  bool converged = false;
  /// Objective after each accepted iteration (nondecreasing).
  std::vector<double> history;
};

class DidNotConverge : public Error {
 public:
  explicit DidNotConverge(BernoulliOptimum best)
      : Error(ErrorCode::DidNotConverge,
              "best value " + std::to_string(best.value.value) + " after " +
                  std::to_string(best.iterations) + " iterations"),
        best_(std::move(best)) {}

  const BernoulliOptimum& best() const { return best_; }

 private:
  BernoulliOptimum best_;
};

/// Exponentiated-gradient ascent on the simplex over D, started uniform.
/// Throws DidNotConverge when the iteration cap is hit, and std::logic_error
/// if a value above the closed form (+1e-9) ever appears.
BernoulliOptimum maximize_bernoulli(const DigitSystem& sys, const Exponents& a,
                                    const Potential* pot = nullptr,
                                    const OptimizerOptions& options = {});

/// 1/2 sum |p - q|.
double total_variation(const SymbolDistribution& p, const SymbolDistribution& q);

}  // namespace wtp
