#include "wtp/variational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wtp/sponge.hpp"

namespace wtp {

namespace {

// prefix_index[j][k] = index in D_j of the length-j prefix of digit k.
std::vector<std::vector<std::size_t>> prefix_indices(const DigitSystem& sys) {
  const std::size_t r = sys.rank();
  std::vector<std::vector<std::size_t>> out(r + 1);
  for (std::size_t j = 1; j <= r; ++j) {
    const ProjectedAlphabet alpha = project_alphabet(sys, j);
    out[j].reserve(sys.size());
    for (const Digit& d : sys.digits()) {
      out[j].push_back(*alpha.index_of(Digit(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(j))));
    }
  }
  return out;
}

std::size_t alphabet_size(const std::vector<std::size_t>& idx) {
  return idx.empty() ? 0 : *std::max_element(idx.begin(), idx.end()) + 1;
}

double shannon(const std::vector<double>& q) {
  double h = 0.0;
  for (double x : q) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

void check_inputs(const DigitSystem& sys, const Exponents& a, const Potential* pot) {
  if (a.size() + 1 != sys.rank()) {
    throw Error(ErrorCode::ExponentLengthMismatch,
                "expected " + std::to_string(sys.rank() - 1) + " exponents");
  }
  Exponents::validate(a.values);
  if (pot && pot->window() != 1) {
    throw Error(ErrorCode::WindowUnsupported, "Bernoulli objective needs a window-1 potential");
  }
  if (pot && pot->alphabet_size() != sys.size()) {
    throw Error(ErrorCode::PotentialInvalid, "potential built for a different digit set");
  }
}

// Objective with precomputed projections; p assumed valid.
class Objective {
 public:
  Objective(const DigitSystem& sys, const Exponents& a, const Potential* pot)
      : sys_(sys), w_(weights_from_exponents(a)), prefix_(prefix_indices(sys)), pot_(pot) {}

  VariationalValue evaluate(const std::vector<double>& p) const {
    const std::size_t r = sys_.rank();
    VariationalValue out;
    out.level_terms.resize(r);
    for (std::size_t level = 1; level <= r; ++level) {
      const auto& idx = prefix_[r - level + 1];
      std::vector<double> marginal(alphabet_size(idx), 0.0);
      for (std::size_t k = 0; k < p.size(); ++k) marginal[idx[k]] += p[k];
      out.level_terms[level - 1] = w_[level - 1] * shannon(marginal);
    }
    if (pot_) {
      for (std::size_t k = 0; k < p.size(); ++k) out.potential_term += p[k] * pot_->at(k);
      out.potential_term *= w_[0];
    }
    out.value = out.potential_term;
    for (double t : out.level_terms) out.value += t;
    return out;
  }

  // Gradient up to an additive constant (the constant drops out of the
  // exponentiated-gradient normalization).
  std::vector<double> gradient(const std::vector<double>& p) const {
    const std::size_t r = sys_.rank();
    std::vector<double> g(p.size(), 0.0);
    for (std::size_t level = 1; level <= r; ++level) {
      if (w_[level - 1] == 0.0) continue;
      const auto& idx = prefix_[r - level + 1];
      std::vector<double> marginal(alphabet_size(idx), 0.0);
      for (std::size_t k = 0; k < p.size(); ++k) marginal[idx[k]] += p[k];
      for (std::size_t k = 0; k < p.size(); ++k) {
        g[k] -= w_[level - 1] * std::log(marginal[idx[k]]);
      }
    }
    if (pot_) {
      for (std::size_t k = 0; k < p.size(); ++k) g[k] += w_[0] * pot_->at(k);
    }
    return g;
  }

 private:
  const DigitSystem& sys_;
  WeightVector w_;
  std::vector<std::vector<std::size_t>> prefix_;
  const Potential* pot_;
};

std::vector<double> exponentiated_step(const std::vector<double>& p, const std::vector<double>& g,
                                       double step) {
  const double top = *std::max_element(g.begin(), g.end());
  std::vector<double> q(p.size());
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    q[k] = p[k] * std::exp(step * (g[k] - top));
    total += q[k];
  }
  for (double& x : q) x /= total;
  return q;
}

}  // namespace

SymbolDistribution SymbolDistribution::validate(const DigitSystem& sys, std::vector<double> p) {
  if (p.size() != sys.size()) {
    throw Error(ErrorCode::DistributionInvalid, "need one probability per digit");
  }
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::DistributionInvalid, "probabilities must be finite and nonnegative");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::DistributionInvalid, "probabilities sum to " + std::to_string(total));
  }
  return SymbolDistribution{std::move(p)};
}

SymbolDistribution SymbolDistribution::uniform(const DigitSystem& sys) {
  return SymbolDistribution{std::vector<double>(sys.size(), 1.0 / static_cast<double>(sys.size()))};
}

VariationalValue bernoulli_objective(const DigitSystem& sys, const Exponents& a,
                                     const SymbolDistribution& p, const Potential* pot) {
  check_inputs(sys, a, pot);
  SymbolDistribution::validate(sys, p.p);
  return Objective(sys, a, pot).evaluate(p.p);
}

SymbolDistribution optimal_measure_from_recursion(const DigitSystem& sys, const Exponents& a,
                                                  const Potential* pot) {
  check_inputs(sys, a, pot);
  const ZTable z = kp_recursion(sys, a, pot);
  const std::size_t r = sys.rank();
  const auto prefix = prefix_indices(sys);
  std::vector<double> p(sys.size(), 0.0);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    double prob = 1.0;
    for (std::size_t j = 1; j <= r - 1; ++j) {
      // prefix length j drawn given prefix length j - 1
      const double num = std::pow(z.values[j][prefix[j][k]], a[r - j - 1]);
      const double den = j == 1 ? z.z0() : z.values[j - 1][prefix[j - 1][k]];
      prob *= num / den;
    }
    const double weight = pot ? std::exp(pot->at(k)) : 1.0;
    prob *= weight / z.values[r - 1][prefix[r - 1][k]];
    p[k] = prob;
  }
  // Renormalize away rounding so the result passes validation.
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return SymbolDistribution{std::move(p)};
}

BernoulliOptimum maximize_bernoulli(const DigitSystem& sys, const Exponents& a,
                                    const Potential* pot, const OptimizerOptions& options) {
  check_inputs(sys, a, pot);
  const double ceiling = std::log(kp_recursion(sys, a, pot).z0());
  const Objective objective(sys, a, pot);

  auto guard = [&](const VariationalValue& v) {
    if (v.value > ceiling + 1e-9) {
      throw std::logic_error("Bernoulli objective " + std::to_string(v.value) +
                             " exceeds the weighted pressure " + std::to_string(ceiling));
    }
  };

  BernoulliOptimum best;
  best.distribution = SymbolDistribution::uniform(sys);
  best.value = objective.evaluate(best.distribution.p);
  guard(best.value);
  best.history.push_back(best.value.value);

  int quiet = 0;
  for (int it = 0; it < options.max_iterations; ++it) {
    const std::vector<double> g = objective.gradient(best.distribution.p);
    double step = options.initial_step / (1.0 + it / 100.0);
    std::vector<double> q;
    VariationalValue v;
    // Halve the step until the objective does not drop.
    for (int tries = 0; tries < 60; ++tries) {
      q = exponentiated_step(best.distribution.p, g, step);
      v = objective.evaluate(q);
      if (v.value >= best.value.value) break;
      step *= 0.5;
    }
    best.iterations = it + 1;
    if (!(v.value >= best.value.value)) {
      // No ascent direction left at machine precision.
      best.converged = true;
      break;
    }
    guard(v);
    const double gain = v.value - best.value.value;
    best.distribution.p = std::move(q);
    best.value = std::move(v);
    best.history.push_back(best.value.value);
    quiet = gain < options.tolerance ? quiet + 1 : 0;
    if (quiet >= options.patience) {
      best.converged = true;
      break;
    }
  }
  if (!best.converged) throw DidNotConverge(std::move(best));
  return best;
}

double total_variation(const SymbolDistribution& p, const SymbolDistribution& q) {
  double tv = 0.0;
  for (std::size_t k = 0; k < std::min(p.p.size(), q.p.size()); ++k) tv += std::abs(p.p[k] - q.p[k]);
  return 0.5 * tv;
}

}  // namespace wtp
