#include "wtp/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "wtp/error.hpp"
#include "wtp/sofic.hpp"
#include "wtp/sponge.hpp"
#include "wtp/variational.hpp"

namespace wtp {

namespace {

std::string deviation(double worst) {
  std::ostringstream out;
  out.precision(3);
  out << "max deviation " << worst;
  return out.str();
}

bool fits(const Chain& chain, std::size_t n, const CheckOptions& options) {
  return enumeration_cost(chain, n) <= options.estimator.budget;
}

std::vector<double> random_exponents(std::mt19937_64& rng, std::size_t count) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> a(count);
  for (double& x : a) x = u(rng);
  return a;
}

const Potential* window_one(const Potential* pot) {
  return pot && pot->window() == 1 ? pot : nullptr;
}

}  // namespace

CheckResult check_pressure_shift(const Chain& chain, const Exponents& a, const Potential* pot,
                                 const CheckOptions& options) {
  CheckResult out{"pressure shift", true, {}};
  const DigitSystem& sys = chain.system();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);

  std::optional<Potential> own;
  if (!pot) {
    std::vector<double> values(sys.size());
    for (double& v : values) v = u(rng);
    own = Potential::per_digit(sys, std::move(values));
    pot = &*own;
  }
  const double w1 = weights_from_exponents(a)[0];
  double worst = 0.0;
  for (double c : {-1.5, 0.25, u(rng), 3.0}) {
    const Potential moved = pot->shifted(c);
    if (!chain.is_sofic() && pot->window() == 1) {
      const double lhs = weighted_pressure_closed_form(sys, a, moved);
      const double rhs = weighted_pressure_closed_form(sys, a, *pot) + w1 * c;
      worst = std::max(worst, std::abs(lhs - rhs));
    } else {
      std::size_t n = pot->window();
      while (n + 1 <= options.n_max && fits(chain, n + 1, options)) ++n;
      if (!fits(chain, n, options)) {
        out.detail = "skipped: budget";
        return out;
      }
      const double lhs = nested_count(chain, a, &moved, n, options.estimator).log_value;
      const double rhs = nested_count(chain, a, pot, n, options.estimator).log_value +
                         static_cast<double>(n) * w1 * c;
      worst = std::max(worst, std::abs(lhs - rhs) / static_cast<double>(n));
    }
  }
  out.passed = worst <= 1e-9;
  out.detail = deviation(worst);
  return out;
}

CheckResult check_monotonicity(const DigitSystem& sys, int trials, const CheckOptions& options) {
  CheckResult out{"monotonicity in exponents", true, {}};
  const std::size_t r = sys.rank();
  std::mt19937_64 rng(options.seed + 1);
  std::uniform_int_distribution<std::size_t> pick(0, r - 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> lo = random_exponents(rng, r - 1);
    std::vector<double> hi = lo;
    const std::size_t i = pick(rng);
    hi[i] = lo[i] + (1.0 - lo[i]) * u(rng);
    const double drop = weighted_entropy_closed_form(sys, Exponents::validate(lo)) -
                        weighted_entropy_closed_form(sys, Exponents::validate(hi));
    worst = std::max(worst, drop);
  }
  out.passed = worst <= 1e-12;
  out.detail = "largest decrease " + std::to_string(std::max(worst, 0.0));
  return out;
}

CheckResult check_collapses(const DigitSystem& sys, const CheckOptions& options) {
  CheckResult out{"degenerate collapses", true, {}};
  const std::size_t r = sys.rank();
  const double full = weighted_entropy_closed_form(
      sys, Exponents::validate(std::vector<double>(r - 1, 1.0)));
  double worst = std::abs(full - std::log(static_cast<double>(sys.size())));

  std::mt19937_64 rng(options.seed + 2);
  const double d1 = std::log(static_cast<double>(project_alphabet(sys, 1).symbols.size()));
  for (int t = 0; t < 10; ++t) {
    std::vector<double> a = random_exponents(rng, r - 1);
    a.back() = 0.0;
    worst = std::max(worst, std::abs(weighted_entropy_closed_form(sys, Exponents::validate(a)) - d1));
  }
  out.passed = worst <= 1e-12;
  out.detail = deviation(worst);
  return out;
}

CheckResult check_weights_consistency(int trials, const CheckOptions& options) {
  CheckResult out{"weights consistency", true, {}};
  std::mt19937_64 rng(options.seed + 3);
  std::uniform_int_distribution<int> rank(2, 5);
  std::uniform_int_distribution<int> base(2, 12);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<int> bases(static_cast<std::size_t>(rank(rng)));
    for (int& m : bases) m = base(rng);
    std::sort(bases.begin(), bases.end());
    const WeightVector via = weights_from_exponents(exponents_from_bases(bases));
    const WeightVector direct = bowen_weights_from_bases(bases);
    for (std::size_t i = 0; i < via.size(); ++i) {
      worst = std::max(worst, std::abs(via[i] - direct[i]));
    }
  }
  out.passed = worst <= 1e-12;
  out.detail = deviation(worst);
  return out;
}

CheckResult check_submultiplicativity(const Chain& chain, const Exponents& a,
                                      const CheckOptions& options) {
  CheckResult out{"submultiplicativity", true, {}};
  int tested = 0;
  for (std::size_t n = 1; n <= options.n_max; ++n) {
    for (std::size_t m = n; n + m <= options.n_max; ++m) {
      if (!fits(chain, n + m, options)) continue;
      ++tested;
      if (!submultiplicativity_check(chain, a, n, m, options.estimator)) {
        out.passed = false;
        out.detail = "fails at N=" + std::to_string(n) + ", M=" + std::to_string(m);
        return out;
      }
    }
  }
  out.detail = std::to_string(tested) + " pairs";
  return out;
}

CheckResult check_path_word_ratio(const Chain& chain, std::size_t n_max) {
  CheckResult out{"path/word ratio", true, {}};
  if (!chain.is_sofic()) {
    out.detail = "not applicable";
    return out;
  }
  const auto matrices = chain_count_matrices(chain);
  const ProjectedAlphabet& level2 = chain.alphabet(2);
  std::vector<const CountMatrix*> by_letter;
  for (const Digit& s : level2.symbols) by_letter.push_back(find_matrix(matrices, s));
  const FollowerAutomaton& upper = chain.follower(2);
  const auto vertices = static_cast<Eigen::Index>(chain.graph()->vertices.size());

  long long words_checked = 0;
  double lo = INFINITY;
  double hi = 0.0;
  // Depth-first over admissible level-2 words, carrying the path-count vector
  // (entry i = paths ending at vertex i) and the level-1 word counter.
  std::function<void(std::size_t, int, const Eigen::VectorXd&, const PreimageCounter&)> walk =
      [&](std::size_t depth, int state, const Eigen::VectorXd& paths,
          const PreimageCounter& counter) {
        for (std::size_t letter = 0; letter < level2.symbols.size(); ++letter) {
          const int next = upper.step(state, letter);
          if (next == FollowerAutomaton::kDead) continue;
          Eigen::VectorXd moved = by_letter[letter]->matrix.cast<double>() * paths;
          PreimageCounter c = counter;
          c.push(letter);
          const double words = static_cast<double>(c.total());
          const double total_paths = moved.sum();
          ++words_checked;
          if (words < 1.0 || total_paths < words || total_paths > static_cast<double>(vertices) * words) {
            out.passed = false;
          }
          if (words >= 1.0) {
            lo = std::min(lo, total_paths / words);
            hi = std::max(hi, total_paths / words);
          }
          if (depth + 1 < n_max) walk(depth + 1, next, moved, c);
        }
      };
  walk(0, 0, Eigen::VectorXd::Ones(vertices), PreimageCounter(chain, 1));
  std::ostringstream detail;
  detail << words_checked << " words, ratio in [" << lo << ", " << hi << "]";
  out.detail = detail.str();
  return out;
}

CheckResult check_power_scaling(const Chain& chain, const Exponents& a, const Potential* pot,
                                std::size_t m_max, const CheckOptions& options) {
  CheckResult out{"power scaling", true, {}};
  double worst = 0.0;
  const DigitSystem& sys = chain.system();
  if (!chain.is_sofic()) {
    const Potential zero = Potential::constant(sys, 0.0);
    const Potential& f = window_one(pot) ? *pot : zero;
    const double base = weighted_pressure_closed_form(sys, a, f);
    for (std::size_t m = 2; m <= m_max; ++m) {
      const DigitSystem power = power_system(sys, m);
      const double scaled = weighted_pressure_closed_form(power, a, f.block_sum(sys, m));
      worst = std::max(worst, std::abs(scaled - static_cast<double>(m) * base));
    }
  }
  int identities = 0;
  for (std::size_t m = 2; m <= m_max; ++m) {
    const Chain power = power_chain(chain, m);
    for (std::size_t n = 1; m * n <= options.n_max; ++n) {
      if (!fits(chain, m * n, options) || !fits(power, n, options)) break;
      const double lhs = nested_count(power, a, nullptr, n, options.estimator).log_value;
      const double rhs = nested_count(chain, a, nullptr, m * n, options.estimator).log_value;
      worst = std::max(worst, std::abs(lhs - rhs) / static_cast<double>(m * n));
      ++identities;
    }
  }
  out.passed = worst <= 1e-9;
  out.detail = deviation(worst) + ", " + std::to_string(identities) + " estimator identities";
  return out;
}

CheckResult check_estimator_matches_closed_form(const Chain& chain, const Exponents& a,
                                                const Potential* pot,
                                                const CheckOptions& options) {
  CheckResult out{"estimator matches closed form", true, {}};
  if (chain.is_sofic()) {
    out.detail = "not applicable";
    return out;
  }
  const Potential* f = window_one(pot);
  const double closed = f ? weighted_pressure_closed_form(chain.system(), a, *f)
                          : weighted_entropy_closed_form(chain.system(), a);
  double worst = 0.0;
  std::size_t n = 1;
  for (; n <= options.n_max && fits(chain, n, options); ++n) {
    worst = std::max(worst, std::abs(nested_count(chain, a, f, n, options.estimator).rate() - closed));
  }
  out.passed = worst <= 1e-10;
  out.detail = deviation(worst) + " for N <= " + std::to_string(n - 1);
  return out;
}

CheckResult check_variational_bound(const DigitSystem& sys, const Exponents& a,
                                    const Potential* pot) {
  CheckResult out{"variational bound", true, {}};
  const Potential* f = window_one(pot);
  const double closed = std::log(kp_recursion(sys, a, f).z0());
  double optimum = -INFINITY;
  try {
    optimum = maximize_bernoulli(sys, a, f).value.value;
  } catch (const DidNotConverge& e) {
    optimum = e.best().value.value;
  } catch (const std::logic_error& e) {
    out.passed = false;
    out.detail = e.what();
    return out;
  }
  const double recursion =
      bernoulli_objective(sys, a, optimal_measure_from_recursion(sys, a, f), f).value;
  const double gap = closed - optimum;
  const double rec_gap = std::abs(closed - recursion);
  out.passed = gap >= -1e-9 && gap <= 1e-6 && rec_gap <= 1e-6 && recursion <= closed + 1e-9;
  std::ostringstream detail;
  detail.precision(3);
  detail << "optimizer gap " << gap << ", recursion gap " << rec_gap;
  out.detail = detail.str();
  return out;
}

CheckResult check_growth_sandwich(const Chain& chain, const Exponents& a,
                                  const CheckOptions& options) {
  CheckResult out{"growth-rate sandwich", true, {}};
  double closed = 0.0;
  try {
    closed = chain.is_sofic() ? sofic_weighted_entropy_closed_form(chain, a)
                              : weighted_entropy_closed_form(chain.system(), a);
  } catch (const Error& e) {
    out.detail = std::string("not applicable: ") + e.what();
    return out;
  }
  double bound = INFINITY;
  for (std::size_t n = 1; n <= options.n_max && fits(chain, n, options); ++n) {
    bound = std::min(bound, nested_count(chain, a, nullptr, n, options.estimator).rate());
  }
  out.passed = closed <= bound + 1e-9;
  std::ostringstream detail;
  detail.precision(10);
  detail << "closed form " << closed << " <= Fekete bound " << bound;
  out.detail = detail.str();
  return out;
}

CheckResult check_dimension_order(const DigitSystem& sys) {
  CheckResult out{"Hausdorff <= Minkowski", true, {}};
  const double h = hausdorff_dimension(sys);
  const double m = minkowski_dimension(sys);
  out.passed = h <= m + 1e-12;
  std::ostringstream detail;
  detail.precision(10);
  detail << h << " <= " << m;
  out.detail = detail.str();
  return out;
}

std::vector<CheckResult> run_property_suite(const Chain& chain, const Exponents& a,
                                            const Potential* pot, const CheckOptions& options) {
  std::vector<CheckResult> out;
  const DigitSystem& sys = chain.system();
  out.push_back(check_weights_consistency(200, options));
  out.push_back(check_pressure_shift(chain, a, pot, options));
  out.push_back(check_submultiplicativity(chain, a, options));
  out.push_back(check_power_scaling(chain, a, pot, 3, options));
  out.push_back(check_growth_sandwich(chain, a, options));
  if (chain.is_sofic()) {
    out.push_back(check_path_word_ratio(chain, 10));
  } else {
    out.push_back(check_monotonicity(sys, 200, options));
    out.push_back(check_collapses(sys, options));
    out.push_back(check_estimator_matches_closed_form(chain, a, pot, options));
    out.push_back(check_variational_bound(sys, a, pot));
    out.push_back(check_dimension_order(sys));
  }
  return out;
}

}  // namespace wtp
