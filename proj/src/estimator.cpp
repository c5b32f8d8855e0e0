#include "wtp/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <thread>

#include "wtp/error.hpp"
#include "wtp/logsum.hpp"

namespace wtp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kChunk = 1024;
constexpr std::size_t kMaxPotentialStates = std::size_t{1} << 22;

// Innermost weight without a potential: exact big-integer preimage count.
class CountWeight {
 public:
  CountWeight(const Chain& chain, const Potential*) : counter_(chain, 1) {}
  void push(std::size_t parent_letter) { counter_.push(parent_letter); }
  double log_total() const { return log_of(counter_.total()); }

 private:
  PreimageCounter counter_;
};

// Innermost weight with a potential: sum over admissible level-1 words w of
// exp(sup_{[w]} S_N f). DP state = (follower state, last window-1 letters),
// values kept as log-sums of the Birkhoff sums fixed by w itself. The last
// window-1 terms depend on the continuation and are maximized at the end.
class PotentialWeight {
 public:
  PotentialWeight(const Chain& chain, const Potential* pot)
      : chain_(&chain), pot_(pot), fa_(&chain.follower(1)) {
    alphabet_ = chain.alphabet(1).symbols.size();
    tail_span_ = 1;
    for (std::size_t k = 1; k < pot->window(); ++k) tail_span_ *= alphabet_;
    const std::size_t states = fa_->states.size() * tail_span_;
    if (states > kMaxPotentialStates) {
      throw Error(ErrorCode::ComplexityBudgetExceeded, "potential window too wide for the DP");
    }
    log_mass_.assign(states, kNegInf);
    log_mass_[0] = 0.0;  // initial follower state, empty tail
  }

  void push(std::size_t parent_letter) {
    const std::size_t window = pot_->window();
    std::vector<double> next(log_mass_.size(), kNegInf);
    const auto& fib = chain_->fiber(1, parent_letter);
    for (std::size_t key = 0; key < log_mass_.size(); ++key) {
      if (log_mass_[key] == kNegInf) continue;
      const std::size_t state = key / tail_span_;
      const std::size_t tail = key % tail_span_;
      for (std::size_t e : fib) {
        const int t = fa_->step(static_cast<int>(state), e);
        if (t == FollowerAutomaton::kDead) continue;
        double term = log_mass_[key];
        std::size_t new_tail = tail * alphabet_ + e;
        if (length_ + 1 >= window) {
          term += pot_->at(new_tail);
          new_tail %= tail_span_;
        }
        const std::size_t nk = static_cast<std::size_t>(t) * tail_span_ + new_tail;
        next[nk] = add_log(next[nk], term);
      }
    }
    log_mass_ = std::move(next);
    ++length_;
  }

  double log_total() const {
    LogSumExp total;
    for (std::size_t key = 0; key < log_mass_.size(); ++key) {
      if (log_mass_[key] == kNegInf) continue;
      total.add(log_mass_[key] + best_tail(key / tail_span_, key % tail_span_));
    }
    return total.value();
  }

 private:
  static double add_log(double x, double y) {
    if (x == kNegInf) return y;
    if (y == kNegInf) return x;
    const double hi = std::max(x, y);
    return hi + std::log1p(std::exp(std::min(x, y) - hi));
  }

  // max over admissible continuations y (|y| = window-1) of the window-1
  // Birkhoff terms straddling the end of the word.
  double best_tail(std::size_t state, std::size_t tail) const {
    const std::size_t k = pot_->window();
    if (k == 1) return 0.0;
    std::vector<std::size_t> seq(2 * (k - 1), 0);
    for (std::size_t i = k - 1; i-- > 0;) {
      seq[i] = tail % alphabet_;
      tail /= alphabet_;
    }
    double best = kNegInf;
    walk_tail(static_cast<int>(state), 0, seq, best);
    return best;
  }

  void walk_tail(int state, std::size_t depth, std::vector<std::size_t>& seq,
                 double& best) const {
    const std::size_t k = pot_->window();
    if (depth == k - 1) {
      double sum = 0.0;
      for (std::size_t start = 0; start + 1 < k; ++start) {
        sum += (*pot_)(std::span<const std::size_t>(seq.data() + start, k));
      }
      best = std::max(best, sum);
      return;
    }
    for (std::size_t e = 0; e < alphabet_; ++e) {
      const int t = fa_->step(state, e);
      if (t == FollowerAutomaton::kDead) continue;
      seq[k - 1 + depth] = e;
      walk_tail(t, depth + 1, seq, best);
    }
  }

  const Chain* chain_;
  const Potential* pot_;
  const FollowerAutomaton* fa_;
  std::size_t alphabet_ = 0;
  std::size_t tail_span_ = 1;
  std::size_t length_ = 0;
  std::vector<double> log_mass_;
};

// Ranks admissible words of a level in lexicographic order.
class WordIndexer {
 public:
  WordIndexer(const FollowerAutomaton& fa, std::size_t n) : fa_(&fa), n_(n) {
    constexpr std::uint64_t kCap = std::numeric_limits<std::uint64_t>::max() / 2;
    completions_.assign(n + 1, std::vector<std::uint64_t>(fa.states.size(), 0));
    std::fill(completions_[0].begin(), completions_[0].end(), 1);
    for (std::size_t len = 1; len <= n; ++len) {
      for (std::size_t s = 0; s < fa.states.size(); ++s) {
        std::uint64_t c = 0;
        for (std::size_t e = 0; e < fa.alphabet_size(); ++e) {
          const int t = fa.step(static_cast<int>(s), e);
          if (t != FollowerAutomaton::kDead) {
            c = std::min(kCap, c + completions_[len - 1][static_cast<std::size_t>(t)]);
          }
        }
        completions_[len][s] = c;
      }
    }
  }

  std::uint64_t size() const { return completions_[n_][0]; }

  std::vector<std::size_t> unrank(std::uint64_t index) const {
    std::vector<std::size_t> word;
    word.reserve(n_);
    int state = 0;
    for (std::size_t pos = 0; pos < n_; ++pos) {
      const std::size_t remaining = n_ - pos - 1;
      for (std::size_t e = 0; e < fa_->alphabet_size(); ++e) {
        const int t = fa_->step(state, e);
        if (t == FollowerAutomaton::kDead) continue;
        const std::uint64_t c = completions_[remaining][static_cast<std::size_t>(t)];
        if (index < c) {
          word.push_back(e);
          state = t;
          break;
        }
        index -= c;
      }
    }
    return word;
  }

 private:
  const FollowerAutomaton* fa_;
  std::size_t n_;
  std::vector<std::vector<std::uint64_t>> completions_;
};

template <class Weight>
class NestedEvaluator {
 public:
  NestedEvaluator(const Chain& chain, const Exponents& a, const Potential* pot)
      : chain_(chain), a_(a), pot_(pot) {}

  // log of the level-`level` value of word x (level >= 2); the caller raises
  // it to a_{level-1}.
  double log_value(std::size_t level, const std::vector<std::size_t>& x) const {
    if (level == 2) {
      Weight w(chain_, pot_);
      for (std::size_t letter : x) w.push(letter);
      return w.log_total();
    }
    LogSumExp acc;
    const std::size_t child = level - 1;
    const double exponent = a_[child - 2];
    std::vector<std::size_t> y(x.size(), 0);
    if (child == 2) {
      std::vector<Weight> stack(x.size() + 1, Weight(chain_, pot_));
      walk_bottom(x, 0, 0, y, stack, exponent, acc);
    } else {
      walk_middle(child, x, 0, 0, y, exponent, acc);
    }
    return acc.value();
  }

 private:
  // Fiber words at level 2 share prefixes, so the innermost weight is
  // carried along the walk.
  void walk_bottom(const std::vector<std::size_t>& x, std::size_t pos, int state,
                   std::vector<std::size_t>& y, std::vector<Weight>& stack, double exponent,
                   LogSumExp& acc) const {
    if (pos == x.size()) {
      acc.add(exponent * stack[pos].log_total());
      return;
    }
    const FollowerAutomaton& fa = chain_.follower(2);
    for (std::size_t letter : chain_.fiber(2, x[pos])) {
      const int t = fa.step(state, letter);
      if (t == FollowerAutomaton::kDead) continue;
      y[pos] = letter;
      stack[pos + 1] = stack[pos];
      stack[pos + 1].push(letter);
      walk_bottom(x, pos + 1, t, y, stack, exponent, acc);
    }
  }

  void walk_middle(std::size_t child, const std::vector<std::size_t>& x, std::size_t pos,
                   int state, std::vector<std::size_t>& y, double exponent,
                   LogSumExp& acc) const {
    if (pos == x.size()) {
      acc.add(exponent * log_value(child, y));
      return;
    }
    const FollowerAutomaton& fa = chain_.follower(child);
    for (std::size_t letter : chain_.fiber(child, x[pos])) {
      const int t = fa.step(state, letter);
      if (t == FollowerAutomaton::kDead) continue;
      y[pos] = letter;
      walk_middle(child, x, pos + 1, t, y, exponent, acc);
    }
  }

  const Chain& chain_;
  const Exponents& a_;
  const Potential* pot_;
};

template <class Weight>
double evaluate(const Chain& chain, const Exponents& a, const Potential* pot, std::size_t n,
                const EstimatorOptions& options) {
  const std::size_t r = chain.rank();
  const WordIndexer indexer(chain.follower(r), n);
  const NestedEvaluator<Weight> evaluator(chain, a, pot);
  const double top_exponent = a[r - 2];
  const std::uint64_t words = indexer.size();
  const std::size_t chunks = static_cast<std::size_t>((words + kChunk - 1) / kChunk);

  // Fixed-size chunks reduced in index order: the result does not depend on
  // how chunks are spread over threads.
  std::vector<LogSumExp> partial(chunks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      LogSumExp acc;
      const std::uint64_t end = std::min<std::uint64_t>(words, (c + 1) * kChunk);
      for (std::uint64_t i = c * kChunk; i < end; ++i) {
        acc.add(top_exponent * evaluator.log_value(r, indexer.unrank(i)));
      }
      partial[c] = acc;
    }
  };
  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  LogSumExp total;
  for (const auto& p : partial) total.merge(p);
  return total.value();
}

}  // namespace

BigCount enumeration_cost(const Chain& chain, std::size_t n) {
  BigCount cost = 0;
  for (std::size_t level = 2; level <= chain.rank(); ++level) {
    cost += count_admissible_words(chain, level, n);
  }
  return cost;
}

NestedCount nested_count(const Chain& chain, const Exponents& a, const Potential* pot,
                         std::size_t n, const EstimatorOptions& options) {
  if (a.size() + 1 != chain.rank()) {
    throw Error(ErrorCode::ExponentLengthMismatch,
                "expected " + std::to_string(chain.rank() - 1) + " exponents");
  }
  Exponents::validate(a.values);
  if (n == 0) {
    throw Error(ErrorCode::ValidationError, "word length must be at least 1");
  }
  if (pot && pot->window() > n) {
    throw Error(ErrorCode::PotentialWindowTooLarge,
                "window " + std::to_string(pot->window()) + " exceeds N = " + std::to_string(n));
  }
  if (pot && pot->alphabet_size() != chain.system().size()) {
    throw Error(ErrorCode::PotentialInvalid, "potential built for a different digit set");
  }
  const BigCount cost = enumeration_cost(chain, n);
  if (cost > options.budget) {
    throw Error(ErrorCode::ComplexityBudgetExceeded,
                "N = " + std::to_string(n) + " needs " + cost.str() +
                    " enumerated words, budget " + std::to_string(options.budget));
  }
  NestedCount out;
  out.n = n;
  out.log_value = pot ? evaluate<PotentialWeight>(chain, a, pot, n, options)
                      : evaluate<CountWeight>(chain, a, nullptr, n, options);
  return out;
}

EstimateSeries entropy_estimate(const Chain& chain, const Exponents& a, const Potential* pot,
                                std::size_t n_max, const EstimatorOptions& options) {
  if (n_max == 0) {
    throw Error(ErrorCode::ValidationError, "n_max must be at least 1");
  }
  EstimateSeries series;
  double bound = std::numeric_limits<double>::infinity();
  const std::size_t first = pot ? pot->window() : 1;
  for (std::size_t n = first; n <= n_max; ++n) {
    const NestedCount s = nested_count(chain, a, pot, n, options);
    bound = std::min(bound, s.rate());
    series.entries.push_back({n, s.rate(), bound});
  }
  if (series.entries.empty()) {
    throw Error(ErrorCode::PotentialWindowTooLarge, "n_max below the potential window");
  }
  series.fekete_bound = bound;
  return series;
}

bool submultiplicativity_check(const Chain& chain, const Exponents& a, std::size_t n,
                               std::size_t m, const EstimatorOptions& options) {
  const double joint = nested_count(chain, a, nullptr, n + m, options).log_value;
  const double split = nested_count(chain, a, nullptr, n, options).log_value +
                       nested_count(chain, a, nullptr, m, options).log_value;
  return joint <= split + std::log1p(1e-9);
}

}  // namespace wtp
