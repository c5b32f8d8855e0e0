#pragma once

// Brute-force reference computations for the unit and acceptance tests.
// They enumerate words directly and share no code with the library beyond
// its plain data types.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Digit = std::vector<int>;
using Letters = std::vector<Digit>;

/// All length-n words over `digits`.
inline std::vector<Letters> all_words(const std::vector<Digit>& digits, std::size_t n) {
  std::vector<Letters> out{{}};
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<Letters> next;
    for (const auto& w : out) {
      for (const auto& d : digits) {
        next.push_back(w);
        next.back().push_back(d);
      }
    }
    out = std::move(next);
  }
  return out;
}

struct Edge {
  int source;
  int target;
  Digit label;
};

/// Distinct label sequences of length-n paths (any start vertex).
inline std::set<Letters> path_label_words(int vertices, const std::vector<Edge>& edges,
                                          std::size_t n) {
  std::set<Letters> out;
  Letters labels;
  std::function<void(int, std::size_t)> walk = [&](int at, std::size_t depth) {
    if (depth == n) {
      out.insert(labels);
      return;
    }
    for (const auto& e : edges) {
      if (e.source != at) continue;
      labels.push_back(e.label);
      walk(e.target, depth + 1);
      labels.pop_back();
    }
  };
  for (int v = 0; v < vertices; ++v) walk(v, 0);
  return out;
}

/// Number of (start vertex, path) pairs whose labels, truncated to the
/// length of each projected letter, spell `projected`.
inline long long path_realizations(int vertices, const std::vector<Edge>& edges,
                                   const Letters& projected) {
  long long total = 0;
  std::function<void(int, std::size_t)> walk = [&](int at, std::size_t depth) {
    if (depth == projected.size()) {
      ++total;
      return;
    }
    for (const auto& e : edges) {
      if (e.source != at) continue;
      if (!std::equal(projected[depth].begin(), projected[depth].end(), e.label.begin())) continue;
      walk(e.target, depth + 1);
    }
  };
  for (int v = 0; v < vertices; ++v) walk(v, 0);
  return total;
}

inline Letters truncate(const Letters& w, std::size_t coords) {
  Letters out;
  for (const auto& d : w) out.emplace_back(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(coords));
  return out;
}

/// Nested cylinder sum by explicit grouping. `words` are the admissible
/// level-1 words of length n; `weight(u)` is the weight of a level-1 word
/// (1 for counts). a[i-1] is applied to level-i values summed into level i+1.
inline double nested_sum(const std::vector<Letters>& words, std::size_t r,
                         const std::vector<double>& a,
                         const std::function<double(const Letters&)>& weight) {
  // Level-2 values: sum of weights of level-1 words over each level-2 word.
  std::map<Letters, double> values;
  for (const auto& u : words) values[truncate(u, r - 1)] += weight(u);
  for (std::size_t level = 2; level <= r; ++level) {
    // Raise level-`level` values to a_{level-1} and sum into level + 1.
    const std::size_t coords = r - level;  // coordinates kept at level + 1
    std::map<Letters, double> up;
    for (const auto& [w, value] : values) {
      up[level == r ? Letters{} : truncate(w, coords)] += std::pow(value, a[level - 2]);
    }
    values = std::move(up);
  }
  return values.begin()->second;
}

inline double nested_count(const std::vector<Letters>& words, std::size_t r,
                           const std::vector<double>& a) {
  return nested_sum(words, r, a, [](const Letters&) { return 1.0; });
}

struct RandomSponge {
  std::vector<int> bases;
  std::vector<Digit> digits;
};

/// Random nonempty digit set in sorted bases.
inline RandomSponge random_sponge(std::mt19937_64& rng, std::size_t r, int max_base,
                                  std::size_t max_digits) {
  RandomSponge s;
  std::uniform_int_distribution<int> base(2, max_base);
  for (std::size_t i = 0; i < r; ++i) s.bases.push_back(base(rng));
  std::sort(s.bases.begin(), s.bases.end());
  std::vector<Digit> grid{{}};
  for (int m : s.bases) {
    std::vector<Digit> next;
    for (const auto& d : grid) {
      for (int x = 0; x < m; ++x) {
        next.push_back(d);
        next.back().push_back(x);
      }
    }
    grid = std::move(next);
  }
  std::shuffle(grid.begin(), grid.end(), rng);
  std::uniform_int_distribution<std::size_t> count(1, std::min(max_digits, grid.size()));
  grid.resize(count(rng));
  std::sort(grid.begin(), grid.end());
  s.digits = std::move(grid);
  return s;
}

inline std::vector<double> random_exponents(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> a(n);
  for (double& x : a) x = u(rng);
  return a;
}

inline double shannon(const std::vector<double>& q) {
  double h = 0.0;
  for (double x : q) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

}  // namespace oracle
