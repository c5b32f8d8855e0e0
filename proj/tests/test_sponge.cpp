#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wtp/sponge.hpp"
#include "wtp/variational.hpp"

using namespace wtp;
using fixtures::code_of;

namespace {

DigitSystem make(const oracle::RandomSponge& s) { return DigitSystem::validate(s.bases, s.digits); }

// Distinct boxes of side m_1^{-n} met by the level-n cylinders: coordinate i
// is resolved to floor(n log m_1 / log m_i) digits.
std::size_t box_count(const DigitSystem& sys, std::size_t n) {
  const std::size_t r = sys.rank();
  std::vector<std::size_t> depth(r);
  for (std::size_t i = 0; i < r; ++i) {
    depth[i] = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * std::log(sys.bases()[0]) / std::log(sys.bases()[i]) + 1e-9));
  }
  std::set<std::vector<int>> boxes;
  for (const auto& w : oracle::all_words(sys.digits(), n)) {
    std::vector<int> key;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t t = 0; t < depth[i]; ++t) key.push_back(w[t][i]);
      key.push_back(-1);
    }
    boxes.insert(key);
  }
  return boxes.size();
}

}  // namespace

TEST_CASE("carpet recursion") {
  const DigitSystem c = fixtures::carpet();
  const double a = fixtures::carpet_a();
  const ZTable z = kp_recursion(c, Exponents::validate({a}));
  // Z_1 over D_1 = {0, 1}
  CHECK(z.values[1][0] == 2.0);
  CHECK(z.values[1][1] == 1.0);
  const double expected = 1.0 + std::pow(2.0, a);
  CHECK(std::abs(z.z0() - expected) <= 1e-14);
  CHECK(z.z0() == doctest::Approx(2.5486).epsilon(1e-4));
  CHECK(std::abs(weighted_entropy_closed_form(c, Exponents::validate({a})) - std::log(expected)) <=
        1e-12);
}

TEST_CASE("carpet dimensions") {
  const DigitSystem c = fixtures::carpet();
  const double a = fixtures::carpet_a();
  const double hausdorff = std::log2(1.0 + std::pow(2.0, a));
  CHECK(std::abs(hausdorff_dimension(c) - hausdorff) <= 1e-12);
  CHECK(std::abs(hausdorff_dimension(c) - 1.349) <= 1e-3);
  const double minkowski = 1.0 + std::log(1.5) / std::log(3.0);
  CHECK(std::abs(minkowski_dimension(c) - minkowski) <= 1e-12);
  CHECK(std::abs(minkowski_dimension(c) - 1.369) <= 1e-3);
}

TEST_CASE("exponent index mapping pinned against explicit grouping") {
  // Asymmetric 3D digit set: swapping a_1 and a_2 changes the value, so an
  // off-by-one in the contraction order shows up.
  const DigitSystem sys = DigitSystem::validate(
      {2, 3, 4}, {{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 1, 0}, {1, 2, 3}});
  const std::vector<double> a{0.3, 0.8};
  const double closed = weighted_entropy_closed_form(sys, Exponents::validate(a));
  const double grouped = oracle::nested_count(oracle::all_words(sys.digits(), 1), 3, a);
  CHECK(std::abs(closed - std::log(grouped)) <= 1e-12);
  const double swapped = weighted_entropy_closed_form(sys, Exponents::validate({0.8, 0.3}));
  CHECK(std::abs(swapped - closed) > 1e-3);
}

TEST_CASE("trivial and degenerate cases") {
  const DigitSystem six = DigitSystem::validate(
      {2, 3}, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}});
  CHECK(std::abs(weighted_entropy_closed_form(six, Exponents::validate({1.0})) - std::log(6.0)) <=
        1e-12);

  SUBCASE("full product set has dimension r") {
    for (const std::vector<int>& bases :
         {std::vector<int>{3, 3, 3}, std::vector<int>{2, 3, 4}, std::vector<int>{2, 5}}) {
      std::vector<Digit> all{{}};
      for (int m : bases) {
        std::vector<Digit> next;
        for (const auto& d : all) {
          for (int x = 0; x < m; ++x) {
            next.push_back(d);
            next.back().push_back(x);
          }
        }
        all = std::move(next);
      }
      const DigitSystem full = DigitSystem::validate(bases, all);
      CHECK(hausdorff_dimension(full) == doctest::Approx(static_cast<double>(bases.size())).epsilon(1e-12));
      CHECK(minkowski_dimension(full) == doctest::Approx(static_cast<double>(bases.size())).epsilon(1e-12));
    }
  }
  SUBCASE("errors") {
    const DigitSystem c = fixtures::carpet();
    CHECK(code_of([&] { kp_recursion(c, Exponents::validate({0.5, 0.5})); }) ==
          ErrorCode::ExponentLengthMismatch);
    const Potential wide = Potential::from_entries(c, 2, {}, 0.0);
    CHECK(code_of([&] { kp_recursion(c, Exponents::validate({0.5}), &wide); }) ==
          ErrorCode::WindowUnsupported);
  }
}

TEST_CASE("constant potential factors out") {
  const DigitSystem c = fixtures::carpet();
  const Exponents a = Exponents::validate({fixtures::carpet_a()});
  const double w1 = weights_from_exponents(a)[0];
  for (double k : {-2.0, 0.0, 0.7, 5.0}) {
    const double z = kp_recursion(c, a, nullptr).z0();
    const Potential f = Potential::constant(c, k);
    CHECK(kp_recursion(c, a, &f).z0() == doctest::Approx(std::exp(k * w1) * z).epsilon(1e-13));
  }
  const Potential zero = Potential::constant(c, 0.0);
  CHECK(weighted_pressure_closed_form(c, a, zero) == weighted_entropy_closed_form(c, a));
}

TEST_CASE("Minkowski dimension agrees with brute-force box counting") {
  // Bases whose logarithms are commensurable make the box depth exact, so
  // the discrete slope equals the dimension.
  std::mt19937_64 rng(3);
  for (const std::vector<int>& bases : {std::vector<int>{2, 4}, std::vector<int>{2, 2, 4}}) {
    for (int t = 0; t < 5; ++t) {
      std::vector<Digit> grid{{}};
      for (int m : bases) {
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
      grid.resize(1 + rng() % 5);
      const DigitSystem sys = DigitSystem::validate(bases, grid);
      const double slope = std::log(static_cast<double>(box_count(sys, 6)) /
                                    static_cast<double>(box_count(sys, 4))) /
                           (2.0 * std::log(2.0));
      CHECK(minkowski_dimension(sys) == doctest::Approx(slope).epsilon(1e-12));
    }
  }
  SUBCASE("one point per fiber") {
    const DigitSystem sys = DigitSystem::validate({2, 4}, {{0, 1}, {1, 3}});
    CHECK(minkowski_dimension(sys) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(box_count(sys, 6) == 64);
  }
}

TEST_CASE("random 3D sponge: closed form, explicit grouping and optimizer agree") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 5; ++t) {
    oracle::RandomSponge s{{2, 3, 4}, {}};
    std::set<Digit> chosen;
    while (chosen.size() < 5) {
      chosen.insert({static_cast<int>(rng() % 2), static_cast<int>(rng() % 3), static_cast<int>(rng() % 4)});
    }
    s.digits.assign(chosen.begin(), chosen.end());
    const DigitSystem sys = make(s);
    const Exponents a = exponents_from_bases(sys.bases());
    const double closed = std::log(kp_recursion(sys, a).z0());
    for (std::size_t n = 1; n <= 3; ++n) {
      const double grouped = oracle::nested_count(oracle::all_words(sys.digits(), n), 3, a.values);
      CHECK(std::abs(std::log(grouped) / static_cast<double>(n) - closed) <= 1e-12);
    }
    const BernoulliOptimum best = maximize_bernoulli(sys, a);
    CHECK(best.value.value <= closed + 1e-9);
    CHECK(best.value.value >= closed - 1e-6);
    CHECK(hausdorff_dimension(sys) == doctest::Approx(closed / std::log(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("properties on random sponges") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 2 + rng() % 3;
    const DigitSystem sys = make(oracle::random_sponge(rng, r, 4, 12));
    const std::vector<double> lo = oracle::random_exponents(rng, r - 1);

    // monotone in each exponent
    std::vector<double> hi = lo;
    const std::size_t i = rng() % (r - 1);
    hi[i] += (1.0 - hi[i]) * u(rng);
    CHECK(weighted_entropy_closed_form(sys, Exponents::validate(lo)) <=
          weighted_entropy_closed_form(sys, Exponents::validate(hi)) + 1e-12);

    // pressure shift
    const Exponents a = Exponents::validate(lo);
    std::vector<double> values(sys.size());
    for (double& v : values) v = 4.0 * u(rng) - 2.0;
    const Potential f = Potential::per_digit(sys, values);
    const double c = 6.0 * u(rng) - 3.0;
    const double w1 = weights_from_exponents(a)[0];
    CHECK(std::abs(weighted_pressure_closed_form(sys, a, f.shifted(c)) -
                   weighted_pressure_closed_form(sys, a, f) - w1 * c) <= 1e-9);

    // collapses
    const double top = weighted_entropy_closed_form(sys, Exponents::validate(std::vector<double>(r - 1, 1.0)));
    CHECK(std::abs(top - std::log(static_cast<double>(sys.size()))) <= 1e-12);
    std::vector<double> bottom = lo;
    bottom.back() = 0.0;
    CHECK(std::abs(weighted_entropy_closed_form(sys, Exponents::validate(bottom)) -
                   std::log(static_cast<double>(project_alphabet(sys, 1).symbols.size()))) <= 1e-12);

    CHECK(hausdorff_dimension(sys) <= minkowski_dimension(sys) + 1e-12);
  }
}

TEST_CASE("power scaling of the closed form") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const std::size_t r = 2 + rng() % 2;
    const DigitSystem sys = make(oracle::random_sponge(rng, r, 3, 4));
    const Exponents a = Exponents::validate(oracle::random_exponents(rng, r - 1));
    std::vector<double> values(sys.size());
    for (double& v : values) v = u(rng);
    const Potential f = Potential::per_digit(sys, values);
    const double base = weighted_pressure_closed_form(sys, a, f);
    for (std::size_t m = 1; m <= 3; ++m) {
      const double scaled = weighted_pressure_closed_form(power_system(sys, m), a, f.block_sum(sys, m));
      CHECK(std::abs(scaled - static_cast<double>(m) * base) <= 1e-9);
    }
  }
}
