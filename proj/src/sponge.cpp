#include "wtp/sponge.hpp"

#include <cmath>
#include <string>

#include "wtp/error.hpp"

namespace wtp {

namespace {

void check_exponents(const DigitSystem& sys, const Exponents& a) {
  if (a.size() + 1 != sys.rank()) {
    throw Error(ErrorCode::ExponentLengthMismatch,
                "expected " + std::to_string(sys.rank() - 1) + " exponents, got " +
                    std::to_string(a.size()));
  }
  Exponents::validate(a.values);
}

}  // namespace

ZTable contract_from(const DigitSystem& sys, std::vector<double> top, const Exponents& a) {
  check_exponents(sys, a);
  const std::size_t r = sys.rank();
  ZTable z;
  z.values.resize(r + 1);
  z.alphabets.resize(r + 1);
  z.parent.resize(r + 1);
  for (std::size_t j = 1; j <= r; ++j) {
    z.alphabets[j] = project_alphabet(sys, j);
  }
  for (std::size_t j = 1; j <= r; ++j) {
    for (const Digit& s : z.alphabets[j].symbols) {
      if (j == 1) {
        z.parent[j].push_back(0);
      } else {
        Digit prefix(s.begin(), s.end() - 1);
        z.parent[j].push_back(*z.alphabets[j - 1].index_of(prefix));
      }
    }
  }
  z.values[r].assign(z.alphabets[r].symbols.size(), 1.0);
  if (top.size() != z.alphabets[r - 1].symbols.size()) {
    throw Error(ErrorCode::ValidationError, "one top value per symbol of D_{r-1} required");
  }
  z.values[r - 1] = std::move(top);
  for (std::size_t j = r - 1; j >= 1; --j) {
    const double exponent = a[r - j - 1];
    const std::size_t width = j == 1 ? 1 : z.alphabets[j - 1].symbols.size();
    std::vector<double> next(width, 0.0);
    for (std::size_t k = 0; k < z.values[j].size(); ++k) {
      next[z.parent[j][k]] += std::pow(z.values[j][k], exponent);
    }
    z.values[j - 1] = std::move(next);
  }
  return z;
}

ZTable kp_recursion(const DigitSystem& sys, const Exponents& a, const Potential* pot) {
  check_exponents(sys, a);
  if (pot && pot->window() != 1) {
    throw Error(ErrorCode::WindowUnsupported,
                "closed form needs a window-1 potential, got window " +
                    std::to_string(pot->window()));
  }
  const std::size_t r = sys.rank();
  const ProjectedAlphabet below = project_alphabet(sys, r - 1);
  std::vector<double> top(below.symbols.size(), 0.0);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const Digit& d = sys.digits()[k];
    const Digit prefix(d.begin(), d.end() - 1);
    const std::size_t idx = k;
    const double weight = pot ? std::exp((*pot)(std::span<const std::size_t>(&idx, 1))) : 1.0;
    top[*below.index_of(prefix)] += weight;
  }
  return contract_from(sys, std::move(top), a);
}

double weighted_entropy_closed_form(const DigitSystem& sys, const Exponents& a) {
  return std::log(kp_recursion(sys, a).z0());
}

double weighted_pressure_closed_form(const DigitSystem& sys, const Exponents& a,
                                     const Potential& pot) {
  return std::log(kp_recursion(sys, a, &pot).z0());
}

double hausdorff_dimension(const DigitSystem& sys) {
  const Exponents a = exponents_from_bases(sys.bases());
  return weighted_entropy_closed_form(sys, a) / std::log(static_cast<double>(sys.bases()[0]));
}

double minkowski_dimension(const DigitSystem& sys) {
  double dim = 0.0;
  double previous = 1.0;
  for (std::size_t j = 1; j <= sys.rank(); ++j) {
    const double count = static_cast<double>(project_alphabet(sys, j).symbols.size());
    dim += std::log(count / previous) / std::log(static_cast<double>(sys.bases()[j - 1]));
    previous = count;
  }
  return dim;
}

}  // namespace wtp
