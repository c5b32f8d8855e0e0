#pragma once

// Closed forms for full-shift sponge chains via the Kenyon-Peres recursion.
//
// Z is indexed by prefix length j (not by level): Z_r is the indicator of D,
// Z_{r-1}(x) sums the digit weights over the extensions of x, and contracting
// from prefix length j to j - 1 raises Z_j to the exponent a_{r-j}. So a_1 acts
// on Z_{r-1} and a_{r-1} on Z_1, matching the level-wise nested count.

#include <optional>
#include <vector>

#include "wtp/potential.hpp"
#include "wtp/symbolic.hpp"
#include "wtp/weights.hpp"

namespace wtp {

struct ZTable {
  /// values[j][k] = Z_j at the k-th symbol of D_j; values[0] = {Z_0}.
  std::vector<std::vector<double>> values;
  /// alphabets[j] = D_j for j >= 1; alphabets[0] is empty.
  std::vector<ProjectedAlphabet> alphabets;
  /// parent[j][k] = index in D_{j-1} of the prefix of symbol k (j >= 1).
  std::vector<std::vector<std::size_t>> parent;

  double z0() const { return values[0][0]; }
};

/// Builds Z_{r-1}..Z_0 from given Z_{r-1} values (one per symbol of D_{r-1}).
/// Shared by the sponge recursion and the sofic closed form.
ZTable contract_from(const DigitSystem& sys, std::vector<double> top, const Exponents& a);

/// Kenyon-Peres recursion with optional window-1 potential (digit weight
/// e^{f(e)} instead of 1). Throws ExponentLengthMismatch / WindowUnsupported.
ZTable kp_recursion(const DigitSystem& sys, const Exponents& a,
                    const Potential* pot = nullptr);

/// h^a = log Z_0, in nats.
double weighted_entropy_closed_form(const DigitSystem& sys, const Exponents& a);

/// P^a(f) = log Z_0(f) for a window-1 potential.
double weighted_pressure_closed_form(const DigitSystem& sys, const Exponents& a,
                                     const Potential& pot);

/// log Z_0 / log m_1 with a_i = log m_{r-i} / log m_{r-i+1}.
double hausdorff_dimension(const DigitSystem& sys);

/// sum_j log(|D_j| / |D_{j-1}|) / log m_j, |D_0| = 1.
double minkowski_dimension(const DigitSystem& sys);

}  // namespace wtp
