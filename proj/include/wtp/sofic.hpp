#pragma once

// Transfer matrices for sofic chains: one |V| x |V| count matrix per
// level-2 label, a common positive eigenvector check, and the closed form
// that replaces bottom-level word counts by per-label growth rates.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wtp/symbolic.hpp"
#include "wtp/weights.hpp"

namespace wtp {

using CountMatrixData = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// Entry (i, j) counts edges j -> i whose label projects to `label`.
struct CountMatrix {
  Digit label;
  CountMatrixData matrix;

  bool is_zero() const { return (matrix.array() == 0).all(); }
};

/// One matrix per tuple of prod_{i <= prefix_length} {0..m_i-1}, zero
/// matrices included, in lexicographic label order.
std::vector<CountMatrix> build_count_matrices(const LabeledGraph& g,
                                              std::span<const int> bases,
                                              std::size_t prefix_length);

/// Level-2 count matrices of a chain. A full-shift chain is read as its
/// one-vertex presentation (1x1 matrices holding fiber sizes).
std::vector<CountMatrix> chain_count_matrices(const Chain& chain);

const CountMatrix* find_matrix(const std::vector<CountMatrix>& matrices, const Digit& label);

struct SpectralAlignment {
  /// Strictly positive, max entry 1.
  Eigen::VectorXd eigenvector;
  /// Parallel to the input matrices; nullopt for zero matrices.
  std::vector<std::optional<double>> eigenvalues;
};

struct AlignmentOptions {
  double tolerance = 1e-13;
  int max_iterations = 100000;
  double residual_tolerance = 1e-10;
  double positivity_floor = 1e-9;
};

/// Perron vector of the summed matrix (power iteration on S + I), then
/// verified against every nonzero matrix. Absent when no common positive
/// eigenvector is found.
std::optional<SpectralAlignment> detect_alignment(const std::vector<CountMatrix>& matrices,
                                                  const AlignmentOptions& options = {});

/// Number of (start vertex, path) pairs whose labels project onto the
/// level-2 word v: 1^T A_{v_N} ... A_{v_1} 1.
BigCount path_count(const std::vector<CountMatrix>& matrices, const Chain& chain,
                    const Word& v);

/// Nested sum with Z_{r-1}(label) = lambda_label. Requires levels 2..r to be
/// full shifts (UpperLevelsNotFullShift) and an alignment (NotAligned).
double sofic_weighted_entropy_closed_form(const Chain& chain, const Exponents& a);

/// The bracket whose logarithm is h^a, i.e. Z_0 with lambdas at the bottom.
double sofic_bracket_value(const Chain& chain, const Exponents& a);

struct SoficDimensionReport {
  double bracket_value = 0.0;
  double h_a_nats = 0.0;
  double h_over_log_m1 = 0.0;
  std::string warning;
};

inline constexpr const char* kSoficDimensionWarning =
    "two dimension readings disagree for this sofic chain: the natural log of the "
    "bracket (h_a_nats) and h^a / log m_1 (h_over_log_m1); both are reported and "
    "neither is selected";

SoficDimensionReport sofic_dimension_report(const Chain& chain, const Exponents& a);

}  // namespace wtp
