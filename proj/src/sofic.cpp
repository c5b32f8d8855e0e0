#include "wtp/sofic.hpp"

#include <algorithm>
#include <cmath>

#include "wtp/error.hpp"
#include "wtp/sponge.hpp"

namespace wtp {

namespace {

std::vector<Digit> product_grid(std::span<const int> bases, std::size_t length) {
  std::vector<Digit> out;
  Digit cur(length, 0);
  while (true) {
    out.push_back(cur);
    std::size_t pos = length;
    while (pos > 0) {
      if (++cur[pos - 1] < bases[pos - 1]) break;
      cur[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return out;
}

}  // namespace

std::vector<CountMatrix> build_count_matrices(const LabeledGraph& g,
                                              std::span<const int> bases,
                                              std::size_t prefix_length) {
  if (prefix_length < 1 || prefix_length > bases.size()) {
    throw Error(ErrorCode::LevelOutOfRange, "projection length outside 1..r");
  }
  const auto n = static_cast<Eigen::Index>(g.vertices.size());
  std::vector<CountMatrix> out;
  for (Digit& label : product_grid(bases, prefix_length)) {
    out.push_back({std::move(label), CountMatrixData::Zero(n, n)});
  }
  for (const LabeledEdge& e : g.edges) {
    const Digit prefix(e.label.begin(),
                       e.label.begin() + static_cast<std::ptrdiff_t>(prefix_length));
    auto it = std::lower_bound(out.begin(), out.end(), prefix,
                               [](const CountMatrix& m, const Digit& d) { return m.label < d; });
    if (it == out.end() || it->label != prefix) {
      throw Error(ErrorCode::DigitOutOfRange, "edge label outside the bases");
    }
    it->matrix(static_cast<Eigen::Index>(e.target), static_cast<Eigen::Index>(e.source)) += 1;
  }
  return out;
}

std::vector<CountMatrix> chain_count_matrices(const Chain& chain) {
  const std::size_t prefix = chain.rank() - 1;
  if (chain.graph()) {
    return build_count_matrices(*chain.graph(), chain.system().bases(), prefix);
  }
  LabeledGraph one_vertex{{"v"}, {}};
  for (const Digit& d : chain.system().digits()) {
    one_vertex.edges.push_back({0, 0, d});
  }
  return build_count_matrices(one_vertex, chain.system().bases(), prefix);
}

const CountMatrix* find_matrix(const std::vector<CountMatrix>& matrices, const Digit& label) {
  auto it = std::lower_bound(matrices.begin(), matrices.end(), label,
                             [](const CountMatrix& m, const Digit& d) { return m.label < d; });
  return it != matrices.end() && it->label == label ? &*it : nullptr;
}

std::optional<SpectralAlignment> detect_alignment(const std::vector<CountMatrix>& matrices,
                                                  const AlignmentOptions& options) {
  if (matrices.empty()) return std::nullopt;
  const Eigen::Index n = matrices.front().matrix.rows();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
  bool any_nonzero = false;
  for (const CountMatrix& m : matrices) {
    sum += m.matrix.cast<double>();
    any_nonzero = any_nonzero || !m.is_zero();
  }
  if (!any_nonzero) return std::nullopt;

  // The identity shift keeps the Perron vector and removes periodicity.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  bool converged = false;
  for (int it = 0; it < options.max_iterations; ++it) {
    Eigen::VectorXd next = sum * v;
    const double scale = next.maxCoeff();
    if (!(scale > 0.0)) return std::nullopt;
    next /= scale;
    const double change = (next - v).lpNorm<Eigen::Infinity>();
    v = std::move(next);
    if (change < options.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged || v.minCoeff() < options.positivity_floor) return std::nullopt;

  SpectralAlignment out;
  out.eigenvector = v;
  for (const CountMatrix& m : matrices) {
    if (m.is_zero()) {
      out.eigenvalues.emplace_back(std::nullopt);
      continue;
    }
    const Eigen::VectorXd w = m.matrix.cast<double>() * v;
    const double lambda = w.dot(v) / v.dot(v);
    if (!(lambda > 0.0)) return std::nullopt;
    const double residual = (w - lambda * v).lpNorm<Eigen::Infinity>();
    if (residual > options.residual_tolerance * (lambda * v).lpNorm<Eigen::Infinity>()) {
      return std::nullopt;
    }
    out.eigenvalues.emplace_back(lambda);
  }
  return out;
}

BigCount path_count(const std::vector<CountMatrix>& matrices, const Chain& chain,
                    const Word& v) {
  if (v.level != 2) {
    throw Error(ErrorCode::LevelOutOfRange, "path counts take level-2 words");
  }
  const auto& symbols = chain.alphabet(2).symbols;
  const auto n = static_cast<std::size_t>(matrices.front().matrix.rows());
  std::vector<BigCount> ends(n, BigCount(1));
  for (std::size_t letter : v.letters) {
    const CountMatrix* m = find_matrix(matrices, symbols.at(letter));
    std::vector<BigCount> next(n, BigCount(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const long long c = m->matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (c != 0) next[i] += ends[j] * c;
      }
    }
    ends = std::move(next);
  }
  BigCount total = 0;
  for (const auto& c : ends) total += c;
  return total;
}

double sofic_bracket_value(const Chain& chain, const Exponents& a) {
  for (std::size_t level = 2; level <= chain.rank(); ++level) {
    if (!chain.level_is_full_shift(level)) {
      throw Error(ErrorCode::UpperLevelsNotFullShift,
                  "level " + std::to_string(level) + " is not a full shift");
    }
  }
  const auto matrices = chain_count_matrices(chain);
  const auto alignment = detect_alignment(matrices);
  if (!alignment) {
    throw Error(ErrorCode::NotAligned, "count matrices share no positive eigenvector");
  }
  const auto& symbols = chain.alphabet(2).symbols;
  std::vector<double> top(symbols.size(), 0.0);
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    const CountMatrix* m = find_matrix(matrices, symbols[k]);
    const auto idx = static_cast<std::size_t>(m - matrices.data());
    top[k] = alignment->eigenvalues[idx].value_or(0.0);
  }
  return contract_from(chain.system(), std::move(top), a).z0();
}

double sofic_weighted_entropy_closed_form(const Chain& chain, const Exponents& a) {
  return std::log(sofic_bracket_value(chain, a));
}

SoficDimensionReport sofic_dimension_report(const Chain& chain, const Exponents& a) {
  SoficDimensionReport report;
  report.bracket_value = sofic_bracket_value(chain, a);
  report.h_a_nats = std::log(report.bracket_value);
  report.h_over_log_m1 =
      report.h_a_nats / std::log(static_cast<double>(chain.system().bases()[0]));
  report.warning = kSoficDimensionWarning;
  return report;
}

}  // namespace wtp
