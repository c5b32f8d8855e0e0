#pragma once

// Chains of one-sided symbolic systems X_1 -> X_2 -> ... -> X_r.
//
// Level numbering follows the factor chain: level i keeps the first
// r - i + 1 digit coordinates. Level 1 is the full digit alphabet D, level r
// is the alphabet of first coordinates D_1. A "prefix length" j is the other
// convention (D_j = prefixes of length j), so level i <-> prefix length
// r - i + 1. Every public function below says which one it takes.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wtp {

using BigCount = boost::multiprecision::cpp_int;
using Digit = std::vector<int>;

/// Natural logarithm of a (possibly huge) positive integer.
double log_of(const BigCount& n);

class DigitSystem {
 public:
  /// Validates bases m_1 <= ... <= m_r (r >= 2, each >= 2) and a nonempty
  /// digit set inside prod {0..m_i-1}. Duplicate digits are dropped and the
  /// remaining ones sorted lexicographically.
  static DigitSystem validate(std::vector<int> bases, std::vector<Digit> digits);

  std::span<const int> bases() const { return bases_; }
  const std::vector<Digit>& digits() const { return digits_; }
  std::size_t rank() const { return bases_.size(); }
  std::size_t size() const { return digits_.size(); }

  /// Index into digits(), or nullopt when the digit is not in D.
  std::optional<std::size_t> index_of(const Digit& digit) const;

  friend bool operator==(const DigitSystem&, const DigitSystem&) = default;

 private:
  DigitSystem(std::vector<int> bases, std::vector<Digit> digits)
      : bases_(std::move(bases)), digits_(std::move(digits)) {}

  std::vector<int> bases_;
  std::vector<Digit> digits_;
};

/// D_j: the distinct length-j prefixes of the digits, sorted.
struct ProjectedAlphabet {
  std::size_t prefix_length = 0;
  std::vector<Digit> symbols;

  std::optional<std::size_t> index_of(const Digit& symbol) const;
};

/// Requires 1 <= j <= r, else LevelOutOfRange.
ProjectedAlphabet project_alphabet(const DigitSystem& sys, std::size_t j);

/// Digit system of the m-th iterate: digits are m-blocks of D, written in
/// bases m_i^m (coordinate i of a block is the base-m_i number spelled by
/// the block's i-th coordinates, most significant first).
DigitSystem power_system(const DigitSystem& sys, std::size_t m);

struct LabeledEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  Digit label;
};

struct LabeledGraph {
  std::vector<std::string> vertices;
  std::vector<LabeledEdge> edges;
};

/// Throws DuplicateLabelAtVertex / DeadVertex / UnknownVertex.
void check_right_resolving(const LabeledGraph& g);

/// Subset construction over the labels projected to `alphabet`. State 0 is
/// the full vertex set; the empty set is not materialized (kDead).
struct FollowerAutomaton {
  static constexpr int kDead = -1;

  std::vector<std::vector<std::size_t>> states;
  /// transitions[state][letter] -> state index or kDead.
  std::vector<std::vector<int>> transitions;

  std::size_t alphabet_size() const {
    return transitions.empty() ? 0 : transitions.front().size();
  }
  int step(int state, std::size_t letter) const {
    return state == kDead ? kDead : transitions[static_cast<std::size_t>(state)][letter];
  }
  /// Every word over the alphabet is accepted.
  bool accepts_everything() const;
};

FollowerAutomaton determinize(const LabeledGraph& g, const ProjectedAlphabet& alphabet);

/// A word at a given level (1..r); letters index that level's alphabet.
struct Word {
  std::size_t level = 1;
  std::vector<std::size_t> letters;
};

/// A chain of symbolic systems: either the full shift over D (a self-affine
/// sponge) or the sofic shift presented by a right-resolving D-labeled graph,
/// together with all of its coordinate projections.
class Chain {
 public:
  static Chain full_shift(DigitSystem sys);
  /// Every edge label must be a digit of `sys`.
  static Chain sofic(DigitSystem sys, LabeledGraph graph);

  const DigitSystem& system() const { return sys_; }
  const std::optional<LabeledGraph>& graph() const { return graph_; }
  bool is_sofic() const { return graph_.has_value(); }
  std::size_t rank() const { return sys_.rank(); }

  const ProjectedAlphabet& alphabet(std::size_t level) const;
  /// Image of a level-`level` letter in level + 1.
  std::size_t parent(std::size_t level, std::size_t letter) const;
  /// Letters of level `level` lying over `parent_letter` of level + 1.
  const std::vector<std::size_t>& fiber(std::size_t level, std::size_t parent_letter) const;
  const FollowerAutomaton& follower(std::size_t level) const;
  bool level_is_full_shift(std::size_t level) const;

  bool admissible(const Word& w) const;

 private:
  Chain(DigitSystem sys, std::optional<LabeledGraph> graph);

  void check_level(std::size_t level) const;

  DigitSystem sys_;
  std::optional<LabeledGraph> graph_;
  // Indexed by level - 1.
  std::vector<ProjectedAlphabet> alphabets_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::vector<std::size_t>>> fibers_;
  std::vector<FollowerAutomaton> followers_;
};

/// Chain of the m-th iterate: digits become m-blocks (see power_system) and,
/// for sofic chains, edges become length-m paths labeled by their blocks.
Chain power_chain(const Chain& chain, std::size_t m);

/// Number of admissible level-(v.level - 1) words of length |v| projecting
/// letterwise onto v. Full-shift levels multiply fiber sizes; other levels
/// run the follower-automaton dynamic program, so distinct label words are
/// counted (not paths). Throws InadmissibleWord / LevelOutOfRange.
BigCount preimage_count(const Chain& chain, const Word& v);

/// Number of admissible words of length n at `level`.
BigCount count_admissible_words(const Chain& chain, std::size_t level, std::size_t n);

/// Incremental form of preimage_count, fed one letter of the level-(i+1)
/// word at a time. Copyable, so a depth-first walk can branch on it.
class PreimageCounter {
 public:
  PreimageCounter(const Chain& chain, std::size_t level);

  /// Appends a level-(level+1) letter.
  void push(std::size_t parent_letter);
  BigCount total() const;

 private:
  const Chain* chain_;
  std::size_t level_;
  bool product_form_;
  BigCount product_;
  // Sparse vector over automaton states.
  std::vector<BigCount> by_state_;
};

}  // namespace wtp
