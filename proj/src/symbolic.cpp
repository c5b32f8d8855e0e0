#include "wtp/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "wtp/error.hpp"

namespace wtp {

double log_of(const BigCount& n) {
  if (n <= 0) {
    throw std::domain_error("log_of: nonpositive count");
  }
  const unsigned bits = boost::multiprecision::msb(n);
  if (bits < 1000) {
    return std::log(n.convert_to<double>());
  }
  const unsigned shift = bits - 60;
  const BigCount head = n >> shift;
  return std::log(head.convert_to<double>()) + shift * std::numbers::ln2;
}

// ---------------------------------------------------------------------------
// DigitSystem

DigitSystem DigitSystem::validate(std::vector<int> bases, std::vector<Digit> digits) {
  if (bases.size() < 2) {
    throw Error(ErrorCode::RankTooSmall,
                "need at least two bases, got " + std::to_string(bases.size()));
  }
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i] < 2) {
      throw Error(ErrorCode::DigitOutOfRange,
                  "base " + std::to_string(i) + " must be at least 2");
    }
    if (i > 0 && bases[i] < bases[i - 1]) {
      throw Error(ErrorCode::BasesNotSorted, "bases must be nondecreasing");
    }
  }
  if (digits.empty()) {
    throw Error(ErrorCode::EmptyDigits, "digit set is empty");
  }
  for (std::size_t k = 0; k < digits.size(); ++k) {
    const Digit& d = digits[k];
    bool ok = d.size() == bases.size();
    for (std::size_t i = 0; ok && i < d.size(); ++i) {
      ok = d[i] >= 0 && d[i] < bases[i];
    }
    if (!ok) {
      throw Error(ErrorCode::DigitOutOfRange, "digit #" + std::to_string(k));
    }
  }
  std::sort(digits.begin(), digits.end());
  digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
  return DigitSystem(std::move(bases), std::move(digits));
}

std::optional<std::size_t> DigitSystem::index_of(const Digit& digit) const {
  auto it = std::lower_bound(digits_.begin(), digits_.end(), digit);
  if (it == digits_.end() || *it != digit) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - digits_.begin());
}

std::optional<std::size_t> ProjectedAlphabet::index_of(const Digit& symbol) const {
  auto it = std::lower_bound(symbols.begin(), symbols.end(), symbol);
  if (it == symbols.end() || *it != symbol) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - symbols.begin());
}

ProjectedAlphabet project_alphabet(const DigitSystem& sys, std::size_t j) {
  if (j < 1 || j > sys.rank()) {
    throw Error(ErrorCode::LevelOutOfRange,
                "prefix length " + std::to_string(j) + " outside 1.." +
                    std::to_string(sys.rank()));
  }
  ProjectedAlphabet out;
  out.prefix_length = j;
  for (const Digit& d : sys.digits()) {
    Digit prefix(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(j));
    if (out.symbols.empty() || out.symbols.back() != prefix) {
      // digits are sorted, so equal prefixes are contiguous
      out.symbols.push_back(std::move(prefix));
    }
  }
  return out;
}

DigitSystem power_system(const DigitSystem& sys, std::size_t m) {
  if (m == 0) {
    throw Error(ErrorCode::ValidationError, "power must be positive");
  }
  const std::size_t r = sys.rank();
  std::vector<int> bases(r, 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      bases[i] *= sys.bases()[i];
    }
  }
  std::vector<Digit> blocks;
  std::vector<std::size_t> idx(m, 0);
  const std::size_t n = sys.size();
  while (true) {
    Digit block(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        block[i] = block[i] * sys.bases()[i] + sys.digits()[idx[k]][i];
      }
    }
    blocks.push_back(std::move(block));
    std::size_t pos = m;
    while (pos > 0) {
      if (++idx[pos - 1] < n) break;
      idx[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return DigitSystem::validate(std::move(bases), std::move(blocks));
}

// ---------------------------------------------------------------------------
// Graphs and follower automata

void check_right_resolving(const LabeledGraph& g) {
  const std::size_t nv = g.vertices.size();
  std::vector<std::set<Digit>> out(nv);
  for (const LabeledEdge& e : g.edges) {
    if (e.source >= nv || e.target >= nv) {
      throw Error(ErrorCode::UnknownVertex, "edge endpoint outside vertex list");
    }
    if (!out[e.source].insert(e.label).second) {
      std::string label;
      for (int c : e.label) label += (label.empty() ? "" : ",") + std::to_string(c);
      throw Error(ErrorCode::DuplicateLabelAtVertex,
                  "vertex " + g.vertices[e.source] + " label (" + label + ")");
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (out[v].empty()) {
      throw Error(ErrorCode::DeadVertex, "vertex " + g.vertices[v] + " has no outgoing edge");
    }
  }
}

bool FollowerAutomaton::accepts_everything() const {
  for (const auto& row : transitions) {
    for (int t : row) {
      if (t == kDead) return false;
    }
  }
  return true;
}

FollowerAutomaton determinize(const LabeledGraph& g, const ProjectedAlphabet& alphabet) {
  const std::size_t nv = g.vertices.size();
  const std::size_t na = alphabet.symbols.size();
  // successors[v][letter] = targets reachable from v on that projected letter
  std::vector<std::vector<std::vector<std::size_t>>> successors(
      nv, std::vector<std::vector<std::size_t>>(na));
  for (const LabeledEdge& e : g.edges) {
    Digit prefix(e.label.begin(),
                 e.label.begin() + static_cast<std::ptrdiff_t>(alphabet.prefix_length));
    auto letter = alphabet.index_of(prefix);
    if (!letter) {
      throw Error(ErrorCode::DigitOutOfRange, "edge label outside the alphabet");
    }
    successors[e.source][*letter].push_back(e.target);
  }

  FollowerAutomaton fa;
  std::map<std::vector<std::size_t>, int> index;
  std::vector<std::size_t> all(nv);
  for (std::size_t v = 0; v < nv; ++v) all[v] = v;
  index.emplace(all, 0);
  fa.states.push_back(all);
  for (std::size_t s = 0; s < fa.states.size(); ++s) {
    std::vector<int> row(na, FollowerAutomaton::kDead);
    for (std::size_t letter = 0; letter < na; ++letter) {
      std::vector<std::size_t> next;
      for (std::size_t v : fa.states[s]) {
        const auto& succ = successors[v][letter];
        next.insert(next.end(), succ.begin(), succ.end());
      }
      if (next.empty()) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      auto [it, inserted] = index.emplace(next, static_cast<int>(fa.states.size()));
      if (inserted) fa.states.push_back(next);
      row[letter] = it->second;
    }
    fa.transitions.push_back(std::move(row));
  }
  return fa;
}

// ---------------------------------------------------------------------------
// Chain

Chain::Chain(DigitSystem sys, std::optional<LabeledGraph> graph)
    : sys_(std::move(sys)), graph_(std::move(graph)) {
  const std::size_t r = sys_.rank();
  for (std::size_t level = 1; level <= r; ++level) {
    alphabets_.push_back(project_alphabet(sys_, r - level + 1));
  }
  parents_.resize(r);
  fibers_.resize(r);
  for (std::size_t level = 1; level < r; ++level) {
    const auto& here = alphabets_[level - 1];
    const auto& up = alphabets_[level];
    fibers_[level - 1].resize(up.symbols.size());
    for (std::size_t k = 0; k < here.symbols.size(); ++k) {
      const Digit& s = here.symbols[k];
      Digit prefix(s.begin(), s.end() - 1);
      const std::size_t p = *up.index_of(prefix);
      parents_[level - 1].push_back(p);
      fibers_[level - 1][p].push_back(k);
    }
  }
  for (std::size_t level = 1; level <= r; ++level) {
    if (graph_) {
      followers_.push_back(determinize(*graph_, alphabets_[level - 1]));
    } else {
      FollowerAutomaton trivial;
      trivial.states.push_back({0});
      trivial.transitions.emplace_back(alphabets_[level - 1].symbols.size(), 0);
      followers_.push_back(std::move(trivial));
    }
  }
}

Chain Chain::full_shift(DigitSystem sys) { return Chain(std::move(sys), std::nullopt); }

Chain Chain::sofic(DigitSystem sys, LabeledGraph graph) {
  check_right_resolving(graph);
  std::vector<bool> used(sys.size(), false);
  for (const LabeledEdge& e : graph.edges) {
    auto k = sys.index_of(e.label);
    if (!k) {
      throw Error(ErrorCode::DigitOutOfRange, "edge label is not a digit of the system");
    }
    used[*k] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw Error(ErrorCode::ValidationError, "every digit must label at least one edge");
  }
  return Chain(std::move(sys), std::move(graph));
}

void Chain::check_level(std::size_t level) const {
  if (level < 1 || level > rank()) {
    throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(level));
  }
}

const ProjectedAlphabet& Chain::alphabet(std::size_t level) const {
  check_level(level);
  return alphabets_[level - 1];
}

std::size_t Chain::parent(std::size_t level, std::size_t letter) const {
  if (level < 1 || level >= rank()) {
    throw Error(ErrorCode::LevelOutOfRange, "no parent above level " + std::to_string(level));
  }
  return parents_[level - 1][letter];
}

const std::vector<std::size_t>& Chain::fiber(std::size_t level, std::size_t parent_letter) const {
  if (level < 1 || level >= rank()) {
    throw Error(ErrorCode::LevelOutOfRange, "no fibers at level " + std::to_string(level));
  }
  return fibers_[level - 1][parent_letter];
}

const FollowerAutomaton& Chain::follower(std::size_t level) const {
  check_level(level);
  return followers_[level - 1];
}

bool Chain::level_is_full_shift(std::size_t level) const {
  return follower(level).accepts_everything();
}

bool Chain::admissible(const Word& w) const {
  const FollowerAutomaton& fa = follower(w.level);
  int state = 0;
  for (std::size_t letter : w.letters) {
    if (letter >= fa.alphabet_size()) return false;
    state = fa.step(state, letter);
    if (state == FollowerAutomaton::kDead) return false;
  }
  return true;
}

Chain power_chain(const Chain& chain, std::size_t m) {
  if (!chain.graph()) {
    return Chain::full_shift(power_system(chain.system(), m));
  }
  const LabeledGraph& g = *chain.graph();
  const auto& bases = chain.system().bases();
  const std::size_t r = chain.rank();
  std::vector<std::vector<std::size_t>> out_edges(g.vertices.size());
  for (std::size_t k = 0; k < g.edges.size(); ++k) out_edges[g.edges[k].source].push_back(k);

  LabeledGraph paths{g.vertices, {}};
  // depth-first over paths of length m, accumulating the block label
  struct Frame {
    std::size_t start;
    std::size_t at;
    std::size_t depth;
    Digit label;
  };
  std::vector<Frame> stack;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) stack.push_back({v, v, 0, Digit(r, 0)});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.depth == m) {
      paths.edges.push_back({f.start, f.at, std::move(f.label)});
      continue;
    }
    for (std::size_t k : out_edges[f.at]) {
      const LabeledEdge& e = g.edges[k];
      Digit label = f.label;
      for (std::size_t i = 0; i < r; ++i) label[i] = label[i] * bases[i] + e.label[i];
      stack.push_back({f.start, e.target, f.depth + 1, std::move(label)});
    }
  }
  std::vector<Digit> used;
  for (const LabeledEdge& e : paths.edges) used.push_back(e.label);
  std::vector<int> power_bases(r, 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < m; ++k) power_bases[i] *= bases[i];
  }
  return Chain::sofic(DigitSystem::validate(std::move(power_bases), std::move(used)),
                      std::move(paths));
}

// ---------------------------------------------------------------------------
// Counting

PreimageCounter::PreimageCounter(const Chain& chain, std::size_t level)
    : chain_(&chain), level_(level), product_(1) {
  if (level < 1 || level >= chain.rank()) {
    throw Error(ErrorCode::LevelOutOfRange, "preimages need a level below r");
  }
  const FollowerAutomaton& fa = chain.follower(level);
  product_form_ = fa.states.size() == 1 && fa.accepts_everything();
  if (!product_form_) {
    by_state_.assign(fa.states.size(), BigCount(0));
    by_state_[0] = 1;
  }
}

void PreimageCounter::push(std::size_t parent_letter) {
  const auto& fib = chain_->fiber(level_, parent_letter);
  if (product_form_) {
    product_ *= fib.size();
    return;
  }
  const FollowerAutomaton& fa = chain_->follower(level_);
  std::vector<BigCount> next(by_state_.size(), BigCount(0));
  for (std::size_t s = 0; s < by_state_.size(); ++s) {
    if (by_state_[s] == 0) continue;
    for (std::size_t letter : fib) {
      const int t = fa.step(static_cast<int>(s), letter);
      if (t != FollowerAutomaton::kDead) {
        next[static_cast<std::size_t>(t)] += by_state_[s];
      }
    }
  }
  by_state_ = std::move(next);
}

BigCount PreimageCounter::total() const {
  if (product_form_) return product_;
  BigCount sum = 0;
  for (const auto& c : by_state_) sum += c;
  return sum;
}

BigCount preimage_count(const Chain& chain, const Word& v) {
  if (v.level < 2 || v.level > chain.rank()) {
    throw Error(ErrorCode::LevelOutOfRange, "preimages are taken of words at levels 2..r");
  }
  if (!chain.admissible(v)) {
    throw Error(ErrorCode::InadmissibleWord, "word is not admissible at level " +
                                                 std::to_string(v.level));
  }
  PreimageCounter counter(chain, v.level - 1);
  for (std::size_t letter : v.letters) counter.push(letter);
  return counter.total();
}

BigCount count_admissible_words(const Chain& chain, std::size_t level, std::size_t n) {
  const FollowerAutomaton& fa = chain.follower(level);
  std::vector<BigCount> by_state(fa.states.size(), BigCount(0));
  by_state[0] = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<BigCount> next(by_state.size(), BigCount(0));
    for (std::size_t s = 0; s < by_state.size(); ++s) {
      if (by_state[s] == 0) continue;
      for (std::size_t letter = 0; letter < fa.alphabet_size(); ++letter) {
        const int t = fa.step(static_cast<int>(s), letter);
        if (t != FollowerAutomaton::kDead) next[static_cast<std::size_t>(t)] += by_state[s];
      }
    }
    by_state = std::move(next);
  }
  BigCount total = 0;
  for (const auto& c : by_state) total += c;
  return total;
}

}  // namespace wtp
