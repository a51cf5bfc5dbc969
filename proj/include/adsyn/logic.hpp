#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adsyn/common.hpp"

namespace adsyn::logic {

/// Immutable LTL syntax tree. Atoms index into a separately held
/// proposition list; nodes are shared, so copies are cheap.
class LtlFormula {
 public:
  enum class Op { True, Atom, Not, And, Or, Globally, Finally, Until };

  static LtlFormula truth();
  static LtlFormula atom(std::size_t index);
  static LtlFormula negation(LtlFormula f);
  static LtlFormula conjunction(LtlFormula f, LtlFormula g);
  static LtlFormula disjunction(LtlFormula f, LtlFormula g);
  static LtlFormula globally(LtlFormula f);
  static LtlFormula finally(LtlFormula f);
  static LtlFormula until(LtlFormula f, LtlFormula g);

  Op op() const;
  std::size_t atom_index() const;
  const LtlFormula& lhs() const;
  const LtlFormula& rhs() const;

  /// True if no temporal operator occurs in the formula.
  bool is_propositional() const;

  friend bool operator==(const LtlFormula& a, const LtlFormula& b);

 private:
  struct Node;
  explicit LtlFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const LtlFormula& f, const std::vector<std::string>& props);

/// Evaluates a propositional formula on one letter.
bool holds(const LtlFormula& f, Letter letter);

/// Concrete syntax:
///   or    := and ( ('|' | '||') and )*
///   and   := until ( ('&' | '&&') until )*
///   until := unary ( 'U' until )?
///   unary := ('!' | '~' | 'G' | 'F') unary | primary
///   primary := 'true' | 'false' | identifier | '(' or ')'
/// Identifiers spelled only with G/F letters (e.g. "GF") that are not
/// declared propositions are read as operator sequences.
LtlFormula parse_ltl(std::string_view text, const std::vector<std::string>& props);

/// Proposition names in order of first appearance in `text`.
std::vector<std::string> infer_propositions(std::string_view text);

// ---------------------------------------------------------------------------

struct RabinPair {
  std::vector<StateId> fin;  // F_i: visited finitely often
  std::vector<StateId> inf;  // I_i: visited infinitely often
};

/// Deterministic Rabin automaton over the alphabet 2^props with a total
/// transition table.
class Dra {
 public:
  static constexpr std::size_t kMaxProps = 16;

  Dra(std::vector<std::string> props, std::size_t num_states, StateId initial,
      std::vector<StateId> delta, std::vector<RabinPair> pairs);

  const std::vector<std::string>& props() const { return props_; }
  std::size_t num_states() const { return num_states_; }
  std::size_t num_letters() const { return std::size_t{1} << props_.size(); }
  StateId initial() const { return initial_; }
  StateId next(StateId s, Letter a) const { return delta_[s * num_letters() + a]; }
  const std::vector<RabinPair>& pairs() const { return pairs_; }

  bool in_fin(std::size_t pair, StateId s) const { return fin_mask_[pair][s]; }
  bool in_inf(std::size_t pair, StateId s) const { return inf_mask_[pair][s]; }

  StateId run(StateId from, std::span<const Letter> word) const;

 private:
  std::vector<std::string> props_;
  std::size_t num_states_;
  StateId initial_;
  std::vector<StateId> delta_;
  std::vector<RabinPair> pairs_;
  std::vector<std::vector<bool>> fin_mask_;
  std::vector<std::vector<bool>> inf_mask_;
};

/// Conjuncts of a formula  /\ G b  /\  /\ GF c  /\  /\ F d, with the
/// propositional bodies b, c, d. True conjuncts are dropped. Throws
/// UnsupportedFragment naming the first conjunct outside the shape.
struct Fragment {
  std::vector<LtlFormula> safety;
  std::vector<LtlFormula> recurrence;
  std::vector<LtlFormula> reach;
};
Fragment split_fragment(const LtlFormula& f, const std::vector<std::string>& props);

/// Compiles formulas of the shape  /\ G b  /\  /\ GF c  /\  /\ F d  with
/// propositional b, c, d into a single-pair DRA. Throws
/// ErrorKind::UnsupportedFragment naming the first conjunct outside it.
Dra compile_to_dra(const LtlFormula& f, const std::vector<std::string>& props);

// Exchange format:
//   states N / initial k / props p1 p2 ... / pairs r
//   <src> {<props>} <dst>      one line per (state, letter)
//   F_i: ids / I_i: ids        for i = 1..r
Dra read_dra(std::istream& in);
Dra parse_dra(std::string_view text);
void write_dra(std::ostream& out, const Dra& dra);
void write_dra_dot(std::ostream& out, const Dra& dra);

std::string letter_to_string(Letter a, const std::vector<std::string>& props);

struct LassoWord {
  std::vector<Letter> prefix;
  std::vector<Letter> cycle;  // non-empty
};

/// Runs lassos against one DRA, reusing its scratch buffers between calls.
class AcceptanceChecker {
 public:
  explicit AcceptanceChecker(const Dra& dra);

  bool accepts(const LassoWord& w);
  /// Acceptance of cycle^ω read from state `from`.
  bool accepts_from(StateId from, std::span<const Letter> cycle);
  /// Number of transition applications performed by the last call.
  std::size_t last_step_count() const { return steps_; }

 private:
  const Dra& dra_;
  std::vector<std::uint32_t> first_seen_;
  std::vector<StateId> trail_;
  std::size_t steps_ = 0;
};

bool accepts(const Dra& dra, const LassoWord& w);

}  // namespace adsyn::logic
