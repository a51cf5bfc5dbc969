#include <cassert>

#include "adsyn/logic.hpp"

namespace adsyn::logic {

struct LtlFormula::Node {
  Op op;
  std::size_t atom = 0;
  LtlFormula lhs{nullptr};
  LtlFormula rhs{nullptr};
};

namespace {

int precedence(LtlFormula::Op op) {
  using Op = LtlFormula::Op;
  switch (op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Until: return 3;
    case Op::Globally:
    case Op::Finally:
    case Op::Not: return 4;
    case Op::True:
    case Op::Atom: return 5;
  }
  return 5;
}

void render(const LtlFormula& f, const std::vector<std::string>& props, std::string& out) {
  using Op = LtlFormula::Op;
  auto child = [&](const LtlFormula& c, int min_prec) {
    bool paren = precedence(c.op()) < min_prec;
    if (paren) out += '(';
    render(c, props, out);
    if (paren) out += ')';
  };
  switch (f.op()) {
    case Op::True: out += "true"; break;
    case Op::Atom:
      out += f.atom_index() < props.size() ? props[f.atom_index()]
                                           : "p" + std::to_string(f.atom_index());
      break;
    case Op::Not: out += '!'; child(f.lhs(), 4); break;
    case Op::Globally: out += "G "; child(f.lhs(), 4); break;
    case Op::Finally: out += "F "; child(f.lhs(), 4); break;
    case Op::And: child(f.lhs(), 2); out += " & "; child(f.rhs(), 3); break;
    case Op::Or: child(f.lhs(), 1); out += " | "; child(f.rhs(), 2); break;
    case Op::Until: child(f.lhs(), 4); out += " U "; child(f.rhs(), 3); break;
  }
}

}  // namespace

LtlFormula LtlFormula::truth() { return LtlFormula(std::make_shared<Node>(Node{Op::True})); }

LtlFormula LtlFormula::atom(std::size_t index) {
  return LtlFormula(std::make_shared<Node>(Node{Op::Atom, index}));
}

LtlFormula LtlFormula::negation(LtlFormula f) {
  return LtlFormula(std::make_shared<Node>(Node{Op::Not, 0, std::move(f)}));
}

LtlFormula LtlFormula::conjunction(LtlFormula f, LtlFormula g) {
  return LtlFormula(std::make_shared<Node>(Node{Op::And, 0, std::move(f), std::move(g)}));
}

LtlFormula LtlFormula::disjunction(LtlFormula f, LtlFormula g) {
  return LtlFormula(std::make_shared<Node>(Node{Op::Or, 0, std::move(f), std::move(g)}));
}

LtlFormula LtlFormula::globally(LtlFormula f) {
  return LtlFormula(std::make_shared<Node>(Node{Op::Globally, 0, std::move(f)}));
}

LtlFormula LtlFormula::finally(LtlFormula f) {
  return LtlFormula(std::make_shared<Node>(Node{Op::Finally, 0, std::move(f)}));
}

LtlFormula LtlFormula::until(LtlFormula f, LtlFormula g) {
  return LtlFormula(std::make_shared<Node>(Node{Op::Until, 0, std::move(f), std::move(g)}));
}

LtlFormula::Op LtlFormula::op() const { return node_->op; }
std::size_t LtlFormula::atom_index() const { return node_->atom; }
const LtlFormula& LtlFormula::lhs() const { return node_->lhs; }
const LtlFormula& LtlFormula::rhs() const { return node_->rhs; }

bool LtlFormula::is_propositional() const {
  switch (op()) {
    case Op::True:
    case Op::Atom: return true;
    case Op::Not: return lhs().is_propositional();
    case Op::And:
    case Op::Or: return lhs().is_propositional() && rhs().is_propositional();
    default: return false;
  }
}

bool operator==(const LtlFormula& a, const LtlFormula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.op() != b.op()) return false;
  using Op = LtlFormula::Op;
  switch (a.op()) {
    case Op::True: return true;
    case Op::Atom: return a.atom_index() == b.atom_index();
    case Op::Not:
    case Op::Globally:
    case Op::Finally: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

std::string to_string(const LtlFormula& f, const std::vector<std::string>& props) {
  std::string out;
  render(f, props, out);
  return out;
}

bool holds(const LtlFormula& f, Letter letter) {
  using Op = LtlFormula::Op;
  switch (f.op()) {
    case Op::True: return true;
    case Op::Atom: return (letter >> f.atom_index()) & 1U;
    case Op::Not: return !holds(f.lhs(), letter);
    case Op::And: return holds(f.lhs(), letter) && holds(f.rhs(), letter);
    case Op::Or: return holds(f.lhs(), letter) || holds(f.rhs(), letter);
    default:
      throw Error(ErrorKind::InvalidArgument, "temporal operator in propositional context");
  }
}

}  // namespace adsyn::logic
