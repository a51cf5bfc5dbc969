#include <algorithm>

#include "adsyn/synthesis.hpp"

namespace adsyn::synthesis {

namespace {

// Recursive pair-peeling fixpoint:
//   Win(∅, T, D) = μW. T ∪ (D ∩ CPre(W))
//   Win(P, T, D) = μX. ⋃_{i∈P} νY. Win(P∖i, T ∪ (D ∩ CPre(X)) ∪ (D ∖ F_i ∩ I_i ∩ CPre(Y)), D ∖ F_i)
// Win(P, T, D) is the set from which the controller can reach T while staying
// in D, or stay in D forever and satisfy some pair of P.
//
// Strategy: each outer layer X_j → X_{j+1} assigns nodes that are not yet
// assigned, first those in CPre(X_j), then pair by pair the I-targets and the
// recursive region. Earlier assignments are closed (they stay inside their own
// region or move to a lower layer), so skipping them keeps everything sound.
class Solver {
 public:
  explicit Solver(const RabinGame& g)
      : g_(g), n_(g.graph.num_states()), m_(g.graph.num_inputs()), counter_(n_ * m_) {
    std::vector<std::size_t> deg(n_ + 1, 0);
    for (StateId x = 0; x < n_; ++x) {
      for (InputId u = 0; u < m_; ++u) {
        for (StateId y : g.graph.successors(x, u)) ++deg[y + 1];
      }
    }
    for (std::size_t i = 0; i < n_; ++i) deg[i + 1] += deg[i];
    pred_start_ = deg;
    pred_.resize(deg[n_]);
    for (StateId x = 0; x < n_; ++x) {
      for (InputId u = 0; u < m_; ++u) {
        for (StateId y : g.graph.successors(x, u)) pred_[deg[y]++] = static_cast<std::uint64_t>(x) * m_ + u;
      }
    }
  }

  NodeSet win(const std::vector<std::size_t>& pairs, const NodeSet& target, const NodeSet& dom,
              std::vector<InputId>* strategy) {
    if (pairs.empty()) return attractor(target, dom, strategy);

    NodeSet x(n_, 0);
    for (;;) {
      const NodeSet cx = intersect(dom, cpre(x));
      if (strategy) assign_into(cx, target, x, *strategy);

      NodeSet next(n_, 0);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const std::size_t i = pairs[k];
        std::vector<std::size_t> rest;
        for (std::size_t j : pairs) {
          if (j != i) rest.push_back(j);
        }
        NodeSet sub_dom(n_, 0);
        for (std::size_t v = 0; v < n_; ++v) sub_dom[v] = dom[v] && !g_.pairs[i].fin[v];

        NodeSet y(n_, 1);
        NodeSet sub_target;
        NodeSet recur;
        for (;;) {
          recur = cpre(y);
          for (std::size_t v = 0; v < n_; ++v) recur[v] = recur[v] && sub_dom[v] && g_.pairs[i].inf[v];
          sub_target = target;
          for (std::size_t v = 0; v < n_; ++v) sub_target[v] = sub_target[v] || cx[v] || recur[v];
          NodeSet y_next = win(rest, sub_target, sub_dom, nullptr);
          if (y_next == y) break;
          y = std::move(y_next);
        }
        if (strategy) {
          assign_into(recur, target, y, *strategy);
          win(rest, sub_target, sub_dom, strategy);
        }
        for (std::size_t v = 0; v < n_; ++v) next[v] = next[v] || y[v];
      }
      if (next == x) return x;
      x = std::move(next);
    }
  }

 private:
  static NodeSet intersect(const NodeSet& a, NodeSet b) {
    for (std::size_t v = 0; v < a.size(); ++v) b[v] = b[v] && a[v];
    return b;
  }

  bool all_in(StateId x, InputId u, const NodeSet& s) const {
    auto succ = g_.graph.successors(x, u);
    return std::all_of(succ.begin(), succ.end(), [&](StateId y) { return s[y]; });
  }

  NodeSet cpre(const NodeSet& s) const {
    NodeSet out(n_, 0);
    for (StateId x = 0; x < n_; ++x) {
      for (InputId u = 0; u < m_; ++u) {
        if (all_in(x, u, s)) {
          out[x] = 1;
          break;
        }
      }
    }
    return out;
  }

  // Gives every unassigned node of `nodes` outside `target` the lowest input
  // whose successors all lie in `into`.
  void assign_into(const NodeSet& nodes, const NodeSet& target, const NodeSet& into,
                   std::vector<InputId>& strategy) const {
    for (StateId x = 0; x < n_; ++x) {
      if (!nodes[x] || target[x] || strategy[x] != kNoInput) continue;
      for (InputId u = 0; u < m_; ++u) {
        if (all_in(x, u, into)) {
          strategy[x] = u;
          break;
        }
      }
    }
  }

  // Level-synchronous controllable attractor; a node joining at level r+1 gets
  // the lowest input whose successors all lie in levels ≤ r.
  NodeSet attractor(const NodeSet& target, const NodeSet& dom, std::vector<InputId>* strategy) {
    NodeSet w = target;
    std::vector<StateId> level;
    std::vector<StateId> next_level;
    NodeSet queued(n_, 0);
    for (StateId x = 0; x < n_; ++x) {
      for (InputId u = 0; u < m_; ++u) {
        auto succ = g_.graph.successors(x, u);
        std::uint32_t c = 0;
        for (StateId y : succ) c += !w[y];
        counter_[static_cast<std::size_t>(x) * m_ + u] = c;
        if (c == 0 && dom[x] && !w[x] && !queued[x]) {
          queued[x] = 1;
          next_level.push_back(x);
        }
      }
    }
    while (!next_level.empty()) {
      level.swap(next_level);
      next_level.clear();
      for (StateId x : level) {
        w[x] = 1;
        if (strategy && (*strategy)[x] == kNoInput) {
          for (InputId u = 0; u < m_; ++u) {
            if (counter_[static_cast<std::size_t>(x) * m_ + u] == 0) {
              (*strategy)[x] = u;
              break;
            }
          }
        }
      }
      for (StateId y : level) {
        for (std::size_t k = pred_start_[y]; k < pred_start_[y + 1]; ++k) {
          const std::uint64_t e = pred_[k];
          if (--counter_[e] != 0) continue;
          const auto x = static_cast<StateId>(e / m_);
          if (dom[x] && !w[x] && !queued[x]) {
            queued[x] = 1;
            next_level.push_back(x);
          }
        }
      }
    }
    return w;
  }

  const RabinGame& g_;
  std::size_t n_;
  std::size_t m_;
  std::vector<std::uint32_t> counter_;
  std::vector<std::size_t> pred_start_;
  std::vector<std::uint64_t> pred_;
};

}  // namespace

GameSolution solve_rabin(const RabinGame& g) {
  if (!g.graph.is_nonblocking()) throw Error(ErrorKind::InvalidModel, "game arena is blocking");
  for (const auto& pair : g.pairs) {
    if (pair.fin.size() != g.size() || pair.inf.size() != g.size()) {
      throw Error(ErrorKind::InvalidArgument, "pair sets do not match the arena size");
    }
  }
  Solver solver(g);
  std::vector<std::size_t> pairs(g.pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i] = i;
  GameSolution sol;
  sol.strategy.assign(g.size(), kNoInput);
  sol.winning = solver.win(pairs, NodeSet(g.size(), 0), NodeSet(g.size(), 1), &sol.strategy);
  return sol;
}

}  // namespace adsyn::synthesis
