#include <deque>
#include <map>

#include "adsyn/logic.hpp"

namespace adsyn::logic {

namespace {

using Op = LtlFormula::Op;

void flatten(const LtlFormula& f, std::vector<LtlFormula>& out) {
  if (f.op() == Op::And) {
    flatten(f.lhs(), out);
    flatten(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

// Strips G G ... and F F ... runs, which are idempotent.
LtlFormula strip_repeats(LtlFormula f) {
  while ((f.op() == Op::Globally || f.op() == Op::Finally) && f.lhs().op() == f.op()) f = f.lhs();
  return f;
}

}  // namespace

Fragment split_fragment(const LtlFormula& f, const std::vector<std::string>& props) {
  std::vector<LtlFormula> conjuncts;
  flatten(f, conjuncts);
  Fragment frag;
  for (const LtlFormula& raw : conjuncts) {
    LtlFormula c = strip_repeats(raw);
    if (c.op() == Op::True) continue;
    if (c.op() == Op::Globally) {
      LtlFormula body = strip_repeats(c.lhs());
      if (body.is_propositional()) {
        frag.safety.push_back(body);
        continue;
      }
      if (body.op() == Op::Finally && strip_repeats(body.lhs()).is_propositional()) {
        frag.recurrence.push_back(strip_repeats(body.lhs()));
        continue;
      }
    } else if (c.op() == Op::Finally && c.lhs().is_propositional()) {
      frag.reach.push_back(c.lhs());
      continue;
    }
    throw Error(ErrorKind::UnsupportedFragment, to_string(raw, props));
  }
  if (frag.reach.size() > 32) {
    throw Error(ErrorKind::UnsupportedFragment, "more than 32 F-obligations");
  }
  return frag;
}

Dra compile_to_dra(const LtlFormula& f, const std::vector<std::string>& props) {
  if (props.size() > Dra::kMaxProps) {
    throw Error(ErrorKind::InvalidArgument, "too many propositions");
  }
  const Fragment frag = split_fragment(f, props);
  const std::size_t num_letters = std::size_t{1} << props.size();
  const std::size_t n = frag.recurrence.size();

  // Per-letter truth of each guard, so the BFS below does table lookups only.
  std::vector<bool> safe(num_letters, true);
  std::vector<std::uint32_t> reached(num_letters, 0);
  std::vector<std::vector<bool>> recur(n, std::vector<bool>(num_letters, false));
  for (Letter a = 0; a < num_letters; ++a) {
    for (const auto& b : frag.safety) safe[a] = safe[a] && holds(b, a);
    for (std::size_t k = 0; k < frag.reach.size(); ++k) {
      if (holds(frag.reach[k], a)) reached[a] |= std::uint32_t{1} << k;
    }
    for (std::size_t j = 0; j < n; ++j) recur[j][a] = holds(frag.recurrence[j], a);
  }

  // A state is (pending F-obligations, recurrence counter j in 0..n) or the
  // trap. The counter stays at 0 while F-obligations are pending; j == n
  // marks "every GF target seen since the last reset".
  struct Key {
    std::uint32_t pending;
    std::uint32_t counter;
    bool trap;
    auto operator<=>(const Key&) const = default;
  };
  const std::uint32_t all_pending =
      frag.reach.empty() ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << frag.reach.size()) - 1);

  auto step = [&](const Key& k, Letter a) -> Key {
    if (k.trap || !safe[a]) return Key{0, 0, true};
    std::uint32_t pending = k.pending & ~reached[a];
    if (pending != 0) return Key{pending, 0, false};
    std::size_t j = k.counter == n ? 0 : k.counter;
    while (j < n && recur[j][a]) ++j;
    return Key{0, static_cast<std::uint32_t>(j), false};
  };

  std::map<Key, StateId> ids;
  std::vector<Key> keys;
  std::deque<StateId> frontier;
  auto intern = [&](const Key& k) {
    auto [it, inserted] = ids.emplace(k, static_cast<StateId>(keys.size()));
    if (inserted) {
      keys.push_back(k);
      frontier.push_back(it->second);
    }
    return it->second;
  };

  intern(Key{all_pending, 0, false});
  std::vector<StateId> delta;
  while (!frontier.empty()) {
    StateId s = frontier.front();
    frontier.pop_front();
    if (delta.size() < (static_cast<std::size_t>(s) + 1) * num_letters) {
      delta.resize((static_cast<std::size_t>(s) + 1) * num_letters);
    }
    for (Letter a = 0; a < num_letters; ++a) {
      // keys may reallocate inside intern; copy first.
      Key k = keys[s];
      delta[s * num_letters + a] = intern(step(k, a));
    }
  }
  delta.resize(keys.size() * num_letters);

  RabinPair pair;
  for (StateId s = 0; s < keys.size(); ++s) {
    const Key& k = keys[s];
    if (k.trap || k.pending != 0) pair.fin.push_back(s);
    if (!k.trap && k.pending == 0 && k.counter == n) pair.inf.push_back(s);
  }
  return Dra(props, keys.size(), 0, std::move(delta), {std::move(pair)});
}

}  // namespace adsyn::logic
