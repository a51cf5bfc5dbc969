#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "adsyn/logic.hpp"

namespace adsyn::logic {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::size_t parse_count(const std::string& word, std::size_t line) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(word, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != word.size() || word.empty() || word[0] == '-') {
    throw SyntaxError("expected a non-negative integer, got '" + word + "'", line);
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string letter_to_string(Letter a, const std::vector<std::string>& props) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < props.size(); ++i) {
    if ((a >> i) & 1U) {
      if (!first) out += ' ';
      out += props[i];
      first = false;
    }
  }
  return out + "}";
}

Dra read_dra(std::istream& in) {
  std::optional<std::size_t> num_states, initial, num_pairs;
  std::optional<std::vector<std::string>> props;
  struct Edge {
    std::size_t src, dst, line;
    Letter letter;
  };
  std::vector<Edge> edges;
  std::map<std::size_t, std::vector<std::size_t>> fin_lines, inf_lines;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;

    // Acceptance pair lines: F_i: ... / I_i: ...
    if ((line[0] == 'F' || line[0] == 'I') && line.size() > 2 && line[1] == '_') {
      auto colon = line.find(':');
      if (colon == std::string::npos) throw SyntaxError("expected ':' in pair line", line_no);
      std::size_t index = parse_count(line.substr(2, colon - 2), line_no);
      std::vector<std::size_t> ids;
      for (const auto& w : split_words(line.substr(colon + 1))) ids.push_back(parse_count(w, line_no));
      auto& target = line[0] == 'F' ? fin_lines : inf_lines;
      if (!target.emplace(index, std::move(ids)).second) {
        throw SyntaxError("duplicate line for pair " + std::to_string(index), line_no);
      }
      continue;
    }

    auto brace = line.find('{');
    if (brace != std::string::npos) {
      auto close = line.find('}', brace);
      if (close == std::string::npos) throw SyntaxError("unterminated letter", line_no);
      if (!props) throw SyntaxError("transition before 'props' header", line_no);
      auto src_words = split_words(line.substr(0, brace));
      auto dst_words = split_words(line.substr(close + 1));
      if (src_words.size() != 1 || dst_words.size() != 1) {
        throw SyntaxError("expected '<src> {<props>} <dst>'", line_no);
      }
      Letter letter = 0;
      for (const auto& name : split_words(line.substr(brace + 1, close - brace - 1))) {
        auto it = std::find(props->begin(), props->end(), name);
        if (it == props->end()) throw SyntaxError("unknown proposition '" + name + "'", line_no);
        letter |= Letter{1} << (it - props->begin());
      }
      edges.push_back({parse_count(src_words[0], line_no), parse_count(dst_words[0], line_no),
                       line_no, letter});
      continue;
    }

    auto words = split_words(line);
    const std::string& key = words[0];
    if (key == "props") {
      if (props) throw SyntaxError("duplicate 'props' header", line_no);
      props = std::vector<std::string>(words.begin() + 1, words.end());
      if (props->size() > Dra::kMaxProps) throw SyntaxError("too many propositions", line_no);
    } else if (key == "states" || key == "initial" || key == "pairs") {
      if (words.size() != 2) throw SyntaxError("expected '" + key + " <n>'", line_no);
      auto& slot = key == "states" ? num_states : key == "initial" ? initial : num_pairs;
      if (slot) throw SyntaxError("duplicate '" + key + "' header", line_no);
      slot = parse_count(words[1], line_no);
    } else {
      throw SyntaxError("unrecognized line '" + line + "'", line_no);
    }
  }

  if (!num_states) throw Error(ErrorKind::Parse, "missing 'states' header");
  if (!initial) throw Error(ErrorKind::Parse, "missing 'initial' header");
  if (!props) throw Error(ErrorKind::Parse, "missing 'props' header");
  if (!num_pairs) throw Error(ErrorKind::Parse, "missing 'pairs' header");
  if (*initial >= *num_states) {
    throw Error(ErrorKind::DanglingState, "initial state " + std::to_string(*initial));
  }

  const std::size_t num_letters = std::size_t{1} << props->size();
  constexpr StateId kUnset = ~StateId{0};
  std::vector<StateId> delta(*num_states * num_letters, kUnset);
  for (const Edge& e : edges) {
    if (e.src >= *num_states || e.dst >= *num_states) {
      throw Error(ErrorKind::DanglingState,
                  "state " + std::to_string(std::max(e.src, e.dst)) + " on line " + std::to_string(e.line));
    }
    StateId& slot = delta[e.src * num_letters + e.letter];
    if (slot != kUnset && slot != e.dst) {
      throw SyntaxError("conflicting transition for state " + std::to_string(e.src), e.line);
    }
    slot = static_cast<StateId>(e.dst);
  }
  for (std::size_t s = 0; s < *num_states; ++s) {
    for (Letter a = 0; a < num_letters; ++a) {
      if (delta[s * num_letters + a] == kUnset) {
        throw Error(ErrorKind::NonTotal,
                    "no transition from state " + std::to_string(s) + " on " + letter_to_string(a, *props));
      }
    }
  }

  std::vector<RabinPair> pairs(*num_pairs);
  auto fill = [&](const std::map<std::size_t, std::vector<std::size_t>>& lines, bool fin) {
    for (const auto& [index, ids] : lines) {
      if (index < 1 || index > *num_pairs) {
        throw Error(ErrorKind::Parse, "pair index " + std::to_string(index) + " out of range");
      }
      for (std::size_t id : ids) {
        if (id >= *num_states) throw Error(ErrorKind::DanglingState, "pair state " + std::to_string(id));
        (fin ? pairs[index - 1].fin : pairs[index - 1].inf).push_back(static_cast<StateId>(id));
      }
    }
  };
  fill(fin_lines, true);
  fill(inf_lines, false);
  for (std::size_t i = 1; i <= *num_pairs; ++i) {
    if (!fin_lines.count(i) || !inf_lines.count(i)) {
      throw Error(ErrorKind::Parse, "pair " + std::to_string(i) + " needs both F_ and I_ lines");
    }
  }
  return Dra(*props, *num_states, static_cast<StateId>(*initial), std::move(delta), std::move(pairs));
}

Dra parse_dra(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_dra(in);
}

void write_dra(std::ostream& out, const Dra& dra) {
  out << "states " << dra.num_states() << "\n";
  out << "initial " << dra.initial() << "\n";
  out << "props";
  for (const auto& p : dra.props()) out << ' ' << p;
  out << "\n";
  out << "pairs " << dra.pairs().size() << "\n";
  for (StateId s = 0; s < dra.num_states(); ++s) {
    for (Letter a = 0; a < dra.num_letters(); ++a) {
      out << s << ' ' << letter_to_string(a, dra.props()) << ' ' << dra.next(s, a) << "\n";
    }
  }
  for (std::size_t i = 0; i < dra.pairs().size(); ++i) {
    out << "F_" << i + 1 << ":";
    for (StateId s : dra.pairs()[i].fin) out << ' ' << s;
    out << "\nI_" << i + 1 << ":";
    for (StateId s : dra.pairs()[i].inf) out << ' ' << s;
    out << "\n";
  }
}

void write_dra_dot(std::ostream& out, const Dra& dra) {
  out << "digraph dra {\n  rankdir=LR;\n  init [shape=point];\n";
  for (StateId s = 0; s < dra.num_states(); ++s) {
    std::string marks;
    for (std::size_t i = 0; i < dra.pairs().size(); ++i) {
      if (dra.in_fin(i, s)) marks += " F" + std::to_string(i + 1);
      if (dra.in_inf(i, s)) marks += " I" + std::to_string(i + 1);
    }
    out << "  s" << s << " [shape=circle,label=\"s" << s << marks << "\"];\n";
  }
  out << "  init -> s" << dra.initial() << ";\n";
  for (StateId s = 0; s < dra.num_states(); ++s) {
    std::map<StateId, std::vector<std::string>> grouped;
    for (Letter a = 0; a < dra.num_letters(); ++a) {
      grouped[dra.next(s, a)].push_back(letter_to_string(a, dra.props()));
    }
    for (const auto& [dst, letters] : grouped) {
      out << "  s" << s << " -> s" << dst << " [label=\"" << join_braced(letters, ", ") << "\"];\n";
    }
  }
  out << "}\n";
}

}  // namespace adsyn::logic
