#include "sulcheck/model.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace sulcheck {

uint64_t checked_add(uint64_t a, uint64_t b) {
  uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(Errc::overflow, "integer overflow in cost sum");
  return r;
}

static bool valid_identifier(std::string_view s) {
  if (s.empty())
    return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '^')
      return false;
  return true;
}

Model::Model(std::vector<std::string> states,
             std::vector<std::pair<std::string, std::string>> edges,
             std::map<std::string, std::vector<std::string>> valuation,
             std::map<std::pair<std::string, std::string>, uint64_t> costs,
             uint64_t default_cost) {
  if (states.empty())
    throw Error(Errc::syntax, "model needs at least one state");
  std::sort(states.begin(), states.end());
  for (size_t i = 0; i + 1 < states.size(); ++i)
    if (states[i] == states[i + 1])
      throw Error(Errc::duplicate_state, "duplicate state identifier '" + states[i] + "'");
  for (const auto& s : states)
    if (!valid_identifier(s))
      throw Error(Errc::syntax, "invalid state identifier '" + s + "'");
  states_ = std::move(states);

  auto resolve = [&](const std::string& name) -> StateId {
    auto it = std::lower_bound(states_.begin(), states_.end(), name);
    if (it == states_.end() || *it != name)
      throw Error(Errc::undeclared_state, "undeclared state '" + name + "'");
    return static_cast<StateId>(it - states_.begin());
  };

  for (const auto& [a, b] : edges)
    edges_.push_back(Edge{resolve(a), resolve(b)});
  std::sort(edges_.begin(), edges_.end());
  for (size_t i = 0; i + 1 < edges_.size(); ++i)
    if (edges_[i] == edges_[i + 1])
      throw Error(Errc::duplicate_edge, "duplicate edge " + states_[edges_[i].src] + " -> " +
                                            states_[edges_[i].dst]);

  for (auto& [atom, members] : valuation) {
    if (!valid_identifier(atom))
      throw Error(Errc::syntax, "invalid atom name '" + atom + "'");
    std::vector<StateId> ids;
    for (const auto& name : members)
      ids.push_back(resolve(name));
    std::sort(ids.begin(), ids.end());
    for (size_t i = 0; i + 1 < ids.size(); ++i)
      if (ids[i] == ids[i + 1])
        throw Error(Errc::duplicate_state,
                    "state '" + states_[ids[i]] + "' listed twice for atom '" + atom + "'");
    if (!ids.empty())
      valuation_[atom] = std::move(ids);
  }

  if (default_cost == 0)
    throw Error(Errc::non_positive_cost, "default_cost must be positive");
  default_cost_ = default_cost;
  for (const auto& [pair, c] : costs) {
    if (c == 0)
      throw Error(Errc::non_positive_cost,
                  "cost of " + pair.first + " -> " + pair.second + " must be positive");
    Edge e{resolve(pair.first), resolve(pair.second)};
    if (costs_.count(e))
      throw Error(Errc::duplicate_cost, "duplicate cost entry " + pair.first + " -> " + pair.second);
    if (c != default_cost_)
      costs_[e] = c;
  }

  // Seriality: every state needs an outgoing edge.
  std::vector<bool> has_out(states_.size(), false);
  for (const Edge& e : edges_)
    has_out[e.src] = true;
  for (size_t s = 0; s < states_.size(); ++s)
    if (!has_out[s])
      throw Error(Errc::seriality, "state '" + states_[s] + "' has no outgoing edge");
}

StateId Model::id_of(std::string_view name) const {
  auto s = find_state(name);
  if (!s)
    throw Error(Errc::undeclared_state, "undeclared state '" + std::string(name) + "'");
  return *s;
}

std::optional<StateId> Model::find_state(std::string_view name) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), name);
  if (it == states_.end() || *it != name)
    return std::nullopt;
  return static_cast<StateId>(it - states_.begin());
}

bool Model::has_edge(Edge e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

uint64_t Model::cost(Edge e) const {
  if (e.src >= states_.size() || e.dst >= states_.size())
    throw Error(Errc::undeclared_state, "state index out of range in cost lookup");
  auto it = costs_.find(e);
  return it == costs_.end() ? default_cost_ : it->second;
}

bool Model::holds(std::string_view atom, StateId s) const {
  auto it = valuation_.find(std::string(atom));
  if (it == valuation_.end())
    return false;
  return std::binary_search(it->second.begin(), it->second.end(), s);
}

std::vector<std::string> Model::true_atoms(StateId s) const {
  std::vector<std::string> out;
  for (const auto& [atom, members] : valuation_)
    if (std::binary_search(members.begin(), members.end(), s))
      out.push_back(atom);
  return out;
}

Model Model::with_edges(std::vector<Edge> edges) const {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<bool> has_out(states_.size(), false);
  for (const Edge& e : edges) {
    if (e.src >= states_.size() || e.dst >= states_.size())
      throw Error(Errc::undeclared_state, "edge endpoint out of range");
    has_out[e.src] = true;
  }
  for (size_t s = 0; s < states_.size(); ++s)
    if (!has_out[s])
      throw Error(Errc::seriality, "state '" + states_[s] + "' has no outgoing edge");
  Model m;
  m.states_ = states_;
  m.edges_ = std::move(edges);
  m.valuation_ = valuation_;
  m.costs_ = costs_;
  m.default_cost_ = default_cost_;
  return m;
}

bool Model::operator==(const Model& other) const {
  if (states_ != other.states_ || edges_ != other.edges_ || valuation_ != other.valuation_)
    return false;
  for (StateId s = 0; s < states_.size(); ++s)
    for (StateId t = 0; t < states_.size(); ++t)
      if (cost(s, t) != other.cost(s, t))
        return false;
  return true;
}

EdgeSet EdgeSet::of(const Model& m, std::vector<Edge> pairs) {
  std::sort(pairs.begin(), pairs.end());
  for (size_t i = 0; i + 1 < pairs.size(); ++i)
    if (pairs[i] == pairs[i + 1])
      throw Error(Errc::duplicate_edge, "duplicate pair in edge set");
  EdgeSet out;
  for (const Edge& e : pairs) {
    if (e.src >= m.state_count() || e.dst >= m.state_count())
      throw Error(Errc::undeclared_state, "edge endpoint out of range");
    out.total_cost = checked_add(out.total_cost, m.cost(e));
  }
  out.pairs = std::move(pairs);
  return out;
}

EdgeSet EdgeSet::of_names(const Model& m,
                          const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<Edge> es;
  for (const auto& [a, b] : pairs)
    es.push_back(Edge{m.id_of(a), m.id_of(b)});
  return of(m, std::move(es));
}

// --- parsing ---------------------------------------------------------------

namespace {

struct Line {
  int number;
  std::string text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int n = 1;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    std::string_view raw =
        end == std::string_view::npos ? text.substr(pos) : text.substr(pos, end - pos);
    size_t hash = raw.find('#');
    if (hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    size_t a = raw.find_first_not_of(" \t\r");
    size_t b = raw.find_last_not_of(" \t\r");
    if (a != std::string_view::npos)
      lines.push_back(Line{n, std::string(raw.substr(a, b - a + 1))});
    if (end == std::string_view::npos)
      break;
    pos = end + 1;
    ++n;
  }
  return lines;
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w)
    out.push_back(w);
  return out;
}

uint64_t parse_nat(const std::string& word, int line) {
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size())
    throw Error(Errc::syntax, "expected a natural number, got '" + word + "'", line, 1);
  return value;
}

} // namespace

ParsedModel parse_model_file(std::string_view text) {
  std::vector<std::string> states;
  std::vector<std::pair<std::string, std::string>> edges;
  std::map<std::string, std::vector<std::string>> valuation;
  std::map<std::pair<std::string, std::string>, uint64_t> costs;
  std::optional<uint64_t> default_cost;
  std::optional<std::string> point;
  bool seen_states = false;

  for (const Line& line : split_lines(text)) {
    const std::string& s = line.text;
    auto fail = [&](Errc c, const std::string& msg) -> void { throw Error(c, msg, line.number, 1); };

    if (s.rfind("states:", 0) == 0) {
      if (seen_states)
        fail(Errc::syntax, "repeated states: directive");
      seen_states = true;
      states = split_words(s.substr(7));
      if (states.empty())
        fail(Errc::syntax, "states: needs at least one identifier");
    } else if (s.rfind("edges:", 0) == 0) {
      std::string rest = s.substr(6);
      size_t pos = 0;
      while (pos < rest.size()) {
        size_t comma = rest.find(',', pos);
        std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto words = split_words(item);
        if (words.size() != 3 || words[1] != "->")
          fail(Errc::syntax, "expected '<id> -> <id>' in edges: line");
        edges.emplace_back(words[0], words[2]);
        if (comma == std::string::npos)
          break;
        pos = comma + 1;
      }
    } else if (s.rfind("atom", 0) == 0 && s.size() > 4 && std::isspace(static_cast<unsigned char>(s[4]))) {
      size_t colon = s.find(':');
      if (colon == std::string::npos)
        fail(Errc::syntax, "atom directive needs ':'");
      auto name_words = split_words(s.substr(4, colon - 4));
      if (name_words.size() != 1)
        fail(Errc::syntax, "atom directive needs exactly one name");
      if (valuation.count(name_words[0]))
        fail(Errc::duplicate_atom, "atom '" + name_words[0] + "' declared twice");
      valuation[name_words[0]] = split_words(s.substr(colon + 1));
    } else if (s.rfind("cost", 0) == 0 && s.size() > 4 && std::isspace(static_cast<unsigned char>(s[4]))) {
      auto words = split_words(s.substr(4));
      if (words.size() != 3)
        fail(Errc::syntax, "expected 'cost <id> <id> <positive-int>'");
      uint64_t c = parse_nat(words[2], line.number);
      if (c == 0)
        fail(Errc::non_positive_cost, "cost must be positive");
      auto key = std::make_pair(words[0], words[1]);
      if (costs.count(key))
        fail(Errc::duplicate_cost, "duplicate cost entry for " + words[0] + " -> " + words[1]);
      costs[key] = c;
    } else if (s.rfind("default_cost:", 0) == 0) {
      if (default_cost)
        fail(Errc::syntax, "repeated default_cost: directive");
      auto words = split_words(s.substr(13));
      if (words.size() != 1)
        fail(Errc::syntax, "expected 'default_cost: <positive-int>'");
      uint64_t c = parse_nat(words[0], line.number);
      if (c == 0)
        fail(Errc::non_positive_cost, "default_cost must be positive");
      default_cost = c;
    } else if (s.rfind("point:", 0) == 0) {
      if (point)
        fail(Errc::syntax, "repeated point: directive");
      auto words = split_words(s.substr(6));
      if (words.size() != 1)
        fail(Errc::syntax, "expected 'point: <id>'");
      point = words[0];
    } else {
      fail(Errc::syntax, "unknown directive: '" + s + "'");
    }
  }

  if (!seen_states)
    throw Error(Errc::syntax, "missing states: directive");
  if (edges.empty())
    throw Error(Errc::syntax, "missing edges: directive");
  if (!default_cost)
    throw Error(Errc::syntax, "missing default_cost: directive");

  ParsedModel out{Model(std::move(states), std::move(edges), std::move(valuation), std::move(costs),
                        *default_cost),
                  std::nullopt};
  if (point)
    out.point = out.model.id_of(*point);
  return out;
}

Model parse_model(std::string_view text) { return parse_model_file(text).model; }

std::string serialize_model(const Model& m) {
  std::ostringstream out;
  out << "states:";
  for (const auto& s : m.state_names())
    out << ' ' << s;
  out << '\n';
  for (const Edge& e : m.edges())
    out << "edges: " << m.state_name(e.src) << " -> " << m.state_name(e.dst) << '\n';
  for (const auto& [atom, members] : m.valuation()) {
    out << "atom " << atom << ':';
    for (StateId s : members)
      out << ' ' << m.state_name(s);
    out << '\n';
  }
  for (const auto& [e, c] : m.explicit_costs())
    out << "cost " << m.state_name(e.src) << ' ' << m.state_name(e.dst) << ' ' << c << '\n';
  out << "default_cost: " << m.default_cost() << '\n';
  return out.str();
}

std::string serialize_pointed(const PointedModel& pm) {
  return serialize_model(pm.model) + "point: " + pm.point_name() + "\n";
}

uint64_t model_size(const Model& m) {
  uint64_t size = checked_add(m.state_count(), m.edges().size());
  for (const auto& [atom, members] : m.valuation())
    size = checked_add(size, members.size());
  for (StateId s = 0; s < m.state_count(); ++s)
    for (StateId t = 0; t < m.state_count(); ++t)
      size = checked_add(size, m.cost(s, t));
  return size;
}

Model remove_edges(const Model& m, const EdgeSet& removals) {
  for (const Edge& e : removals.pairs)
    if (!m.has_edge(e))
      throw Error(Errc::edge_not_present, "edge " + m.state_name(e.src) + " -> " +
                                              m.state_name(e.dst) + " is not present");
  std::vector<Edge> rest;
  std::set_difference(m.edges().begin(), m.edges().end(), removals.pairs.begin(),
                      removals.pairs.end(), std::back_inserter(rest));
  std::vector<bool> has_out(m.state_count(), false);
  for (const Edge& e : rest)
    has_out[e.src] = true;
  for (StateId s = 0; s < m.state_count(); ++s)
    if (!has_out[s])
      throw Error(Errc::seriality,
                  "removal would leave state '" + m.state_name(s) + "' with no outgoing edge");
  return m.with_edges(std::move(rest));
}

Model add_edges(const Model& m, const EdgeSet& additions) {
  for (const Edge& e : additions.pairs)
    if (m.has_edge(e))
      throw Error(Errc::edge_already_present, "edge " + m.state_name(e.src) + " -> " +
                                                  m.state_name(e.dst) + " is already present");
  std::vector<Edge> all;
  std::set_union(m.edges().begin(), m.edges().end(), additions.pairs.begin(), additions.pairs.end(),
                 std::back_inserter(all));
  return m.with_edges(std::move(all));
}

Model apply_update(const Model& m, const EdgeSet& additions, const EdgeSet& removals) {
  return add_edges(remove_edges(m, removals), additions);
}

} // namespace sulcheck
