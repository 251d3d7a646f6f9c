#include "qctl/kripke.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "qctl/errors.hpp"

namespace qctl {

namespace {

bool valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  });
}

}  // namespace

KripkeStructure::KripkeStructure(std::vector<std::string> ids, std::vector<Edge> edges,
                                 std::vector<std::set<std::string>> labels, VertexIndex initial)
    : ids_(std::move(ids)), succ_(ids_.size()), labels_(std::move(labels)), initial_(initial) {
  if (ids_.empty()) throw ValidationError("structure has no vertices");
  if (labels_.size() < ids_.size()) labels_.resize(ids_.size());
  if (labels_.size() != ids_.size()) throw ValidationError("label table larger than vertex set");
  if (initial_ >= ids_.size()) throw ValidationError("initial vertex out of range");

  std::unordered_map<std::string, VertexIndex> seen;
  for (VertexIndex v = 0; v < ids_.size(); ++v) {
    if (!valid_identifier(ids_[v])) throw ValidationError("invalid vertex identifier '" + ids_[v] + "'");
    if (!seen.emplace(ids_[v], v).second) throw ValidationError("duplicate vertex '" + ids_[v] + "'");
  }
  for (auto [from, to] : edges) {
    if (from >= ids_.size() || to >= ids_.size()) throw ValidationError("edge endpoint out of range");
    succ_[from].push_back(to);
  }
  for (VertexIndex v = 0; v < ids_.size(); ++v) {
    auto& s = succ_[v];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw ValidationError("vertex '" + ids_[v] + "' has no outgoing edge (edge relation must be total)");
    num_edges_ += s.size();
  }
}

std::optional<VertexIndex> KripkeStructure::find(std::string_view id) const {
  for (VertexIndex v = 0; v < ids_.size(); ++v)
    if (ids_[v] == id) return v;
  return std::nullopt;
}

VertexIndex KripkeStructure::index_of(std::string_view id) const {
  if (auto v = find(id)) return *v;
  throw ValidationError("unknown vertex '" + std::string(id) + "'");
}

std::span<const VertexIndex> KripkeStructure::successors(VertexIndex v) const { return succ_.at(v); }

std::vector<VertexIndex> KripkeStructure::reachable(VertexIndex v) const {
  std::vector<bool> seen(num_vertices(), false);
  std::deque<VertexIndex> queue{v};
  seen.at(v) = true;
  while (!queue.empty()) {
    VertexIndex cur = queue.front();
    queue.pop_front();
    for (VertexIndex next : succ_[cur]) {
      if (!seen[next]) {
        seen[next] = true;
        queue.push_back(next);
      }
    }
  }
  std::vector<VertexIndex> out;
  for (VertexIndex u = 0; u < seen.size(); ++u)
    if (seen[u]) out.push_back(u);
  return out;
}

bool KripkeStructure::has_label(VertexIndex v, std::string_view prop) const {
  const auto& l = labels_.at(v);
  return l.find(std::string(prop)) != l.end();
}

std::set<std::string> KripkeStructure::propositions() const {
  std::set<std::string> out;
  for (const auto& l : labels_) out.insert(l.begin(), l.end());
  return out;
}

std::vector<KripkeStructure::Edge> KripkeStructure::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (VertexIndex v = 0; v < succ_.size(); ++v)
    for (VertexIndex w : succ_[v]) out.emplace_back(v, w);
  return out;
}

bool operator==(const KripkeStructure& a, const KripkeStructure& b) {
  return a.ids_ == b.ids_ && a.succ_ == b.succ_ && a.labels_ == b.labels_ && a.initial_ == b.initial_;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

}  // namespace

KripkeStructure parse_kripke(std::string_view text) {
  std::vector<std::string> ids;
  std::unordered_map<std::string, VertexIndex> index;
  std::vector<KripkeStructure::Edge> edges;
  std::vector<std::set<std::string>> labels;
  std::optional<std::string> init;
  std::size_t init_line = 0;
  bool have_states = false;

  auto lookup = [&](const std::string& id, std::size_t line) {
    auto it = index.find(id);
    if (it == index.end()) throw ParseError("undeclared vertex '" + id + "'", line);
    return it->second;
  };

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (!have_states) {
      if (!starts_with(line, "states:")) throw ParseError("expected 'states:' directive first", lineno);
      for (auto& id : split_ws(line.substr(7))) {
        if (!valid_identifier(id)) throw ParseError("invalid vertex identifier '" + id + "'", lineno);
        if (!index.emplace(id, ids.size()).second) throw ParseError("duplicate vertex '" + id + "'", lineno);
        ids.push_back(id);
      }
      if (ids.empty()) throw ParseError("'states:' declares no vertices", lineno);
      labels.resize(ids.size());
      have_states = true;
    } else if (starts_with(line, "states:")) {
      throw ParseError("'states:' may appear only once", lineno);
    } else if (starts_with(line, "init:")) {
      auto toks = split_ws(line.substr(5));
      if (toks.size() != 1) throw ParseError("'init:' expects exactly one vertex", lineno);
      if (init) throw ParseError("'init:' may appear only once", lineno);
      init = toks[0];
      init_line = lineno;
    } else if (starts_with(line, "edges:")) {
      for (auto& tok : split_ws(line.substr(6))) {
        auto arrow = tok.find("->");
        if (arrow == std::string::npos || arrow == 0 || arrow + 2 == tok.size())
          throw ParseError("malformed edge '" + tok + "'", lineno);
        edges.emplace_back(lookup(tok.substr(0, arrow), lineno), lookup(tok.substr(arrow + 2), lineno));
      }
    } else if (starts_with(line, "label")) {
      auto rest = trim(line.substr(5));
      auto colon = rest.find(':');
      if (colon == std::string_view::npos || rest.empty() || line.size() == 5 ||
          !std::isspace(static_cast<unsigned char>(line[5])))
        throw ParseError("malformed label directive", lineno);
      auto id = std::string(trim(rest.substr(0, colon)));
      VertexIndex v = lookup(id, lineno);
      for (auto& prop : split_ws(rest.substr(colon + 1))) {
        if (!valid_identifier(prop)) throw ParseError("invalid proposition '" + prop + "'", lineno);
        labels[v].insert(prop);
      }
    } else {
      throw ParseError("unknown directive", lineno);
    }
  }
  if (!have_states) throw ParseError("missing 'states:' directive", lineno);

  VertexIndex initial = 0;
  if (init) initial = lookup(*init, init_line);

  // Report totality violations by name before the constructor does.
  std::vector<bool> has_succ(ids.size(), false);
  for (auto [from, to] : edges) has_succ[from] = true;
  for (VertexIndex v = 0; v < ids.size(); ++v)
    if (!has_succ[v])
      throw ValidationError("vertex '" + ids[v] + "' has no outgoing edge (edge relation must be total)");

  return KripkeStructure(std::move(ids), std::move(edges), std::move(labels), initial);
}

std::string serialize_kripke(const KripkeStructure& k) {
  std::ostringstream out;
  out << "states:";
  for (VertexIndex v = 0; v < k.num_vertices(); ++v) out << ' ' << k.name(v);
  out << "\ninit: " << k.name(k.initial()) << '\n';
  for (VertexIndex v = 0; v < k.num_vertices(); ++v) {
    out << "edges:";
    for (VertexIndex w : k.successors(v)) out << ' ' << k.name(v) << "->" << k.name(w);
    out << '\n';
  }
  for (VertexIndex v = 0; v < k.num_vertices(); ++v) {
    if (k.labels(v).empty()) continue;
    out << "label " << k.name(v) << ':';
    for (const auto& p : k.labels(v)) out << ' ' << p;
    out << '\n';
  }
  return out.str();
}

std::vector<VertexIndex> successors(const KripkeStructure& k, std::string_view vertex) {
  auto s = k.successors(k.index_of(vertex));
  return {s.begin(), s.end()};
}

std::vector<VertexIndex> reachable(const KripkeStructure& k, std::string_view vertex) {
  return k.reachable(k.index_of(vertex));
}

bool p_equivalent(const KripkeStructure& a, const KripkeStructure& b, const std::set<std::string>& props) {
  if (a.num_vertices() != b.num_vertices()) return false;
  for (VertexIndex v = 0; v < a.num_vertices(); ++v) {
    if (a.name(v) != b.name(v)) return false;
    auto sa = a.successors(v);
    auto sb = b.successors(v);
    if (!std::equal(sa.begin(), sa.end(), sb.begin(), sb.end())) return false;
    for (const auto& p : props)
      if (a.has_label(v, p) != b.has_label(v, p)) return false;
  }
  return true;
}

const std::vector<VertexIndex>& ReachabilityCache::operator()(VertexIndex v) {
  auto& slot = cache_.at(v);
  if (!slot) slot = k_->reachable(v);
  return *slot;
}

}  // namespace qctl
