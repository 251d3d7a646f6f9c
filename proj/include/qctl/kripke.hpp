#pragma once

// Finite Kripke structures: vertices in declaration order, a total edge
// relation and per-vertex proposition labels.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qctl {

using VertexIndex = std::size_t;

/// A vertex identifier together with its position in declaration order.
struct VertexId {
  std::string name;
  VertexIndex index = 0;

  friend bool operator==(const VertexId&, const VertexId&) = default;
};

class KripkeStructure {
 public:
  using Edge = std::pair<VertexIndex, VertexIndex>;

  /// Validates totality, uniqueness of identifiers and edge endpoints.
  /// Duplicate edges are merged.
  KripkeStructure(std::vector<std::string> ids, std::vector<Edge> edges,
                  std::vector<std::set<std::string>> labels, VertexIndex initial = 0);

  std::size_t num_vertices() const { return ids_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  /// |V| + |E|
  std::size_t size() const { return num_vertices() + num_edges(); }

  const std::string& name(VertexIndex v) const { return ids_.at(v); }
  VertexId vertex(VertexIndex v) const { return {ids_.at(v), v}; }
  std::optional<VertexIndex> find(std::string_view id) const;
  /// Throws ValidationError for unknown identifiers.
  VertexIndex index_of(std::string_view id) const;

  VertexIndex initial() const { return initial_; }

  /// Sorted, duplicate-free, never empty.
  std::span<const VertexIndex> successors(VertexIndex v) const;
  /// Reflexive-transitive closure of E from v, in ascending index order.
  std::vector<VertexIndex> reachable(VertexIndex v) const;

  const std::set<std::string>& labels(VertexIndex v) const { return labels_.at(v); }
  bool has_label(VertexIndex v, std::string_view prop) const;
  /// Union of all vertex labels.
  std::set<std::string> propositions() const;

  /// All edges ordered by (source, target).
  std::vector<Edge> edges() const;

  friend bool operator==(const KripkeStructure& a, const KripkeStructure& b);

 private:
  std::vector<std::string> ids_;
  std::vector<std::vector<VertexIndex>> succ_;
  std::vector<std::set<std::string>> labels_;
  std::size_t num_edges_ = 0;
  VertexIndex initial_ = 0;
};

/// Parses the line-oriented structure format (`states:`, `init:`, `edges:`,
/// `label <id>:`; `#` starts a comment).
KripkeStructure parse_kripke(std::string_view text);

/// Inverse of parse_kripke: parse_kripke(serialize_kripke(k)) == k.
std::string serialize_kripke(const KripkeStructure& k);

std::vector<VertexIndex> successors(const KripkeStructure& k, std::string_view vertex);
std::vector<VertexIndex> reachable(const KripkeStructure& k, std::string_view vertex);

/// Same vertices and edges, and labels agree on `props` at every vertex.
bool p_equivalent(const KripkeStructure& a, const KripkeStructure& b,
                  const std::set<std::string>& props);

/// Per-source memo of reachable sets. Owned by a single reduction job.
class ReachabilityCache {
 public:
  explicit ReachabilityCache(const KripkeStructure& k) : k_(&k), cache_(k.num_vertices()) {}

  const std::vector<VertexIndex>& operator()(VertexIndex v);

 private:
  const KripkeStructure* k_;
  std::vector<std::optional<std::vector<VertexIndex>>> cache_;
};

}  // namespace qctl
