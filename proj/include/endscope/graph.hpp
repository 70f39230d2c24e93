#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "endscope/error.hpp"

namespace endscope {

/// Canonical text identifier of a vertex (normal-form word, coordinate tuple, ...).
using VertexKey = std::string;
using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class GraphKind {
  line,
  grid2d,
  free_group,
  free_product,
  regular_tree,
  finite_file,
  adjacency_oracle,
};

const char* kind_name(GraphKind k);

/// Adjacency table for finite graphs: key -> sorted neighbor keys.
using FiniteTable = std::map<VertexKey, std::vector<VertexKey>>;

/// User-supplied lazy graph. `canonical` must be total and deterministic and
/// return nullopt on invalid keys; `neighbors` must be symmetric and degree-bounded.
struct NeighborOracle {
  std::function<std::optional<VertexKey>(const VertexKey&)> canonical;
  std::function<std::vector<VertexKey>(const VertexKey&)> neighbors;
  std::string label;
};

/// A catalog entry or user oracle describing a locally finite graph whose
/// vertices are generated lazily from canonical keys.
class GraphSpec {
 public:
  /// Default-constructs the line graph; use the named factories.
  GraphSpec() = default;

  static GraphSpec line();
  static GraphSpec grid2d();
  static GraphSpec free_group(int rank);
  static GraphSpec free_product(int p, int q);
  static GraphSpec regular_tree(int degree);
  static GraphSpec finite_file(const std::string& path);
  static GraphSpec finite_edges(const std::vector<std::pair<VertexKey, VertexKey>>& edges,
                                const std::string& label);
  static GraphSpec adjacency_oracle(NeighborOracle oracle);

  /// Parses "line", "grid2d", "free-group:2", "free-product:2,3",
  /// "regular-tree:3" or "finite-file:PATH".
  static GraphSpec parse(const std::string& text);

  GraphKind kind() const { return kind_; }
  bool is_cayley() const;

  /// Canonical form of a key; throws InvalidKey when the key is not valid
  /// for this graph.
  VertexKey canonical(const VertexKey& raw) const;

  /// Sorted, deduplicated neighbor keys; never contains the vertex itself.
  std::vector<VertexKey> neighbors(const VertexKey& v) const;

  // Group structure, Cayley kinds only.
  VertexKey identity() const;
  VertexKey multiply(const VertexKey& a, const VertexKey& b) const;
  VertexKey inverse(const VertexKey& a) const;
  /// Word length of a group element = graph distance from the identity.
  int word_length(const VertexKey& a) const;
  /// Symmetric generator list (closed under formal inversion).
  std::vector<VertexKey> generators() const;

  /// Default basepoint: identity for Cayley kinds, root for trees,
  /// lexicographically smallest vertex for finite kinds.
  VertexKey default_basepoint() const;

  /// Canonical text id, stable across runs.
  std::string id() const;

  int rank() const { return rank_; }
  int order_p() const { return p_; }
  int order_q() const { return q_; }
  int degree() const { return degree_; }
  const std::shared_ptr<const FiniteTable>& table() const { return table_; }

 private:
  GraphSpec() = default;

  GraphKind kind_ = GraphKind::line;
  int rank_ = 0;    // free_group
  int p_ = 0;       // free_product
  int q_ = 0;
  int degree_ = 0;  // regular_tree
  std::string label_;
  std::shared_ptr<const FiniteTable> table_;
  NeighborOracle oracle_;
};

/// Materialization budgets. The vertex cap may be overridden with the
/// ENDSCOPE_BUDGET environment variable at the CLI level.
struct Limits {
  std::size_t vertex_budget = 1'000'000;
  std::size_t degree_bound = 64;
};

/// Undirected edge, endpoints held as window-local vertex ids with a < b.
struct Edge {
  VertexId a;
  VertexId b;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A materialized ball of radius R around a basepoint. Immutable after
/// construction; vertex ids are assigned in sorted (distance, key) order,
/// so all id-ordered iteration is deterministic.
class Window {
 public:
  const GraphSpec& spec() const { return spec_; }
  const VertexKey& basepoint() const { return basepoint_; }
  int radius() const { return radius_; }

  std::size_t size() const { return keys_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const VertexKey& key(VertexId v) const { return keys_[v]; }
  int distance(VertexId v) const { return dist_[v]; }
  std::optional<VertexId> find(const VertexKey& canonical_key) const;
  /// find() after canonicalizing; throws InvalidKey on malformed keys.
  std::optional<VertexId> locate(const VertexKey& raw) const;

  /// Neighbors of v inside the window as (vertex, incident edge) pairs,
  /// sorted by neighbor id.
  std::span<const std::pair<VertexId, EdgeId>> adjacency(VertexId v) const;

  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<EdgeId> edge_between(VertexId u, VertexId v) const;

  const std::vector<VertexId>& frontier() const { return frontier_; }
  bool is_frontier(VertexId v) const { return dist_[v] == radius_ && !exhausted_; }
  /// True when the BFS exhausted the graph before reaching the radius;
  /// the window then covers the basepoint's whole component exactly.
  bool exhausted() const { return exhausted_; }

  /// Stable identifier of (spec, basepoint, radius), used to detect
  /// cross-window mixups and referenced by serialized vertex sets.
  const std::string& id() const { return id_; }

  friend Window materialize_window(const GraphSpec&, const VertexKey&, int, const Limits&);

 private:
  Window() = default;

  GraphSpec spec_;
  VertexKey basepoint_;
  int radius_ = 0;
  bool exhausted_ = false;
  std::string id_;
  std::vector<VertexKey> keys_;
  std::vector<int> dist_;
  std::unordered_map<VertexKey, VertexId> index_;
  std::vector<Edge> edges_;
  std::vector<std::pair<VertexId, EdgeId>> adj_flat_;
  std::vector<std::uint32_t> adj_offset_;
  std::vector<VertexId> frontier_;
};

/// Breadth-first closure of the basepoint to the given radius.
/// Throws DegreeOverflow / BudgetExceeded when limits are hit.
Window materialize_window(const GraphSpec& spec, const VertexKey& basepoint, int radius,
                          const Limits& limits = {});

enum class Exactness { exact, truncated };

/// Vertices reachable from A by at most n window edges. With
/// Exactness::exact the result must stay off the frontier (HorizonEscape
/// otherwise); truncated mode clips at the window boundary.
std::vector<VertexId> ball(const Window& w, std::span<const VertexId> a, int n,
                           Exactness mode = Exactness::exact);

/// FNV-1a over a string, used for stable content hashes in ids.
std::uint64_t fnv1a(std::string_view text);
std::string fnv1a_hex(std::string_view text);

}  // namespace endscope
