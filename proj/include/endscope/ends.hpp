#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "endscope/boundary.hpp"
#include "endscope/graph.hpp"

namespace endscope {

/// A bounded edge set to remove, either the canonical exhaustion M_r (all
/// edges meeting the ball B_r) or an explicit edge list.
struct RemovalSet {
  const Window* window = nullptr;
  std::optional<int> radius;
  std::vector<EdgeId> edges;  // sorted unique
  VertexSet support;          // endpoints of the removed edges
};

/// Canonical M_r. Requires r <= R-2 so the complement keeps a frontier
/// collar, except on exhausted windows where any r is allowed.
RemovalSet removal_set(const Window& w, int r);
RemovalSet removal_from_edge_ids(const Window& w, std::vector<EdgeId> edges);
RemovalSet removal_from_edges(const Window& w,
                              std::span<const std::pair<VertexKey, VertexKey>> edges);
/// All edges incident to the given vertices (the F(B) shape).
RemovalSet removal_incident_to(const Window& w, const VertexSet& vertices);
RemovalSet removal_union(const RemovalSet& a, const RemovalSet& b);

struct Component {
  std::string id;  // lexicographically smallest member key
  std::vector<VertexId> vertices;
  bool frontier_touching = false;
  std::size_t size_in_window() const { return vertices.size(); }
};

struct ComponentPartition {
  RemovalSet removal;
  std::vector<Component> components;       // sorted by id
  std::vector<std::uint32_t> comp_index;   // vertex id -> index into components
  std::size_t unbounded_count = 0;

  const Component& component_of(VertexId v) const { return components[comp_index[v]]; }
  const Component* find(const std::string& id) const;
};

/// Connected components of the window graph minus the removal edges.
ComponentPartition components(const Window& w, const RemovalSet& m);

/// For nested removals M subset N, maps each (finer) component of the
/// N-partition to the (coarser) M-component containing it.
std::map<std::string, std::string> restriction_map(const ComponentPartition& finer,
                                                   const ComponentPartition& coarser);

/// A compatible chain of frontier-touching component choices for
/// M_0 subset ... subset M_depth; the finite-depth avatar of one end.
struct EndThread {
  int depth = 0;
  std::vector<std::string> choices;  // component id per radius 0..depth
  const std::string& id() const { return choices.back(); }
  friend bool operator==(const EndThread&, const EndThread&) = default;
};

/// Partitions, restriction maps and end threads for the canonical
/// exhaustion M_0..M_depth of one window. Immutable once built.
class EndSystem {
 public:
  EndSystem(const Window& w, int depth);

  const Window& window() const { return *window_; }
  int depth() const { return depth_; }
  const ComponentPartition& partition(int r) const;
  /// Map from partition(r+1) component ids to partition(r) component ids.
  const std::map<std::string, std::string>& restriction(int r) const;
  const std::vector<EndThread>& threads() const { return threads_; }

  std::optional<EndThread> find_thread(const std::string& top_id) const;
  /// The thread whose deepest component contains v, when that component is
  /// frontier-touching.
  std::optional<EndThread> thread_of_vertex(VertexId v) const;
  const Component& top_component(const EndThread& t) const;
  const Component& component_at(const EndThread& t, int r) const;
  EndThread restrict_thread(const EndThread& t, int d) const;

 private:
  const Window* window_;
  int depth_;
  std::vector<ComponentPartition> partitions_;
  std::vector<std::map<std::string, std::string>> restrictions_;
  std::vector<EndThread> threads_;
};

/// All depth-d end threads of the window.
std::vector<EndThread> end_threads(const Window& w, int d);

struct EndReport {
  std::string graph_id;
  VertexKey basepoint;
  std::vector<int> radii;
  std::vector<std::size_t> unbounded_counts;
  std::string classification;  // "0" | "1" | "2" | "growing(>=n)" | "stable(n)"
  int horizon = 0;
  bool exact = false;                 // collar-stable at every radius
  std::vector<bool> exact_per_radius;
};

/// Unbounded-component counts for M_0..M_rmax under the given horizon,
/// with a collar-stability check against horizon-1.
EndReport end_count_report(const GraphSpec& spec, int r_max, int horizon,
                           const VertexKey& basepoint, const Limits& limits = {});

std::string classify_counts(const std::vector<std::size_t>& counts);

}  // namespace endscope
