#include "endscope/ends.hpp"

#include <algorithm>
#include <deque>

namespace endscope {

namespace {

void check_window(const Window& w, const RemovalSet& m) {
  if (m.window != &w && (!m.window || m.window->id() != w.id()))
    fail(Errc::window_mismatch, "removal set belongs to a different window");
}

VertexSet endpoints_of(const Window& w, const std::vector<EdgeId>& edges) {
  std::vector<VertexId> support;
  support.reserve(edges.size() * 2);
  for (EdgeId e : edges) {
    support.push_back(w.edges()[e].a);
    support.push_back(w.edges()[e].b);
  }
  return VertexSet::of_ids(w, std::move(support));
}

}  // namespace

RemovalSet removal_set(const Window& w, int r) {
  if (r < 0) fail(Errc::invalid_argument, "removal radius must be >= 0");
  if (!w.exhausted() && r > w.radius() - 2)
    fail(Errc::radius_too_large, "removal radius " + std::to_string(r) +
                                     " leaves no collar in window of radius " +
                                     std::to_string(w.radius()));
  RemovalSet m;
  m.window = &w;
  m.radius = r;
  const auto& edges = w.edges();
  for (EdgeId e = 0; e < edges.size(); ++e)
    if (w.distance(edges[e].a) <= r || w.distance(edges[e].b) <= r) m.edges.push_back(e);
  m.support = endpoints_of(w, m.edges);
  return m;
}

RemovalSet removal_from_edge_ids(const Window& w, std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (!edges.empty() && edges.back() >= w.edge_count())
    fail(Errc::invalid_argument, "edge id out of window");
  RemovalSet m;
  m.window = &w;
  m.edges = std::move(edges);
  m.support = endpoints_of(w, m.edges);
  return m;
}

RemovalSet removal_from_edges(const Window& w,
                              std::span<const std::pair<VertexKey, VertexKey>> edges) {
  std::vector<EdgeId> ids;
  ids.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    auto ia = w.locate(a), ib = w.locate(b);
    if (!ia || !ib) fail(Errc::invalid_argument, "edge endpoint not in window");
    auto e = w.edge_between(*ia, *ib);
    if (!e) fail(Errc::invalid_argument, "no edge between '" + a + "' and '" + b + "'");
    ids.push_back(*e);
  }
  return removal_from_edge_ids(w, std::move(ids));
}

RemovalSet removal_incident_to(const Window& w, const VertexSet& vertices) {
  std::vector<EdgeId> ids;
  for (VertexId v : vertices.ids)
    for (auto [u, e] : w.adjacency(v)) {
      (void)u;
      ids.push_back(e);
    }
  return removal_from_edge_ids(w, std::move(ids));
}

RemovalSet removal_union(const RemovalSet& a, const RemovalSet& b) {
  check_window(*a.window, b);
  std::vector<EdgeId> ids;
  ids.reserve(a.edges.size() + b.edges.size());
  std::set_union(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
                 std::back_inserter(ids));
  return removal_from_edge_ids(*a.window, std::move(ids));
}

const Component* ComponentPartition::find(const std::string& id) const {
  auto it = std::lower_bound(components.begin(), components.end(), id,
                             [](const Component& c, const std::string& s) { return c.id < s; });
  if (it == components.end() || it->id != id) return nullptr;
  return &*it;
}

ComponentPartition components(const Window& w, const RemovalSet& m) {
  check_window(w, m);
  std::vector<char> removed(w.edge_count(), 0);
  for (EdgeId e : m.edges) removed[e] = 1;

  ComponentPartition part;
  part.removal = m;
  std::vector<std::uint32_t> label(w.size(), UINT32_MAX);
  std::vector<Component> comps;
  std::deque<VertexId> queue;
  for (VertexId start = 0; start < w.size(); ++start) {
    if (label[start] != UINT32_MAX) continue;
    std::uint32_t c = static_cast<std::uint32_t>(comps.size());
    comps.push_back({});
    label[start] = c;
    queue.push_back(start);
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      comps[c].vertices.push_back(v);
      if (w.is_frontier(v)) comps[c].frontier_touching = true;
      for (auto [u, e] : w.adjacency(v)) {
        if (removed[e] || label[u] != UINT32_MAX) continue;
        label[u] = c;
        queue.push_back(u);
      }
    }
    std::sort(comps[c].vertices.begin(), comps[c].vertices.end());
    // Component id: lexicographically smallest member key (not smallest id,
    // since ids are ordered by distance first).
    const VertexKey* best = &w.key(comps[c].vertices.front());
    for (VertexId v : comps[c].vertices)
      if (w.key(v) < *best) best = &w.key(v);
    comps[c].id = *best;
  }

  std::vector<std::uint32_t> order(comps.size());
  for (std::uint32_t i = 0; i < comps.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return comps[a].id < comps[b].id; });
  std::vector<std::uint32_t> remap(comps.size());
  for (std::uint32_t pos = 0; pos < order.size(); ++pos) remap[order[pos]] = pos;

  part.components.resize(comps.size());
  for (std::uint32_t i = 0; i < comps.size(); ++i)
    part.components[remap[i]] = std::move(comps[i]);
  part.comp_index.resize(w.size());
  for (VertexId v = 0; v < w.size(); ++v) part.comp_index[v] = remap[label[v]];
  for (const auto& c : part.components)
    if (c.frontier_touching) ++part.unbounded_count;
  return part;
}

std::map<std::string, std::string> restriction_map(const ComponentPartition& finer,
                                                   const ComponentPartition& coarser) {
  check_window(*finer.removal.window, coarser.removal);
  if (!std::includes(finer.removal.edges.begin(), finer.removal.edges.end(),
                     coarser.removal.edges.begin(), coarser.removal.edges.end()))
    fail(Errc::not_nested, "coarser removal set is not contained in the finer one");

  std::map<std::string, std::string> out;
  for (const auto& c : finer.components) {
    const Component& target = coarser.component_of(c.vertices.front());
    out.emplace(c.id, target.id);
  }
  return out;
}

EndSystem::EndSystem(const Window& w, int depth) : window_(&w), depth_(depth) {
  if (depth < 0) fail(Errc::invalid_argument, "depth must be >= 0");
  if (!w.exhausted() && depth > w.radius() - 2)
    fail(Errc::radius_too_large, "depth " + std::to_string(depth) +
                                     " too deep for window of radius " +
                                     std::to_string(w.radius()));
  partitions_.reserve(static_cast<std::size_t>(depth) + 1);
  for (int r = 0; r <= depth; ++r) partitions_.push_back(components(w, removal_set(w, r)));
  for (int r = 0; r < depth; ++r)
    restrictions_.push_back(restriction_map(partitions_[static_cast<std::size_t>(r) + 1],
                                            partitions_[static_cast<std::size_t>(r)]));

  for (const auto& top : partitions_.back().components) {
    if (!top.frontier_touching) continue;
    EndThread t;
    t.depth = depth;
    t.choices.assign(static_cast<std::size_t>(depth) + 1, "");
    t.choices[static_cast<std::size_t>(depth)] = top.id;
    for (int r = depth - 1; r >= 0; --r)
      t.choices[static_cast<std::size_t>(r)] =
          restrictions_[static_cast<std::size_t>(r)].at(
              t.choices[static_cast<std::size_t>(r) + 1]);
    threads_.push_back(std::move(t));
  }
  std::sort(threads_.begin(), threads_.end(),
            [](const EndThread& a, const EndThread& b) { return a.id() < b.id(); });
}

const ComponentPartition& EndSystem::partition(int r) const {
  if (r < 0 || r > depth_) fail(Errc::invalid_argument, "radius outside system depth");
  return partitions_[static_cast<std::size_t>(r)];
}

const std::map<std::string, std::string>& EndSystem::restriction(int r) const {
  if (r < 0 || r >= depth_) fail(Errc::invalid_argument, "restriction level out of range");
  return restrictions_[static_cast<std::size_t>(r)];
}

std::optional<EndThread> EndSystem::find_thread(const std::string& top_id) const {
  auto it = std::lower_bound(threads_.begin(), threads_.end(), top_id,
                             [](const EndThread& t, const std::string& s) { return t.id() < s; });
  if (it == threads_.end() || it->id() != top_id) return std::nullopt;
  return *it;
}

std::optional<EndThread> EndSystem::thread_of_vertex(VertexId v) const {
  const Component& c = partitions_.back().component_of(v);
  if (!c.frontier_touching) return std::nullopt;
  return find_thread(c.id);
}

const Component& EndSystem::top_component(const EndThread& t) const {
  return component_at(t, t.depth);
}

const Component& EndSystem::component_at(const EndThread& t, int r) const {
  if (t.depth > depth_) fail(Errc::invalid_argument, "thread deeper than system");
  if (r < 0 || r > t.depth) fail(Errc::invalid_argument, "radius outside thread depth");
  const Component* c = partitions_[static_cast<std::size_t>(r)].find(
      t.choices[static_cast<std::size_t>(r)]);
  if (!c) fail(Errc::invalid_argument, "thread references unknown component");
  return *c;
}

EndThread EndSystem::restrict_thread(const EndThread& t, int d) const {
  if (d < 0 || d > t.depth) fail(Errc::invalid_argument, "cannot restrict to deeper level");
  EndThread out;
  out.depth = d;
  out.choices.assign(t.choices.begin(), t.choices.begin() + d + 1);
  return out;
}

std::vector<EndThread> end_threads(const Window& w, int d) {
  return EndSystem(w, d).threads();
}

std::string classify_counts(const std::vector<std::size_t>& counts) {
  if (counts.empty()) fail(Errc::invalid_argument, "no counts to classify");
  std::size_t last = counts.back();
  if (last == 0) return "0";
  bool strictly_growing = counts.size() >= 2;
  for (std::size_t i = 1; i < counts.size(); ++i)
    if (counts[i] <= counts[i - 1]) strictly_growing = false;
  if (strictly_growing) return "growing(>=" + std::to_string(last) + ")";
  if (last <= 2) return std::to_string(last);
  return "stable(" + std::to_string(last) + ")";
}

EndReport end_count_report(const GraphSpec& spec, int r_max, int horizon,
                           const VertexKey& basepoint, const Limits& limits) {
  if (r_max < 0) fail(Errc::invalid_argument, "r_max must be >= 0");
  if (horizon < r_max + 2)
    fail(Errc::invalid_argument, "horizon must be at least r_max + 2");

  Window w = materialize_window(spec, basepoint, horizon, limits);
  Window collar = materialize_window(spec, basepoint, horizon - 1, limits);

  EndReport rep;
  rep.graph_id = spec.id();
  rep.basepoint = w.basepoint();
  rep.horizon = horizon;
  for (int r = 0; r <= r_max; ++r) {
    rep.radii.push_back(r);
    std::size_t count = components(w, removal_set(w, r)).unbounded_count;
    rep.unbounded_counts.push_back(count);
    bool stable = false;
    if (collar.exhausted() || r <= collar.radius() - 2)
      stable = components(collar, removal_set(collar, r)).unbounded_count == count;
    rep.exact_per_radius.push_back(stable);
  }
  rep.exact = std::all_of(rep.exact_per_radius.begin(), rep.exact_per_radius.end(),
                          [](bool b) { return b; });
  rep.classification = classify_counts(rep.unbounded_counts);
  return rep;
}

}  // namespace endscope
