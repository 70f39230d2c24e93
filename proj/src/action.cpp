#include "endscope/action.hpp"

#include <algorithm>

namespace endscope {

GroupWord make_word(const GraphSpec& spec, const std::string& text) {
  GroupWord g;
  g.text = text;
  g.normal = spec.canonical(text);
  g.length = spec.word_length(g.normal);
  return g;
}

GroupWord inverse_word(const GraphSpec& spec, const GroupWord& g) {
  GroupWord out;
  out.normal = spec.inverse(g.normal);
  out.text = out.normal;
  out.length = spec.word_length(out.normal);
  return out;
}

VertexSet act_on_set(const GroupWord& g, const VertexSet& a) {
  const Window& w = *a.window;
  const GraphSpec& spec = w.spec();
  if (!spec.is_cayley()) fail(Errc::invalid_argument, "action needs a Cayley graph");
  std::vector<VertexId> out;
  out.reserve(a.size());
  for (VertexId v : a.ids) {
    VertexKey image = spec.multiply(g.normal, w.key(v));
    auto id = w.find(image);
    if (!id)
      fail(Errc::horizon_escape, "translate '" + image + "' leaves the window");
    out.push_back(*id);
  }
  return VertexSet::of_ids(w, std::move(out));
}

EndThread act_on_end(const EndSystem& sys, const GroupWord& g, const EndThread& t, int d) {
  const Window& w = sys.window();
  const GraphSpec& spec = w.spec();
  if (!spec.is_cayley()) fail(Errc::invalid_argument, "action needs a Cayley graph");
  if (d < 0) fail(Errc::invalid_argument, "depth must be >= 0");
  int source_radius = d + g.length;
  if (t.depth < source_radius)
    fail(Errc::depth_insufficient, "thread depth " + std::to_string(t.depth) +
                                       " < required " + std::to_string(source_radius));

  const Component& source = sys.component_at(t, source_radius);
  const ComponentPartition& target = sys.partition(d);

  // Translate the tail of the source component; every image beyond B_d must
  // land in one frontier-touching component.
  std::vector<std::uint32_t> landing;
  for (VertexId v : source.vertices) {
    VertexKey image = spec.multiply(g.normal, w.key(v));
    auto id = w.find(image);
    if (!id || w.distance(*id) <= d) continue;
    landing.push_back(target.comp_index[*id]);
  }
  std::sort(landing.begin(), landing.end());
  landing.erase(std::unique(landing.begin(), landing.end()), landing.end());
  if (landing.empty())
    fail(Errc::depth_insufficient, "no translated tail vertex stays in the window");
  if (landing.size() > 1)
    fail(Errc::depth_insufficient, "translated tail lands in several components");
  const Component& top = target.components[landing.front()];
  if (!top.frontier_touching)
    fail(Errc::depth_insufficient, "translated tail lands in a bounded component");

  EndThread out;
  out.depth = d;
  out.choices.assign(static_cast<std::size_t>(d) + 1, "");
  out.choices[static_cast<std::size_t>(d)] = top.id;
  for (int r = d - 1; r >= 0; --r)
    out.choices[static_cast<std::size_t>(r)] =
        sys.restriction(r).at(out.choices[static_cast<std::size_t>(r) + 1]);
  return out;
}

ProbeReport dynamics_probe(const GraphSpec& spec, std::span<const std::string> seq, int depth,
                           int horizon, const VertexKey& basepoint, const Limits& limits) {
  if (!spec.is_cayley()) fail(Errc::invalid_argument, "probe needs a Cayley graph");
  if (seq.size() < 2) fail(Errc::invalid_argument, "probe needs at least two elements");

  std::vector<GroupWord> words;
  for (const auto& s : seq) words.push_back(make_word(spec, s));
  for (std::size_t i = 1; i < words.size(); ++i) {
    if (words[i].length <= words[i - 1].length)
      fail(Errc::invalid_argument, "word lengths must strictly increase");
    for (std::size_t j = 0; j < i; ++j)
      if (words[i].normal == words[j].normal)
        fail(Errc::invalid_argument, "sequence repeats the element '" + words[i].normal + "'");
  }
  if (words.back().length > horizon)
    fail(Errc::invalid_argument, "horizon too small for the longest element");

  Window w = materialize_window(spec, basepoint, horizon, limits);
  EndSystem sys(w, depth);

  auto thread_of_element = [&](const GroupWord& g) -> std::optional<EndThread> {
    auto id = w.find(g.normal);
    if (!id || w.distance(*id) <= depth) return std::nullopt;
    return sys.thread_of_vertex(*id);
  };

  // The attracting / repelling threads must be confirmed by the last two
  // elements of the sequence.
  auto stabilized = [&](bool inverted) -> EndThread {
    auto last = thread_of_element(inverted ? inverse_word(spec, words.back()) : words.back());
    auto prev = thread_of_element(inverted ? inverse_word(spec, words[words.size() - 2])
                                           : words[words.size() - 2]);
    if (!last || !prev || !(*last == *prev))
      fail(Errc::inconclusive,
           std::string(inverted ? "repelling" : "attracting") + " thread does not stabilize");
    return *last;
  };
  EndThread lambda = stabilized(false);
  EndThread mu = stabilized(true);

  ProbeReport rep;
  rep.graph_id = spec.id();
  rep.seq.assign(seq.begin(), seq.end());
  rep.depth = depth;
  rep.horizon = horizon;
  rep.lambda = lambda.id();
  rep.mu = mu.id();

  const Component& lambda_top = sys.top_component(lambda);
  for (const auto& t : sys.threads())
    if (t.id() != mu.id()) rep.classes.push_back(t.id());

  for (const auto& g : words) {
    std::vector<bool> row;
    for (const auto& cls : rep.classes) {
      const Component& src = *sys.partition(depth).find(cls);
      bool all_into_lambda = true;
      bool witnessed = false;
      for (VertexId v : src.vertices) {
        VertexKey image = spec.multiply(g.normal, w.key(v));
        auto id = w.find(image);
        if (!id || w.distance(*id) <= depth) continue;
        witnessed = true;
        if (&sys.partition(depth).component_of(*id) != &lambda_top) {
          all_into_lambda = false;
          break;
        }
      }
      if (!witnessed)
        fail(Errc::inconclusive, "no witness for class '" + cls + "' under '" +
                                     g.normal + "'; enlarge the horizon");
      row.push_back(all_into_lambda);
    }
    rep.collapse_table.push_back(std::move(row));
  }

  rep.verified_from = 0;
  for (std::size_t n = 0; n < rep.collapse_table.size(); ++n) {
    bool tail_ok = true;
    for (std::size_t m = n; m < rep.collapse_table.size(); ++m)
      for (bool b : rep.collapse_table[m]) tail_ok = tail_ok && b;
    if (tail_ok) {
      rep.verified_from = static_cast<int>(n) + 1;
      break;
    }
  }
  rep.verified = rep.verified_from > 0;
  return rep;
}

FiniteGraph FiniteGraph::from_edges(std::span<const std::pair<VertexKey, VertexKey>> edges,
                                    std::span<const VertexKey> isolated) {
  FiniteGraph g;
  for (const auto& [a, b] : edges) {
    if (a == b) continue;
    g.edges.emplace_back(std::min(a, b), std::max(a, b));
    g.vertices.push_back(a);
    g.vertices.push_back(b);
  }
  g.vertices.insert(g.vertices.end(), isolated.begin(), isolated.end());
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

bool FiniteGraph::has_edge(const VertexKey& a, const VertexKey& b) const {
  std::pair<VertexKey, VertexKey> e{std::min(a, b), std::max(a, b)};
  return std::binary_search(edges.begin(), edges.end(), e);
}

CollapseResult collapse_components(const FiniteGraph& g, std::span<const Permutation> action) {
  // Validate the action first: bijections on the vertex set preserving edges.
  for (const auto& perm : action) {
    std::vector<VertexKey> image;
    for (const auto& v : g.vertices) {
      auto it = perm.find(v);
      if (it == perm.end())
        fail(Errc::not_automorphism, "permutation undefined on '" + v + "'");
      image.push_back(it->second);
    }
    std::sort(image.begin(), image.end());
    if (image != g.vertices)
      fail(Errc::not_automorphism, "map is not a permutation of the vertex set");
    for (const auto& [a, b] : g.edges)
      if (!g.has_edge(perm.at(a), perm.at(b)))
        fail(Errc::not_automorphism,
             "edge {" + a + "," + b + "} is not preserved");
  }

  // Union-find over the edge list.
  std::map<VertexKey, std::uint32_t> index;
  for (std::uint32_t i = 0; i < g.vertices.size(); ++i) index[g.vertices[i]] = i;
  std::vector<std::uint32_t> parent(g.vertices.size());
  for (std::uint32_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::uint32_t(std::uint32_t)> find_root = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : g.edges) parent[find_root(index[a])] = find_root(index[b]);

  std::map<std::uint32_t, std::vector<VertexKey>> groups;
  for (const auto& v : g.vertices) groups[find_root(index[v])].push_back(v);

  CollapseResult out;
  std::map<VertexKey, std::string> vertex_class;
  std::vector<std::pair<std::string, std::vector<VertexKey>>> classes;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    classes.emplace_back(members.front(), members);
  }
  std::sort(classes.begin(), classes.end());
  for (auto& [id, members] : classes) {
    for (const auto& v : members) vertex_class[v] = id;
    out.class_ids.push_back(id);
    out.members.push_back(members);
  }
  out.projection = vertex_class;

  for (const auto& perm : action) {
    std::map<std::string, std::string> induced;
    for (std::size_t c = 0; c < out.class_ids.size(); ++c) {
      const std::string& target = vertex_class.at(perm.at(out.members[c].front()));
      for (const auto& v : out.members[c])
        if (vertex_class.at(perm.at(v)) != target)
          fail(Errc::not_automorphism, "permutation splits a component");
      induced[out.class_ids[c]] = target;
    }
    out.induced.push_back(std::move(induced));
  }
  return out;
}

ThreadDomain thread_domain(const GraphSpec& spec, int depth, int horizon,
                           std::span<const std::string> tracked_words,
                           const VertexKey& basepoint, const Limits& limits) {
  ThreadDomain dom;
  dom.graph_id = spec.id();
  dom.depth = depth;
  for (const auto& t : tracked_words) dom.tracked.push_back(make_word(spec, t));

  int max_len = 0;
  for (const auto& g : dom.tracked) max_len = std::max(max_len, g.length);
  int deep = depth + max_len;
  if (horizon < deep + 2)
    fail(Errc::invalid_argument, "horizon must be at least depth + max word length + 2");

  Window w = materialize_window(spec, basepoint, horizon, limits);
  EndSystem sys(w, deep);
  for (const auto& t : sys.threads()) dom.ids.push_back(sys.restrict_thread(t, depth).id());
  std::sort(dom.ids.begin(), dom.ids.end());
  dom.ids.erase(std::unique(dom.ids.begin(), dom.ids.end()), dom.ids.end());

  for (const auto& g : dom.tracked) {
    std::map<std::string, std::string> table;
    for (const auto& t : sys.threads()) {
      std::string source = sys.restrict_thread(t, depth).id();
      std::string image = act_on_end(sys, g, t, depth).id();
      auto [it, inserted] = table.emplace(source, image);
      if (!inserted && it->second != image)
        fail(Errc::depth_insufficient,
             "word '" + g.normal + "' does not act on depth-" + std::to_string(depth) +
                 " threads: class '" + source + "' has several images");
    }
    dom.word_action.push_back(std::move(table));
  }
  return dom;
}

std::uint32_t QuotientPartition::class_index(const std::string& thread_id) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), thread_id);
  if (it == domain.end() || *it != thread_id)
    fail(Errc::invalid_argument, "unknown thread id '" + thread_id + "'");
  return class_of[static_cast<std::size_t>(it - domain.begin())];
}

QuotientPartition make_quotient(const ThreadDomain& dom,
                                std::span<const std::vector<std::string>> merge_groups) {
  QuotientPartition q;
  q.domain = dom.ids;
  q.tracked = dom.tracked;

  std::map<std::string, std::uint32_t> pos;
  for (std::uint32_t i = 0; i < q.domain.size(); ++i) pos[q.domain[i]] = i;

  std::vector<std::uint32_t> parent(q.domain.size());
  for (std::uint32_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::uint32_t(std::uint32_t)> find_root = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& group : merge_groups) {
    for (const auto& id : group)
      if (!pos.count(id)) fail(Errc::invalid_argument, "unknown thread id '" + id + "'");
    for (std::size_t i = 1; i < group.size(); ++i)
      parent[find_root(pos[group[i]])] = find_root(pos[group[0]]);
  }

  std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
  for (std::uint32_t i = 0; i < q.domain.size(); ++i) groups[find_root(i)].push_back(i);
  std::vector<QuotientPartition::Class> classes;
  for (auto& [root, members] : groups) {
    QuotientPartition::Class c;
    for (auto m : members) c.members.push_back(q.domain[m]);
    std::sort(c.members.begin(), c.members.end());
    c.id = c.members.front();
    classes.push_back(std::move(c));
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  q.classes = std::move(classes);
  q.class_of.assign(q.domain.size(), 0);
  for (std::uint32_t c = 0; c < q.classes.size(); ++c)
    for (const auto& m : q.classes[c].members) q.class_of[pos[m]] = c;

  // Every tracked word must permute the classes.
  for (std::size_t wi = 0; wi < dom.tracked.size(); ++wi) {
    std::vector<std::uint32_t> table(q.classes.size(), UINT32_MAX);
    for (std::uint32_t i = 0; i < q.domain.size(); ++i) {
      std::uint32_t source = q.class_of[i];
      std::uint32_t image = q.class_of[pos.at(dom.word_action[wi].at(q.domain[i]))];
      if (table[source] == UINT32_MAX)
        table[source] = image;
      else if (table[source] != image)
        fail(Errc::invalid_argument, "word '" + dom.tracked[wi].normal +
                                         "' does not act on the quotient classes");
    }
    std::vector<std::uint32_t> sorted = table;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t c = 0; c < sorted.size(); ++c)
      if (sorted[c] != c)
        fail(Errc::invalid_argument, "word '" + dom.tracked[wi].normal +
                                         "' does not permute the quotient classes");
    q.action.push_back(std::move(table));
  }
  return q;
}

PullbackResult pullback(const QuotientPartition& qa, const QuotientPartition& qb) {
  if (qa.domain != qb.domain)
    fail(Errc::domain_mismatch, "quotients partition different thread sets");
  if (qa.tracked.size() != qb.tracked.size())
    fail(Errc::domain_mismatch, "quotients track different word lists");
  for (std::size_t i = 0; i < qa.tracked.size(); ++i)
    if (qa.tracked[i].normal != qb.tracked[i].normal)
      fail(Errc::domain_mismatch, "quotients track different word lists");

  PullbackResult out;
  QuotientPartition& pb = out.pullback;
  pb.domain = qa.domain;
  pb.tracked = qa.tracked;

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> fibers;
  for (std::uint32_t i = 0; i < pb.domain.size(); ++i)
    fibers[{qa.class_of[i], qb.class_of[i]}].push_back(i);

  struct Entry {
    std::string id;
    std::vector<std::string> members;
    std::uint32_t a, b;
  };
  std::vector<Entry> entries;
  for (auto& [pair, members] : fibers) {
    Entry e;
    for (auto m : members) e.members.push_back(pb.domain[m]);
    std::sort(e.members.begin(), e.members.end());
    e.id = e.members.front();
    e.a = pair.first;
    e.b = pair.second;
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.id < y.id; });

  std::map<std::string, std::uint32_t> pos;
  for (std::uint32_t i = 0; i < pb.domain.size(); ++i) pos[pb.domain[i]] = i;
  pb.class_of.assign(pb.domain.size(), 0);
  for (std::uint32_t c = 0; c < entries.size(); ++c) {
    pb.classes.push_back({entries[c].id, entries[c].members});
    out.onto_a.push_back(entries[c].a);
    out.onto_b.push_back(entries[c].b);
    out.pairs.emplace_back(qa.classes[entries[c].a].id, qb.classes[entries[c].b].id);
    for (const auto& m : entries[c].members) pb.class_of[pos[m]] = c;
  }

  // The induced action exists because both factors act classwise.
  for (std::size_t wi = 0; wi < qa.action.size(); ++wi) {
    std::vector<std::uint32_t> table(pb.classes.size(), UINT32_MAX);
    for (std::uint32_t c = 0; c < pb.classes.size(); ++c) {
      std::pair<std::uint32_t, std::uint32_t> image{qa.action[wi][out.onto_a[c]],
                                                    qb.action[wi][out.onto_b[c]]};
      for (std::uint32_t c2 = 0; c2 < pb.classes.size(); ++c2)
        if (out.onto_a[c2] == image.first && out.onto_b[c2] == image.second) table[c] = c2;
      if (table[c] == UINT32_MAX)
        fail(Errc::domain_mismatch, "tracked action leaves the realized pairs");
    }
    pb.action.push_back(std::move(table));
  }
  return out;
}

bool factors_through(const PullbackResult& pb, const QuotientPartition& third) {
  if (third.domain != pb.pullback.domain) return false;
  for (const auto& cls : third.classes) {
    std::uint32_t target = pb.pullback.class_index(cls.members.front());
    for (const auto& m : cls.members)
      if (pb.pullback.class_index(m) != target) return false;
  }
  return true;
}

}  // namespace endscope
