#include "endscope/uniformity.hpp"

#include <algorithm>

namespace endscope {

Entourage entourage(const Window& w, const RemovalSet& m) {
  return Entourage{components(w, m)};
}

bool is_small(const Entourage& e, const VertexSet& a) {
  const Window* w = e.partition.removal.window;
  if (a.window != w && (!a.window || !w || a.window->id() != w->id()))
    fail(Errc::window_mismatch, "set belongs to a different window");
  if (a.is_empty()) return true;
  std::uint32_t c = e.partition.comp_index[a.ids.front()];
  for (VertexId v : a.ids)
    if (e.partition.comp_index[v] != c) return false;
  return true;
}

namespace {

// Shared entry: validates A against the window, scans the boundary once and
// classifies the frontier tail of the thread's deepest component. Every
// component of the complement of the edges meeting supp(dA) lies entirely
// inside A or outside it, so a tail vertex's own membership decides its
// whole candidate component.
struct TailVote {
  bool trivial = false;  // boundary support empty: A is empty or everything
  bool verdict = false;
  bool any_in = false;
  bool any_out = false;
};

TailVote tail_vote(const EndSystem& sys, const EndThread& t, const VertexSet& a) {
  const Window& w = sys.window();
  if (a.window != &w && (!a.window || a.window->id() != w.id()))
    fail(Errc::window_mismatch, "set belongs to a different window");

  TailVote vote;
  std::vector<char> in(w.size(), 0);
  for (VertexId v : a.ids) in[v] = 1;
  bool support_empty = true;
  const auto& edges = w.edges();
  for (EdgeId e = 0; e < edges.size(); ++e) {
    if (in[edges[e].a] == in[edges[e].b]) continue;
    support_empty = false;
    if (w.is_frontier(edges[e].a) || w.is_frontier(edges[e].b))
      fail(Errc::not_in_algebra, "boundary support touches the window frontier");
  }
  if (support_empty) {
    // the window is connected, so A is empty or everything
    vote.trivial = true;
    vote.verdict = a.size() == w.size();
    return vote;
  }

  const Component& top = sys.top_component(t);
  for (VertexId v : top.vertices) {
    if (!w.is_frontier(v)) continue;
    (in[v] ? vote.any_in : vote.any_out) = true;
  }
  if (!vote.any_in && !vote.any_out)
    fail(Errc::unresolvable, "thread component has no frontier tail");
  if (vote.any_in && vote.any_out)
    fail(Errc::unresolvable, "thread depth cannot separate the boundary of the set");
  vote.verdict = vote.any_in;
  return vote;
}

}  // namespace

bool membership(const EndSystem& sys, const EndThread& t, const VertexSet& a) {
  return tail_vote(sys, t, a).verdict;
}

MembershipWitness membership_resolved(const EndSystem& sys, const EndThread& t,
                                      const VertexSet& a) {
  const Window& w = sys.window();
  TailVote vote = tail_vote(sys, t, a);
  MembershipWitness out;
  out.member = vote.verdict;
  if (vote.trivial) {
    if (out.member)
      out.component = VertexSet::full_set(w);
    else
      out.component = VertexSet::empty_set(w);
    return out;
  }

  // Materialize the resolved partition and the candidate components the
  // tail selects; the consensus verified in tail_vote makes the union of
  // the candidates the selected region.
  GammaBoundary bd = gamma_boundary(w, a);
  ComponentPartition resolved = components(w, removal_incident_to(w, bd.support));
  const Component& top = sys.top_component(t);
  std::vector<std::uint32_t> candidates;
  for (VertexId v : top.vertices)
    if (w.is_frontier(v)) candidates.push_back(resolved.comp_index[v]);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<VertexId> region;
  for (std::uint32_t c : candidates) {
    const auto& verts = resolved.components[c].vertices;
    region.insert(region.end(), verts.begin(), verts.end());
  }
  out.component = VertexSet::of_ids(w, std::move(region));
  return out;
}

FilterBase thread_to_filter_base(const EndSystem& sys, const EndThread& t) {
  FilterBase fb;
  fb.thread = t;
  for (int r = 0; r <= t.depth; ++r) {
    const Component& c = sys.component_at(t, r);
    fb.base.push_back(VertexSet::of_ids(sys.window(), c.vertices));
  }
  return fb;
}

AxiomReport ultrafilter_check(const EndSystem& sys, const EndThread& t,
                              std::span<const VertexSet> family,
                              std::span<const std::string> labels) {
  if (!labels.empty() && labels.size() != family.size())
    fail(Errc::invalid_argument, "labels must parallel the family");

  AxiomReport rep;
  rep.thread_id = t.id();

  std::vector<bool> member(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    member[i] = membership(sys, t, family[i]);
    rep.memberships.emplace_back(labels.empty() ? "set" + std::to_string(i)
                                                : labels[i],
                                 member[i]);
  }

  rep.f0 = membership(sys, t, VertexSet::full_set(sys.window()));

  rep.f1 = true;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (member[i] && member[j] &&
          !membership(sys, t, set_intersection(family[i], family[j])))
        rep.f1 = false;

  rep.f2 = true;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j)
      if (member[i] && !member[j] && is_subset(family[i], family[j])) rep.f2 = false;

  rep.u = true;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (membership(sys, t, set_complement(family[i])) == member[i]) rep.u = false;

  rep.nb = true;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (member[i] && family[i].avoids_frontier() && !sys.window().exhausted())
      rep.nb = false;

  return rep;
}

}  // namespace endscope
