#include "endscope/boundary.hpp"

#include <algorithm>

namespace endscope {

VertexSet VertexSet::of_ids(const Window& w, std::vector<VertexId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (!ids.empty() && ids.back() >= w.size())
    fail(Errc::invalid_argument, "vertex id out of window");
  return {&w, std::move(ids)};
}

VertexSet VertexSet::of_keys(const Window& w, std::span<const VertexKey> keys) {
  std::vector<VertexId> ids;
  ids.reserve(keys.size());
  for (const auto& k : keys) {
    auto id = w.locate(k);
    if (!id) fail(Errc::invalid_argument, "key '" + k + "' not in window");
    ids.push_back(*id);
  }
  return of_ids(w, std::move(ids));
}

VertexSet VertexSet::full_set(const Window& w) {
  std::vector<VertexId> ids(w.size());
  for (VertexId i = 0; i < w.size(); ++i) ids[i] = i;
  return {&w, std::move(ids)};
}

bool VertexSet::contains(VertexId v) const {
  return std::binary_search(ids.begin(), ids.end(), v);
}

std::vector<VertexKey> VertexSet::keys() const {
  std::vector<VertexKey> out;
  out.reserve(ids.size());
  for (VertexId v : ids) out.push_back(window->key(v));
  std::sort(out.begin(), out.end());
  return out;
}

bool VertexSet::avoids_frontier() const {
  for (VertexId v : ids)
    if (window->is_frontier(v)) return false;
  return true;
}

void require_same_window(const VertexSet& a, const VertexSet& b) {
  if (a.window == b.window) return;
  if (a.window && b.window && a.window->id() == b.window->id()) return;
  fail(Errc::window_mismatch, "vertex sets belong to different windows");
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  require_same_window(a, b);
  std::vector<VertexId> out;
  out.reserve(a.ids.size() + b.ids.size());
  std::set_union(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(),
                 std::back_inserter(out));
  return {a.window, std::move(out)};
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  require_same_window(a, b);
  std::vector<VertexId> out;
  std::set_intersection(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(),
                        std::back_inserter(out));
  return {a.window, std::move(out)};
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  require_same_window(a, b);
  std::vector<VertexId> out;
  std::set_difference(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(),
                      std::back_inserter(out));
  return {a.window, std::move(out)};
}

VertexSet symmetric_difference(const VertexSet& a, const VertexSet& b) {
  require_same_window(a, b);
  std::vector<VertexId> out;
  std::set_symmetric_difference(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(),
                                std::back_inserter(out));
  return {a.window, std::move(out)};
}

VertexSet set_complement(const VertexSet& a) {
  std::vector<VertexId> out;
  out.reserve(a.window->size() - a.ids.size());
  auto it = a.ids.begin();
  for (VertexId v = 0; v < a.window->size(); ++v) {
    if (it != a.ids.end() && *it == v)
      ++it;
    else
      out.push_back(v);
  }
  return {a.window, std::move(out)};
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  require_same_window(a, b);
  return std::includes(b.ids.begin(), b.ids.end(), a.ids.begin(), a.ids.end());
}

GammaBoundary gamma_boundary(const Window& w, const VertexSet& a) {
  if (a.window != &w && (!a.window || a.window->id() != w.id()))
    fail(Errc::window_mismatch, "set belongs to a different window");
  std::vector<char> in(w.size(), 0);
  for (VertexId v : a.ids) in[v] = 1;

  GammaBoundary out;
  std::vector<VertexId> support;
  const auto& edges = w.edges();
  for (EdgeId e = 0; e < edges.size(); ++e) {
    if (in[edges[e].a] != in[edges[e].b]) {
      out.edges.push_back(e);
      support.push_back(edges[e].a);
      support.push_back(edges[e].b);
    }
  }
  out.support = VertexSet::of_ids(w, std::move(support));
  out.bounded_within_window = out.support.avoids_frontier();
  return out;
}

const char* uverdict_name(UVerdict v) {
  switch (v) {
    case UVerdict::yes: return "yes";
    case UVerdict::no: return "no";
    case UVerdict::horizon_unknown: return "horizon-unknown";
  }
  return "?";
}

AlgebraVerdict in_U_gamma(const Window& w, const VertexSet& a) {
  GammaBoundary bd = gamma_boundary(w, a);
  AlgebraVerdict v;
  v.witness = bd.support;
  v.verdict = bd.bounded_within_window ? UVerdict::yes : UVerdict::horizon_unknown;
  return v;
}

GrowthCertificate in_U_gamma_certified(const GraphSpec& spec, const VertexKey& basepoint,
                                       const SetPredicate& pred, std::span<const int> radii,
                                       const Limits& limits) {
  if (radii.size() < 2)
    fail(Errc::invalid_argument, "growth certificate needs at least two radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      fail(Errc::invalid_argument, "certificate radii must be strictly increasing");

  GrowthCertificate cert;
  cert.radii.assign(radii.begin(), radii.end());

  bool last_bounded = false;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    Window w = materialize_window(spec, basepoint, radii[i], limits);
    std::vector<VertexId> members;
    for (VertexId v = 0; v < w.size(); ++v)
      if (pred(w, v)) members.push_back(v);
    GammaBoundary bd = gamma_boundary(w, VertexSet::of_ids(w, std::move(members)));
    cert.support_sizes.push_back(bd.support.size());
    if (i + 1 == radii.size()) {
      cert.witness_keys = bd.support.keys();
      last_bounded = bd.bounded_within_window;
    }
  }

  bool growing = true, stable = true;
  for (std::size_t i = 1; i < cert.support_sizes.size(); ++i) {
    if (cert.support_sizes[i] <= cert.support_sizes[i - 1]) growing = false;
    if (cert.support_sizes[i] != cert.support_sizes[i - 1]) stable = false;
  }
  if (last_bounded || stable)
    cert.verdict = UVerdict::yes;
  else if (growing)
    cert.verdict = UVerdict::no;
  else
    cert.verdict = UVerdict::horizon_unknown;
  return cert;
}

AlmostInvariance almost_invariance_check(const Window& w, const VertexSet& a,
                                         const VertexKey& g) {
  if (!w.spec().is_cayley())
    fail(Errc::invalid_argument, "almost-invariance needs a Cayley graph");
  if (a.window != &w && (!a.window || a.window->id() != w.id()))
    fail(Errc::window_mismatch, "set belongs to a different window");

  const GraphSpec& spec = w.spec();
  VertexKey gc = spec.canonical(g);
  int glen = spec.word_length(gc);
  if (glen > w.radius())
    fail(Errc::horizon_escape, "translation length " + std::to_string(glen) +
                                   " exceeds window radius " + std::to_string(w.radius()));
  VertexKey ginv = spec.inverse(gc);

  AlmostInvariance out;
  out.core_radius = w.radius() - glen;
  // v lies in A.g iff v.g^{-1} lies in A; exact on the core B_{R-|g|}.
  std::vector<VertexId> diff;
  for (VertexId v = 0; v < w.size(); ++v) {
    if (w.distance(v) > out.core_radius) continue;
    bool in_a = a.contains(v);
    VertexKey shifted = spec.multiply(w.key(v), ginv);
    auto sid = w.find(shifted);
    bool in_ag = sid && a.contains(*sid);
    if (in_a != in_ag) diff.push_back(v);
  }
  out.witness = VertexSet::of_ids(w, std::move(diff));

  bool touches_collar = false;
  for (VertexId v : out.witness.ids)
    if (w.distance(v) == out.core_radius) touches_collar = true;
  out.bounded = !touches_collar || w.exhausted();
  out.exact = true;
  for (VertexId v : a.ids)
    if (w.distance(v) > out.core_radius) out.exact = false;
  return out;
}

}  // namespace endscope
