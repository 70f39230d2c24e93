#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "endscope/graph.hpp"

namespace endscope {

/// A subset of a window's vertices, stored as sorted unique ids. The window
/// must outlive every set referring to it.
struct VertexSet {
  const Window* window = nullptr;
  std::vector<VertexId> ids;

  static VertexSet of_ids(const Window& w, std::vector<VertexId> ids);
  static VertexSet of_keys(const Window& w, std::span<const VertexKey> keys);
  static VertexSet empty_set(const Window& w) { return {&w, {}}; }
  static VertexSet full_set(const Window& w);

  bool contains(VertexId v) const;
  std::size_t size() const { return ids.size(); }
  bool is_empty() const { return ids.empty(); }
  std::vector<VertexKey> keys() const;
  /// True when no member lies on the window frontier (the window-scale
  /// proxy for boundedness).
  bool avoids_frontier() const;

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.window == b.window && a.ids == b.ids;
  }
};

void require_same_window(const VertexSet& a, const VertexSet& b);

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
/// (A \ B) u (B \ A); the + of the Boolean algebra.
VertexSet symmetric_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_complement(const VertexSet& a);
bool is_subset(const VertexSet& a, const VertexSet& b);

/// The edge boundary of a set: all window edges with exactly one endpoint
/// inside, plus its vertex support.
struct GammaBoundary {
  std::vector<EdgeId> edges;
  VertexSet support;
  /// True iff the support avoids the window frontier.
  bool bounded_within_window = true;
};

GammaBoundary gamma_boundary(const Window& w, const VertexSet& a);

enum class UVerdict { yes, no, horizon_unknown };

const char* uverdict_name(UVerdict v);

struct AlgebraVerdict {
  UVerdict verdict = UVerdict::horizon_unknown;
  VertexSet witness;  // the boundary support
};

/// Bounded-boundary test at window scale: yes when the boundary support
/// avoids the frontier, horizon-unknown when it touches it. Definite "no"
/// answers need the growth certificate below.
AlgebraVerdict in_U_gamma(const Window& w, const VertexSet& a);

/// Set family given as a predicate so it can be re-evaluated on windows of
/// different radii.
using SetPredicate = std::function<bool(const Window&, VertexId)>;

struct GrowthCertificate {
  UVerdict verdict = UVerdict::horizon_unknown;
  std::vector<int> radii;
  std::vector<std::size_t> support_sizes;
  std::vector<VertexKey> witness_keys;  // support at the largest radius
};

/// Re-materializes the window at each radius and watches the boundary
/// support: strictly growing support certifies "no", stable support at a
/// frontier-free boundary certifies "yes". Horizon-relative by nature.
GrowthCertificate in_U_gamma_certified(const GraphSpec& spec, const VertexKey& basepoint,
                                       const SetPredicate& pred, std::span<const int> radii,
                                       const Limits& limits = {});

struct AlmostInvariance {
  bool bounded = false;
  VertexSet witness;   // (A + A.g) restricted to the translatable core
  bool exact = false;  // true iff A itself fits inside the core
  int core_radius = 0;
};

/// Compares A with its right translate A.g on the core B_{R-|g|} where the
/// comparison is exact; the verdict is horizon-relative outside the core.
AlmostInvariance almost_invariance_check(const Window& w, const VertexSet& a,
                                         const VertexKey& g);

}  // namespace endscope
