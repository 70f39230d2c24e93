#pragma once

#include <span>
#include <string>
#include <vector>

#include "endscope/ends.hpp"

namespace endscope {

/// One entourage v_M of the visibility uniformity, represented through the
/// component partition of the complement: (g,h) in v_M iff g and h lie in
/// the same component.
struct Entourage {
  ComponentPartition partition;

  bool related(VertexId g, VertexId h) const {
    return partition.comp_index[g] == partition.comp_index[h];
  }
};

Entourage entourage(const Window& w, const RemovalSet& m);

/// A is v_M-small iff it fits inside a single component (the empty set is
/// vacuously small).
bool is_small(const Entourage& e, const VertexSet& a);

/// Filter membership at finite depth: A belongs to the thread's filter iff
/// the component selected past the boundary of A lies inside A.
///
/// Resolution removes every edge incident to the support of the boundary of
/// A and looks at the components that capture the frontier tail of the
/// thread's deepest component; the verdict is their consensus subset test
/// against A. Since each such component lies entirely inside A or outside
/// it, the consensus reduces to voting the tail vertices themselves, which
/// is how this is evaluated. Throws NotInAlgebra when A's boundary support
/// touches the frontier and Unresolvable when the candidates disagree.
bool membership(const EndSystem& sys, const EndThread& t, const VertexSet& a);

/// Slow-path variant that materializes the resolved partition and returns
/// the selected region (the union of the candidate components).
struct MembershipWitness {
  bool member = false;
  VertexSet component;
};
MembershipWitness membership_resolved(const EndSystem& sys, const EndThread& t,
                                      const VertexSet& a);

/// The base of the minimal Cauchy filter attached to a thread: the chosen
/// component per radius.
struct FilterBase {
  EndThread thread;
  std::vector<VertexSet> base;  // index = radius
};

FilterBase thread_to_filter_base(const EndSystem& sys, const EndThread& t);

/// Unbounded-ultrafilter axioms checked over a finite set family.
struct AxiomReport {
  std::string thread_id;
  bool f0 = false;  // the full set belongs to the filter
  bool f1 = false;  // closed under pairwise intersection
  bool f2 = false;  // closed under supersets within the family
  bool u = false;   // dichotomy: A or its complement, never both
  bool nb = false;  // no bounded (frontier-avoiding) member
  std::vector<std::pair<std::string, bool>> memberships;
  bool all() const { return f0 && f1 && f2 && u && nb; }
};

/// Family members must have bounded-boundary verdict yes; labels, when
/// given, must parallel the family.
AxiomReport ultrafilter_check(const EndSystem& sys, const EndThread& t,
                              std::span<const VertexSet> family,
                              std::span<const std::string> labels = {});

}  // namespace endscope
