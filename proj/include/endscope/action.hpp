#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "endscope/ends.hpp"
#include "endscope/uniformity.hpp"

namespace endscope {

/// A group element given as a word; normal_form is the canonical key and
/// length the word metric.
struct GroupWord {
  std::string text;
  VertexKey normal;
  int length = 0;
};

GroupWord make_word(const GraphSpec& spec, const std::string& text);
GroupWord inverse_word(const GraphSpec& spec, const GroupWord& g);

/// Left translation of a vertex set; left multiplication is an automorphism
/// of the (right) Cayley graph. HorizonEscape when the image leaves the
/// window.
VertexSet act_on_set(const GroupWord& g, const VertexSet& a);

/// Image of an end thread under left translation, at result depth d.
/// Requires thread depth >= d + |g|; the image component at depth d is the
/// one capturing g times the tail of the source component at depth d+|g|,
/// verified to be independent of the tail vertex chosen.
EndThread act_on_end(const EndSystem& sys, const GroupWord& g, const EndThread& t, int d);

struct ProbeReport {
  std::string graph_id;
  std::vector<std::string> seq;
  int depth = 0;
  int horizon = 0;
  std::string lambda;                 // attracting depth-d thread id
  std::string mu;                     // repelling depth-d thread id
  std::vector<std::string> classes;   // all depth-d thread ids except mu
  std::vector<std::vector<bool>> collapse_table;  // [n][class]
  int verified_from = 0;              // 1-based index into seq; 0 when unverified
  bool verified = false;
};

/// Finite-depth convergence probe for a sequence of group elements of
/// strictly growing length: locates the attracting and repelling threads
/// from the normal forms and their inverses, then checks that every class
/// except the repelling one is translated into the attracting class.
ProbeReport dynamics_probe(const GraphSpec& spec, std::span<const std::string> seq, int depth,
                           int horizon, const VertexKey& basepoint, const Limits& limits = {});

/// An explicit finite graph for the component-collapse quotient.
struct FiniteGraph {
  std::vector<VertexKey> vertices;                       // sorted unique
  std::vector<std::pair<VertexKey, VertexKey>> edges;    // canonical a<b, sorted
  static FiniteGraph from_edges(std::span<const std::pair<VertexKey, VertexKey>> edges,
                                std::span<const VertexKey> isolated = {});
  bool has_edge(const VertexKey& a, const VertexKey& b) const;
};

using Permutation = std::map<VertexKey, VertexKey>;

struct CollapseResult {
  std::vector<std::string> class_ids;                    // sorted; one per component
  std::vector<std::vector<VertexKey>> members;           // parallel to class_ids
  std::map<VertexKey, std::string> projection;           // vertex -> class id
  std::vector<std::map<std::string, std::string>> induced;  // per input permutation
};

/// Collapses connected components to points and pushes each automorphism
/// down to the quotient. The quotient carries no edges. Throws
/// NotAutomorphism when a permutation breaks an edge.
CollapseResult collapse_components(const FiniteGraph& g, std::span<const Permutation> action);

/// The depth-d end-thread set together with the (optional) action of some
/// tracked words on it, computed once and shared by quotients.
struct ThreadDomain {
  std::string graph_id;
  int depth = 0;
  std::vector<std::string> ids;  // sorted depth-d thread ids
  std::vector<GroupWord> tracked;
  std::vector<std::map<std::string, std::string>> word_action;  // per tracked word
};

/// Builds the depth-d thread set; tracked words act via act_on_end on a
/// deeper system (depth + max word length) and must act consistently.
ThreadDomain thread_domain(const GraphSpec& spec, int depth, int horizon,
                           std::span<const std::string> tracked_words,
                           const VertexKey& basepoint, const Limits& limits = {});

/// A partition of the thread set whose classes are permuted by every
/// tracked word. Class id = lexicographically smallest member.
struct QuotientPartition {
  std::vector<std::string> domain;  // sorted thread ids
  struct Class {
    std::string id;
    std::vector<std::string> members;
  };
  std::vector<Class> classes;               // sorted by id
  std::vector<std::uint32_t> class_of;      // domain index -> class index
  std::vector<GroupWord> tracked;
  std::vector<std::vector<std::uint32_t>> action;  // per word: class -> class

  std::uint32_t class_index(const std::string& thread_id) const;
};

/// Quotient from merge groups (unlisted threads stay singletons); validates
/// that every tracked word permutes the classes.
QuotientPartition make_quotient(const ThreadDomain& dom,
                                std::span<const std::vector<std::string>> merge_groups);

struct PullbackResult {
  QuotientPartition pullback;
  std::vector<std::uint32_t> onto_a;  // pullback class -> qa class
  std::vector<std::uint32_t> onto_b;  // pullback class -> qb class
  std::vector<std::pair<std::string, std::string>> pairs;  // realized (qa, qb) per class
};

/// Fiber product of two quotients of the same thread domain: classes are
/// the realized (class_a, class_b) pairs, with equivariant projections.
PullbackResult pullback(const QuotientPartition& qa, const QuotientPartition& qb);

/// Universality witness: true iff every class of the third partition maps
/// into a single pullback class (i.e. the third partition factors through
/// the pullback).
bool factors_through(const PullbackResult& pb, const QuotientPartition& third);

}  // namespace endscope
