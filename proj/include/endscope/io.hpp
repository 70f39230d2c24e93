#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "endscope/action.hpp"
#include "endscope/boundary.hpp"
#include "endscope/ends.hpp"
#include "endscope/graph.hpp"
#include "endscope/uniformity.hpp"

namespace endscope {

/// Insertion-ordered JSON so that serialized reports are byte-stable.
using Json = nlohmann::ordered_json;

Json window_to_json(const Window& w, bool include_vertices = true);
Json report_to_json(const EndReport& rep);
Json partition_to_json(const ComponentPartition& part);
Json axiom_report_to_json(const AxiomReport& rep);
Json probe_to_json(const ProbeReport& rep);
Json collapse_to_json(const CollapseResult& res);
Json quotient_to_json(const QuotientPartition& q, int depth);
Json pullback_to_json(const PullbackResult& pb, int depth);
Json vertexset_to_json(const VertexSet& s);
VertexSet vertexset_from_json(const Window& w, const Json& j);
GraphSpec spec_from_json(const Json& j);

/// DOT rendering of a window; distance is a node attribute, components are
/// colored when a partition is supplied.
void export_dot(const Window& w, const ComponentPartition* partition, std::ostream& os);

/// Named set expressions for the CLI: halfline:C, halfplane:C, branch:W,
/// ball:R, even, list:K1;K2;...
VertexSet evaluate_set_expr(const Window& w, const std::string& expr);
SetPredicate set_expr_predicate(const std::string& expr);

/// CLI entry point used by both the binary and the tests. Returns the
/// process exit code: 0 ok, 2 precondition failure, 3 budget/io failure,
/// 64 usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace endscope
