#pragma once

#include "sara/graph.hpp"
#include "sara/query_ast.hpp"

#include <map>
#include <string>
#include <vector>

namespace sara::testing {

/// Reference evaluator kept independent of the engine: plain per-pattern
/// scans over the triple list, explicit binding maps, no indexes. Mirrors
/// the engine's documented semantics (first-row carry for non-grouped
/// columns, stable ordering, implicit group-key tie-break) so the two can
/// be compared exactly.
using Binding = std::map<std::string, kg::Term>;

std::vector<Binding> ref_solve_bgp(const kg::Graph& graph, const std::vector<sparql::Pattern>& bgp);

sparql::BindingTable ref_evaluate(const kg::Graph& graph, const sparql::Query& query);

} // namespace sara::testing
