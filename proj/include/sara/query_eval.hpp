#pragma once

#include "sara/graph.hpp"
#include "sara/query_ast.hpp"

namespace sara::sparql {

/// Solves a basic graph pattern by natural join over shared variables.
/// Columns appear in first-occurrence order; duplicate rows produced by
/// the data are retained. An unmatched BGP yields an empty table.
BindingTable solve_bgp(const kg::Graph& graph, const std::vector<Pattern>& bgp);

/// Groups by the given key columns and computes COUNT aggregates. Non-key,
/// non-aggregated columns are carried with the group's first-row value
/// (the knowledge-base generator guarantees one value per entity per
/// snapshot, which makes the carried value well-defined). With no keys and
/// at least one aggregate, a non-empty input forms a single group; an
/// empty input yields an empty output either way.
BindingTable group_aggregate(const BindingTable& table,
                             const std::vector<std::string>& group_by,
                             const std::vector<Projection>& aggregates);

/// Stable multi-key sort. Numeric literals compare numerically, IRIs and
/// strings lexicographically; comparing a numeric against a non-numeric
/// value raises a typed-comparison error.
BindingTable order_results(const BindingTable& table, const std::vector<OrderKey>& keys);

/// Full pipeline: solve_bgp -> group_aggregate -> order_results ->
/// projection, with the group keys appended as implicit ascending
/// tie-break keys so rankings are fully deterministic.
BindingTable evaluate(const kg::Graph& graph, const Query& query);

} // namespace sara::sparql
