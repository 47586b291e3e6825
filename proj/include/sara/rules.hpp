#pragma once

#include "sara/graph.hpp"
#include "sara/query_ast.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sara::rules {

/// Service-specific selection rule: when the body patterns hold for a
/// station, associate that station to an access technology.
struct Rule {
    std::string name;
    std::vector<sparql::Pattern> body;
    std::string station_var; // occurs in body
    std::string technology;  // IRI of a declared technology

    bool operator==(const Rule&) const = default;
};

struct Assignment {
    std::string station;    // IRI
    std::string technology; // IRI
    std::string rule_name;

    bool operator==(const Assignment&) const = default;
};

/// Parses a rule file. Block format, one rule per block:
///
///   RULE <name>
///   <triple pattern> .
///   ...
///   => associateTo(?var, <technology>)
///
/// Patterns use the query-subset term syntax; PREFIX lines may precede the
/// first block. Blank lines and '#' comments are allowed.
std::vector<Rule> parse_rules(std::string_view text);

/// Solves each rule body as a BGP over the graph; every binding of the
/// station variable yields an Assignment. The first matching rule wins per
/// station (declaration order); output is sorted by station IRI. A rule
/// whose body mentions a predicate outside the vocabulary is skipped with
/// a warning appended to `warnings` (when given).
std::vector<Assignment> apply_rules(const kg::Graph& graph, const std::vector<Rule>& rules,
                                    std::vector<std::string>* warnings = nullptr);

/// Filters candidate AP IRIs down to those whose usesTechnology matches
/// the assignment; identity when no assignment. Order is preserved. May
/// return an empty list — callers fall back to the unconstrained ranking.
std::vector<std::string> constrain_candidates(const std::vector<std::string>& candidates,
                                              const std::optional<Assignment>& assignment,
                                              const kg::Graph& graph);

} // namespace sara::rules
