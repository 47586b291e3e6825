#pragma once

#include "sara/query_ast.hpp"

#include <string_view>

namespace sara::sparql {

/// Parses the query subset needed here: PREFIX declarations, SELECT with
/// plain variables and COUNT(?v) AS ?alias, a basic graph pattern with `;`
/// and `,` abbreviations and the `a` type keyword, GROUP BY and multi-key
/// ORDER BY with ASC()/DESC(). See docs/grammar.md for the full grammar.
///
/// The prefixes "" and "net" resolve to the network vocabulary namespace
/// and "rdf" to the RDF namespace unless the text declares them otherwise.
///
/// Throws ParseError with a byte offset and the expected-token set on
/// syntax errors, and on use of an undeclared prefix.
Query parse_query(std::string_view text);

} // namespace sara::sparql
