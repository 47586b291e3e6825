#pragma once

#include "sara/graph.hpp"

#include <string>
#include <string_view>

namespace sara::kg {

/// Line-oriented N-Triples-style text:
///   <subj> <pred> <obj> .
///   <subj> <pred> "literal" .
///   <subj> <pred> "lexical"^^<datatype-iri> .
/// Blank lines and `#` comments are allowed. Datatypes are restricted to
/// xsd integer/decimal/string; a plain quoted literal is a string.
/// Throws ParseError carrying the 1-based line number.
Graph load_ntriples(std::string_view text);

/// Deterministic form: one triple per line, LF endings, lines sorted by
/// (subject, predicate, object). Round-trips through load_ntriples.
std::string serialize_ntriples(const Graph& graph);

std::string render_term(const Term& t);

} // namespace sara::kg
