#pragma once

#include "sara/term.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sara::kg {

/// Triple pattern position: a concrete term or a wildcard.
using TermPattern = std::optional<Term>;

struct TriplePattern {
    TermPattern subject;
    TermPattern predicate;
    TermPattern object;
};

/// In-memory triple set with subject/predicate/object index maps.
/// Set semantics; match results come back in insertion order, so any
/// fixed build sequence yields a deterministic view.
class Graph {
public:
    /// Inserts t if absent. Throws ValidationError when t violates the
    /// triple invariants (variables, non-IRI subject/predicate).
    void insert(Triple t);
    void insert(Term s, Term p, Term o) { insert(make_triple(std::move(s), std::move(p), std::move(o))); }

    bool contains(const Triple& t) const;

    /// All stored triples unifying with the pattern (wildcards match
    /// anything). The narrowest available index is consulted first.
    std::vector<Triple> match(const TriplePattern& pattern) const;

    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }
    const std::vector<Triple>& triples() const { return triples_; }

    bool operator==(const Graph& o) const;

private:
    static std::string term_key(const Term& t);
    static std::string triple_key(const Triple& t);

    std::vector<Triple> triples_;
    std::unordered_set<std::string> seen_;
    std::unordered_map<std::string, std::vector<std::uint32_t>> by_subject_;
    std::unordered_map<std::string, std::vector<std::uint32_t>> by_predicate_;
    std::unordered_map<std::string, std::vector<std::uint32_t>> by_object_;
};

bool matches(const TriplePattern& pattern, const Triple& t);

} // namespace sara::kg
