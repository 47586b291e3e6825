#pragma once

#include "sara/term.hpp"

#include <map>
#include <string>
#include <vector>

namespace sara::sparql {

/// One SELECT entry: a plain variable or COUNT(?var) AS ?alias.
struct Projection {
    std::string variable;
    bool is_count = false;
    std::string alias; // set when is_count

    const std::string& output_name() const { return is_count ? alias : variable; }
    bool operator==(const Projection&) const = default;
};

struct OrderKey {
    std::string variable;
    bool descending = false;

    bool operator==(const OrderKey&) const = default;
};

/// Triple pattern; any position may hold a Variable term.
struct Pattern {
    kg::Term subject;
    kg::Term predicate;
    kg::Term object;

    bool operator==(const Pattern&) const = default;
};

struct Query {
    std::map<std::string, std::string> prefixes; // as declared in the text
    std::vector<Projection> projection;
    std::vector<Pattern> bgp;
    std::vector<std::string> group_by;
    std::vector<OrderKey> order_by;

    bool has_aggregate() const {
        for (const auto& p : projection)
            if (p.is_count)
                return true;
        return false;
    }
    bool operator==(const Query&) const = default;
};

/// Tabular query result: named columns, rows of terms.
struct BindingTable {
    std::vector<std::string> columns;
    std::vector<std::vector<kg::Term>> rows;

    std::size_t column_index(const std::string& name) const; // throws if absent
    bool has_column(const std::string& name) const;

    bool operator==(const BindingTable&) const = default;
};

} // namespace sara::sparql
