#include "support/brute_eval.hpp"

#include "sara/errors.hpp"

#include <algorithm>

namespace sara::testing {

using kg::Term;
using sparql::BindingTable;
using sparql::OrderKey;
using sparql::Pattern;
using sparql::Query;

namespace {

bool unify(const Term& pattern_term, const Term& actual, Binding& binding) {
    if (!pattern_term.is_variable())
        return pattern_term == actual;
    auto it = binding.find(pattern_term.text());
    if (it == binding.end()) {
        binding.emplace(pattern_term.text(), actual);
        return true;
    }
    return it->second == actual;
}

int ref_compare(const Term& a, const Term& b) {
    const bool na = a.is_numeric();
    const bool nb = b.is_numeric();
    if (na != nb)
        throw ValidationError("typed-comparison error (reference)");
    if (na) {
        if (a.number() < b.number())
            return -1;
        if (a.number() > b.number())
            return 1;
        return 0;
    }
    if (a.text() < b.text())
        return -1;
    if (b.text() < a.text())
        return 1;
    return 0;
}

} // namespace

std::vector<Binding> ref_solve_bgp(const kg::Graph& graph, const std::vector<Pattern>& bgp) {
    std::vector<Binding> bindings{Binding{}};
    for (const Pattern& pattern : bgp) {
        std::vector<Binding> extended;
        for (const Binding& b : bindings) {
            for (const kg::Triple& t : graph.triples()) {
                Binding trial = b;
                if (unify(pattern.subject, t.subject, trial) &&
                    unify(pattern.predicate, t.predicate, trial) &&
                    unify(pattern.object, t.object, trial))
                    extended.push_back(std::move(trial));
            }
        }
        bindings = std::move(extended);
    }
    return bindings;
}

BindingTable ref_evaluate(const kg::Graph& graph, const Query& query) {
    const std::vector<Binding> solutions = ref_solve_bgp(graph, query.bgp);

    std::vector<sparql::Projection> aggregates;
    for (const auto& p : query.projection)
        if (p.is_count)
            aggregates.push_back(p);

    struct Row {
        Binding values;
        std::size_t count = 0;
    };
    std::vector<Row> rows;

    if (aggregates.empty() && query.group_by.empty()) {
        for (const Binding& b : solutions)
            rows.push_back({b, 1});
    } else {
        // group in first-appearance order, carry the first row's bindings
        std::vector<std::vector<Term>> keys;
        for (const Binding& b : solutions) {
            std::vector<Term> key;
            for (const std::string& g : query.group_by)
                key.push_back(b.at(g));
            std::size_t at = keys.size();
            for (std::size_t i = 0; i < keys.size(); ++i)
                if (keys[i] == key) {
                    at = i;
                    break;
                }
            if (at == keys.size()) {
                keys.push_back(key);
                rows.push_back({b, 1});
            } else {
                ++rows[at].count;
            }
        }
        for (Row& r : rows)
            for (const auto& agg : aggregates)
                r.values.insert_or_assign(agg.alias, Term::integer(static_cast<std::int64_t>(r.count)));
    }

    if (!query.order_by.empty()) {
        std::vector<OrderKey> keys = query.order_by;
        for (const std::string& g : query.group_by) {
            bool present = std::any_of(keys.begin(), keys.end(),
                                       [&](const OrderKey& k) { return k.variable == g; });
            if (!present)
                keys.push_back({g, false});
        }
        std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
            for (const OrderKey& k : keys) {
                int c = ref_compare(a.values.at(k.variable), b.values.at(k.variable));
                if (c != 0)
                    return k.descending ? c > 0 : c < 0;
            }
            return false;
        });
    }

    BindingTable out;
    for (const auto& p : query.projection)
        out.columns.push_back(p.output_name());
    for (const Row& r : rows) {
        std::vector<Term> row;
        for (const auto& p : query.projection)
            row.push_back(r.values.at(p.output_name()));
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace sara::testing
