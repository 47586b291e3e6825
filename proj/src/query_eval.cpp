#include "sara/query_eval.hpp"

#include <algorithm>
#include <numeric>

namespace sara::sparql {

using kg::Term;
using kg::TermKind;

std::size_t BindingTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name)
            return i;
    throw ValidationError("no such column: ?" + name);
}

bool BindingTable::has_column(const std::string& name) const {
    return std::find(columns.begin(), columns.end(), name) != columns.end();
}

BindingTable solve_bgp(const kg::Graph& graph, const std::vector<Pattern>& bgp) {
    if (bgp.empty())
        throw ValidationError("basic graph pattern must be non-empty");

    BindingTable table;
    table.rows.push_back({}); // one empty binding to extend

    for (const Pattern& pat : bgp) {
        // positions of this pattern's variables in the current table, or
        // the column to create
        struct Slot {
            const Term* term;
            bool is_var;
            bool has_col = false;
            std::size_t column = 0;
            bool fresh = false;
        };
        Slot slots[3] = {{&pat.subject, pat.subject.is_variable()},
                         {&pat.predicate, pat.predicate.is_variable()},
                         {&pat.object, pat.object.is_variable()}};
        for (Slot& s : slots) {
            if (!s.is_var)
                continue;
            if (table.has_column(s.term->text())) {
                s.has_col = true;
                s.column = table.column_index(s.term->text());
            } else {
                s.fresh = true;
            }
        }
        // a variable repeated within one pattern (e.g. ?x ?p ?x) is bound
        // by its first occurrence; later ones unify via the equality check
        for (int i = 1; i < 3; ++i)
            for (int j = 0; j < i; ++j)
                if (slots[i].is_var && slots[j].is_var && slots[i].fresh && slots[j].fresh &&
                    slots[i].term->text() == slots[j].term->text())
                    slots[i].fresh = false;

        std::vector<std::string> next_columns = table.columns;
        for (const Slot& s : slots)
            if (s.is_var && s.fresh && !std::count(next_columns.begin(), next_columns.end(), s.term->text()))
                next_columns.push_back(s.term->text());

        std::vector<std::vector<Term>> next_rows;
        for (const std::vector<Term>& row : table.rows) {
            kg::TriplePattern probe;
            auto bound_value = [&](const Slot& s) -> std::optional<Term> {
                if (!s.is_var)
                    return *s.term;
                if (s.has_col)
                    return row[s.column];
                return std::nullopt;
            };
            probe.subject = bound_value(slots[0]);
            probe.predicate = bound_value(slots[1]);
            probe.object = bound_value(slots[2]);

            for (const kg::Triple& t : graph.match(probe)) {
                const Term* actual[3] = {&t.subject, &t.predicate, &t.object};
                // check intra-pattern repeated variables
                bool consistent = true;
                for (int i = 0; i < 3 && consistent; ++i)
                    for (int j = 0; j < i && consistent; ++j)
                        if (slots[i].is_var && slots[j].is_var &&
                            slots[i].term->text() == slots[j].term->text() &&
                            *actual[i] != *actual[j])
                            consistent = false;
                if (!consistent)
                    continue;

                std::vector<Term> next = row;
                next.resize(next_columns.size(), Term::string(""));
                for (int i = 0; i < 3; ++i) {
                    if (!slots[i].is_var)
                        continue;
                    auto col = std::find(next_columns.begin(), next_columns.end(), slots[i].term->text()) -
                               next_columns.begin();
                    next[static_cast<std::size_t>(col)] = *actual[i];
                }
                next_rows.push_back(std::move(next));
            }
        }
        table.columns = std::move(next_columns);
        table.rows = std::move(next_rows);
        if (table.rows.empty())
            break; // no extension can revive an empty join
    }
    return table;
}

BindingTable group_aggregate(const BindingTable& table,
                             const std::vector<std::string>& group_by,
                             const std::vector<Projection>& aggregates) {
    for (const std::string& key : group_by)
        if (!table.has_column(key))
            throw ValidationError("GROUP BY variable ?" + key + " is not a column");
    for (const Projection& agg : aggregates) {
        if (!agg.is_count)
            throw ValidationError("only COUNT aggregates are supported");
        if (!table.has_column(agg.variable))
            throw ValidationError("aggregate variable ?" + agg.variable + " is not a column");
    }

    std::vector<std::size_t> key_idx;
    for (const std::string& key : group_by)
        key_idx.push_back(table.column_index(key));

    // carried columns: neither group keys nor aggregate inputs
    std::vector<std::size_t> carried_idx;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        const std::string& name = table.columns[i];
        bool is_key = std::find(group_by.begin(), group_by.end(), name) != group_by.end();
        bool is_agg_input = std::any_of(aggregates.begin(), aggregates.end(),
                                        [&](const Projection& a) { return a.variable == name; });
        if (!is_key && !is_agg_input)
            carried_idx.push_back(i);
    }

    BindingTable out;
    out.columns = group_by;
    for (const Projection& agg : aggregates)
        out.columns.push_back(agg.alias);
    for (std::size_t i : carried_idx)
        out.columns.push_back(table.columns[i]);

    // groups in first-appearance order
    std::vector<std::vector<Term>> group_keys;
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        std::vector<Term> key;
        key.reserve(key_idx.size());
        for (std::size_t k : key_idx)
            key.push_back(table.rows[r][k]);
        std::size_t g = 0;
        for (; g < group_keys.size(); ++g)
            if (group_keys[g] == key)
                break;
        if (g == group_keys.size()) {
            group_keys.push_back(key);
            members.push_back({});
        }
        members[g].push_back(r);
    }

    for (std::size_t g = 0; g < group_keys.size(); ++g) {
        std::vector<Term> row = group_keys[g];
        for ([[maybe_unused]] const Projection& agg : aggregates)
            row.push_back(Term::integer(static_cast<std::int64_t>(members[g].size())));
        const std::size_t first = members[g].front();
        for (std::size_t i : carried_idx)
            row.push_back(table.rows[first][i]);
        out.rows.push_back(std::move(row));
    }
    return out;
}

namespace {

enum class CompareClass { Numeric, Textual };

CompareClass compare_class(const Term& t) {
    if (t.is_numeric())
        return CompareClass::Numeric;
    return CompareClass::Textual;
}

int compare_terms(const Term& a, const Term& b) {
    const CompareClass ca = compare_class(a);
    const CompareClass cb = compare_class(b);
    if (ca != cb)
        throw ValidationError("typed-comparison error: cannot order " + a.text() + " against " + b.text());
    if (ca == CompareClass::Numeric) {
        const double x = a.number();
        const double y = b.number();
        if (x < y)
            return -1;
        if (x > y)
            return 1;
        return 0;
    }
    return a.text().compare(b.text()) < 0 ? -1 : (a.text() == b.text() ? 0 : 1);
}

} // namespace

BindingTable order_results(const BindingTable& table, const std::vector<OrderKey>& keys) {
    std::vector<std::size_t> key_idx;
    for (const OrderKey& k : keys)
        key_idx.push_back(table.column_index(k.variable));

    std::vector<std::size_t> order(table.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            int c = compare_terms(table.rows[a][key_idx[i]], table.rows[b][key_idx[i]]);
            if (c != 0)
                return keys[i].descending ? c > 0 : c < 0;
        }
        return false;
    });

    BindingTable out;
    out.columns = table.columns;
    out.rows.reserve(table.rows.size());
    for (std::size_t i : order)
        out.rows.push_back(table.rows[i]);
    return out;
}

BindingTable evaluate(const kg::Graph& graph, const Query& query) {
    BindingTable table = solve_bgp(graph, query.bgp);

    std::vector<Projection> aggregates;
    for (const Projection& p : query.projection)
        if (p.is_count)
            aggregates.push_back(p);

    if (!aggregates.empty() || !query.group_by.empty())
        table = group_aggregate(table, query.group_by, aggregates);

    std::vector<OrderKey> keys = query.order_by;
    if (!query.order_by.empty()) {
        // implicit deterministic tie-break: group keys ascending
        for (const std::string& g : query.group_by) {
            bool present = std::any_of(keys.begin(), keys.end(),
                                       [&](const OrderKey& k) { return k.variable == g; });
            if (!present)
                keys.push_back({g, false});
        }
        table = order_results(table, keys);
    }

    BindingTable projected;
    for (const Projection& p : query.projection)
        projected.columns.push_back(p.output_name());
    std::vector<std::size_t> idx;
    for (const Projection& p : query.projection)
        idx.push_back(table.column_index(p.output_name()));
    projected.rows.reserve(table.rows.size());
    for (const std::vector<Term>& row : table.rows) {
        std::vector<Term> out;
        out.reserve(idx.size());
        for (std::size_t i : idx)
            out.push_back(row[i]);
        projected.rows.push_back(std::move(out));
    }
    return projected;
}

} // namespace sara::sparql
