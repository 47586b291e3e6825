#include "sara/rules.hpp"

#include "sara/query_eval.hpp"
#include "sara/query_parser.hpp"
#include "sara/vocab.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sara::rules {

using kg::Term;

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Reuses the query parser by wrapping the body patterns in a synthetic
/// SELECT so both files share one pattern syntax.
std::vector<sparql::Pattern> parse_body(const std::vector<std::string>& pattern_lines,
                                        const std::vector<std::string>& prefix_lines,
                                        std::size_t lineno) {
    std::string q;
    for (const std::string& p : prefix_lines)
        q += p + "\n";
    q += "SELECT ?__probe WHERE {\n";
    for (const std::string& p : pattern_lines)
        q += p + "\n";
    q += "}";
    try {
        return sparql::parse_query(q).bgp;
    } catch (const ParseError& e) {
        throw ParseError("rule block near line " + std::to_string(lineno) + ": " + e.what(), lineno);
    }
}

} // namespace

std::vector<Rule> parse_rules(std::string_view text) {
    std::vector<Rule> out;
    std::vector<std::string> prefix_lines;
    std::optional<Rule> current;
    std::vector<std::string> body_lines;
    std::size_t block_start = 0;

    auto finish = [&](std::size_t lineno) {
        if (!current)
            return;
        throw ParseError("rule '" + current->name + "' near line " + std::to_string(lineno) +
                             " has no '=> associateTo(...)' head",
                         lineno);
    };

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        if (line.starts_with("PREFIX")) {
            if (current)
                throw ParseError("line " + std::to_string(lineno) + ": PREFIX must precede rule blocks", lineno);
            prefix_lines.push_back(line);
            continue;
        }
        if (line.starts_with("RULE")) {
            finish(lineno);
            std::string name = trim(line.substr(4));
            if (name.empty())
                throw ParseError("line " + std::to_string(lineno) + ": RULE requires a name", lineno);
            current = Rule{name, {}, "", ""};
            body_lines.clear();
            block_start = lineno;
            continue;
        }
        if (line.starts_with("=>")) {
            if (!current)
                throw ParseError("line " + std::to_string(lineno) + ": rule head outside a RULE block", lineno);
            std::string head = trim(line.substr(2));
            // associateTo(?var, <technology>)
            if (!head.starts_with("associateTo"))
                throw ParseError("line " + std::to_string(lineno) + ": rule head must be associateTo(...)", lineno);
            auto open = head.find('(');
            auto comma = head.find(',');
            auto close = head.rfind(')');
            if (open == std::string::npos || comma == std::string::npos || close == std::string::npos ||
                !(open < comma && comma < close))
                throw ParseError("line " + std::to_string(lineno) + ": malformed associateTo head", lineno);
            std::string var = trim(head.substr(open + 1, comma - open - 1));
            std::string tech = trim(head.substr(comma + 1, close - comma - 1));
            if (var.empty() || var[0] != '?')
                throw ParseError("line " + std::to_string(lineno) + ": associateTo expects a ?variable", lineno);
            current->station_var = var.substr(1);

            if (tech.starts_with("<") && tech.ends_with(">"))
                current->technology = tech.substr(1, tech.size() - 2);
            else if (auto colon = tech.find(':'); colon != std::string::npos)
                current->technology = kg::vocab::toco + tech.substr(colon + 1);
            else
                current->technology = kg::vocab::toco + tech;

            current->body = parse_body(body_lines, prefix_lines, block_start);

            bool var_in_body = false;
            for (const sparql::Pattern& p : current->body)
                for (const Term* t : {&p.subject, &p.predicate, &p.object})
                    if (t->is_variable() && t->text() == current->station_var)
                        var_in_body = true;
            if (!var_in_body)
                throw ParseError("rule '" + current->name + "': head variable ?" + current->station_var +
                                     " does not occur in the body",
                                 lineno);

            static const std::set<std::string> technologies = {kg::vocab::WiFi, kg::vocab::LTE,
                                                               kg::vocab::Satellite};
            if (!technologies.contains(current->technology))
                throw ParseError("rule '" + current->name + "': unknown technology <" + current->technology + ">",
                                 lineno);

            out.push_back(std::move(*current));
            current.reset();
            continue;
        }
        if (!current)
            throw ParseError("line " + std::to_string(lineno) + ": pattern outside a RULE block", lineno);
        body_lines.push_back(line);
    }
    finish(lineno);
    return out;
}

std::vector<Assignment> apply_rules(const kg::Graph& graph, const std::vector<Rule>& rules,
                                    std::vector<std::string>* warnings) {
    std::vector<Assignment> out;
    std::set<std::string> assigned;

    const auto& known = kg::vocab::known_predicates();
    for (const Rule& rule : rules) {
        bool skip = false;
        for (const sparql::Pattern& p : rule.body) {
            if (p.predicate.is_iri() &&
                std::find(known.begin(), known.end(), p.predicate.text()) == known.end()) {
                if (warnings)
                    warnings->push_back("rule '" + rule.name + "' skipped: unknown predicate <" +
                                        p.predicate.text() + ">");
                skip = true;
                break;
            }
        }
        if (skip)
            continue;

        sparql::BindingTable solutions = sparql::solve_bgp(graph, rule.body);
        if (!solutions.has_column(rule.station_var))
            continue;
        const std::size_t col = solutions.column_index(rule.station_var);
        for (const auto& row : solutions.rows) {
            const Term& station = row[col];
            if (!station.is_iri())
                continue;
            if (assigned.insert(station.text()).second)
                out.push_back({station.text(), rule.technology, rule.name});
        }
    }

    std::sort(out.begin(), out.end(),
              [](const Assignment& a, const Assignment& b) { return a.station < b.station; });
    return out;
}

std::vector<std::string> constrain_candidates(const std::vector<std::string>& candidates,
                                              const std::optional<Assignment>& assignment,
                                              const kg::Graph& graph) {
    if (!assignment)
        return candidates;
    std::vector<std::string> out;
    for (const std::string& ap : candidates) {
        auto matches = graph.match({Term::iri(ap), Term::iri(kg::vocab::usesTechnology),
                                    Term::iri(assignment->technology)});
        if (!matches.empty())
            out.push_back(ap);
    }
    return out;
}

} // namespace sara::rules
