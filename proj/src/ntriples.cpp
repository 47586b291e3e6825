#include "sara/ntriples.hpp"

#include "sara/vocab.hpp"

#include <algorithm>
#include <sstream>

namespace sara::kg {

namespace {

struct LineCursor {
    std::string_view line;
    std::size_t pos = 0;
    std::size_t lineno;

    [[noreturn]] void fail(const std::string& reason) const {
        throw ParseError("line " + std::to_string(lineno) + ": " + reason, lineno, pos);
    }

    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t'))
            ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= line.size();
    }

    char peek() const { return pos < line.size() ? line[pos] : '\0'; }

    std::string parse_iri() {
        if (peek() != '<')
            fail("expected '<' to begin an IRI");
        auto close = line.find('>', pos + 1);
        if (close == std::string_view::npos)
            fail("unterminated IRI");
        std::string iri(line.substr(pos + 1, close - pos - 1));
        pos = close + 1;
        return iri;
    }

    std::string parse_quoted() {
        if (peek() != '"')
            fail("expected '\"' to begin a literal");
        ++pos;
        std::string out;
        while (pos < line.size()) {
            char c = line[pos];
            if (c == '\\') {
                if (pos + 1 >= line.size())
                    fail("dangling escape in literal");
                char e = line[pos + 1];
                switch (e) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                default: fail(std::string("unknown escape '\\") + e + "' in literal");
                }
                pos += 2;
            } else if (c == '"') {
                ++pos;
                return out;
            } else {
                out += c;
                ++pos;
            }
        }
        fail("unterminated literal");
    }

    Term parse_object() {
        skip_ws();
        if (peek() == '<')
            return Term::iri(parse_iri());
        if (peek() != '"')
            fail("expected IRI or literal as object");
        std::string lex = parse_quoted();
        if (pos + 1 < line.size() && line[pos] == '^' && line[pos + 1] == '^') {
            pos += 2;
            std::string dt = parse_iri();
            if (dt == vocab::xsd_ns + "integer")
                return Term::literal(std::move(lex), Datatype::Integer);
            if (dt == vocab::xsd_ns + "decimal")
                return Term::literal(std::move(lex), Datatype::Decimal);
            if (dt == vocab::xsd_ns + "string")
                return Term::literal(std::move(lex), Datatype::String);
            fail("unsupported literal datatype <" + dt + ">");
        }
        return Term::string(std::move(lex));
    }
};

std::string escape_literal(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

Graph load_ntriples(std::string_view text) {
    Graph g;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        std::string_view raw = (nl == std::string_view::npos) ? text.substr(start)
                                                              : text.substr(start, nl - start);
        ++lineno;
        if (!raw.empty() && raw.back() == '\r')
            raw.remove_suffix(1);

        LineCursor cur{raw, 0, lineno};
        if (!cur.at_end() && cur.peek() != '#') {
            Term s = Term::iri(cur.parse_iri());
            cur.skip_ws();
            Term p = Term::iri(cur.parse_iri());
            Term o = cur.parse_object();
            cur.skip_ws();
            if (cur.peek() != '.')
                cur.fail("expected terminating '.'");
            ++cur.pos;
            if (!cur.at_end())
                cur.fail("unexpected trailing content after '.'");
            try {
                g.insert(std::move(s), std::move(p), std::move(o));
            } catch (const ValidationError& e) {
                cur.fail(e.what());
            }
        }

        if (nl == std::string_view::npos)
            break;
        start = nl + 1;
    }
    return g;
}

std::string render_term(const Term& t) {
    switch (t.kind()) {
    case TermKind::Iri:
        return "<" + t.text() + ">";
    case TermKind::Variable:
        return "?" + t.text();
    case TermKind::Literal:
        switch (t.datatype()) {
        case Datatype::Integer:
            return "\"" + t.text() + "\"^^<" + vocab::xsd_ns + "integer>";
        case Datatype::Decimal:
            return "\"" + t.text() + "\"^^<" + vocab::xsd_ns + "decimal>";
        case Datatype::String:
            return "\"" + escape_literal(t.text()) + "\"";
        }
    }
    return {};
}

std::string serialize_ntriples(const Graph& graph) {
    std::vector<Triple> sorted = graph.triples();
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (const Triple& t : sorted) {
        out += render_term(t.subject);
        out += ' ';
        out += render_term(t.predicate);
        out += ' ';
        out += render_term(t.object);
        out += " .\n";
    }
    return out;
}

} // namespace sara::kg
