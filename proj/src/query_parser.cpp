#include "sara/query_parser.hpp"

#include "sara/vocab.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace sara::sparql {

namespace {

using kg::Datatype;
using kg::Term;

enum class Tok {
    KwPrefix, KwSelect, KwWhere, KwGroup, KwBy, KwOrder, KwAsc, KwDesc, KwCount, KwAs, KwA,
    Var,       // ?name
    IriRef,    // <...>
    PName,     // prefix:local  (either part may be empty)
    String,    // "..."
    Integer, Decimal,
    LBrace, RBrace, LParen, RParen, Dot, Semicolon, Comma,
    End,
};

const char* tok_name(Tok t) {
    switch (t) {
    case Tok::KwPrefix: return "PREFIX";
    case Tok::KwSelect: return "SELECT";
    case Tok::KwWhere: return "WHERE";
    case Tok::KwGroup: return "GROUP";
    case Tok::KwBy: return "BY";
    case Tok::KwOrder: return "ORDER";
    case Tok::KwAsc: return "ASC";
    case Tok::KwDesc: return "DESC";
    case Tok::KwCount: return "COUNT";
    case Tok::KwAs: return "AS";
    case Tok::KwA: return "'a'";
    case Tok::Var: return "variable";
    case Tok::IriRef: return "IRI";
    case Tok::PName: return "prefixed name";
    case Tok::String: return "string literal";
    case Tok::Integer: return "integer";
    case Tok::Decimal: return "decimal";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Dot: return "'.'";
    case Tok::Semicolon: return "';'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;   // payload without sigils; PName keeps "prefix:local"
    std::size_t offset; // byte offset in the source
};

bool pname_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= src_.size())
            return {Tok::End, "", at};
        char c = src_[pos_];

        switch (c) {
        case '{': ++pos_; return {Tok::LBrace, "{", at};
        case '}': ++pos_; return {Tok::RBrace, "}", at};
        case '(': ++pos_; return {Tok::LParen, "(", at};
        case ')': ++pos_; return {Tok::RParen, ")", at};
        case ';': ++pos_; return {Tok::Semicolon, ";", at};
        case ',': ++pos_; return {Tok::Comma, ",", at};
        default: break;
        }

        if (c == '.') {
            // distinguish pattern terminator from a leading-dot decimal
            if (pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))
                return lex_number(at);
            ++pos_;
            return {Tok::Dot, ".", at};
        }
        if (c == '?') {
            ++pos_;
            std::string name;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                name += src_[pos_++];
            if (name.empty())
                fail(at, "variable name expected after '?'");
            return {Tok::Var, name, at};
        }
        if (c == '<') {
            auto close = src_.find('>', pos_ + 1);
            if (close == std::string_view::npos)
                fail(at, "unterminated IRI");
            std::string iri(src_.substr(pos_ + 1, close - pos_ - 1));
            pos_ = close + 1;
            return {Tok::IriRef, iri, at};
        }
        if (c == '"') {
            ++pos_;
            std::string lit;
            while (pos_ < src_.size() && src_[pos_] != '"') {
                if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) {
                    char e = src_[pos_ + 1];
                    lit += (e == 'n') ? '\n' : (e == 't') ? '\t' : e;
                    pos_ += 2;
                } else {
                    lit += src_[pos_++];
                }
            }
            if (pos_ >= src_.size())
                fail(at, "unterminated string literal");
            ++pos_;
            return {Tok::String, lit, at};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))))
            return lex_number(at);

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':') {
            std::string word;
            while (pos_ < src_.size() && (pname_char(src_[pos_]) || src_[pos_] == ':')) {
                // a trailing '.' is a terminator, not part of the name
                if (src_[pos_] == '.' &&
                    (pos_ + 1 >= src_.size() || !pname_char(src_[pos_ + 1])))
                    break;
                word += src_[pos_++];
            }
            if (word.find(':') != std::string::npos)
                return {Tok::PName, word, at};
            std::string upper = word;
            std::transform(upper.begin(), upper.end(), upper.begin(),
                           [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
            if (upper == "PREFIX") return {Tok::KwPrefix, word, at};
            if (upper == "SELECT") return {Tok::KwSelect, word, at};
            if (upper == "WHERE") return {Tok::KwWhere, word, at};
            if (upper == "GROUP") return {Tok::KwGroup, word, at};
            if (upper == "BY") return {Tok::KwBy, word, at};
            if (upper == "ORDER") return {Tok::KwOrder, word, at};
            if (upper == "ASC") return {Tok::KwAsc, word, at};
            if (upper == "DESC") return {Tok::KwDesc, word, at};
            if (upper == "COUNT") return {Tok::KwCount, word, at};
            if (upper == "AS") return {Tok::KwAs, word, at};
            if (word == "a") return {Tok::KwA, word, at};
            fail(at, "unexpected bare word '" + word + "'");
        }
        fail(at, std::string("unexpected character '") + c + "'");
    }

    [[noreturn]] static void fail(std::size_t offset, const std::string& reason) {
        throw ParseError("query syntax error at byte " + std::to_string(offset) + ": " + reason, 0, offset);
    }

private:
    Token lex_number(std::size_t at) {
        std::string num;
        if (src_[pos_] == '-')
            num += src_[pos_++];
        bool dot = false;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || (src_[pos_] == '.' && !dot))) {
            if (src_[pos_] == '.') {
                // terminator dot: not followed by a digit
                if (pos_ + 1 >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))
                    break;
                dot = true;
            }
            num += src_[pos_++];
        }
        return {dot ? Tok::Decimal : Tok::Integer, num, at};
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') { // comment to end of line
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    Query parse() {
        while (cur_.kind == Tok::KwPrefix)
            parse_prefix_decl();
        expect(Tok::KwSelect);
        parse_projection();
        expect(Tok::KwWhere);
        expect(Tok::LBrace);
        parse_bgp();
        if (cur_.kind == Tok::KwGroup)
            parse_group_by();
        if (cur_.kind == Tok::KwOrder)
            parse_order_by();
        if (cur_.kind != Tok::End)
            unexpected({Tok::End});
        validate();
        return std::move(query_);
    }

private:
    void advance() { cur_ = lexer_.next(); }

    void expect(Tok kind) {
        if (cur_.kind != kind)
            unexpected({kind});
        advance();
    }

    [[noreturn]] void unexpected(std::initializer_list<Tok> expected) {
        std::string msg = "found " + std::string(tok_name(cur_.kind)) + ", expected ";
        bool first = true;
        for (Tok t : expected) {
            if (!first)
                msg += " | ";
            msg += tok_name(t);
            first = false;
        }
        Lexer::fail(cur_.offset, msg);
    }

    void parse_prefix_decl() {
        advance(); // PREFIX
        if (cur_.kind != Tok::PName)
            unexpected({Tok::PName});
        std::string pname = cur_.text;
        if (pname.back() != ':')
            Lexer::fail(cur_.offset, "prefix declaration must end with ':'");
        std::string name = pname.substr(0, pname.size() - 1);
        advance();
        if (cur_.kind != Tok::IriRef)
            unexpected({Tok::IriRef});
        query_.prefixes[name] = cur_.text;
        advance();
    }

    std::string expand_prefix(const std::string& pname, std::size_t offset) {
        auto colon = pname.find(':');
        std::string prefix = pname.substr(0, colon);
        std::string local = pname.substr(colon + 1);
        auto it = query_.prefixes.find(prefix);
        if (it != query_.prefixes.end())
            return it->second + local;
        // built-in defaults for the domain vocabulary
        if (prefix.empty() || prefix == "net")
            return kg::vocab::toco + local;
        if (prefix == "rdf")
            return kg::vocab::rdf_ns + local;
        throw ParseError("unknown prefix '" + prefix + ":' at byte " + std::to_string(offset), 0, offset);
    }

    void parse_projection() {
        bool any = false;
        while (true) {
            if (cur_.kind == Tok::Var) {
                query_.projection.push_back({cur_.text, false, ""});
                advance();
                any = true;
            } else if (cur_.kind == Tok::LParen) {
                advance();
                expect(Tok::KwCount);
                expect(Tok::LParen);
                if (cur_.kind != Tok::Var)
                    unexpected({Tok::Var});
                std::string input = cur_.text;
                advance();
                expect(Tok::RParen);
                expect(Tok::KwAs);
                if (cur_.kind != Tok::Var)
                    unexpected({Tok::Var});
                std::string alias = cur_.text;
                advance();
                expect(Tok::RParen);
                query_.projection.push_back({input, true, alias});
                any = true;
            } else {
                break;
            }
        }
        if (!any)
            unexpected({Tok::Var, Tok::LParen});
    }

    Term parse_term(bool predicate_position) {
        switch (cur_.kind) {
        case Tok::Var: {
            Term t = Term::variable(cur_.text);
            advance();
            return t;
        }
        case Tok::IriRef: {
            Term t = Term::iri(cur_.text);
            advance();
            return t;
        }
        case Tok::PName: {
            Term t = Term::iri(expand_prefix(cur_.text, cur_.offset));
            advance();
            return t;
        }
        case Tok::KwA:
            if (predicate_position) {
                advance();
                return Term::iri(kg::vocab::rdf_type);
            }
            unexpected({Tok::Var, Tok::IriRef, Tok::PName});
        case Tok::String: {
            std::string lex = cur_.text;
            advance();
            return Term::string(std::move(lex));
        }
        case Tok::Integer: {
            Term t = Term::literal(cur_.text, Datatype::Integer);
            advance();
            return t;
        }
        case Tok::Decimal: {
            Term t = Term::literal(cur_.text, Datatype::Decimal);
            advance();
            return t;
        }
        default:
            unexpected({Tok::Var, Tok::IriRef, Tok::PName});
        }
    }

    void parse_bgp() {
        while (cur_.kind != Tok::RBrace) {
            Term subject = parse_term(false);
            parse_predicate_object_list(subject);
            if (cur_.kind == Tok::Dot) {
                advance();
                continue;
            }
            if (cur_.kind == Tok::RBrace)
                break;
            unexpected({Tok::Dot, Tok::RBrace});
        }
        if (query_.bgp.empty())
            Lexer::fail(cur_.offset, "empty graph pattern");
        expect(Tok::RBrace);
    }

    void parse_predicate_object_list(const Term& subject) {
        while (true) {
            if (cur_.kind == Tok::Dot || cur_.kind == Tok::RBrace)
                unexpected({Tok::PName, Tok::IriRef, Tok::KwA});
            Term predicate = parse_term(true);
            while (true) {
                Term object = parse_term(false);
                query_.bgp.push_back({subject, predicate, object});
                if (cur_.kind == Tok::Comma) {
                    advance();
                    continue;
                }
                break;
            }
            if (cur_.kind == Tok::Semicolon) {
                advance();
                // allow a trailing ';' before '.' the way real queries do
                if (cur_.kind == Tok::Dot || cur_.kind == Tok::RBrace)
                    break;
                continue;
            }
            break;
        }
    }

    void parse_group_by() {
        advance(); // GROUP
        expect(Tok::KwBy);
        if (cur_.kind != Tok::Var)
            unexpected({Tok::Var});
        while (cur_.kind == Tok::Var) {
            query_.group_by.push_back(cur_.text);
            advance();
        }
    }

    void parse_order_by() {
        advance(); // ORDER
        expect(Tok::KwBy);
        bool any = false;
        while (true) {
            if (cur_.kind == Tok::Var) {
                query_.order_by.push_back({cur_.text, false});
                advance();
            } else if (cur_.kind == Tok::KwAsc || cur_.kind == Tok::KwDesc) {
                bool desc = cur_.kind == Tok::KwDesc;
                advance();
                expect(Tok::LParen);
                if (cur_.kind != Tok::Var)
                    unexpected({Tok::Var});
                query_.order_by.push_back({cur_.text, desc});
                advance();
                expect(Tok::RParen);
            } else {
                break;
            }
            any = true;
        }
        if (!any)
            unexpected({Tok::Var, Tok::KwAsc, Tok::KwDesc});
    }

    void validate() const {
        std::set<std::string> bgp_vars;
        for (const Pattern& p : query_.bgp)
            for (const Term* t : {&p.subject, &p.predicate, &p.object})
                if (t->is_variable())
                    bgp_vars.insert(t->text());

        const bool aggregated = query_.has_aggregate();
        auto grouped = [&](const std::string& v) {
            return std::find(query_.group_by.begin(), query_.group_by.end(), v) != query_.group_by.end();
        };
        std::set<std::string> aliases;
        for (const Projection& p : query_.projection) {
            if (p.is_count) {
                aliases.insert(p.alias);
            } else if (aggregated && !grouped(p.variable)) {
                throw ParseError("projected variable ?" + p.variable +
                                     " must appear in GROUP BY when aggregates are present",
                                 0, 0);
            }
        }
        for (const std::string& g : query_.group_by)
            if (!bgp_vars.contains(g))
                throw ParseError("GROUP BY variable ?" + g + " does not occur in the graph pattern", 0, 0);
        for (const OrderKey& k : query_.order_by) {
            // visible after grouping: a group key, an aggregate alias, or a
            // pattern variable carried through the group's first row
            if (!aliases.contains(k.variable) && !bgp_vars.contains(k.variable))
                throw ParseError("ORDER BY variable ?" + k.variable + " is not bound by the query", 0, 0);
        }
    }

    Lexer lexer_;
    Token cur_{Tok::End, "", 0};
    Query query_;
};

} // namespace

Query parse_query(std::string_view text) {
    return Parser(text).parse();
}

} // namespace sara::sparql
