#include "sara/term.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace sara::kg {

namespace {

bool has_whitespace(std::string_view s) {
    for (char c : s)
        if (std::isspace(static_cast<unsigned char>(c)))
            return true;
    return false;
}

std::string format_decimal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    std::string s(buf);
    // trim trailing zeros but keep one fractional digit so the form stays
    // recognisably decimal
    auto dot = s.find('.');
    auto last = s.find_last_not_of('0');
    if (last > dot)
        s.erase(last + 1);
    else
        s.erase(dot + 2);
    return s;
}

} // namespace

bool lexical_is_integer(std::string_view s) {
    if (!s.empty() && s.front() == '-')
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

bool lexical_is_decimal(std::string_view s) {
    if (!s.empty() && s.front() == '-')
        s.remove_prefix(1);
    if (s.empty())
        return false;
    bool seen_dot = false, seen_digit = false;
    for (char c : s) {
        if (c == '.') {
            if (seen_dot)
                return false;
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            seen_digit = true;
        } else {
            return false;
        }
    }
    return seen_digit;
}

Term Term::iri(std::string value) {
    if (value.empty())
        throw ValidationError("IRI must be non-empty");
    if (has_whitespace(value))
        throw ValidationError("IRI must not contain whitespace: <" + value + ">");
    return Term(TermKind::Iri, std::move(value), Datatype::String);
}

Term Term::integer(std::int64_t value) {
    return Term(TermKind::Literal, std::to_string(value), Datatype::Integer);
}

Term Term::decimal(double value) {
    return Term(TermKind::Literal, format_decimal(value), Datatype::Decimal);
}

Term Term::literal(std::string lexical, Datatype dt) {
    if (dt == Datatype::Integer && !lexical_is_integer(lexical))
        throw ValidationError("not a valid integer literal: \"" + lexical + "\"");
    if (dt == Datatype::Decimal && !lexical_is_decimal(lexical))
        throw ValidationError("not a valid decimal literal: \"" + lexical + "\"");
    return Term(TermKind::Literal, std::move(lexical), dt);
}

Term Term::variable(std::string name) {
    if (name.empty())
        throw ValidationError("variable name must be non-empty");
    return Term(TermKind::Variable, std::move(name), Datatype::String);
}

double Term::number() const {
    if (!is_numeric())
        throw ValidationError("term is not numeric: " + text_);
    double out = 0.0;
    auto [p, ec] = std::from_chars(text_.data(), text_.data() + text_.size(), out);
    if (ec != std::errc() || p != text_.data() + text_.size())
        throw ValidationError("unparseable numeric literal: \"" + text_ + "\"");
    return out;
}

std::strong_ordering Term::operator<=>(const Term& o) const {
    if (auto c = kind_ <=> o.kind_; c != 0)
        return c;
    if (kind_ == TermKind::Literal)
        if (auto c = datatype_ <=> o.datatype_; c != 0)
            return c;
    return text_ <=> o.text_;
}

Triple make_triple(Term subject, Term predicate, Term object) {
    if (subject.is_variable() || predicate.is_variable() || object.is_variable())
        throw ValidationError("malformed triple: variables may not appear in stored triples");
    if (!subject.is_iri())
        throw ValidationError("malformed triple: subject must be an IRI");
    if (!predicate.is_iri())
        throw ValidationError("malformed triple: predicate must be an IRI");
    return Triple{std::move(subject), std::move(predicate), std::move(object)};
}

} // namespace sara::kg
