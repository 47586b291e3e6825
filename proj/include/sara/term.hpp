#pragma once

#include "sara/errors.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sara::kg {

enum class TermKind : std::uint8_t { Iri, Literal, Variable };
enum class Datatype : std::uint8_t { Integer, Decimal, String };

/// One RDF-style term. Literals keep their lexical form as the source of
/// truth; numeric ones are validated on construction so a stored value can
/// always be read back as a number.
class Term {
public:
    static Term iri(std::string value);
    static Term integer(std::int64_t value);
    static Term decimal(double value);
    static Term literal(std::string lexical, Datatype dt);
    static Term string(std::string value) { return literal(std::move(value), Datatype::String); }
    static Term variable(std::string name);

    TermKind kind() const { return kind_; }
    bool is_iri() const { return kind_ == TermKind::Iri; }
    bool is_literal() const { return kind_ == TermKind::Literal; }
    bool is_variable() const { return kind_ == TermKind::Variable; }
    bool is_numeric() const {
        return is_literal() && (datatype_ == Datatype::Integer || datatype_ == Datatype::Decimal);
    }

    /// IRI string, literal lexical form, or variable name depending on kind.
    const std::string& text() const { return text_; }
    Datatype datatype() const { return datatype_; }

    /// Numeric value of an integer/decimal literal.
    double number() const;

    /// Total order: kind, then datatype, then text. Used for canonical
    /// serialization, not for ORDER BY semantics.
    std::strong_ordering operator<=>(const Term& o) const;
    bool operator==(const Term& o) const = default;

private:
    Term(TermKind k, std::string text, Datatype dt) : kind_(k), datatype_(dt), text_(std::move(text)) {}

    TermKind kind_;
    Datatype datatype_; // meaningful for literals only
    std::string text_;
};

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    bool operator==(const Triple&) const = default;
    std::strong_ordering operator<=>(const Triple&) const = default;
};

/// Validates the triple invariants (IRI subject/predicate, IRI-or-literal
/// object, no variables) and throws ValidationError on violation.
Triple make_triple(Term subject, Term predicate, Term object);

bool lexical_is_integer(std::string_view s);
bool lexical_is_decimal(std::string_view s);

} // namespace sara::kg
