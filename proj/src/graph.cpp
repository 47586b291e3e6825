#include "sara/graph.hpp"

#include <algorithm>

namespace sara::kg {

std::string Graph::term_key(const Term& t) {
    std::string key;
    key.reserve(t.text().size() + 2);
    switch (t.kind()) {
    case TermKind::Iri: key += 'I'; break;
    case TermKind::Variable: key += 'V'; break;
    case TermKind::Literal:
        key += 'L';
        key += static_cast<char>('0' + static_cast<int>(t.datatype()));
        break;
    }
    key += t.text();
    return key;
}

std::string Graph::triple_key(const Triple& t) {
    return term_key(t.subject) + '\x1f' + term_key(t.predicate) + '\x1f' + term_key(t.object);
}

void Graph::insert(Triple t) {
    Triple checked = make_triple(std::move(t.subject), std::move(t.predicate), std::move(t.object));
    std::string key = triple_key(checked);
    if (!seen_.insert(std::move(key)).second)
        return;
    const auto idx = static_cast<std::uint32_t>(triples_.size());
    by_subject_[term_key(checked.subject)].push_back(idx);
    by_predicate_[term_key(checked.predicate)].push_back(idx);
    by_object_[term_key(checked.object)].push_back(idx);
    triples_.push_back(std::move(checked));
}

bool Graph::contains(const Triple& t) const {
    return seen_.contains(triple_key(t));
}

bool matches(const TriplePattern& pattern, const Triple& t) {
    if (pattern.subject && *pattern.subject != t.subject)
        return false;
    if (pattern.predicate && *pattern.predicate != t.predicate)
        return false;
    if (pattern.object && *pattern.object != t.object)
        return false;
    return true;
}

std::vector<Triple> Graph::match(const TriplePattern& pattern) const {
    // pick the smallest index among the bound positions
    const std::vector<std::uint32_t>* candidates = nullptr;
    auto consider = [&](const auto& index, const TermPattern& tp) {
        if (!tp)
            return;
        auto it = index.find(term_key(*tp));
        if (it == index.end()) {
            static const std::vector<std::uint32_t> none;
            candidates = &none;
        } else if (!candidates || it->second.size() < candidates->size()) {
            candidates = &it->second;
        }
    };
    consider(by_subject_, pattern.subject);
    if (!candidates || !candidates->empty())
        consider(by_predicate_, pattern.predicate);
    if (!candidates || !candidates->empty())
        consider(by_object_, pattern.object);

    std::vector<Triple> out;
    if (candidates) {
        for (std::uint32_t idx : *candidates)
            if (matches(pattern, triples_[idx]))
                out.push_back(triples_[idx]);
    } else {
        out = triples_; // fully unbound pattern
    }
    return out;
}

bool Graph::operator==(const Graph& o) const {
    if (triples_.size() != o.triples_.size())
        return false;
    for (const Triple& t : triples_)
        if (!o.contains(t))
            return false;
    return true;
}

} // namespace sara::kg
