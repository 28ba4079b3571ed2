#include "ralg/algebra.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ralg {

ElementSet::ElementSet(std::vector<Element> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

ElementSet ElementSet::of(std::initializer_list<Element> elems) {
    return ElementSet(std::vector<Element>(elems));
}

bool ElementSet::contains(Element e) const {
    return std::binary_search(elems_.begin(), elems_.end(), e);
}

bool ElementSet::subset_of(const ElementSet& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(),
                         elems_.begin(), elems_.end());
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_union(a.elems_.begin(), a.elems_.end(), b.elems_.begin(),
                   b.elems_.end(), std::back_inserter(out.elems_));
    return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_intersection(a.elems_.begin(), a.elems_.end(), b.elems_.begin(),
                          b.elems_.end(), std::back_inserter(out.elems_));
    return out;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_difference(a.elems_.begin(), a.elems_.end(), b.elems_.begin(),
                        b.elems_.end(), std::back_inserter(out.elems_));
    return out;
}

bool ElementSet::canonical_less(const ElementSet& a, const ElementSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elems_ < b.elems_;
}

Signature::Signature(std::vector<OpSymbol> symbols) : symbols_(std::move(symbols)) {
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.name.empty())
            throw std::invalid_argument("signature: empty symbol name");
        if (s.arity < 1)
            throw std::invalid_argument("signature: symbol '" + s.name +
                                        "' has arity < 1");
        if (!seen.insert(s.name).second)
            throw std::invalid_argument("signature: duplicate symbol '" + s.name + "'");
    }
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name) return i;
    return std::nullopt;
}

bool Signature::all_unary() const {
    return std::all_of(symbols_.begin(), symbols_.end(),
                       [](const OpSymbol& s) { return s.arity == 1; });
}

int Signature::max_arity() const {
    int m = 0;
    for (const auto& s : symbols_) m = std::max(m, s.arity);
    return m;
}

std::size_t FiniteAlgebra::table_length(int n, int arity) {
    std::size_t len = 1;
    for (int i = 0; i < arity; ++i) {
        if (len > SIZE_MAX / static_cast<std::size_t>(n))
            throw std::length_error("operation table too large");
        len *= static_cast<std::size_t>(n);
    }
    return len;
}

std::size_t FiniteAlgebra::tuple_rank(int n, std::span<const Element> args) {
    std::size_t rank = 0;
    for (Element a : args) {
        if (a < 0 || a >= n)
            throw std::out_of_range("element " + std::to_string(a) +
                                    " outside universe of size " + std::to_string(n));
        rank = rank * static_cast<std::size_t>(n) + static_cast<std::size_t>(a);
    }
    return rank;
}

FiniteAlgebra::FiniteAlgebra(Signature sig, int size,
                             std::vector<std::vector<Element>> tables,
                             std::string name)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)),
      name_(std::move(name)) {
    if (size_ < 1) throw std::invalid_argument("universe size must be >= 1");
    if (tables_.size() != sig_.size())
        throw std::invalid_argument("expected one table per symbol");
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        const std::size_t want = table_length(size_, sig_[i].arity);
        if (tables_[i].size() != want)
            throw std::invalid_argument(
                "table for '" + sig_[i].name + "' has " +
                std::to_string(tables_[i].size()) + " entries, expected " +
                std::to_string(want));
        for (Element v : tables_[i])
            if (v < 0 || v >= size_)
                throw std::invalid_argument("table for '" + sig_[i].name +
                                            "' has entry " + std::to_string(v) +
                                            " outside universe");
    }
}

Element FiniteAlgebra::apply(std::size_t op, std::span<const Element> args) const {
    if (op >= sig_.size()) throw std::invalid_argument("symbol index out of range");
    if (static_cast<int>(args.size()) != sig_[op].arity)
        throw std::invalid_argument("arity mismatch for '" + sig_[op].name + "'");
    return tables_[op][tuple_rank(size_, args)];
}

RuleAlgebra::RuleAlgebra(Signature sig, std::vector<Rule> rules, std::string name,
                         FixedPointHint hint,
                         std::function<bool(Element)> fixed_point_predicate)
    : sig_(std::move(sig)), rules_(std::move(rules)), name_(std::move(name)),
      hint_(hint), fixed_point_predicate_(std::move(fixed_point_predicate)) {
    if (rules_.size() != sig_.size())
        throw std::invalid_argument("expected one rule per symbol");
    if (hint_ == FixedPointHint::Predicate && !fixed_point_predicate_)
        throw std::invalid_argument("predicate hint requires a predicate");
}

Element RuleAlgebra::apply(std::size_t op, std::span<const Element> args) const {
    if (op >= sig_.size()) throw std::invalid_argument("symbol index out of range");
    if (static_cast<int>(args.size()) != sig_[op].arity)
        throw std::invalid_argument("arity mismatch for '" + sig_[op].name + "'");
    for (Element a : args)
        if (a < 0)
            throw std::domain_error("rule algebras run on the naturals");
    return rules_[op](args);
}

bool RuleAlgebra::declared_fixed_point(Element e) const {
    if (hint_ != FixedPointHint::Predicate)
        throw std::logic_error("no fixed-point predicate declared");
    return fixed_point_predicate_(e);
}

const Signature& AlgebraRef::signature() const {
    return std::visit([](const auto* a) -> const Signature& { return a->signature(); },
                      ref_);
}

Element AlgebraRef::apply(std::size_t op, std::span<const Element> args) const {
    return std::visit([&](const auto* a) { return a->apply(op, args); }, ref_);
}

}  // namespace ralg
