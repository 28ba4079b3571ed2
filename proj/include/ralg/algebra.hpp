#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ralg {

/// Carrier elements. Finite universes use {0,...,n-1}; rule algebras run on
/// the naturals.
using Element = std::int64_t;

/// A sorted, duplicate-free set of carrier elements.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(std::vector<Element> elems);

    static ElementSet of(std::initializer_list<Element> elems);

    bool contains(Element e) const;
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }

    bool subset_of(const ElementSet& other) const;

    const std::vector<Element>& elements() const { return elems_; }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    friend ElementSet set_union(const ElementSet& a, const ElementSet& b);
    friend ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
    friend ElementSet set_difference(const ElementSet& a, const ElementSet& b);

    bool operator==(const ElementSet&) const = default;
    /// Canonical order: by size, then lexicographic on the element lists.
    static bool canonical_less(const ElementSet& a, const ElementSet& b);

private:
    std::vector<Element> elems_;
};

struct OpSymbol {
    std::string name;
    int arity = 1;

    bool operator==(const OpSymbol&) const = default;
};

/// An ordered list of operation symbols with arities >= 1. Constants are not
/// part of the language.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<OpSymbol> symbols);

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    const OpSymbol& operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<OpSymbol>& symbols() const { return symbols_; }

    std::optional<std::size_t> index_of(std::string_view name) const;
    bool all_unary() const;
    int max_arity() const;

    bool operator==(const Signature&) const = default;

private:
    std::vector<OpSymbol> symbols_;
};

/// A finite algebra: a signature plus one total operation table per symbol
/// over the universe {0,...,n-1}. A table for a k-ary symbol lists n^k values
/// in lexicographic (row-major) tuple order.
class FiniteAlgebra {
public:
    FiniteAlgebra(Signature sig, int size,
                  std::vector<std::vector<Element>> tables,
                  std::string name = "");

    int size() const { return size_; }
    const Signature& signature() const { return sig_; }
    const std::string& name() const { return name_; }

    Element apply(std::size_t op, std::span<const Element> args) const;

    const std::vector<Element>& table(std::size_t op) const { return tables_[op]; }

    /// Row-major rank of a tuple over {0,...,n-1}.
    static std::size_t tuple_rank(int n, std::span<const Element> args);
    /// Number of entries in a table for a k-ary symbol over n elements.
    static std::size_t table_length(int n, int arity);

    bool operator==(const FiniteAlgebra& other) const {
        return size_ == other.size_ && sig_ == other.sig_ && tables_ == other.tables_;
    }

private:
    Signature sig_;
    int size_ = 1;
    std::vector<std::vector<Element>> tables_;
    std::string name_;
};

/// What is declared about the fixed points of a rule algebra. Bounded search
/// may report a negative verdict only under NoneExist.
enum class FixedPointHint { Unknown, NoneExist, Predicate };

/// An algebra on the naturals whose operations are given by total computable
/// rules instead of tables.
class RuleAlgebra {
public:
    using Rule = std::function<Element(std::span<const Element>)>;

    RuleAlgebra(Signature sig, std::vector<Rule> rules, std::string name = "",
                FixedPointHint hint = FixedPointHint::Unknown,
                std::function<bool(Element)> fixed_point_predicate = nullptr);

    const Signature& signature() const { return sig_; }
    const std::string& name() const { return name_; }

    Element apply(std::size_t op, std::span<const Element> args) const;

    FixedPointHint fixed_point_hint() const { return hint_; }
    /// Valid only when the hint is Predicate.
    bool declared_fixed_point(Element e) const;

private:
    Signature sig_;
    std::vector<Rule> rules_;
    std::string name_;
    FixedPointHint hint_;
    std::function<bool(Element)> fixed_point_predicate_;
};

/// Non-owning view of either algebra kind, for operations that evaluate
/// terms over an arbitrary carrier.
class AlgebraRef {
public:
    AlgebraRef(const FiniteAlgebra& a) : ref_(&a) {}
    AlgebraRef(const RuleAlgebra& a) : ref_(&a) {}

    const Signature& signature() const;
    Element apply(std::size_t op, std::span<const Element> args) const;

    bool is_finite() const { return std::holds_alternative<const FiniteAlgebra*>(ref_); }
    const FiniteAlgebra* finite() const {
        auto* p = std::get_if<const FiniteAlgebra*>(&ref_);
        return p ? *p : nullptr;
    }
    const RuleAlgebra* rule() const {
        auto* p = std::get_if<const RuleAlgebra*>(&ref_);
        return p ? *p : nullptr;
    }

private:
    std::variant<const FiniteAlgebra*, const RuleAlgebra*> ref_;
};

}  // namespace ralg
