#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ralg/algebra.hpp"

namespace ralg {

/// A partition of the universe {0,...,n-1} into disjoint nonempty blocks,
/// kept in canonical order (blocks sorted by least element). Whether it is a
/// congruence of a given algebra is a separate check.
class CongruencePartition {
public:
    CongruencePartition(int universe, std::vector<std::vector<Element>> blocks);

    static CongruencePartition singletons(int universe);
    static CongruencePartition from_block_of(const std::vector<int>& block_of);

    int universe() const { return universe_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<ElementSet>& blocks() const { return blocks_; }
    int block_of(Element e) const;

    bool operator==(const CongruencePartition&) const = default;

private:
    int universe_ = 0;
    std::vector<ElementSet> blocks_;
    std::vector<int> block_of_;
};

/// A total map between finite universes; the homomorphism equation is a
/// separate check.
struct HomomorphismMap {
    int source_size = 0;
    int target_size = 0;
    std::vector<Element> map;  // length source_size, entries in target universe

    Element operator()(Element e) const { return map[static_cast<std::size_t>(e)]; }
};

struct ProductOptions {
    long long max_universe = 1'000'000;
    long long max_table_entries = 10'000'000;
};

/// Cartesian product of finitely many algebras over one signature.
/// Universe elements are tuple ranks: the first factor varies slowest.
FiniteAlgebra product(const std::vector<FiniteAlgebra>& factors,
                      const ProductOptions& opts = {});

std::vector<Element> product_decode(Element rank, const std::vector<int>& sizes);
Element product_encode(std::span<const Element> tuple, const std::vector<int>& sizes);

/// Which infinite continuation a finite product window stands for.
enum class TailRule { Diagonal };

/// A finite-width window of an infinite coordinate-wise product of rule
/// algebras. Windows are packed into a single natural, `bits` bits per
/// coordinate, coordinate 0 highest.
struct RuleProduct {
    RuleAlgebra algebra;
    int width;
    int bits;
    TailRule tail;

    Element encode(std::span<const Element> window) const;
    std::vector<Element> decode(Element packed) const;
    /// The window (0, 1, ..., width-1).
    Element diagonal() const;
};

/// Coordinate-wise product window. Factors are used cyclically when fewer
/// than width are given. Coordinate values must stay below 2^bits; by default
/// bits is chosen as large as the 63-bit packing allows.
RuleProduct rule_product(const std::vector<RuleAlgebra>& factors, int width,
                         TailRule tail = TailRule::Diagonal, int bits = 0);

struct CongruenceViolation {
    std::size_t op;
    std::vector<Element> lhs;
    std::vector<Element> rhs;
};

struct CongruenceCheck {
    bool compatible = false;
    std::optional<CongruenceViolation> violation;
};

/// True iff every operation maps blockwise-related tuples to related values.
CongruenceCheck check_congruence(const FiniteAlgebra& alg,
                                 const CongruencePartition& part);

/// Least congruence of alg containing the given pairs.
CongruencePartition congruence_closure(const FiniteAlgebra& alg,
                                       const std::vector<std::pair<Element, Element>>& pairs);

struct QuotientResult {
    FiniteAlgebra algebra;
    HomomorphismMap projection;  // element -> block index
};

/// Quotient by a congruence; throws if the partition is not compatible.
QuotientResult quotient(const FiniteAlgebra& alg, const CongruencePartition& part);

struct HomomorphismViolation {
    std::size_t op;
    std::vector<Element> args;
};

struct HomomorphismCheck {
    bool homomorphism = false;
    bool surjective = false;
    std::optional<HomomorphismViolation> violation;
};

HomomorphismCheck check_homomorphism(const FiniteAlgebra& src,
                                     const FiniteAlgebra& dst,
                                     const HomomorphismMap& h);

struct IsoOptions {
    int max_universe = 8;
};

/// First bijective homomorphism in lexicographic permutation order, if any.
std::optional<HomomorphismMap> isomorphism_search(const FiniteAlgebra& a,
                                                  const FiniteAlgebra& b,
                                                  const IsoOptions& opts = {});

/// Applies a universe permutation to an algebra: the image algebra agrees
/// with the original up to relabelling by perm.
FiniteAlgebra relabel(const FiniteAlgebra& alg, const std::vector<Element>& perm);

/// One assignment for every table entry that mentions the new point n.
/// Tuples are listed per symbol in row-major order, old-only tuples skipped.
struct ExtensionFill {
    /// values[op] lists values for the new tuples of that symbol, in the
    /// row-major order of the extended table.
    std::vector<std::vector<Element>> values;
};

struct ExtensionOptions {
    int max_new_entries = 12;
};

/// Number of table entries a one-point extension must newly define.
long long extension_new_entry_count(const FiniteAlgebra& alg);

/// Extends alg with one new point n; old tuples keep their values.
FiniteAlgebra one_point_extension(const FiniteAlgebra& alg, const ExtensionFill& fill);

/// Every one-point extension of alg, in row-major fill order. Refused when
/// the number of new entries exceeds the option bound.
std::vector<FiniteAlgebra> enumerate_one_point_extensions(
    const FiniteAlgebra& alg, const ExtensionOptions& opts = {});

/// Named algebras: predecessor-rule, predecessor-trunc(n), dlimit-rule,
/// dlimit-trunc(n), z-shift-rule, zmod(n), swap2.
using CatalogEntry = std::variant<FiniteAlgebra, RuleAlgebra>;
CatalogEntry catalog(const std::string& spec);

/// List of the recognized catalog names (with parameter placeholders).
std::vector<std::string> catalog_names();

}  // namespace ralg
