#pragma once

#include <vector>

#include "ralg/algebra.hpp"

namespace ralg {

/// Least superset of seed closed under every operation of alg.
/// closure({}) = {}.
ElementSet closure(const FiniteAlgebra& alg, const ElementSet& seed);

/// How a closure element was first produced: op applied to args already in
/// the set. Seed elements carry no provenance.
struct ProvenanceStep {
    std::size_t op;
    std::vector<Element> args;
};

/// Closure that also records, per produced element, the operation application
/// that first yielded it, and the insertion order of all members.
struct ClosureTrace {
    ElementSet set;
    std::vector<Element> insertion_order;
    /// indexed by element value; empty args for seed elements
    std::vector<std::optional<ProvenanceStep>> provenance;
};

ClosureTrace closure_trace(const FiniteAlgebra& alg, const ElementSet& seed);

struct SubalgebraOptions {
    /// Full enumeration is refused above this universe size.
    int max_full_universe = 20;
    /// When set, only closures of singletons (plus the empty set) are
    /// produced instead of the full Moore family.
    bool singletons_only = false;
};

/// All subalgebra universes of alg, including {} and the full universe,
/// in canonical order (size, then lexicographic), each exactly once.
std::vector<ElementSet> enumerate_subalgebras(const FiniteAlgebra& alg,
                                              const SubalgebraOptions& opts = {});

/// Elements a with f(a,...,a) = a for every symbol f.
ElementSet idempotents(const FiniteAlgebra& alg);

/// Elements fixed by every operation of an all-unary algebra. Throws if a
/// non-unary symbol is present.
ElementSet fixed_points(const FiniteAlgebra& alg);

/// Restriction of alg to a closed subset, with elements relabelled to
/// 0..|universe|-1 in increasing order of the original elements.
struct RestrictedAlgebra {
    FiniteAlgebra algebra;
    std::vector<Element> original_of;  // new element -> original element
};

RestrictedAlgebra restrict_to_closed(const FiniteAlgebra& alg, const ElementSet& universe);

}  // namespace ralg
