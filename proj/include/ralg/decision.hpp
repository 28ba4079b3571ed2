#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ralg/algebra.hpp"
#include "ralg/closure.hpp"
#include "ralg/term.hpp"

namespace ralg {

enum class RamseyStatus { Ramsey, NotRamsey, Unknown };

/// Unary composite: symbol indices applied left to right
/// (w = {s0, s1} sends a to f_{s1}(f_{s0}(a))).
using Word = std::vector<std::size_t>;

/// Per-element evidence for a Ramsey verdict: an orderly term evaluated at
/// the constant tuple (element,...,element), or a composite word, landing on
/// target; target is an idempotent (fixed point in the unary case).
struct Certificate {
    Element element;
    std::variant<OrderlyTerm, Word> route;
    Element target;
};

/// Evidence against: an element whose generated subalgebra contains no
/// idempotent.
struct NotRamseyWitness {
    Element element;
    ElementSet generated;
};

struct RamseyVerdict {
    RamseyStatus status = RamseyStatus::Unknown;
    std::vector<Certificate> certificates;        // Ramsey: one per element
    std::optional<NotRamseyWitness> witness;      // NotRamsey
    std::optional<int> exhausted_depth;           // Unknown
};

/// Ramsey iff the subalgebra generated by each single element contains an
/// idempotent. Certificates map every element to a reached idempotent.
RamseyVerdict decide_finite(const FiniteAlgebra& alg);

/// Status-only variant of decide_finite, for bulk sweeps.
RamseyStatus decide_finite_status(const FiniteAlgebra& alg);

/// Literal form of the finite criterion: every nonempty subalgebra universe
/// must contain an idempotent. Always agrees with decide_finite.
RamseyVerdict decide_finite_via_all_subalgebras(const FiniteAlgebra& alg,
                                                const SubalgebraOptions& opts = {});

/// Unary criterion: every element must reach the set of common fixed points
/// by some composite. Certificates store a shortest such word per element,
/// ties broken lexicographically by symbol index.
RamseyVerdict decide_unary_finite(const FiniteAlgebra& alg);

/// Bounded breadth-first search on a unary rule algebra from one start
/// element. NotRamsey is reported only under a declared-empty fixed-point
/// set, never from exhaustion.
struct RuleSearchOptions {
    int max_depth = 64;
};

struct RuleSearchResult {
    RamseyStatus status = RamseyStatus::Unknown;
    Element start = 0;
    std::optional<Word> word;       // Ramsey: path into the fixed-point set
    std::optional<Element> target;  // Ramsey: the fixed point reached
    int explored_depth = 0;
};

RuleSearchResult search_unary_rule(const RuleAlgebra& alg, Element start,
                                   const RuleSearchOptions& opts = {});

/// One operation application recorded while generating from a single element.
struct TraceStep {
    std::size_t op;
    std::vector<Element> args;
    Element value;
};

/// For the constant sequence at b: an idempotent in the subalgebra generated
/// by b together with the applications that produce it, or nothing when that
/// subalgebra has no idempotent.
struct SingletonWitness {
    Element idempotent;
    std::vector<TraceStep> trace;
};

std::optional<SingletonWitness> singleton_fr_witness(const FiniteAlgebra& alg,
                                                     Element b);

/// Re-checks a verdict against the algebra: every certificate must evaluate
/// onto its stored idempotent target, and a NotRamsey witness set must be the
/// stated closure and contain no idempotent.
bool verify_verdict(const FiniteAlgebra& alg, const RamseyVerdict& verdict);

}  // namespace ralg
