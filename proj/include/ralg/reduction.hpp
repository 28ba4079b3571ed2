#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ralg/algebra.hpp"
#include "ralg/term.hpp"

namespace ralg {

/// A finite prefix of an infinite sequence over the carrier, optionally tied
/// to a named generator rule (index -> element) so it can be extended.
class SequencePrefix {
public:
    explicit SequencePrefix(std::vector<Element> elements);
    /// rule is one of: naturals (i), evens (2i), odds (2i+1).
    SequencePrefix(std::vector<Element> elements, const std::string& rule);
    static SequencePrefix from_rule(const std::string& rule, int length);

    const std::vector<Element>& elements() const { return elems_; }
    std::size_t length() const { return elems_.size(); }
    Element at(int i) const { return elems_[static_cast<std::size_t>(i)]; }
    const std::optional<std::string>& rule_name() const { return rule_name_; }

    /// Extends the stored prefix using the generator rule.
    void extend_to(int length);

private:
    std::vector<Element> elems_;
    std::optional<std::string> rule_name_;
};

/// One output entry of a reduction: an orderly term applied to a block of
/// source positions (strictly increasing, one per term leaf).
struct ReductionStep {
    OrderlyTerm term;
    std::vector<int> positions;
};

/// A reduction of a source prefix: blocks used by consecutive steps must be
/// strictly increasing end to end, so their concatenation is a subsequence
/// of the source; output(j) is the value of step j.
struct ReductionWitness {
    std::vector<ReductionStep> steps;
    std::vector<Element> output;
};

struct ReductionCheck {
    bool ok = false;
    std::optional<std::size_t> step;  // first offending step, if any
    std::string detail;
};

/// Checks both clauses of the reduction relation: values re-evaluate, and
/// the concatenated blocks form a subsequence of the source prefix.
/// Malformed witnesses (width/position-count mismatch, positions outside the
/// prefix) throw instead of returning false.
ReductionCheck check_reduction(AlgebraRef alg, const SequencePrefix& src,
                               const ReductionWitness& witness);

struct EnumerationGuard {
    /// fr_prefix refuses when (number of terms) x (number of subsequences)
    /// exceeds this.
    long long max_volume = 10'000'000;
    /// enumerate_reductions refuses when the witness count exceeds this.
    long long max_witnesses = 1'000'000;
};

/// Exact set of values of orderly terms (within the bounds) on subsequences
/// of the source prefix.
ElementSet fr_prefix(AlgebraRef alg, const SequencePrefix& src, int max_width,
                     int max_nodes, const EnumerationGuard& guard = {});

/// Every reduction witness with the given output length whose terms satisfy
/// the bounds, each exactly once, in deterministic order.
std::vector<ReductionWitness> enumerate_reductions(AlgebraRef alg,
                                                   const SequencePrefix& src,
                                                   int out_len, int max_width,
                                                   int max_nodes,
                                                   const EnumerationGuard& guard = {});

/// Treats outer's positions as indices into inner's output and rewrites them
/// against inner's source: term leaves are grafted with inner terms and the
/// blocks are concatenated. The result reduces inner's source directly.
ReductionWitness compose_reductions(const ReductionWitness& inner,
                                    const ReductionWitness& outer);

/// Membership test over the carrier from a small catalog:
///   evens | odds | interval a b | list e1,... | mod m r
class SubsetPredicate {
public:
    static SubsetPredicate evens();
    static SubsetPredicate odds();
    static SubsetPredicate interval(Element lo, Element hi);  // inclusive
    static SubsetPredicate list(ElementSet elems);
    static SubsetPredicate residue(Element modulus, Element remainder);
    /// Parses the textual forms above, e.g. "interval 2 7" or "list 1,4,9".
    static SubsetPredicate parse(const std::string& text);

    bool contains(Element e) const;
    std::string describe() const;

private:
    enum class Kind { Evens, Odds, Interval, List, Residue };
    Kind kind_;
    Element a_ = 0, b_ = 0;
    ElementSet elems_;
};

enum class HomogeneityVerdict { AllIn, AllOut, Mixed };

struct HomogeneityReport {
    ElementSet fr_sample;
    ElementSet in_set;
    ElementSet out_set;
    HomogeneityVerdict verdict = HomogeneityVerdict::Mixed;
};

/// Classifies the FR values of the source prefix against the predicate.
HomogeneityReport homogeneity_check(AlgebraRef alg, const SequencePrefix& src,
                                    const SubsetPredicate& in_x, int max_width,
                                    int max_nodes, const EnumerationGuard& guard = {});

/// For every orderly term of width >= 2 within the bounds and every matching
/// subsequence s of <0,...,n_max> with first term N and last term M, asserts
/// N <= value < M over the dlimit rule. Returns the first violation if any.
struct RangeViolation {
    OrderlyTerm term;
    std::vector<Element> subsequence;
    Element value;
};

struct RangeCheck {
    bool ok = false;
    std::optional<RangeViolation> violation;
};

RangeCheck verify_dlimit_range(int n_max, int max_width, int max_nodes);

/// Over the source <0,...,n_max> and the dlimit rule: every enumerated
/// reduction output is an increasing sequence of source values, every output
/// of length >= 2 pairs a(1) with f(a(0),a(1)) of opposite parity, and no
/// such output is homogeneous for the even numbers.
struct ParityWitnessReport {
    bool ok = false;
    long long outputs_checked = 0;
    long long pairs_checked = 0;
    std::string detail;
};

ParityWitnessReport verify_dlimit_parity_witness(int n_max, int max_width,
                                                 int max_nodes);

}  // namespace ralg
