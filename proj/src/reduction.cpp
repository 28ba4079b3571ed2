#include "ralg/reduction.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "ralg/constructions.hpp"

namespace ralg {

namespace {

Element apply_generator_rule(const std::string& rule, int i) {
    if (rule == "naturals") return i;
    if (rule == "evens") return 2 * Element{i};
    if (rule == "odds") return 2 * Element{i} + 1;
    throw std::invalid_argument("unknown generator rule '" + rule + "'");
}

}  // namespace

SequencePrefix::SequencePrefix(std::vector<Element> elements)
    : elems_(std::move(elements)) {
    if (elems_.empty()) throw std::invalid_argument("empty sequence prefix");
}

SequencePrefix::SequencePrefix(std::vector<Element> elements, const std::string& rule)
    : SequencePrefix(std::move(elements)) {
    for (std::size_t i = 0; i < elems_.size(); ++i)
        if (elems_[i] != apply_generator_rule(rule, static_cast<int>(i)))
            throw std::invalid_argument("prefix disagrees with rule '" + rule +
                                        "' at index " + std::to_string(i));
    rule_name_ = rule;
}

SequencePrefix SequencePrefix::from_rule(const std::string& rule, int length) {
    if (length < 1) throw std::invalid_argument("prefix length must be >= 1");
    std::vector<Element> elems;
    for (int i = 0; i < length; ++i) elems.push_back(apply_generator_rule(rule, i));
    return SequencePrefix(std::move(elems), rule);
}

void SequencePrefix::extend_to(int length) {
    if (!rule_name_)
        throw std::logic_error("prefix has no generator rule to extend with");
    while (static_cast<int>(elems_.size()) < length)
        elems_.push_back(
            apply_generator_rule(*rule_name_, static_cast<int>(elems_.size())));
}

ReductionCheck check_reduction(AlgebraRef alg, const SequencePrefix& src,
                               const ReductionWitness& witness) {
    if (witness.output.size() != witness.steps.size())
        throw std::invalid_argument("witness output length differs from step count");
    const int len = static_cast<int>(src.length());
    for (const auto& step : witness.steps) {
        if (static_cast<int>(step.positions.size()) != step.term.width())
            throw std::invalid_argument("step positions do not match term width");
        for (int p : step.positions)
            if (p < 0 || p >= len)
                throw std::invalid_argument("step position outside the prefix");
    }

    ReductionCheck result;
    int last = -1;
    std::vector<Element> args;
    for (std::size_t j = 0; j < witness.steps.size(); ++j) {
        const auto& step = witness.steps[j];
        for (int p : step.positions) {
            if (p <= last) {
                result.step = j;
                result.detail = "blocks are not strictly increasing end to end";
                return result;
            }
            last = p;
        }
        args.clear();
        for (int p : step.positions) args.push_back(src.at(p));
        const Element value = evaluate_term(alg, step.term, args);
        if (value != witness.output[j]) {
            result.step = j;
            result.detail = "output value does not re-evaluate";
            return result;
        }
    }
    result.ok = true;
    return result;
}

namespace {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > (1LL << 54)) return 1LL << 62;  // saturate before overflow
        r = r * (n - i) / (i + 1);
    }
    return std::min(r, 1LL << 62);
}

long long saturating_mul3(long long a, long long b, long long c) {
    unsigned __int128 acc = static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    acc *= static_cast<unsigned __int128>(c);
    if (acc > static_cast<unsigned __int128>(1LL << 62)) return 1LL << 62;
    return static_cast<long long>(acc);
}

// Visits every strictly increasing index tuple of the given size drawn from
// [first, limit).
template <typename F>
void for_each_combination(int first, int limit, int size, std::vector<int>& buf,
                          F&& f) {
    if (size == 0) {
        f(const_cast<const std::vector<int>&>(buf));
        return;
    }
    for (int i = first; i + size <= limit; ++i) {
        buf.push_back(i);
        for_each_combination(i + 1, limit, size - 1, buf, f);
        buf.pop_back();
    }
}

}  // namespace

ElementSet fr_prefix(AlgebraRef alg, const SequencePrefix& src, int max_width,
                     int max_nodes, const EnumerationGuard& guard) {
    if (max_width < 1 || max_nodes < 0)
        throw std::invalid_argument("bounds must satisfy max_width >= 1, max_nodes >= 0");
    const int len = static_cast<int>(src.length());
    const long long n_terms =
        count_orderly_terms(alg.signature(), max_width, max_nodes);
    long long n_subseq = 0;
    for (int w = 1; w <= std::min(max_width, len); ++w) n_subseq += binomial(len, w);
    if (n_terms > guard.max_volume / std::max(1LL, n_subseq))
        throw std::length_error("fr_prefix enumeration volume exceeds guard (" +
                                std::to_string(n_terms) + " terms x " +
                                std::to_string(n_subseq) + " subsequences)");

    const auto terms = enumerate_orderly_terms(alg.signature(), max_width, max_nodes);
    std::vector<Element> values;
    std::vector<int> buf;
    std::vector<Element> args;
    for (const auto& term : terms) {
        const int w = term.width();
        if (w > len) continue;
        for_each_combination(0, len, w, buf, [&](const std::vector<int>& idx) {
            args.clear();
            for (int p : idx) args.push_back(src.at(p));
            values.push_back(evaluate_term(alg, term, args));
        });
    }
    return ElementSet(std::move(values));
}

std::vector<ReductionWitness> enumerate_reductions(AlgebraRef alg,
                                                   const SequencePrefix& src,
                                                   int out_len, int max_width,
                                                   int max_nodes,
                                                   const EnumerationGuard& guard) {
    if (out_len < 1) throw std::invalid_argument("out_len must be >= 1");
    if (max_width < 1 || max_nodes < 0)
        throw std::invalid_argument("bounds must satisfy max_width >= 1, max_nodes >= 0");
    const int len = static_cast<int>(src.length());
    const auto terms = enumerate_orderly_terms(alg.signature(), max_width, max_nodes);

    // witness count: ways[cursor][steps left], summed over term widths
    std::vector<long long> width_count(static_cast<std::size_t>(max_width) + 1, 0);
    for (const auto& t : terms) ++width_count[static_cast<std::size_t>(t.width())];
    std::vector<std::vector<long long>> ways(
        static_cast<std::size_t>(len) + 1,
        std::vector<long long>(static_cast<std::size_t>(out_len) + 1, 0));
    for (int c = 0; c <= len; ++c) ways[static_cast<std::size_t>(c)][0] = 1;
    for (int steps = 1; steps <= out_len; ++steps)
        for (int c = len; c >= 0; --c) {
            long long total = 0;
            for (int w = 1; w <= max_width; ++w) {
                if (!width_count[static_cast<std::size_t>(w)]) continue;
                // choose w positions in [c, len), the last one becoming the
                // next cursor - 1
                for (int last = c + w - 1; last < len; ++last) {
                    const long long picks = binomial(last - c, w - 1);
                    const long long sub =
                        ways[static_cast<std::size_t>(last) + 1]
                            [static_cast<std::size_t>(steps) - 1];
                    if (!picks || !sub) continue;
                    const long long add = saturating_mul3(
                        width_count[static_cast<std::size_t>(w)], picks, sub);
                    total = (total > (1LL << 62) - add) ? (1LL << 62) : total + add;
                }
            }
            ways[static_cast<std::size_t>(c)][static_cast<std::size_t>(steps)] =
                std::min(total, 1LL << 62);
        }
    const long long expected = ways[0][static_cast<std::size_t>(out_len)];
    if (expected > guard.max_witnesses)
        throw std::length_error("reduction enumeration would yield " +
                                std::to_string(expected) + " witnesses > guard " +
                                std::to_string(guard.max_witnesses));

    std::vector<ReductionWitness> out;
    ReductionWitness current;
    std::function<void(int, int)> rec = [&](int cursor, int remaining) {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (const auto& term : terms) {
            const int w = term.width();
            if (cursor + w > len) continue;
            std::vector<int> buf;  // fresh per level: rec below re-enters
            for_each_combination(cursor, len, w, buf, [&](const std::vector<int>& idx) {
                std::vector<Element> args;
                for (int p : idx) args.push_back(src.at(p));
                current.steps.push_back(ReductionStep{term, idx});
                current.output.push_back(evaluate_term(alg, term, args));
                rec(idx.back() + 1, remaining - 1);
                current.steps.pop_back();
                current.output.pop_back();
            });
        }
    };
    rec(0, out_len);
    return out;
}

namespace {

// Grafts replacement terms onto the leaves of t, left to right.
OrderlyTerm graft(const OrderlyTerm& t, const std::vector<OrderlyTerm>& replacements,
                  std::size_t& cursor) {
    if (t.is_variable()) return replacements[cursor++];
    std::vector<OrderlyTerm> children;
    for (const auto& c : t.children()) children.push_back(graft(c, replacements, cursor));
    return OrderlyTerm::apply(t.symbol(), std::move(children));
}

}  // namespace

ReductionWitness compose_reductions(const ReductionWitness& inner,
                                    const ReductionWitness& outer) {
    ReductionWitness composed;
    composed.output = outer.output;
    for (const auto& step : outer.steps) {
        std::vector<OrderlyTerm> leaf_terms;
        std::vector<int> positions;
        for (int p : step.positions) {
            if (p < 0 || p >= static_cast<int>(inner.steps.size()))
                throw std::invalid_argument("outer position outside inner output");
            const auto& inner_step = inner.steps[static_cast<std::size_t>(p)];
            leaf_terms.push_back(inner_step.term);
            positions.insert(positions.end(), inner_step.positions.begin(),
                             inner_step.positions.end());
        }
        std::size_t cursor = 0;
        OrderlyTerm grafted = graft(step.term, leaf_terms, cursor);
        composed.steps.push_back(ReductionStep{std::move(grafted), std::move(positions)});
    }
    return composed;
}

SubsetPredicate SubsetPredicate::evens() {
    SubsetPredicate p;
    p.kind_ = Kind::Evens;
    return p;
}

SubsetPredicate SubsetPredicate::odds() {
    SubsetPredicate p;
    p.kind_ = Kind::Odds;
    return p;
}

SubsetPredicate SubsetPredicate::interval(Element lo, Element hi) {
    if (lo > hi) throw std::invalid_argument("empty interval");
    SubsetPredicate p;
    p.kind_ = Kind::Interval;
    p.a_ = lo;
    p.b_ = hi;
    return p;
}

SubsetPredicate SubsetPredicate::list(ElementSet elems) {
    SubsetPredicate p;
    p.kind_ = Kind::List;
    p.elems_ = std::move(elems);
    return p;
}

SubsetPredicate SubsetPredicate::residue(Element modulus, Element remainder) {
    if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
    if (remainder < 0 || remainder >= modulus)
        throw std::invalid_argument("remainder outside [0, modulus)");
    SubsetPredicate p;
    p.kind_ = Kind::Residue;
    p.a_ = modulus;
    p.b_ = remainder;
    return p;
}

SubsetPredicate SubsetPredicate::parse(const std::string& text) {
    std::istringstream in(text);
    std::string kind;
    in >> kind;
    if (kind == "evens") return evens();
    if (kind == "odds") return odds();
    if (kind == "interval") {
        Element lo, hi;
        if (!(in >> lo >> hi))
            throw std::invalid_argument("interval needs two bounds");
        return interval(lo, hi);
    }
    if (kind == "list") {
        std::string rest;
        in >> rest;
        std::vector<Element> elems;
        std::istringstream items(rest);
        std::string item;
        while (std::getline(items, item, ','))
            elems.push_back(std::stoll(item));
        return list(ElementSet(std::move(elems)));
    }
    if (kind == "mod") {
        Element m, r;
        if (!(in >> m >> r))
            throw std::invalid_argument("mod needs modulus and remainder");
        return residue(m, r);
    }
    throw std::invalid_argument("unknown set predicate '" + text + "'");
}

bool SubsetPredicate::contains(Element e) const {
    switch (kind_) {
        case Kind::Evens: return e % 2 == 0;
        case Kind::Odds: return e % 2 != 0;
        case Kind::Interval: return a_ <= e && e <= b_;
        case Kind::List: return elems_.contains(e);
        case Kind::Residue: return ((e % a_) + a_) % a_ == b_;
    }
    return false;
}

std::string SubsetPredicate::describe() const {
    switch (kind_) {
        case Kind::Evens: return "evens";
        case Kind::Odds: return "odds";
        case Kind::Interval:
            return "interval " + std::to_string(a_) + " " + std::to_string(b_);
        case Kind::List: {
            std::string out = "list ";
            bool first = true;
            for (Element e : elems_) {
                if (!first) out += ',';
                out += std::to_string(e);
                first = false;
            }
            return out;
        }
        case Kind::Residue:
            return "mod " + std::to_string(a_) + " " + std::to_string(b_);
    }
    return "";
}

HomogeneityReport homogeneity_check(AlgebraRef alg, const SequencePrefix& src,
                                    const SubsetPredicate& in_x, int max_width,
                                    int max_nodes, const EnumerationGuard& guard) {
    HomogeneityReport report;
    report.fr_sample = fr_prefix(alg, src, max_width, max_nodes, guard);
    std::vector<Element> in, out;
    for (Element e : report.fr_sample)
        (in_x.contains(e) ? in : out).push_back(e);
    report.in_set = ElementSet(std::move(in));
    report.out_set = ElementSet(std::move(out));
    if (report.out_set.empty())
        report.verdict = HomogeneityVerdict::AllIn;
    else if (report.in_set.empty())
        report.verdict = HomogeneityVerdict::AllOut;
    else
        report.verdict = HomogeneityVerdict::Mixed;
    return report;
}

RangeCheck verify_dlimit_range(int n_max, int max_width, int max_nodes) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    const RuleAlgebra dlimit = std::get<RuleAlgebra>(catalog("dlimit-rule"));
    const auto terms =
        enumerate_orderly_terms(dlimit.signature(), max_width, max_nodes);
    std::vector<int> buf;
    std::vector<Element> args;
    for (const auto& term : terms) {
        const int w = term.width();
        if (w < 2 || w > n_max + 1) continue;
        RangeCheck failed;
        bool found = false;
        for_each_combination(0, n_max + 1, w, buf, [&](const std::vector<int>& idx) {
            if (found) return;
            args.clear();
            for (int p : idx) args.push_back(p);  // source is <0,...,n_max>
            const Element value = evaluate_term(dlimit, term, args);
            const Element first = args.front();
            const Element last = args.back();
            if (!(first <= value && value < last)) {
                found = true;
                failed.violation = RangeViolation{term, args, value};
            }
        });
        if (found) return failed;
    }
    return RangeCheck{true, std::nullopt};
}

ParityWitnessReport verify_dlimit_parity_witness(int n_max, int max_width,
                                                 int max_nodes) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    const RuleAlgebra dlimit = std::get<RuleAlgebra>(catalog("dlimit-rule"));
    std::vector<Element> base(static_cast<std::size_t>(n_max) + 1);
    for (int i = 0; i <= n_max; ++i) base[static_cast<std::size_t>(i)] = i;
    const SequencePrefix src(base);

    ParityWitnessReport report;
    EnumerationGuard relaxed;
    relaxed.max_witnesses = 100'000'000;
    for (int out_len = 1; out_len <= n_max + 1; ++out_len) {
        const auto witnesses =
            enumerate_reductions(dlimit, src, out_len, max_width, max_nodes, relaxed);
        for (const auto& w : witnesses) {
            ++report.outputs_checked;
            // outputs must be increasing sequences of source values
            for (std::size_t i = 0; i < w.output.size(); ++i) {
                const Element v = w.output[i];
                if (v < 0 || v > n_max || (i > 0 && w.output[i - 1] >= v)) {
                    report.detail = "output is not an increasing subsequence";
                    return report;
                }
            }
            if (out_len >= 2) {
                ++report.pairs_checked;
                const std::vector<Element> args{w.output[0], w.output[1]};
                const Element combined = dlimit.apply(0, args);
                if ((combined % 2) == (w.output[1] % 2)) {
                    report.detail = "pair has equal parity";
                    return report;
                }
                // both values lie in the FR set of the output, so the output
                // cannot be homogeneous for the evens
                const auto homog =
                    homogeneity_check(dlimit, SequencePrefix(w.output),
                                      SubsetPredicate::evens(), 2, 1);
                if (homog.verdict != HomogeneityVerdict::Mixed) {
                    report.detail = "output unexpectedly homogeneous for evens";
                    return report;
                }
            }
        }
    }
    report.ok = true;
    return report;
}

}  // namespace ralg
