#include "ralg/decision.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ralg {

namespace {

// Certificate terms repeat shared subderivations, so their width can grow
// exponentially in the provenance depth on adversarial tables.
constexpr long long kMaxCertificateWidth = 1 << 20;

long long provenance_width(const ClosureTrace& trace, Element e) {
    std::vector<long long> width(trace.provenance.size(), -1);
    for (Element v : trace.insertion_order) {
        const auto& step = trace.provenance[static_cast<std::size_t>(v)];
        if (!step) {
            width[static_cast<std::size_t>(v)] = 1;
            continue;
        }
        long long total = 0;
        for (Element a : step->args) {
            total += width[static_cast<std::size_t>(a)];
            if (total >= kMaxCertificateWidth) break;
        }
        width[static_cast<std::size_t>(v)] = std::min(total, kMaxCertificateWidth);
    }
    return width[static_cast<std::size_t>(e)];
}

OrderlyTerm expand_provenance(const ClosureTrace& trace, Element e, Element seed) {
    if (e == seed && !trace.provenance[static_cast<std::size_t>(e)])
        return OrderlyTerm::variable();
    const auto& step = trace.provenance[static_cast<std::size_t>(e)];
    if (!step) throw std::logic_error("element has no provenance");
    std::vector<OrderlyTerm> children;
    for (Element a : step->args)
        children.push_back(expand_provenance(trace, a, seed));
    return OrderlyTerm::apply(step->op, std::move(children));
}

// Rebuilds an orderly term witnessing e in the closure trace of {seed}: each
// produced element is expanded through its provenance, seed occurrences
// become leaves. Leaves read x0, x1, ... so the result evaluates at the
// constant tuple (seed,...,seed).
OrderlyTerm term_from_provenance(const ClosureTrace& trace, Element e, Element seed) {
    if (provenance_width(trace, e) >= kMaxCertificateWidth)
        throw std::length_error(
            "certificate term for element " + std::to_string(seed) +
            " is too wide to materialize; use decide_finite_status");
    return expand_provenance(trace, e, seed);
}

std::optional<Element> first_idempotent_in(const FiniteAlgebra& alg,
                                           const std::vector<Element>& order) {
    std::vector<Element> args;
    for (Element a : order) {
        bool idem = true;
        for (std::size_t op = 0; op < alg.signature().size() && idem; ++op) {
            args.assign(static_cast<std::size_t>(alg.signature()[op].arity), a);
            idem = alg.apply(op, args) == a;
        }
        if (idem) return a;
    }
    return std::nullopt;
}

}  // namespace

RamseyVerdict decide_finite(const FiniteAlgebra& alg) {
    RamseyVerdict verdict;
    for (Element a = 0; a < alg.size(); ++a) {
        const ClosureTrace trace = closure_trace(alg, ElementSet::of({a}));
        const auto idem = first_idempotent_in(alg, trace.insertion_order);
        if (!idem) {
            verdict.status = RamseyStatus::NotRamsey;
            verdict.certificates.clear();
            verdict.witness = NotRamseyWitness{a, trace.set};
            return verdict;
        }
        verdict.certificates.push_back(
            Certificate{a, term_from_provenance(trace, *idem, a), *idem});
    }
    verdict.status = RamseyStatus::Ramsey;
    return verdict;
}

RamseyStatus decide_finite_status(const FiniteAlgebra& alg) {
    const ElementSet idem = idempotents(alg);
    for (Element a = 0; a < alg.size(); ++a) {
        const ElementSet generated = closure(alg, ElementSet::of({a}));
        if (set_intersection(generated, idem).empty()) return RamseyStatus::NotRamsey;
    }
    return RamseyStatus::Ramsey;
}

RamseyVerdict decide_finite_via_all_subalgebras(const FiniteAlgebra& alg,
                                                const SubalgebraOptions& opts) {
    const ElementSet idem = idempotents(alg);
    for (const ElementSet& universe : enumerate_subalgebras(alg, opts)) {
        if (universe.empty()) continue;
        if (set_intersection(universe, idem).empty()) {
            // Any member generates an idempotent-free subalgebra inside it.
            const Element a = universe.elements().front();
            RamseyVerdict verdict;
            verdict.status = RamseyStatus::NotRamsey;
            verdict.witness =
                NotRamseyWitness{a, closure(alg, ElementSet::of({a}))};
            return verdict;
        }
    }
    // Certificates are produced the same way as in decide_finite.
    RamseyVerdict verdict;
    for (Element a = 0; a < alg.size(); ++a) {
        const ClosureTrace trace = closure_trace(alg, ElementSet::of({a}));
        const auto e = first_idempotent_in(alg, trace.insertion_order);
        verdict.certificates.push_back(
            Certificate{a, term_from_provenance(trace, *e, a), *e});
    }
    verdict.status = RamseyStatus::Ramsey;
    return verdict;
}

RamseyVerdict decide_unary_finite(const FiniteAlgebra& alg) {
    if (!alg.signature().all_unary())
        throw std::invalid_argument("decide_unary_finite needs an all-unary algebra");
    const int n = alg.size();
    const ElementSet fixed = fixed_points(alg);

    // dist to the fixed-point set; BFS layer by layer backwards over the
    // functional graph would need reversed edges, so run it forward from the
    // fixed points using a reverse adjacency list.
    std::vector<std::vector<std::pair<Element, std::size_t>>> reverse_edges(
        static_cast<std::size_t>(n));  // target -> (source, symbol)
    std::vector<Element> arg(1);
    for (Element a = 0; a < n; ++a)
        for (std::size_t op = 0; op < alg.signature().size(); ++op) {
            arg[0] = a;
            reverse_edges[static_cast<std::size_t>(alg.apply(op, arg))].push_back(
                {a, op});
        }
    constexpr int kUnreached = -1;
    std::vector<int> dist(static_cast<std::size_t>(n), kUnreached);
    std::deque<Element> queue;
    for (Element s : fixed) {
        dist[static_cast<std::size_t>(s)] = 0;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        const Element v = queue.front();
        queue.pop_front();
        for (auto [src, op] : reverse_edges[static_cast<std::size_t>(v)]) {
            if (dist[static_cast<std::size_t>(src)] != kUnreached) continue;
            dist[static_cast<std::size_t>(src)] = dist[static_cast<std::size_t>(v)] + 1;
            queue.push_back(src);
        }
    }

    RamseyVerdict verdict;
    for (Element a = 0; a < n; ++a) {
        if (dist[static_cast<std::size_t>(a)] == kUnreached) {
            verdict.status = RamseyStatus::NotRamsey;
            verdict.certificates.clear();
            verdict.witness = NotRamseyWitness{a, closure(alg, ElementSet::of({a}))};
            return verdict;
        }
        // Greedy descent picks the least symbol at each step, which yields
        // the lexicographically least among the shortest words.
        Word word;
        Element cur = a;
        while (dist[static_cast<std::size_t>(cur)] > 0) {
            for (std::size_t op = 0;; ++op) {
                arg[0] = cur;
                const Element next = alg.apply(op, arg);
                if (dist[static_cast<std::size_t>(next)] ==
                    dist[static_cast<std::size_t>(cur)] - 1) {
                    word.push_back(op);
                    cur = next;
                    break;
                }
            }
        }
        verdict.certificates.push_back(Certificate{a, std::move(word), cur});
    }
    verdict.status = RamseyStatus::Ramsey;
    return verdict;
}

namespace {

bool is_rule_fixed_point(const RuleAlgebra& alg, Element e) {
    std::vector<Element> arg(1, e);
    for (std::size_t op = 0; op < alg.signature().size(); ++op)
        if (alg.apply(op, arg) != e) return false;
    return true;
}

}  // namespace

RuleSearchResult search_unary_rule(const RuleAlgebra& alg, Element start,
                                   const RuleSearchOptions& opts) {
    if (!alg.signature().all_unary())
        throw std::invalid_argument("search_unary_rule needs an all-unary algebra");
    if (opts.max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");

    RuleSearchResult result;
    result.start = start;
    if (alg.fixed_point_hint() == FixedPointHint::NoneExist) {
        result.status = RamseyStatus::NotRamsey;
        return result;
    }

    struct Node {
        Element value;
        int depth;
    };
    std::deque<Node> queue{{start, 0}};
    std::unordered_map<Element, std::pair<Element, std::size_t>> parent;
    std::unordered_set<Element> seen{start};
    std::vector<Element> arg(1);

    while (!queue.empty()) {
        const Node node = queue.front();
        queue.pop_front();
        result.explored_depth = std::max(result.explored_depth, node.depth);
        if (is_rule_fixed_point(alg, node.value)) {
            Word word;
            Element cur = node.value;
            while (cur != start) {
                const auto& [prev, op] = parent.at(cur);
                word.push_back(op);
                cur = prev;
            }
            std::reverse(word.begin(), word.end());
            result.status = RamseyStatus::Ramsey;
            result.word = std::move(word);
            result.target = node.value;
            return result;
        }
        if (node.depth == opts.max_depth) continue;
        for (std::size_t op = 0; op < alg.signature().size(); ++op) {
            arg[0] = node.value;
            const Element next = alg.apply(op, arg);
            if (!seen.insert(next).second) continue;
            parent[next] = {node.value, op};
            queue.push_back({next, node.depth + 1});
        }
    }
    result.status = RamseyStatus::Unknown;
    result.explored_depth = opts.max_depth;
    return result;
}

namespace {

// Emits the applications deriving e, dependencies first, skipping elements
// already derived.
void emit_trace(const ClosureTrace& trace, Element e,
                std::vector<char>& emitted, std::vector<TraceStep>& out) {
    if (emitted[static_cast<std::size_t>(e)]) return;
    emitted[static_cast<std::size_t>(e)] = 1;
    const auto& step = trace.provenance[static_cast<std::size_t>(e)];
    if (!step) return;  // seed element
    for (Element a : step->args) emit_trace(trace, a, emitted, out);
    out.push_back(TraceStep{step->op, step->args, e});
}

}  // namespace

std::optional<SingletonWitness> singleton_fr_witness(const FiniteAlgebra& alg,
                                                     Element b) {
    const ClosureTrace trace = closure_trace(alg, ElementSet::of({b}));
    const auto idem = first_idempotent_in(alg, trace.insertion_order);
    if (!idem) return std::nullopt;
    SingletonWitness witness;
    witness.idempotent = *idem;
    std::vector<char> emitted(static_cast<std::size_t>(alg.size()), 0);
    emit_trace(trace, *idem, emitted, witness.trace);
    return witness;
}

bool verify_verdict(const FiniteAlgebra& alg, const RamseyVerdict& verdict) {
    const ElementSet idem = idempotents(alg);
    switch (verdict.status) {
        case RamseyStatus::Ramsey: {
            if (verdict.certificates.size() != static_cast<std::size_t>(alg.size()))
                return false;
            for (const auto& cert : verdict.certificates) {
                Element reached = cert.element;
                if (const auto* term = std::get_if<OrderlyTerm>(&cert.route)) {
                    const std::vector<Element> args(
                        static_cast<std::size_t>(term->width()), cert.element);
                    reached = evaluate_term(alg, *term, args);
                } else {
                    std::vector<Element> arg(1);
                    for (std::size_t op : std::get<Word>(cert.route)) {
                        arg[0] = reached;
                        reached = alg.apply(op, arg);
                    }
                }
                if (reached != cert.target || !idem.contains(cert.target))
                    return false;
            }
            return true;
        }
        case RamseyStatus::NotRamsey: {
            if (!verdict.witness) return false;
            const ElementSet generated =
                closure(alg, ElementSet::of({verdict.witness->element}));
            return generated == verdict.witness->generated &&
                   set_intersection(generated, idem).empty();
        }
        case RamseyStatus::Unknown:
            return verdict.exhausted_depth.has_value();
    }
    return false;
}

}  // namespace ralg
