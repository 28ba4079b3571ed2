#include "ralg/closure.hpp"

#include <algorithm>
#include <stdexcept>

namespace ralg {

namespace {

// Worklist closure. When an element is popped, every tuple over the current
// set that uses it in at least one slot is applied; each tuple over the final
// set is therefore seen once its last-added member is processed.
template <typename OnInsert>
void close_over(const FiniteAlgebra& alg, const ElementSet& seed, OnInsert on_insert) {
    const int n = alg.size();
    std::vector<char> in_set(static_cast<std::size_t>(n), 0);
    std::vector<Element> members;
    std::vector<Element> queue;

    auto insert = [&](Element v, std::size_t op, const std::vector<Element>& args,
                      bool is_seed) {
        if (in_set[static_cast<std::size_t>(v)]) return;
        in_set[static_cast<std::size_t>(v)] = 1;
        members.push_back(v);
        queue.push_back(v);
        on_insert(v, op, args, is_seed);
    };

    const std::vector<Element> no_args;
    for (Element s : seed) {
        if (s < 0 || s >= n)
            throw std::out_of_range("seed element outside universe");
        insert(s, 0, no_args, true);
    }

    std::vector<Element> args;
    std::size_t head = 0;
    while (head < queue.size()) {
        const Element x = queue[head++];
        for (std::size_t op = 0; op < alg.signature().size(); ++op) {
            const int k = alg.signature()[op].arity;
            args.assign(static_cast<std::size_t>(k), 0);
            // position of the forced occurrence of x
            for (int pos = 0; pos < k; ++pos) {
                // odometer over the remaining slots, ranging over members
                std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
                const std::size_t member_count = members.size();
                bool done = false;
                while (!done) {
                    for (int i = 0; i < k; ++i) {
                        if (i == pos) {
                            args[static_cast<std::size_t>(i)] = x;
                        } else {
                            args[static_cast<std::size_t>(i)] =
                                members[idx[static_cast<std::size_t>(i)]];
                        }
                    }
                    const Element v = alg.apply(op, args);
                    insert(v, op, args, false);
                    // advance odometer over slots != pos
                    done = true;
                    for (int i = k - 1; i >= 0; --i) {
                        if (i == pos) continue;
                        auto& d = idx[static_cast<std::size_t>(i)];
                        if (++d < member_count) {
                            done = false;
                            break;
                        }
                        d = 0;
                    }
                }
            }
        }
    }
}

}  // namespace

ElementSet closure(const FiniteAlgebra& alg, const ElementSet& seed) {
    std::vector<Element> out;
    close_over(alg, seed,
               [&](Element v, std::size_t, const std::vector<Element>&, bool) {
                   out.push_back(v);
               });
    return ElementSet(std::move(out));
}

ClosureTrace closure_trace(const FiniteAlgebra& alg, const ElementSet& seed) {
    ClosureTrace trace;
    trace.provenance.resize(static_cast<std::size_t>(alg.size()));
    std::vector<Element> out;
    close_over(alg, seed,
               [&](Element v, std::size_t op, const std::vector<Element>& args,
                   bool is_seed) {
                   out.push_back(v);
                   trace.insertion_order.push_back(v);
                   if (!is_seed)
                       trace.provenance[static_cast<std::size_t>(v)] =
                           ProvenanceStep{op, args};
               });
    trace.set = ElementSet(std::move(out));
    return trace;
}

namespace {

// Ganter-style next-closure enumeration of the Moore family of closed sets,
// in lectic order. Cost is one closure per (closed set, element) pair, so
// small families are cheap even on larger universes.
std::vector<ElementSet> all_closed_sets(const FiniteAlgebra& alg) {
    const int n = alg.size();
    std::vector<ElementSet> out;

    ElementSet current = closure(alg, ElementSet());  // = {} (no constants)
    out.push_back(current);
    const ElementSet full = closure(
        alg, [n] {
            std::vector<Element> all(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
            return ElementSet(std::move(all));
        }());

    while (!(current == full)) {
        for (Element i = n - 1; i >= 0; --i) {
            if (current.contains(i)) continue;
            std::vector<Element> cut;
            for (Element e : current)
                if (e < i) cut.push_back(e);
            cut.push_back(i);
            ElementSet candidate = closure(alg, ElementSet(std::move(cut)));
            // accept when no element below i is newly introduced
            bool ok = true;
            for (Element e : candidate) {
                if (e >= i) break;
                if (!current.contains(e)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                current = std::move(candidate);
                out.push_back(current);
                break;
            }
        }
    }
    return out;
}

}  // namespace

std::vector<ElementSet> enumerate_subalgebras(const FiniteAlgebra& alg,
                                              const SubalgebraOptions& opts) {
    std::vector<ElementSet> out;
    if (opts.singletons_only) {
        out.push_back(ElementSet());
        for (Element a = 0; a < alg.size(); ++a)
            out.push_back(closure(alg, ElementSet::of({a})));
    } else {
        if (alg.size() > opts.max_full_universe)
            throw std::length_error(
                "full subalgebra enumeration refused for universe size " +
                std::to_string(alg.size()) + " > " +
                std::to_string(opts.max_full_universe) +
                "; use singletons_only");
        out = all_closed_sets(alg);
    }
    std::sort(out.begin(), out.end(), ElementSet::canonical_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ElementSet idempotents(const FiniteAlgebra& alg) {
    std::vector<Element> out;
    std::vector<Element> args;
    for (Element a = 0; a < alg.size(); ++a) {
        bool idem = true;
        for (std::size_t op = 0; op < alg.signature().size() && idem; ++op) {
            args.assign(static_cast<std::size_t>(alg.signature()[op].arity), a);
            idem = alg.apply(op, args) == a;
        }
        if (idem) out.push_back(a);
    }
    return ElementSet(std::move(out));
}

ElementSet fixed_points(const FiniteAlgebra& alg) {
    if (!alg.signature().all_unary())
        throw std::invalid_argument("fixed points are defined for unary algebras only");
    return idempotents(alg);
}

RestrictedAlgebra restrict_to_closed(const FiniteAlgebra& alg,
                                     const ElementSet& universe) {
    if (universe.empty())
        throw std::invalid_argument("cannot restrict to the empty set");
    const auto& elems = universe.elements();
    std::vector<Element> new_of(static_cast<std::size_t>(alg.size()), -1);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (elems[i] < 0 || elems[i] >= alg.size())
            throw std::out_of_range("restriction element outside universe");
        new_of[static_cast<std::size_t>(elems[i])] = static_cast<Element>(i);
    }
    const int m = static_cast<int>(elems.size());
    std::vector<std::vector<Element>> tables;
    std::vector<Element> args;
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
        const int k = alg.signature()[op].arity;
        std::vector<Element> table(FiniteAlgebra::table_length(m, k));
        std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
        for (std::size_t rank = 0; rank < table.size(); ++rank) {
            args.clear();
            for (int i = 0; i < k; ++i)
                args.push_back(elems[idx[static_cast<std::size_t>(i)]]);
            const Element v = alg.apply(op, args);
            const Element nv = new_of[static_cast<std::size_t>(v)];
            if (nv < 0)
                throw std::invalid_argument("set is not closed under '" +
                                            alg.signature()[op].name + "'");
            table[rank] = nv;
            for (int i = k - 1; i >= 0; --i) {
                auto& d = idx[static_cast<std::size_t>(i)];
                if (++d < static_cast<std::size_t>(m)) break;
                d = 0;
            }
        }
        tables.push_back(std::move(table));
    }
    return RestrictedAlgebra{
        FiniteAlgebra(alg.signature(), m, std::move(tables), alg.name()),
        elems};
}

}  // namespace ralg
