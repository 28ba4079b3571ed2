#include "doctest.h"

#include <algorithm>
#include <random>

#include "ralg/closure.hpp"
#include "ralg/constructions.hpp"

using namespace ralg;

namespace {

// Naive fixpoint closure used as an oracle: applies every operation to every
// tuple of the current set until nothing changes.
ElementSet oracle_closure(const FiniteAlgebra& alg, const ElementSet& seed) {
    std::vector<Element> members(seed.begin(), seed.end());
    std::vector<char> in(static_cast<std::size_t>(alg.size()), 0);
    for (Element e : members) in[static_cast<std::size_t>(e)] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t op = 0; op < alg.signature().size(); ++op) {
            const int k = alg.signature()[op].arity;
            std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
            if (members.empty()) break;
            while (true) {
                std::vector<Element> args;
                for (int i = 0; i < k; ++i)
                    args.push_back(members[idx[static_cast<std::size_t>(i)]]);
                const Element v = alg.apply(op, args);
                if (!in[static_cast<std::size_t>(v)]) {
                    in[static_cast<std::size_t>(v)] = 1;
                    members.push_back(v);
                    grew = true;
                }
                int i = k - 1;
                for (; i >= 0; --i) {
                    auto& d = idx[static_cast<std::size_t>(i)];
                    if (++d < members.size()) break;
                    d = 0;
                }
                if (i < 0) break;
            }
        }
    }
    return ElementSet(std::move(members));
}

FiniteAlgebra random_algebra(std::mt19937& rng, int n, const Signature& sig) {
    std::uniform_int_distribution<Element> pick(0, n - 1);
    std::vector<std::vector<Element>> tables;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        std::vector<Element> table(FiniteAlgebra::table_length(n, sig[op].arity));
        for (auto& v : table) v = pick(rng);
        tables.push_back(std::move(table));
    }
    return FiniteAlgebra(sig, n, std::move(tables));
}

ElementSet full_universe(int n) {
    std::vector<Element> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    return ElementSet(std::move(all));
}

}  // namespace

TEST_CASE("closure walks the predecessor chain down to 0") {
    const FiniteAlgebra p3 = std::get<FiniteAlgebra>(catalog("predecessor-trunc(3)"));
    CHECK(closure(p3, ElementSet::of({2})) == ElementSet::of({0, 1, 2}));
    CHECK(closure(p3, ElementSet()) == ElementSet());
}

TEST_CASE("closure of the full universe is the universe") {
    const FiniteAlgebra a5 = std::get<FiniteAlgebra>(catalog("dlimit-trunc(5)"));
    CHECK(closure(a5, full_universe(a5.size())) == full_universe(a5.size()));
}

TEST_CASE("closure over the truncated dlimit algebra fills the interval") {
    const FiniteAlgebra a5 = std::get<FiniteAlgebra>(catalog("dlimit-trunc(5)"));
    // f(2,4)=3 and f(4,2)=3 are the only new values; {2,3,4} is the interval
    // subalgebra generated by {2,4}
    CHECK(closure(a5, ElementSet::of({2, 4})) == ElementSet::of({2, 3, 4}));
    CHECK(closure(a5, ElementSet::of({2, 4})) ==
          oracle_closure(a5, ElementSet::of({2, 4})));
}

TEST_CASE("closure properties on random algebras") {
    std::mt19937 rng(20240901);
    const Signature sigs[] = {Signature({{"f", 1}}), Signature({{"g", 2}}),
                              Signature({{"f", 1}, {"g", 2}})};
    std::uniform_int_distribution<int> size_pick(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        const Signature& sig = sigs[trial % 3];
        const int n = size_pick(rng);
        const FiniteAlgebra alg = random_algebra(rng, n, sig);
        std::uniform_int_distribution<Element> pick(0, n - 1);
        std::vector<Element> seed_elems;
        for (int i = 0; i < 2; ++i) seed_elems.push_back(pick(rng));
        const ElementSet seed(seed_elems);
        const ElementSet closed = closure(alg, seed);

        CHECK(seed.subset_of(closed));                       // extensive
        CHECK(closure(alg, closed) == closed);               // idempotent
        CHECK(closed == oracle_closure(alg, seed));          // oracle
        const ElementSet single = closure(alg, ElementSet::of({seed_elems[0]}));
        CHECK(single.subset_of(closed));                     // monotone
    }
}

TEST_CASE("subalgebras of the truncated predecessor are initial segments") {
    const FiniteAlgebra p3 = std::get<FiniteAlgebra>(catalog("predecessor-trunc(3)"));
    const std::vector<ElementSet> want{
        ElementSet(), ElementSet::of({0}), ElementSet::of({0, 1}),
        ElementSet::of({0, 1, 2}), ElementSet::of({0, 1, 2, 3})};
    CHECK(enumerate_subalgebras(p3) == want);
}

TEST_CASE("subalgebras of the truncated dlimit algebra are the intervals") {
    const FiniteAlgebra a5 = std::get<FiniteAlgebra>(catalog("dlimit-trunc(5)"));
    const auto subs = enumerate_subalgebras(a5);
    CHECK(subs.size() == 22);  // empty set plus C(6,2)+6 = 21 intervals
    for (const auto& s : subs) {
        if (s.empty()) continue;
        const auto& e = s.elements();
        CHECK(e.back() - e.front() + 1 == static_cast<Element>(e.size()));
    }
    // every interval shows up
    int count = 0;
    for (Element lo = 0; lo <= 5; ++lo)
        for (Element hi = lo; hi <= 5; ++hi) {
            std::vector<Element> iv;
            for (Element e = lo; e <= hi; ++e) iv.push_back(e);
            if (std::find(subs.begin(), subs.end(), ElementSet(iv)) != subs.end())
                ++count;
        }
    CHECK(count == 21);
}

TEST_CASE("one-element algebra has the two trivial subalgebras") {
    const FiniteAlgebra one(Signature({{"f", 1}}), 1, {{0}});
    const std::vector<ElementSet> want{ElementSet(), ElementSet::of({0})};
    CHECK(enumerate_subalgebras(one) == want);
}

TEST_CASE("subalgebra enumeration equals brute-force subset filtering") {
    std::mt19937 rng(515253);
    const Signature sigs[] = {Signature({{"f", 1}}), Signature({{"g", 2}}),
                              Signature({{"f", 1}, {"g", 2}})};
    for (int trial = 0; trial < 90; ++trial) {
        const int n = 1 + trial % 5;
        const FiniteAlgebra alg = random_algebra(rng, n, sigs[trial % 3]);
        // oracle: a subset is a subalgebra universe iff it equals its closure
        std::vector<ElementSet> expected;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<Element> subset;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) subset.push_back(i);
            const ElementSet candidate(subset);
            if (oracle_closure(alg, candidate) == candidate)
                expected.push_back(candidate);
        }
        std::sort(expected.begin(), expected.end(), ElementSet::canonical_less);
        CHECK(enumerate_subalgebras(alg) == expected);
    }
}

TEST_CASE("subalgebra families are intersection closed") {
    std::mt19937 rng(7);
    const Signature sig({{"g", 2}});
    for (int trial = 0; trial < 60; ++trial) {
        const FiniteAlgebra alg = random_algebra(rng, 1 + trial % 5, sig);
        const auto subs = enumerate_subalgebras(alg);
        for (const auto& a : subs)
            for (const auto& b : subs) {
                const ElementSet meet = set_intersection(a, b);
                CHECK(std::find(subs.begin(), subs.end(), meet) != subs.end());
            }
    }
}

TEST_CASE("full enumeration refuses oversized universes") {
    // identity algebra on 21 points: every subset is closed
    const int n = 21;
    std::vector<Element> table(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) table[static_cast<std::size_t>(i)] = i;
    const FiniteAlgebra big(Signature({{"f", 1}}), n, {std::move(table)});
    CHECK_THROWS_AS(enumerate_subalgebras(big), std::length_error);
    SubalgebraOptions opts;
    opts.singletons_only = true;
    const auto singles = enumerate_subalgebras(big, opts);
    CHECK(singles.size() == static_cast<std::size_t>(n) + 1);  // {} and each {a}
}

TEST_CASE("idempotents read off the tables") {
    const FiniteAlgebra a7 = std::get<FiniteAlgebra>(catalog("dlimit-trunc(7)"));
    CHECK(idempotents(a7) == full_universe(8));

    const FiniteAlgebra flip(Signature({{"g", 2}}), 2, {{1, 0, 0, 0}});
    CHECK(idempotents(flip) == ElementSet());

    const FiniteAlgebra z3 = std::get<FiniteAlgebra>(catalog("zmod(3)"));
    CHECK(idempotents(z3) == ElementSet::of({0}));
}

TEST_CASE("fixed points of unary algebras") {
    const FiniteAlgebra p9 = std::get<FiniteAlgebra>(catalog("predecessor-trunc(9)"));
    CHECK(fixed_points(p9) == ElementSet::of({0}));

    const FiniteAlgebra swap = std::get<FiniteAlgebra>(catalog("swap2"));
    CHECK(fixed_points(swap) == ElementSet());

    const FiniteAlgebra ident(Signature({{"f", 1}}), 2, {{0, 1}});
    CHECK(fixed_points(ident) == ElementSet::of({0, 1}));

    const FiniteAlgebra z3 = std::get<FiniteAlgebra>(catalog("zmod(3)"));
    CHECK_THROWS_AS(fixed_points(z3), std::invalid_argument);
}

TEST_CASE("restriction relabels a closed subset") {
    const FiniteAlgebra a5 = std::get<FiniteAlgebra>(catalog("dlimit-trunc(5)"));
    const auto restricted = restrict_to_closed(a5, ElementSet::of({2, 3, 4}));
    CHECK(restricted.algebra.size() == 3);
    CHECK(restricted.original_of == std::vector<Element>{2, 3, 4});
    // f(2,4)=3 becomes f(0,2)=1 after relabelling
    const std::vector<Element> args{0, 2};
    CHECK(restricted.algebra.apply(0, args) == 1);
    CHECK_THROWS_AS(restrict_to_closed(a5, ElementSet::of({2, 4})),
                    std::invalid_argument);
}
