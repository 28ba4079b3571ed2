#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "ralg/topology.hpp"

using namespace ralg;
using namespace ralg::testing;

namespace {

ElementSet complement_of(const ElementSet& u, int n) {
    std::vector<Element> rest;
    for (Element a = 0; a < n; ++a)
        if (!u.contains(a)) rest.push_back(a);
    return ElementSet(std::move(rest));
}

}  // namespace

TEST_CASE("smallest opens are the generated subalgebras") {
    const auto p3 = std::get<FiniteAlgebra>(catalog("predecessor-trunc(3)"));
    const auto basis = TopologyBasis::from_algebra(p3);
    CHECK(smallest_open(basis, 2) == ElementSet::of({0, 1, 2}));
    CHECK(smallest_open(basis, 0) == ElementSet::of({0}));

    const auto d5 = std::get<FiniteAlgebra>(catalog("dlimit-trunc(5)"));
    const auto dbasis = TopologyBasis::from_algebra(d5);
    CHECK(smallest_open(dbasis, 3) == ElementSet::of({3}));  // 3 is idempotent
}

TEST_CASE("smallest open equals closure on sampled algebras") {
    std::mt19937 rng(606);
    const Signature sigs[] = {Signature({{"f", 1}}), Signature({{"g", 2}}),
                              Signature({{"f", 1}, {"g", 2}})};
    for (int trial = 0; trial < 90; ++trial) {
        const int n = 1 + trial % 5;
        const FiniteAlgebra alg = random_algebra(rng, n, sigs[trial % 3]);
        const auto basis = TopologyBasis::from_algebra(alg);
        for (Element a = 0; a < n; ++a)
            CHECK(smallest_open(basis, a) == closure(alg, ElementSet::of({a})));
    }
}

TEST_CASE("basis families contain the trivial opens and all intersections") {
    std::mt19937 rng(607);
    const Signature sig({{"g", 2}});
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 5;
        const FiniteAlgebra alg = random_algebra(rng, n, sig);
        const auto basis = TopologyBasis::from_algebra(alg);
        const auto& opens = basis.basic_opens();
        CHECK(std::find(opens.begin(), opens.end(), ElementSet()) != opens.end());
        CHECK(std::find(opens.begin(), opens.end(), complement_of(ElementSet(), n)) !=
              opens.end());
        for (const auto& a : opens)
            for (const auto& b : opens)
                CHECK(basis.is_basic(set_intersection(a, b)));
    }
}

TEST_CASE("openness means containing each point's smallest open") {
    const auto p3 = std::get<FiniteAlgebra>(catalog("predecessor-trunc(3)"));
    const auto basis = TopologyBasis::from_algebra(p3);
    CHECK(is_open(basis, ElementSet::of({0, 1})));
    CHECK_FALSE(is_open(basis, ElementSet::of({1, 2, 3})));
    CHECK(is_open(basis, ElementSet()));
}

TEST_CASE("clopen checks on basic opens") {
    const auto p3 = std::get<FiniteAlgebra>(catalog("predecessor-trunc(3)"));
    const auto pbasis = TopologyBasis::from_algebra(p3);
    CHECK_FALSE(is_clopen_basic(pbasis, ElementSet::of({0})));
    CHECK_THROWS_AS(is_clopen_basic(pbasis, ElementSet::of({1, 2})),
                    std::invalid_argument);

    const FiniteAlgebra ident(Signature({{"f", 1}}), 2, {{0, 1}});
    const auto ibasis = TopologyBasis::from_algebra(ident);
    CHECK(is_clopen_basic(ibasis, ElementSet::of({0})));

    const auto d3 = std::get<FiniteAlgebra>(catalog("dlimit-trunc(3)"));
    const auto dbasis = TopologyBasis::from_algebra(d3);
    CHECK(is_clopen_basic(dbasis, ElementSet::of({0, 1})));  // {2,3} is open too
}

TEST_CASE("fixed points are dense exactly on Ramsey unary algebras") {
    const auto p6 = std::get<FiniteAlgebra>(catalog("predecessor-trunc(6)"));
    CHECK(fixed_point_density(p6).dense);

    const auto swap = std::get<FiniteAlgebra>(catalog("swap2"));
    const auto report = fixed_point_density(swap);
    CHECK_FALSE(report.dense);
    CHECK(report.failing_point == 0);

    const FiniteAlgebra ident(Signature({{"f", 1}}), 3, {{0, 1, 2}});
    CHECK(fixed_point_density(ident).dense);

    CHECK_THROWS_AS(fixed_point_density(std::get<FiniteAlgebra>(catalog("zmod(3)"))),
                    std::invalid_argument);
}

TEST_CASE("density agrees with the unary decision exhaustively") {
    for (int n : {1, 2, 3, 4}) {
        for_each_algebra(n, Signature({{"f", 1}}), [&](const FiniteAlgebra& alg) {
            CHECK(fixed_point_density(alg).dense ==
                  (decide_unary_finite(alg).status == RamseyStatus::Ramsey));
        });
    }
    for (int n : {1, 2, 3}) {
        for_each_algebra(n, Signature({{"f", 1}, {"g", 1}}),
                         [&](const FiniteAlgebra& alg) {
                             CHECK(fixed_point_density(alg).dense ==
                                   (decide_unary_finite(alg).status ==
                                    RamseyStatus::Ramsey));
                         });
    }
}

TEST_CASE("the fixed-point subspace is discrete") {
    std::mt19937 rng(608);
    const Signature sig({{"f", 1}, {"g", 1}});
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 4;
        const FiniteAlgebra alg = random_algebra(rng, n, sig);
        const ElementSet fixed = fixed_points(alg);
        const auto basis = TopologyBasis::from_algebra(alg);
        for (Element s : fixed)
            CHECK(set_intersection(smallest_open(basis, s), fixed) ==
                  ElementSet::of({s}));
    }
}

TEST_CASE("clopen lifts report Ramsey only with two Ramsey sides") {
    const auto d3 = std::get<FiniteAlgebra>(catalog("dlimit-trunc(3)"));
    const auto lift = clopen_ramsey_lift(d3);
    CHECK(lift.applicable);
    CHECK(lift.status == RamseyStatus::Ramsey);
    CHECK(decide_finite(d3).status == RamseyStatus::Ramsey);

    const auto p3 = std::get<FiniteAlgebra>(catalog("predecessor-trunc(3)"));
    CHECK_FALSE(clopen_ramsey_lift(p3).applicable);  // no nontrivial clopen

    const FiniteAlgebra ident(Signature({{"f", 1}}), 2, {{0, 1}});
    const auto ilift = clopen_ramsey_lift(ident);
    CHECK(ilift.applicable);
    CHECK(ilift.split == ElementSet::of({0}));
}

TEST_CASE("clopen lifts never contradict the decision procedure") {
    std::mt19937 rng(609);
    const Signature sigs[] = {Signature({{"f", 1}}), Signature({{"g", 2}})};
    int applicable = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + trial % 4;
        const FiniteAlgebra alg = random_algebra(rng, n, sigs[trial % 2]);
        const auto lift = clopen_ramsey_lift(alg);
        if (lift.applicable) {
            ++applicable;
            CHECK(decide_finite(alg).status == RamseyStatus::Ramsey);
        }
    }
    CHECK(applicable > 0);
}

TEST_CASE("a covering family of Ramsey proper subalgebras forces Ramsey") {
    // finite reading of the compact-cover condition, as a consistency check
    std::mt19937 rng(610);
    const Signature sig({{"g", 2}});
    int covered_cases = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 2 + trial % 3;
        const FiniteAlgebra alg = random_algebra(rng, n, sig);
        const auto subs = enumerate_subalgebras(alg);
        std::vector<Element> seen;
        bool all_ramsey = true;
        for (const auto& u : subs) {
            if (u.empty() || static_cast<int>(u.size()) == n) continue;
            seen.insert(seen.end(), u.begin(), u.end());
            if (decide_finite(restrict_to_closed(alg, u).algebra).status !=
                RamseyStatus::Ramsey)
                all_ramsey = false;
        }
        const bool covers = ElementSet(seen).size() == static_cast<std::size_t>(n);
        if (covers && all_ramsey) {
            ++covered_cases;
            CHECK(decide_finite(alg).status == RamseyStatus::Ramsey);
        }
    }
    CHECK(covered_cases > 0);
}
