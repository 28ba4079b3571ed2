#include "ralg/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ralg/closure.hpp"
#include "ralg/constructions.hpp"
#include "ralg/decision.hpp"
#include "ralg/reduction.hpp"
#include "ralg/topology.hpp"

namespace ralg {

namespace {

// ---------------------------------------------------------------------------
// enumeration helpers

template <typename F>
void for_each_algebra(int n, const Signature& sig, F&& fn) {
    std::vector<std::size_t> lengths;
    std::size_t total = 0;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        lengths.push_back(FiniteAlgebra::table_length(n, sig[op].arity));
        total += lengths.back();
    }
    std::vector<Element> flat(total, 0);
    while (true) {
        std::vector<std::vector<Element>> tables;
        std::size_t at = 0;
        for (std::size_t len : lengths) {
            tables.emplace_back(flat.begin() + static_cast<long>(at),
                                flat.begin() + static_cast<long>(at + len));
            at += len;
        }
        fn(FiniteAlgebra(sig, n, std::move(tables)));
        std::size_t i = flat.size();
        for (; i-- > 0;) {
            if (++flat[i] < n) break;
            flat[i] = 0;
        }
        if (i == SIZE_MAX) break;
    }
}

std::vector<CongruencePartition> all_partitions(int n) {
    std::vector<CongruencePartition> out;
    std::vector<int> block_of(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int e, int used) -> void {
        if (e == n) {
            out.push_back(CongruencePartition::from_block_of(block_of));
            return;
        }
        for (int b = 0; b <= used; ++b) {
            block_of[static_cast<std::size_t>(e)] = b;
            self(self, e + 1, std::max(used, b + 1));
        }
    };
    rec(rec, 0, 0);
    return out;
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

// Counters plus the first failure description.
struct Tally {
    long long cases = 0;
    long long failures = 0;
    std::string first;

    void require(bool ok, const std::string& what) {
        ++cases;
        if (ok) return;
        ++failures;
        if (first.empty()) first = what;
    }
};

CheckResult finish(const std::string& name, const Tally& tally,
                   const std::string& extra = "") {
    CheckResult result;
    result.name = name;
    result.pass = tally.failures == 0 && tally.cases > 0;
    std::ostringstream detail;
    detail << tally.cases << " cases";
    if (!extra.empty()) detail << ", " << extra;
    if (tally.failures)
        detail << ", " << tally.failures << " failures, first: " << tally.first;
    result.detail = detail.str();
    return result;
}

// ---------------------------------------------------------------------------
// 1. every associative binary table is Ramsey

CheckResult check_semigroup_oracle() {
    Tally tally;
    long long associative = 0;
    for (int n : {2, 3}) {
        for_each_algebra(n, Signature({{"g", 2}}), [&](const FiniteAlgebra& alg) {
            for (Element a = 0; a < n; ++a)
                for (Element b = 0; b < n; ++b)
                    for (Element c = 0; c < n; ++c) {
                        const std::vector<Element> ab{a, b}, bc{b, c};
                        const std::vector<Element> left{alg.apply(0, ab), c};
                        const std::vector<Element> right{a, alg.apply(0, bc)};
                        if (alg.apply(0, left) != alg.apply(0, right)) return;
                    }
            ++associative;
            tally.require(decide_finite_status(alg) == RamseyStatus::Ramsey,
                          "associative table not Ramsey (n=" + std::to_string(n) +
                              ")");
        });
    }
    return finish("semigroup-oracle", tally,
                  std::to_string(associative) + " associative tables");
}

// ---------------------------------------------------------------------------
// 2. the direct decision and the all-subalgebras transcription agree

CheckResult check_decide_equivalence() {
    Tally tally;
    for (int n : {1, 2, 3}) {
        for (const Signature& sig :
             {Signature({{"f", 1}}), Signature({{"f", 1}, {"g", 1}})}) {
            for_each_algebra(n, sig, [&](const FiniteAlgebra& alg) {
                tally.require(decide_finite(alg).status ==
                                  decide_finite_via_all_subalgebras(alg).status,
                              "unary disagreement at n=" + std::to_string(n));
            });
        }
    }
    std::mt19937 rng(0x5eed0002);
    const Signature sigs[] = {Signature({{"g", 2}}),
                              Signature({{"f", 1}, {"g", 2}})};
    for (int trial = 0; trial < 10'000; ++trial) {
        const int n = 2 + trial % 3;
        const FiniteAlgebra alg = random_algebra(rng, n, sigs[trial % 2]);
        tally.require(decide_finite(alg).status ==
                          decide_finite_via_all_subalgebras(alg).status,
                      "binary-signature disagreement at n=" + std::to_string(n));
    }
    return finish("decide-equivalence", tally);
}

// ---------------------------------------------------------------------------
// 3. unary decision agrees with fixed-point density

CheckResult check_unary_characterization() {
    Tally tally;
    for (int n : {1, 2, 3, 4}) {
        for (const Signature& sig :
             {Signature({{"f", 1}}), Signature({{"f", 1}, {"g", 1}})}) {
            for_each_algebra(n, sig, [&](const FiniteAlgebra& alg) {
                const bool ramsey =
                    decide_unary_finite(alg).status == RamseyStatus::Ramsey;
                tally.require(fixed_point_density(alg).dense == ramsey,
                              "density mismatch at n=" + std::to_string(n));
            });
        }
    }
    return finish("unary-characterization", tally);
}

// ---------------------------------------------------------------------------
// 4. exact regressions for the named algebras

CheckResult check_paper_regressions() {
    Tally tally;
    for (int n = 1; n <= 1000; ++n) {
        const auto alg = std::get<FiniteAlgebra>(
            catalog("predecessor-trunc(" + std::to_string(n) + ")"));
        const auto verdict = decide_unary_finite(alg);
        bool ok = verdict.status == RamseyStatus::Ramsey;
        if (ok)
            for (const auto& cert : verdict.certificates)
                ok = ok &&
                     static_cast<Element>(std::get<Word>(cert.route).size()) ==
                         cert.element &&
                     cert.target == 0;
        if (ok && (n <= 100 || n == 1000)) ok = verify_verdict(alg, verdict);
        tally.require(ok, "predecessor-trunc(" + std::to_string(n) + ")");
    }
    for (int n = 0; n <= 50; ++n) {
        const auto alg = std::get<FiniteAlgebra>(
            catalog("dlimit-trunc(" + std::to_string(n) + ")"));
        const bool every_idem =
            idempotents(alg).size() == static_cast<std::size_t>(n) + 1;
        tally.require(
            every_idem && decide_finite(alg).status == RamseyStatus::Ramsey,
            "dlimit-trunc(" + std::to_string(n) + ")");
    }
    const auto swap = std::get<FiniteAlgebra>(catalog("swap2"));
    tally.require(decide_unary_finite(swap).status == RamseyStatus::NotRamsey,
                  "swap2 should be NotRamsey");
    const auto z = std::get<RuleAlgebra>(catalog("z-shift-rule"));
    for (Element start : {0, 3, 11})
        tally.require(
            search_unary_rule(z, start).status == RamseyStatus::NotRamsey,
            "z-shift-rule should be NotRamsey");
    return finish("paper-regressions", tally);
}

// ---------------------------------------------------------------------------
// 5. range bound for dlimit terms plus the non-associativity instance

CheckResult check_dlimit_claim() {
    Tally tally;
    tally.require(verify_dlimit_range(12, 4, 3).ok,
                  "range bound failed on <0..12> at width 4, size 3");
    const auto dlimit = std::get<RuleAlgebra>(catalog("dlimit-rule"));
    const OrderlyTerm pair =
        OrderlyTerm::apply(0, {OrderlyTerm::variable(), OrderlyTerm::variable()});
    const OrderlyTerm left = OrderlyTerm::apply(0, {pair, OrderlyTerm::variable()});
    const OrderlyTerm right = OrderlyTerm::apply(0, {OrderlyTerm::variable(), pair});
    const std::vector<Element> args{0, 0, 3};
    tally.require(evaluate_term(dlimit, left, args) == 2, "f(f(0,0),3) should be 2");
    tally.require(evaluate_term(dlimit, right, args) == 1, "f(0,f(0,3)) should be 1");
    return finish("dlimit-claim", tally);
}

// ---------------------------------------------------------------------------
// 6. parity witness: no short reduction is homogeneous for the evens

CheckResult check_dlimit_parity() {
    Tally tally;
    const auto report = verify_dlimit_parity_witness(10, 3, 2);
    tally.require(report.ok, report.detail);
    return finish("dlimit-parity", tally,
                  std::to_string(report.outputs_checked) + " outputs, " +
                      std::to_string(report.pairs_checked) + " parity pairs");
}

// ---------------------------------------------------------------------------
// 7. preservation suite

// Sweeps every one-point extension of a Ramsey base with one binary symbol.
// Old tuples keep their table cells, so the closure of an old element never
// reads a patched cell and its idempotent survives from the base; per
// extension it is enough to chase the closure of the new point. Every 4999th
// extension is re-decided from scratch to validate that reduction.
void sweep_binary_extensions(const FiniteAlgebra& base, Tally& tally) {
    const int m = base.size() + 1;
    const int alpha = base.size();
    std::vector<Element> table(static_cast<std::size_t>(m) * m, 0);
    for (Element a = 0; a < base.size(); ++a)
        for (Element b = 0; b < base.size(); ++b) {
            const std::vector<Element> args{a, b};
            table[static_cast<std::size_t>(a * m + b)] = base.apply(0, args);
        }
    std::vector<int> cells;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a == alpha || b == alpha) cells.push_back(a * m + b);
    for (int c : cells) table[static_cast<std::size_t>(c)] = 0;

    const auto alpha_reaches_idempotent = [&]() {
        if (table[static_cast<std::size_t>(alpha * m + alpha)] == alpha)
            return true;
        unsigned set = 1u << alpha;
        for (;;) {
            unsigned grown = set;
            for (int i = 0; i < m; ++i) {
                if (!(set >> i & 1)) continue;
                for (int j = 0; j < m; ++j) {
                    if (!(set >> j & 1)) continue;
                    grown |= 1u << table[static_cast<std::size_t>(i * m + j)];
                }
            }
            if (grown == set) break;
            set = grown;
        }
        for (int e = 0; e < m; ++e)
            if ((set >> e & 1) && table[static_cast<std::size_t>(e * m + e)] == e)
                return true;
        return false;
    };

    long long count = 0;
    long long mismatches = 0;
    long long not_ramsey = 0;
    for (;;) {
        ++count;
        const bool fast = alpha_reaches_idempotent();
        if (count % 4999 == 1) {
            const FiniteAlgebra ext(base.signature(), m, {table});
            const bool full = decide_finite_status(ext) == RamseyStatus::Ramsey;
            if (full != fast) ++mismatches;
        }
        if (!fast) ++not_ramsey;
        std::size_t i = cells.size();
        for (; i-- > 0;) {
            auto& v = table[static_cast<std::size_t>(cells[i])];
            if (++v < m) break;
            v = 0;
        }
        if (i == SIZE_MAX) break;
    }
    tally.cases += count;
    tally.require(mismatches == 0, "fast extension check disagreed with decide");
    tally.require(not_ramsey == 0,
                  "a one-point extension of a Ramsey base is not Ramsey");
}

CheckResult check_preservation_suite() {
    Tally tally;

    // family: exhaustive Ramsey unary algebras (<= 2 symbols, n <= 4)...
    std::vector<FiniteAlgebra> unary_small;  // size <= 3, for products
    std::vector<FiniteAlgebra> family;
    for (int n : {1, 2, 3, 4}) {
        for (const Signature& sig :
             {Signature({{"f", 1}}), Signature({{"f", 1}, {"g", 1}})}) {
            for_each_algebra(n, sig, [&](const FiniteAlgebra& alg) {
                if (decide_finite_status(alg) != RamseyStatus::Ramsey) return;
                family.push_back(alg);
                if (n <= 3) unary_small.push_back(alg);
            });
        }
    }
    const std::size_t unary_count = family.size();

    // ...plus 500 sampled Ramsey tables over one binary symbol
    std::mt19937 rng(0x5eed0007);
    const Signature binary({{"g", 2}});
    std::vector<FiniteAlgebra> binary_small;  // size <= 3, for products
    {
        int want = 500;
        int size_cycle = 0;
        while (want > 0) {
            const int n = 2 + size_cycle++ % 3;
            const FiniteAlgebra alg = random_algebra(rng, n, binary);
            if (decide_finite_status(alg) != RamseyStatus::Ramsey) continue;
            family.push_back(alg);
            if (n <= 3) binary_small.push_back(alg);
            --want;
        }
    }

    for (const FiniteAlgebra& alg : family) {
        const int n = alg.size();
        // every congruence quotient stays Ramsey
        for (const auto& part : all_partitions(n)) {
            if (!check_congruence(alg, part).compatible) continue;
            tally.require(decide_finite_status(quotient(alg, part).algebra) ==
                              RamseyStatus::Ramsey,
                          "quotient lost the Ramsey property");
        }
        // every relabelling preserves the verdict
        std::vector<Element> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), Element{0});
        do {
            tally.require(decide_finite_status(relabel(alg, perm)) ==
                              RamseyStatus::Ramsey,
                          "relabelling lost the Ramsey property");
        } while (std::next_permutation(perm.begin(), perm.end()));
        // every closed subset restricts to a Ramsey algebra
        for (const auto& sub : enumerate_subalgebras(alg)) {
            if (sub.empty()) continue;
            tally.require(
                decide_finite_status(restrict_to_closed(alg, sub).algebra) ==
                    RamseyStatus::Ramsey,
                "closed subset lost the Ramsey property");
        }
        // every one-point extension stays Ramsey
        if (alg.signature().size() == 1 && alg.signature()[0].arity == 2) {
            sweep_binary_extensions(alg, tally);
        } else {
            for (const auto& ext : enumerate_one_point_extensions(alg))
                tally.require(decide_finite_status(ext) == RamseyStatus::Ramsey,
                              "one-point extension lost the Ramsey property");
        }
    }

    // products of two Ramsey factors of size <= 3 within one signature
    auto product_block = [&](const std::vector<FiniteAlgebra>& members) {
        for (const auto& a : members)
            for (const auto& b : members) {
                if (!(a.signature() == b.signature())) continue;
                tally.require(decide_finite_status(product({a, b})) ==
                                  RamseyStatus::Ramsey,
                              "product of Ramsey factors is not Ramsey");
            }
    };
    product_block(unary_small);
    product_block(binary_small);

    return finish("preservation-suite", tally,
                  std::to_string(unary_count) + " unary + 500 binary members");
}

// ---------------------------------------------------------------------------
// 8. the worked additive reduction and the <1,3> FR set

CheckResult check_worked_reduction() {
    Tally tally;
    const RuleAlgebra plus(Signature({{"add", 2}}),
                           {[](std::span<const Element> a) { return a[0] + a[1]; }},
                           "nat-plus");
    const SequencePrefix odds = SequencePrefix::from_rule("odds", 12);
    const OrderlyTerm two =
        OrderlyTerm::apply(0, {OrderlyTerm::variable(), OrderlyTerm::variable()});
    const OrderlyTerm three = OrderlyTerm::apply(0, {two, OrderlyTerm::variable()});
    ReductionWitness witness;
    witness.steps.push_back({two, {0, 2}});
    witness.steps.push_back({two, {3, 4}});
    witness.steps.push_back({three, {7, 8, 10}});
    witness.steps.push_back({OrderlyTerm::variable(), {11}});
    witness.output = {6, 16, 53, 23};
    tally.require(check_reduction(plus, odds, witness).ok,
                  "the worked reduction was rejected");

    const SequencePrefix pair({1, 3});
    tally.require(fr_prefix(plus, pair, 2, 1) == ElementSet::of({1, 3, 4}),
                  "fr(<1,3>) should be {1,3,4}");
    return finish("worked-reduction", tally);
}

// ---------------------------------------------------------------------------
// 9. bounded evidence from finite windows of the infinite product

CheckResult check_infinite_product_evidence() {
    Tally tally;
    const auto pred = std::get<RuleAlgebra>(catalog("predecessor-rule"));
    for (int w = 2; w <= 12; ++w) {
        const RuleProduct window = rule_product({pred}, w);
        // the diagonal reaches the zero window in exactly w-1 applications
        Element e = window.diagonal();
        int steps = 0;
        while (e != 0 && steps <= w) {
            const std::vector<Element> arg{e};
            e = window.algebra.apply(0, arg);
            ++steps;
        }
        tally.require(e == 0 && steps == w - 1,
                      "window width " + std::to_string(w) +
                          " should zero out in exactly " + std::to_string(w - 1) +
                          " steps");

        RuleSearchOptions shallow;
        shallow.max_depth = w - 2;
        tally.require(search_unary_rule(window.algebra, window.diagonal(), shallow)
                              .status == RamseyStatus::Unknown,
                      "shallow search should stay Unknown at width " +
                          std::to_string(w));
        RuleSearchOptions enough;
        enough.max_depth = w - 1;
        const auto found =
            search_unary_rule(window.algebra, window.diagonal(), enough);
        tally.require(found.status == RamseyStatus::Ramsey && found.target == 0 &&
                          static_cast<int>(found.word->size()) == w - 1,
                      "full-depth search should reach the zero window at width " +
                          std::to_string(w));
    }
    return finish("infinite-product-evidence", tally);
}

// ---------------------------------------------------------------------------
// 10. Moore family and topology consistency

CheckResult check_moore_topology() {
    Tally tally;
    std::vector<FiniteAlgebra> members;
    for (int n = 0; n <= 4; ++n) {
        members.push_back(std::get<FiniteAlgebra>(
            catalog("predecessor-trunc(" + std::to_string(n) + ")")));
        members.push_back(std::get<FiniteAlgebra>(
            catalog("dlimit-trunc(" + std::to_string(n) + ")")));
    }
    for (int n = 1; n <= 5; ++n)
        members.push_back(
            std::get<FiniteAlgebra>(catalog("zmod(" + std::to_string(n) + ")")));
    members.push_back(std::get<FiniteAlgebra>(catalog("swap2")));
    for (int n : {1, 2, 3})
        for_each_algebra(n, Signature({{"f", 1}}),
                         [&](const FiniteAlgebra& alg) { members.push_back(alg); });
    std::mt19937 rng(0x5eed000a);
    const Signature sigs[] = {Signature({{"g", 2}}),
                              Signature({{"f", 1}, {"g", 2}})};
    for (int trial = 0; trial < 300; ++trial)
        members.push_back(random_algebra(rng, 1 + trial % 5, sigs[trial % 2]));

    long long lifts = 0;
    for (const auto& alg : members) {
        const auto basis = TopologyBasis::from_algebra(alg);
        const auto& opens = basis.basic_opens();
        for (const auto& a : opens)
            for (const auto& b : opens)
                tally.require(basis.is_basic(set_intersection(a, b)),
                              "family not intersection closed");
        for (Element a = 0; a < alg.size(); ++a)
            tally.require(
                smallest_open(basis, a) == closure(alg, ElementSet::of({a})),
                "smallest open differs from the generated subalgebra");
        const auto lift = clopen_ramsey_lift(alg);
        if (lift.applicable) {
            ++lifts;
            tally.require(decide_finite_status(alg) == RamseyStatus::Ramsey,
                          "clopen lift contradicted the decision procedure");
        }
    }
    return finish("moore-topology", tally,
                  std::to_string(members.size()) + " algebras, " +
                      std::to_string(lifts) + " clopen lifts");
}

using Check = CheckResult (*)();

const std::vector<std::pair<std::string, Check>>& registry() {
    static const std::vector<std::pair<std::string, Check>> checks{
        {"semigroup-oracle", check_semigroup_oracle},
        {"decide-equivalence", check_decide_equivalence},
        {"unary-characterization", check_unary_characterization},
        {"paper-regressions", check_paper_regressions},
        {"dlimit-claim", check_dlimit_claim},
        {"dlimit-parity", check_dlimit_parity},
        {"preservation-suite", check_preservation_suite},
        {"worked-reduction", check_worked_reduction},
        {"infinite-product-evidence", check_infinite_product_evidence},
        {"moore-topology", check_moore_topology},
    };
    return checks;
}

}  // namespace

std::vector<std::string> regression_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

CheckResult run_regression(const std::string& name) {
    for (const auto& [known, fn] : registry())
        if (known == name) return fn();
    throw std::invalid_argument("unknown regression check '" + name + "'");
}

std::vector<CheckResult> run_regressions(
    const std::function<void(const CheckResult&)>& report) {
    std::vector<CheckResult> results;
    for (const auto& [name, fn] : registry()) {
        results.push_back(fn());
        if (report) report(results.back());
    }
    return results;
}

}  // namespace ralg
