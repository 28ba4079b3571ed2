#include "doctest.h"

#include <algorithm>
#include <set>

#include "ralg/closure.hpp"
#include "ralg/constructions.hpp"
#include "ralg/term.hpp"

using namespace ralg;

namespace {

// Independent generator used as an oracle: builds every tree with at most
// max_nodes internal nodes level by level, dedups by printed form, then
// filters on width. Deliberately ignores the production enumerator's
// composition scheme.
std::set<std::string> oracle_term_strings(const Signature& sig, int max_width,
                                          int max_nodes) {
    std::vector<std::vector<OrderlyTerm>> by_nodes(
        static_cast<std::size_t>(max_nodes) + 1);
    by_nodes[0].push_back(OrderlyTerm::variable());
    for (int nodes = 1; nodes <= max_nodes; ++nodes) {
        for (std::size_t op = 0; op < sig.size(); ++op) {
            const int k = sig[op].arity;
            // children chosen by node-count composition of nodes-1
            std::vector<OrderlyTerm> children;
            auto rec = [&](auto&& self, int slot, int left) -> void {
                if (slot == k) {
                    if (left == 0) {
                        OrderlyTerm t = OrderlyTerm::apply(op, children);
                        if (t.width() <= max_width)
                            by_nodes[static_cast<std::size_t>(nodes)].push_back(t);
                    }
                    return;
                }
                for (int c = 0; c <= left; ++c) {
                    for (const auto& sub : by_nodes[static_cast<std::size_t>(c)]) {
                        children.push_back(sub);
                        self(self, slot + 1, left - c);
                        children.pop_back();
                    }
                }
            };
            rec(rec, 0, nodes - 1);
        }
    }
    std::set<std::string> out;
    for (const auto& bucket : by_nodes)
        for (const auto& t : bucket)
            if (t.width() <= max_width) out.insert(t.to_string(sig));
    return out;
}

const Signature kBinary({{"g", 2}});
const Signature kUnary({{"f", 1}});

}  // namespace

TEST_CASE("term evaluation follows the operation tables") {
    const FiniteAlgebra z3 = std::get<FiniteAlgebra>(catalog("zmod(3)"));
    const OrderlyTerm plus =
        OrderlyTerm::apply(0, {OrderlyTerm::variable(), OrderlyTerm::variable()});
    const std::vector<Element> args{1, 2};
    CHECK(evaluate_term(z3, plus, args) == 0);
}

TEST_CASE("the identity term returns its argument") {
    const RuleAlgebra pred = std::get<RuleAlgebra>(catalog("predecessor-rule"));
    const std::vector<Element> args{7};
    CHECK(evaluate_term(pred, OrderlyTerm::variable(), args) == 7);
}

TEST_CASE("nested evaluation over the dlimit rule") {
    // f(5,9)=8, then f(2,8)=7
    const RuleAlgebra dlimit = std::get<RuleAlgebra>(catalog("dlimit-rule"));
    const OrderlyTerm inner =
        OrderlyTerm::apply(0, {OrderlyTerm::variable(), OrderlyTerm::variable()});
    const OrderlyTerm t = OrderlyTerm::apply(0, {OrderlyTerm::variable(), inner});
    const std::vector<Element> args{2, 5, 9};
    CHECK(evaluate_term(dlimit, t, args) == 7);
}

TEST_CASE("evaluation rejects arity mismatches") {
    const FiniteAlgebra z3 = std::get<FiniteAlgebra>(catalog("zmod(3)"));
    const std::vector<Element> args{1, 2};
    CHECK_THROWS_AS(evaluate_term(z3, OrderlyTerm::variable(), args),
                    std::invalid_argument);
    // term symbol outside the signature
    const OrderlyTerm bad =
        OrderlyTerm::apply(3, {OrderlyTerm::variable(), OrderlyTerm::variable()});
    CHECK_THROWS_AS(evaluate_term(z3, bad, args), std::invalid_argument);
}

TEST_CASE("binary enumeration up to width 3") {
    const auto terms = enumerate_orderly_terms(kBinary, 3, 2);
    std::set<std::string> got;
    for (const auto& t : terms) got.insert(t.to_string(kBinary));
    const std::set<std::string> want{"x0", "g(x0,x1)", "g(g(x0,x1),x2)",
                                     "g(x0,g(x1,x2))"};
    CHECK(got == want);
    CHECK(terms.size() == want.size());
}

TEST_CASE("unary enumeration yields iterated composites") {
    const auto terms = enumerate_orderly_terms(kUnary, 1, 3);
    std::vector<std::string> got;
    for (const auto& t : terms) got.push_back(t.to_string(kUnary));
    const std::vector<std::string> want{"x0", "f(x0)", "f(f(x0))", "f(f(f(x0)))"};
    CHECK(got == want);
}

TEST_CASE("empty signature yields only the identity") {
    const auto terms = enumerate_orderly_terms(Signature(), 5, 5);
    REQUIRE(terms.size() == 1);
    CHECK(terms.front().is_variable());
}

TEST_CASE("binary term counts per width match the Catalan numbers") {
    const long long catalan[]{1, 1, 2, 5, 14, 42, 132, 429};
    // a width-m tree over one binary symbol has exactly m-1 internal nodes
    for (int m = 1; m <= 8; ++m) {
        const auto terms = enumerate_orderly_terms(kBinary, m, m - 1);
        long long width_m = 0;
        for (const auto& t : terms)
            if (t.width() == m) ++width_m;
        CHECK(width_m == catalan[m - 1]);
    }
}

TEST_CASE("enumeration agrees with the independent oracle") {
    const Signature mixed({{"f", 1}, {"g", 2}});
    for (const auto* sig : {&kBinary, &kUnary, &mixed}) {
        for (int mw : {1, 2, 3, 4}) {
            for (int ms : {0, 1, 2, 3}) {
                const auto got_terms = enumerate_orderly_terms(*sig, mw, ms);
                std::set<std::string> got;
                for (const auto& t : got_terms) got.insert(t.to_string(*sig));
                CHECK(got.size() == got_terms.size());  // no duplicates
                CHECK(got == oracle_term_strings(*sig, mw, ms));
                CHECK(count_orderly_terms(*sig, mw, ms) ==
                      static_cast<long long>(got_terms.size()));
            }
        }
    }
}

TEST_CASE("enumeration order is (width, nodes, canonical)") {
    const auto terms = enumerate_orderly_terms(kBinary, 4, 3);
    for (std::size_t i = 1; i < terms.size(); ++i)
        CHECK(OrderlyTerm::canonical_less(terms[i - 1], terms[i]));
}

TEST_CASE("unary terms evaluate like sequential application") {
    const FiniteAlgebra p5 = std::get<FiniteAlgebra>(catalog("predecessor-trunc(5)"));
    const auto terms = enumerate_orderly_terms(p5.signature(), 1, 4);
    for (const auto& t : terms) {
        for (Element a = 0; a < p5.size(); ++a) {
            // walk the unary spine bottom-up
            std::vector<std::size_t> spine;
            const OrderlyTerm* node = &t;
            while (!node->is_variable()) {
                spine.push_back(node->symbol());
                node = &node->children().front();
            }
            Element expect = a;
            std::vector<Element> arg(1);
            for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
                arg[0] = expect;
                expect = p5.apply(*it, arg);
            }
            const std::vector<Element> args{a};
            CHECK(evaluate_term(p5, t, args) == expect);
        }
    }
}

TEST_CASE("term values stay in the closure of their arguments") {
    const FiniteAlgebra a5 = std::get<FiniteAlgebra>(catalog("dlimit-trunc(5)"));
    const auto terms = enumerate_orderly_terms(a5.signature(), 3, 2);
    std::vector<Element> args;
    for (const auto& t : terms) {
        args.assign(static_cast<std::size_t>(t.width()), 0);
        // a few deterministic argument tuples
        for (int trial = 0; trial < 5; ++trial) {
            for (std::size_t i = 0; i < args.size(); ++i)
                args[i] = (trial + 2 * static_cast<Element>(i) + 1) % a5.size();
            const Element v = evaluate_term(a5, t, args);
            CHECK(closure(a5, ElementSet(args)).contains(v));
        }
    }
}
