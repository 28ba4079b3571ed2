#pragma once

#include <string>
#include <vector>

#include "ralg/algebra.hpp"

namespace ralg {

/// A term tree in which every variable occurs exactly once and the variables
/// read x0, x1, ... from left to right. Leaves are variables; internal nodes
/// carry signature symbol indices with one child per argument. The bare
/// variable x0 is the identity term.
class OrderlyTerm {
public:
    /// The identity term x0.
    OrderlyTerm() = default;

    static OrderlyTerm variable() { return OrderlyTerm(); }
    static OrderlyTerm apply(std::size_t symbol, std::vector<OrderlyTerm> children);

    bool is_variable() const { return symbol_ < 0; }
    std::size_t symbol() const;
    const std::vector<OrderlyTerm>& children() const { return children_; }

    /// Number of leaves (= number of arguments the term consumes).
    int width() const { return width_; }
    /// Number of internal nodes.
    int node_count() const { return nodes_; }

    std::string to_string(const Signature& sig) const;

    bool operator==(const OrderlyTerm& other) const;
    /// Order by (width, node count, preorder symbol sequence with leaves
    /// before internal nodes).
    static bool canonical_less(const OrderlyTerm& a, const OrderlyTerm& b);

private:
    int symbol_ = -1;  // -1 marks a variable leaf
    std::vector<OrderlyTerm> children_;
    int width_ = 1;
    int nodes_ = 0;

    void preorder(std::vector<int>& out) const;
};

/// Evaluates term t at args, one argument per leaf in left-to-right order.
Element evaluate_term(AlgebraRef alg, const OrderlyTerm& t,
                      std::span<const Element> args);

/// All orderly terms with width <= max_width and node count <= max_nodes,
/// each exactly once, ordered by (width, node count, canonical tree order).
/// An empty signature yields only the identity term.
std::vector<OrderlyTerm> enumerate_orderly_terms(const Signature& sig,
                                                 int max_width, int max_nodes);

/// Number of terms enumerate_orderly_terms would yield, without
/// materializing them.
long long count_orderly_terms(const Signature& sig, int max_width, int max_nodes);

}  // namespace ralg
