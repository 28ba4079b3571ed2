#include "ralg/term.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>

namespace ralg {

OrderlyTerm OrderlyTerm::apply(std::size_t symbol, std::vector<OrderlyTerm> children) {
    if (children.empty())
        throw std::invalid_argument("orderly term node needs at least one child");
    OrderlyTerm t;
    t.symbol_ = static_cast<int>(symbol);
    t.width_ = 0;
    t.nodes_ = 1;
    for (const auto& c : children) {
        t.width_ += c.width_;
        t.nodes_ += c.nodes_;
    }
    t.children_ = std::move(children);
    return t;
}

std::size_t OrderlyTerm::symbol() const {
    if (is_variable()) throw std::logic_error("variable leaf has no symbol");
    return static_cast<std::size_t>(symbol_);
}

std::string OrderlyTerm::to_string(const Signature& sig) const {
    if (is_variable()) return "x0";
    // Leaves are numbered by their left-to-right position.
    int next = 0;
    std::string out;
    auto rec = [&](auto&& self, const OrderlyTerm& t) -> void {
        if (t.is_variable()) {
            out += "x" + std::to_string(next++);
            return;
        }
        out += sig[t.symbol()].name;
        out += '(';
        for (std::size_t i = 0; i < t.children_.size(); ++i) {
            if (i) out += ',';
            self(self, t.children_[i]);
        }
        out += ')';
    };
    rec(rec, *this);
    return out;
}

void OrderlyTerm::preorder(std::vector<int>& out) const {
    out.push_back(symbol_);
    for (const auto& c : children_) c.preorder(out);
}

bool OrderlyTerm::operator==(const OrderlyTerm& other) const {
    if (symbol_ != other.symbol_ || width_ != other.width_ || nodes_ != other.nodes_)
        return false;
    return children_ == other.children_;
}

bool OrderlyTerm::canonical_less(const OrderlyTerm& a, const OrderlyTerm& b) {
    if (a.width_ != b.width_) return a.width_ < b.width_;
    if (a.nodes_ != b.nodes_) return a.nodes_ < b.nodes_;
    std::vector<int> pa, pb;
    a.preorder(pa);
    b.preorder(pb);
    return pa < pb;
}

namespace {

Element eval_rec(AlgebraRef alg, const OrderlyTerm& t,
                 std::span<const Element> args, std::size_t& cursor) {
    if (t.is_variable()) return args[cursor++];
    const Signature& sig = alg.signature();
    if (t.symbol() >= sig.size())
        throw std::invalid_argument("term symbol missing from signature");
    if (sig[t.symbol()].arity != static_cast<int>(t.children().size()))
        throw std::invalid_argument("term node arity mismatch for '" +
                                    sig[t.symbol()].name + "'");
    std::vector<Element> vals;
    vals.reserve(t.children().size());
    for (const auto& c : t.children()) vals.push_back(eval_rec(alg, c, args, cursor));
    return alg.apply(t.symbol(), vals);
}

}  // namespace

Element evaluate_term(AlgebraRef alg, const OrderlyTerm& t,
                      std::span<const Element> args) {
    if (static_cast<int>(args.size()) != t.width())
        throw std::invalid_argument("term of width " + std::to_string(t.width()) +
                                    " applied to " + std::to_string(args.size()) +
                                    " arguments");
    std::size_t cursor = 0;
    return eval_rec(alg, t, args, cursor);
}

namespace {

using Bucket = std::vector<OrderlyTerm>;

// Terms grouped by exact (width, node count), built bottom-up.
class TermTable {
public:
    TermTable(const Signature& sig, int max_width, int max_nodes)
        : sig_(sig), max_width_(max_width), max_nodes_(max_nodes) {}

    const Bucket& bucket(int width, int nodes) {
        auto key = std::make_pair(width, nodes);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        Bucket out;
        if (width == 1 && nodes == 0) out.push_back(OrderlyTerm::variable());
        if (nodes >= 1) {
            for (std::size_t op = 0; op < sig_.size(); ++op) {
                const int k = sig_[op].arity;
                if (k > width) continue;
                std::vector<OrderlyTerm> children;
                compose(op, k, 0, width, nodes - 1, children, out);
            }
        }
        std::sort(out.begin(), out.end(), OrderlyTerm::canonical_less);
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    // Distribute remaining width/nodes over child slots [slot, k).
    void compose(std::size_t op, int k, int slot, int width_left, int nodes_left,
                 std::vector<OrderlyTerm>& children, Bucket& out) {
        if (slot == k) {
            if (width_left == 0 && nodes_left == 0)
                out.push_back(OrderlyTerm::apply(op, children));
            return;
        }
        const int slots_after = k - slot - 1;
        for (int w = 1; w <= width_left - slots_after; ++w) {
            for (int s = 0; s <= nodes_left; ++s) {
                const Bucket& sub = bucket(w, s);
                for (const auto& t : sub) {
                    children.push_back(t);
                    compose(op, k, slot + 1, width_left - w, nodes_left - s,
                            children, out);
                    children.pop_back();
                }
            }
        }
    }

    const Signature& sig_;
    int max_width_;
    int max_nodes_;
    std::map<std::pair<int, int>, Bucket> memo_;
};

}  // namespace

std::vector<OrderlyTerm> enumerate_orderly_terms(const Signature& sig,
                                                 int max_width, int max_nodes) {
    if (max_width < 1) throw std::invalid_argument("max_width must be >= 1");
    if (max_nodes < 0) throw std::invalid_argument("max_nodes must be >= 0");
    TermTable table(sig, max_width, max_nodes);
    std::vector<OrderlyTerm> out;
    for (int w = 1; w <= max_width; ++w)
        for (int s = 0; s <= max_nodes; ++s)
            for (const auto& t : table.bucket(w, s)) out.push_back(t);
    return out;
}

long long count_orderly_terms(const Signature& sig, int max_width, int max_nodes) {
    if (max_width < 1) throw std::invalid_argument("max_width must be >= 1");
    if (max_nodes < 0) throw std::invalid_argument("max_nodes must be >= 0");
    // counts[w][s] = number of terms with exact width w and node count s
    std::vector<std::vector<long long>> counts(
        max_width + 1, std::vector<long long>(max_nodes + 1, 0));
    auto saturating_add = [](long long& acc, long long v) {
        acc = (acc > LLONG_MAX - v) ? LLONG_MAX : acc + v;
    };
    if (max_width >= 1) counts[1][0] = 1;
    for (int w = 1; w <= max_width; ++w) {
        for (int s = 1; s <= max_nodes; ++s) {
            long long total = 0;
            for (std::size_t op = 0; op < sig.size(); ++op) {
                const int k = sig[op].arity;
                if (k > w) continue;
                // ways[slot][width used][nodes used]
                std::vector<std::vector<long long>> ways(
                    w + 1, std::vector<long long>(s, 0));
                ways[0][0] = 1;
                for (int slot = 0; slot < k; ++slot) {
                    std::vector<std::vector<long long>> next(
                        w + 1, std::vector<long long>(s, 0));
                    for (int uw = 0; uw <= w; ++uw)
                        for (int us = 0; us < s; ++us) {
                            if (!ways[uw][us]) continue;
                            for (int cw = 1; uw + cw <= w; ++cw)
                                for (int cs = 0; us + cs < s; ++cs) {
                                    const long long c = counts[cw][cs];
                                    if (!c) continue;
                                    long long add = ways[uw][us];
                                    if (c > 1 && add > LLONG_MAX / c) add = LLONG_MAX;
                                    else add *= c;
                                    saturating_add(next[uw + cw][us + cs], add);
                                }
                        }
                    ways.swap(next);
                }
                saturating_add(total, ways[w][s - 1]);
            }
            counts[w][s] = total;
        }
    }
    long long total = 0;
    for (int w = 1; w <= max_width; ++w)
        for (int s = 0; s <= max_nodes; ++s) saturating_add(total, counts[w][s]);
    return total;
}

}  // namespace ralg
