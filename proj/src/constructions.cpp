#include "ralg/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ralg {

CongruencePartition::CongruencePartition(int universe,
                                         std::vector<std::vector<Element>> blocks)
    : universe_(universe) {
    if (universe_ < 1) throw std::invalid_argument("partition universe must be >= 1");
    block_of_.assign(static_cast<std::size_t>(universe_), -1);
    for (auto& raw : blocks) {
        ElementSet block(std::move(raw));
        if (block.empty()) throw std::invalid_argument("partition block is empty");
        for (Element e : block) {
            if (e < 0 || e >= universe_)
                throw std::out_of_range("partition element outside universe");
            if (block_of_[static_cast<std::size_t>(e)] != -1)
                throw std::invalid_argument("partition blocks overlap at " +
                                            std::to_string(e));
            block_of_[static_cast<std::size_t>(e)] = 0;  // placeholder
        }
        blocks_.push_back(std::move(block));
    }
    for (Element e = 0; e < universe_; ++e)
        if (block_of_[static_cast<std::size_t>(e)] == -1)
            throw std::invalid_argument("partition misses element " + std::to_string(e));
    std::sort(blocks_.begin(), blocks_.end(),
              [](const ElementSet& a, const ElementSet& b) {
                  return a.elements().front() < b.elements().front();
              });
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        for (Element e : blocks_[i])
            block_of_[static_cast<std::size_t>(e)] = static_cast<int>(i);
}

CongruencePartition CongruencePartition::singletons(int universe) {
    std::vector<std::vector<Element>> blocks;
    for (Element e = 0; e < universe; ++e) blocks.push_back({e});
    return CongruencePartition(universe, std::move(blocks));
}

CongruencePartition CongruencePartition::from_block_of(const std::vector<int>& block_of) {
    if (block_of.empty()) throw std::invalid_argument("empty block map");
    const int m = *std::max_element(block_of.begin(), block_of.end()) + 1;
    std::vector<std::vector<Element>> blocks(static_cast<std::size_t>(m));
    for (std::size_t e = 0; e < block_of.size(); ++e) {
        if (block_of[e] < 0 || block_of[e] >= m)
            throw std::invalid_argument("bad block index");
        blocks[static_cast<std::size_t>(block_of[e])].push_back(
            static_cast<Element>(e));
    }
    return CongruencePartition(static_cast<int>(block_of.size()), std::move(blocks));
}

int CongruencePartition::block_of(Element e) const {
    if (e < 0 || e >= universe_) throw std::out_of_range("element outside universe");
    return block_of_[static_cast<std::size_t>(e)];
}

namespace {

void require_shared_signature(const Signature& a, const Signature& b) {
    if (!(a == b)) throw std::invalid_argument("signatures differ");
}

// Row-major odometer over k slots with n values each; f gets the tuple.
template <typename F>
void for_each_tuple(int n, int k, F&& f) {
    std::vector<Element> tuple(static_cast<std::size_t>(k), 0);
    while (true) {
        f(const_cast<const std::vector<Element>&>(tuple));
        int i = k - 1;
        for (; i >= 0; --i) {
            auto& d = tuple[static_cast<std::size_t>(i)];
            if (++d < n) break;
            d = 0;
        }
        if (i < 0) break;
    }
}

}  // namespace

std::vector<Element> product_decode(Element rank, const std::vector<int>& sizes) {
    std::vector<Element> tuple(sizes.size());
    for (std::size_t i = sizes.size(); i-- > 0;) {
        tuple[i] = rank % sizes[i];
        rank /= sizes[i];
    }
    return tuple;
}

Element product_encode(std::span<const Element> tuple, const std::vector<int>& sizes) {
    Element rank = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i)
        rank = rank * sizes[i] + tuple[i];
    return rank;
}

FiniteAlgebra product(const std::vector<FiniteAlgebra>& factors,
                      const ProductOptions& opts) {
    if (factors.empty()) throw std::invalid_argument("product of no factors");
    const Signature& sig = factors.front().signature();
    std::vector<int> sizes;
    long long universe = 1;
    for (const auto& f : factors) {
        require_shared_signature(sig, f.signature());
        sizes.push_back(f.size());
        if (universe > opts.max_universe / f.size())
            throw std::length_error("product universe exceeds bound " +
                                    std::to_string(opts.max_universe));
        universe *= f.size();
    }
    const int n = static_cast<int>(universe);

    long long entries = 0;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        long long len = 1;
        for (int i = 0; i < sig[op].arity; ++i) {
            if (len > opts.max_table_entries / n)
                throw std::length_error("product tables exceed entry bound");
            len *= n;
        }
        entries += len;
        if (entries > opts.max_table_entries)
            throw std::length_error("product tables exceed entry bound");
    }

    std::vector<std::vector<Element>> tables;
    std::vector<std::vector<Element>> arg_tuples;  // per argument, decoded
    std::vector<Element> factor_args;
    std::vector<Element> result_tuple(factors.size());
    for (std::size_t op = 0; op < sig.size(); ++op) {
        const int k = sig[op].arity;
        std::vector<Element> table(FiniteAlgebra::table_length(n, k));
        std::size_t rank = 0;
        for_each_tuple(n, k, [&](const std::vector<Element>& args) {
            arg_tuples.clear();
            for (Element a : args) arg_tuples.push_back(product_decode(a, sizes));
            for (std::size_t fi = 0; fi < factors.size(); ++fi) {
                factor_args.clear();
                for (int ai = 0; ai < k; ++ai)
                    factor_args.push_back(arg_tuples[static_cast<std::size_t>(ai)][fi]);
                result_tuple[fi] = factors[fi].apply(op, factor_args);
            }
            table[rank++] = product_encode(result_tuple, sizes);
        });
        tables.push_back(std::move(table));
    }
    return FiniteAlgebra(sig, n, std::move(tables), "product");
}

namespace {

Element window_encode(std::span<const Element> window, int width, int bits) {
    if (static_cast<int>(window.size()) != width)
        throw std::invalid_argument("window width mismatch");
    Element packed = 0;
    for (Element c : window) {
        if (c < 0 || c >= (Element{1} << bits))
            throw std::domain_error("window coordinate out of range");
        packed = (packed << bits) | c;
    }
    return packed;
}

std::vector<Element> window_decode(Element packed, int width, int bits) {
    std::vector<Element> window(static_cast<std::size_t>(width));
    const Element mask = (Element{1} << bits) - 1;
    for (int i = width; i-- > 0;) {
        window[static_cast<std::size_t>(i)] = packed & mask;
        packed >>= bits;
    }
    return window;
}

}  // namespace

Element RuleProduct::encode(std::span<const Element> window) const {
    return window_encode(window, width, bits);
}

std::vector<Element> RuleProduct::decode(Element packed) const {
    return window_decode(packed, width, bits);
}

Element RuleProduct::diagonal() const {
    std::vector<Element> window(static_cast<std::size_t>(width));
    std::iota(window.begin(), window.end(), Element{0});
    return encode(window);
}

RuleProduct rule_product(const std::vector<RuleAlgebra>& factors, int width,
                         TailRule tail, int bits) {
    if (factors.empty()) throw std::invalid_argument("product of no factors");
    if (width < 1) throw std::invalid_argument("width must be >= 1");
    const Signature sig = factors.front().signature();
    for (const auto& f : factors) require_shared_signature(sig, f.signature());
    if (bits == 0) bits = std::max(1, 62 / width);
    if (bits < 1 || bits * width > 62)
        throw std::invalid_argument("window does not fit in 62 bits");

    FixedPointHint hint = FixedPointHint::Unknown;
    for (const auto& f : factors)
        if (f.fixed_point_hint() == FixedPointHint::NoneExist)
            hint = FixedPointHint::NoneExist;

    std::vector<RuleAlgebra::Rule> rules;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        rules.push_back([op, factors, width, bits](std::span<const Element> args) {
            std::vector<std::vector<Element>> windows;
            for (Element a : args)
                windows.push_back(window_decode(a, width, bits));
            std::vector<Element> out(static_cast<std::size_t>(width));
            std::vector<Element> coord_args(args.size());
            for (int i = 0; i < width; ++i) {
                for (std::size_t j = 0; j < args.size(); ++j)
                    coord_args[j] = windows[j][static_cast<std::size_t>(i)];
                const auto& factor =
                    factors[static_cast<std::size_t>(i) % factors.size()];
                out[static_cast<std::size_t>(i)] = factor.apply(op, coord_args);
            }
            return window_encode(out, width, bits);
        });
    }
    return RuleProduct{
        RuleAlgebra(sig, std::move(rules), "rule-product", hint),
        width, bits, tail};
}

CongruenceCheck check_congruence(const FiniteAlgebra& alg,
                                 const CongruencePartition& part) {
    if (part.universe() != alg.size())
        throw std::invalid_argument("partition universe mismatch");
    const int n = alg.size();
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
        const int k = alg.signature()[op].arity;
        CongruenceCheck result;
        bool failed = false;
        for_each_tuple(n, k, [&](const std::vector<Element>& lhs) {
            if (failed) return;
            const int lb = part.block_of(alg.apply(op, lhs));
            for_each_tuple(n, k, [&](const std::vector<Element>& rhs) {
                if (failed) return;
                for (int i = 0; i < k; ++i)
                    if (part.block_of(lhs[static_cast<std::size_t>(i)]) !=
                        part.block_of(rhs[static_cast<std::size_t>(i)]))
                        return;
                if (part.block_of(alg.apply(op, rhs)) != lb) {
                    failed = true;
                    result.violation = CongruenceViolation{op, lhs, rhs};
                }
            });
        });
        if (failed) return result;
    }
    return CongruenceCheck{true, std::nullopt};
}

namespace {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // keep least element as representative
        parent_[static_cast<std::size_t>(b)] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

}  // namespace

CongruencePartition congruence_closure(
    const FiniteAlgebra& alg, const std::vector<std::pair<Element, Element>>& pairs) {
    const int n = alg.size();
    UnionFind uf(n);
    for (auto [a, b] : pairs) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::out_of_range("pair element outside universe");
        uf.merge(static_cast<int>(a), static_cast<int>(b));
    }
    // Compatibility fixpoint: single-coordinate substitutions suffice, since
    // related tuples are chains of such substitutions.
    bool changed = true;
    std::vector<Element> variant;
    while (changed) {
        changed = false;
        for (std::size_t op = 0; op < alg.signature().size(); ++op) {
            const int k = alg.signature()[op].arity;
            for_each_tuple(n, k, [&](const std::vector<Element>& args) {
                const Element base = alg.apply(op, args);
                for (int i = 0; i < k; ++i) {
                    for (Element b = 0; b < n; ++b) {
                        if (uf.find(static_cast<int>(args[static_cast<std::size_t>(i)])) !=
                            uf.find(static_cast<int>(b)))
                            continue;
                        variant = args;
                        variant[static_cast<std::size_t>(i)] = b;
                        if (uf.merge(static_cast<int>(base),
                                     static_cast<int>(alg.apply(op, variant))))
                            changed = true;
                    }
                }
            });
        }
    }
    std::vector<int> block_root(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) block_root[static_cast<std::size_t>(e)] = uf.find(e);
    // renumber roots to consecutive indices ordered by least element
    std::vector<int> order;
    for (int e = 0; e < n; ++e)
        if (block_root[static_cast<std::size_t>(e)] == e) order.push_back(e);
    std::vector<int> index_of(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < order.size(); ++i)
        index_of[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    std::vector<int> block_of(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) {
        const int root = block_root[static_cast<std::size_t>(e)];
        block_of[static_cast<std::size_t>(e)] = index_of[static_cast<std::size_t>(root)];
    }
    return CongruencePartition::from_block_of(block_of);
}

QuotientResult quotient(const FiniteAlgebra& alg, const CongruencePartition& part) {
    const auto check = check_congruence(alg, part);
    if (!check.compatible)
        throw std::invalid_argument("partition is not a congruence of the algebra");
    const int m = static_cast<int>(part.block_count());
    std::vector<Element> rep;
    for (const auto& block : part.blocks()) rep.push_back(block.elements().front());

    std::vector<std::vector<Element>> tables;
    std::vector<Element> args;
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
        const int k = alg.signature()[op].arity;
        std::vector<Element> table(FiniteAlgebra::table_length(m, k));
        std::size_t rank = 0;
        for_each_tuple(m, k, [&](const std::vector<Element>& block_args) {
            args.clear();
            for (Element b : block_args)
                args.push_back(rep[static_cast<std::size_t>(b)]);
            table[rank++] = part.block_of(alg.apply(op, args));
        });
        tables.push_back(std::move(table));
    }
    HomomorphismMap projection;
    projection.source_size = alg.size();
    projection.target_size = m;
    for (Element e = 0; e < alg.size(); ++e)
        projection.map.push_back(part.block_of(e));
    return QuotientResult{
        FiniteAlgebra(alg.signature(), m, std::move(tables), alg.name() + "/E"),
        std::move(projection)};
}

HomomorphismCheck check_homomorphism(const FiniteAlgebra& src,
                                     const FiniteAlgebra& dst,
                                     const HomomorphismMap& h) {
    require_shared_signature(src.signature(), dst.signature());
    if (h.source_size != src.size() || h.target_size != dst.size() ||
        static_cast<int>(h.map.size()) != src.size())
        throw std::invalid_argument("map sizes do not match the algebras");
    for (Element v : h.map)
        if (v < 0 || v >= dst.size())
            throw std::out_of_range("map value outside target universe");

    HomomorphismCheck result;
    result.homomorphism = true;
    std::vector<Element> mapped;
    for (std::size_t op = 0; op < src.signature().size() && result.homomorphism; ++op) {
        const int k = src.signature()[op].arity;
        for_each_tuple(src.size(), k, [&](const std::vector<Element>& args) {
            if (!result.homomorphism) return;
            mapped.clear();
            for (Element a : args) mapped.push_back(h(a));
            if (h(src.apply(op, args)) != dst.apply(op, mapped)) {
                result.homomorphism = false;
                result.violation = HomomorphismViolation{op, args};
            }
        });
    }
    std::vector<char> hit(static_cast<std::size_t>(dst.size()), 0);
    for (Element v : h.map) hit[static_cast<std::size_t>(v)] = 1;
    result.surjective =
        std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
    return result;
}

std::optional<HomomorphismMap> isomorphism_search(const FiniteAlgebra& a,
                                                  const FiniteAlgebra& b,
                                                  const IsoOptions& opts) {
    require_shared_signature(a.signature(), b.signature());
    if (a.size() != b.size()) return std::nullopt;
    if (a.size() > opts.max_universe)
        throw std::length_error("isomorphism search refused for universe size " +
                                std::to_string(a.size()) + " > " +
                                std::to_string(opts.max_universe));
    std::vector<Element> perm(static_cast<std::size_t>(a.size()));
    std::iota(perm.begin(), perm.end(), Element{0});
    do {
        HomomorphismMap h{a.size(), b.size(), perm};
        const auto check = check_homomorphism(a, b, h);
        if (check.homomorphism) return h;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

FiniteAlgebra relabel(const FiniteAlgebra& alg, const std::vector<Element>& perm) {
    const int n = alg.size();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permutation length mismatch");
    std::vector<Element> inverse(static_cast<std::size_t>(n), -1);
    for (Element e = 0; e < n; ++e) {
        const Element p = perm[static_cast<std::size_t>(e)];
        if (p < 0 || p >= n || inverse[static_cast<std::size_t>(p)] != -1)
            throw std::invalid_argument("not a permutation");
        inverse[static_cast<std::size_t>(p)] = e;
    }
    std::vector<std::vector<Element>> tables;
    std::vector<Element> args;
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
        const int k = alg.signature()[op].arity;
        std::vector<Element> table(FiniteAlgebra::table_length(n, k));
        std::size_t rank = 0;
        for_each_tuple(n, k, [&](const std::vector<Element>& new_args) {
            args.clear();
            for (Element x : new_args)
                args.push_back(inverse[static_cast<std::size_t>(x)]);
            table[rank++] = perm[static_cast<std::size_t>(alg.apply(op, args))];
        });
        tables.push_back(std::move(table));
    }
    return FiniteAlgebra(alg.signature(), n, std::move(tables), alg.name());
}

long long extension_new_entry_count(const FiniteAlgebra& alg) {
    long long total = 0;
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
        const int k = alg.signature()[op].arity;
        long long ext = 1, old = 1;
        for (int i = 0; i < k; ++i) {
            ext *= alg.size() + 1;
            old *= alg.size();
        }
        total += ext - old;
    }
    return total;
}

FiniteAlgebra one_point_extension(const FiniteAlgebra& alg, const ExtensionFill& fill) {
    const int n = alg.size();
    const Element alpha = n;
    if (fill.values.size() != alg.signature().size())
        throw std::invalid_argument("fill must cover every symbol");
    std::vector<std::vector<Element>> tables;
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
        const int k = alg.signature()[op].arity;
        std::vector<Element> table(FiniteAlgebra::table_length(n + 1, k));
        std::size_t rank = 0;
        std::size_t next_new = 0;
        for_each_tuple(n + 1, k, [&](const std::vector<Element>& args) {
            const bool is_new = std::any_of(args.begin(), args.end(),
                                            [&](Element a) { return a == alpha; });
            if (is_new) {
                if (next_new >= fill.values[op].size())
                    throw std::invalid_argument("fill for '" +
                                                alg.signature()[op].name +
                                                "' is incomplete");
                const Element v = fill.values[op][next_new++];
                if (v < 0 || v > alpha)
                    throw std::invalid_argument("fill value outside extended universe");
                table[rank++] = v;
            } else {
                table[rank++] = alg.apply(op, args);
            }
        });
        if (next_new != fill.values[op].size())
            throw std::invalid_argument("fill for '" + alg.signature()[op].name +
                                        "' has extra entries");
        tables.push_back(std::move(table));
    }
    return FiniteAlgebra(alg.signature(), n + 1, std::move(tables),
                         alg.name() + "+1");
}

std::vector<FiniteAlgebra> enumerate_one_point_extensions(
    const FiniteAlgebra& alg, const ExtensionOptions& opts) {
    const long long entries = extension_new_entry_count(alg);
    if (entries > opts.max_new_entries)
        throw std::length_error("extension enumeration refused: " +
                                std::to_string(entries) + " new entries > " +
                                std::to_string(opts.max_new_entries));
    std::vector<std::size_t> per_op;
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
        const int k = alg.signature()[op].arity;
        per_op.push_back(FiniteAlgebra::table_length(alg.size() + 1, k) -
                         FiniteAlgebra::table_length(alg.size(), k));
    }
    std::vector<FiniteAlgebra> out;
    ExtensionFill fill;
    fill.values.resize(per_op.size());
    for (std::size_t op = 0; op < per_op.size(); ++op)
        fill.values[op].assign(per_op[op], 0);
    const Element top = alg.size();  // values range over 0..n inclusive
    while (true) {
        out.push_back(one_point_extension(alg, fill));
        // advance the fill odometer, last entry fastest
        bool carried = true;
        for (std::size_t op = per_op.size(); carried && op-- > 0;) {
            auto& vals = fill.values[op];
            for (std::size_t i = vals.size(); carried && i-- > 0;) {
                if (++vals[i] <= top) {
                    carried = false;
                } else {
                    vals[i] = 0;
                }
            }
        }
        if (carried) break;
    }
    return out;
}

}  // namespace ralg
