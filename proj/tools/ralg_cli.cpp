#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ralg/closure.hpp"
#include "ralg/constructions.hpp"
#include "ralg/decision.hpp"
#include "ralg/io.hpp"
#include "ralg/reduction.hpp"
#include "ralg/topology.hpp"
#include "ralg/verify.hpp"

namespace {

using namespace ralg;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInputError = 3;

int status_exit_code(RamseyStatus status) {
    switch (status) {
        case RamseyStatus::Ramsey: return kExitOk;
        case RamseyStatus::NotRamsey: return kExitNegative;
        case RamseyStatus::Unknown: return kExitUnknown;
    }
    return kExitUnknown;
}

// Algebra arguments name either a file or a catalog entry.
CatalogEntry load_algebra(const std::string& arg) {
    if (std::filesystem::exists(arg)) return parse_algebra_file(arg);
    return catalog(arg);
}

FiniteAlgebra load_finite(const std::string& arg) {
    CatalogEntry entry = load_algebra(arg);
    if (auto* fin = std::get_if<FiniteAlgebra>(&entry)) return std::move(*fin);
    throw std::invalid_argument("'" + arg +
                                "' names a rule algebra; this command needs a finite one");
}

struct Output {
    std::string path;  // empty: stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write '" + path + "'");
        out << text;
    }
};

// "sym(a,b)=v" entries, ';'-separated; every entry must mention the new point.
ExtensionFill parse_fill(const FiniteAlgebra& alg, const std::string& text) {
    const Element alpha = alg.size();
    std::vector<std::map<std::size_t, Element>> assigned(alg.signature().size());
    std::istringstream items(text);
    std::string item;
    while (std::getline(items, item, ';')) {
        if (item.empty()) continue;
        const auto open = item.find('(');
        const auto close = item.find(')');
        const auto eq = item.find('=', close == std::string::npos ? 0 : close);
        if (open == std::string::npos || close == std::string::npos ||
            eq == std::string::npos || close < open)
            throw std::invalid_argument("bad fill entry '" + item +
                                        "' (want sym(a,b)=v)");
        const std::string sym = item.substr(0, open);
        const auto op = alg.signature().index_of(sym);
        if (!op) throw std::invalid_argument("unknown symbol '" + sym + "'");
        std::vector<Element> args;
        std::istringstream arg_in(item.substr(open + 1, close - open - 1));
        std::string tok;
        while (std::getline(arg_in, tok, ',')) args.push_back(std::stoll(tok));
        if (static_cast<int>(args.size()) != alg.signature()[*op].arity)
            throw std::invalid_argument("arity mismatch in '" + item + "'");
        bool mentions_alpha = false;
        for (Element a : args) {
            if (a < 0 || a > alpha)
                throw std::invalid_argument(
                    "argument outside extended universe in '" + item + "'");
            if (a == alpha) mentions_alpha = true;
        }
        if (!mentions_alpha)
            throw std::invalid_argument("'" + item + "' does not mention the new point " +
                                        std::to_string(alpha));
        const Element value = std::stoll(item.substr(eq + 1));
        if (value < 0 || value > alpha)
            throw std::invalid_argument("value outside extended universe in '" +
                                        item + "'");
        assigned[*op][FiniteAlgebra::tuple_rank(alg.size() + 1, args)] = value;
    }

    // order the assignments the way one_point_extension consumes them
    ExtensionFill fill;
    fill.values.resize(alg.signature().size());
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
        const int k = alg.signature()[op].arity;
        const std::size_t total = FiniteAlgebra::table_length(alg.size() + 1, k);
        std::vector<Element> tuple(static_cast<std::size_t>(k), 0);
        for (std::size_t rank = 0; rank < total; ++rank) {
            const bool is_new = std::any_of(tuple.begin(), tuple.end(),
                                            [&](Element a) { return a == alpha; });
            if (is_new) {
                const auto it = assigned[op].find(rank);
                if (it == assigned[op].end()) {
                    std::string shown = alg.signature()[op].name + "(";
                    for (std::size_t i = 0; i < tuple.size(); ++i)
                        shown += (i ? "," : "") + std::to_string(tuple[i]);
                    throw std::invalid_argument("fill misses entry " + shown + ")");
                }
                fill.values[op].push_back(it->second);
            }
            for (int i = k - 1; i >= 0; --i) {
                auto& d = tuple[static_cast<std::size_t>(i)];
                if (++d <= alpha) break;
                d = 0;
            }
        }
    }
    return fill;
}

struct CommonBounds {
    int max_width = 2;
    int max_size = 2;
    bool force = false;

    EnumerationGuard guard() const {
        EnumerationGuard g;
        if (force) {
            g.max_volume = std::numeric_limits<long long>::max() / 4;
            g.max_witnesses = std::numeric_limits<long long>::max() / 4;
        }
        return g;
    }
};

std::string describe_witness(const ReductionWitness& w, const Signature& sig) {
    std::ostringstream out;
    out << "witness output ";
    for (std::size_t i = 0; i < w.output.size(); ++i)
        out << (i ? "," : "") << w.output[i];
    out << " steps";
    for (const auto& step : w.steps) {
        out << " " << step.term.to_string(sig) << "@";
        for (std::size_t i = 0; i < step.positions.size(); ++i)
            out << (i ? "," : "") << step.positions[i];
    }
    return out.str();
}

int run_check(const std::string& alg_arg, Element start, int max_depth,
              const Output& out) {
    const CatalogEntry entry = load_algebra(alg_arg);
    if (const auto* fin = std::get_if<FiniteAlgebra>(&entry)) {
        if (fin->signature().all_unary()) {
            const RamseyVerdict verdict = decide_unary_finite(*fin);
            out.write(format_verdict(verdict, fin->signature()));
            return status_exit_code(verdict.status);
        }
        if (fin->size() > 64) {
            // certificate terms can get enormous past desk scale
            const RamseyStatus status = decide_finite_status(*fin);
            out.write("verdict " + format_status(status) + "\n");
            return status_exit_code(status);
        }
        const RamseyVerdict verdict = decide_finite(*fin);
        out.write(format_verdict(verdict, fin->signature()));
        return status_exit_code(verdict.status);
    }
    const auto& rule = std::get<RuleAlgebra>(entry);
    if (!rule.signature().all_unary())
        throw std::invalid_argument("bounded search only decides unary rule algebras");
    RuleSearchOptions opts;
    opts.max_depth = max_depth;
    const RuleSearchResult result = search_unary_rule(rule, start, opts);
    out.write(format_rule_search(result, rule.signature()));
    return status_exit_code(result.status);
}

int run_verify_paper(const Output& out) {
    std::ostringstream report;
    bool all_pass = true;
    const bool streaming = out.path.empty();
    run_regressions([&](const CheckResult& r) {
        all_pass = all_pass && r.pass;
        std::ostringstream line;
        line << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) line << " (" << r.detail << ")";
        line << "\n";
        if (streaming)
            std::cout << line.str() << std::flush;  // checks can take a while
        else
            std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << "\n";
        report << line.str();
    });
    if (!streaming) out.write(report.str());
    return all_pass ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decide and certify the Ramsey property of homogeneous algebras"};
    app.require_subcommand(1);

    Output out;
    app.add_option("--out", out.path, "write the report to a file instead of stdout");

    auto* check = app.add_subcommand("check", "decide the Ramsey property");
    std::string check_alg;
    Element check_start = 0;
    int check_depth = 64;
    check->add_option("algebra", check_alg, "algebra file or catalog name")->required();
    check->add_option("--start", check_start, "start element for rule-algebra search");
    check->add_option("--max-depth", check_depth, "search depth for rule algebras");

    auto* subalg = app.add_subcommand("subalgebras", "list all subalgebra universes");
    std::string subalg_alg;
    bool singletons = false;
    int max_full_n = 20;
    subalg->add_option("algebra", subalg_alg)->required();
    subalg->add_flag("--singletons", singletons, "only closures of single elements");
    subalg->add_option("--max-full-n", max_full_n, "full-enumeration size guard");

    auto* idem = app.add_subcommand("idempotents", "list the idempotent elements");
    std::string idem_alg;
    idem->add_option("algebra", idem_alg)->required();

    auto* prod = app.add_subcommand("product", "coordinate-wise product");
    std::vector<std::string> prod_algs;
    long long prod_max = 1'000'000;
    prod->add_option("algebras", prod_algs)->required()->expected(-1);
    prod->add_option("--max-universe", prod_max, "universe size guard");

    auto* quot = app.add_subcommand("quotient", "quotient by a congruence");
    std::string quot_alg, quot_part;
    quot->add_option("algebra", quot_alg)->required();
    quot->add_option("partition", quot_part)->required();

    auto* congr =
        app.add_subcommand("congruence-check", "test a partition for compatibility");
    std::string congr_alg, congr_part;
    congr->add_option("algebra", congr_alg)->required();
    congr->add_option("partition", congr_part)->required();

    auto* close = app.add_subcommand("congruence-close",
                                     "least congruence containing the pairs");
    std::string close_alg;
    std::vector<std::string> close_pairs;
    close->add_option("algebra", close_alg)->required();
    close->add_option("pairs", close_pairs, "pairs like 0,2")->expected(-1);

    auto* hom = app.add_subcommand("hom-check", "test the homomorphism equation");
    std::string hom_src, hom_dst, hom_map;
    hom->add_option("source", hom_src)->required();
    hom->add_option("target", hom_dst)->required();
    hom->add_option("map", hom_map)->required();

    auto* iso = app.add_subcommand("iso", "search for an isomorphism");
    std::string iso_a, iso_b;
    int iso_max = 8;
    iso->add_option("first", iso_a)->required();
    iso->add_option("second", iso_b)->required();
    iso->add_option("--max-n", iso_max, "universe size guard");

    auto* extend = app.add_subcommand("extend", "one-point extensions");
    std::string extend_alg, extend_fill;
    bool extend_all = false;
    bool extend_check = false;
    int extend_guard = 12;
    extend->add_option("algebra", extend_alg)->required();
    extend->add_option("--fill", extend_fill,
                       "entries like p(3)=1;... for the new point");
    extend->add_flag("--all", extend_all, "enumerate every extension");
    extend->add_flag("--check", extend_check, "decide each result");
    extend->add_option("--max-new-entries", extend_guard, "enumeration guard");

    auto* terms_cmd = app.add_subcommand("terms", "enumerate orderly terms");
    std::string terms_alg;
    CommonBounds terms_bounds;
    terms_cmd->add_option("algebra", terms_alg)->required();
    terms_cmd->add_option("--max-width", terms_bounds.max_width);
    terms_cmd->add_option("--max-size", terms_bounds.max_size);
    terms_cmd->add_flag("--force", terms_bounds.force, "lift the output guard");

    auto* fr = app.add_subcommand("fr", "finite FR set of a sequence prefix");
    std::string fr_alg, fr_seq;
    CommonBounds fr_bounds;
    fr->add_option("algebra", fr_alg)->required();
    fr->add_option("sequence", fr_seq)->required();
    fr->add_option("--max-width", fr_bounds.max_width);
    fr->add_option("--max-size", fr_bounds.max_size);
    fr->add_flag("--force", fr_bounds.force, "lift the enumeration guard");

    auto* reduce = app.add_subcommand("reduce", "enumerate reductions of a prefix");
    std::string reduce_alg, reduce_seq;
    CommonBounds reduce_bounds;
    int out_len = 1;
    reduce->add_option("algebra", reduce_alg)->required();
    reduce->add_option("sequence", reduce_seq)->required();
    reduce->add_option("--out-len", out_len, "output length");
    reduce->add_option("--max-width", reduce_bounds.max_width);
    reduce->add_option("--max-size", reduce_bounds.max_size);
    reduce->add_flag("--force", reduce_bounds.force, "lift the enumeration guard");

    auto* homog = app.add_subcommand("homog", "classify FR values against a set");
    std::string homog_alg, homog_seq, homog_set = "evens";
    CommonBounds homog_bounds;
    homog->add_option("algebra", homog_alg)->required();
    homog->add_option("sequence", homog_seq)->required();
    homog->add_option("--set", homog_set,
                      "evens|odds|interval a b|list e1,...|mod m r");
    homog->add_option("--max-width", homog_bounds.max_width);
    homog->add_option("--max-size", homog_bounds.max_size);
    homog->add_flag("--force", homog_bounds.force, "lift the enumeration guard");

    auto* topo = app.add_subcommand("topology", "basis, clopen basics, density");
    std::string topo_alg;
    topo->add_option("algebra", topo_alg)->required();

    app.add_subcommand("verify-paper", "run the bundled regression suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return run_check(check_alg, check_start, check_depth, out);

        if (*subalg) {
            const FiniteAlgebra alg = load_finite(subalg_alg);
            SubalgebraOptions opts;
            opts.singletons_only = singletons;
            opts.max_full_universe = max_full_n;
            std::ostringstream report;
            for (const auto& u : enumerate_subalgebras(alg, opts))
                report << "set " << format_element_set(u) << "\n";
            out.write(report.str());
            return kExitOk;
        }

        if (*idem) {
            const FiniteAlgebra alg = load_finite(idem_alg);
            out.write("set " + format_element_set(idempotents(alg)) + "\n");
            return kExitOk;
        }

        if (*prod) {
            std::vector<FiniteAlgebra> factors;
            for (const auto& arg : prod_algs) factors.push_back(load_finite(arg));
            ProductOptions opts;
            opts.max_universe = prod_max;
            out.write(serialize_algebra(product(factors, opts)));
            return kExitOk;
        }

        if (*quot) {
            const FiniteAlgebra alg = load_finite(quot_alg);
            const auto part = parse_partition_file(quot_part, alg.size());
            const auto result = quotient(alg, part);
            out.write(serialize_algebra(result.algebra) +
                      serialize_map(result.projection));
            return kExitOk;
        }

        if (*congr) {
            const FiniteAlgebra alg = load_finite(congr_alg);
            const auto part = parse_partition_file(congr_part, alg.size());
            const auto result = check_congruence(alg, part);
            std::ostringstream report;
            report << "congruence " << (result.compatible ? "yes" : "no") << "\n";
            if (result.violation) {
                report << "violation " << alg.signature()[result.violation->op].name;
                for (Element e : result.violation->lhs) report << " " << e;
                report << " vs";
                for (Element e : result.violation->rhs) report << " " << e;
                report << "\n";
            }
            out.write(report.str());
            return result.compatible ? kExitOk : kExitNegative;
        }

        if (*close) {
            const FiniteAlgebra alg = load_finite(close_alg);
            std::vector<std::pair<Element, Element>> pairs;
            for (const auto& text : close_pairs) {
                const auto comma = text.find(',');
                if (comma == std::string::npos)
                    throw std::invalid_argument("pair '" + text + "' is not a,b");
                pairs.emplace_back(std::stoll(text.substr(0, comma)),
                                   std::stoll(text.substr(comma + 1)));
            }
            out.write(serialize_partition(congruence_closure(alg, pairs)));
            return kExitOk;
        }

        if (*hom) {
            const FiniteAlgebra src = load_finite(hom_src);
            const FiniteAlgebra dst = load_finite(hom_dst);
            const auto map = parse_map_file(hom_map, src.size(), dst.size());
            const auto result = check_homomorphism(src, dst, map);
            std::ostringstream report;
            report << "homomorphism " << (result.homomorphism ? "yes" : "no") << "\n";
            report << "surjective " << (result.surjective ? "yes" : "no") << "\n";
            out.write(report.str());
            return result.homomorphism ? kExitOk : kExitNegative;
        }

        if (*iso) {
            const FiniteAlgebra a = load_finite(iso_a);
            const FiniteAlgebra b = load_finite(iso_b);
            IsoOptions opts;
            opts.max_universe = iso_max;
            const auto found = isomorphism_search(a, b, opts);
            if (found) {
                out.write("isomorphic yes\n" + serialize_map(*found));
                return kExitOk;
            }
            out.write("isomorphic no\n");
            return kExitNegative;
        }

        if (*extend) {
            const FiniteAlgebra alg = load_finite(extend_alg);
            std::vector<FiniteAlgebra> results;
            if (extend_all) {
                ExtensionOptions opts;
                opts.max_new_entries = extend_guard;
                results = enumerate_one_point_extensions(alg, opts);
            } else if (!extend_fill.empty()) {
                results.push_back(
                    one_point_extension(alg, parse_fill(alg, extend_fill)));
            } else {
                throw std::invalid_argument("extend needs --fill or --all");
            }
            std::ostringstream report;
            bool all_ramsey = true;
            for (const auto& ext : results) {
                report << serialize_algebra(ext);
                if (extend_check) {
                    const auto status = decide_finite_status(ext);
                    report << "verdict " << format_status(status) << "\n";
                    all_ramsey = all_ramsey && status == RamseyStatus::Ramsey;
                }
                report << "\n";
            }
            out.write(report.str());
            return (!extend_check || all_ramsey) ? kExitOk : kExitNegative;
        }

        if (*terms_cmd) {
            const CatalogEntry entry = load_algebra(terms_alg);
            const Signature& sig = std::visit(
                [](const auto& a) -> const Signature& { return a.signature(); },
                entry);
            const long long count = count_orderly_terms(sig, terms_bounds.max_width,
                                                        terms_bounds.max_size);
            if (!terms_bounds.force && count > 100'000)
                throw std::length_error("would print " + std::to_string(count) +
                                        " terms; pass --force to allow");
            std::ostringstream report;
            for (const auto& t : enumerate_orderly_terms(
                     sig, terms_bounds.max_width, terms_bounds.max_size))
                report << t.to_string(sig) << "\n";
            out.write(report.str());
            return kExitOk;
        }

        if (*fr) {
            const CatalogEntry entry = load_algebra(fr_alg);
            const SequencePrefix seq = parse_sequence_file(fr_seq);
            const AlgebraRef ref =
                std::visit([](const auto& a) { return AlgebraRef(a); }, entry);
            const ElementSet values = fr_prefix(
                ref, seq, fr_bounds.max_width, fr_bounds.max_size, fr_bounds.guard());
            out.write("fr " + format_element_set(values) + "\n");
            return kExitOk;
        }

        if (*reduce) {
            const CatalogEntry entry = load_algebra(reduce_alg);
            const SequencePrefix seq = parse_sequence_file(reduce_seq);
            const AlgebraRef ref =
                std::visit([](const auto& a) { return AlgebraRef(a); }, entry);
            const auto witnesses =
                enumerate_reductions(ref, seq, out_len, reduce_bounds.max_width,
                                     reduce_bounds.max_size, reduce_bounds.guard());
            std::ostringstream report;
            for (const auto& w : witnesses)
                report << describe_witness(w, ref.signature()) << "\n";
            out.write(report.str());
            return kExitOk;
        }

        if (*homog) {
            const CatalogEntry entry = load_algebra(homog_alg);
            const SequencePrefix seq = parse_sequence_file(homog_seq);
            const AlgebraRef ref =
                std::visit([](const auto& a) { return AlgebraRef(a); }, entry);
            const auto report = homogeneity_check(
                ref, seq, SubsetPredicate::parse(homog_set), homog_bounds.max_width,
                homog_bounds.max_size, homog_bounds.guard());
            std::ostringstream text;
            const char* verdict =
                report.verdict == HomogeneityVerdict::AllIn
                    ? "all-in"
                    : report.verdict == HomogeneityVerdict::AllOut ? "all-out"
                                                                   : "mixed";
            text << "verdict " << verdict << "\n";
            text << "in " << format_element_set(report.in_set) << "\n";
            text << "out " << format_element_set(report.out_set) << "\n";
            out.write(text.str());
            return report.verdict == HomogeneityVerdict::Mixed ? kExitNegative
                                                               : kExitOk;
        }

        if (*topo) {
            const FiniteAlgebra alg = load_finite(topo_alg);
            const auto basis = TopologyBasis::from_algebra(alg);
            std::ostringstream report;
            report << "basis " << basis.basic_opens().size() << "\n";
            for (const auto& u : basis.basic_opens())
                report << "set " << format_element_set(u) << "\n";
            for (const auto& u : basis.basic_opens()) {
                if (u.empty() || static_cast<int>(u.size()) == alg.size()) continue;
                if (is_clopen_basic(basis, u))
                    report << "clopen " << format_element_set(u) << "\n";
            }
            if (alg.signature().all_unary()) {
                const auto density = fixed_point_density(alg);
                report << "density " << (density.dense ? "dense" : "not-dense");
                if (density.failing_point) report << " " << *density.failing_point;
                report << "\n";
            } else {
                report << "density n/a\n";
            }
            out.write(report.str());
            return kExitOk;
        }

        return run_verify_paper(out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
