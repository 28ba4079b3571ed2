#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ralg/closure.hpp"
#include "ralg/constructions.hpp"
#include "ralg/decision.hpp"
#include "ralg/io.hpp"
#include "ralg/reduction.hpp"
#include "ralg/topology.hpp"
#include "ralg/verify.hpp"

namespace py = pybind11;
using namespace ralg;

namespace {

std::vector<std::vector<Element>> set_list(const std::vector<ElementSet>& sets) {
    std::vector<std::vector<Element>> out;
    for (const auto& s : sets) out.push_back(s.elements());
    return out;
}

py::dict verdict_dict(const RamseyVerdict& verdict, const Signature& sig) {
    py::dict out;
    out["status"] = format_status(verdict.status);
    py::list certs;
    for (const auto& cert : verdict.certificates) {
        py::dict entry;
        entry["element"] = cert.element;
        if (const auto* term = std::get_if<OrderlyTerm>(&cert.route))
            entry["route"] = term->to_string(sig);
        else
            entry["route"] = format_word(std::get<Word>(cert.route), sig);
        entry["target"] = cert.target;
        certs.append(entry);
    }
    out["certificates"] = certs;
    if (verdict.witness) {
        py::dict witness;
        witness["element"] = verdict.witness->element;
        witness["generated"] = verdict.witness->generated.elements();
        out["witness"] = witness;
    }
    return out;
}

AlgebraRef ref_of(const py::object& alg) {
    if (py::isinstance<FiniteAlgebra>(alg))
        return AlgebraRef(alg.cast<const FiniteAlgebra&>());
    return AlgebraRef(alg.cast<const RuleAlgebra&>());
}

}  // namespace

PYBIND11_MODULE(pyralg, m) {
    m.doc() = "Ramsey-property decisions for finite and rule-defined algebras";

    py::class_<FiniteAlgebra>(m, "FiniteAlgebra")
        .def(py::init([](int size, const std::vector<std::pair<std::string, int>>& ops,
                         const std::vector<std::vector<Element>>& tables,
                         const std::string& name) {
                 std::vector<OpSymbol> symbols;
                 for (const auto& [sym, arity] : ops) symbols.push_back({sym, arity});
                 return FiniteAlgebra(Signature(std::move(symbols)), size, tables,
                                      name);
             }),
             py::arg("size"), py::arg("ops"), py::arg("tables"),
             py::arg("name") = "")
        .def_property_readonly("size", &FiniteAlgebra::size)
        .def_property_readonly("name", &FiniteAlgebra::name)
        .def_property_readonly("symbols",
                               [](const FiniteAlgebra& a) {
                                   std::vector<std::pair<std::string, int>> out;
                                   for (const auto& s : a.signature().symbols())
                                       out.emplace_back(s.name, s.arity);
                                   return out;
                               })
        .def("apply",
             [](const FiniteAlgebra& a, std::size_t op,
                const std::vector<Element>& args) { return a.apply(op, args); })
        .def("__eq__", [](const FiniteAlgebra& a,
                          const FiniteAlgebra& b) { return a == b; })
        .def("__repr__", [](const FiniteAlgebra& a) {
            return "<FiniteAlgebra " + (a.name().empty() ? "?" : a.name()) +
                   " size=" + std::to_string(a.size()) + ">";
        });

    py::class_<RuleAlgebra>(m, "RuleAlgebra")
        .def_property_readonly("name", &RuleAlgebra::name)
        .def("apply",
             [](const RuleAlgebra& a, std::size_t op,
                const std::vector<Element>& args) { return a.apply(op, args); })
        .def("__repr__", [](const RuleAlgebra& a) {
            return "<RuleAlgebra " + (a.name().empty() ? "?" : a.name()) + ">";
        });

    m.def("catalog", [](const std::string& spec) -> py::object {
        CatalogEntry entry = catalog(spec);
        if (auto* fin = std::get_if<FiniteAlgebra>(&entry))
            return py::cast(std::move(*fin));
        return py::cast(std::move(std::get<RuleAlgebra>(entry)));
    });
    m.def("catalog_names", &catalog_names);

    m.def("parse_algebra", &parse_algebra);
    m.def("serialize_algebra", &serialize_algebra);

    m.def("closure", [](const FiniteAlgebra& alg, const std::vector<Element>& seed) {
        return closure(alg, ElementSet(seed)).elements();
    });
    m.def("subalgebras",
          [](const FiniteAlgebra& alg, bool singletons_only) {
              SubalgebraOptions opts;
              opts.singletons_only = singletons_only;
              return set_list(enumerate_subalgebras(alg, opts));
          },
          py::arg("alg"), py::arg("singletons_only") = false);
    m.def("idempotents",
          [](const FiniteAlgebra& alg) { return idempotents(alg).elements(); });
    m.def("fixed_points",
          [](const FiniteAlgebra& alg) { return fixed_points(alg).elements(); });

    m.def("decide_finite", [](const FiniteAlgebra& alg) {
        return verdict_dict(decide_finite(alg), alg.signature());
    });
    m.def("decide_finite_via_all_subalgebras", [](const FiniteAlgebra& alg) {
        return verdict_dict(decide_finite_via_all_subalgebras(alg),
                            alg.signature());
    });
    m.def("decide_unary_finite", [](const FiniteAlgebra& alg) {
        return verdict_dict(decide_unary_finite(alg), alg.signature());
    });
    m.def("search_unary_rule",
          [](const RuleAlgebra& alg, Element start, int max_depth) {
              RuleSearchOptions opts;
              opts.max_depth = max_depth;
              const auto result = search_unary_rule(alg, start, opts);
              py::dict out;
              out["status"] = format_status(result.status);
              out["start"] = result.start;
              if (result.word) out["word"] = format_word(*result.word, alg.signature());
              if (result.target) out["target"] = *result.target;
              out["explored_depth"] = result.explored_depth;
              return out;
          },
          py::arg("alg"), py::arg("start"), py::arg("max_depth") = 64);
    m.def("singleton_fr_witness", [](const FiniteAlgebra& alg, Element b) {
        const auto witness = singleton_fr_witness(alg, b);
        py::dict out;
        if (!witness) return out;
        out["idempotent"] = witness->idempotent;
        py::list steps;
        for (const auto& step : witness->trace) {
            py::dict entry;
            entry["symbol"] = alg.signature()[step.op].name;
            entry["args"] = step.args;
            entry["value"] = step.value;
            steps.append(entry);
        }
        out["trace"] = steps;
        return out;
    });

    m.def("product", [](const std::vector<FiniteAlgebra>& factors) {
        return product(factors);
    });
    m.def("check_congruence",
          [](const FiniteAlgebra& alg, const std::vector<std::vector<Element>>& blocks) {
              return check_congruence(
                         alg, CongruencePartition(alg.size(), blocks))
                  .compatible;
          });
    m.def("congruence_closure",
          [](const FiniteAlgebra& alg,
             const std::vector<std::pair<Element, Element>>& pairs) {
              const CongruencePartition part = congruence_closure(alg, pairs);
              std::vector<std::vector<Element>> blocks;
              for (const auto& block : part.blocks())
                  blocks.push_back(block.elements());
              return blocks;
          });
    m.def("quotient",
          [](const FiniteAlgebra& alg, const std::vector<std::vector<Element>>& blocks) {
              const auto result =
                  quotient(alg, CongruencePartition(alg.size(), blocks));
              return py::make_tuple(result.algebra, result.projection.map);
          });
    m.def("check_homomorphism",
          [](const FiniteAlgebra& src, const FiniteAlgebra& dst,
             const std::vector<Element>& map) {
              const auto result = check_homomorphism(
                  src, dst, HomomorphismMap{src.size(), dst.size(), map});
              return py::make_tuple(result.homomorphism, result.surjective);
          });
    m.def("isomorphism_search",
          [](const FiniteAlgebra& a, const FiniteAlgebra& b) -> py::object {
              const auto found = isomorphism_search(a, b);
              if (!found) return py::none();
              return py::cast(found->map);
          });
    m.def("one_point_extensions", [](const FiniteAlgebra& alg) {
        return enumerate_one_point_extensions(alg);
    });

    m.def("fr_prefix",
          [](const py::object& alg, const std::vector<Element>& prefix,
             int max_width, int max_size) {
              return fr_prefix(ref_of(alg), SequencePrefix(prefix), max_width,
                               max_size)
                  .elements();
          },
          py::arg("alg"), py::arg("prefix"), py::arg("max_width"),
          py::arg("max_size"));
    m.def("homogeneity_check",
          [](const py::object& alg, const std::vector<Element>& prefix,
             const std::string& predicate, int max_width, int max_size) {
              const auto report = homogeneity_check(
                  ref_of(alg), SequencePrefix(prefix),
                  SubsetPredicate::parse(predicate), max_width, max_size);
              py::dict out;
              out["verdict"] = report.verdict == HomogeneityVerdict::AllIn
                                   ? "all-in"
                                   : report.verdict == HomogeneityVerdict::AllOut
                                         ? "all-out"
                                         : "mixed";
              out["in"] = report.in_set.elements();
              out["out"] = report.out_set.elements();
              return out;
          },
          py::arg("alg"), py::arg("prefix"), py::arg("predicate"),
          py::arg("max_width"), py::arg("max_size"));
    m.def("verify_dlimit_range", [](int n_max, int max_width, int max_size) {
        return verify_dlimit_range(n_max, max_width, max_size).ok;
    });
    m.def("verify_dlimit_parity_witness",
          [](int n_max, int max_width, int max_size) {
              return verify_dlimit_parity_witness(n_max, max_width, max_size).ok;
          });

    m.def("smallest_open", [](const FiniteAlgebra& alg, Element a) {
        return smallest_open(TopologyBasis::from_algebra(alg), a).elements();
    });
    m.def("fixed_point_density", [](const FiniteAlgebra& alg) {
        return fixed_point_density(alg).dense;
    });
    m.def("clopen_ramsey_lift", [](const FiniteAlgebra& alg) -> py::object {
        const auto lift = clopen_ramsey_lift(alg);
        if (!lift.applicable) return py::none();
        return py::cast(lift.split.elements());
    });

    m.def("regression_names", &regression_names);
    m.def("run_regression", [](const std::string& name) {
        const auto result = run_regression(name);
        return py::make_tuple(result.pass, result.detail);
    });
}
