#include <algorithm>
#include <stdexcept>

#include "ralg/constructions.hpp"

namespace ralg {

namespace {

FiniteAlgebra predecessor_trunc(int n) {
    // universe {0,...,n}, p(0)=0, p(k)=k-1
    std::vector<Element> table;
    table.push_back(0);
    for (Element k = 1; k <= n; ++k) table.push_back(k - 1);
    return FiniteAlgebra(Signature({{"p", 1}}), n + 1, {std::move(table)},
                         "predecessor-trunc(" + std::to_string(n) + ")");
}

Element dlimit_op(Element a, Element b) {
    return a == b ? a : std::max(a, b) - 1;
}

FiniteAlgebra dlimit_trunc(int n) {
    std::vector<Element> table;
    for (Element a = 0; a <= n; ++a)
        for (Element b = 0; b <= n; ++b) table.push_back(dlimit_op(a, b));
    return FiniteAlgebra(Signature({{"f", 2}}), n + 1, {std::move(table)},
                         "dlimit-trunc(" + std::to_string(n) + ")");
}

FiniteAlgebra zmod(int n) {
    std::vector<Element> table;
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) table.push_back((a + b) % n);
    return FiniteAlgebra(Signature({{"add", 2}}), n, {std::move(table)},
                         "zmod(" + std::to_string(n) + ")");
}

FiniteAlgebra swap2() {
    return FiniteAlgebra(Signature({{"s", 1}}), 2, {{1, 0}}, "swap2");
}

RuleAlgebra predecessor_rule() {
    return RuleAlgebra(
        Signature({{"p", 1}}),
        {[](std::span<const Element> a) { return a[0] == 0 ? 0 : a[0] - 1; }},
        "predecessor-rule", FixedPointHint::Predicate,
        [](Element e) { return e == 0; });
}

RuleAlgebra dlimit_rule() {
    return RuleAlgebra(
        Signature({{"f", 2}}),
        {[](std::span<const Element> a) { return dlimit_op(a[0], a[1]); }},
        "dlimit-rule", FixedPointHint::Predicate,
        [](Element) { return true; });  // every natural is idempotent
}

// The shift algebra on the integers, pulled back to the naturals by the
// bijection even -> nonnegative, odd -> negative (2z <-> z, 2|z|-1 <-> -|z|).
Element int_to_nat(Element z) { return z >= 0 ? 2 * z : -2 * z - 1; }
Element nat_to_int(Element e) { return e % 2 == 0 ? e / 2 : -(e + 1) / 2; }

RuleAlgebra z_shift_rule() {
    return RuleAlgebra(
        Signature({{"f", 1}, {"g", 1}}),
        {[](std::span<const Element> a) { return int_to_nat(nat_to_int(a[0]) + 1); },
         [](std::span<const Element> a) { return int_to_nat(nat_to_int(a[0]) - 1); }},
        "z-shift-rule", FixedPointHint::NoneExist);
}

// accepts "name" or "name(arg)" with a single integer argument
struct ParsedName {
    std::string name;
    std::optional<int> arg;
};

ParsedName parse_catalog_spec(const std::string& spec) {
    const auto open = spec.find('(');
    if (open == std::string::npos) return {spec, std::nullopt};
    if (spec.back() != ')')
        throw std::invalid_argument("bad catalog spec '" + spec + "'");
    const std::string name = spec.substr(0, open);
    const std::string arg = spec.substr(open + 1, spec.size() - open - 2);
    try {
        std::size_t used = 0;
        const int v = std::stoi(arg, &used);
        if (used != arg.size()) throw std::invalid_argument(arg);
        return {name, v};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad catalog parameter '" + arg + "'");
    }
}

int require_arg(const ParsedName& p, int min_value) {
    if (!p.arg)
        throw std::invalid_argument("catalog entry '" + p.name +
                                    "' needs a parameter");
    if (*p.arg < min_value)
        throw std::invalid_argument("catalog parameter for '" + p.name +
                                    "' must be >= " + std::to_string(min_value));
    return *p.arg;
}

void require_no_arg(const ParsedName& p) {
    if (p.arg)
        throw std::invalid_argument("catalog entry '" + p.name +
                                    "' takes no parameter");
}

}  // namespace

CatalogEntry catalog(const std::string& spec) {
    const ParsedName p = parse_catalog_spec(spec);
    if (p.name == "predecessor-rule") {
        require_no_arg(p);
        return predecessor_rule();
    }
    if (p.name == "predecessor-trunc") return predecessor_trunc(require_arg(p, 0));
    if (p.name == "dlimit-rule") {
        require_no_arg(p);
        return dlimit_rule();
    }
    if (p.name == "dlimit-trunc") return dlimit_trunc(require_arg(p, 0));
    if (p.name == "z-shift-rule") {
        require_no_arg(p);
        return z_shift_rule();
    }
    if (p.name == "zmod") return zmod(require_arg(p, 1));
    if (p.name == "swap2") {
        require_no_arg(p);
        return swap2();
    }
    throw std::invalid_argument("unknown catalog entry '" + p.name + "'");
}

std::vector<std::string> catalog_names() {
    return {"predecessor-rule", "predecessor-trunc(n)", "dlimit-rule",
            "dlimit-trunc(n)",  "z-shift-rule",         "zmod(n)",
            "swap2"};
}

}  // namespace ralg
