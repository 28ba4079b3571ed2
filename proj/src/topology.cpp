#include "ralg/topology.hpp"

#include <algorithm>
#include <stdexcept>

namespace ralg {

TopologyBasis TopologyBasis::from_algebra(const FiniteAlgebra& alg,
                                          const SubalgebraOptions& opts) {
    TopologyBasis basis;
    basis.universe_ = alg.size();
    basis.opens_ = enumerate_subalgebras(alg, opts);
    return basis;
}

bool TopologyBasis::is_basic(const ElementSet& u) const {
    return std::find(opens_.begin(), opens_.end(), u) != opens_.end();
}

ElementSet smallest_open(const TopologyBasis& basis, Element a) {
    if (a < 0 || a >= basis.universe())
        throw std::out_of_range("point outside universe");
    std::optional<ElementSet> acc;
    for (const ElementSet& u : basis.basic_opens()) {
        if (!u.contains(a)) continue;
        acc = acc ? set_intersection(*acc, u) : u;
    }
    if (!acc)
        throw std::logic_error("no basic open contains the point");
    return *acc;
}

bool is_open(const TopologyBasis& basis, const ElementSet& u) {
    for (Element a : u)
        if (!smallest_open(basis, a).subset_of(u)) return false;
    return true;
}

bool is_clopen_basic(const TopologyBasis& basis, const ElementSet& u) {
    if (!basis.is_basic(u))
        throw std::invalid_argument("set is not a basic open");
    std::vector<Element> rest;
    for (Element a = 0; a < basis.universe(); ++a)
        if (!u.contains(a)) rest.push_back(a);
    return is_open(basis, ElementSet(std::move(rest)));
}

DensityReport fixed_point_density(const FiniteAlgebra& alg) {
    if (!alg.signature().all_unary())
        throw std::invalid_argument("fixed-point density needs a unary algebra");
    const ElementSet fixed = fixed_points(alg);
    const TopologyBasis basis = TopologyBasis::from_algebra(alg);
    for (Element a = 0; a < alg.size(); ++a) {
        if (set_intersection(smallest_open(basis, a), fixed).empty())
            return DensityReport{false, a};
    }
    return DensityReport{true, std::nullopt};
}

ClopenLift clopen_ramsey_lift(const FiniteAlgebra& alg) {
    const TopologyBasis basis = TopologyBasis::from_algebra(alg);
    const int n = alg.size();
    for (const ElementSet& u : basis.basic_opens()) {
        if (u.empty() || static_cast<int>(u.size()) == n) continue;
        std::vector<Element> rest;
        for (Element a = 0; a < n; ++a)
            if (!u.contains(a)) rest.push_back(a);
        const ElementSet complement(std::move(rest));
        // The complement must itself be a subalgebra universe: a merely open
        // complement has no induced algebra to restrict to.
        if (!basis.is_basic(complement)) continue;
        const auto left = restrict_to_closed(alg, u);
        const auto right = restrict_to_closed(alg, complement);
        if (decide_finite_status(left.algebra) == RamseyStatus::Ramsey &&
            decide_finite_status(right.algebra) == RamseyStatus::Ramsey) {
            return ClopenLift{true, u, RamseyStatus::Ramsey};
        }
    }
    return ClopenLift{};
}

}  // namespace ralg
