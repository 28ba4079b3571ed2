#pragma once

#include <optional>
#include <vector>

#include "ralg/algebra.hpp"
#include "ralg/closure.hpp"
#include "ralg/decision.hpp"

namespace ralg {

/// Basis of the subalgebra topology on a finite algebra: the basic opens are
/// exactly the subalgebra universes, a Moore family, so the topology is
/// Alexandroff.
class TopologyBasis {
public:
    static TopologyBasis from_algebra(const FiniteAlgebra& alg,
                                      const SubalgebraOptions& opts = {});

    int universe() const { return universe_; }
    const std::vector<ElementSet>& basic_opens() const { return opens_; }
    bool is_basic(const ElementSet& u) const;

private:
    int universe_ = 0;
    std::vector<ElementSet> opens_;
};

/// Intersection of all basic opens containing a; equals the subalgebra
/// generated by a.
ElementSet smallest_open(const TopologyBasis& basis, Element a);

/// True iff u contains the smallest open around each of its points,
/// equivalently iff u is a union of basic opens.
bool is_open(const TopologyBasis& basis, const ElementSet& u);

/// For a basic open u: whether its complement is open as well. Throws when u
/// is not basic.
bool is_clopen_basic(const TopologyBasis& basis, const ElementSet& u);

struct DensityReport {
    bool dense = false;
    std::optional<Element> failing_point;
};

/// Unary algebras: whether the set of fixed points meets every nonempty
/// smallest open, i.e. is dense.
DensityReport fixed_point_density(const FiniteAlgebra& alg);

struct ClopenLift {
    bool applicable = false;       // a qualifying clopen split was found
    ElementSet split;              // the basic open used
    RamseyStatus status = RamseyStatus::Unknown;  // Ramsey when applicable
};

/// Looks for a nontrivial basic open whose complement is also a subalgebra
/// universe; when both restrictions are Ramsey, reports Ramsey. Never
/// contradicts decide_finite.
ClopenLift clopen_ramsey_lift(const FiniteAlgebra& alg);

}  // namespace ralg
