// Labelings of skeletons by a crossed module, their enumeration, the gauge
// group action, orbit decompositions, and pointed stabilizers.
#ifndef XMS_LABELING_HPP
#define XMS_LABELING_HPP

#include "xms/skeleton.hpp"

namespace xms {

struct XiLabeling {
    std::vector<Elt> alpha; // per region -> H
    std::vector<Elt> beta0; // per edge: beta at gap 0 of the positive orientation
    bool operator==(const XiLabeling&) const = default;
    bool operator<(const XiLabeling& o) const {
        return std::tie(alpha, beta0) < std::tie(o.alpha, o.beta0);
    }
};

// Derived beta values over the gaps of an oriented edge.
std::vector<Elt> beta_list(const CombSkeleton& p, const CrossedModule& cm, const XiLabeling& l,
                           int edge, bool positive);

// The labeled (and optionally colored) link graph of a vertex. Verifies that
// the per-dart labels derived from the graph anchors agree with the labeling.
PlanarXiGraph labeled_link(const CombSkeleton& p, const CrossedModule& cm, const XiLabeling& l,
                           int vertex, const std::vector<int>* coloring = nullptr,
                           const PointedXiFusion* cat = nullptr);

// Conditions: shapes, the cyclic condition at every edge, and 1-sphericality
// of every vertex link.
std::vector<std::string> validate_labeling(const CombSkeleton& p, const CrossedModule& cm,
                                           const XiLabeling& l);

// Complete, duplicate-free enumeration (backtracking over region labels with
// per-edge pruning; the beta choice per edge is a coset of Ker(boundary)).
std::vector<XiLabeling> enumerate_labelings(const CombSkeleton& p, const CrossedModule& cm);

struct GaugeElement {
    std::vector<Elt> lambda; // per ball -> H
    std::vector<Elt> mu;     // per region -> E
};

GaugeElement identity_gauge(const CombSkeleton& p, const CrossedModule& cm);
// product law (a * b)(L) = a(b(L))
GaugeElement gauge_mul(const CombSkeleton& p, const CrossedModule& cm, const GaugeElement& a,
                       const GaugeElement& b);
XiLabeling gauge_act(const CombSkeleton& p, const CrossedModule& cm, const GaugeElement& g,
                     const XiLabeling& l);

struct OrbitDecomposition {
    std::vector<int> orbit_of;          // labeling index -> orbit id
    std::vector<int> representative;    // orbit id -> labeling index (lowest)
    int count() const { return static_cast<int>(representative.size()); }
};

// Orbits under the full gauge group, by closure under one-ball and one-region
// generators.
OrbitDecomposition gauge_orbits(const CombSkeleton& p, const CrossedModule& cm,
                                const std::vector<XiLabeling>& labelings);

// Pointed orbits for single-ball skeletons: the subgroup 1 x Map(Reg, E).
// The stabilizer order of each representative comes from orbit-stabilizer.
struct PointedOrbit {
    int representative = 0;
    std::vector<int> members;
    Rational stabilizer_order;
};
std::vector<PointedOrbit> pointed_orbits_and_stabilizers(const CombSkeleton& p,
                                                         const CrossedModule& cm,
                                                         const std::vector<XiLabeling>& labelings);

// push a labeling through a crossed module morphism: (phi alpha, psi beta)
XiLabeling push_labeling(const XModMorphism& m, const XiLabeling& l);

} // namespace xms

#endif
