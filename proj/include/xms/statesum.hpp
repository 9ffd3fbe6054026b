// The state-sum invariant of labeled skeletons for pointed categories, the
// lens-space trace shortcut, the push-forward comparison, and an independent
// Dijkgraaf-Witten-style oracle for the E = 1 reduction.
#ifndef XMS_STATESUM_HPP
#define XMS_STATESUM_HPP

#include "xms/labeling.hpp"

namespace xms {

struct ColoringTerm {
    std::vector<int> coloring; // region -> simple
    Scalar dim_factor;
    Scalar value; // |c|
};

struct StateSumReport {
    Scalar normalized;   // dim_neutral^-balls * sum
    Scalar unnormalized; // sum over colorings of dim(c) |c|
    int balls = 0;
    long colorings = 0;
    std::vector<ColoringTerm> trace;
};

struct StateSumOptions {
    bool trace = false;
    int jobs = 1;
    bool validate = true;
};

StateSumReport state_sum(const CombSkeleton& p, const XiLabeling& l, const PointedXiFusion& c,
                         const StateSumOptions& opts = {});

// dim_neutral^-1 * sum over i of degree h of dim(i) Tr(sigma_i^q) on the
// rank <= 1 space Hom^e(1, i^(x p)); cross-checked against the state sum on
// the lens skeleton unless disabled.
Scalar lens_invariant(int p, int q, Elt h, Elt e, const PointedXiFusion& c,
                      bool cross_check = true);

struct PushforwardCheck {
    Scalar lhs, rhs;
    bool equal = false;
    int lifted_classes = 0;
};
// Theorem comparison on a single-ball skeleton: lhs = |M,g'| in the pushed
// category, rhs = d_phi^-1 sum over pointed classes g lifting g' of
// (|pi_1'| / |pi_1|) |M,g|_C with pi_1 cardinalities from pointed stabilizers.
PushforwardCheck pushforward_check(const CombSkeleton& p, const XModMorphism& m,
                                   const PointedXiFusion& c, const XiLabeling& target_labeling);

struct DwClassValue {
    bool trivial_class = false;
    Scalar value;
};
// Brute-force cocycle pairing per flat class on the barycentric subdivision:
// product of wt(g01,g12,g23)^sign over subdivision simplices, constant on
// each class (asserted across representatives up to a sample bound).
std::vector<DwClassValue> dw_oracle(const Triangulation& t, const GroupCocycle3& wt);

} // namespace xms

#endif
