// 3-cocycles: ordinary group 3-cocycles on H and crossed-module 3-cocycles
// on H^3 x E^3 with values in roots of unity, validated exhaustively.
#ifndef XMS_COCYCLE_HPP
#define XMS_COCYCLE_HPP

#include "xms/scalar.hpp"
#include "xms/xmod.hpp"

namespace xms {

struct GroupCocycle3 {
    FiniteGroup h;
    unsigned cyclotomic_order = 1;
    std::vector<Scalar> table; // |H|^3, index ((x*|H|)+y)*|H|+z

    const Scalar& operator()(Elt x, Elt y, Elt z) const {
        return table[(static_cast<size_t>(x) * h.order + y) * h.order + z];
    }
    Scalar& at(Elt x, Elt y, Elt z) {
        return table[(static_cast<size_t>(x) * h.order + y) * h.order + z];
    }
    // Cocycle identity, normalization (any argument = 1), invertible values.
    std::vector<std::string> validate() const;
};

GroupCocycle3 constant_group_cocycle(const FiniteGroup& h);
// On Z/n: w(a,b,c) = zeta_{root_order}^{k * a * floor((b+c)/n) * root_order/n}.
// root_order must be a multiple of n; k selects the class in H^3 = Z/n.
GroupCocycle3 cyclic_group_cocycle(int n, long k, unsigned root_order);

struct CrossedCocycle3 {
    CrossedModule cm;
    unsigned cyclotomic_order = 1;
    std::vector<Scalar> table; // |H|^3 * |E|^3

    size_t index(Elt x, Elt y, Elt z, Elt a, Elt b, Elt c) const {
        size_t nh = cm.H.order, ne = cm.E.order;
        return ((((static_cast<size_t>(x) * nh + y) * nh + z) * ne + a) * ne + b) * ne + c;
    }
    const Scalar& operator()(Elt x, Elt y, Elt z, Elt a, Elt b, Elt c) const {
        return table[index(x, y, z, a, b, c)];
    }
    Scalar& at(Elt x, Elt y, Elt z, Elt a, Elt b, Elt c) {
        return table[index(x, y, z, a, b, c)];
    }
    Scalar derived(Elt x, Elt y, Elt z) const { // the underlying group cocycle
        return (*this)(x, y, z, cm.E.identity, cm.E.identity, cm.E.identity);
    }
    bool is_constant_one() const;
};

// Exhaustive check over all |H|^4 * |E|^6 instances of the crossed-module
// 3-cocycle identity, plus normalization and invertibility. The first
// violating 10-tuple is named in the report.
std::vector<std::string> check_cocycle(const CrossedCocycle3& w);

CrossedCocycle3 constant_crossed_cocycle(const CrossedModule& cm, unsigned order = 1);

// w(x,y,z,a,b,c) := wt(x,y,z). The result is a candidate only; the returned
// report is that of check_cocycle run on it (empty iff usable).
struct InflationResult {
    CrossedCocycle3 cocycle;
    std::vector<std::string> report;
    bool valid() const { return report.empty(); }
};
InflationResult inflate_group_cocycle(const CrossedModule& cm, const GroupCocycle3& wt);

// Derive the group cocycle and check it independently; throws if the
// crossed cocycle was invalid enough to break the derived identity.
GroupCocycle3 derive_group_cocycle(const CrossedCocycle3& w);

} // namespace xms

#endif
