#include "xms/cocycle.hpp"

#include <sstream>
#include <stdexcept>

namespace xms {

std::vector<std::string> GroupCocycle3::validate() const {
    std::vector<std::string> bad;
    size_t n = static_cast<size_t>(h.order);
    if (table.size() != n * n * n) {
        bad.push_back("structure: table has wrong size");
        return bad;
    }
    for (const auto& v : table)
        if (v.is_zero()) {
            bad.push_back("value not invertible");
            return bad;
        }
    Elt id = h.identity;
    for (Elt x = 0; x < h.order; ++x)
        for (Elt y = 0; y < h.order; ++y) {
            if (!(*this)(id, x, y).is_one() || !(*this)(x, id, y).is_one() ||
                !(*this)(x, y, id).is_one()) {
                bad.push_back("not normalized at (" + h.name_of(x) + "," + h.name_of(y) + ")");
                return bad;
            }
        }
    for (Elt x = 0; x < h.order; ++x)
        for (Elt y = 0; y < h.order; ++y)
            for (Elt z = 0; z < h.order; ++z)
                for (Elt t = 0; t < h.order; ++t) {
                    Scalar lhs = (*this)(y, z, t) * (*this)(x, h.mul(y, z), t) * (*this)(x, y, z);
                    Scalar rhs = (*this)(h.mul(x, y), z, t) * (*this)(x, y, h.mul(z, t));
                    if (lhs != rhs) {
                        std::ostringstream os;
                        os << "group cocycle identity fails at (" << h.name_of(x) << ","
                           << h.name_of(y) << "," << h.name_of(z) << "," << h.name_of(t) << ")";
                        bad.push_back(os.str());
                        return bad;
                    }
                }
    return bad;
}

GroupCocycle3 constant_group_cocycle(const FiniteGroup& h) {
    GroupCocycle3 w;
    w.h = h;
    w.cyclotomic_order = 1;
    size_t n = static_cast<size_t>(h.order);
    w.table.assign(n * n * n, Scalar::one());
    return w;
}

GroupCocycle3 cyclic_group_cocycle(int n, long k, unsigned root_order) {
    if (root_order % static_cast<unsigned>(n) != 0)
        throw std::invalid_argument("cyclic_group_cocycle: root order must be divisible by n");
    GroupCocycle3 w;
    w.h = cyclic_group(n);
    w.cyclotomic_order = root_order;
    w.table.assign(static_cast<size_t>(n) * n * n, Scalar::one(root_order));
    long stride = root_order / n;
    for (Elt a = 0; a < n; ++a)
        for (Elt b = 0; b < n; ++b)
            for (Elt c = 0; c < n; ++c) {
                long carry = (b + c) / n;
                w.at(a, b, c) = Scalar::root_of_unity(root_order, k * a * carry * stride);
            }
    return w;
}

bool CrossedCocycle3::is_constant_one() const {
    for (const auto& v : table)
        if (!v.is_one()) return false;
    return true;
}

std::vector<std::string> check_cocycle(const CrossedCocycle3& w) {
    std::vector<std::string> bad;
    const FiniteGroup& H = w.cm.H;
    const FiniteGroup& E = w.cm.E;
    size_t expect = static_cast<size_t>(H.order) * H.order * H.order * E.order * E.order * E.order;
    if (w.table.size() != expect) {
        bad.push_back("structure: table has wrong size");
        return bad;
    }
    for (const auto& v : w.table)
        if (v.is_zero()) {
            bad.push_back("value not invertible");
            return bad;
        }
    Elt ih = H.identity, ie = E.identity;
    for (Elt x = 0; x < H.order; ++x)
        for (Elt y = 0; y < H.order; ++y)
            for (Elt e = 0; e < E.order; ++e)
                if (!w(ih, x, y, ie, e, ie).is_one()) {
                    bad.push_back("normalization w(1,x,y,1,e,1)=1 fails at (x=" +
                                  H.name_of(x) + ",y=" + H.name_of(y) + ",e=" + E.name_of(e) + ")");
                    return bad;
                }
    for (Elt x = 0; x < H.order; ++x)
        for (Elt y = 0; y < H.order; ++y)
            if (!w(x, ih, y, ie, ie, ie).is_one()) {
                bad.push_back("normalization w(x,1,y,1,1,1)=1 fails at (x=" + H.name_of(x) +
                              ",y=" + H.name_of(y) + ")");
                return bad;
            }

    auto inv = [&](Elt e) { return E.inv(e); };
    for (Elt x = 0; x < H.order; ++x)
        for (Elt y = 0; y < H.order; ++y)
            for (Elt z = 0; z < H.order; ++z)
                for (Elt t = 0; t < H.order; ++t)
                    for (Elt a = 0; a < E.order; ++a)
                        for (Elt b = 0; b < E.order; ++b)
                            for (Elt c = 0; c < E.order; ++c)
                                for (Elt d = 0; d < E.order; ++d)
                                    for (Elt e = 0; e < E.order; ++e)
                                        for (Elt f = 0; f < E.order; ++f) {
        Scalar lhs = w(x, y, z, a, b, c) *
                     w(x, H.mul(w.cm.bnd(c), H.mul(y, z)), t,
                       E.mul(E.mul(b, a), w.cm.act(x, inv(c))), f, d) *
                     w(y, z, t, c, d, e);
        Scalar rhs = w(H.mul(w.cm.bnd(a), H.mul(x, y)), z, t, b, f, e) *
                     w(x, y, H.mul(w.cm.bnd(e), H.mul(z, t)), a,
                       E.mul(E.mul(E.mul(E.mul(f, b), a), w.cm.act(H.mul(x, y), inv(e))), inv(a)),
                       E.mul(E.mul(d, c), w.cm.act(y, inv(e))));
        if (lhs != rhs) {
            std::ostringstream os;
            os << "cocycle identity fails at (x,y,z,t|a,b,c,d,e,f) = (" << H.name_of(x) << ","
               << H.name_of(y) << "," << H.name_of(z) << "," << H.name_of(t) << "|"
               << E.name_of(a) << "," << E.name_of(b) << "," << E.name_of(c) << ","
               << E.name_of(d) << "," << E.name_of(e) << "," << E.name_of(f) << ")";
            bad.push_back(os.str());
            return bad;
        }
    }

    // consequence of identity + normalization, relied on by the evaluator
    for (Elt x = 0; x < H.order; ++x)
        for (Elt y = 0; y < H.order; ++y)
            if (!w(x, y, ih, ie, ie, ie).is_one()) {
                bad.push_back("internal: derived normalization w(x,y,1,1,1,1)=1 fails");
                return bad;
            }
    return bad;
}

CrossedCocycle3 constant_crossed_cocycle(const CrossedModule& cm, unsigned order) {
    CrossedCocycle3 w;
    w.cm = cm;
    w.cyclotomic_order = order;
    size_t nh = cm.H.order, ne = cm.E.order;
    w.table.assign(nh * nh * nh * ne * ne * ne, Scalar::one(order));
    return w;
}

InflationResult inflate_group_cocycle(const CrossedModule& cm, const GroupCocycle3& wt) {
    if (!same_table(wt.h, cm.H))
        throw std::invalid_argument("inflate_group_cocycle: cocycle lives on a different group");
    auto group_report = wt.validate();
    if (!group_report.empty()) {
        InflationResult r;
        r.cocycle = constant_crossed_cocycle(cm, wt.cyclotomic_order);
        r.report.push_back("input group cocycle rejected: " + group_report.front());
        return r;
    }
    CrossedCocycle3 w = constant_crossed_cocycle(cm, wt.cyclotomic_order);
    for (Elt x = 0; x < cm.H.order; ++x)
        for (Elt y = 0; y < cm.H.order; ++y)
            for (Elt z = 0; z < cm.H.order; ++z) {
                const Scalar& v = wt(x, y, z);
                for (Elt a = 0; a < cm.E.order; ++a)
                    for (Elt b = 0; b < cm.E.order; ++b)
                        for (Elt c = 0; c < cm.E.order; ++c) w.at(x, y, z, a, b, c) = v;
            }
    InflationResult r;
    r.report = check_cocycle(w);
    r.cocycle = std::move(w);
    return r;
}

GroupCocycle3 derive_group_cocycle(const CrossedCocycle3& w) {
    GroupCocycle3 wt;
    wt.h = w.cm.H;
    wt.cyclotomic_order = w.cyclotomic_order;
    size_t n = static_cast<size_t>(w.cm.H.order);
    wt.table.assign(n * n * n, Scalar::one(w.cyclotomic_order));
    for (Elt x = 0; x < w.cm.H.order; ++x)
        for (Elt y = 0; y < w.cm.H.order; ++y)
            for (Elt z = 0; z < w.cm.H.order; ++z) wt.at(x, y, z) = w.derived(x, y, z);
    auto rep = wt.validate();
    if (!rep.empty())
        throw std::domain_error("derived group cocycle fails its own identity: " + rep.front());
    return wt;
}

} // namespace xms
