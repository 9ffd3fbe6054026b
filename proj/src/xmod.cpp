#include "xms/xmod.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace xms {

std::vector<std::string> CrossedModule::validate() const {
    std::vector<std::string> bad;
    for (const auto& m : E.validate()) bad.push_back("structure: E: " + m);
    for (const auto& m : H.validate()) bad.push_back("structure: H: " + m);
    if (!bad.empty()) return bad;
    if (static_cast<int>(boundary.size()) != E.order) {
        bad.push_back("structure: boundary table has wrong length");
        return bad;
    }
    for (Elt h : boundary)
        if (h < 0 || h >= H.order) {
            bad.push_back("structure: boundary entry out of range");
            return bad;
        }
    {
        GroupHom b;
        b.source = &E;
        b.target = &H;
        b.image = boundary;
        for (const auto& m : b.validate()) bad.push_back("structure: boundary: " + m);
    }
    {
        GroupAction a;
        a.actor = &H;
        a.space = &E;
        a.table = action;
        for (const auto& m : a.validate()) bad.push_back("structure: action: " + m);
    }
    if (!bad.empty()) return bad;

    // equivariance: bnd(x.e) = x bnd(e) x^-1
    for (Elt x = 0; x < H.order; ++x)
        for (Elt e = 0; e < E.order; ++e)
            if (bnd(act(x, e)) != H.conj(x, bnd(e))) {
                bad.push_back("equivariance fails at (x=" + H.name_of(x) +
                              ", e=" + E.name_of(e) + ")");
            }
    // Peiffer: (bnd e).f = e f e^-1
    for (Elt e = 0; e < E.order; ++e)
        for (Elt f = 0; f < E.order; ++f)
            if (act(bnd(e), f) != E.conj(e, f)) {
                bad.push_back("Peiffer identity fails at (e=" + E.name_of(e) +
                              ", f=" + E.name_of(f) + ")");
            }
    return bad;
}

CrossedModule inclusion_xmod(const FiniteGroup& ambient, const std::vector<Elt>& sub_elems) {
    CrossedModule cm;
    Subgroup s = subgroup_from_elements(ambient, sub_elems);
    cm.E = s.group;
    cm.H = ambient;
    cm.boundary = s.embed;
    cm.action.assign(cm.H.order, std::vector<Elt>(cm.E.order));
    std::vector<Elt> back(ambient.order, -1);
    for (size_t i = 0; i < s.embed.size(); ++i) back[s.embed[i]] = static_cast<Elt>(i);
    for (Elt x = 0; x < cm.H.order; ++x)
        for (Elt e = 0; e < cm.E.order; ++e) {
            Elt c = ambient.conj(x, s.embed[e]);
            if (back[c] < 0)
                throw std::invalid_argument("inclusion_xmod: subgroup is not normal");
            cm.action[x][e] = back[c];
        }
    return cm;
}

CrossedModule trivial_to_one(const FiniteGroup& abelian) {
    CrossedModule cm;
    cm.E = abelian;
    cm.H = trivial_group();
    cm.boundary.assign(abelian.order, 0);
    cm.action.assign(1, std::vector<Elt>(abelian.order));
    for (Elt e = 0; e < abelian.order; ++e) cm.action[0][e] = e;
    return cm;
}

CrossedModule trivial_boundary_xmod(const FiniteGroup& module_grp, const FiniteGroup& h,
                                    const GroupAction& act) {
    CrossedModule cm;
    cm.E = module_grp;
    cm.H = h;
    cm.boundary.assign(module_grp.order, h.identity);
    cm.action = act.table;
    return cm;
}

CrossedModule one_to_group(const FiniteGroup& h) {
    CrossedModule cm;
    cm.E = trivial_group();
    cm.H = h;
    cm.boundary.assign(1, h.identity);
    cm.action.assign(h.order, std::vector<Elt>(1, 0));
    return cm;
}

CrossedModule central_epi_xmod(const FiniteGroup& e, const FiniteGroup& h,
                               const std::vector<Elt>& epi) {
    CrossedModule cm;
    cm.E = e;
    cm.H = h;
    cm.boundary = epi;
    cm.action.assign(h.order, std::vector<Elt>(e.order));
    for (Elt x = 0; x < h.order; ++x)
        for (Elt a = 0; a < e.order; ++a) cm.action[x][a] = a;
    return cm;
}

CrossedModule inner_automorphism_xmod(const FiniteGroup& e) {
    AutGroup aut = automorphism_group(e);
    CrossedModule cm;
    cm.E = e;
    cm.H = aut.group;
    cm.boundary.assign(e.order, 0);
    for (Elt a = 0; a < e.order; ++a) {
        std::vector<Elt> inner(e.order);
        for (Elt x = 0; x < e.order; ++x) inner[x] = e.conj(a, x);
        bool found = false;
        for (int i = 0; i < aut.group.order; ++i)
            if (aut.perms[i] == inner) {
                cm.boundary[a] = i;
                found = true;
                break;
            }
        if (!found) throw std::logic_error("inner automorphism missing from Aut");
    }
    cm.action.assign(aut.group.order, std::vector<Elt>(e.order));
    for (int i = 0; i < aut.group.order; ++i)
        for (Elt x = 0; x < e.order; ++x) cm.action[i][x] = aut.perms[i][x];
    return cm;
}

CrossedModule identity_xmod(const FiniteGroup& g) {
    CrossedModule cm;
    cm.E = g;
    cm.H = g;
    GroupHom id = identity_hom(g);
    cm.boundary = id.image;
    cm.action = conjugation_action(g).table;
    return cm;
}

CrossedModule hom_with_trivial_action(const FiniteGroup& e, const FiniteGroup& h,
                                      std::vector<Elt> boundary) {
    CrossedModule cm;
    cm.E = e;
    cm.H = h;
    cm.boundary = std::move(boundary);
    cm.action.assign(h.order, std::vector<Elt>(e.order));
    for (Elt x = 0; x < h.order; ++x)
        for (Elt a = 0; a < e.order; ++a) cm.action[x][a] = a;
    return cm;
}

KernelInfo subquotients(const CrossedModule& cm) {
    if (!cm.is_valid()) throw std::invalid_argument("subquotients: invalid crossed module");
    KernelInfo out;
    std::vector<Elt> ker;
    for (Elt e = 0; e < cm.E.order; ++e)
        if (cm.bnd(e) == cm.H.identity) ker.push_back(e);
    out.kernel = subgroup_from_elements(cm.E, ker);
    std::set<Elt> im(cm.boundary.begin(), cm.boundary.end());
    out.image = subgroup_from_elements(cm.H, std::vector<Elt>(im.begin(), im.end()));
    out.cokernel = quotient_by_normal(cm.H, out.image.embed);
    out.kernel_central_in_E = true;
    for (Elt k : out.kernel.embed)
        for (Elt e = 0; e < cm.E.order; ++e)
            if (cm.E.mul(k, e) != cm.E.mul(e, k)) out.kernel_central_in_E = false;
    return out;
}

int SemidirectProduct::encode(const CrossedModule& cm, Elt h, Elt e) const {
    return h * cm.E.order + e;
}

SemidirectProduct semidirect_product(const CrossedModule& cm) {
    SemidirectProduct sp;
    int n = cm.H.order * cm.E.order;
    auto enc = [&](Elt h, Elt e) { return h * cm.E.order + e; };
    sp.group.order = n;
    sp.group.identity = enc(cm.H.identity, cm.E.identity);
    sp.group.cayley.assign(n, std::vector<Elt>(n));
    sp.group.inverse.assign(n, 0);
    for (Elt x = 0; x < cm.H.order; ++x)
        for (Elt e = 0; e < cm.E.order; ++e) {
            sp.group.names.push_back("(" + cm.H.name_of(x) + "," + cm.E.name_of(e) + ")");
            for (Elt y = 0; y < cm.H.order; ++y)
                for (Elt f = 0; f < cm.E.order; ++f)
                    sp.group.cayley[enc(x, e)][enc(y, f)] =
                        enc(cm.H.mul(x, y), cm.E.mul(e, cm.act(x, f)));
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (sp.group.cayley[a][b] == sp.group.identity) sp.group.inverse[a] = b;
    sp.inj_h.resize(cm.H.order);
    for (Elt x = 0; x < cm.H.order; ++x) sp.inj_h[x] = enc(x, cm.E.identity);
    sp.inj_e.resize(cm.E.order);
    for (Elt e = 0; e < cm.E.order; ++e) sp.inj_e[e] = enc(cm.H.identity, e);
    sp.to_h.resize(n);
    for (Elt x = 0; x < cm.H.order; ++x)
        for (Elt e = 0; e < cm.E.order; ++e)
            sp.to_h[enc(x, e)] = cm.H.mul(cm.bnd(e), x);
    return sp;
}

std::vector<std::string> XModMorphism::validate() const {
    std::vector<std::string> bad;
    if (!source || !target) { bad.push_back("structure: missing crossed modules"); return bad; }
    if (static_cast<int>(psi.size()) != source->E.order ||
        static_cast<int>(phi.size()) != source->H.order) {
        bad.push_back("structure: psi/phi tables have wrong length");
        return bad;
    }
    {
        GroupHom p;
        p.source = &source->E;
        p.target = &target->E;
        p.image = psi;
        for (const auto& m : p.validate()) bad.push_back("structure: psi: " + m);
        GroupHom q;
        q.source = &source->H;
        q.target = &target->H;
        q.image = phi;
        for (const auto& m : q.validate()) bad.push_back("structure: phi: " + m);
    }
    if (!bad.empty()) return bad;
    for (Elt e = 0; e < source->E.order; ++e)
        if (target->bnd(psi[e]) != phi[source->bnd(e)])
            bad.push_back("square fails at e=" + source->E.name_of(e));
    for (Elt x = 0; x < source->H.order; ++x)
        for (Elt e = 0; e < source->E.order; ++e)
            if (psi[source->act(x, e)] != target->act(phi[x], psi[e]))
                bad.push_back("action preservation fails at (x=" + source->H.name_of(x) +
                              ", e=" + source->E.name_of(e) + ")");
    return bad;
}

XModMorphism identity_morphism(const CrossedModule& cm) {
    XModMorphism m;
    m.source = &cm;
    m.target = &cm;
    m.psi.resize(cm.E.order);
    m.phi.resize(cm.H.order);
    for (Elt e = 0; e < cm.E.order; ++e) m.psi[e] = e;
    for (Elt x = 0; x < cm.H.order; ++x) m.phi[x] = x;
    return m;
}

} // namespace xms
