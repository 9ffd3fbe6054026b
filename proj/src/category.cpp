#include "xms/category.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace xms {

int PointedXiFusion::fuse_word(const Word& w) const {
    int acc = unit;
    for (const auto& s : w) acc = fuse(acc, fold(s));
    return acc;
}

Elt PointedXiFusion::deg_word(const Word& w) const {
    Elt h = cm.H.identity;
    for (const auto& s : w) h = cm.H.mul(h, deg_of(s));
    return h;
}

int PointedXiFusion::hom_rank(int i, Elt e, int j) const {
    if (!push) return e_act[e][i] == j ? 1 : 0;
    int count = 0;
    const auto& base = *push->base;
    for (Elt le = 0; le < push->src.E.order; ++le)
        if (push->psi[le] == e && base.e_act[le][push->embed[i]] == push->embed[j]) ++count;
    return count;
}

int PointedXiFusion::mult_index(const Word& word, Elt e) const {
    if (!push) return fuse_word(word) == e_act[e][unit] ? 1 : 0;
    const auto& base = *push->base;
    Word bw = to_base_word(word);
    int target = base.fuse_word(bw);
    int count = 0;
    for (Elt le = 0; le < push->src.E.order; ++le)
        if (push->psi[le] == e && base.e_act[le][base.unit] == target) ++count;
    return count;
}

std::optional<Elt> PointedXiFusion::lift_degree(Elt e, const Word& base_word) const {
    if (!push) {
        int target = fuse_word(base_word);
        return e_act[e][unit] == target ? std::optional<Elt>(e) : std::nullopt;
    }
    const auto& base = *push->base;
    int target = base.fuse_word(base_word);
    for (Elt le = 0; le < push->src.E.order; ++le)
        if (push->psi[le] == e && base.e_act[le][base.unit] == target) return le;
    return std::nullopt;
}

Word PointedXiFusion::to_base_word(const Word& w) const {
    if (!push) return w;
    Word out = w;
    for (auto& s : out) s.simple = push->embed[s.simple];
    return out;
}

Scalar PointedXiFusion::dim_neutral() const {
    std::optional<Scalar> value;
    for (Elt h = 0; h < cm.H.order; ++h) {
        Scalar sum = Scalar::zero();
        bool any = false;
        for (int i = 0; i < n; ++i)
            if (deg[i] == h) {
                sum += dim_tab[i] * dim_tab[i];
                any = true;
            }
        if (!any) throw std::domain_error("dim_neutral: empty degree fiber at h=" +
                                          cm.H.name_of(h));
        if (!value) value = sum;
        else if (*value != sum)
            throw std::domain_error("dim_neutral: fiber sums depend on the degree");
    }
    return *value;
}

Scalar PointedXiFusion::tw(Elt x, Elt y, Elt z, Elt a, Elt b, Elt c) const {
    if (!twist) return Scalar::one();
    return (*twist)(x, y, z, a, b, c);
}

Scalar PointedXiFusion::tw_group(Elt x, Elt y, Elt z) const {
    if (!twist) return Scalar::one();
    return twist->derived(x, y, z);
}

std::vector<int> PointedXiFusion::simples_of_degree(Elt h) const {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (deg[i] == h) out.push_back(i);
    return out;
}

std::vector<std::string> PointedXiFusion::validate() const {
    std::vector<std::string> bad;
    auto cm_rep = cm.validate();
    for (auto& m : cm_rep) bad.push_back("cm: " + m);
    if (!bad.empty()) return bad;
    if (n <= 0 || static_cast<int>(deg.size()) != n ||
        static_cast<int>(fuse_tab.size()) != n || static_cast<int>(dual_tab.size()) != n ||
        static_cast<int>(dim_tab.size()) != n ||
        static_cast<int>(e_act.size()) != cm.E.order) {
        bad.push_back("structure: table sizes inconsistent");
        return bad;
    }
    if (deg[unit] != cm.H.identity) bad.push_back("unit is not of trivial degree");
    if (!dim_tab[unit].is_one()) bad.push_back("dim(unit) is not 1");
    for (int i = 0; i < n; ++i) {
        if (dim_tab[i].is_zero()) bad.push_back("dim not invertible at simple " + std::to_string(i));
        if (deg[dual_tab[i]] != cm.H.inv(deg[i]))
            bad.push_back("deg(dual) != deg^-1 at simple " + std::to_string(i));
        if (fuse(unit, i) != i || fuse(i, unit) != i)
            bad.push_back("unit is not neutral for fusion at " + std::to_string(i));
        for (int j = 0; j < n; ++j)
            if (deg[fuse(i, j)] != cm.H.mul(deg[i], deg[j]))
                bad.push_back("degree not multiplicative at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
    // e_act is a left action compatible with the boundary
    for (int i = 0; i < n; ++i) {
        if (e_act[cm.E.identity][i] != i) bad.push_back("e-action: identity acts nontrivially");
        for (Elt e = 0; e < cm.E.order; ++e) {
            if (deg[e_act[e][i]] != cm.H.mul(cm.bnd(e), deg[i]))
                bad.push_back("e-action degree compatibility fails");
            for (Elt f = 0; f < cm.E.order; ++f)
                if (e_act[cm.E.mul(f, e)][i] != e_act[f][e_act[e][i]])
                    bad.push_back("e-action is not a left action");
        }
    }
    // every degree fiber nonempty (chi-fusion)
    for (Elt h = 0; h < cm.H.order; ++h)
        if (simples_of_degree(h).empty())
            bad.push_back("empty simple fiber at degree " + cm.H.name_of(h));
    if (twist && push) bad.push_back("push-forward categories cannot carry a twist");
    if (twist && !same_table(twist->cm.H, cm.H))
        bad.push_back("twist lives on a different crossed module");
    return bad;
}

PointedXiFusion linearized_2group(const CrossedModule& cm) {
    if (!cm.is_valid()) throw std::invalid_argument("linearized_2group: invalid crossed module");
    PointedXiFusion c;
    c.cm = cm;
    c.n = cm.H.order;
    c.unit = cm.H.identity;
    c.deg.resize(c.n);
    for (int x = 0; x < c.n; ++x) c.deg[x] = x;
    c.fuse_tab = cm.H.cayley;
    c.dual_tab = cm.H.inverse;
    c.dim_tab.assign(c.n, Scalar::one());
    c.e_act.assign(cm.E.order, std::vector<int>(c.n));
    for (Elt e = 0; e < cm.E.order; ++e)
        for (int x = 0; x < c.n; ++x) c.e_act[e][x] = cm.H.mul(cm.bnd(e), x);
    return c;
}

PointedXiFusion graded_vect(const CrossedModule& cm) {
    GroupHom b;
    b.source = &cm.E;
    b.target = &cm.H;
    b.image = cm.boundary;
    if (!b.is_injective())
        throw std::invalid_argument("graded_vect: boundary must be injective");
    // combinatorially identical to the linearized 2-group for inclusions:
    // simples k_h, deg id, k_g =_e k_h iff bnd(e) = h g^-1
    return linearized_2group(cm);
}

PointedXiFusion twist_category(const PointedXiFusion& c, const CrossedCocycle3& w) {
    if (c.is_twisted()) throw std::invalid_argument("twist_category: already twisted");
    if (c.is_pushforward())
        throw std::invalid_argument("twist_category: twisted push-forwards are unsupported");
    if (!same_table(w.cm.H, c.cm.H) || !same_table(w.cm.E, c.cm.E) ||
        w.cm.boundary != c.cm.boundary || w.cm.action != c.cm.action)
        throw std::invalid_argument("twist_category: cocycle lives on a different crossed module");
    auto rep = check_cocycle(w);
    if (!rep.empty())
        throw std::invalid_argument("twist_category: cocycle rejected: " + rep.front());
    PointedXiFusion out = c;
    out.twist = w;
    return out;
}

PointedXiFusion pushforward_category(const XModMorphism& m, const PointedXiFusion& c) {
    auto mrep = m.validate();
    if (!mrep.empty())
        throw std::invalid_argument("pushforward: invalid morphism: " + mrep.front());
    if (c.is_twisted() || c.is_pushforward())
        throw std::invalid_argument("pushforward: input category must be basic and untwisted");
    const CrossedModule& src = *m.source;
    const CrossedModule& tgt = *m.target;
    if (!same_table(src.E, c.cm.E) || !same_table(src.H, c.cm.H))
        throw std::invalid_argument("pushforward: category is not graded by the source");
    {
        GroupHom psi{&src.E, &tgt.E, m.psi}, phi{&src.H, &tgt.H, m.phi};
        if (!psi.is_surjective()) throw std::invalid_argument("pushforward: psi not surjective");
        if (!phi.is_surjective()) throw std::invalid_argument("pushforward: phi not surjective");
        for (Elt e : psi.kernel_elements())
            if (src.bnd(e) == src.H.identity && e != src.E.identity)
                throw std::invalid_argument("pushforward: Ker(psi) n Ker(boundary) nontrivial");
    }

    auto push = std::make_shared<PointedXiFusion::Push>();
    push->base = std::make_shared<PointedXiFusion>(c);
    push->src = src;
    push->psi = m.psi;
    push->phi = m.phi;
    for (Elt e = 0; e < src.E.order; ++e)
        if (m.psi[e] == tgt.E.identity) push->ker_psi.push_back(e);

    // Ker(psi)-orbits on base simples; the kernel acts freely.
    int nb = c.n;
    push->project.assign(nb, -1);
    std::vector<int> reps;
    for (int i = 0; i < nb; ++i) {
        if (push->project[i] != -1) continue;
        // force the unit to represent its own orbit
        int rep = i;
        std::set<int> orbit;
        for (Elt e : push->ker_psi) orbit.insert(c.e_act[e][i]);
        if (orbit.size() != push->ker_psi.size())
            throw std::logic_error("pushforward: Ker(psi) does not act freely");
        if (orbit.count(c.unit)) rep = c.unit;
        int idx = static_cast<int>(reps.size());
        reps.push_back(rep);
        for (int j : orbit) push->project[j] = idx;
    }
    push->embed = reps;

    PointedXiFusion out;
    out.cm = tgt;
    out.n = static_cast<int>(reps.size());
    out.deg.resize(out.n);
    out.dual_tab.resize(out.n);
    out.dim_tab.resize(out.n);
    out.fuse_tab.assign(out.n, std::vector<int>(out.n));
    for (int a = 0; a < out.n; ++a) {
        out.deg[a] = m.phi[c.deg[reps[a]]];
        out.dual_tab[a] = push->project[c.dual_tab[reps[a]]];
        out.dim_tab[a] = c.dim_tab[reps[a]];
        for (int b = 0; b < out.n; ++b)
            out.fuse_tab[a][b] = push->project[c.fuse(reps[a], reps[b])];
    }
    out.unit = push->project[c.unit];
    out.e_act.assign(tgt.E.order, std::vector<int>(out.n));
    for (Elt ep = 0; ep < tgt.E.order; ++ep) {
        // any lift acts the same on orbits
        Elt lift = -1;
        for (Elt e = 0; e < src.E.order; ++e)
            if (m.psi[e] == ep) { lift = e; break; }
        if (lift < 0) throw std::logic_error("pushforward: psi lift missing");
        for (int a = 0; a < out.n; ++a)
            out.e_act[ep][a] = push->project[c.e_act[lift][reps[a]]];
    }
    {
        int kphi = 0;
        for (Elt x = 0; x < src.H.order; ++x)
            if (m.phi[x] == tgt.H.identity) ++kphi;
        push->d_phi = Scalar(kphi, static_cast<long>(push->ker_psi.size()));
    }
    out.push = push;
    return out;
}

} // namespace xms
