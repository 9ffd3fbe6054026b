#include "xms/labeling.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace xms {

std::vector<Elt> beta_list(const CombSkeleton& p, const CrossedModule& cm, const XiLabeling& l,
                           int edge, bool positive) {
    OrientedEdgeView v = edge_view(p, edge, positive);
    int n = static_cast<int>(v.region.size());
    std::vector<Elt> beta(n);
    // gap 0 of the reversed orientation is the same physical gap as gap 0 of
    // the positive one, so precol3 gives the anchor value directly
    beta[0] = positive ? l.beta0[edge] : cm.E.inv(l.beta0[edge]);
    for (int i = 0; i + 1 < n; ++i) {
        Elt a = l.alpha[v.region[i]];
        Elt conj = v.eps[i] > 0 ? cm.H.inv(a) : a;
        beta[i + 1] = cm.act(conj, beta[i]);
    }
    return beta;
}

PlanarXiGraph labeled_link(const CombSkeleton& p, const CrossedModule& cm, const XiLabeling& l,
                           int vertex, const std::vector<int>* coloring,
                           const PointedXiFusion* cat) {
    const auto& v = p.vertices[vertex];
    PlanarXiGraph g = v.link;
    for (size_t le = 0; le < g.edges.size(); ++le) {
        int region = v.link_edge_region[le];
        g.edges[le].h = l.alpha[region];
        if (coloring) g.edges[le].color = (*coloring)[region];
    }
    // beta values per oriented edge, cached
    std::map<std::pair<int, bool>, std::vector<Elt>> betas;
    auto beta_of = [&](const CombSkeleton::LinkDartRef& ref) {
        auto key = std::make_pair(ref.p_edge, ref.away_positive);
        auto it = betas.find(key);
        if (it == betas.end())
            it = betas.emplace(key, beta_list(p, cm, l, ref.p_edge, ref.away_positive)).first;
        return it->second[ref.ball_index];
    };
    for (int gv = 0; gv < g.n_vertices; ++gv) {
        int anchor_dart = g.rotation[gv][g.anchor_pos[gv]];
        g.anchor_e[gv] = beta_of(v.dart_ref[anchor_dart]);
    }
    g.sphere = true;
    // coherence: the labels derived from the anchors must reproduce the
    // labeling at every dart
    auto lab = derive_labels(g, cm);
    if (!lab.ok())
        throw std::logic_error("labeled_link: link labels inconsistent (" + lab.report.front() +
                               ")");
    for (int d = 0; d < g.dart_count(); ++d)
        if (lab.beta[d] != beta_of(v.dart_ref[d]))
            throw std::logic_error("labeled_link: dart label mismatch");
    if (cat && coloring)
        for (size_t le = 0; le < g.edges.size(); ++le)
            if (cat->deg[g.edges[le].color] != g.edges[le].h)
                throw std::invalid_argument("labeled_link: color degree mismatch");
    return g;
}

std::vector<std::string> validate_labeling(const CombSkeleton& p, const CrossedModule& cm,
                                           const XiLabeling& l) {
    std::vector<std::string> bad;
    if (l.alpha.size() != p.regions.size() || l.beta0.size() != p.edges.size()) {
        bad.push_back("shape mismatch");
        return bad;
    }
    for (Elt a : l.alpha)
        if (a < 0 || a >= cm.H.order) {
            bad.push_back("alpha out of range");
            return bad;
        }
    for (Elt b : l.beta0)
        if (b < 0 || b >= cm.E.order) {
            bad.push_back("beta out of range");
            return bad;
        }
    for (size_t e = 0; e < p.edges.size(); ++e) {
        Elt w = cm.H.identity;
        const auto& edge = p.edges[e];
        for (int i = 0; i < edge.valence(); ++i) {
            Elt a = l.alpha[edge.branch_region[i]];
            w = cm.H.mul(w, edge.branch_eps[i] > 0 ? a : cm.H.inv(a));
        }
        if (cm.bnd(l.beta0[e]) != w)
            bad.push_back("cyclic edge condition fails at edge " + std::to_string(e) +
                          ", branch order from gap 0");
    }
    if (!bad.empty()) return bad;
    for (size_t v = 0; v < p.vertices.size(); ++v) {
        PlanarXiGraph link = labeled_link(p, cm, l, static_cast<int>(v));
        if (!is_one_spherical(link, cm))
            bad.push_back("link of vertex " + std::to_string(v) + " is not 1-spherical");
    }
    return bad;
}

std::vector<XiLabeling> enumerate_labelings(const CombSkeleton& p, const CrossedModule& cm) {
    int nr = static_cast<int>(p.regions.size());
    int ne = static_cast<int>(p.edges.size());
    // for pruning: the edges whose regions are all assigned once region r is set
    std::vector<int> max_region(ne, 0);
    for (int e = 0; e < ne; ++e)
        for (int r : p.edges[e].branch_region) max_region[e] = std::max(max_region[e], r);

    std::vector<XiLabeling> out;
    XiLabeling cur;
    cur.alpha.assign(nr, 0);
    cur.beta0.assign(ne, 0);

    std::function<void(int)> beta_fill = [&](int e) {
        if (e == ne) {
            bool ok = true;
            for (size_t v = 0; v < p.vertices.size() && ok; ++v) {
                PlanarXiGraph link = labeled_link(p, cm, cur, static_cast<int>(v));
                if (!is_one_spherical(link, cm)) ok = false;
            }
            if (ok) out.push_back(cur);
            return;
        }
        Elt w = cm.H.identity;
        const auto& edge = p.edges[e];
        for (int i = 0; i < edge.valence(); ++i) {
            Elt a = cur.alpha[edge.branch_region[i]];
            w = cm.H.mul(w, edge.branch_eps[i] > 0 ? a : cm.H.inv(a));
        }
        for (Elt b = 0; b < cm.E.order; ++b)
            if (cm.bnd(b) == w) {
                cur.beta0[e] = b;
                beta_fill(e + 1);
            }
    };
    std::function<void(int)> alpha_fill = [&](int r) {
        if (r == nr) {
            beta_fill(0);
            return;
        }
        for (Elt a = 0; a < cm.H.order; ++a) {
            cur.alpha[r] = a;
            bool ok = true;
            for (int e = 0; e < ne && ok; ++e) {
                if (max_region[e] != r) continue; // not yet fully assigned
                Elt w = cm.H.identity;
                const auto& edge = p.edges[e];
                for (int i = 0; i < edge.valence(); ++i) {
                    Elt x = cur.alpha[edge.branch_region[i]];
                    w = cm.H.mul(w, edge.branch_eps[i] > 0 ? x : cm.H.inv(x));
                }
                bool hit = false;
                for (Elt b = 0; b < cm.E.order && !hit; ++b)
                    if (cm.bnd(b) == w) hit = true;
                ok = hit;
            }
            if (ok) alpha_fill(r + 1);
        }
    };
    alpha_fill(0);
    return out;
}

GaugeElement identity_gauge(const CombSkeleton& p, const CrossedModule& cm) {
    GaugeElement g;
    g.lambda.assign(p.n_balls, cm.H.identity);
    g.mu.assign(p.regions.size(), cm.E.identity);
    return g;
}

GaugeElement gauge_mul(const CombSkeleton& p, const CrossedModule& cm, const GaugeElement& a,
                       const GaugeElement& b) {
    GaugeElement out;
    out.lambda.resize(p.n_balls);
    out.mu.resize(p.regions.size());
    for (int i = 0; i < p.n_balls; ++i) out.lambda[i] = cm.H.mul(a.lambda[i], b.lambda[i]);
    for (size_t r = 0; r < p.regions.size(); ++r) {
        Elt conj = cm.H.inv(b.lambda[p.regions[r].ball_pos]);
        out.mu[r] = cm.E.mul(b.mu[r], cm.act(conj, a.mu[r]));
    }
    return out;
}

XiLabeling gauge_act(const CombSkeleton& p, const CrossedModule& cm, const GaugeElement& g,
                     const XiLabeling& l) {
    XiLabeling out;
    out.alpha.resize(l.alpha.size());
    out.beta0.resize(l.beta0.size());
    for (size_t r = 0; r < l.alpha.size(); ++r) {
        const auto& reg = p.regions[r];
        out.alpha[r] = cm.H.mul(g.lambda[reg.ball_neg],
                                cm.H.mul(l.alpha[r], cm.H.mul(cm.bnd(g.mu[r]),
                                                              cm.H.inv(g.lambda[reg.ball_pos]))));
    }
    for (size_t e = 0; e < l.beta0.size(); ++e) {
        const auto& edge = p.edges[e];
        // mu_alpha over the loop word gamma_(e, gap 0)
        Elt m = cm.E.identity;
        for (int i = 0; i < edge.valence(); ++i) {
            int r = edge.branch_region[i];
            Elt a = l.alpha[r];
            if (edge.branch_eps[i] > 0)
                m = cm.E.mul(cm.act(cm.H.inv(a), m), g.mu[r]);
            else
                m = cm.act(a, cm.E.mul(m, cm.E.inv(g.mu[r])));
        }
        Elt b0 = g.lambda[edge.gap_ball[0]];
        out.beta0[e] = cm.act(b0, cm.E.mul(l.beta0[e], m));
    }
    return out;
}

namespace {

std::vector<GaugeElement> gauge_generators(const CombSkeleton& p, const CrossedModule& cm,
                                           bool pointed) {
    std::vector<GaugeElement> gens;
    if (!pointed)
        for (int b = 0; b < p.n_balls; ++b)
            for (Elt x = 0; x < cm.H.order; ++x) {
                if (x == cm.H.identity) continue;
                GaugeElement g = identity_gauge(p, cm);
                g.lambda[b] = x;
                gens.push_back(g);
            }
    for (size_t r = 0; r < p.regions.size(); ++r)
        for (Elt e = 0; e < cm.E.order; ++e) {
            if (e == cm.E.identity) continue;
            GaugeElement g = identity_gauge(p, cm);
            g.mu[r] = e;
            gens.push_back(g);
        }
    return gens;
}

std::vector<std::vector<int>> orbit_partition(const CombSkeleton& p, const CrossedModule& cm,
                                              const std::vector<XiLabeling>& labelings,
                                              bool pointed) {
    std::map<XiLabeling, int> index;
    for (size_t i = 0; i < labelings.size(); ++i) index[labelings[i]] = static_cast<int>(i);
    auto gens = gauge_generators(p, cm, pointed);
    std::vector<int> orbit_of(labelings.size(), -1);
    std::vector<std::vector<int>> orbits;
    for (size_t i = 0; i < labelings.size(); ++i) {
        if (orbit_of[i] != -1) continue;
        int id = static_cast<int>(orbits.size());
        orbits.emplace_back();
        std::vector<int> stack{static_cast<int>(i)};
        orbit_of[i] = id;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            orbits[id].push_back(cur);
            for (const auto& g : gens) {
                XiLabeling next = gauge_act(p, cm, g, labelings[cur]);
                auto it = index.find(next);
                if (it == index.end())
                    throw std::logic_error("gauge action left the enumerated labeling set");
                if (orbit_of[it->second] == -1) {
                    orbit_of[it->second] = id;
                    stack.push_back(it->second);
                }
            }
        }
        std::sort(orbits[id].begin(), orbits[id].end());
    }
    return orbits;
}

} // namespace

OrbitDecomposition gauge_orbits(const CombSkeleton& p, const CrossedModule& cm,
                                const std::vector<XiLabeling>& labelings) {
    auto orbits = orbit_partition(p, cm, labelings, false);
    OrbitDecomposition out;
    out.orbit_of.assign(labelings.size(), -1);
    for (size_t id = 0; id < orbits.size(); ++id) {
        out.representative.push_back(orbits[id].front());
        for (int i : orbits[id]) out.orbit_of[i] = static_cast<int>(id);
    }
    return out;
}

std::vector<PointedOrbit> pointed_orbits_and_stabilizers(const CombSkeleton& p,
                                                         const CrossedModule& cm,
                                                         const std::vector<XiLabeling>& labelings) {
    if (p.n_balls != 1)
        throw std::invalid_argument(
            "pointed orbits are defined here only for single-ball skeletons");
    auto orbits = orbit_partition(p, cm, labelings, true);
    // |G*| = |E|^#regions
    Rational group_order(1);
    for (size_t r = 0; r < p.regions.size(); ++r) group_order *= Rational(cm.E.order);
    std::vector<PointedOrbit> out;
    for (auto& members : orbits) {
        PointedOrbit o;
        o.representative = members.front();
        o.stabilizer_order = group_order / Rational(static_cast<long>(members.size()));
        o.members = std::move(members);
        out.push_back(std::move(o));
    }
    return out;
}

XiLabeling push_labeling(const XModMorphism& m, const XiLabeling& l) {
    XiLabeling out;
    out.alpha.reserve(l.alpha.size());
    out.beta0.reserve(l.beta0.size());
    for (Elt a : l.alpha) out.alpha.push_back(m.phi[a]);
    for (Elt b : l.beta0) out.beta0.push_back(m.psi[b]);
    return out;
}

} // namespace xms
