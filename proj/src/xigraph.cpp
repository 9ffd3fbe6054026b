#include "xms/xigraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace xms {

// ------------------------------------------------------------- CyclicXiSet

std::vector<std::string> CyclicXiSet::validate(const CrossedModule& cm,
                                               const PointedXiFusion* cat) const {
    std::vector<std::string> bad;
    size_t n = alpha.size();
    if (beta.size() != n || eps.size() != n || (!color.empty() && color.size() != n)) {
        bad.push_back("structure: component sizes differ");
        return bad;
    }
    if (n == 0) return bad;
    for (size_t s = 0; s < n; ++s) {
        // eq: bnd(beta(s)) = alpha(s1)^eps1 ... alpha(sn)^epsn starting at s
        Elt w = cm.H.identity;
        for (size_t j = 0; j < n; ++j) {
            size_t i = (s + j) % n;
            Elt a = alpha[i];
            w = cm.H.mul(w, eps[i] > 0 ? a : cm.H.inv(a));
        }
        if (cm.bnd(beta[s]) != w) {
            bad.push_back("cyclic condition 1 fails at position " + std::to_string(s));
            return bad;
        }
        size_t suc = (s + 1) % n;
        Elt conj = eps[s] > 0 ? cm.H.inv(alpha[s]) : alpha[s];
        if (beta[suc] != cm.act(conj, beta[s])) {
            bad.push_back("cyclic condition 2 fails at position " + std::to_string(s));
            return bad;
        }
    }
    if (cat && !color.empty())
        for (size_t s = 0; s < n; ++s)
            if (cat->deg[color[s]] != alpha[s]) {
                bad.push_back("color degree mismatch at position " + std::to_string(s));
                return bad;
            }
    return bad;
}

void CyclicXiSet::derive_betas(const CrossedModule& cm, size_t anchor, Elt beta_anchor) {
    size_t n = alpha.size();
    beta.assign(n, cm.E.identity);
    beta[anchor] = beta_anchor;
    for (size_t j = 0; j < n; ++j) {
        size_t s = (anchor + j) % n;
        size_t suc = (s + 1) % n;
        if (suc == anchor) break;
        Elt conj = eps[s] > 0 ? cm.H.inv(alpha[s]) : alpha[s];
        beta[suc] = cm.act(conj, beta[s]);
    }
}

// ----------------------------------------------------------- PlanarXiGraph

std::vector<std::string> PlanarXiGraph::validate_structure() const {
    std::vector<std::string> bad;
    if (static_cast<int>(rotation.size()) != n_vertices) {
        bad.push_back("rotation table size mismatch");
        return bad;
    }
    std::vector<int> seen(dart_count(), 0);
    for (int v = 0; v < n_vertices && bad.empty(); ++v) {
        if (rotation[v].empty()) bad.push_back("vertex of valence 0");
        for (int d : rotation[v]) {
            if (d < 0 || d >= dart_count()) { bad.push_back("dart out of range"); break; }
            if (vertex_of(d) != v) { bad.push_back("dart listed at the wrong vertex"); break; }
            if (seen[d]++) { bad.push_back("dart listed twice"); break; }
        }
    }
    for (int d = 0; d < dart_count() && bad.empty(); ++d)
        if (!seen[d]) bad.push_back("dart missing from the rotation system");
    if (static_cast<int>(anchor_pos.size()) != n_vertices ||
        static_cast<int>(anchor_e.size()) != n_vertices)
        bad.push_back("anchor tables have wrong size");
    return bad;
}

bool PlanarXiGraph::connected() const {
    if (n_vertices == 0) return true;
    std::vector<char> vis(n_vertices, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int d : rotation[v]) {
            int u = vertex_of(twin(d));
            if (!vis[u]) { vis[u] = 1; stack.push_back(u); }
        }
    }
    return std::all_of(vis.begin(), vis.end(), [](char c) { return c != 0; });
}

FaceData trace_faces(const PlanarXiGraph& g) {
    FaceData out;
    int nd = g.dart_count();
    out.face_of.assign(nd, -1);
    // position of each dart in its rotation list
    std::vector<int> pos(nd, -1);
    for (int v = 0; v < g.n_vertices; ++v)
        for (size_t i = 0; i < g.rotation[v].size(); ++i) pos[g.rotation[v][i]] = static_cast<int>(i);
    auto next_on_face = [&](int d) {
        int t = g.twin(d);
        int u = g.vertex_of(t);
        const auto& rot = g.rotation[u];
        return rot[(pos[t] + 1) % rot.size()];
    };
    for (int d0 = 0; d0 < nd; ++d0) {
        if (out.face_of[d0] != -1) continue;
        int f = out.n_faces++;
        out.orbits.emplace_back();
        int d = d0;
        do {
            out.face_of[d] = f;
            out.orbits[f].push_back(d);
            d = next_on_face(d);
        } while (d != d0);
    }
    long v = g.n_vertices, e = static_cast<long>(g.edges.size()), fcount = out.n_faces;
    out.genus_zero = (v - e + fcount == 2);
    return out;
}

DerivedLabels derive_labels(const PlanarXiGraph& g, const CrossedModule& cm) {
    DerivedLabels out;
    out.beta.assign(g.dart_count(), cm.E.identity);
    for (int v = 0; v < g.n_vertices; ++v) {
        const auto& rot = g.rotation[v];
        size_t n = rot.size();
        size_t a = static_cast<size_t>(g.anchor_pos[v]);
        if (a >= n) {
            out.report.push_back("anchor position out of range at vertex " + std::to_string(v));
            return out;
        }
        // propagate eq 2 from the anchor; then verify eq 1 there
        Elt cur = g.anchor_e[v];
        out.beta[rot[a]] = cur;
        for (size_t j = 0; j + 1 < n; ++j) {
            size_t s = (a + j) % n;
            size_t suc = (a + j + 1) % n;
            int ds = rot[s];
            Elt alpha = g.edges[g.edge_of(ds)].h;
            Elt conj = g.eps_of(ds) > 0 ? cm.H.inv(alpha) : alpha;
            cur = cm.act(conj, cur);
            out.beta[rot[suc]] = cur;
        }
        Elt w = cm.H.identity;
        for (size_t j = 0; j < n; ++j) {
            int ds = rot[(a + j) % n];
            Elt alpha = g.edges[g.edge_of(ds)].h;
            w = cm.H.mul(w, g.eps_of(ds) > 0 ? alpha : cm.H.inv(alpha));
        }
        if (cm.bnd(g.anchor_e[v]) != w) {
            out.report.push_back("cyclic condition fails at vertex " + std::to_string(v));
            return out;
        }
    }
    return out;
}

CyclicXiSet vertex_cyclic_set(const PlanarXiGraph& g, const DerivedLabels& lab, int v,
                              int start) {
    CyclicXiSet s;
    const auto& rot = g.rotation[v];
    size_t n = rot.size();
    for (size_t j = 0; j < n; ++j) {
        int d = rot[(start + j) % n];
        const XiEdge& e = g.edges[g.edge_of(d)];
        s.alpha.push_back(e.h);
        s.beta.push_back(lab.beta[d]);
        s.eps.push_back(g.eps_of(d));
        s.color.push_back(e.color);
    }
    if (std::all_of(s.color.begin(), s.color.end(), [](int c) { return c < 0; })) s.color.clear();
    return s;
}

// ------------------------------------------------------------------- grade

namespace {

struct FaceTree {
    std::vector<char> tree_child; // per dart: crossing parent->child at this dart
    std::vector<int> entry_of_face; // face -> dart along which it is entered (-1 root)
};

FaceTree build_face_tree(const PlanarXiGraph& g, const FaceData& faces, int root_face,
                         std::mt19937* rng) {
    FaceTree t;
    t.tree_child.assign(g.dart_count(), 0);
    t.entry_of_face.assign(faces.n_faces, -2);
    t.entry_of_face[root_face] = -1;
    std::vector<int> stack{root_face};
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        std::vector<int> ds = faces.orbits[f];
        if (rng) std::shuffle(ds.begin(), ds.end(), *rng);
        for (int d : ds) {
            int nf = faces.face_of[g.twin(d)];
            if (t.entry_of_face[nf] != -2) continue;
            t.entry_of_face[nf] = g.twin(d);
            t.tree_child[d] = 1;
            stack.push_back(nf);
        }
    }
    return t;
}

} // namespace

ArcSystem canonical_arcs(const PlanarXiGraph& g, const FaceData& faces, std::mt19937* rng) {
    if (!g.connected()) throw std::invalid_argument("canonical_arcs: graph must be connected");
    int root_face = faces.face_of[g.rotation[g.outer_vertex][g.outer_pos]];
    FaceTree tree = build_face_tree(g, faces, root_face, rng);

    // choose which corner of each vertex carries its arc tip
    std::vector<int> corner_choice(g.n_vertices, 0);
    if (rng)
        for (int v = 0; v < g.n_vertices; ++v)
            corner_choice[v] =
                std::uniform_int_distribution<int>(0, static_cast<int>(g.rotation[v].size()) - 1)(*rng);

    std::vector<int> pos_in_orbit(g.dart_count(), -1);
    for (int f = 0; f < faces.n_faces; ++f)
        for (size_t i = 0; i < faces.orbits[f].size(); ++i)
            pos_in_orbit[faces.orbits[f][i]] = static_cast<int>(i);
    std::vector<int> pos_in_rot(g.dart_count(), -1);
    for (int v = 0; v < g.n_vertices; ++v)
        for (size_t i = 0; i < g.rotation[v].size(); ++i)
            pos_in_rot[g.rotation[v][i]] = static_cast<int>(i);

    ArcSystem out;
    out.arcs.assign(g.n_vertices, {});
    std::vector<int> seen_corners(g.n_vertices, 0);
    std::vector<char> landed(g.n_vertices, 0);
    std::vector<std::pair<int, int>> crossings; // running stack

    // start position on the root orbit
    const auto& root_orbit = faces.orbits[root_face];
    int start_idx = 0;
    if (rng) start_idx = std::uniform_int_distribution<int>(0, static_cast<int>(root_orbit.size()) - 1)(*rng);
    else {
        int d0 = g.rotation[g.outer_vertex][g.outer_pos];
        start_idx = pos_in_orbit[d0];
    }

    // recursive contour of the face tree: crossings happen mid-segment, so a
    // descent along dart `cur` comes before the corner at the head of `cur`
    auto next_dart = [&](int d) {
        int t = g.twin(d);
        int u = g.vertex_of(t);
        const auto& rot = g.rotation[u];
        return rot[(pos_in_rot[t] + 1) % rot.size()];
    };
    std::function<void(int, int)> walk = [&](int f, int enter_idx) {
        const auto& orbit = faces.orbits[f];
        int n = static_cast<int>(orbit.size());
        for (int j = 0; j < n; ++j) {
            int cur = orbit[(enter_idx + j) % n];
            if (tree.tree_child[cur]) {
                // sign of crossing the edge from the left of the dart to its
                // right, relative to the stored edge orientation
                int sign = (cur & 1) ? +1 : -1;
                crossings.emplace_back(g.edge_of(cur), sign);
                walk(faces.face_of[g.twin(cur)], pos_in_orbit[g.twin(cur)]);
                crossings.pop_back();
            }
            int t = g.twin(cur);
            int u = g.vertex_of(t);
            int land_dart = next_dart(cur);
            if (!landed[u] && seen_corners[u] == corner_choice[u]) {
                landed[u] = 1;
                ArcSystem::Arc arc;
                arc.crossings = crossings;
                arc.landing_pos = pos_in_rot[land_dart];
                out.arcs[u] = std::move(arc);
                out.visit_order.push_back(u);
            }
            seen_corners[u]++;
        }
    };
    walk(root_face, start_idx);
    for (int v = 0; v < g.n_vertices; ++v)
        if (!landed[v]) throw std::logic_error("canonical_arcs: vertex not reached");
    // the contour encounters the arcs counterclockwise around the basepoint;
    // the grade wants the clockwise enumeration
    std::reverse(out.visit_order.begin(), out.visit_order.end());
    return out;
}

Elt grade(const PlanarXiGraph& g, const CrossedModule& cm, const DerivedLabels& lab,
          const ArcSystem& arcs) {
    Elt total = cm.E.identity;
    for (int v : arcs.visit_order) {
        const auto& arc = arcs.arcs[v];
        Elt h = cm.H.identity;
        for (auto [edge, sign] : arc.crossings) {
            Elt a = g.edges[edge].h;
            h = cm.H.mul(h, sign > 0 ? a : cm.H.inv(a));
        }
        Elt e = lab.beta[g.rotation[v][arc.landing_pos]];
        total = cm.E.mul(total, cm.act(h, e));
    }
    if (cm.bnd(total) != cm.H.identity)
        throw std::domain_error("grade: value escapes the kernel of the boundary map");
    return total;
}

namespace {

std::vector<std::vector<int>> split_components(const PlanarXiGraph& g) {
    std::vector<int> comp(g.n_vertices, -1);
    int nc = 0;
    for (int v0 = 0; v0 < g.n_vertices; ++v0) {
        if (comp[v0] != -1) continue;
        int c = nc++;
        std::vector<int> stack{v0};
        comp[v0] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int d : g.rotation[v]) {
                int u = g.vertex_of(g.twin(d));
                if (comp[u] == -1) { comp[u] = c; stack.push_back(u); }
            }
        }
    }
    std::vector<std::vector<int>> out(nc);
    for (int v = 0; v < g.n_vertices; ++v) out[comp[v]].push_back(v);
    return out;
}

PlanarXiGraph component_subgraph(const PlanarXiGraph& g, const std::vector<int>& verts) {
    std::vector<int> vmap(g.n_vertices, -1);
    for (size_t i = 0; i < verts.size(); ++i) vmap[verts[i]] = static_cast<int>(i);
    PlanarXiGraph out;
    out.n_vertices = static_cast<int>(verts.size());
    out.sphere = g.sphere;
    std::vector<int> emap(g.edges.size(), -1);
    for (size_t e = 0; e < g.edges.size(); ++e)
        if (vmap[g.edges[e].from] != -1) {
            emap[e] = static_cast<int>(out.edges.size());
            XiEdge ne = g.edges[e];
            ne.from = vmap[ne.from];
            ne.to = vmap[ne.to];
            out.edges.push_back(ne);
        }
    out.rotation.resize(out.n_vertices);
    for (int v : verts) {
        auto& rot = out.rotation[vmap[v]];
        for (int d : g.rotation[v]) rot.push_back(2 * emap[g.edge_of(d)] + (d & 1));
    }
    out.anchor_pos.resize(out.n_vertices);
    out.anchor_e.resize(out.n_vertices);
    for (int v : verts) {
        out.anchor_pos[vmap[v]] = g.anchor_pos[v];
        out.anchor_e[vmap[v]] = g.anchor_e[v];
    }
    if (vmap[g.outer_vertex] != -1) {
        out.outer_vertex = vmap[g.outer_vertex];
        out.outer_pos = g.outer_pos;
    } else {
        out.outer_vertex = 0;
        out.outer_pos = 0;
    }
    return out;
}

} // namespace

Elt grade_canonical(const PlanarXiGraph& g, const CrossedModule& cm) {
    auto comps = split_components(g);
    Elt total = cm.E.identity;
    for (const auto& verts : comps) {
        PlanarXiGraph sub = component_subgraph(g, verts);
        auto lab = derive_labels(sub, cm);
        if (!lab.ok()) throw std::invalid_argument("grade: " + lab.report.front());
        auto faces = trace_faces(sub);
        if (!faces.genus_zero) throw std::invalid_argument("grade: rotation system is not planar");
        auto arcs = canonical_arcs(sub, faces);
        total = cm.E.mul(total, grade(sub, cm, lab, arcs));
    }
    return total;
}

bool is_one_spherical(const PlanarXiGraph& g, const CrossedModule& cm) {
    if (!g.sphere) throw std::invalid_argument("is_one_spherical: sphere flag not set");
    PlanarXiGraph flat = g;
    flat.sphere = false;
    return grade_canonical(flat, cm) == cm.E.identity;
}

// -------------------------------------------------------------- evaluation

namespace {

struct EvalState {
    Word frontier;
    Scalar coef = Scalar::one();
    Elt e;
    bool zero = false;
};

Elt word_degree(const PointedXiFusion& cat, const Word& w) { return cat.deg_word(w); }

// coherence scalar of l(U) (x) l(V) => leftcomb(UV); depends on U via degree
Scalar kappa(const PointedXiFusion& cat, Elt hU, const Word& V) {
    Scalar k = Scalar::one();
    if (V.size() < 2) return k;
    std::vector<Elt> pre(V.size() + 1);
    pre[0] = cat.cm.H.identity;
    for (size_t i = 0; i < V.size(); ++i) pre[i + 1] = cat.cm.H.mul(pre[i], cat.deg_of(V[i]));
    for (size_t m = V.size(); m >= 2; --m)
        k *= cat.tw_group(hU, pre[m - 1], cat.deg_of(V[m - 1])).inverse();
    return k;
}

Scalar psi_split(const PointedXiFusion& cat, const Word& L, const Word& M, const Word& R) {
    if (!cat.is_twisted()) return Scalar::one();
    Elt hL = word_degree(cat, L);
    Elt hLM = cat.cm.H.mul(hL, word_degree(cat, M));
    return kappa(cat, hL, M) * kappa(cat, hLM, R);
}

// compose a gate of E-degree d and scalar s onto the accumulated morphism
void fold(EvalState& st, const PointedXiFusion& cat, const Scalar& s, Elt d) {
    if (st.zero) return;
    const auto& H = cat.cm.H;
    const auto& E = cat.cm.E;
    if (cat.is_twisted()) {
        Scalar comp = cat.tw(H.identity, H.identity, H.identity, st.e, d, E.identity);
        st.coef *= s * comp.inverse();
    } else if (!s.is_one()) {
        st.coef *= s;
    }
    st.e = E.mul(d, st.e);
}

void apply_gate(EvalState& st, const PointedXiFusion& cat, int p, const Word& S, const Word& T,
                Elt d, const Scalar& gate_value) {
    if (st.zero) return;
    const auto& H = cat.cm.H;
    const auto& E = cat.cm.E;
    Word L(st.frontier.begin(), st.frontier.begin() + p);
    Word R(st.frontier.begin() + p + S.size(), st.frontier.end());
    for (size_t i = 0; i < S.size(); ++i)
        if (!(st.frontier[p + i] == S[i]))
            throw std::logic_error("evaluator: gate source does not match the frontier");

    Elt hL = word_degree(cat, L);
    Elt dd = cat.cm.act(hL, d);
    if (cat.is_twisted()) {
        fold(st, cat, psi_split(cat, L, S, R).inverse(), E.identity);
        Elt hS = word_degree(cat, S);
        Elt hT = word_degree(cat, T);
        Scalar f1 = cat.tw(hL, hL, H.identity, dd, E.identity, d) *
                    cat.tw(hL, H.identity, H.mul(cat.cm.bnd(d), hL), E.identity, E.identity,
                           E.identity).inverse();
        Scalar f2 = cat.tw(H.mul(hL, hS), H.mul(hL, hT), H.identity, dd, E.identity, E.identity) *
                    cat.tw(H.mul(hL, hS), H.identity, H.mul(hL, hT), dd, E.identity,
                           E.identity).inverse();
        fold(st, cat, f1 * f2 * gate_value, dd);
    } else {
        fold(st, cat, gate_value, dd);
    }

    Word nf;
    nf.reserve(st.frontier.size() - S.size() + T.size());
    nf.insert(nf.end(), L.begin(), L.end());
    nf.insert(nf.end(), T.begin(), T.end());
    nf.insert(nf.end(), R.begin(), R.end());
    st.frontier = std::move(nf);

    if (cat.is_twisted()) fold(st, cat, psi_split(cat, L, T, R), E.identity);
}

void apply_event(EvalState& st, const PointedXiFusion& cat, const MorseEvent& ev) {
    if (st.zero) return;
    const auto& E = cat.cm.E;
    const auto& H = cat.cm.H;
    switch (ev.kind) {
    case MorseEvent::Box: {
        if (cat.fuse_word(ev.word) != cat.e_act[ev.e][cat.unit]) {
            st.zero = true;
            return;
        }
        apply_gate(st, cat, ev.pos, Word{}, ev.word, ev.e, ev.coef);
        return;
    }
    case MorseEvent::Cup: {
        const SignedSimple& l = ev.word[0];
        const SignedSimple& r = ev.word[1];
        if (l.simple != r.simple || l.dual == r.dual)
            throw std::invalid_argument("evaluator: cup letters are not mutually dual");
        int i = l.simple;
        Elt hi = cat.deg[i];
        Scalar v = Scalar::one();
        if (!l.dual) // lcoev_i, twisted by the inverse loop factor
            v = cat.dim_tab[i] * cat.tw_group(hi, H.inv(hi), hi).inverse();
        apply_gate(st, cat, ev.pos, Word{}, ev.word, E.identity, v);
        return;
    }
    case MorseEvent::Cap: {
        if (ev.pos + 1 >= static_cast<int>(st.frontier.size()))
            throw std::invalid_argument("evaluator: cap out of range");
        SignedSimple l = st.frontier[ev.pos];
        SignedSimple r = st.frontier[ev.pos + 1];
        if (l.simple != r.simple || l.dual == r.dual)
            throw std::invalid_argument("evaluator: cap letters are not mutually dual");
        int i = l.simple;
        Elt hi = cat.deg[i];
        Scalar v = l.dual ? cat.dim_tab[i]                          // lev_i
                          : cat.tw_group(hi, H.inv(hi), hi);        // rev_i, twisted
        apply_gate(st, cat, ev.pos, Word{l, r}, Word{}, E.identity, v);
        return;
    }
    }
}

EvalState run_morse(const std::vector<MorseEvent>& events, const PointedXiFusion& cat) {
    if (cat.is_pushforward())
        throw std::invalid_argument("evaluator runs on basic categories; lift first");
    EvalState st;
    st.e = cat.cm.E.identity;
    for (const auto& ev : events) {
        apply_event(st, cat, ev);
        if (st.zero) break;
    }
    return st;
}

} // namespace

EvalResult evaluate_morse(const std::vector<MorseEvent>& events, const PointedXiFusion& cat) {
    EvalState st = run_morse(events, cat);
    EvalResult out;
    if (st.zero) {
        out.zero = true;
        out.value = Scalar::zero();
        out.degree = cat.cm.E.identity;
        return out;
    }
    if (!st.frontier.empty())
        throw std::invalid_argument("evaluate_morse: word does not close up");
    out.value = st.coef;
    out.degree = st.e;
    return out;
}

namespace {

// in an untwisted category with trivial dimensions every structure scalar of
// the rotation and pairing diagrams is 1, so only the rank matters (the slow
// path is property-tested against this)
bool scalars_trivial(const CyclicXiSet& s, const PointedXiFusion& cat) {
    if (cat.is_twisted()) return false;
    for (int c : s.color)
        if (!cat.dim_tab[c].is_one()) return false;
    return true;
}

} // namespace

std::optional<Scalar> cyclic_rotate_scalar(const CyclicXiSet& s, const PointedXiFusion& cat,
                                           size_t from, size_t to) {
    size_t n = s.size();
    if (n == 0) return Scalar::one();
    if (s.color.empty()) throw std::invalid_argument("cyclic_rotate_scalar: set is uncolored");
    if (scalars_trivial(s, cat)) {
        Word w;
        for (size_t j = 0; j < n; ++j) {
            size_t i = (from + j) % n;
            w.push_back({s.color[i], s.eps[i] < 0});
        }
        if (cat.mult_index(w, s.beta[from]) == 0) return std::nullopt;
        return Scalar::one();
    }
    size_t steps = (to + n - from) % n;
    Scalar acc = Scalar::one();
    size_t cur = from;
    for (size_t k = 0; k < steps; ++k) {
        // letters from the current anchor
        Word w;
        for (size_t j = 0; j < n; ++j) {
            size_t i = (cur + j) % n;
            w.push_back({s.color[i], s.eps[i] < 0});
        }
        Elt e = s.beta[cur];
        if (cat.mult_index(w, e) == 0) return std::nullopt;
        SignedSimple first = w[0];
        std::vector<MorseEvent> events;
        MorseEvent cup;
        cup.kind = MorseEvent::Cup;
        cup.pos = 0;
        if (!first.dual) cup.word = {{first.simple, true}, {first.simple, false}};  // rcoev
        else cup.word = {{first.simple, false}, {first.simple, true}};              // lcoev
        events.push_back(cup);
        MorseEvent box;
        box.kind = MorseEvent::Box;
        box.pos = 1;
        box.word = w;
        box.e = e;
        events.push_back(box);
        MorseEvent cap;
        cap.kind = MorseEvent::Cap;
        cap.pos = 0;
        events.push_back(cap);
        EvalState st = run_morse(events, cat);
        if (st.zero) return std::nullopt;
        acc *= st.coef;
        cur = (cur + 1) % n;
    }
    return acc;
}

std::optional<Scalar> pairing_value(const CyclicXiSet& s, const PointedXiFusion& cat,
                                    size_t anchor, bool dual_left) {
    size_t n = s.size();
    if (s.color.empty()) throw std::invalid_argument("pairing_value: set is uncolored");
    const auto& E = cat.cm.E;
    if (scalars_trivial(s, cat)) {
        Word v_fast;
        for (size_t j = 0; j < n; ++j) {
            size_t i = (anchor + j) % n;
            v_fast.push_back({s.color[i], s.eps[i] < 0});
        }
        if (cat.mult_index(v_fast, s.beta[anchor]) == 0) return std::nullopt;
        return Scalar::one();
    }
    Word v_word, u_word;
    for (size_t j = 0; j < n; ++j) {
        size_t i = (anchor + j) % n;
        v_word.push_back({s.color[i], s.eps[i] < 0});
    }
    for (size_t j = 0; j < n; ++j) {
        size_t i = (anchor + n - 1 - j) % n;
        u_word.push_back({s.color[i], s.eps[i] > 0}); // opposite signs
    }
    Elt ev = s.beta[anchor];
    Elt eu = E.inv(ev);
    if (cat.mult_index(v_word, ev) == 0 || cat.mult_index(u_word, eu) == 0) return std::nullopt;

    std::vector<MorseEvent> events;
    MorseEvent b1, b2;
    b1.kind = MorseEvent::Box;
    b2.kind = MorseEvent::Box;
    if (dual_left) {
        b1.pos = 0; b1.word = u_word; b1.e = eu;
        b2.pos = static_cast<int>(n); b2.word = v_word; b2.e = ev;
    } else {
        b1.pos = 0; b1.word = v_word; b1.e = ev;
        b2.pos = static_cast<int>(n); b2.word = u_word; b2.e = eu;
    }
    events.push_back(b1);
    events.push_back(b2);
    for (size_t k = 0; k < n; ++k) {
        MorseEvent cap;
        cap.kind = MorseEvent::Cap;
        cap.pos = static_cast<int>(n - 1 - k);
        events.push_back(cap);
    }
    EvalResult r = evaluate_morse(events, cat);
    if (r.zero) return std::nullopt;
    if (r.degree != E.identity)
        throw std::logic_error("pairing_value: pairing degree is not trivial");
    return r.value;
}

std::optional<Scalar> edge_pairing_scalar(const CyclicXiSet& s, const PointedXiFusion& cat,
                                          size_t anchor) {
    auto p = pairing_value(s, cat, anchor, true);
    if (!p) return std::nullopt;
    if (p->is_zero()) throw std::logic_error("edge pairing degenerated to zero");
    return p->inverse();
}

// ------------------------------------------------- planar -> Morse events

std::vector<MorseEvent> planar_to_morse(const PlanarXiGraph& g, const FaceData& faces,
                                        const DerivedLabels& lab, const PointedXiFusion& cat,
                                        int root_dart, std::mt19937* rng) {
    if (!g.connected()) throw std::invalid_argument("planar_to_morse: graph must be connected");
    if (!faces.genus_zero) throw std::invalid_argument("planar_to_morse: not a planar embedding");
    int outer = faces.face_of[g.rotation[g.outer_vertex][g.outer_pos]];
    if (root_dart < 0) {
        root_dart = *std::min_element(faces.orbits[outer].begin(), faces.orbits[outer].end());
    } else if (faces.face_of[root_dart] != outer) {
        throw std::invalid_argument("planar_to_morse: root dart is not on the outer face");
    }

    std::vector<int> pos_in_rot(g.dart_count(), -1);
    for (int v = 0; v < g.n_vertices; ++v)
        for (size_t i = 0; i < g.rotation[v].size(); ++i)
            pos_in_rot[g.rotation[v][i]] = static_cast<int>(i);

    // spanning tree over vertices: canonical = rotation-order DFS from the
    // root dart; randomized = DFS with shuffled dart preference
    int root = g.vertex_of(root_dart);
    std::vector<int> parent_dart(g.n_vertices, -1); // dart at child toward parent
    {
        std::vector<char> vis(g.n_vertices, 0);
        vis[root] = 1;
        std::vector<int> stack{root};
        std::vector<int> anchor_of(g.n_vertices, 0);
        anchor_of[root] = pos_in_rot[root_dart];
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            const auto& rot = g.rotation[v];
            std::vector<int> order(rot.size());
            std::iota(order.begin(), order.end(), 0);
            if (rng) std::shuffle(order.begin(), order.end(), *rng);
            for (int k : order) {
                int d = rot[(anchor_of[v] + k) % rot.size()];
                int u = g.vertex_of(g.twin(d));
                if (!vis[u]) {
                    vis[u] = 1;
                    parent_dart[u] = g.twin(d);
                    anchor_of[u] = pos_in_rot[g.twin(d)];
                    stack.push_back(u);
                }
            }
        }
        for (char c : vis)
            if (!c) throw std::logic_error("planar_to_morse: spanning tree missed a vertex");
    }

    std::vector<MorseEvent> events;
    std::vector<int> frontier; // darts
    auto find_pos = [&](int d) {
        auto it = std::find(frontier.begin(), frontier.end(), d);
        if (it == frontier.end()) throw std::logic_error("planar_to_morse: dart lost");
        return static_cast<int>(it - frontier.begin());
    };
    auto letter_of = [&](int d) {
        const XiEdge& e = g.edges[g.edge_of(d)];
        if (e.color < 0) throw std::invalid_argument("planar_to_morse: uncolored edge");
        return SignedSimple{e.color, g.eps_of(d) < 0};
    };

    std::vector<char> emitted(g.n_vertices, 0);
    // emit the box of v anchored at dart `a`, inserting at position p
    auto emit_box = [&](int v, int a, int p) {
        const auto& rot = g.rotation[v];
        int n = static_cast<int>(rot.size());
        int ai = pos_in_rot[a];
        MorseEvent box;
        box.kind = MorseEvent::Box;
        box.pos = p;
        for (int j = 0; j < n; ++j) box.word.push_back(letter_of(rot[(ai + j) % n]));
        box.e = lab.beta[a];
        // transport from the stored anchor to the sweep anchor
        CyclicXiSet s = vertex_cyclic_set(g, lab, v, g.anchor_pos[v]);
        size_t steps = (static_cast<size_t>(ai) + n - g.anchor_pos[v]) % n;
        auto rot_scalar = cyclic_rotate_scalar(s, cat, 0, steps);
        if (!rot_scalar) {
            box.coef = Scalar::zero(); // rank 0; the box check will zero out anyway
        } else {
            box.coef = *rot_scalar;
        }
        events.push_back(box);
        frontier.insert(frontier.begin() + p, n, -1);
        for (int j = 0; j < n; ++j) frontier[p + j] = rot[(ai + j) % n];
        emitted[v] = 1;
    };
    auto emit_cap = [&](int p) {
        MorseEvent cap;
        cap.kind = MorseEvent::Cap;
        cap.pos = p;
        events.push_back(cap);
        frontier.erase(frontier.begin() + p, frontier.begin() + p + 2);
    };

    // recursive contour: process vertex v (box already emitted); descend at
    // tree darts in rotation order from the sweep anchor
    std::vector<int> sweep_anchor(g.n_vertices, -1);
    std::function<void(int, int)> process = [&](int v, int a) {
        sweep_anchor[v] = a;
        const auto& rot = g.rotation[v];
        int n = static_cast<int>(rot.size());
        int ai = pos_in_rot[a];
        for (int j = (v == root ? 0 : 1); j < n; ++j) {
            int d = rot[(ai + j) % n];
            int u = g.vertex_of(g.twin(d));
            if (parent_dart[u] == g.twin(d) && !emitted[u]) {
                int cur = find_pos(d);
                emit_box(u, g.twin(d), cur + 1);
                emit_cap(cur);
                process(u, g.twin(d));
            }
        }
    };
    emit_box(root, root_dart, 0);
    process(root, root_dart);

    // close the chords: repeatedly cap the leftmost adjacent matched pair
    while (!frontier.empty()) {
        bool found = false;
        for (size_t i = 0; i + 1 < frontier.size(); ++i)
            if (g.edge_of(frontier[i]) == g.edge_of(frontier[i + 1])) {
                emit_cap(static_cast<int>(i));
                found = true;
                break;
            }
        if (!found)
            throw std::logic_error("planar_to_morse: chord closure stuck (embedding error)");
    }
    return events;
}

EvalResult evaluate_colored(const PlanarXiGraph& g, const PointedXiFusion& cat, int root_dart,
                            std::mt19937* rng, bool check_sphere) {
    auto structural = g.validate_structure();
    if (!structural.empty())
        throw std::invalid_argument("evaluate_colored: " + structural.front());
    if (g.sphere && check_sphere && !is_one_spherical(g, cat.cm))
        throw std::domain_error("evaluate_colored: sphere graph is not 1-spherical");
    auto comps = split_components(g);
    EvalResult total;
    total.value = Scalar::one();
    total.degree = cat.cm.E.identity;
    for (const auto& verts : comps) {
        PlanarXiGraph sub = comps.size() == 1 ? g : component_subgraph(g, verts);
        auto lab = derive_labels(sub, cat.cm);
        if (!lab.ok()) throw std::invalid_argument("evaluate_colored: " + lab.report.front());
        auto faces = trace_faces(sub);
        if (!faces.genus_zero)
            throw std::invalid_argument("evaluate_colored: not a planar rotation system");
        auto events = planar_to_morse(sub, faces, lab, cat,
                                      comps.size() == 1 ? root_dart : -1, rng);
        EvalResult r = evaluate_morse(events, cat);
        if (r.zero) {
            total.zero = true;
            total.value = Scalar::zero();
            return total;
        }
        total.value *= r.value;
        total.degree = cat.cm.E.mul(total.degree, r.degree);
    }
    return total;
}

} // namespace xms
