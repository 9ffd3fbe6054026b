#include "xms/statesum.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <atomic>
#include <mutex>
#include <thread>

namespace xms {

namespace {

// Evaluation data lifted to the basic category underneath a push-forward:
// colors become base simples, E-labels get their unique compatible lift.
struct LiftedContext {
    const PointedXiFusion* base = nullptr;
    bool is_push = false;
};

LiftedContext context_of(const PointedXiFusion& c) {
    LiftedContext ctx;
    if (c.is_pushforward()) {
        ctx.base = c.push->base.get();
        ctx.is_push = true;
    } else {
        ctx.base = &c;
    }
    return ctx;
}

// Lift a colored cyclic set of the pushed category to the base category.
// Returns false when some multiplicity space has rank 0.
bool lift_cyclic(const PointedXiFusion& c, CyclicXiSet& s) {
    if (!c.is_pushforward()) return true;
    const auto& base = *c.push->base;
    size_t n = s.size();
    Word w;
    for (size_t j = 0; j < n; ++j)
        w.push_back({c.push->embed[s.color[j]], s.eps[j] < 0});
    auto lift0 = c.lift_degree(s.beta[0], w);
    if (!lift0) return false;
    // relabel: colors to base simples, betas derived in the base
    for (size_t j = 0; j < n; ++j) {
        s.color[j] = c.push->embed[s.color[j]];
        s.alpha[j] = base.deg[s.color[j]];
    }
    s.derive_betas(base.cm, 0, *lift0);
    auto rep = s.validate(base.cm, &base);
    if (!rep.empty()) throw std::logic_error("lift_cyclic: lifted set invalid: " + rep.front());
    return true;
}

// Lift a colored labeled link graph; false on rank 0.
bool lift_link(const PointedXiFusion& c, PlanarXiGraph& g) {
    if (!c.is_pushforward()) return true;
    const auto& base = *c.push->base;
    auto lab = derive_labels(g, c.cm);
    if (!lab.ok()) throw std::logic_error("lift_link: unlabeled link");
    for (auto& e : g.edges) {
        e.color = c.push->embed[e.color];
        e.h = base.deg[e.color];
    }
    for (int v = 0; v < g.n_vertices; ++v) {
        // word at the anchor
        const auto& rot = g.rotation[v];
        Word w;
        for (size_t j = 0; j < rot.size(); ++j) {
            int d = rot[(g.anchor_pos[v] + j) % rot.size()];
            w.push_back({g.edges[g.edge_of(d)].color, g.eps_of(d) < 0});
        }
        auto lift = c.lift_degree(g.anchor_e[v], w);
        if (!lift) return false;
        g.anchor_e[v] = *lift;
    }
    auto lab2 = derive_labels(g, base.cm);
    if (!lab2.ok())
        throw std::logic_error("lift_link: lifted labels inconsistent: " + lab2.report.front());
    // the lifted labels must project back to the original ones
    for (int d = 0; d < g.dart_count(); ++d)
        if (c.push->psi[lab2.beta[d]] != lab.beta[d])
            throw std::logic_error("lift_link: projection mismatch");
    return true;
}

} // namespace

StateSumReport state_sum(const CombSkeleton& p, const XiLabeling& l, const PointedXiFusion& c,
                         const StateSumOptions& opts) {
    if (opts.validate) {
        auto rep = validate_labeling(p, c.cm, l);
        if (!rep.empty()) throw std::invalid_argument("state_sum: " + rep.front());
    }
    LiftedContext ctx = context_of(c);

    StateSumReport out;
    out.balls = p.n_balls;
    int nr = static_cast<int>(p.regions.size());
    std::vector<std::vector<int>> fibers(nr);
    long total = 1;
    for (int r = 0; r < nr; ++r) {
        fibers[r] = c.simples_of_degree(l.alpha[r]);
        total *= static_cast<long>(fibers[r].size());
    }
    out.colorings = total;

    auto eval_coloring = [&](const std::vector<int>& col) -> std::pair<Scalar, Scalar> {
        // dim(c)
        Scalar dimc = Scalar::one();
        for (int r = 0; r < nr; ++r) dimc *= c.dim_tab[col[r]].pow(p.regions[r].euler);
        // edge contraction scalars
        Scalar value = Scalar::one();
        for (size_t e = 0; e < p.edges.size(); ++e) {
            OrientedEdgeView v = edge_view(p, static_cast<int>(e), true);
            CyclicXiSet s;
            s.alpha.reserve(v.region.size());
            auto betas = beta_list(p, c.cm, l, static_cast<int>(e), true);
            for (size_t j = 0; j < v.region.size(); ++j) {
                s.alpha.push_back(l.alpha[v.region[j]]);
                s.beta.push_back(betas[j]);
                s.eps.push_back(v.eps[j]);
                s.color.push_back(col[v.region[j]]);
            }
            if (!lift_cyclic(c, s)) return {dimc, Scalar::zero()};
            auto star = edge_pairing_scalar(s, *ctx.base, 0);
            if (!star) return {dimc, Scalar::zero()};
            value *= *star;
        }
        // vertex link evaluations
        for (size_t x = 0; x < p.vertices.size(); ++x) {
            PlanarXiGraph link = labeled_link(p, c.cm, l, static_cast<int>(x), &col, &c);
            if (!lift_link(c, link)) return {dimc, Scalar::zero()};
            // sphericality was established when the labeling was validated
            EvalResult r = evaluate_colored(link, *ctx.base, -1, nullptr, false);
            if (r.zero) return {dimc, Scalar::zero()};
            if (r.degree != ctx.base->cm.E.identity)
                throw std::logic_error("state_sum: vertex evaluation has nontrivial degree");
            value *= r.value;
        }
        return {dimc, value};
    };

    // enumerate colorings (regions with a single candidate dominate in all
    // shipped categories, so this loop is usually a single pass)
    std::vector<std::vector<int>> cols;
    std::vector<int> cur(nr, 0);
    std::function<void(int)> rec = [&](int r) {
        if (r == nr) {
            std::vector<int> col(nr);
            for (int i = 0; i < nr; ++i) col[i] = fibers[i][cur[i]];
            cols.push_back(std::move(col));
            return;
        }
        for (size_t k = 0; k < fibers[r].size(); ++k) {
            cur[r] = static_cast<int>(k);
            rec(r + 1);
        }
    };
    rec(0);

    std::vector<std::pair<Scalar, Scalar>> results(cols.size());
    int jobs = std::max(1, opts.jobs);
    if (jobs == 1 || cols.size() < 2) {
        for (size_t i = 0; i < cols.size(); ++i) results[i] = eval_coloring(cols[i]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                try {
                    while (true) {
                        size_t i = next.fetch_add(1);
                        if (i >= cols.size()) break;
                        results[i] = eval_coloring(cols[i]);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    Scalar sum = Scalar::zero();
    for (size_t i = 0; i < cols.size(); ++i) {
        sum += results[i].first * results[i].second;
        if (opts.trace) out.trace.push_back({cols[i], results[i].first, results[i].second});
    }
    out.unnormalized = sum;
    out.normalized = c.dim_neutral().pow(-p.n_balls) * sum;
    return out;
}

Scalar lens_invariant(int p, int q, Elt h, Elt e, const PointedXiFusion& c, bool cross_check) {
    const auto& cm = c.cm;
    if (cm.bnd(e) != cm.H.pow(h, p) || cm.act(h, e) != e)
        throw std::invalid_argument("lens_invariant: (h,e) does not satisfy the lens conditions");
    LiftedContext ctx = context_of(c);
    Scalar sum = Scalar::zero();
    for (int i : c.simples_of_degree(h)) {
        CyclicXiSet s;
        for (int k = 0; k < p; ++k) {
            s.alpha.push_back(h);
            s.eps.push_back(+1);
            s.color.push_back(i);
        }
        s.beta.assign(p, cm.E.identity);
        s.derive_betas(cm, 0, e);
        CyclicXiSet lifted = s;
        if (!lift_cyclic(c, lifted)) continue; // rank 0 contributes nothing
        auto sigma_q = cyclic_rotate_scalar(lifted, *ctx.base, 0, q % p);
        if (!sigma_q) continue;
        sum += c.dim_tab[i] * *sigma_q;
    }
    Scalar value = c.dim_neutral().inverse() * sum;
    if (cross_check) {
        XiLabeling l{{h}, {e}};
        StateSumReport r = state_sum(lens_skeleton(p, q), l, c);
        if (r.normalized != value)
            throw std::logic_error("lens_invariant: trace formula disagrees with the state sum");
    }
    return value;
}

PushforwardCheck pushforward_check(const CombSkeleton& p, const XModMorphism& m,
                                   const PointedXiFusion& c, const XiLabeling& target_labeling) {
    if (p.n_balls != 1)
        throw std::invalid_argument("pushforward_check: skeleton must have a single ball");
    PointedXiFusion pushed = pushforward_category(m, c);
    auto trep = validate_labeling(p, pushed.cm, target_labeling);
    if (!trep.empty())
        throw std::invalid_argument("pushforward_check: target labeling invalid: " + trep.front());

    PushforwardCheck out;
    out.lhs = state_sum(p, target_labeling, pushed).normalized;

    // pointed classes over the source lifting the target labeling exactly
    auto src_labelings = enumerate_labelings(p, *m.source);
    auto orbits = pointed_orbits_and_stabilizers(p, *m.source, src_labelings);
    auto tgt_labelings = enumerate_labelings(p, *m.target);
    auto tgt_orbits = pointed_orbits_and_stabilizers(p, *m.target, tgt_labelings);

    Rational s_prime(0);
    {
        auto it = std::find(tgt_labelings.begin(), tgt_labelings.end(), target_labeling);
        if (it == tgt_labelings.end())
            throw std::logic_error("pushforward_check: target labeling not enumerated");
        int idx = static_cast<int>(it - tgt_labelings.begin());
        for (const auto& o : tgt_orbits)
            if (std::find(o.members.begin(), o.members.end(), idx) != o.members.end())
                s_prime = o.stabilizer_order;
    }

    Scalar rhs = Scalar::zero();
    int classes = 0;
    for (const auto& o : orbits) {
        bool lifts = false;
        for (int idx : o.members)
            if (push_labeling(m, src_labelings[idx]) == target_labeling) {
                lifts = true;
                break;
            }
        if (!lifts) continue;
        ++classes;
        Scalar inv = state_sum(p, src_labelings[o.representative], c).normalized;
        Rational ratio = s_prime / o.stabilizer_order;
        rhs += Scalar(ratio) * inv;
    }
    Scalar d_phi(pushed.push->d_phi);
    out.rhs = d_phi.inverse() * rhs;
    out.lifted_classes = classes;
    out.equal = (out.lhs == out.rhs);
    return out;
}

// ------------------------------------------------------------ DW oracle

namespace {

struct Dsu {
    std::vector<int> parent;
    void init(int n) {
        parent.resize(n);
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

std::vector<DwClassValue> dw_oracle(const Triangulation& t, const GroupCocycle3& wt) {
    auto vrep = wt.validate();
    if (!vrep.empty()) throw std::invalid_argument("dw_oracle: cocycle invalid: " + vrep.front());
    const FiniteGroup& H = wt.h;
    if (!H.is_abelian())
        throw std::invalid_argument(
            "dw_oracle: class bookkeeping implemented for abelian groups only");
    std::vector<int> o = t.orient();

    static const std::array<std::array<int, 3>, 4> FC = {{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};
    auto pidx = [](int a, int b) {
        if (a > b) std::swap(a, b);
        static const int tab[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        return tab[a][b];
    };

    // barycentric subdivision cells are kept per tetrahedron and identified
    // across face gluings; global vertex classes carry a dimension grade
    Dsu corner_dsu, mid_dsu;
    corner_dsu.init(t.n_tets * 4);
    mid_dsu.init(t.n_tets * 6);
    std::map<std::pair<int, int>, int> face_class;
    {
        int nf = 0;
        for (int tet = 0; tet < t.n_tets; ++tet)
            for (int f = 0; f < 4; ++f) {
                const FaceGluing& g = t.glue[tet][f];
                for (int c : FC[f]) corner_dsu.unite(tet * 4 + c, g.tet * 4 + g.perm[c]);
                for (int i = 0; i < 3; ++i)
                    for (int j = i + 1; j < 3; ++j) {
                        int a = FC[f][i], b = FC[f][j];
                        mid_dsu.unite(tet * 6 + pidx(a, b), g.tet * 6 + pidx(g.perm[a], g.perm[b]));
                    }
                auto key = std::min(std::make_pair(tet, f), std::make_pair(g.tet, g.face));
                if (!face_class.count(key)) face_class[key] = nf++;
                face_class[{tet, f}] = face_class[key];
            }
    }
    std::map<int, int> corner_id, mid_id;
    for (int i = 0; i < t.n_tets * 4; ++i) {
        int r = corner_dsu.find(i);
        if (!corner_id.count(r)) corner_id[r] = static_cast<int>(corner_id.size());
    }
    for (int i = 0; i < t.n_tets * 6; ++i) {
        int r = mid_dsu.find(i);
        if (!mid_id.count(r)) mid_id[r] = static_cast<int>(mid_id.size());
    }
    int n0 = static_cast<int>(corner_id.size());
    int n1 = static_cast<int>(mid_id.size());
    int n2 = 2 * t.n_tets;
    int nverts = n0 + n1 + n2 + t.n_tets;
    auto v_corner = [&](int tet, int c) { return corner_id[corner_dsu.find(tet * 4 + c)]; };
    auto v_mid = [&](int tet, int a, int b) {
        return n0 + mid_id[mid_dsu.find(tet * 6 + pidx(a, b))];
    };
    auto v_face = [&](int tet, int f) { return n0 + n1 + face_class[{tet, f}]; };
    auto v_center = [&](int tet) { return n0 + n1 + n2 + tet; };

    // local subdivision edges, 50 per tetrahedron, oriented low -> high dim:
    //   kind 0: corner -> mid        (c, pair) with c in pair     12
    //   kind 1: corner -> face ctr   (c, f) with c in f           12
    //   kind 2: corner -> center     (c)                           4
    //   kind 3: mid -> face ctr      (pair, f) with pair in f     12
    //   kind 4: mid -> center        (pair)                        6
    //   kind 5: face ctr -> center   (f)                           4
    auto le_corner_mid = [&](int tet, int c, int other) {
        int p = pidx(c, other);
        int slot = (c == std::min(c, other)) ? 0 : 1;
        return tet * 50 + p * 2 + slot;
    };
    auto le_corner_face = [&](int tet, int c, int f) {
        int k = 0;
        for (int i = 0; i < 3; ++i)
            if (FC[f][i] == c) k = i;
        return tet * 50 + 12 + f * 3 + k;
    };
    auto le_corner_center = [&](int tet, int c) { return tet * 50 + 24 + c; };
    auto le_mid_face = [&](int tet, int a, int b, int f) {
        int k = 0, idx = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j, ++idx)
                if (pidx(FC[f][i], FC[f][j]) == pidx(a, b)) k = idx;
        return tet * 50 + 28 + f * 3 + k;
    };
    auto le_mid_center = [&](int tet, int a, int b) { return tet * 50 + 40 + pidx(a, b); };
    auto le_face_center = [&](int tet, int f) { return tet * 50 + 46 + f; };

    Dsu edsu;
    edsu.init(t.n_tets * 50);
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.glue[tet][f];
            for (int c : FC[f]) {
                edsu.unite(le_corner_face(tet, c, f), le_corner_face(g.tet, g.perm[c], g.face));
                for (int c2 : FC[f]) {
                    if (c2 == c) continue;
                    edsu.unite(le_corner_mid(tet, c, c2),
                               le_corner_mid(g.tet, g.perm[c], g.perm[c2]));
                }
            }
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    int a = FC[f][i], b = FC[f][j];
                    edsu.unite(le_mid_face(tet, a, b, f),
                               le_mid_face(g.tet, g.perm[a], g.perm[b], g.face));
                }
        }
    std::map<int, int> eclass;
    for (int i = 0; i < t.n_tets * 50; ++i) {
        int r = edsu.find(i);
        if (!eclass.count(r)) eclass[r] = static_cast<int>(eclass.size());
    }
    int ne = static_cast<int>(eclass.size());
    auto ec = [&](int local) { return eclass[edsu.find(local)]; };

    // endpoints of each edge class, for the spanning tree
    std::vector<std::pair<int, int>> ends(ne, {-1, -1});
    static const std::array<std::pair<int, int>, 6> PAIRS = {
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    for (int tet = 0; tet < t.n_tets; ++tet) {
        for (auto [a, b] : PAIRS) {
            ends[ec(le_corner_mid(tet, a, b))] = {v_corner(tet, a), v_mid(tet, a, b)};
            ends[ec(le_corner_mid(tet, b, a))] = {v_corner(tet, b), v_mid(tet, a, b)};
            ends[ec(le_mid_center(tet, a, b))] = {v_mid(tet, a, b), v_center(tet)};
        }
        for (int f = 0; f < 4; ++f) {
            ends[ec(le_face_center(tet, f))] = {v_face(tet, f), v_center(tet)};
            for (int c : FC[f])
                ends[ec(le_corner_face(tet, c, f))] = {v_corner(tet, c), v_face(tet, f)};
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    ends[ec(le_mid_face(tet, FC[f][i], FC[f][j], f))] = {
                        v_mid(tet, FC[f][i], FC[f][j]), v_face(tet, f)};
        }
        for (int c = 0; c < 4; ++c)
            ends[ec(le_corner_center(tet, c))] = {v_corner(tet, c), v_center(tet)};
    }

    // flatness relations from the subdivision triangles: g(low,high) =
    // g(low,mid) g(mid,high) along ascending dimension
    struct Rel {
        int eab, ebc, eac;
    };
    std::vector<Rel> rels;
    std::set<std::array<int, 3>> rel_seen;
    auto add_rel = [&](int ab, int bc, int ac) {
        std::array<int, 3> k = {ab, bc, ac};
        if (rel_seen.insert(k).second) rels.push_back({ab, bc, ac});
    };
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int c = 0; c < 4; ++c)
            for (int c2 = 0; c2 < 4; ++c2) {
                if (c2 == c) continue;
                add_rel(ec(le_corner_mid(tet, c, c2)), ec(le_mid_center(tet, c, c2)),
                        ec(le_corner_center(tet, c)));
                for (int c3 = 0; c3 < 4; ++c3) {
                    if (c3 == c || c3 == c2) continue;
                    int f = 6 - c - c2 - c3;
                    add_rel(ec(le_corner_mid(tet, c, c2)), ec(le_mid_face(tet, c, c2, f)),
                            ec(le_corner_face(tet, c, f)));
                    add_rel(ec(le_mid_face(tet, c, c2, f)), ec(le_face_center(tet, f)),
                            ec(le_mid_center(tet, c, c2)));
                    add_rel(ec(le_corner_face(tet, c, f)), ec(le_face_center(tet, f)),
                            ec(le_corner_center(tet, c)));
                }
            }

    // spanning tree over sd vertex classes
    std::vector<char> in_tree(ne, 0);
    {
        std::vector<std::vector<std::pair<int, int>>> adj(nverts);
        for (int e = 0; e < ne; ++e) {
            if (ends[e].first < 0) continue;
            adj[ends[e].first].push_back({ends[e].second, e});
            adj[ends[e].second].push_back({ends[e].first, e});
        }
        std::vector<char> vis(nverts, 0);
        std::vector<int> stack{0};
        vis[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [u, e] : adj[v])
                if (!vis[u]) {
                    vis[u] = 1;
                    in_tree[e] = 1;
                    stack.push_back(u);
                }
        }
        for (char c : vis)
            if (!c) throw std::logic_error("dw_oracle: subdivision not connected");
    }

    std::vector<Elt> val(ne, -1);
    for (int e = 0; e < ne; ++e)
        if (in_tree[e]) val[e] = H.identity;

    std::vector<std::vector<Elt>> flats;
    int branch_depth = 0;
    std::function<void()> solve = [&]() {
        std::vector<int> assigned;
        bool contradiction = false;
        bool progress = true;
        while (progress && !contradiction) {
            progress = false;
            for (const auto& r : rels) {
                Elt ab = val[r.eab], bc = val[r.ebc], ac = val[r.eac];
                int known = (ab >= 0) + (bc >= 0) + (ac >= 0);
                if (known == 3) {
                    if (H.mul(ab, bc) != ac) {
                        contradiction = true;
                        break;
                    }
                } else if (known == 2) {
                    int e;
                    Elt v;
                    if (ab < 0) { e = r.eab; v = H.mul(ac, H.inv(bc)); }
                    else if (bc < 0) { e = r.ebc; v = H.mul(H.inv(ab), ac); }
                    else { e = r.eac; v = H.mul(ab, bc); }
                    val[e] = v;
                    assigned.push_back(e);
                    progress = true;
                }
            }
        }
        if (!contradiction) {
            int branch = -1;
            for (int e = 0; e < ne; ++e)
                if (val[e] < 0) { branch = e; break; }
            if (branch < 0) {
                flats.push_back(val);
            } else {
                if (++branch_depth > 12)
                    throw std::logic_error("dw_oracle: branch depth exceeded");
                for (Elt v = 0; v < H.order; ++v) {
                    val[branch] = v;
                    solve();
                }
                val[branch] = -1;
                --branch_depth;
            }
        }
        for (int e : assigned) val[e] = -1;
    };
    solve();

    std::vector<DwClassValue> out;
    for (const auto& flat : flats) {
        Scalar w = Scalar::one(wt.cyclotomic_order);
        for (int tet = 0; tet < t.n_tets; ++tet)
            for (int c = 0; c < 4; ++c)
                for (int c2 = 0; c2 < 4; ++c2) {
                    if (c2 == c) continue;
                    for (int c3 = 0; c3 < 4; ++c3) {
                        if (c3 == c || c3 == c2) continue;
                        int c4 = 6 - c - c2 - c3;
                        int f = c4;
                        std::array<int, 4> perm = {c, c2, c3, c4};
                        int sign = 1;
                        for (int i = 0; i < 4; ++i)
                            for (int j = i + 1; j < 4; ++j)
                                if (perm[i] > perm[j]) sign = -sign;
                        sign *= o[tet];
                        Elt g01 = flat[ec(le_corner_mid(tet, c, c2))];
                        Elt g12 = flat[ec(le_mid_face(tet, c, c2, f))];
                        Elt g23 = flat[ec(le_face_center(tet, f))];
                        const Scalar& fac = wt(g01, g12, g23);
                        w *= (sign > 0) ? fac : fac.inverse();
                    }
                }
        bool trivial = true;
        for (Elt v : flat)
            if (v != H.identity) trivial = false;
        out.push_back({trivial, w});
    }
    return out;
}

} // namespace xms
