#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xms/statesum.hpp"
#include "xms_testlib.hpp"

#include <random>

using namespace xms;
using namespace xmstest;

namespace {

struct Rp3Morphism {
    FiniteGroup a = cyclic_group(2);
    FiniteGroup g3 = cyclic_group(3);
    FiniteGroup axg = direct_product(a, g3);
    CrossedModule src, tgt;
    XModMorphism phi;
    Rp3Morphism() {
        std::vector<Elt> bnd = {axg.identity, 1 * g3.order + 0};
        src = hom_with_trivial_action(a, axg, bnd);
        tgt = trivial_to_one(a);
        phi.source = &src;
        phi.target = &tgt;
        phi.psi = {0, 1};
        phi.phi.assign(axg.order, 0);
    }
};

CombSkeleton disjoint_union(const CombSkeleton& a, const CombSkeleton& b) {
    CombSkeleton u = a;
    int roff = static_cast<int>(a.regions.size());
    int boff = a.n_balls;
    int eoff = static_cast<int>(a.edges.size());
    u.n_balls += b.n_balls;
    for (auto r : b.regions) {
        r.ball_neg += boff;
        r.ball_pos += boff;
        u.regions.push_back(r);
    }
    for (auto e : b.edges) {
        for (auto& r : e.branch_region) r += roff;
        for (auto& g : e.gap_ball) g += boff;
        u.edges.push_back(e);
    }
    for (auto v : b.vertices) {
        for (auto& r : v.link_edge_region) r += roff;
        for (auto& d : v.dart_ref) d.p_edge += eoff;
        u.vertices.push_back(v);
    }
    return u;
}

XiLabeling join_labelings(const XiLabeling& a, const XiLabeling& b) {
    XiLabeling l = a;
    l.alpha.insert(l.alpha.end(), b.alpha.begin(), b.alpha.end());
    l.beta0.insert(l.beta0.end(), b.beta0.begin(), b.beta0.end());
    return l;
}

// re-store an edge with the opposite orientation: branch data from the
// reversed view, away bits flipped, gap indexing preserved (the reversed
// anchor gap is the same physical gap); beta transforms by inversion
CombSkeleton reverse_edge(const CombSkeleton& p, int e) {
    CombSkeleton out = p;
    auto v = edge_view(p, e, false);
    out.edges[e].branch_region = v.region;
    out.edges[e].branch_eps = v.eps;
    out.edges[e].gap_ball = v.gap_ball;
    for (auto& vert : out.vertices)
        for (auto& ref : vert.dart_ref)
            if (ref.p_edge == e) ref.away_positive = !ref.away_positive;
    return out;
}

// rotate the stored anchor gap of an edge by k positions
CombSkeleton rotate_edge_anchor(const CombSkeleton& p, int e, int k) {
    CombSkeleton out = p;
    const auto& edge = p.edges[e];
    int n = edge.valence();
    k = ((k % n) + n) % n;
    for (int i = 0; i < n; ++i) {
        out.edges[e].branch_region[i] = edge.branch_region[(i + k) % n];
        out.edges[e].branch_eps[i] = edge.branch_eps[(i + k) % n];
        out.edges[e].gap_ball[i] = edge.gap_ball[(i + k) % n];
    }
    for (auto& vert : out.vertices)
        for (auto& ref : vert.dart_ref)
            if (ref.p_edge == e) {
                int j = ref.away_positive ? ref.ball_index : (n - ref.ball_index) % n;
                j = ((j - k) % n + n) % n; // physical gap re-expressed
                ref.ball_index = ref.away_positive ? j : (n - j) % n;
            }
    // the canonical link anchors must point at the new gap-0 darts
    for (size_t x = 0; x < out.vertices.size(); ++x) {
        auto& vert = out.vertices[x];
        for (int gv = 0; gv < vert.link.n_vertices; ++gv) {
            const auto& rot = vert.link.rotation[gv];
            for (size_t pos = 0; pos < rot.size(); ++pos)
                if (vert.dart_ref[rot[pos]].ball_index == 0)
                    vert.link.anchor_pos[gv] = static_cast<int>(pos);
        }
    }
    return out;
}

} // namespace

TEST_CASE("state sum is independent of the stored edge presentation") {
    auto cm = inclusion_xmod(cyclic_group(4), {2});
    auto c = linearized_2group(cm);
    auto cm2 = one_to_group(cyclic_group(4));
    auto tw = twist_category(linearized_2group(cm2),
                             inflate_group_cocycle(cm2, cyclic_group_cocycle(4, 1, 4)).cocycle);
    for (const auto& P : {lens_skeleton(3, 1), s1xs2_skeleton()}) {
        // orientation reversal of each edge in turn; beta0 inverts
        for (size_t e = 0; e < P.edges.size(); ++e) {
            auto Q = reverse_edge(P, static_cast<int>(e));
            REQUIRE(Q.validate().empty());
            for (const auto& cat : {c, tw}) {
                for (const auto& l : enumerate_labelings(P, cat.cm)) {
                    XiLabeling lr = l;
                    lr.beta0[e] = cat.cm.E.inv(l.beta0[e]);
                    REQUIRE(validate_labeling(Q, cat.cm, lr).empty());
                    CHECK(state_sum(P, l, cat).normalized == state_sum(Q, lr, cat).normalized);
                }
            }
        }
        // anchor rotation; beta0 follows the derived value at the new anchor
        for (size_t e = 0; e < P.edges.size(); ++e)
            for (int k = 1; k < P.edges[e].valence(); ++k) {
                auto Q = rotate_edge_anchor(P, static_cast<int>(e), k);
                REQUIRE(Q.validate().empty());
                for (const auto& cat : {c, tw})
                    for (const auto& l : enumerate_labelings(P, cat.cm)) {
                        XiLabeling lr = l;
                        lr.beta0[e] = beta_list(P, cat.cm, l, static_cast<int>(e), true)[k];
                        REQUIRE(validate_labeling(Q, cat.cm, lr).empty());
                        CHECK(state_sum(P, l, cat).normalized ==
                              state_sum(Q, lr, cat).normalized);
                    }
            }
    }
}

TEST_CASE("kG collapse on small skeletons") {
    std::vector<CrossedModule> cms = {inclusion_xmod(cyclic_group(4), {2}),
                                      trivial_to_one(cyclic_group(2)),
                                      one_to_group(cyclic_group(2))};
    std::vector<CombSkeleton> skels = {lens_skeleton(2, 1), lens_skeleton(3, 2), s1xs2_skeleton(),
                                       skeleton_from_triangulation(lens_triangulation(2, 1))};
    for (const auto& cm : cms) {
        auto c = linearized_2group(cm);
        for (const auto& P : skels)
            for (const auto& l : enumerate_labelings(P, cm)) {
                auto r = state_sum(P, l, c);
                CHECK(r.normalized.is_one());
                CHECK(r.unnormalized == c.dim_neutral().pow(P.n_balls));
            }
    }
}

TEST_CASE("normalization law") {
    auto cm = inclusion_xmod(cyclic_group(4), {2});
    auto c = linearized_2group(cm);
    auto P = s1xs2_skeleton();
    auto ls = enumerate_labelings(P, cm);
    REQUIRE_FALSE(ls.empty());
    for (const auto& l : ls) {
        auto r = state_sum(P, l, c);
        CHECK(r.normalized == c.dim_neutral().pow(-r.balls) * r.unnormalized);
        CHECK(r.balls == 2);
    }
}

TEST_CASE("RP3 pushforward golden values, both routes") {
    Rp3Morphism m;
    auto base = linearized_2group(m.src);
    auto P = lens_skeleton(2, 1);
    auto pushed = pushforward_category(m.phi, base);
    auto tls = enumerate_labelings(P, m.tgt);
    REQUIRE(tls.size() == 2);
    for (const auto& l : tls) {
        bool null_class = (l.beta0[0] == m.tgt.E.identity);
        Scalar direct = state_sum(P, l, pushed).normalized;
        auto chk = pushforward_check(P, m.phi, base, l);
        CHECK(chk.lhs == direct);
        CHECK(chk.equal);
        if (null_class) {
            CHECK(direct == Scalar(1, 3));
            CHECK(chk.lifted_classes == 1);
        } else {
            CHECK(direct.is_zero());
            CHECK(chk.lifted_classes == 0);
        }
    }
}

TEST_CASE("lens trace shortcut agrees with the state sum (self-checked)") {
    auto cm = inclusion_xmod(cyclic_group(4), {2});
    auto c = linearized_2group(cm);
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {5, 2}}) {
        for (Elt h = 0; h < cm.H.order; ++h)
            for (Elt e = 0; e < cm.E.order; ++e) {
                if (cm.bnd(e) != cm.H.pow(h, p) || cm.act(h, e) != e) continue;
                Scalar v = lens_invariant(p, q, h, e, c); // throws on mismatch
                CHECK(v.is_one());
            }
    }
    CHECK_THROWS(lens_invariant(2, 1, 1, 0, linearized_2group(cm)));
}

TEST_CASE("lens trace shortcut works on push-forward categories") {
    Rp3Morphism m;
    auto pushed = pushforward_category(m.phi, linearized_2group(m.src));
    // h is forced to the identity over chi' = (Z/2 -> 1)
    CHECK(lens_invariant(2, 1, 0, 0, pushed) == Scalar(1, 3));
    CHECK(lens_invariant(2, 1, 0, 1, pushed).is_zero());
    // on L(3,1) the two labelings are gauge equivalent and the invariant is
    // |H^1(M,Z/2)|/2 * |H^1(M,Z/3)|/3 = (1/2)(3/3) = 1/2
    CHECK(lens_invariant(3, 1, 0, 0, pushed) == Scalar(1, 2));
    CHECK(lens_invariant(3, 1, 0, 1, pushed) == Scalar(1, 2));
}

TEST_CASE("pushforward theorem on a matrix of triples") {
    // 1-2: the paper's morphism on lens(2,1) (checked in the golden test) and
    // on lens(3,1), lens(3,2)
    Rp3Morphism m;
    auto base = linearized_2group(m.src);
    for (auto [p, q] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {4, 1}}) {
        auto P = lens_skeleton(p, q);
        for (const auto& l : enumerate_labelings(P, m.tgt)) {
            auto chk = pushforward_check(P, m.phi, base, l);
            CHECK(chk.equal);
        }
    }
    // 3: identity morphism
    {
        auto cm = inclusion_xmod(cyclic_group(4), {2});
        auto c = linearized_2group(cm);
        auto id = identity_morphism(cm);
        auto P = lens_skeleton(2, 1);
        for (const auto& l : enumerate_labelings(P, cm)) {
            auto chk = pushforward_check(P, id, c, l);
            CHECK(chk.equal);
            CHECK(chk.lhs == state_sum(P, l, c).normalized);
        }
    }
    // 4: iota => chi with C = (E, H x| E)-vect, the chi-vect construction
    {
        auto cm = inclusion_xmod(cyclic_group(4), {2});
        auto sp = semidirect_product(cm);
        auto iota = inclusion_xmod(sp.group, sp.inj_e);
        XModMorphism mm;
        mm.source = &iota;
        mm.target = &cm;
        mm.psi.resize(iota.E.order);
        for (Elt i = 0; i < iota.E.order; ++i) mm.psi[i] = iota.boundary[i] % cm.E.order;
        mm.phi = sp.to_h;
        REQUIRE(mm.validate().empty());
        auto vect = graded_vect(iota);
        auto P = lens_skeleton(2, 1);
        for (const auto& l : enumerate_labelings(P, cm)) {
            auto chk = pushforward_check(P, mm, vect, l);
            CHECK(chk.equal);
        }
    }
    // 5: quotient morphism (1 -> Z/4) => (1 -> Z/2)
    {
        auto src = one_to_group(cyclic_group(4));
        auto tgt = one_to_group(cyclic_group(2));
        XModMorphism mm;
        mm.source = &src;
        mm.target = &tgt;
        mm.psi = {0};
        mm.phi = {0, 1, 0, 1};
        REQUIRE(mm.validate().empty());
        auto c = linearized_2group(src);
        for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {4, 1}}) {
            auto P = lens_skeleton(p, q);
            for (const auto& l : enumerate_labelings(P, tgt)) {
                auto chk = pushforward_check(P, mm, c, l);
                CHECK(chk.equal);
            }
        }
    }
}

TEST_CASE("pushforward with a nontrivial psi-kernel") {
    // 6: kernel-collapsing morphism (Z/4 = Z/4) => (Z/2 = Z/2), psi = phi = mod 2;
    // Ker(psi) has order 2 and halves the simples of the pushed category
    {
        auto src = identity_xmod(cyclic_group(4));
        auto tgt = identity_xmod(cyclic_group(2));
        XModMorphism mm;
        mm.source = &src;
        mm.target = &tgt;
        mm.psi = {0, 1, 0, 1};
        mm.phi = {0, 1, 0, 1};
        REQUIRE(mm.validate().empty());
        auto c = linearized_2group(src);
        auto pushed = pushforward_category(mm, c);
        CHECK(pushed.n == 2);
        CHECK(pushed.push->d_phi.is_one());
        for (int p : {2, 3}) {
            auto P = lens_skeleton(p, 1);
            for (const auto& l : enumerate_labelings(P, tgt)) {
                auto chk = pushforward_check(P, mm, c, l);
                CHECK(chk.equal);
            }
        }
    }
}

TEST_CASE("gauge invariance of the state sum") {
    std::mt19937 rng(47);
    struct Case {
        CombSkeleton P;
        CrossedModule cm;
    };
    std::vector<Case> cases;
    cases.push_back({lens_skeleton(3, 1), inclusion_xmod(cyclic_group(4), {2})});
    cases.push_back({s1xs2_skeleton(), one_to_group(cyclic_group(2))});
    cases.push_back({skeleton_from_triangulation(lens_triangulation(2, 1)),
                     trivial_to_one(cyclic_group(2))});
    for (auto& [P, cm] : cases) {
        auto c = linearized_2group(cm);
        auto ls = enumerate_labelings(P, cm);
        REQUIRE_FALSE(ls.empty());
        for (int t = 0; t < 25; ++t) {
            const auto& l = ls[std::uniform_int_distribution<size_t>(0, ls.size() - 1)(rng)];
            GaugeElement g = identity_gauge(P, cm);
            for (auto& x : g.lambda) x = std::uniform_int_distribution<int>(0, cm.H.order - 1)(rng);
            for (auto& e : g.mu) e = std::uniform_int_distribution<int>(0, cm.E.order - 1)(rng);
            auto moved = gauge_act(P, cm, g, l);
            CHECK(state_sum(P, l, c).normalized == state_sum(P, moved, c).normalized);
        }
    }
    // also with a twisted category, where values are not identically 1
    {
        auto cm = one_to_group(cyclic_group(2));
        auto tw = twist_category(linearized_2group(cm),
                                 inflate_group_cocycle(cm, cyclic_group_cocycle(2, 1, 2)).cocycle);
        auto P = skeleton_from_triangulation(lens_triangulation(2, 1));
        auto ls = enumerate_labelings(P, cm);
        for (int t = 0; t < 25; ++t) {
            const auto& l = ls[std::uniform_int_distribution<size_t>(0, ls.size() - 1)(rng)];
            GaugeElement g = identity_gauge(P, cm);
            for (auto& x : g.lambda) x = std::uniform_int_distribution<int>(0, cm.H.order - 1)(rng);
            auto moved = gauge_act(P, cm, g, l);
            CHECK(state_sum(P, l, tw).normalized == state_sum(P, moved, tw).normalized);
        }
    }
}

TEST_CASE("E = 1 reduction against the DW oracle") {
    for (std::string name : {"s3", "rp3"}) {
        auto t = builtin_triangulation(name);
        auto P = skeleton_from_triangulation(t);
        auto cm = one_to_group(cyclic_group(2));
        for (bool twisted : {false, true}) {
            auto wt = twisted ? cyclic_group_cocycle(2, 1, 2) : constant_group_cocycle(cyclic_group(2));
            auto dw = dw_oracle(t, wt);
            auto cat = twisted
                           ? twist_category(linearized_2group(cm),
                                            inflate_group_cocycle(cm, wt).cocycle)
                           : linearized_2group(cm);
            auto ls = enumerate_labelings(P, cm);
            auto orbits = gauge_orbits(P, cm, ls);
            REQUIRE(static_cast<size_t>(orbits.count()) == dw.size());
            // match classes: trivial to trivial; with at most two classes the
            // bijection is forced
            REQUIRE(dw.size() <= 2);
            for (int rep : orbits.representative) {
                bool triv = true;
                for (Elt x : ls[rep].alpha)
                    if (x != cm.H.identity) triv = false;
                for (Elt b : ls[rep].beta0)
                    if (b != cm.E.identity) triv = false;
                Scalar v = state_sum(P, ls[rep], cat).normalized;
                bool matched = false;
                for (const auto& cls : dw)
                    if (cls.trivial_class == triv) {
                        CHECK(v == cls.value);
                        matched = true;
                    }
                CHECK(matched);
            }
        }
    }
}

TEST_CASE("regression: twisted (A -> 1) state sums on rp3") {
    // every normalized 4th-root cocycle on (Z/2 -> 1) evaluates to 1 on both
    // classes; pinned as a computed observation (consistent with the
    // vanishing of the third cohomology of the classifying space with
    // circle coefficients, which makes these cocycles coboundaries)
    auto k2 = trivial_to_one(cyclic_group(2));
    std::vector<CrossedCocycle3> valid;
    std::vector<int> exps(8, 0);
    while (true) {
        CrossedCocycle3 w = constant_crossed_cocycle(k2, 4);
        for (size_t i = 0; i < 8; ++i)
            w.at(0, 0, 0, static_cast<Elt>(i / 4), static_cast<Elt>((i / 2) % 2),
                 static_cast<Elt>(i % 2)) = Scalar::root_of_unity(4, exps[i]);
        if (check_cocycle(w).empty()) valid.push_back(w);
        size_t i = 0;
        for (; i < 8; ++i) {
            if (++exps[i] < 4) break;
            exps[i] = 0;
        }
        if (i == 8) break;
    }
    CHECK(valid.size() == 4);
    auto P = skeleton_from_triangulation(lens_triangulation(2, 1));
    auto ls = enumerate_labelings(P, k2);
    CHECK(gauge_orbits(P, k2, ls).count() == 2);
    for (const auto& w : valid) {
        PointedXiFusion cat = linearized_2group(k2);
        if (!w.is_constant_one()) cat = twist_category(cat, w);
        for (const auto& l : ls) CHECK(state_sum(P, l, cat).normalized.is_one());
    }
}

TEST_CASE("state sum is multiplicative over disjoint unions") {
    auto cm = inclusion_xmod(cyclic_group(4), {2});
    auto c = linearized_2group(cm);
    auto A = lens_skeleton(2, 1);
    auto B = s1xs2_skeleton();
    auto U = disjoint_union(A, B);
    REQUIRE(U.validate().empty());
    auto lsa = enumerate_labelings(A, cm);
    auto lsb = enumerate_labelings(B, cm);
    for (size_t i = 0; i < lsa.size(); ++i)
        for (size_t j = 0; j < std::min<size_t>(lsb.size(), 3); ++j) {
            auto l = join_labelings(lsa[i], lsb[j]);
            Scalar lhs = state_sum(U, l, c).normalized;
            Scalar rhs = state_sum(A, lsa[i], c).normalized * state_sum(B, lsb[j], c).normalized;
            CHECK(lhs == rhs);
        }
    // with a twisted category too
    auto cm2 = one_to_group(cyclic_group(4));
    auto tw = twist_category(linearized_2group(cm2),
                             inflate_group_cocycle(cm2, cyclic_group_cocycle(4, 1, 4)).cocycle);
    auto lsa2 = enumerate_labelings(A, cm2);
    auto lsb2 = enumerate_labelings(B, cm2);
    for (size_t i = 0; i < std::min<size_t>(lsa2.size(), 3); ++i)
        for (size_t j = 0; j < std::min<size_t>(lsb2.size(), 3); ++j) {
            auto l = join_labelings(lsa2[i], lsb2[j]);
            Scalar lhs = state_sum(U, l, tw).normalized;
            Scalar rhs =
                state_sum(A, lsa2[i], tw).normalized * state_sum(B, lsb2[j], tw).normalized;
            CHECK(lhs == rhs);
        }
}

TEST_CASE("two independent triangulations of the sphere agree") {
    auto small = skeleton_from_triangulation(s3_triangulation());
    auto big = skeleton_from_triangulation(s3_pentachoron());
    // a simply connected target space: exactly one class on both skeletons
    for (const auto& cm : {one_to_group(cyclic_group(2)), inclusion_xmod(cyclic_group(4), {2})}) {
        auto l1 = enumerate_labelings(small, cm);
        auto l2 = enumerate_labelings(big, cm);
        CHECK(gauge_orbits(small, cm, l1).count() == 1);
        CHECK(gauge_orbits(big, cm, l2).count() == 1);
    }
    // twisted values agree across the two triangulations (both are 1, the
    // sphere carries only the trivial class)
    auto cm = one_to_group(cyclic_group(2));
    auto tw = twist_category(linearized_2group(cm),
                             inflate_group_cocycle(cm, cyclic_group_cocycle(2, 1, 2)).cocycle);
    for (const auto& P : {small, big})
        for (const auto& l : enumerate_labelings(P, cm))
            CHECK(state_sum(P, l, tw).normalized.is_one());
    CHECK(homology_h1(s3_pentachoron()) == AbelianGroup{{}, 0});
}

TEST_CASE("skeleton independence for lens spaces") {
    // hand skeleton (via the trace formula, cross-checked internally) vs the
    // bipyramid triangulation skeleton, orbit by orbit via value multisets
    for (const auto& cm : {inclusion_xmod(cyclic_group(4), {2}), trivial_to_one(cyclic_group(2))}) {
        auto c = linearized_2group(cm);
        for (int p : {2, 3}) {
            auto hand = lens_skeleton(p, 1);
            auto tri = skeleton_from_triangulation(lens_triangulation(p, 1));
            auto lh = enumerate_labelings(hand, cm);
            auto lt = enumerate_labelings(tri, cm);
            auto oh = gauge_orbits(hand, cm, lh);
            auto ot = gauge_orbits(tri, cm, lt);
            REQUIRE(oh.count() == ot.count());
            std::vector<std::string> vh, vt;
            for (int r : oh.representative)
                vh.push_back(state_sum(hand, lh[r], c).normalized.to_string());
            for (int r : ot.representative)
                vt.push_back(state_sum(tri, lt[r], c).normalized.to_string());
            std::sort(vh.begin(), vh.end());
            std::sort(vt.begin(), vt.end());
            CHECK(vh == vt);
        }
    }
}

TEST_CASE("trace output carries per-coloring terms") {
    Rp3Morphism m;
    auto base = linearized_2group(m.src);
    auto pushed = pushforward_category(m.phi, base);
    auto P = lens_skeleton(2, 1);
    auto tls = enumerate_labelings(P, m.tgt);
    StateSumOptions opts;
    opts.trace = true;
    for (const auto& l : tls) {
        auto r = state_sum(P, l, pushed, opts);
        CHECK(r.colorings == 6); // six simples of degree 1 in the pushed category
        CHECK(static_cast<long>(r.trace.size()) == r.colorings);
        Scalar total = Scalar::zero();
        for (const auto& term : r.trace) total += term.dim_factor * term.value;
        CHECK(total == r.unnormalized);
    }
}

TEST_CASE("parallel evaluation matches sequential") {
    Rp3Morphism m;
    auto base = linearized_2group(m.src);
    auto pushed = pushforward_category(m.phi, base);
    auto P = lens_skeleton(2, 1);
    for (const auto& l : enumerate_labelings(P, m.tgt)) {
        StateSumOptions seq, par;
        par.jobs = 2;
        CHECK(state_sum(P, l, pushed, seq).normalized == state_sum(P, l, pushed, par).normalized);
    }
}
