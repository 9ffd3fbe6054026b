#include "xms/skeleton.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace xms {

namespace {

int perm_sign4(const std::array<int, 4>& p) {
    int sign = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) sign = -sign;
    return sign;
}

int perm_sign3(const std::array<int, 3>& p) {
    int sign = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (p[i] > p[j]) sign = -sign;
    return sign;
}

// union-find with a relative sign
struct SignedDsu {
    std::vector<int> parent, rank_;
    std::vector<int> sign; // sign relative to parent
    bool conflict = false;
    void init(int n) {
        parent.resize(n);
        std::iota(parent.begin(), parent.end(), 0);
        rank_.assign(n, 0);
        sign.assign(n, 1);
    }
    std::pair<int, int> find(int x) { // root, sign of x relative to root
        if (parent[x] == x) return {x, 1};
        auto [r, s] = find(parent[x]);
        parent[x] = r;
        sign[x] *= s;
        return {r, sign[x]};
    }
    void unite(int a, int b, int rel) { // sign(a) = rel * sign(b)
        auto [ra, sa] = find(a);
        auto [rb, sb] = find(b);
        if (ra == rb) {
            if (sa != rel * sb) conflict = true;
            return;
        }
        if (rank_[ra] < rank_[rb]) {
            parent[ra] = rb;
            sign[ra] = sa * rel * sb; // solve sign(a)=rel*sign(b)
        } else {
            parent[rb] = ra;
            sign[rb] = sb * rel * sa;
            if (rank_[ra] == rank_[rb]) rank_[ra]++;
        }
    }
};

struct PlainDsu {
    std::vector<int> parent;
    void init(int n) {
        parent.resize(n);
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

const std::array<std::array<int, 3>, 4> kFaceCorners = {{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

int pair_index(int a, int b) { // 0..5 for unordered pairs in {0..3}
    if (a > b) std::swap(a, b);
    static const int tab[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return tab[a][b];
}

const std::array<std::pair<int, int>, 6> kPairs = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

} // namespace

// ------------------------------------------------------------ triangulation

std::vector<std::string> Triangulation::validate() const {
    std::vector<std::string> bad;
    if (n_tets <= 0) { bad.push_back("no tetrahedra"); return bad; }
    if (static_cast<int>(glue.size()) != n_tets) {
        bad.push_back("gluing table size mismatch");
        return bad;
    }
    for (int t = 0; t < n_tets; ++t)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = glue[t][f];
            if (g.tet < 0) { bad.push_back("unglued face (closedness fails)"); return bad; }
            if (g.tet >= n_tets || g.face < 0 || g.face > 3) {
                bad.push_back("gluing target out of range");
                return bad;
            }
            if (g.tet == t && g.face == f) {
                bad.push_back("face glued to itself");
                return bad;
            }
            std::array<char, 4> seen{};
            for (int c = 0; c < 4; ++c) {
                if (g.perm[c] < 0 || g.perm[c] > 3) { bad.push_back("bad permutation"); return bad; }
                seen[g.perm[c]] = 1;
            }
            if (!(seen[0] && seen[1] && seen[2] && seen[3])) {
                bad.push_back("gluing map is not a permutation");
                return bad;
            }
            if (g.perm[f] != g.face) {
                bad.push_back("gluing permutation does not send the face to the target face");
                return bad;
            }
            const FaceGluing& h = glue[g.tet][g.face];
            if (h.tet != t || h.face != f) { bad.push_back("gluing not involutive"); return bad; }
            for (int c = 0; c < 4; ++c)
                if (h.perm[g.perm[c]] != c) {
                    bad.push_back("gluing permutations not mutually inverse");
                    return bad;
                }
        }
    // orientability: o_t o_t' = -sign(perm)
    std::vector<int> o(n_tets, 0);
    std::vector<int> stack{0};
    o[0] = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = glue[t][f];
            int want = -perm_sign4(g.perm) * o[t];
            if (o[g.tet] == 0) {
                o[g.tet] = want;
                stack.push_back(g.tet);
            } else if (o[g.tet] != want) {
                bad.push_back("not orientable");
                return bad;
            }
        }
    }
    for (int t = 0; t < n_tets; ++t)
        if (o[t] == 0) bad.push_back("triangulation is not connected");
    // edges must not be identified with themselves in reverse
    SignedDsu edges;
    edges.init(n_tets * 6);
    for (int t = 0; t < n_tets; ++t)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = glue[t][f];
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    int a = kFaceCorners[f][i], b = kFaceCorners[f][j];
                    int a2 = g.perm[a], b2 = g.perm[b];
                    int rel = (a2 < b2) ? 1 : -1;
                    edges.unite(t * 6 + pair_index(a, b), g.tet * 6 + pair_index(a2, b2), rel);
                }
        }
    if (edges.conflict) bad.push_back("an edge is identified with itself in reverse");
    return bad;
}

std::vector<int> Triangulation::orient() const {
    auto rep = validate();
    if (!rep.empty()) throw std::invalid_argument("triangulation invalid: " + rep.front());
    std::vector<int> o(n_tets, 0);
    std::vector<int> stack{0};
    o[0] = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = glue[t][f];
            if (o[g.tet] == 0) {
                o[g.tet] = -perm_sign4(g.perm) * o[t];
                stack.push_back(g.tet);
            }
        }
    }
    return o;
}

// ---------------------------------------------------------------- homology

std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    size_t k = 0;
    std::vector<mpz_class> diag;
    while (k < rows && k < cols) {
        // find a nonzero pivot of smallest absolute value
        size_t pi = k, pj = k;
        mpz_class best = 0;
        for (size_t i = k; i < rows; ++i)
            for (size_t j = k; j < cols; ++j)
                if (m[i][j] != 0 && (best == 0 || abs(m[i][j]) < abs(best))) {
                    best = m[i][j];
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        std::swap(m[k], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][k], m[i][pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = k + 1; i < rows; ++i)
                if (m[i][k] != 0) {
                    mpz_class q = m[i][k] / m[k][k];
                    for (size_t j = k; j < cols; ++j) m[i][j] -= q * m[k][j];
                    if (m[i][k] != 0) { std::swap(m[k], m[i]); clean = false; }
                }
            for (size_t j = k + 1; j < cols; ++j)
                if (m[k][j] != 0) {
                    mpz_class q = m[k][j] / m[k][k];
                    for (size_t i = k; i < rows; ++i) m[i][j] -= q * m[i][k];
                    if (m[k][j] != 0) {
                        for (size_t i = 0; i < rows; ++i) std::swap(m[i][k], m[i][j]);
                        clean = false;
                    }
                }
        }
        diag.push_back(abs(m[k][k]));
        ++k;
    }
    // enforce divisibility d1 | d2 | ...
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            if (diag[i] == 0) std::swap(diag[i], diag[j]);
            if (diag[i] == 0) continue;
            mpz_class g = gcd(diag[i], diag[j]);
            mpz_class l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    return diag;
}

std::string AbelianGroup::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (long d : torsion) {
        if (!first) os << " + ";
        os << "Z/" << d;
        first = false;
    }
    for (long i = 0; i < rank; ++i) {
        if (!first) os << " + ";
        os << "Z";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

AbelianGroup homology_h1(const Triangulation& t) {
    auto rep = t.validate();
    if (!rep.empty()) throw std::invalid_argument("homology_h1: " + rep.front());

    PlainDsu corners;
    corners.init(t.n_tets * 4);
    SignedDsu edges;
    edges.init(t.n_tets * 6);
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.glue[tet][f];
            for (int c : kFaceCorners[f]) corners.unite(tet * 4 + c, g.tet * 4 + g.perm[c]);
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    int a = kFaceCorners[f][i], b = kFaceCorners[f][j];
                    int a2 = g.perm[a], b2 = g.perm[b];
                    edges.unite(tet * 6 + pair_index(a, b), g.tet * 6 + pair_index(a2, b2),
                                a2 < b2 ? 1 : -1);
                }
        }
    if (edges.conflict) throw std::invalid_argument("homology_h1: reversed edge identification");

    std::map<int, int> vclass, eclass;
    for (int i = 0; i < t.n_tets * 4; ++i) {
        int r = corners.find(i);
        if (!vclass.count(r)) vclass[r] = static_cast<int>(vclass.size());
    }
    for (int i = 0; i < t.n_tets * 6; ++i) {
        int r = edges.find(i).first;
        if (!eclass.count(r)) eclass[r] = static_cast<int>(eclass.size());
    }
    int nv = static_cast<int>(vclass.size());
    int ne = static_cast<int>(eclass.size());

    // face classes: one per gluing pair
    std::vector<std::pair<int, int>> face_reps;
    std::map<std::pair<int, int>, int> fclass;
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.glue[tet][f];
            auto self = std::make_pair(tet, f);
            auto other = std::make_pair(g.tet, g.face);
            auto rep2 = std::min(self, other);
            if (!fclass.count(rep2)) {
                fclass[rep2] = static_cast<int>(face_reps.size());
                face_reps.push_back(rep2);
            }
            fclass[self] = fclass[rep2];
        }
    int nf = static_cast<int>(face_reps.size());

    // boundary maps
    std::vector<std::vector<mpz_class>> d1(nv, std::vector<mpz_class>(ne, 0));
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int pi = 0; pi < 6; ++pi) {
            auto [r, s] = edges.find(tet * 6 + pi);
            if (r != tet * 6 + pi) continue; // only class representatives
            int col = eclass[r];
            auto [a, b] = kPairs[pi]; // oriented a -> b
            d1[vclass[corners.find(tet * 4 + b)]][col] += 1;
            d1[vclass[corners.find(tet * 4 + a)]][col] -= 1;
        }
    std::vector<std::vector<mpz_class>> d2(ne, std::vector<mpz_class>(nf, 0));
    for (int fc = 0; fc < nf; ++fc) {
        auto [tet, f] = face_reps[fc];
        const auto& cs = kFaceCorners[f]; // sorted corners u < v < w
        int u = cs[0], v = cs[1], w = cs[2];
        auto add = [&](int a, int b, int coeff) {
            auto [r, s] = edges.find(tet * 6 + pair_index(a, b));
            d2[eclass[r]][fc] += coeff * s;
        };
        add(v, w, +1);
        add(u, w, -1);
        add(u, v, +1);
    }

    auto diag1 = smith_diagonal(d1);
    auto diag2 = smith_diagonal(d2);
    long r1 = 0, r2 = 0;
    std::vector<long> torsion;
    for (const auto& d : diag1)
        if (d != 0) ++r1;
    for (const auto& d : diag2)
        if (d != 0) {
            ++r2;
            if (d > 1) torsion.push_back(d.get_si());
        }
    AbelianGroup h;
    std::sort(torsion.begin(), torsion.end());
    h.torsion = torsion;
    h.rank = ne - r1 - r2;
    return h;
}

// ---------------------------------------------------------------- builtins

namespace {

// build gluings from tets given as global vertex 4-tuples: every sorted
// triple must appear in exactly two tetrahedra
Triangulation from_vertex_tuples(const std::vector<std::array<int, 4>>& tets) {
    Triangulation t;
    t.n_tets = static_cast<int>(tets.size());
    t.glue.assign(t.n_tets, {});
    std::map<std::array<int, 3>, std::vector<std::pair<int, int>>> faces;
    for (int i = 0; i < t.n_tets; ++i)
        for (int f = 0; f < 4; ++f) {
            std::array<int, 3> tri{};
            int k = 0;
            for (int c : kFaceCorners[f]) tri[k++] = tets[i][c];
            std::sort(tri.begin(), tri.end());
            faces[tri].push_back({i, f});
        }
    for (auto& [tri, occ] : faces) {
        if (occ.size() != 2) throw std::logic_error("from_vertex_tuples: face count != 2");
        auto [t1, f1] = occ[0];
        auto [t2, f2] = occ[1];
        std::array<int, 4> p{}, q{};
        for (int c = 0; c < 4; ++c) {
            if (c == f1) { p[c] = f2; continue; }
            int g = tets[t1][c];
            for (int c2 = 0; c2 < 4; ++c2)
                if (c2 != f2 && tets[t2][c2] == g) p[c] = c2;
        }
        for (int c = 0; c < 4; ++c) q[p[c]] = c;
        t.glue[t1][f1] = {t2, f2, p};
        t.glue[t2][f2] = {t1, f1, q};
    }
    return t;
}

} // namespace

Triangulation s3_triangulation() {
    // the double of a tetrahedron: two tetrahedra glued along all four faces
    Triangulation t;
    t.n_tets = 2;
    t.glue.assign(2, {});
    for (int f = 0; f < 4; ++f) {
        t.glue[0][f] = {1, f, {0, 1, 2, 3}};
        t.glue[1][f] = {0, f, {0, 1, 2, 3}};
    }
    return t;
}

Triangulation s3_pentachoron() {
    // boundary of the 4-simplex; an independent triangulation of the sphere
    std::vector<std::array<int, 4>> tets;
    for (int skip = 0; skip < 5; ++skip) {
        std::array<int, 4> tet{};
        int k = 0;
        for (int v = 0; v < 5; ++v)
            if (v != skip) tet[k++] = v;
        tets.push_back(tet);
    }
    return from_vertex_tuples(tets);
}

Triangulation lens_triangulation(int p, int q) {
    if (p < 2 || q < 1 || q >= p || std::gcd(p, q) != 1)
        throw std::invalid_argument("lens_triangulation: need coprime 1 <= q < p, p >= 2");
    // bipyramid over a p-gon: tets T_i = (N, S, v_i, v_i+1); internal faces
    // (N,S,v_i+1) glue T_i to T_i+1; the cone face (N, v_i, v_i+1) of T_i
    // glues to (S, v_i+q, v_i+q+1) of T_i+q
    Triangulation t;
    t.n_tets = p;
    t.glue.assign(p, {});
    auto md = [&](int i) { return ((i % p) + p) % p; };
    for (int i = 0; i < p; ++i) {
        // T_i face 2 (opp corner 2 = v_i) = (N,S,v_i+1) -> T_i+1 face 3
        t.glue[i][2] = {md(i + 1), 3, {0, 1, 3, 2}};
        t.glue[md(i + 1)][3] = {i, 2, {0, 1, 3, 2}};
        // T_i face 1 (opp S) = (N, v_i, v_i+1) -> T_i+q face 0 (opp N)
        t.glue[i][1] = {md(i + q), 0, {1, 0, 2, 3}};
        t.glue[md(i + q)][0] = {i, 1, {1, 0, 2, 3}};
    }
    return t;
}

Triangulation s1xs2_triangulation() {
    // (boundary of the 3-simplex) x S^1 with three intervals, prisms split by
    // the ordered staircase rule
    std::vector<std::array<int, 4>> tets;
    auto vid = [](int v, int i) { return v * 3 + (i % 3); };
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int c = b + 1; c < 4; ++c)
                for (int i = 0; i < 3; ++i) {
                    tets.push_back({vid(a, i), vid(b, i), vid(c, i), vid(c, i + 1)});
                    tets.push_back({vid(a, i), vid(b, i), vid(b, i + 1), vid(c, i + 1)});
                    tets.push_back({vid(a, i), vid(a, i + 1), vid(b, i + 1), vid(c, i + 1)});
                }
    return from_vertex_tuples(tets);
}

Triangulation builtin_triangulation(const std::string& name) {
    if (name == "s3") return s3_triangulation();
    if (name == "s3-pentachoron") return s3_pentachoron();
    if (name == "rp3") return lens_triangulation(2, 1);
    if (name == "s1xs2") return s1xs2_triangulation();
    if (name == "l31") return lens_triangulation(3, 1);
    if (name == "l41") return lens_triangulation(4, 1);
    if (name == "l52") return lens_triangulation(5, 2);
    if (name.rfind("lens-tri:", 0) == 0) {
        auto rest = name.substr(9);
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("expected lens-tri:p,q");
        return lens_triangulation(std::stoi(rest.substr(0, comma)), std::stoi(rest.substr(comma + 1)));
    }
    throw std::invalid_argument("unknown builtin triangulation: " + name);
}

// ---------------------------------------------------------------- skeleton

OrientedEdgeView edge_view(const CombSkeleton& p, int edge, bool positive) {
    const auto& e = p.edges[edge];
    int n = e.valence();
    OrientedEdgeView v;
    if (positive) {
        v.region = e.branch_region;
        v.eps = e.branch_eps;
        v.gap_ball = e.gap_ball;
        return v;
    }
    for (int j = 0; j < n; ++j) {
        v.region.push_back(e.branch_region[n - 1 - j]);
        v.eps.push_back(-e.branch_eps[n - 1 - j]);
        v.gap_ball.push_back(e.gap_ball[((n - j) % n)]);
    }
    return v;
}

std::vector<std::string> CombSkeleton::validate() const {
    std::vector<std::string> bad;
    for (size_t ei = 0; ei < edges.size(); ++ei) {
        const Edge& e = edges[ei];
        int n = e.valence();
        if (n < 2) bad.push_back("edge " + std::to_string(ei) + " has valence < 2");
        if (static_cast<int>(e.branch_eps.size()) != n ||
            static_cast<int>(e.gap_ball.size()) != n) {
            bad.push_back("edge " + std::to_string(ei) + " has inconsistent lists");
            continue;
        }
        // gaps interleave with the regions' ball sides
        for (int i = 0; i < n; ++i) {
            const Region& r = regions[e.branch_region[i]];
            int in_side = e.branch_eps[i] > 0 ? r.ball_neg : r.ball_pos;
            int out_side = e.branch_eps[i] > 0 ? r.ball_pos : r.ball_neg;
            if (in_side != e.gap_ball[i])
                bad.push_back("edge " + std::to_string(ei) + " branch " + std::to_string(i) +
                              ": incoming ball mismatch");
            if (out_side != e.gap_ball[(i + 1) % n])
                bad.push_back("edge " + std::to_string(ei) + " branch " + std::to_string(i) +
                              ": outgoing ball mismatch");
        }
    }
    // link graphs: structure, sphere check, and full dart-ref coverage
    std::set<std::tuple<int, bool, int>> seen;
    for (size_t vi = 0; vi < vertices.size(); ++vi) {
        const Vertex& v = vertices[vi];
        auto srep = v.link.validate_structure();
        if (!srep.empty()) {
            bad.push_back("vertex " + std::to_string(vi) + " link: " + srep.front());
            continue;
        }
        if (!v.link.connected()) bad.push_back("vertex link not connected");
        auto faces = trace_faces(v.link);
        if (!faces.genus_zero)
            bad.push_back("vertex " + std::to_string(vi) + " link is not a sphere");
        if (v.dart_ref.size() != static_cast<size_t>(v.link.dart_count()))
            bad.push_back("vertex " + std::to_string(vi) + " dart refs incomplete");
        else
            for (const auto& ref : v.dart_ref) {
                if (!seen.insert({ref.p_edge, ref.away_positive, ref.ball_index}).second)
                    bad.push_back("duplicate dart reference");
            }
        if (v.link_edge_region.size() != v.link.edges.size())
            bad.push_back("vertex link regions incomplete");
    }
    size_t expect = 0;
    for (const auto& e : edges) expect += 2 * e.valence();
    if (seen.size() != expect) bad.push_back("dart references do not cover all edge gaps");
    return bad;
}

CombSkeleton lens_skeleton(int p, int q) {
    if (p < 2 || q < 1 || q >= p || std::gcd(p, q) != 1)
        throw std::invalid_argument("lens_skeleton: need coprime 1 <= q < p, p >= 2");
    CombSkeleton s;
    s.n_balls = 1;
    s.regions.push_back({1, 0, 0});
    CombSkeleton::Edge e;
    e.branch_region.assign(p, 0);
    e.branch_eps.assign(p, +1);
    e.gap_ball.assign(p, 0);
    s.edges.push_back(e);

    CombSkeleton::Vertex v;
    v.link.n_vertices = 2; // 0 = outgoing germ, 1 = incoming germ
    for (int i = 0; i < p; ++i) v.link.edges.push_back({1, 0, 0});
    std::vector<int> rotL, rotR;
    for (int i = 0; i < p; ++i) rotL.push_back(2 * i + 1);
    for (int i = p - 1; i >= 0; --i) rotR.push_back(2 * i);
    v.link.rotation = {rotL, rotR};
    v.link.anchor_pos = {0, q % p};
    v.link.anchor_e = {0, 0};
    v.link.outer_vertex = 0;
    v.link.outer_pos = 0;
    v.link_edge_region.assign(p, 0);
    v.dart_ref.assign(2 * p, {});
    for (int i = 0; i < p; ++i) {
        // dart at L in rotation slot i is edge i's to-dart: gap i, positive
        v.dart_ref[2 * i + 1] = {0, true, i};
        // dart at R in rotation slot m is edge p-1-m: reversed gap (m-q) mod p
        int m = 0;
        for (int k = 0; k < p; ++k)
            if (rotR[k] == 2 * i) m = k;
        v.dart_ref[2 * i] = {0, false, ((m - (q % p)) % p + p) % p};
    }
    s.vertices.push_back(std::move(v));
    return s;
}

CombSkeleton s1xs2_skeleton() {
    CombSkeleton s;
    s.n_balls = 2;
    // regions: 0 = disk x, 1 = disk y, 2 = annulus z
    s.regions.push_back({1, 1, 1}); // x: both sides in ball 1
    s.regions.push_back({1, 0, 0}); // y: both sides in ball 0
    s.regions.push_back({0, 1, 0}); // z: annulus between the balls
    CombSkeleton::Edge e;
    e.branch_region = {2, 0, 2, 1}; // word z^- x z y
    e.branch_eps = {-1, +1, +1, +1};
    e.gap_ball = {0, 1, 1, 0};
    s.edges.push_back(e);

    CombSkeleton::Vertex v;
    v.link.n_vertices = 2; // 0 = outgoing germ, 1 = incoming germ
    // link edges follow the branches: z_a, x, z_b, y
    // eps at the out germ is (-,+,+,+): z_a points away from germ 0
    v.link.edges.push_back({0, 1, 0}); // z_a: O -> I
    v.link.edges.push_back({1, 0, 0}); // x:   I -> O
    v.link.edges.push_back({1, 0, 0}); // z_b: I -> O
    v.link.edges.push_back({1, 0, 0}); // y:   I -> O
    auto dart_at_O = [&](int le) { return v.link.edges[le].from == 0 ? 2 * le : 2 * le + 1; };
    auto dart_at_I = [&](int le) { return v.link.edges[le].from == 1 ? 2 * le : 2 * le + 1; };
    std::vector<int> rotO, rotI;
    for (int i = 0; i < 4; ++i) rotO.push_back(dart_at_O(i));
    for (int i = 3; i >= 0; --i) rotI.push_back(dart_at_I(i));
    v.link.rotation = {rotO, rotI};
    int shift = 0; // position of the reversed gap 0 in the incoming rotation
    v.link.anchor_pos = {0, shift};
    v.link.anchor_e = {0, 0};
    v.link.outer_vertex = 0;
    v.link.outer_pos = 0;
    v.link_edge_region = {2, 0, 2, 1};
    v.dart_ref.assign(8, {});
    for (int i = 0; i < 4; ++i) {
        v.dart_ref[dart_at_O(i)] = {0, true, i};
        int m = 0;
        for (int k = 0; k < 4; ++k)
            if (rotI[k] == dart_at_I(i)) m = k;
        v.dart_ref[dart_at_I(i)] = {0, false, ((m - shift) % 4 + 4) % 4};
    }
    s.vertices.push_back(std::move(v));
    return s;
}

// ------------------------------------- skeleton from a triangulation table

CombSkeleton skeleton_from_triangulation(const Triangulation& t) {
    std::vector<int> o = t.orient();
    CombSkeleton s;
    s.n_balls = t.n_tets;

    // regions = face classes
    std::map<std::pair<int, int>, int> face_class;
    std::vector<std::pair<int, int>> face_rep;
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int f = 0; f < 4; ++f) {
            auto self = std::make_pair(tet, f);
            const FaceGluing& g = t.glue[tet][f];
            auto other = std::make_pair(g.tet, g.face);
            auto rep = std::min(self, other);
            if (!face_class.count(rep)) {
                face_class[rep] = static_cast<int>(face_rep.size());
                face_rep.push_back(rep);
            }
            face_class[self] = face_class[rep];
        }
    s.regions.resize(face_rep.size());
    for (size_t rc = 0; rc < face_rep.size(); ++rc) {
        auto [tet, f] = face_rep[rc];
        const FaceGluing& g = t.glue[tet][f];
        s.regions[rc].euler = 1;
        // with regions oriented by the boundary of the o-oriented rep
        // tetrahedron, the normal from r_- to r_+ always leaves the rep side
        s.regions[rc].ball_neg = tet;
        s.regions[rc].ball_pos = g.tet;
    }
    // oriented triangle of a region on a given side (tet, f): ordered locals
    auto oriented_triangle = [&](int rc, int tet, int f) -> std::array<int, 3> {
        auto [rt, rf] = face_rep[rc];
        std::array<int, 3> tri = kFaceCorners[rf];
        int sign = ((rf % 2 == 0) ? 1 : -1) * o[rt];
        // boundary of an oriented tetrahedron: face f carries (-1)^f
        if (sign < 0) std::swap(tri[0], tri[1]);
        if (rt == tet && rf == f) return tri;
        const FaceGluing& g = t.glue[rt][rf];
        if (g.tet != tet || g.face != f)
            throw std::logic_error("oriented_triangle: wrong side requested");
        for (auto& c : tri) c = g.perm[c];
        return tri;
    };

    // edge classes with a chosen orientation
    SignedDsu edsu;
    edsu.init(t.n_tets * 6);
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.glue[tet][f];
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    int a = kFaceCorners[f][i], b = kFaceCorners[f][j];
                    int a2 = g.perm[a], b2 = g.perm[b];
                    edsu.unite(tet * 6 + pair_index(a, b), g.tet * 6 + pair_index(a2, b2),
                               a2 < b2 ? 1 : -1);
                }
        }
    if (edsu.conflict) throw std::invalid_argument("reversed edge identification");
    std::map<int, int> eclass;
    std::vector<int> eclass_rep;
    for (int i = 0; i < t.n_tets * 6; ++i) {
        int r = edsu.find(i).first;
        if (!eclass.count(r)) {
            eclass[r] = static_cast<int>(eclass_rep.size());
            eclass_rep.push_back(r);
        }
    }

    // edge-link walks
    struct WalkStep {
        int tet, a, b;   // directed edge within the tet
        int exit_face;   // face crossed after this tet
    };
    struct EdgeWalk {
        std::vector<WalkStep> steps;
    };
    std::vector<EdgeWalk> walks(eclass_rep.size());
    auto positive_cd = [&](int tet, int a, int b) {
        // corners c, d with (a,b,c,d) positively oriented in the o_t sense
        std::array<int, 2> rest{};
        int k = 0;
        for (int c = 0; c < 4; ++c)
            if (c != a && c != b) rest[k++] = c;
        std::array<int, 4> p1 = {a, b, rest[0], rest[1]};
        if (perm_sign4(p1) == o[tet]) return std::make_pair(rest[0], rest[1]);
        return std::make_pair(rest[1], rest[0]);
    };
    for (size_t ec = 0; ec < eclass_rep.size(); ++ec) {
        int rep = eclass_rep[ec];
        int tet0 = rep / 6;
        auto [a0, b0] = kPairs[rep % 6];
        int tet = tet0, a = a0, b = b0;
        do {
            auto [c, d] = positive_cd(tet, a, b);
            int ef = c; // exit through the face opposite c
            walks[ec].steps.push_back({tet, a, b, ef});
            const FaceGluing& g = t.glue[tet][ef];
            int na = g.perm[a], nb = g.perm[b];
            tet = g.tet;
            a = na;
            b = nb;
        } while (!(tet == tet0 && a == a0 && b == b0));
    }

    // branch data
    s.edges.resize(eclass_rep.size());
    for (size_t ec = 0; ec < eclass_rep.size(); ++ec) {
        auto& edge = s.edges[ec];
        for (const auto& st : walks[ec].steps) {
            int rc = face_class[{st.tet, st.exit_face}];
            edge.branch_region.push_back(rc);
            // induced direction of the oriented region triangle on (a -> b)
            auto tri = oriented_triangle(rc, st.tet, st.exit_face);
            int x = -1;
            for (int c : tri)
                if (c != st.a && c != st.b) x = c;
            std::array<int, 3> want = {st.a, st.b, x};
            // compare parity of `want` against `tri` as orderings of the same set
            auto parity_vs = [&](const std::array<int, 3>& u, const std::array<int, 3>& v) {
                // sign of the permutation taking u to v
                std::array<int, 3> pos{};
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        if (v[j] == u[i]) pos[i] = j;
                return perm_sign3(pos);
            };
            edge.branch_eps.push_back(parity_vs(tri, want));
            edge.gap_ball.push_back(st.tet);
        }
    }

    // vertex classes and link graphs
    PlainDsu cdsu;
    cdsu.init(t.n_tets * 4);
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int f = 0; f < 4; ++f)
            for (int c : kFaceCorners[f]) cdsu.unite(tet * 4 + c, t.glue[tet][f].tet * 4 + t.glue[tet][f].perm[c]);
    std::map<int, int> vclass;
    for (int i = 0; i < t.n_tets * 4; ++i) {
        int r = cdsu.find(i);
        if (!vclass.count(r)) vclass[r] = static_cast<int>(vclass.size());
    }
    auto corner_class = [&](int tet, int c) { return vclass[cdsu.find(tet * 4 + c)]; };

    // edge germs: (tet, v, w) ordered pairs, identified through gluings
    PlainDsu gdsu;
    gdsu.init(t.n_tets * 12); // ordered pairs: 4*3 per tet
    auto germ_id = [&](int tet, int v, int w) {
        int k = v * 3 + (w > v ? w - 1 : w);
        return tet * 12 + k;
    };
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.glue[tet][f];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    int v = kFaceCorners[f][i], w = kFaceCorners[f][j];
                    gdsu.unite(germ_id(tet, v, w), germ_id(g.tet, g.perm[v], g.perm[w]));
                }
        }

    // incidence positions: for each (tet, a, b) record (edge class, step)
    std::map<std::tuple<int, int, int>, std::pair<int, int>> incidence;
    for (size_t ec = 0; ec < eclass_rep.size(); ++ec)
        for (size_t k = 0; k < walks[ec].steps.size(); ++k) {
            const auto& st = walks[ec].steps[k];
            incidence[{st.tet, st.a, st.b}] = {static_cast<int>(ec), static_cast<int>(k)};
        }

    // face-corner germs and their link-edge ids per vertex class
    // key: (tet, corner v, face f)
    std::map<std::tuple<int, int, int>, std::pair<int, int>> link_edge_of;
    // value: (link edge id within the vertex, dart base) resolved later via
    // dart_of maps; we store per occurrence the dart for each partner corner
    std::map<std::tuple<int, int, int>, std::map<int, int>> dart_of;

    std::vector<CombSkeleton::Vertex> vertex_data(vclass.size());
    std::vector<std::map<int, int>> germ_index(vclass.size()); // germ class -> link vertex id

    // create link vertices (edge germs)
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int v = 0; v < 4; ++v)
            for (int w = 0; w < 4; ++w) {
                if (v == w) continue;
                int vc = corner_class(tet, v);
                int root = gdsu.find(germ_id(tet, v, w));
                auto& gi = germ_index[vc];
                if (!gi.count(root)) {
                    int id = static_cast<int>(gi.size());
                    gi[root] = id;
                }
            }
    for (size_t vc = 0; vc < vclass.size(); ++vc)
        vertex_data[vc].link.n_vertices = static_cast<int>(germ_index[vc].size());

    // create link edges from face-corner germ pairs
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int f = 0; f < 4; ++f)
            for (int v : kFaceCorners[f]) {
                auto key = std::make_tuple(tet, v, f);
                if (link_edge_of.count(key)) continue;
                const FaceGluing& g = t.glue[tet][f];
                auto partner = std::make_tuple(g.tet, g.perm[v], g.face);
                int vc = corner_class(tet, v);
                int rc = face_class[{tet, f}];
                // direction from the oriented triangle on this side
                auto tri = oriented_triangle(rc, tet, f);
                // rotate so that v comes first
                std::array<int, 3> rot = tri;
                while (rot[0] != v) {
                    std::array<int, 3> tmp = {rot[1], rot[2], rot[0]};
                    rot = tmp;
                }
                int pcorner = rot[1], qcorner = rot[2];
                // the oriented triangle (v,p,q) induces the direction v->p on
                // the edge vp, so that germ carries branch sign +: the link
                // arc points into it
                int from_vertex = germ_index[vc][gdsu.find(germ_id(tet, v, qcorner))];
                int to_vertex = germ_index[vc][gdsu.find(germ_id(tet, v, pcorner))];
                auto& vd = vertex_data[vc];
                int le = static_cast<int>(vd.link.edges.size());
                vd.link.edges.push_back({from_vertex, to_vertex, 0});
                vd.link_edge_region.push_back(rc);
                link_edge_of[key] = {le, vc};
                link_edge_of[partner] = {le, vc};
                dart_of[key][qcorner] = 2 * le;
                dart_of[key][pcorner] = 2 * le + 1;
                dart_of[partner][g.perm[qcorner]] = 2 * le;
                dart_of[partner][g.perm[pcorner]] = 2 * le + 1;
            }

    // rotations and dart references from the walks
    for (size_t vc = 0; vc < vclass.size(); ++vc) {
        vertex_data[vc].link.rotation.assign(vertex_data[vc].link.n_vertices, {});
        vertex_data[vc].link.anchor_pos.assign(vertex_data[vc].link.n_vertices, 0);
        vertex_data[vc].link.anchor_e.assign(vertex_data[vc].link.n_vertices, 0);
        vertex_data[vc].dart_ref.assign(2 * vertex_data[vc].link.edges.size(), {});
    }
    std::set<int> germ_done;
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int v = 0; v < 4; ++v)
            for (int w = 0; w < 4; ++w) {
                if (v == w) continue;
                int root = gdsu.find(germ_id(tet, v, w));
                if (germ_done.count(root)) continue;
                germ_done.insert(root);
                int vc = corner_class(tet, v);
                int gvert = germ_index[vc][root];
                auto& vd = vertex_data[vc];

                bool away_positive;
                int ec, start;
                if (auto it = incidence.find({tet, v, w}); it != incidence.end()) {
                    away_positive = true;
                    ec = it->second.first;
                    start = it->second.second;
                } else {
                    auto jt = incidence.find({tet, w, v});
                    if (jt == incidence.end()) throw std::logic_error("incidence missing");
                    away_positive = false;
                    ec = jt->second.first;
                    start = jt->second.second;
                }
                const auto& steps = walks[ec].steps;
                int n = static_cast<int>(steps.size());
                for (int i = 0; i < n; ++i) {
                    int phys, vcorner;
                    int ball_index;
                    if (away_positive) {
                        phys = (start + i) % n;
                        vcorner = steps[phys].a;
                        ball_index = (start + i) % n;
                        // ball index in the positive numbering anchored at the
                        // canonical start (step 0)
                        ball_index = phys;
                    } else {
                        phys = ((start - 1 - i) % n + n) % n;
                        vcorner = steps[phys].b;
                        // reversed gap j corresponds to physical gap (n-j)%n;
                        // our i-th slot has physical gap (start - i)
                        int phys_gap = ((start - i) % n + n) % n;
                        ball_index = (n - phys_gap) % n;
                    }
                    const auto& st = steps[phys];
                    auto key = std::make_tuple(st.tet, vcorner, st.exit_face);
                    auto dit = dart_of.find(key);
                    if (dit == dart_of.end()) throw std::logic_error("face germ missing");
                    int partner = away_positive ? st.b : st.a;
                    // the slot's dart joins our germ to the other end of the
                    // link arc; our germ corresponds to the edge partner
                    int dart = dit->second.at(partner);
                    vd.link.rotation[gvert].push_back(dart);
                    vd.dart_ref[dart] = {ec, away_positive, ball_index};
                    if (ball_index == 0)
                        vd.link.anchor_pos[gvert] = i;
                }
            }

    for (auto& vd : vertex_data) {
        vd.link.outer_vertex = 0;
        vd.link.outer_pos = 0;
        s.vertices.push_back(std::move(vd));
    }
    return s;
}

} // namespace xms
