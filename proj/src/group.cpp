#include "xms/group.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace xms {

Elt FiniteGroup::pow(Elt a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    Elt acc = identity;
    Elt base = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::string FiniteGroup::name_of(Elt a) const {
    if (!names.empty()) return names[a];
    return std::to_string(a);
}

std::vector<std::string> FiniteGroup::validate() const {
    std::vector<std::string> bad;
    if (order <= 0) { bad.push_back("order must be positive"); return bad; }
    if (static_cast<int>(cayley.size()) != order) {
        bad.push_back("cayley table has wrong number of rows");
        return bad;
    }
    for (int a = 0; a < order; ++a) {
        if (static_cast<int>(cayley[a].size()) != order) {
            bad.push_back("cayley row " + std::to_string(a) + " has wrong length");
            return bad;
        }
        for (int b = 0; b < order; ++b)
            if (cayley[a][b] < 0 || cayley[a][b] >= order) {
                bad.push_back("cayley entry out of range at (" + std::to_string(a) +
                              "," + std::to_string(b) + ")");
                return bad;
            }
    }
    if (identity < 0 || identity >= order) {
        bad.push_back("identity index out of range");
        return bad;
    }
    for (int a = 0; a < order; ++a) {
        if (mul(identity, a) != a || mul(a, identity) != a)
            bad.push_back("identity fails at " + std::to_string(a));
    }
    if (static_cast<int>(inverse.size()) != order)
        bad.push_back("inverse table has wrong length");
    else
        for (int a = 0; a < order; ++a)
            if (mul(a, inverse[a]) != identity || mul(inverse[a], a) != identity)
                bad.push_back("inverse fails at " + std::to_string(a));
    for (int a = 0; a < order && bad.empty(); ++a)
        for (int b = 0; b < order && bad.empty(); ++b)
            for (int c = 0; c < order; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
                    bad.push_back("associativity fails at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
                    break;
                }
    return bad;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

FiniteGroup trivial_group() { return cyclic_group(1); }

FiniteGroup cyclic_group(int n) {
    if (n <= 0) throw std::invalid_argument("cyclic_group: order must be positive");
    FiniteGroup g;
    g.order = n;
    g.identity = 0;
    g.cayley.assign(n, std::vector<Elt>(n));
    g.inverse.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) g.cayley[a][b] = (a + b) % n;
        g.inverse[a] = (n - a) % n;
        g.names.push_back(std::to_string(a));
    }
    return g;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    FiniteGroup g;
    g.order = a.order * b.order;
    g.identity = a.identity * b.order + b.identity;
    g.cayley.assign(g.order, std::vector<Elt>(g.order));
    g.inverse.assign(g.order, 0);
    auto enc = [&](Elt x, Elt y) { return x * b.order + y; };
    for (int x1 = 0; x1 < a.order; ++x1)
        for (int y1 = 0; y1 < b.order; ++y1) {
            Elt e1 = enc(x1, y1);
            g.inverse[e1] = enc(a.inv(x1), b.inv(y1));
            g.names.push_back("(" + a.name_of(x1) + "," + b.name_of(y1) + ")");
            for (int x2 = 0; x2 < a.order; ++x2)
                for (int y2 = 0; y2 < b.order; ++y2)
                    g.cayley[e1][enc(x2, y2)] = enc(a.mul(x1, x2), b.mul(y1, y2));
        }
    return g;
}

FiniteGroup symmetric_group_s3() {
    // permutations of {0,1,2} listed: id, (01), (02), (12), (012), (021)
    std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    auto compose = [&](int i, int j) { // perm i after perm j
        std::array<int, 3> c{};
        for (int k = 0; k < 3; ++k) c[k] = perms[i][perms[j][k]];
        for (size_t k = 0; k < perms.size(); ++k)
            if (perms[k] == c) return static_cast<int>(k);
        throw std::logic_error("s3 composition");
    };
    FiniteGroup g;
    g.order = 6;
    g.identity = 0;
    g.cayley.assign(6, std::vector<Elt>(6));
    g.inverse.assign(6, 0);
    g.names = {"e", "(01)", "(02)", "(12)", "(012)", "(021)"};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            g.cayley[i][j] = compose(i, j);
            if (g.cayley[i][j] == 0) g.inverse[i] = j;
        }
    return g;
}


std::vector<std::string> GroupHom::validate() const {
    std::vector<std::string> bad;
    if (!source || !target) { bad.push_back("hom: missing groups"); return bad; }
    if (static_cast<int>(image.size()) != source->order) {
        bad.push_back("hom: image table has wrong length");
        return bad;
    }
    for (Elt a : image)
        if (a < 0 || a >= target->order) {
            bad.push_back("hom: image entry out of range");
            return bad;
        }
    if (image[source->identity] != target->identity)
        bad.push_back("hom: does not preserve identity");
    for (int a = 0; a < source->order; ++a)
        for (int b = 0; b < source->order; ++b)
            if (image[source->mul(a, b)] != target->mul(image[a], image[b])) {
                bad.push_back("hom: multiplicativity fails at (" + std::to_string(a) +
                              "," + std::to_string(b) + ")");
                return bad;
            }
    return bad;
}

bool GroupHom::is_injective() const {
    std::set<Elt> seen(image.begin(), image.end());
    return static_cast<int>(seen.size()) == source->order;
}

bool GroupHom::is_surjective() const {
    std::set<Elt> seen(image.begin(), image.end());
    return static_cast<int>(seen.size()) == target->order;
}

std::vector<Elt> GroupHom::kernel_elements() const {
    std::vector<Elt> k;
    for (int a = 0; a < source->order; ++a)
        if (image[a] == target->identity) k.push_back(a);
    return k;
}

std::vector<Elt> GroupHom::image_elements() const {
    std::set<Elt> s(image.begin(), image.end());
    return std::vector<Elt>(s.begin(), s.end());
}

GroupHom identity_hom(const FiniteGroup& g) {
    GroupHom h;
    h.source = &g;
    h.target = &g;
    h.image.resize(g.order);
    std::iota(h.image.begin(), h.image.end(), 0);
    return h;
}

GroupHom trivial_hom(const FiniteGroup& src, const FiniteGroup& tgt) {
    GroupHom h;
    h.source = &src;
    h.target = &tgt;
    h.image.assign(src.order, tgt.identity);
    return h;
}

std::vector<std::string> GroupAction::validate() const {
    std::vector<std::string> bad;
    if (!actor || !space) { bad.push_back("action: missing groups"); return bad; }
    if (static_cast<int>(table.size()) != actor->order) {
        bad.push_back("action: table has wrong number of rows");
        return bad;
    }
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != space->order) {
            bad.push_back("action: row has wrong length");
            return bad;
        }
        for (Elt e : row)
            if (e < 0 || e >= space->order) {
                bad.push_back("action: entry out of range");
                return bad;
            }
    }
    for (int e = 0; e < space->order; ++e)
        if (act(actor->identity, e) != e) {
            bad.push_back("action: identity of actor does not act trivially");
            break;
        }
    for (int x = 0; x < actor->order && bad.empty(); ++x) {
        // each x acts as an automorphism
        std::vector<char> seen(space->order, 0);
        for (int e = 0; e < space->order; ++e) seen[act(x, e)] = 1;
        for (int e = 0; e < space->order; ++e)
            if (!seen[e]) {
                bad.push_back("action: element " + std::to_string(x) + " is not bijective");
                break;
            }
        for (int e = 0; e < space->order && bad.empty(); ++e)
            for (int f = 0; f < space->order; ++f)
                if (act(x, space->mul(e, f)) != space->mul(act(x, e), act(x, f))) {
                    bad.push_back("action: element " + std::to_string(x) +
                                  " is not a homomorphism");
                    break;
                }
    }
    for (int x = 0; x < actor->order && bad.empty(); ++x)
        for (int y = 0; y < actor->order && bad.empty(); ++y)
            for (int e = 0; e < space->order; ++e)
                if (act(actor->mul(x, y), e) != act(x, act(y, e))) {
                    bad.push_back("action: left action law fails at (" + std::to_string(x) +
                                  "," + std::to_string(y) + "," + std::to_string(e) + ")");
                    break;
                }
    return bad;
}

GroupAction trivial_action(const FiniteGroup& actor, const FiniteGroup& space) {
    GroupAction a;
    a.actor = &actor;
    a.space = &space;
    a.table.assign(actor.order, std::vector<Elt>(space.order));
    for (auto& row : a.table) std::iota(row.begin(), row.end(), 0);
    return a;
}

GroupAction conjugation_action(const FiniteGroup& g) {
    GroupAction a;
    a.actor = &g;
    a.space = &g;
    a.table.assign(g.order, std::vector<Elt>(g.order));
    for (int x = 0; x < g.order; ++x)
        for (int e = 0; e < g.order; ++e) a.table[x][e] = g.conj(x, e);
    return a;
}

std::optional<GroupAction> conjugation_action_via(const GroupHom& incl) {
    const FiniteGroup& e = *incl.source;
    const FiniteGroup& h = *incl.target;
    // ambient element -> subgroup index, when in the image
    std::map<Elt, Elt> back;
    for (int i = 0; i < e.order; ++i) {
        if (back.count(incl.image[i])) return std::nullopt; // not injective
        back[incl.image[i]] = i;
    }
    GroupAction a;
    a.actor = &h;
    a.space = &e;
    a.table.assign(h.order, std::vector<Elt>(e.order));
    for (int x = 0; x < h.order; ++x)
        for (int i = 0; i < e.order; ++i) {
            Elt c = h.conj(x, incl.image[i]);
            auto it = back.find(c);
            if (it == back.end()) return std::nullopt; // image not normal
            a.table[x][i] = it->second;
        }
    return a;
}

Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<Elt> elems) {
    std::set<Elt> closed(elems.begin(), elems.end());
    closed.insert(g.identity);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Elt> cur(closed.begin(), closed.end());
        for (Elt a : cur)
            for (Elt b : cur) {
                if (closed.insert(g.mul(a, b)).second) grew = true;
                if (closed.insert(g.inv(a)).second) grew = true;
            }
    }
    Subgroup s;
    s.embed.assign(closed.begin(), closed.end());
    std::map<Elt, Elt> back;
    for (size_t i = 0; i < s.embed.size(); ++i) back[s.embed[i]] = static_cast<Elt>(i);
    int n = static_cast<int>(s.embed.size());
    s.group.order = n;
    s.group.identity = back[g.identity];
    s.group.cayley.assign(n, std::vector<Elt>(n));
    s.group.inverse.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        s.group.inverse[i] = back[g.inv(s.embed[i])];
        s.group.names.push_back(g.name_of(s.embed[i]));
        for (int j = 0; j < n; ++j)
            s.group.cayley[i][j] = back[g.mul(s.embed[i], s.embed[j])];
    }
    return s;
}

Quotient quotient_by_normal(const FiniteGroup& g, const std::vector<Elt>& normal_elems) {
    std::set<Elt> n(normal_elems.begin(), normal_elems.end());
    n.insert(g.identity);
    for (Elt x = 0; x < g.order; ++x)
        for (Elt e : normal_elems)
            if (!n.count(g.conj(x, e)))
                throw std::invalid_argument("quotient_by_normal: subgroup is not normal");
    // cosets by union-find style sweep
    std::vector<Elt> coset_of(g.order, -1);
    std::vector<Elt> reps;
    for (Elt a = 0; a < g.order; ++a) {
        if (coset_of[a] != -1) continue;
        Elt id = static_cast<Elt>(reps.size());
        reps.push_back(a);
        for (Elt e : n) coset_of[g.mul(a, e)] = id;
    }
    Quotient q;
    int m = static_cast<int>(reps.size());
    q.group.order = m;
    q.group.cayley.assign(m, std::vector<Elt>(m));
    q.group.inverse.assign(m, 0);
    q.group.identity = coset_of[g.identity];
    for (int i = 0; i < m; ++i) {
        q.group.inverse[i] = coset_of[g.inv(reps[i])];
        q.group.names.push_back("[" + g.name_of(reps[i]) + "]");
        for (int j = 0; j < m; ++j)
            q.group.cayley[i][j] = coset_of[g.mul(reps[i], reps[j])];
    }
    q.projection = coset_of;
    return q;
}

AutGroup automorphism_group(const FiniteGroup& g) {
    // brute force over permutations fixing the identity; fine for tiny groups
    if (g.order > 8)
        throw std::invalid_argument("automorphism_group: group too large for brute force");
    std::vector<Elt> perm(g.order);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Elt> rest;
    for (int a = 0; a < g.order; ++a)
        if (a != g.identity) rest.push_back(a);
    std::vector<std::vector<Elt>> found;
    std::sort(rest.begin(), rest.end());
    do {
        std::vector<Elt> p(g.order);
        p[g.identity] = g.identity;
        int k = 0;
        for (int a = 0; a < g.order; ++a)
            if (a != g.identity) p[a] = rest[k++];
        bool ok = true;
        for (int a = 0; a < g.order && ok; ++a)
            for (int b = 0; b < g.order; ++b)
                if (p[g.mul(a, b)] != g.mul(p[a], p[b])) { ok = false; break; }
        if (ok) found.push_back(p);
    } while (std::next_permutation(rest.begin(), rest.end()));

    AutGroup out;
    out.perms = found;
    int n = static_cast<int>(found.size());
    out.group.order = n;
    out.group.cayley.assign(n, std::vector<Elt>(n));
    out.group.inverse.assign(n, 0);
    auto index_of = [&](const std::vector<Elt>& p) {
        for (int i = 0; i < n; ++i)
            if (found[i] == p) return i;
        throw std::logic_error("automorphism composition escaped the set");
    };
    for (int i = 0; i < n; ++i) {
        std::vector<Elt> idp(g.order);
        std::iota(idp.begin(), idp.end(), 0);
        if (found[i] == idp) out.group.identity = i;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Elt> comp(g.order);
            for (int a = 0; a < g.order; ++a) comp[a] = found[i][found[j][a]];
            out.group.cayley[i][j] = index_of(comp);
            if (out.group.cayley[i][j] == out.group.identity) out.group.inverse[i] = j;
        }
    for (int i = 0; i < n; ++i) out.group.names.push_back("aut" + std::to_string(i));
    return out;
}

bool same_table(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order == b.order && a.identity == b.identity && a.cayley == b.cayley;
}

} // namespace xms
