#include "xms/json_io.hpp"

#include <fstream>

namespace xms {

const char* kSchemaVersion = "1.0";

Json scalar_to_json(const Scalar& s) {
    Json j;
    Scalar n = s.normalized();
    j["cyclotomic_order"] = n.order();
    Json coeffs = Json::array();
    for (const auto& c : n.coeffs()) coeffs.push_back(rational_to_string(c));
    j["coeffs"] = coeffs;
    auto [re, im] = n.approx();
    j["approx"] = Json::array({re, im});
    return j;
}

Scalar scalar_from_json(const Json& j) {
    if (j.is_string()) return Scalar(rational_from_string(j.get<std::string>()));
    if (j.is_number_integer()) return Scalar(j.get<long>(), 1);
    unsigned order = j.at("cyclotomic_order").get<unsigned>();
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs"))
        coeffs.push_back(c.is_string() ? rational_from_string(c.get<std::string>())
                                       : Rational(c.get<long>()));
    return Scalar::from_coeffs(order, std::move(coeffs));
}

Json group_to_json(const FiniteGroup& g) {
    Json j;
    j["order"] = g.order;
    j["cayley"] = g.cayley;
    if (!g.names.empty()) j["names"] = g.names;
    return j;
}

FiniteGroup group_from_json(const Json& j) {
    FiniteGroup g;
    g.order = j.at("order").get<int>();
    g.cayley = j.at("cayley").get<std::vector<std::vector<Elt>>>();
    if (j.contains("names")) g.names = j.at("names").get<std::vector<std::string>>();
    // derive identity and inverses from the table
    if (static_cast<int>(g.cayley.size()) != g.order)
        throw std::invalid_argument("group: cayley table does not match the order");
    g.identity = -1;
    for (int e = 0; e < g.order; ++e) {
        bool ok = true;
        for (int a = 0; a < g.order && ok; ++a) {
            if (static_cast<int>(g.cayley[a].size()) != g.order)
                throw std::invalid_argument("group: ragged cayley table");
            if (g.cayley[e][a] != a || g.cayley[a][e] != a) ok = false;
        }
        if (ok) {
            g.identity = e;
            break;
        }
    }
    if (g.identity < 0) throw std::invalid_argument("group: no two-sided identity");
    g.inverse.assign(g.order, -1);
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if (g.cayley[a][b] == g.identity && g.cayley[b][a] == g.identity) g.inverse[a] = b;
    for (Elt i : g.inverse)
        if (i < 0) throw std::invalid_argument("group: missing inverses");
    auto rep = g.validate();
    if (!rep.empty()) throw std::invalid_argument("group: " + rep.front());
    return g;
}

Json xmod_to_json(const CrossedModule& cm) {
    Json j;
    j["E"] = group_to_json(cm.E);
    j["H"] = group_to_json(cm.H);
    j["boundary"] = cm.boundary;
    j["action"] = cm.action;
    return j;
}

CrossedModule xmod_from_json(const Json& j) {
    CrossedModule cm;
    cm.E = group_from_json(j.at("E"));
    cm.H = group_from_json(j.at("H"));
    cm.boundary = j.at("boundary").get<std::vector<Elt>>();
    cm.action = j.at("action").get<std::vector<std::vector<Elt>>>();
    return cm;
}

Json cocycle_to_json(const CrossedCocycle3& w) {
    Json j;
    j["cyclotomic_order"] = w.cyclotomic_order;
    Json entries = Json::array();
    const auto& H = w.cm.H;
    const auto& E = w.cm.E;
    for (Elt x = 0; x < H.order; ++x)
        for (Elt y = 0; y < H.order; ++y)
            for (Elt z = 0; z < H.order; ++z)
                for (Elt a = 0; a < E.order; ++a)
                    for (Elt b = 0; b < E.order; ++b)
                        for (Elt c = 0; c < E.order; ++c) {
                            const Scalar& v = w(x, y, z, a, b, c);
                            if (v.is_one()) continue;
                            Json e;
                            e["h"] = Json::array({x, y, z});
                            e["e"] = Json::array({a, b, c});
                            e["value"] = scalar_to_json(v);
                            entries.push_back(e);
                        }
    j["entries"] = entries;
    j["default"] = scalar_to_json(Scalar::one());
    return j;
}

CrossedCocycle3 cocycle_from_json(const Json& j, const CrossedModule& cm) {
    unsigned order = j.value("cyclotomic_order", 1u);
    CrossedCocycle3 w = constant_crossed_cocycle(cm, order);
    Scalar dflt = j.contains("default") ? scalar_from_json(j.at("default")) : Scalar::one();
    for (auto& v : w.table) v = dflt;
    for (const auto& e : j.at("entries")) {
        auto h = e.at("h").get<std::vector<Elt>>();
        auto ee = e.at("e").get<std::vector<Elt>>();
        if (h.size() != 3 || ee.size() != 3)
            throw std::invalid_argument("cocycle: entry tuples must have length 3");
        w.at(h[0], h[1], h[2], ee[0], ee[1], ee[2]) = scalar_from_json(e.at("value"));
    }
    return w;
}

Json group_cocycle_to_json(const GroupCocycle3& w) {
    Json j;
    j["cyclotomic_order"] = w.cyclotomic_order;
    Json entries = Json::array();
    for (Elt x = 0; x < w.h.order; ++x)
        for (Elt y = 0; y < w.h.order; ++y)
            for (Elt z = 0; z < w.h.order; ++z) {
                const Scalar& v = w(x, y, z);
                if (v.is_one()) continue;
                Json e;
                e["h"] = Json::array({x, y, z});
                e["value"] = scalar_to_json(v);
                entries.push_back(e);
            }
    j["entries"] = entries;
    j["default"] = scalar_to_json(Scalar::one());
    return j;
}

GroupCocycle3 group_cocycle_from_json(const Json& j, const FiniteGroup& h) {
    GroupCocycle3 w;
    w.h = h;
    w.cyclotomic_order = j.value("cyclotomic_order", 1u);
    size_t n = static_cast<size_t>(h.order);
    Scalar dflt = j.contains("default") ? scalar_from_json(j.at("default")) : Scalar::one();
    w.table.assign(n * n * n, dflt);
    for (const auto& e : j.at("entries")) {
        auto hh = e.at("h").get<std::vector<Elt>>();
        if (hh.size() != 3) throw std::invalid_argument("group cocycle: tuples must have length 3");
        w.at(hh[0], hh[1], hh[2]) = scalar_from_json(e.at("value"));
    }
    return w;
}

Json triangulation_to_json(const Triangulation& t) {
    Json j;
    j["tets"] = t.n_tets;
    Json gluings = Json::array();
    for (int tet = 0; tet < t.n_tets; ++tet)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.glue[tet][f];
            if (std::make_pair(tet, f) > std::make_pair(g.tet, g.face)) continue;
            Json e;
            e["tet"] = tet;
            e["face"] = f;
            e["to_tet"] = g.tet;
            e["to_face"] = g.face;
            e["perm"] = g.perm;
            gluings.push_back(e);
        }
    j["gluings"] = gluings;
    return j;
}

Triangulation triangulation_from_json(const Json& j) {
    Triangulation t;
    t.n_tets = j.at("tets").get<int>();
    t.glue.assign(t.n_tets, {});
    for (auto& row : t.glue)
        for (auto& g : row) g.tet = -1;
    for (const auto& e : j.at("gluings")) {
        int tet = e.at("tet").get<int>();
        int f = e.at("face").get<int>();
        FaceGluing g;
        g.tet = e.at("to_tet").get<int>();
        g.face = e.at("to_face").get<int>();
        auto perm = e.at("perm").get<std::vector<int>>();
        if (perm.size() != 4) throw std::invalid_argument("triangulation: perm must have length 4");
        std::copy(perm.begin(), perm.end(), g.perm.begin());
        if (tet < 0 || tet >= t.n_tets || g.tet < 0 || g.tet >= t.n_tets)
            throw std::invalid_argument("triangulation: tet index out of range");
        t.glue[tet][f] = g;
        FaceGluing back;
        back.tet = tet;
        back.face = f;
        for (int c = 0; c < 4; ++c) back.perm[g.perm[c]] = c;
        t.glue[g.tet][g.face] = back;
    }
    return t;
}

Json labeling_to_json(const XiLabeling& l) {
    Json j;
    j["alpha"] = l.alpha;
    j["beta"] = l.beta0;
    return j;
}

XiLabeling labeling_from_json(const Json& j) {
    XiLabeling l;
    l.alpha = j.at("alpha").get<std::vector<Elt>>();
    l.beta0 = j.at("beta").get<std::vector<Elt>>();
    return l;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace xms
