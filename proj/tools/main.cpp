// Command line front end: state-sum invariants of closed 3-manifolds graded
// by finite crossed modules, plus the supporting validators and enumerators.
#include "xms/json_io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace xms;

namespace {

struct Inputs {
    std::string xmod_path, cocycle_path, category, skeleton, morphism_path;
    std::string labeling_file, builtin, out_path, file_path, format = "json";
    int labeling_index = -1, labeling_orbit = -1;
    bool pointed = false, trace = false;
    int jobs = 1;
    unsigned cyclotomic_order = 1;
};

// held by the CLI run so that morphism sources outlive the categories
struct Loaded {
    std::optional<CrossedModule> xmod;
    std::optional<CrossedModule> morphism_source;
    std::optional<CrossedModule> morphism_target;
    std::optional<XModMorphism> morphism;
    std::optional<PointedXiFusion> category;
};

Triangulation resolve_triangulation(const std::string& name) {
    try {
        return builtin_triangulation(name);
    } catch (const std::invalid_argument&) {
        return triangulation_from_json(load_json_file(name));
    }
}

CombSkeleton resolve_skeleton(const std::string& name) {
    if (name.rfind("lens:", 0) == 0) {
        auto rest = name.substr(5);
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("expected lens:p,q");
        return lens_skeleton(std::stoi(rest.substr(0, comma)), std::stoi(rest.substr(comma + 1)));
    }
    if (name == "s1xs2-skel") return s1xs2_skeleton();
    return skeleton_from_triangulation(resolve_triangulation(name));
}

void load_morphism(const Inputs& in, Loaded& state) {
    Json j = load_json_file(in.morphism_path);
    state.morphism_source = xmod_from_json(j.at("source"));
    state.morphism_target = xmod_from_json(j.at("target"));
    XModMorphism m;
    m.source = &*state.morphism_source;
    m.target = &*state.morphism_target;
    m.psi = j.at("psi").get<std::vector<Elt>>();
    m.phi = j.at("phi").get<std::vector<Elt>>();
    auto rep = m.validate();
    if (!rep.empty()) throw std::invalid_argument("morphism: " + rep.front());
    state.morphism = m;
}

const PointedXiFusion& resolve_category(const Inputs& in, Loaded& state) {
    if (state.category) return *state.category;
    auto base_from = [&](const CrossedModule& cm, const std::string& ctor) {
        if (ctor == "kG" || ctor.empty()) return linearized_2group(cm);
        if (ctor == "graded-vect") return graded_vect(cm);
        throw std::invalid_argument("unknown category constructor: " + ctor);
    };
    if (in.category == "pushforward") {
        if (in.morphism_path.empty())
            throw std::invalid_argument("pushforward category needs --morphism");
        load_morphism(in, state);
        PointedXiFusion base = base_from(*state.morphism_source, "kG");
        if (!in.cocycle_path.empty())
            throw std::invalid_argument("twisted push-forwards are unsupported");
        state.category = pushforward_category(*state.morphism, base);
        return *state.category;
    }
    if (!state.xmod)
        throw std::invalid_argument("category needs --xmod");
    PointedXiFusion c = base_from(*state.xmod, in.category);
    if (!in.cocycle_path.empty()) {
        auto w = cocycle_from_json(load_json_file(in.cocycle_path), *state.xmod);
        c = twist_category(c, w);
    }
    state.category = std::move(c);
    return *state.category;
}

void emit(const Inputs& in, Json doc) {
    doc["schema"] = kSchemaVersion;
    std::string text;
    if (in.format == "csv") {
        std::string csv = "# schema " + std::string(kSchemaVersion) + "\n";
        if (doc.contains("rows")) {
            for (const auto& row : doc.at("rows")) {
                bool first = true;
                for (const auto& cell : row) {
                    if (!first) csv += ",";
                    csv += cell.is_string() ? cell.get<std::string>() : cell.dump();
                    first = false;
                }
                csv += "\n";
            }
        }
        text = csv;
    } else {
        // put the schema first for readability
        Json ordered;
        ordered["schema"] = kSchemaVersion;
        for (auto& [k, v] : doc.items())
            if (k != "schema") ordered[k] = v;
        text = ordered.dump(2) + "\n";
    }
    if (in.out_path.empty()) std::cout << text;
    else {
        std::ofstream out(in.out_path);
        out << text;
    }
}

Json scalar_doc(const Scalar& s) { return scalar_to_json(s); }

int run_command(const std::string& cmd, Inputs in) {
    // --file is shorthand for the subject of the validators and of homology
    if (!in.file_path.empty()) {
        if (cmd == "validate-xmod" && in.xmod_path.empty()) in.xmod_path = in.file_path;
        else if (cmd == "validate-cocycle" && in.cocycle_path.empty())
            in.cocycle_path = in.file_path;
        else if (cmd == "homology" && in.builtin.empty() && in.skeleton.empty())
            in.skeleton = in.file_path;
    }
    Loaded state;
    if (!in.xmod_path.empty()) state.xmod = xmod_from_json(load_json_file(in.xmod_path));

    if (cmd == "validate-xmod") {
        auto rep = state.xmod->validate();
        Json doc;
        doc["command"] = "validate-xmod";
        doc["valid"] = rep.empty();
        doc["violations"] = rep;
        emit(in, doc);
        return rep.empty() ? 0 : 1;
    }
    if (cmd == "validate-cocycle") {
        Json wj = load_json_file(in.cocycle_path);
        if (in.cyclotomic_order > 1 && !wj.contains("cyclotomic_order"))
            wj["cyclotomic_order"] = in.cyclotomic_order;
        auto w = cocycle_from_json(wj, *state.xmod);
        auto rep = check_cocycle(w);
        Json doc;
        doc["command"] = "validate-cocycle";
        doc["valid"] = rep.empty();
        doc["violations"] = rep;
        emit(in, doc);
        return rep.empty() ? 0 : 1;
    }
    if (cmd == "homology") {
        auto t = resolve_triangulation(in.builtin.empty() ? in.skeleton : in.builtin);
        auto h = homology_h1(t);
        Json doc;
        doc["command"] = "homology";
        doc["torsion"] = h.torsion;
        doc["rank"] = h.rank;
        doc["pretty"] = h.to_string();
        emit(in, doc);
        return 0;
    }
    if (cmd == "labelings" || cmd == "orbits") {
        auto P = resolve_skeleton(in.skeleton);
        auto ls = enumerate_labelings(P, *state.xmod);
        Json doc;
        doc["command"] = cmd;
        doc["count"] = ls.size();
        Json arr = Json::array();
        for (const auto& l : ls) arr.push_back(labeling_to_json(l));
        doc["labelings"] = arr;
        if (cmd == "orbits") {
            if (in.pointed) {
                auto po = pointed_orbits_and_stabilizers(P, *state.xmod, ls);
                Json orbits = Json::array();
                for (const auto& o : po) {
                    Json oj;
                    oj["representative"] = o.representative;
                    oj["members"] = o.members;
                    oj["stabilizer_order"] = rational_to_string(o.stabilizer_order);
                    orbits.push_back(oj);
                }
                doc["pointed_orbits"] = orbits;
            } else {
                auto dec = gauge_orbits(P, *state.xmod, ls);
                doc["orbit_of"] = dec.orbit_of;
                doc["representatives"] = dec.representative;
                doc["orbit_count"] = dec.count();
            }
        }
        emit(in, doc);
        return 0;
    }
    if (cmd == "invariant") {
        auto P = resolve_skeleton(in.skeleton);
        const PointedXiFusion& c = resolve_category(in, state);
        auto ls = enumerate_labelings(P, c.cm);
        std::vector<int> targets;
        if (!in.labeling_file.empty()) {
            auto l = labeling_from_json(load_json_file(in.labeling_file));
            auto it = std::find(ls.begin(), ls.end(), l);
            if (it == ls.end()) throw std::invalid_argument("labeling is not valid for this skeleton");
            targets.push_back(static_cast<int>(it - ls.begin()));
        } else if (in.labeling_index >= 0) {
            targets.push_back(in.labeling_index);
        } else if (in.labeling_orbit >= 0) {
            auto dec = gauge_orbits(P, c.cm, ls);
            if (in.labeling_orbit >= dec.count())
                throw std::invalid_argument("labeling orbit index out of range");
            targets.push_back(dec.representative[in.labeling_orbit]);
        } else {
            for (size_t i = 0; i < ls.size(); ++i) targets.push_back(static_cast<int>(i));
        }
        StateSumOptions opts;
        opts.trace = in.trace;
        opts.jobs = in.jobs;
        Json rows = Json::array();
        Json results = Json::array();
        for (int i : targets) {
            auto r = state_sum(P, ls[i], c, opts);
            Json one;
            one["labeling"] = labeling_to_json(ls[i]);
            one["value"] = scalar_doc(r.normalized);
            one["unnormalized"] = scalar_doc(r.unnormalized);
            one["balls"] = r.balls;
            one["value_pretty"] = r.normalized.to_string();
            if (in.trace) {
                Json terms = Json::array();
                for (const auto& term : r.trace) {
                    Json tj;
                    tj["coloring"] = term.coloring;
                    tj["dim"] = scalar_doc(term.dim_factor);
                    tj["value"] = scalar_doc(term.value);
                    terms.push_back(tj);
                }
                one["terms"] = terms;
            }
            results.push_back(one);
            rows.push_back(Json::array({i, r.normalized.to_string()}));
        }
        Json doc;
        doc["command"] = "invariant";
        doc["results"] = results;
        doc["rows"] = rows;
        emit(in, doc);
        return 0;
    }
    if (cmd == "lens") {
        // --skeleton lens:p,q selects the space; the labeling gives (h, e)
        if (in.skeleton.rfind("lens:", 0) != 0)
            throw std::invalid_argument("lens command needs --skeleton lens:p,q");
        auto rest = in.skeleton.substr(5);
        auto comma = rest.find(',');
        int p = std::stoi(rest.substr(0, comma));
        int q = std::stoi(rest.substr(comma + 1));
        const PointedXiFusion& c = resolve_category(in, state);
        Json results = Json::array();
        Json rows = Json::array();
        auto P = lens_skeleton(p, q);
        auto ls = enumerate_labelings(P, c.cm);
        std::vector<int> targets;
        if (in.labeling_index >= 0) targets.push_back(in.labeling_index);
        else
            for (size_t i = 0; i < ls.size(); ++i) targets.push_back(static_cast<int>(i));
        for (int i : targets) {
            Scalar v = lens_invariant(p, q, ls[i].alpha[0], ls[i].beta0[0], c);
            Json one;
            one["labeling"] = labeling_to_json(ls[i]);
            one["value"] = scalar_doc(v);
            one["value_pretty"] = v.to_string();
            results.push_back(one);
            rows.push_back(Json::array({i, v.to_string()}));
        }
        Json doc;
        doc["command"] = "lens";
        doc["results"] = results;
        doc["rows"] = rows;
        emit(in, doc);
        return 0;
    }
    if (cmd == "pushforward-check") {
        if (in.morphism_path.empty()) throw std::invalid_argument("needs --morphism");
        load_morphism(in, state);
        auto P = resolve_skeleton(in.skeleton);
        PointedXiFusion base = linearized_2group(*state.morphism_source);
        auto tls = enumerate_labelings(P, *state.morphism_target);
        std::vector<int> targets;
        if (in.labeling_index >= 0) targets.push_back(in.labeling_index);
        else if (in.labeling_orbit >= 0) {
            auto po = pointed_orbits_and_stabilizers(P, *state.morphism_target, tls);
            if (in.labeling_orbit >= static_cast<int>(po.size()))
                throw std::invalid_argument("labeling orbit index out of range");
            targets.push_back(po[in.labeling_orbit].representative);
        } else
            for (size_t i = 0; i < tls.size(); ++i) targets.push_back(static_cast<int>(i));
        Json results = Json::array();
        bool all_equal = true;
        for (int i : targets) {
            auto chk = pushforward_check(P, *state.morphism, base, tls[i]);
            Json one;
            one["labeling"] = labeling_to_json(tls[i]);
            one["lhs"] = scalar_doc(chk.lhs);
            one["rhs"] = scalar_doc(chk.rhs);
            one["equal"] = chk.equal;
            one["lifted_classes"] = chk.lifted_classes;
            results.push_back(one);
            all_equal = all_equal && chk.equal;
        }
        Json doc;
        doc["command"] = "pushforward-check";
        doc["results"] = results;
        doc["all_equal"] = all_equal;
        emit(in, doc);
        return all_equal ? 0 : 1;
    }
    if (cmd == "dw-check") {
        auto t = resolve_triangulation(in.builtin.empty() ? in.skeleton : in.builtin);
        GroupCocycle3 wt;
        if (!state.xmod) throw std::invalid_argument("dw-check needs --xmod (with trivial E)");
        if (state.xmod->E.order != 1)
            throw std::invalid_argument("dw-check requires E = 1");
        if (!in.cocycle_path.empty())
            wt = group_cocycle_from_json(load_json_file(in.cocycle_path), state.xmod->H);
        else
            wt = constant_group_cocycle(state.xmod->H);
        auto dw = dw_oracle(t, wt);
        // state sum side
        auto P = skeleton_from_triangulation(t);
        PointedXiFusion cat = linearized_2group(*state.xmod);
        if (!wt.validate().empty()) throw std::invalid_argument("group cocycle invalid");
        auto infl = inflate_group_cocycle(*state.xmod, wt);
        if (!infl.valid()) throw std::invalid_argument("inflation rejected: " + infl.report.front());
        if (!infl.cocycle.is_constant_one()) cat = twist_category(cat, infl.cocycle);
        auto ls = enumerate_labelings(P, cat.cm);
        auto orbits = gauge_orbits(P, cat.cm, ls);
        Json doc;
        doc["command"] = "dw-check";
        Json oracle = Json::array();
        for (const auto& cls : dw) {
            Json o;
            o["trivial_class"] = cls.trivial_class;
            o["value"] = scalar_doc(cls.value);
            oracle.push_back(o);
        }
        doc["oracle_classes"] = oracle;
        Json ssums = Json::array();
        for (int rep : orbits.representative) {
            bool triv = true;
            for (Elt x : ls[rep].alpha)
                if (x != cat.cm.H.identity) triv = false;
            for (Elt b : ls[rep].beta0)
                if (b != cat.cm.E.identity) triv = false;
            Json o;
            o["trivial_class"] = triv;
            o["value"] = scalar_doc(state_sum(P, ls[rep], cat).normalized);
            ssums.push_back(o);
        }
        doc["state_sum_classes"] = ssums;
        emit(in, doc);
        return 0;
    }
    throw std::invalid_argument("unknown command: " + cmd);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"state-sum invariants of 3-manifolds graded by finite crossed modules"};
    app.require_subcommand(1);

    Inputs in;
    std::vector<CLI::App*> subs;
    for (const char* name : {"validate-xmod", "validate-cocycle", "labelings", "orbits",
                             "invariant", "lens", "pushforward-check", "dw-check", "homology"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--xmod", in.xmod_path, "crossed module JSON file");
        sub->add_option("--cocycle", in.cocycle_path, "cocycle JSON file");
        sub->add_option("--category", in.category, "kG | graded-vect | pushforward");
        sub->add_option("--skeleton", in.skeleton,
                        "builtin (s3, rp3, l31, l41, l52, s1xs2, lens:p,q, s1xs2-skel) or a "
                        "triangulation JSON file");
        sub->add_option("--builtin", in.builtin, "builtin triangulation name");
        sub->add_option("--morphism", in.morphism_path, "crossed module morphism JSON file");
        sub->add_option("--labeling", in.labeling_index, "labeling index");
        sub->add_option("--labeling-file", in.labeling_file, "labeling JSON file");
        sub->add_option("--labeling-orbit", in.labeling_orbit, "orbit index");
        sub->add_flag("--pointed", in.pointed, "pointed orbits (single-ball skeletons)");
        sub->add_flag("--trace", in.trace, "include per-coloring terms");
        sub->add_option("--file", in.file_path, "subject file (validators, homology)");
        sub->add_option("--out", in.out_path, "output path (default stdout)");
        sub->add_option("--format", in.format, "json | csv");
        sub->add_option("--jobs", in.jobs, "parallelism degree");
        sub->add_option("--cyclotomic-order", in.cyclotomic_order, "ambient cyclotomic order");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto* sub : subs)
            if (sub->parsed()) return run_command(sub->get_name(), in);
        std::cerr << "no command given\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
