// Pointed fusion categories graded by a crossed module: every Hom space
// between simples has rank <= 1, so all categorical data is a finite set of
// index tables plus exact scalars. Covers the linearized 2-group category,
// graded vector spaces for a subgroup inclusion, cocycle twists, and
// push-forwards along crossed module morphisms.
#ifndef XMS_CATEGORY_HPP
#define XMS_CATEGORY_HPP

#include "xms/cocycle.hpp"
#include "xms/xmod.hpp"

#include <memory>
#include <optional>

namespace xms {

struct SignedSimple {
    int simple = 0;
    bool dual = false;
    bool operator==(const SignedSimple&) const = default;
};
using Word = std::vector<SignedSimple>;

class PointedXiFusion {
public:
    CrossedModule cm;                       // grading crossed module
    int n = 0;                              // number of simples
    std::vector<Elt> deg;                   // simple -> cm.H
    std::vector<std::vector<int>> e_act;    // cm.E x simple -> simple
    std::vector<std::vector<int>> fuse_tab; // simple x simple -> simple
    std::vector<int> dual_tab;
    int unit = 0;
    std::vector<Scalar> dim_tab;
    std::optional<CrossedCocycle3> twist;   // absent on push-forwards

    struct Push {
        std::shared_ptr<const PointedXiFusion> base; // untwisted, over src
        CrossedModule src;
        std::vector<Elt> psi, phi;      // src -> cm
        std::vector<int> embed;         // this simple -> base simple (J in I)
        std::vector<int> project;       // base simple -> this simple
        std::vector<Elt> ker_psi;       // elements of Ker(psi)
        Scalar d_phi;                   // |Ker phi| / |Ker psi|
    };
    std::shared_ptr<const Push> push;

    bool is_pushforward() const { return static_cast<bool>(push); }
    bool is_twisted() const { return twist.has_value(); }
    unsigned cyclotomic_order() const { return twist ? twist->cyclotomic_order : 1; }

    int fuse(int i, int j) const { return fuse_tab[i][j]; }
    int fold(const SignedSimple& s) const { return s.dual ? dual_tab[s.simple] : s.simple; }
    int fuse_word(const Word& w) const;
    Elt deg_of(const SignedSimple& s) const {
        return s.dual ? cm.H.inv(deg[s.simple]) : deg[s.simple];
    }
    Elt deg_word(const Word& w) const;

    // rank of Hom^e(i, j) between simples; 0 or 1
    int hom_rank(int i, Elt e, int j) const;
    // rank of Hom^e(unit, word); 0 or 1 for every category here
    int mult_index(const Word& word, Elt e) const;
    // sum over the neutral fiber; verifies the fiber sums agree for all h
    Scalar dim_neutral() const;

    // For push-forwards: the unique base-degree lift of e with nonzero
    // Hom^{lift}(unit, word-in-base-simples); nullopt when the rank is 0.
    // For base categories returns e itself when the rank is 1.
    std::optional<Elt> lift_degree(Elt e, const Word& base_word) const;
    Word to_base_word(const Word& w) const; // reindex simples through embed

    // twisting factor lookups; all 1 when untwisted
    Scalar tw(Elt x, Elt y, Elt z, Elt a, Elt b, Elt c) const;
    Scalar tw_group(Elt x, Elt y, Elt z) const;

    std::vector<std::string> validate() const; // structural + category axioms
    std::vector<int> simples_of_degree(Elt h) const;
};

// kG_chi: simples = H, degree = id, e.x = bnd(e) x, fusion = product in H.
PointedXiFusion linearized_2group(const CrossedModule& cm);
// (E,H)-vect for an injective boundary; rejects non-injective chi.
PointedXiFusion graded_vect(const CrossedModule& cm);
// Twist by a cocycle that must pass check_cocycle on the same crossed module.
PointedXiFusion twist_category(const PointedXiFusion& c, const CrossedCocycle3& w);
// Push-forward along a morphism with psi, phi surjective and
// Ker(psi) n Ker(bnd) = 1; the input category must be untwisted and basic.
PointedXiFusion pushforward_category(const XModMorphism& m, const PointedXiFusion& c);

} // namespace xms

#endif
