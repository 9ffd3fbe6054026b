// Crossed modules: a boundary map E -> H with a left H-action on E,
// equivariant for conjugation and satisfying the Peiffer identity.
#ifndef XMS_XMOD_HPP
#define XMS_XMOD_HPP

#include "xms/group.hpp"

namespace xms {

struct CrossedModule {
    FiniteGroup E;
    FiniteGroup H;
    std::vector<Elt> boundary;            // E index -> H index
    std::vector<std::vector<Elt>> action; // action[x][e], x in H, e in E

    Elt bnd(Elt e) const { return boundary[e]; }
    Elt act(Elt x, Elt e) const { return action[x][e]; }

    // Violations of well-formedness and of the two crossed-module axioms.
    // Structural problems are prefixed "structure:", axiom failures name the
    // axiom and a witness tuple.
    std::vector<std::string> validate() const;
    bool is_valid() const { return validate().empty(); }
};

// Constructions.
CrossedModule inclusion_xmod(const FiniteGroup& ambient, const std::vector<Elt>& sub_elems);
CrossedModule trivial_to_one(const FiniteGroup& abelian); // A -> 1
CrossedModule trivial_boundary_xmod(const FiniteGroup& module_grp, const FiniteGroup& h,
                                    const GroupAction& act); // E -> 1 c H with action
CrossedModule one_to_group(const FiniteGroup& h);            // 1 -> H
CrossedModule central_epi_xmod(const FiniteGroup& e, const FiniteGroup& h,
                               const std::vector<Elt>& epi); // central kernel, trivial action
CrossedModule inner_automorphism_xmod(const FiniteGroup& e); // E -> Aut(E)
CrossedModule identity_xmod(const FiniteGroup& g);           // G -> G, conjugation
// A -> B with arbitrary hom image and trivial action (valid iff checks pass).
CrossedModule hom_with_trivial_action(const FiniteGroup& e, const FiniteGroup& h,
                                      std::vector<Elt> boundary);

struct KernelInfo {
    Subgroup kernel;      // Ker(boundary) inside E
    Subgroup image;       // Im(boundary) inside H
    Quotient cokernel;    // H / Im(boundary)
    bool kernel_central_in_E = false;
};
// Requires a valid crossed module.
KernelInfo subquotients(const CrossedModule& cm);

struct SemidirectProduct {
    FiniteGroup group;              // H x| E on pairs (h, e)
    std::vector<Elt> inj_h;         // H -> product
    std::vector<Elt> inj_e;         // E -> product
    std::vector<Elt> to_h;          // product -> H, (h,e) |-> bnd(e) h
    int encode(const CrossedModule& cm, Elt h, Elt e) const;
};
SemidirectProduct semidirect_product(const CrossedModule& cm);

struct XModMorphism {
    const CrossedModule* source = nullptr;
    const CrossedModule* target = nullptr;
    std::vector<Elt> psi; // E -> E'
    std::vector<Elt> phi; // H -> H'

    std::vector<std::string> validate() const;
    bool is_valid() const { return validate().empty(); }
};

XModMorphism identity_morphism(const CrossedModule& cm);

} // namespace xms

#endif
