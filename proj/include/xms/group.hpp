// Finite groups as explicit Cayley tables, with homomorphisms and actions.
// Elements are indices 0..order-1; index 0 need not be the identity (the
// identity is stored explicitly), but every constructor here puts it at 0.
#ifndef XMS_GROUP_HPP
#define XMS_GROUP_HPP

#include <optional>
#include <string>
#include <vector>

namespace xms {

using Elt = int;

struct FiniteGroup {
    int order = 0;
    std::vector<std::vector<Elt>> cayley; // cayley[a][b] = a*b
    Elt identity = 0;
    std::vector<Elt> inverse;
    std::vector<std::string> names;       // optional, size 0 or order

    Elt mul(Elt a, Elt b) const { return cayley[a][b]; }
    Elt inv(Elt a) const { return inverse[a]; }
    Elt conj(Elt a, Elt b) const { return mul(mul(a, b), inv(a)); } // a b a^-1
    Elt pow(Elt a, long e) const;
    std::string name_of(Elt a) const;

    // Structural + axiom check; returns list of violations (empty iff valid).
    std::vector<std::string> validate() const;
    bool is_abelian() const;
};

// Constructors used across tests and the CLI.
FiniteGroup trivial_group();
FiniteGroup cyclic_group(int n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup symmetric_group_s3();

struct GroupHom {
    const FiniteGroup* source = nullptr;
    const FiniteGroup* target = nullptr;
    std::vector<Elt> image; // image[a] in target

    Elt operator()(Elt a) const { return image[a]; }
    std::vector<std::string> validate() const;
    bool is_injective() const;
    bool is_surjective() const;
    std::vector<Elt> kernel_elements() const;
    std::vector<Elt> image_elements() const; // sorted, unique
};

GroupHom identity_hom(const FiniteGroup& g);
GroupHom trivial_hom(const FiniteGroup& src, const FiniteGroup& tgt);

struct GroupAction {
    const FiniteGroup* actor = nullptr; // H
    const FiniteGroup* space = nullptr; // E
    std::vector<std::vector<Elt>> table; // table[x][e] = x.e

    Elt act(Elt x, Elt e) const { return table[x][e]; }
    std::vector<std::string> validate() const; // automorphisms + left action
};

GroupAction trivial_action(const FiniteGroup& actor, const FiniteGroup& space);
GroupAction conjugation_action(const FiniteGroup& g); // g on itself
// Conjugation of H on an embedded subgroup: requires image closed under conj.
std::optional<GroupAction> conjugation_action_via(const GroupHom& incl);

// Subgroup generated by the given elements, as a new FiniteGroup plus the
// inclusion map (new index -> ambient index).
struct Subgroup {
    FiniteGroup group;
    std::vector<Elt> embed; // subgroup index -> ambient index
};
Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<Elt> elems);

// Quotient of g by a normal subgroup (given by its ambient element set).
// Returns the quotient group and the projection hom (filled against `g`).
struct Quotient {
    FiniteGroup group;
    std::vector<Elt> projection; // ambient index -> quotient index
};
Quotient quotient_by_normal(const FiniteGroup& g, const std::vector<Elt>& normal_elems);

// Automorphism group of a small group, elements = permutations, as a
// FiniteGroup plus the permutation table (aut index -> permutation of g).
struct AutGroup {
    FiniteGroup group;
    std::vector<std::vector<Elt>> perms;
};
AutGroup automorphism_group(const FiniteGroup& g);

bool same_table(const FiniteGroup& a, const FiniteGroup& b);

} // namespace xms

#endif
