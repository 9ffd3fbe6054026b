#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xms/xmod.hpp"

#include <random>

using namespace xms;

TEST_CASE("paper example families validate") {
    // normal subgroup inclusion {0,2} of Z/4
    auto z4 = cyclic_group(4);
    auto incl = inclusion_xmod(z4, {2});
    CHECK(incl.validate().empty());

    // trivial map A -> 1 for abelian A
    CHECK(trivial_to_one(cyclic_group(2)).validate().empty());
    CHECK(trivial_to_one(direct_product(cyclic_group(2), cyclic_group(2))).validate().empty());

    // inner automorphisms E -> Aut(E) for S3
    auto inner = inner_automorphism_xmod(symmetric_group_s3());
    CHECK(inner.validate().empty());

    // central epimorphism Z/4 -> Z/2 with trivial action
    auto z2 = cyclic_group(2);
    CHECK(central_epi_xmod(z4, z2, {0, 1, 0, 1}).validate().empty());

    // identity crossed module with conjugation
    CHECK(identity_xmod(symmetric_group_s3()).validate().empty());
    CHECK(one_to_group(cyclic_group(2)).validate().empty());
}

TEST_CASE("non-examples are rejected with named axioms") {
    // Z/2 -> Z/4 sending the generator to 1 is not even a homomorphism
    auto z2 = cyclic_group(2);
    auto z4 = cyclic_group(4);
    auto bad = hom_with_trivial_action(z2, z4, {0, 1});
    auto report = bad.validate();
    REQUIRE_FALSE(report.empty());
    CHECK(report[0].find("structure") != std::string::npos);

    // valid boundary but equivariance broken by a non-conjugation action:
    // S3 -> S3 identity boundary with trivial action fails Peiffer
    auto s3 = symmetric_group_s3();
    CrossedModule cm = identity_xmod(s3);
    cm.action = trivial_action(s3, s3).table;
    auto rep = cm.validate();
    REQUIRE_FALSE(rep.empty());
    bool named = false;
    for (const auto& m : rep)
        if (m.find("equivariance") != std::string::npos || m.find("Peiffer") != std::string::npos)
            named = true;
    CHECK(named);
}

TEST_CASE("subquotients of the paper examples") {
    auto z4 = cyclic_group(4);
    auto incl = inclusion_xmod(z4, {2}); // Z/2 into Z/4
    auto info = subquotients(incl);
    CHECK(info.kernel.group.order == 1);
    CHECK(info.image.group.order == 2);
    CHECK(info.cokernel.group.order == 2);
    CHECK(info.kernel_central_in_E);

    auto a = trivial_to_one(direct_product(cyclic_group(2), cyclic_group(2)));
    auto ai = subquotients(a);
    CHECK(ai.kernel.group.order == 4);
    CHECK(ai.cokernel.group.order == 1);

    auto idcm = identity_xmod(symmetric_group_s3());
    auto ii = subquotients(idcm);
    CHECK(ii.kernel.group.order == 1);
    CHECK(ii.cokernel.group.order == 1);
}

TEST_CASE("kernel is always central for valid crossed modules") {
    std::vector<CrossedModule> cms;
    cms.push_back(inclusion_xmod(cyclic_group(4), {2}));
    cms.push_back(central_epi_xmod(cyclic_group(4), cyclic_group(2), {0, 1, 0, 1}));
    cms.push_back(inner_automorphism_xmod(symmetric_group_s3()));
    for (const auto& cm : cms) {
        REQUIRE(cm.is_valid());
        CHECK(subquotients(cm).kernel_central_in_E);
    }
}

TEST_CASE("semidirect products") {
    // trivial boundary and action: Z/2 x| Z/2 = Z/2 x Z/2
    auto z2 = cyclic_group(2);
    auto cm = hom_with_trivial_action(z2, z2, {0, 0});
    REQUIRE(cm.is_valid());
    auto sp = semidirect_product(cm);
    CHECK(sp.group.order == 4);
    CHECK(sp.group.validate().empty());
    CHECK(sp.group.is_abelian());
    {
        GroupHom tohom{&sp.group, &cm.H, sp.to_h};
        CHECK(tohom.validate().empty());
        int ker = 0;
        for (int a = 0; a < sp.group.order; ++a)
            if (sp.to_h[a] == cm.H.identity) ++ker;
        CHECK(ker == 2);
    }

    // E trivial: product is H
    auto h = symmetric_group_s3();
    auto cm2 = one_to_group(h);
    auto sp2 = semidirect_product(cm2);
    CHECK(sp2.group.order == 6);
    CHECK(same_table(sp2.group, h)); // pair (h, 0) encodes as h

    // H trivial, E = Z/3
    auto cm3 = trivial_to_one(cyclic_group(3));
    auto sp3 = semidirect_product(cm3);
    CHECK(sp3.group.order == 3);
    int ker = 0;
    for (int a = 0; a < 3; ++a)
        if (sp3.to_h[a] == 0) ++ker;
    CHECK(ker == 3);

    // nonabelian: identity crossed module of S3 gives S3 x| S3, order 36
    auto cm4 = identity_xmod(symmetric_group_s3());
    auto sp4 = semidirect_product(cm4);
    CHECK(sp4.group.order == 36);
    CHECK(sp4.group.validate().empty());
    GroupHom tohom{&sp4.group, &cm4.H, sp4.to_h};
    CHECK(tohom.validate().empty());
}

TEST_CASE("morphism validation") {
    // phi = (id_E, bnd(e) h) from the inclusion E -> H x| E to the crossed module
    auto z4 = cyclic_group(4);
    auto cm = inclusion_xmod(z4, {2});
    auto sp = semidirect_product(cm);
    auto iota = inclusion_xmod(sp.group, sp.inj_e);
    // iota.E is the subgroup {(1,e)}; identify with cm.E via embed order
    XModMorphism m;
    m.source = &iota;
    m.target = &cm;
    m.psi.resize(iota.E.order);
    for (Elt i = 0; i < iota.E.order; ++i) {
        Elt amb = iota.boundary[i]; // element of the semidirect product
        m.psi[i] = amb % cm.E.order; // decode (h,e) -> e
    }
    m.phi = sp.to_h;
    CHECK(m.validate().empty());

    auto idm = identity_morphism(cm);
    CHECK(idm.validate().empty());

    // a non-equivariant bijection on E = Z/2 x Z/2 under a nontrivial action
    auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
    auto inner = inner_automorphism_xmod(symmetric_group_s3());
    (void)v4;
    XModMorphism broken = identity_morphism(inner);
    std::swap(broken.psi[1], broken.psi[2]);
    CHECK_FALSE(broken.validate().empty());
}

TEST_CASE("randomized single-entry mutations are rejected") {
    std::mt19937 rng(11);
    auto mutate_and_check = [&](const CrossedModule& cm) {
        int rejected = 0, attempts = 0;
        while (rejected < 20 && attempts < 500) {
            ++attempts;
            CrossedModule m = cm;
            int which = std::uniform_int_distribution<int>(0, 2)(rng);
            if (which == 0 && m.E.order > 1) {
                int e = std::uniform_int_distribution<int>(0, m.E.order - 1)(rng);
                int v = std::uniform_int_distribution<int>(0, m.H.order - 1)(rng);
                if (m.boundary[e] == v) continue;
                m.boundary[e] = v;
            } else if (which == 1) {
                int x = std::uniform_int_distribution<int>(0, m.H.order - 1)(rng);
                int e = std::uniform_int_distribution<int>(0, m.E.order - 1)(rng);
                int v = std::uniform_int_distribution<int>(0, m.E.order - 1)(rng);
                if (m.action[x][e] == v) continue;
                m.action[x][e] = v;
            } else {
                int a = std::uniform_int_distribution<int>(0, m.E.order - 1)(rng);
                int b = std::uniform_int_distribution<int>(0, m.E.order - 1)(rng);
                int v = std::uniform_int_distribution<int>(0, m.E.order - 1)(rng);
                if (m.E.cayley[a][b] == v) continue;
                m.E.cayley[a][b] = v;
            }
            if (!m.validate().empty()) ++rejected;
        }
        return rejected;
    };
    CHECK(mutate_and_check(inclusion_xmod(cyclic_group(4), {2})) >= 20);
    CHECK(mutate_and_check(inner_automorphism_xmod(symmetric_group_s3())) >= 20);
    CHECK(mutate_and_check(central_epi_xmod(cyclic_group(4), cyclic_group(2), {0, 1, 0, 1})) >= 20);
}
