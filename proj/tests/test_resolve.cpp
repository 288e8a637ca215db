#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgq/instances.hpp"
#include "dgq/pretr.hpp"
#include "dgq/resolve.hpp"

using namespace dgq;

namespace {
const Field Q = Field::rationals();
const Field F5 = Field::prime(5);

struct I2World {
    TableCat a0;
    TwistedTable tt;
    TableCat aop;
    std::vector<int> b;   // index of Cone f
    I2World()
        : a0(cat_a0(Q)), tt([&] {
              std::vector<TwistedComplex> objs;
              objs.push_back(singleton(a0, 0));
              objs.push_back(singleton(a0, 1));
              TwistedComplex cf(&a0);
              cf.add_summand(1, 0);
              cf.add_summand(0, 1);
              cf.set_q(0, 1, a0.basis_mor(0, 1, {0, 0}));
              objs.push_back(cf);
              return table_from_twisted(a0, objs);
          }()),
          aop(opposite(tt.cat)), b{2} {}
};
}  // namespace

TEST_CASE("resolving a module that is already free stops at one stage") {
    TableCat e = cat_endk(Q);
    TableCat eop = opposite(e);
    Module h = yoneda_right(e, eop, 0);   // k in degree 0, free
    Resolution r = semi_free_resolve(e, h, {0}, -2, 2, 10);
    CHECK(r.complete);
    CHECK(r.p.n_gens() == 1);
    CHECK(r.p.validate_certificate().ok());
    CHECK(validate_counit(eop, r).ok());
    for (auto& [cell, ok] : r.cells) CHECK(ok);
}

TEST_CASE("resolving an acyclic module yields the zero resolution") {
    TableCat e = cat_endk(Q);
    TableCat eop = opposite(e);
    Module m(&eop);
    // value: contractible couple k -> k
    m.value(0).add_basis(0, "a");
    m.value(0).add_basis(1, "b");
    m.value(0).add_d_entry(0, 0, 0, Scalar(Q, 1));
    // unit action = identity
    SparseMatrix id1(1, 1, Q);
    id1.set(0, 0, Scalar(Q, 1));
    m.set_act(0, 0, {0, 0}, 0, id1);
    m.set_act(0, 0, {0, 0}, 1, id1);
    REQUIRE(m.validate().ok());
    Resolution r = semi_free_resolve(e, m, {0}, -2, 2, 10);
    CHECK(r.complete);
    CHECK(r.p.n_gens() == 0);
    for (auto& [cell, ok] : r.cells) CHECK(ok);
}

TEST_CASE("i2 world: resolving Res_B h_{X2} gives zero, h_{X1} gives one generator") {
    I2World w;
    REQUIRE(w.tt.cat.validate().ok());

    Module h2 = yoneda_right(w.tt.cat, w.aop, 1);
    Resolution r2 = semi_free_resolve(w.tt.cat, h2, w.b, -3, 3, 10);
    CHECK(r2.complete);
    CHECK(r2.p.n_gens() == 0);   // restriction to B is acyclic

    Module h1 = yoneda_right(w.tt.cat, w.aop, 0);
    Resolution r1 = semi_free_resolve(w.tt.cat, h1, w.b, -3, 3, 10);
    CHECK(r1.complete);
    CHECK(r1.p.n_gens() == 1);
    CHECK(r1.p.gen(0).deg == 1);
    CHECK(r1.p.validate_certificate().ok());
    CHECK(validate_counit(w.aop, r1).ok());
    for (auto& [cell, ok] : r1.cells) CHECK(ok);
}

TEST_CASE("lind_res_cone in the i2 world reproduces the quotient Ext values") {
    I2World w;
    // Y = X2: cone is h_{X2} itself, orthogonal
    OrthogonalCone c2 = lind_res_cone(w.tt.cat, w.aop, w.b, 1, -3, 3, 10);
    CHECK(c2.resolution_complete);
    CHECK(c2.orthogonal);
    CHECK(cohomology(c2.mat.value(0), 0).dim == 1);   // Ext^0(X1, X2) = k f
    CHECK(cohomology(c2.mat.value(1), 0).dim == 1);
    for (int n = -3; n <= 3; ++n) {
        if (n == 0) continue;
        CHECK(cohomology(c2.mat.value(0), n).dim == 0);
        CHECK(cohomology(c2.mat.value(1), n).dim == 0);
    }

    // Y = X1: Ext^0(X2, X1) = k (the class of f^{-1}), Ext^0(X1, X1) = k
    OrthogonalCone c1 = lind_res_cone(w.tt.cat, w.aop, w.b, 0, -3, 3, 10);
    CHECK(c1.resolution_complete);
    CHECK(c1.orthogonal);
    CHECK(c1.pres.validate_certificate().ok());
    CHECK(cohomology(c1.mat.value(0), 0).dim == 1);
    CHECK(cohomology(c1.mat.value(1), 0).dim == 1);
    for (int n = -3; n <= 3; ++n) {
        if (n == 0) continue;
        CHECK(cohomology(c1.mat.value(0), n).dim == 0);
        CHECK(cohomology(c1.mat.value(1), n).dim == 0);
    }
    CHECK(c1.mat.validate().ok());

    // B empty: cone is h_Y itself
    OrthogonalCone ce = lind_res_cone(w.tt.cat, w.aop, {}, 0, -3, 3, 10);
    CHECK(ce.orthogonal);
    CHECK(cohomology(ce.mat.value(0), 0).dim == 1);
}

TEST_CASE("bar resolution of k over End = k certifies the window") {
    TableCat e = cat_endk(Q);
    TableCat eop = opposite(e);
    Module h = yoneda_right(e, eop, 0);
    Resolution bar = bar_resolution(e, h, {0}, 7, -4, 1);
    CHECK(bar.p.n_gens() == 7);
    CHECK(bar.p.validate_certificate().ok());
    CHECK(validate_counit(eop, bar).ok());
    // the augmentation is a quasi-isomorphism in certified degrees well inside
    for (int t = -4; t <= 2; ++t) {
        auto it = bar.cells.find({0, t});
        REQUIRE(it != bar.cells.end());
        CHECK(it->second);
    }
}

TEST_CASE("bar resolution over the i2 world restricted to B is acyclic for h_{X2}") {
    I2World w;
    Module h2 = yoneda_right(w.tt.cat, w.aop, 1);
    Resolution bar = bar_resolution(w.tt.cat, h2, w.b, 4, -2, 2);
    CHECK(bar.p.validate_certificate().ok());
    CHECK(validate_counit(w.aop, bar).ok());
    // Res_B h_{X2} is acyclic, so the truncated bar is acyclic too where certified
    SemiFreeModule::Value v = bar.p.value_at(2);
    for (int n = -1; n <= 1; ++n) {
        // the bar complex itself is acyclic here (it resolves an acyclic module)
        CHECK(cohomology(v.cx, n).dim == 0);
    }
}

TEST_CASE("level-1 truncation of a bar resolution is generally not certified") {
    // trivial module k over k[x]/x^2 with x of degree 1: level one misses the
    // x-tower entirely
    TableCat b = cat_kx2(Q);
    TableCat bop = opposite(b);
    Module m(&bop);
    m.value(0).add_basis(0, "k");
    SparseMatrix id1(1, 1, Q);
    id1.set(0, 0, Scalar(Q, 1));
    m.set_act(0, 0, {0, 0}, 0, id1);   // id acts as 1, x acts as 0
    REQUIRE(m.validate().ok());
    Resolution bar = bar_resolution(b, m, {0}, 1, -2, 2);
    CHECK(validate_counit(bop, bar).ok());
    bool some_uncertified = false;
    for (auto& [cell, ok] : bar.cells) some_uncertified = some_uncertified || !ok;
    CHECK(some_uncertified);
    // the x-tower defect of this module sits at degree 0 for every truncation
    // level (x has positive degree, the tower never leaves the window); the
    // report must keep saying so instead of pretending convergence
    Resolution bar5 = bar_resolution(b, m, {0}, 5, -2, 2);
    CHECK(validate_counit(bop, bar5).ok());
    CHECK(!bar5.cells.at({0, 0}));
}

TEST_CASE("check_induced_image: induced modules yes, h_{X2} no, acyclic yes") {
    I2World w;
    // an induced module: materialize a free module with a generator at Cone f
    SemiFreeModule free1(&w.tt.cat);
    free1.add_gen(2, 0, 0, "e");
    Module ind = free1.materialize(w.aop);
    REQUIRE(ind.validate().ok());
    auto v1 = check_induced_image(w.tt.cat, w.aop, ind, w.b, -2, 2, 10);
    CHECK(v1.verdict == Verdict::Yes);

    Module h2 = yoneda_right(w.tt.cat, w.aop, 1);
    auto v2 = check_induced_image(w.tt.cat, w.aop, h2, w.b, -2, 2, 10);
    CHECK(v2.verdict == Verdict::No);

    // acyclic module over the one-object category
    TableCat e = cat_endk(Q);
    TableCat eop = opposite(e);
    Module m(&eop);
    m.value(0).add_basis(0, "a");
    m.value(0).add_basis(1, "b");
    m.value(0).add_d_entry(0, 0, 0, Scalar(Q, 1));
    SparseMatrix id1(1, 1, Q);
    id1.set(0, 0, Scalar(Q, 1));
    m.set_act(0, 0, {0, 0}, 0, id1);
    m.set_act(0, 0, {0, 0}, 1, id1);
    auto v3 = check_induced_image(e, eop, m, {0}, -2, 2, 10);
    CHECK(v3.verdict == Verdict::Yes);
}

TEST_CASE("materialized semifree modules validate and are homotopically flat") {
    I2World w;
    OrthogonalCone c1 = lind_res_cone(w.tt.cat, w.aop, w.b, 0, -2, 2, 10);
    REQUIRE(c1.mat.validate().ok());
    // homotopical flatness probe: tensoring the (acyclic) counit cone of the
    // resolution of Res_B h_{X1} with test modules stays acyclic; here we use
    // the cone module itself against representables via values
    for (int u : w.b)
        for (int n = -2; n <= 2; ++n) CHECK(cohomology(c1.mat.value(u), n).dim == 0);
}

TEST_CASE("resolutions over F5 random categories certify their windows") {
    int completed = 0;
    for (uint64_t seed : {2u, 5u, 8u, 13u, 21u}) {
        TableCat c = random_table_category(F5, seed, {2, 3, true, 3});
        TableCat cop = opposite(c);
        Module h = yoneda_right(c, cop, 0);
        Resolution r = semi_free_resolve(c, h, {1}, -2, 2, 10);
        CHECK(r.p.validate_certificate().ok());
        CHECK(validate_counit(cop, r).ok());
        if (r.complete) {
            ++completed;
            for (auto& [cell, ok] : r.cells) CHECK(ok);
        }
    }
    CHECK(completed >= 4);   // small-End subcategories resolve within budget
}
