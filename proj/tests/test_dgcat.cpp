#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgq/dgcat.hpp"
#include "dgq/instances.hpp"

using namespace dgq;

namespace {
const Field Q = Field::rationals();
const Field F5 = Field::prime(5);
}  // namespace

TEST_CASE("one-object End=k validates; injected d(id) != 0 is reported") {
    TableCat c = cat_endk(Q);
    CHECK(c.validate().ok());

    TableCat broken = cat_endk(Q);
    broken.hom(0, 0).add_basis(1, "junk");
    broken.hom(0, 0).add_d_entry(0, 0, 0, Scalar(Q, 1));   // d(id) = junk
    auto rep = broken.validate();
    CHECK(!rep.ok());
    bool unit_issue = false;
    for (auto& i : rep.issues) unit_issue = unit_issue || i.kind == "unit";
    CHECK(unit_issue);
}

TEST_CASE("a0 validates and has the stated Hom complexes") {
    TableCat a = cat_a0(Q);
    CHECK(a.validate().ok());
    CHECK(a.hom(0, 1).dim(0) == 1);
    CHECK(a.hom(1, 0).total_dim() == 0);
    auto ext = a.ext_table(0, 1, -2, 2);
    CHECK(ext[0] == 1);
    CHECK(ext[1] == 0);
    CHECK(ext[-1] == 0);
}

TEST_CASE("opposite: one-object fixpoint, arrow reversal, double dual identity") {
    TableCat e = cat_endk(Q);
    TableCat eo = opposite(e);
    CHECK(eo.validate().ok());
    CHECK(eo.hom(0, 0).dim(0) == 1);

    TableCat a = cat_a0(Q);
    TableCat ao = opposite(a);
    CHECK(ao.validate().ok());
    CHECK(ao.hom(1, 0).dim(0) == 1);    // f now goes X2 -> X1
    CHECK(ao.hom(0, 1).total_dim() == 0);

    TableCat r = random_table_category(F5, 99, {2, 3, true, false});
    REQUIRE(r.validate().ok());
    TableCat roo = opposite(opposite(r));
    CHECK(roo.validate().ok());
    // structural equality: same dims, same composition values on all basis pairs
    for (int x = 0; x < r.n_objects(); ++x)
        for (int y = 0; y < r.n_objects(); ++y)
            for (int n = -2; n <= 2; ++n) CHECK(r.hom(x, y).dim(n) == roo.hom(x, y).dim(n));
    for (int x = 0; x < r.n_objects(); ++x)
        for (int y = 0; y < r.n_objects(); ++y)
            for (int z = 0; z < r.n_objects(); ++z) {
                const Complex& hf = r.hom(x, y);
                const Complex& hg = r.hom(y, z);
                for (int ng : hg.degrees())
                    for (int ig = 0; ig < hg.dim(ng); ++ig)
                        for (int nf : hf.degrees())
                            for (int jf = 0; jf < hf.dim(nf); ++jf) {
                                Mor g = r.basis_mor(y, z, {ng, ig});
                                Mor fm = r.basis_mor(x, y, {nf, jf});
                                Mor lhs = r.compose(g, fm);
                                Mor rhs = roo.compose(g, fm);
                                CHECK(r.add(lhs, r.scale(rhs, Scalar(F5, -1))).is_zero());
                            }
            }
}

TEST_CASE("tensor with the unit category is isomorphic to the factor") {
    TableCat a = cat_a0(Q);
    TableCat u = cat_endk(Q);
    TableCat t = tensor_categories(a, u);
    CHECK(t.validate().ok());
    REQUIRE(t.n_objects() == 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int n = -1; n <= 1; ++n) CHECK(t.hom(x, y).dim(n) == a.hom(x, y).dim(n));
    auto ext = t.ext_table(0, 1, -1, 1);
    CHECK(ext[0] == 1);
}

TEST_CASE("square of the degree-1 exterior generator vanishes by the Koszul sign") {
    TableCat k = cat_kx2(Q);
    REQUIRE(k.validate().ok());
    TableCat kk = tensor_categories(k, k);
    REQUIRE(kk.validate().ok());
    const Complex& e = kk.hom(0, 0);
    CHECK(e.total_dim() == 4);
    CHECK(e.dim(2) == 1);
    Mor xx = kk.basis_mor(0, 0, {2, 0});
    CHECK(kk.compose(xx, xx).is_zero());
    // hand expansion: the two degree-1 generators anticommute
    Mor x_id = kk.basis_mor(0, 0, {1, 0});
    Mor id_x = kk.basis_mor(0, 0, {1, 1});
    Mor p = kk.compose(x_id, id_x);
    Mor q = kk.compose(id_x, x_id);
    CHECK(kk.add(p, q).is_zero());
    CHECK(!p.is_zero());
}

TEST_CASE("validate passes on 20 random tensor pairs") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        TableCat a = random_table_category(F5, seed, {2, 2, seed % 2 == 0, false});
        TableCat b = random_table_category(F5, seed + 1000, {1, 2, false, false});
        REQUIRE(a.validate().ok());
        REQUIRE(b.validate().ok());
        TableCat t = tensor_categories(a, b);
        CHECK(t.validate().ok());
    }
}

TEST_CASE("random table categories validate, scrambled or not") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        TableCat c = random_table_category(F5, seed, {3, 3, true, seed % 3 == 0});
        auto rep = c.validate();
        if (!rep.ok()) FAIL(rep.summary());
        TableCat d = random_table_category(Q, seed, {2, 3, false, false});
        CHECK(d.validate().ok());
    }
}

TEST_CASE("ext_table agrees with direct cohomology of the hom complex") {
    TableCat c = random_table_category(F5, 5, {2, 3, true, false});
    auto t = c.ext_table(0, 1, -1, 1);
    for (int n = -1; n <= 1; ++n) CHECK(t[n] == cohomology(c.hom(0, 1), n).dim);
}

TEST_CASE("identity functor is a quasi-equivalence") {
    TableCat c = random_table_category(F5, 3, {2, 3, true, false});
    TableFunctor id = identity_functor(c);
    REQUIRE(id.validate().ok());
    auto v = check_quasi_equivalence(id, -1, 1);
    CHECK(v.verdict == Verdict::Yes);
}

TEST_CASE("full subcategory inclusion is fully faithful on homology") {
    TableCat c = random_table_category(F5, 8, {3, 3, false, false});
    TableCat sub = full_subcategory(c, {0, 2});
    REQUIRE(sub.validate().ok());
    TableFunctor inc = full_subcategory_inclusion(sub, c, {0, 2});
    REQUIRE(inc.validate().ok());
    auto v = check_quasi_equivalence(inc, -1, 1);
    CHECK(v.verdict != Verdict::No);
}

TEST_CASE("scrambling preserves ext tables") {
    TableCat c = random_table_category(F5, 21, {2, 3, false, false});
    TableCat s = scramble_hom_bases(c, 77);
    REQUIRE(s.validate().ok());
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            auto t1 = c.ext_table(x, y, -1, 1);
            auto t2 = s.ext_table(x, y, -1, 1);
            CHECK(t1 == t2);
        }
}

TEST_CASE("i2 category validates for mu = 1 and mu = 0") {
    CHECK(cat_i2(Q, 1).validate().ok());
    CHECK(cat_i2(Q, 0).validate().ok());
    TableCat i2 = cat_i2(Q, 1);
    Mor a = i2.basis_mor(0, 1, {0, 0});
    Mor b = i2.basis_mor(1, 0, {0, 0});
    CHECK(!i2.compose(b, a).is_zero());
    CHECK(is_homotopy_iso_class(i2, a, -1, 1));
    TableCat i20 = cat_i2(Q, 0);
    Mor a0 = i20.basis_mor(0, 1, {0, 0});
    CHECK(!is_homotopy_iso_class(i20, a0, -1, 1));
}
