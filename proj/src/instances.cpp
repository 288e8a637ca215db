#include "dgq/instances.hpp"

namespace dgq {

namespace {
GradedVec single(Field f, Pos p) {
    GradedVec v;
    v.add(p, Scalar::one(f));
    return v;
}
}  // namespace

TableCat cat_a0(Field f) {
    TableCat a(f);
    int x1 = a.add_object("X1");
    int x2 = a.add_object("X2");
    a.hom(x1, x1).add_basis(0, "id_X1");
    a.hom(x2, x2).add_basis(0, "id_X2");
    a.hom(x1, x2).add_basis(0, "f");
    a.set_unit(x1, single(f, {0, 0}));
    a.set_unit(x2, single(f, {0, 0}));
    a.set_comp(x1, x1, x1, {0, 0}, {0, 0}, single(f, {0, 0}));
    a.set_comp(x2, x2, x2, {0, 0}, {0, 0}, single(f, {0, 0}));
    a.set_comp(x1, x1, x2, {0, 0}, {0, 0}, single(f, {0, 0}));   // f ° id
    a.set_comp(x1, x2, x2, {0, 0}, {0, 0}, single(f, {0, 0}));   // id ° f
    return a;
}

TableCat cat_i2(Field f, long long mu) {
    TableCat c(f);
    int y1 = c.add_object("Y1");
    int y2 = c.add_object("Y2");
    c.hom(y1, y1).add_basis(0, "id_Y1");
    c.hom(y2, y2).add_basis(0, "id_Y2");
    c.hom(y1, y2).add_basis(0, "a");
    c.hom(y2, y1).add_basis(0, "b");
    c.set_unit(y1, single(f, {0, 0}));
    c.set_unit(y2, single(f, {0, 0}));
    Scalar m(f, mu);
    auto one = single(f, {0, 0});
    // units
    c.set_comp(y1, y1, y1, {0, 0}, {0, 0}, one);
    c.set_comp(y2, y2, y2, {0, 0}, {0, 0}, one);
    c.set_comp(y1, y1, y2, {0, 0}, {0, 0}, one);
    c.set_comp(y1, y2, y2, {0, 0}, {0, 0}, one);
    c.set_comp(y2, y2, y1, {0, 0}, {0, 0}, one);
    c.set_comp(y2, y1, y1, {0, 0}, {0, 0}, one);
    // b ° a = mu id_1, a ° b = mu id_2
    c.set_comp(y1, y2, y1, {0, 0}, {0, 0}, one.scaled(m));
    c.set_comp(y2, y1, y2, {0, 0}, {0, 0}, one.scaled(m));
    // a ° b ° a etc handled by associativity of the table: (ab)a = mu a
    c.set_comp(y1, y1, y2, {0, 0}, {0, 0}, one);
    return c;
}

TableCat cat_endk(Field f) {
    TableCat c(f);
    int u = c.add_object("U");
    c.hom(u, u).add_basis(0, "id_U");
    c.set_unit(u, single(f, {0, 0}));
    c.set_comp(u, u, u, {0, 0}, {0, 0}, single(f, {0, 0}));
    return c;
}

TableCat cat_kx2(Field f) {
    TableCat c(f);
    int z = c.add_object("Z");
    Complex& e = c.hom(z, z);
    e.add_basis(0, "id_Z");
    e.add_basis(1, "x");
    c.set_unit(z, single(f, {0, 0}));
    c.set_comp(z, z, z, {0, 0}, {0, 0}, single(f, {0, 0}));   // id ° id
    c.set_comp(z, z, z, {1, 0}, {0, 0}, single(f, {1, 0}));   // x ° id
    c.set_comp(z, z, z, {0, 0}, {1, 0}, single(f, {1, 0}));   // id ° x
    // x ° x = 0: omitted entry
    return c;
}

}  // namespace dgq
