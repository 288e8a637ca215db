#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgq/complex.hpp"

using namespace dgq;

namespace {

const Field Q = Field::rationals();

// k in a single degree
Complex point(int deg, Field f = Q) {
    Complex c(f);
    c.add_basis(deg, "e");
    return c;
}

// k --id--> k in degrees n, n+1
Complex exact_couple(int n, Field f = Q) {
    Complex c(f);
    c.add_basis(n, "a");
    c.add_basis(n + 1, "b");
    c.add_d_entry(n, 0, 0, Scalar::one(f));
    return c;
}

// seeded random complex in degrees [0, 1] with d any matrix (d^2 = 0 automatic)
Complex random_two_step(Rng& rng, Field f, int d0, int d1) {
    Complex c(f);
    for (int i = 0; i < d0; ++i) c.add_basis(0, "x" + std::to_string(i));
    for (int i = 0; i < d1; ++i) c.add_basis(1, "y" + std::to_string(i));
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d0; ++j)
            if (rng.below(2)) c.add_d_entry(0, i, j, rng.scalar(f, 1, 4));
    return c;
}

}  // namespace

TEST_CASE("cohomology of the zero and exact complexes") {
    Complex zero(Q);
    CHECK(cohomology(zero, 0).dim == 0);
    CHECK(cohomology(zero, 5).dim == 0);

    Complex ec = exact_couple(0);
    CHECK(cohomology(ec, 0).dim == 0);
    CHECK(cohomology(ec, 1).dim == 0);
    CHECK(ec.d_squared_zero());
}

TEST_CASE("cohomology of the 3-dimensional endomorphism complex instance") {
    // two degree-0 elements, one degree-1 element, d(e11) = -E, d(e22) = E.
    // Frozen expectation from dense row reduction over Q: H^0 = 1, H^1 = 0.
    Complex c(Q);
    c.add_basis(0, "e11");
    c.add_basis(0, "e22");
    c.add_basis(1, "E");
    c.add_d_entry(0, 0, 0, Scalar(Q, -1));
    c.add_d_entry(0, 0, 1, Scalar(Q, 1));
    REQUIRE(c.d_squared_zero());
    auto h0 = cohomology(c, 0);
    CHECK(h0.dim == 1);
    CHECK(cohomology(c, 1).dim == 0);
    // the representative is a cocycle
    REQUIRE(h0.reps.size() == 1);
    CHECK(c.d(0).apply(h0.reps[0]).is_zero());
}

TEST_CASE("cohomology is invariant under basis permutation") {
    Rng rng(7);
    Complex c = random_two_step(rng, Q, 3, 2);
    // permuted copy: swap the two degree-0 basis vectors 0 and 2
    Complex p(Q);
    p.add_basis(0, "x2");
    p.add_basis(0, "x1");
    p.add_basis(0, "x0");
    p.add_basis(1, "y0");
    p.add_basis(1, "y1");
    auto d = c.d(0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) p.add_d_entry(0, i, 2 - j, d.get(i, j));
    for (int n = -1; n <= 2; ++n) CHECK(cohomology(c, n).dim == cohomology(p, n).dim);
}

TEST_CASE("cone of identity is contractible, cone of zero is a direct sum") {
    Complex pt = point(0);
    ChainMap id = identity_map(pt);
    auto cid = cone_complex(id);
    REQUIRE(cid.cx.d_squared_zero());
    for (int n = -2; n <= 2; ++n) CHECK(cohomology(cid.cx, n).dim == 0);
    CHECK(contracting_homotopy(cid.cx).has_value());

    Complex pt2 = point(0);
    ChainMap zero = zero_map(pt, pt2);
    auto cz = cone_complex(zero);
    CHECK(cohomology(cz.cx, 0).dim == 1);
    CHECK(cohomology(cz.cx, -1).dim == 1);
}

TEST_CASE("cone of a subcomplex inclusion matches the quotient complex") {
    // C: degrees 0,1 with d = [[1,0]] pattern; D = span(x0) a subcomplex when d(x0)=0
    Complex c(Q);
    c.add_basis(0, "x0");
    c.add_basis(0, "x1");
    c.add_basis(1, "y");
    c.add_d_entry(0, 0, 1, Scalar(Q, 1));   // d x1 = y, d x0 = 0
    Complex sub(Q);
    sub.add_basis(0, "x0");
    ChainMap inc;
    inc.source = &sub;
    inc.target = &c;
    SparseMatrix b(2, 1, Q);
    b.set(0, 0, Scalar(Q, 1));
    inc.blocks[0] = b;
    REQUIRE(inc.commutes_with_d());
    auto cone = cone_complex(inc);
    REQUIRE(cone.cx.d_squared_zero());

    std::vector<GradedVec> span;
    GradedVec v;
    v.add({0, 0}, Scalar::one(Q));
    span.push_back(v);
    Complex quot = quotient_complex(c, span);
    REQUIRE(quot.d_squared_zero());
    for (int n = -1; n <= 2; ++n) CHECK(cohomology(cone.cx, n).dim == cohomology(quot, n).dim);
}

TEST_CASE("shift relabels degrees and fixes signs") {
    Complex ec = exact_couple(0);
    Complex s = shift_complex(ec, 1);
    CHECK(s.dim(-1) == 1);
    CHECK(s.dim(0) == 1);
    CHECK(s.d(-1).get(0, 0).to_string() == "-1");
    Complex back = shift_complex(s, -1);
    CHECK(back.d(0).get(0, 0).to_string() == "1");
    // shift by 0 is the identity
    Complex z = shift_complex(ec, 0);
    CHECK(z.dim(0) == 1);
    CHECK(z.d(0).get(0, 0).to_string() == "1");
}

TEST_CASE("tensor unit and Kunneth over F_5 on random instances") {
    Field F5 = Field::prime(5);
    Complex unit = point(0, F5);
    Rng rng(11);
    for (int trial = 0; trial < 8; ++trial) {
        Complex c = random_two_step(rng, F5, 1 + (int)rng.below(3), 1 + (int)rng.below(2));
        REQUIRE(c.d_squared_zero());
        Complex cu = tensor_complex(c, unit);
        for (int n = -1; n <= 2; ++n) CHECK(cohomology(cu, n).dim == cohomology(c, n).dim);

        Complex c2 = random_two_step(rng, F5, 1 + (int)rng.below(2), 1 + (int)rng.below(2));
        Complex t = tensor_complex(c, c2);
        REQUIRE(t.d_squared_zero());
        for (int m = -1; m <= 3; ++m) {
            int expect = 0;
            for (int i = -1; i <= 3; ++i)
                expect += cohomology(c, i).dim * cohomology(c2, m - i).dim;
            CHECK(cohomology(t, m).dim == expect);
        }
    }
}

TEST_CASE("hom complex squares to zero and computes Hom cohomology") {
    Complex ec = exact_couple(0);
    Complex h = hom_complex(ec, ec);
    REQUIRE(h.d_squared_zero());
    // End of a contractible complex is contractible
    for (int n = -2; n <= 2; ++n) CHECK(cohomology(h, n).dim == 0);
}

TEST_CASE("solve_homotopy finds witnesses exactly when they exist") {
    Complex ec = exact_couple(0);
    auto h = contracting_homotopy(ec);
    REQUIRE(h.has_value());
    // verify d h + h d = id by hand
    auto& hm = *h;
    SparseMatrix lhs0 = ec.d(-1).times(hm.block(0)).plus(hm.block(1).times(ec.d(0)));
    CHECK(lhs0.get(0, 0).to_string() == "1");

    Complex pt = point(0);
    CHECK(!contracting_homotopy(pt).has_value());
}

TEST_CASE("homotopy-equivalence criterion: cone acyclic iff homotopy inverse exists") {
    // f: exact couple -> point in degree 0... use f = d-induced projection which is
    // nullhomotopic; the cone of a quasi-iso between these small complexes is acyclic.
    Complex ec = exact_couple(0);
    Complex zero(Q);
    ChainMap z = zero_map(ec, zero);
    auto cone = cone_complex(z);   // = ec[1]
    bool acyclic = true;
    for (int n = -3; n <= 3; ++n) acyclic = acyclic && cohomology(cone.cx, n).dim == 0;
    CHECK(acyclic);                 // ec ≃ 0 and indeed contractible
    CHECK(contracting_homotopy(ec).has_value());

    Complex pt = point(0);
    ChainMap z2 = zero_map(pt, zero);
    auto cone2 = cone_complex(z2);
    CHECK(cohomology(cone2.cx, -1).dim == 1);   // not acyclic
    CHECK(!contracting_homotopy(pt).has_value());
}

TEST_CASE("windowed complexes refuse cohomology outside the window") {
    Complex c = exact_couple(0);
    c.set_window(0, 1);
    CHECK_THROWS_WITH_AS(cohomology(c, 1), doctest::Contains("window-insufficient"), error);
    c.set_window(-1, 2);
    CHECK_NOTHROW(cohomology(c, 0));
    CHECK_NOTHROW(cohomology(c, 1));
}
