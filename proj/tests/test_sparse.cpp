#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgq/sparse.hpp"

using namespace dgq;

namespace {
SparseMatrix from_rows(Field f, std::vector<std::vector<long long>> rows) {
    int r = (int)rows.size(), c = r ? (int)rows[0].size() : 0;
    SparseMatrix m(r, c, f);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (rows[i][j]) m.set(i, j, Scalar(f, rows[i][j]));
    return m;
}
}  // namespace

TEST_CASE("rank and kernel over Q") {
    Field Q = Field::rationals();
    auto m = from_rows(Q, {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(m.rank() == 2);
    auto ker = m.kernel_basis();
    REQUIRE(ker.size() == 1);
    CHECK(m.apply(ker[0]).is_zero());
}

TEST_CASE("solve picks an exact solution when one exists") {
    Field Q = Field::rationals();
    auto m = from_rows(Q, {{2, 0}, {0, 3}});
    auto x = m.solve({Scalar(Q, 1), Scalar(Q, 1)});
    REQUIRE(x.has_value());
    CHECK((*x)[0].to_string() == "1/2");
    CHECK((*x)[1].to_string() == "1/3");

    auto sing = from_rows(Q, {{1, 1}, {1, 1}});
    CHECK(!sing.solve({Scalar(Q, 0), Scalar(Q, 1)}).has_value());
    auto ok = sing.solve({Scalar(Q, 2), Scalar(Q, 2)});
    REQUIRE(ok.has_value());
    CHECK(((*ok)[0] + (*ok)[1]).to_string() == "2");
}

TEST_CASE("solve over F_5 on a random-ish system") {
    Field F = Field::prime(5);
    auto m = from_rows(F, {{1, 2, 0}, {0, 1, 4}, {3, 0, 2}});
    std::vector<Scalar> b{Scalar(F, 1), Scalar(F, 2), Scalar(F, 3)};
    auto x = m.solve(b);
    REQUIRE(x.has_value());
    auto chk = m.apply_dense(*x);
    for (int i = 0; i < 3; ++i) CHECK(chk[i] == b[i]);
}

TEST_CASE("rowspan expresses members and rejects outsiders") {
    Field Q = Field::rationals();
    RowSpan span(Q);
    SparseVec v1, v2, w;
    v1.add_term(0, Scalar(Q, 1));
    v1.add_term(1, Scalar(Q, 2));
    v2.add_term(1, Scalar(Q, 1));
    span.insert(v1);
    span.insert(v2);
    w.add_term(0, Scalar(Q, 3));
    w.add_term(1, Scalar(Q, 4));
    auto e = span.express(w);
    REQUIRE(e.has_value());
    // w = 3*v1 - 2*v2
    SparseVec rebuilt;
    for (auto& [g, c] : *e) rebuilt = rebuilt.plus((g == 0 ? v1 : v2).scaled(c));
    CHECK(rebuilt.plus(w.scaled(Scalar(Q, -1))).is_zero());

    SparseVec out;
    out.add_term(2, Scalar(Q, 1));
    CHECK(!span.contains(out));
}

TEST_CASE("matrix product and transpose agree with dense expectations") {
    Field Q = Field::rationals();
    auto a = from_rows(Q, {{1, 2}, {3, 4}});
    auto b = from_rows(Q, {{0, 1}, {1, 0}});
    auto ab = a.times(b);
    CHECK(ab.get(0, 0).to_string() == "2");
    CHECK(ab.get(1, 1).to_string() == "3");
    auto at = a.transpose();
    CHECK(at.get(0, 1).to_string() == "3");
}
