#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "quotmmp/errors.hpp"
#include "quotmmp/io.hpp"
#include "quotmmp/point.hpp"
#include "test_util.hpp"

using namespace quotmmp;
using testutil::make_point;

namespace {
const FieldSpec Q = FieldSpec::rationals();
std::mt19937_64 rng(77113355);

ExactMatrix rows_of(FieldSpec f, const std::vector<std::vector<long>>& rows, int cols) {
    ExactMatrix m(f, static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols; ++j) m.set(static_cast<int>(i), j, rows[i][j]);
    return m;
}
}  // namespace

TEST_CASE("validate") {
    SUBCASE("constant identity, d = 0") {
        SheafMapPoint pt = make_point(Q, 2, 0, 0, {0, 0}, {{"1", "0"}, {"0", "1"}});
        CHECK(validate(pt).ok);
    }
    SUBCASE("zero column is rejected") {
        SheafMapPoint pt = make_point(Q, 2, 0, 1, {1, 0}, {{"x", "0"}, {"y", "0"}});
        PointDiagnostics diag = validate(pt);
        CHECK_FALSE(diag.ok);
        CHECK(diag.violations.size() == 1);  // every maximal minor vanishes
    }
    SUBCASE("diagonal forms give a nonzero minor") {
        SheafMapPoint pt = make_point(Q, 2, 0, 2, {1, 1}, {{"x", "0"}, {"0", "y"}});
        CHECK(validate(pt).ok);
        CHECK(pluecker_point(pt)[0].str() == "x*y");
    }
    SUBCASE("degree bookkeeping violations are reported") {
        SheafMapPoint bad_sum = make_point(Q, 2, 0, 3, {1, 1}, {{"x", "0"}, {"0", "y"}});
        CHECK_FALSE(validate(bad_sum).ok);
        SheafMapPoint bad_order = make_point(Q, 2, 0, 1, {0, 1}, {{"1", "x"}, {"0", "y"}});
        CHECK_FALSE(validate(bad_order).ok);
    }
    SUBCASE("shape violations are rejected at construction") {
        CHECK_THROWS_AS(make_point(Q, 2, 0, 1, {1, 0}, {{"x", "y"}, {"y", "1"}}),
                        ParseError);  // entry degree mismatch surfaces in parsing
        ModuliParams p = ModuliParams::checked(2, 0, 1);
        CHECK_THROWS_AS(SheafMapPoint(p, Q, {1}, {}), std::invalid_argument);
        CHECK_THROWS_AS(SheafMapPoint(p, Q, {1, -2}, {}), std::invalid_argument);
    }
}

TEST_CASE("h0_subspace examples") {
    SUBCASE("diag(x, y) at m = 1") {
        SheafMapPoint pt = make_point(Q, 2, 0, 2, {1, 1}, {{"x", "0"}, {"0", "y"}});
        GrassmannPoint K = h0_subspace(pt, 1);
        // span{e_0 (x) x, e_1 (x) y} in the basis e0x, e0y, e1x, e1y
        CHECK(K.basis() == rows_of(Q, {{1, 0, 0, 0}, {0, 0, 0, 1}}, 4));
        CHECK(K.dim() == 2);
    }
    SUBCASE("only the constant column contributes at m = 1") {
        SheafMapPoint pt = make_point(Q, 2, 0, 2, {2, 0}, {{"x^2", "0"}, {"0", "1"}});
        GrassmannPoint K = h0_subspace(pt, 1);
        CHECK(K.basis() == rows_of(Q, {{0, 0, 1, 0}, {0, 0, 0, 1}}, 4));
    }
    SUBCASE("trivial bundle gives all of V_m") {
        SheafMapPoint pt = make_point(Q, 2, 0, 0, {0, 0}, {{"1", "0"}, {"0", "1"}});
        for (int m = 0; m <= 2; ++m) {
            GrassmannPoint K = h0_subspace(pt, m);
            CHECK(K.dim() == 2 * (m + 1));
            CHECK(K.basis() == ExactMatrix::identity(Q, 2 * (m + 1)));
        }
    }
    SUBCASE("H^1 obstruction") {
        SheafMapPoint pt = make_point(Q, 2, 0, 3, {3, 0}, {{"x^3", "0"}, {"0", "1"}});
        CHECK_THROWS_WITH_AS(h0_subspace(pt, 1), doctest::Contains("exceeds m + 1"),
                             std::domain_error);
    }
    SUBCASE("injectivity shortfall") {
        // two proportional columns: sections collapse
        SheafMapPoint pt = make_point(Q, 2, 0, 2, {1, 1}, {{"x", "x"}, {"y", "y"}});
        CHECK_THROWS_WITH_AS(h0_subspace(pt, 1), doctest::Contains("H0-injectivity"),
                             std::domain_error);
    }
}

TEST_CASE("check_star examples") {
    SUBCASE("balanced witness for (2,0,1)") {
        SheafMapPoint pt = make_point(Q, 2, 0, 1, {1, 0}, {{"x", "0"}, {"y", "1"}});
        StarCheck sc = check_star(pt, 1);
        CHECK(sc.ok);
        CHECK(sc.cond_i);
        CHECK(sc.cond_ii);
        CHECK(sc.cond_iii);
    }
    SUBCASE("condition ii fails when a column degree exceeds m") {
        SheafMapPoint pt = make_point(Q, 2, 0, 2, {2, 0}, {{"x^2", "0"}, {"0", "1"}});
        StarCheck sc = check_star(pt, 1);
        CHECK_FALSE(sc.ok);
        CHECK(sc.cond_i);
        CHECK_FALSE(sc.cond_ii);
    }
    SUBCASE("trivial bundle at m = 0") {
        SheafMapPoint pt = make_point(Q, 2, 0, 0, {0, 0}, {{"1", "0"}, {"0", "1"}});
        CHECK(check_star(pt, 0).ok);
    }
    SUBCASE("below ceil(d/s) is a domain error") {
        SheafMapPoint pt = make_point(Q, 2, 0, 2, {1, 1}, {{"x", "0"}, {"0", "y"}});
        CHECK_THROWS_AS(check_star(pt, 0), std::domain_error);
    }
}

TEST_CASE("star monotonicity in m on random points") {
    for (auto [n, r, d] : {std::tuple{2, 0, 2}, {3, 1, 2}, {4, 2, 3}}) {
        ModuliParams params = ModuliParams::checked(n, r, d);
        FieldSpec F = FieldSpec::prime_field(101);
        for (int trial = 0; trial < 5; ++trial) {
            SheafMapPoint pt = testutil::random_balanced_point(F, params, rng);
            int m0 = params.ceil_d_s();
            bool held = false;
            for (int m = m0; m <= d + 2; ++m) {
                bool ok = check_star(pt, m).ok;
                if (held) CHECK(ok);  // once true, stays true
                held = held || ok;
            }
            CHECK(held);
        }
    }
}

TEST_CASE("dualize examples") {
    SUBCASE("single column (x, y)") {
        SheafMapPoint pt = make_point(Q, 2, 1, 1, {1}, {{"x"}, {"y"}});
        SheafMapPoint dual = dualize(pt);
        CHECK(dual.params().n == 2);
        CHECK(dual.params().r == 1);  // dual side: rank-s quotients, s = 1 here
        CHECK(dual.column_degrees() == std::vector<int>{1});
        // kernel of (x y): spanned by (y, -x) up to scalar
        BinaryForm a = dual.entry(0, 0), b = dual.entry(1, 0);
        CHECK((a * BinaryForm::parse(Q, "x") + b * BinaryForm::parse(Q, "y")).is_zero());
        CHECK_FALSE(a.is_zero());
    }
    SUBCASE("constant identity block") {
        SheafMapPoint pt = make_point(Q, 3, 1, 0, {0, 0}, {{"1", "0"}, {"0", "1"}, {"0", "0"}});
        SheafMapPoint dual = dualize(pt);
        CHECK(dual.column_degrees() == std::vector<int>{0});
        // complement block: the functional vanishing on e_0, e_1
        CHECK(dual.entry(0, 0).is_zero());
        CHECK(dual.entry(1, 0).is_zero());
        CHECK_FALSE(dual.entry(2, 0).is_zero());
    }
    SUBCASE("torsion quotient is rejected") {
        SheafMapPoint pt = make_point(Q, 2, 0, 2, {1, 1}, {{"x", "0"}, {"0", "y"}});
        CHECK_THROWS_WITH_AS(dualize(pt), doctest::Contains("not locally free"),
                             std::domain_error);
    }
}

TEST_CASE("pluecker examples") {
    SUBCASE("single column") {
        SheafMapPoint pt = make_point(Q, 2, 1, 1, {1}, {{"x"}, {"y"}});
        std::vector<BinaryForm> p = pluecker_point(pt);
        REQUIRE(p.size() == 2);
        CHECK(p[0].str() == "x");
        CHECK(p[1].str() == "y");
    }
    SUBCASE("diagonal 2x2") {
        SheafMapPoint pt = make_point(Q, 2, 0, 2, {1, 1}, {{"x", "0"}, {"0", "y"}});
        std::vector<BinaryForm> p = pluecker_point(pt);
        REQUIRE(p.size() == 1);
        CHECK(p[0] == BinaryForm::parse(Q, "x*y", 2));  // coefficients (0, 1, 0)
    }
    SUBCASE("constant identity, s = n") {
        SheafMapPoint pt = make_point(Q, 2, 0, 0, {0, 0}, {{"1", "0"}, {"0", "1"}});
        std::vector<BinaryForm> p = pluecker_point(pt);
        REQUIRE(p.size() == 1);
        CHECK(p[0].str() == "1");
    }
}

TEST_CASE("complement sign pairing") {
    CHECK(complement_sign({0}, 2) == 1);
    CHECK(complement_sign({1}, 2) == -1);
    CHECK(complement_sign({0, 1}, 4) == 1);
    CHECK(complement_sign({1, 2}, 4) == 1);   // (1,2,0,3) has 2 inversions
    CHECK(complement_sign({0, 2}, 4) == -1);  // (0,2,1,3) has 1 inversion
}

namespace {

// Proportionality of two form vectors: all 2x2 cross determinants vanish and
// they are not both zero.
bool proportional(const std::vector<BinaryForm>& u, const std::vector<BinaryForm>& v) {
    REQUIRE(u.size() == v.size());
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = i + 1; j < u.size(); ++j)
            if (!(u[i] * v[j] - u[j] * v[i]).is_zero()) return false;
    return true;
}

}  // namespace

TEST_CASE("pluecker duality against the dual point") {
    FieldSpec F = FieldSpec::prime_field(101);
    for (auto [n, r, d] : {std::tuple{4, 2, 2}, {3, 1, 1}, {3, 2, 2}}) {
        ModuliParams params = ModuliParams::checked(n, r, d);
        for (int trial = 0; trial < 10; ++trial) {
            SheafMapPoint pt = testutil::random_locally_free_point(F, params, rng);
            SheafMapPoint dual = dualize(pt);
            std::vector<BinaryForm> p = pluecker_point(pt);
            std::vector<BinaryForm> q = pluecker_point(dual);

            // complementary minors with the shuffle sign, against p
            auto subsets = row_subsets(n, params.s());
            auto dual_subsets = row_subsets(n, r);
            std::vector<BinaryForm> paired;
            for (size_t i = 0; i < subsets.size(); ++i) {
                std::vector<int> comp;
                std::vector<bool> in(n, false);
                for (int v : subsets[i]) in[v] = true;
                for (int v = 0; v < n; ++v)
                    if (!in[v]) comp.push_back(v);
                size_t pos = std::find(dual_subsets.begin(), dual_subsets.end(), comp) -
                             dual_subsets.begin();
                BinaryForm signed_minor = q[pos];
                if (complement_sign(subsets[i], n) < 0) signed_minor = -signed_minor;
                paired.push_back(signed_minor);
            }
            CHECK(proportional(p, paired));

            // never the zero vector
            bool all_zero = true;
            for (const auto& f : p) all_zero = all_zero && f.is_zero();
            CHECK_FALSE(all_zero);
        }
    }
}

TEST_CASE("dualize over the rationals") {
    // exact fractions through the whole kernel extraction
    SheafMapPoint pt = make_point(Q, 3, 1, 2, {1, 1},
                                  {{"x", "1/2*y"}, {"y", "x - y"}, {"x + y", "3*x"}});
    REQUIRE(validate(pt).ok);
    SheafMapPoint dual = dualize(pt);
    CHECK(dual.params().r == 2);
    // the dual column annihilates every column of the original matrix
    for (int j = 0; j < 2; ++j) {
        BinaryForm acc(Q, pt.column_degrees()[j] + dual.column_degrees()[0]);
        for (int i = 0; i < 3; ++i) acc = acc + pt.entry(i, j) * dual.entry(i, 0);
        CHECK(acc.is_zero());
    }
}

TEST_CASE("dualize is an involution on moduli points") {
    FieldSpec F = FieldSpec::prime_field(101);
    ModuliParams params = ModuliParams::checked(4, 2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        SheafMapPoint pt = testutil::random_locally_free_point(F, params, rng);
        SheafMapPoint dd = dualize(dualize(pt));
        CHECK(dd.params() == pt.params());
        CHECK(dd.column_degrees() == pt.column_degrees());
        CHECK(proportional(pluecker_point(dd), pluecker_point(pt)));

        // the canonical representative is a strict fixed point
        SheafMapPoint d1 = dualize(pt);
        SheafMapPoint d3 = dualize(dd);
        CHECK(point_to_json(d3) == point_to_json(d1));

        // and double-dual is the identity on canonical representatives
        SheafMapPoint canonical = dd;
        CHECK(point_to_json(dualize(dualize(canonical))) == point_to_json(canonical));
    }
}

TEST_CASE("outputs are representative independent") {
    FieldSpec F = FieldSpec::prime_field(101);
    ModuliParams params = ModuliParams::checked(4, 2, 3);
    std::uniform_int_distribution<long> dist(0, 100);
    for (int trial = 0; trial < 8; ++trial) {
        SheafMapPoint pt = testutil::random_balanced_point(F, params, rng);
        // column operation: add (form of degree a_0 - a_1) * col_1 to col_0,
        // and rescale col_1; this is an automorphism of E
        const auto& a = pt.column_degrees();
        BinaryForm f(F, a[0] - a[1]);
        for (int k = 0; k <= f.degree(); ++k) f.set_coeff(k, Scalar(F, dist(rng)));
        Scalar unit(F, 1 + dist(rng) % 99);
        std::vector<std::vector<BinaryForm>> entries(params.n);
        for (int i = 0; i < params.n; ++i) {
            entries[i].push_back(pt.entry(i, 0) + f * pt.entry(i, 1));
            entries[i].push_back(pt.entry(i, 1) * unit);
        }
        SheafMapPoint other(params, F, a, std::move(entries));

        for (int m = params.ceil_d_s(); m <= params.d; ++m) {
            CHECK(check_star(pt, m).ok == check_star(other, m).ok);
            if (check_star(pt, m).ok)
                CHECK(h0_subspace(pt, m) == h0_subspace(other, m));
        }
        CHECK(proportional(pluecker_point(pt), pluecker_point(other)));
    }
}

TEST_CASE("point json round trip") {
    SheafMapPoint pt = make_point(Q, 2, 0, 2, {1, 1}, {{"x", "0"}, {"0", "y"}});
    json j = point_to_json(pt);
    SheafMapPoint back = point_from_json(j);
    CHECK(point_to_json(back) == j);
    CHECK(back.entry(1, 1).str() == "y");

    FieldSpec F = FieldSpec::prime_field(101);
    SheafMapPoint ptp = make_point(F, 2, 0, 1, {1, 0}, {{"x", "0"}, {"y", "1"}});
    json jp = point_to_json(ptp);
    CHECK(point_from_json(jp).field().characteristic() == 101);

    json bad = jp;
    bad["entries"][0][0] = "x + q";
    CHECK_THROWS_AS(point_from_json(bad), ParseError);
}
