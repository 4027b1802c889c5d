#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "symcoord/operators.hpp"

using namespace symcoord;

TEST_CASE("D_I on elementary symmetric functions") {
    int N = 4;
    // single index: partial derivative, e_{h-1} over the complement
    for (int h = 1; h <= N; ++h)
        CHECK(apply_DI_poly(elementary_full(h, N), {1}) == elementary(h - 1, {0, 2, 3}, N));

    // |I| = 2: e_h -> e_{h-2}(x_{I^c})
    for (int h = 2; h <= N; ++h)
        CHECK(apply_DI_poly(elementary_full(h, N), {0, 2}) == elementary(h - 2, {1, 3}, N));

    // |I| = 3 in 3 variables: kills e_0..e_2, sends e_3 to 1
    for (int h = 0; h <= 2; ++h)
        CHECK(apply_DI_poly(elementary_full(h, 3), {0, 1, 2}).is_zero());
    CHECK(apply_DI_poly(elementary_full(3, 3), {0, 1, 2}) == SparsePoly::constant(3, 1));

    // D_I e_l(x_I) = delta_{l,d}
    std::vector<int> I = {0, 1, 3};
    for (int l = 0; l <= 3; ++l) {
        SparsePoly img = apply_DI_poly(elementary(l, I, N), I);
        if (l == 3) CHECK(img == SparsePoly::constant(N, 1));
        else CHECK(img.is_zero());
    }
}

TEST_CASE("apply_DI rational arm for non-symmetric input") {
    SparsePoly x = SparsePoly::variable(2, 0);
    auto res = apply_DI({0, 1}, x * x * x, false);
    REQUIRE(std::holds_alternative<RationalFuncX>(res));
    // D_{12} x^3 = 3x^2/(y-x)
    RationalFuncX expected(SparsePoly::variable(2, 0, 2) * Rational(3),
                           SparsePoly::variable(2, 1) - SparsePoly::variable(2, 0));
    CHECK(std::get<RationalFuncX>(res).equals(expected));
    CHECK_THROWS_AS(apply_DI({0, 1}, x * x * x, true), NotDivisibleError);

    // symmetric input returns the polynomial arm
    auto sym = apply_DI({0, 1}, elementary_full(2, 2), false);
    CHECK(std::holds_alternative<SparsePoly>(sym));
}

TEST_CASE("D_d e_h = ((N-h+d)!/(N-h)!) e_{h-d}") {
    for (int N = 2; N <= 5; ++N)
        for (int d = 1; d <= N; ++d)
            for (int h = d; h <= N; ++h) {
                SparsePoly lhs = apply_Dd(d, elementary_full(h, N));
                SparsePoly rhs = elementary_full(h - d, N) *
                                 Rational(falling_factorial(N - h + d, d));
                CHECK(lhs == rhs);
            }
}

TEST_CASE("N=2: D_2 (x^2+y^2) = -4") {
    SparsePoly p = power_sum(2, 2);
    CHECK(apply_Dd(2, p) == SparsePoly::constant(2, -4));
}

TEST_CASE("subset sum agrees with the etilde recursion") {
    for (int N = 2; N <= 5; ++N)
        for (int r = 1; r <= std::min(N, 4); ++r)
            for (auto& lam : enumerate_partitions(r)) {
                if (lam.max_part() > N) continue;
                SymExpr expr(N, Basis::etilde);
                expr.add(lam, 1);
                SparsePoly viaSubsets = expand_symexpr(expr);
                for (int d = 1; d <= N; ++d) {
                    SparsePoly a = apply_Dd(d, viaSubsets);
                    SparsePoly b = expand_symexpr(apply_Dd_etilde(d, expr));
                    CHECK(a == b);
                }
            }
}

TEST_CASE("linearity, degree lowering, symmetry preservation") {
    int N = 4;
    SparsePoly p = elementary_full(3, N);
    SparsePoly q = elementary_full(2, N) * elementary_full(1, N);
    for (int d = 1; d <= 3; ++d) {
        CHECK(apply_Dd(d, p * Rational(3) + q * Rational(-5)) ==
              apply_Dd(d, p) * Rational(3) + apply_Dd(d, q) * Rational(-5));
        SparsePoly img = apply_Dd(d, q);
        CHECK(img.is_symmetric());
        if (!img.is_zero()) CHECK(img.total_degree() == 3 - d);
    }
}

TEST_CASE("parallel subset summation is identical to serial") {
    int N = 5;
    SparsePoly p = elementary_full(3, N) * elementary_full(2, N);
    for (int d = 1; d <= 3; ++d)
        CHECK(apply_Dd(d, p, 4) == apply_Dd(d, p, 1));
}

TEST_CASE("duality: D_d u_r = delta_{d,r}") {
    for (int N = 1; N <= 4; ++N) {
        DualityReport rep = check_duality(N);
        CHECK(rep.ok);
        for (int d = 1; d <= N; ++d)
            for (int r = 1; r <= N; ++r)
                CHECK(rep.matrix[d - 1][r - 1] == ((d == r) ? 1 : 0));
    }
}

TEST_CASE("Dhat is the average of the D_I") {
    int N = 4;
    SparsePoly p = elementary_full(3, N);
    for (int d = 1; d <= N; ++d)
        CHECK(apply_Dhat(d, p) * Rational(falling_factorial(N, d)) == apply_Dd(d, p));
}

TEST_CASE("Weyl commutator [D_d, u_r] = delta_{d,r}") {
    int N = 3;
    CHECK(check_weyl_commutator(1, 1, elementary_full(2, N)));
    CHECK(check_weyl_commutator(1, 2, elementary_full(1, N)));
    CHECK(check_weyl_commutator(2, 2, elementary_full(1, N)));
    CHECK(check_weyl_commutator(2, 1, elementary_full(2, N)));

    // the D_d commute with one another
    SparsePoly psi = elementary_full(1, 4) * elementary_full(3, 4);
    CHECK(apply_Dd(1, apply_Dd(2, psi)) == apply_Dd(2, apply_Dd(1, psi)));
}

TEST_CASE("compositions D_lambda") {
    int N = 3;
    CHECK(apply_Dlambda(Partition::parse("[1,1]"), u_poly(2, N)).is_zero());
    CHECK(apply_Dlambda(Partition::parse("[2]"), u_poly(2, N)) ==
          SparsePoly::constant(N, 1));
    // Leibniz: D_1 (u_1 u_1) = 2 u_1
    CHECK(apply_Dlambda(Partition::parse("[1]"), u_poly(1, N) * u_poly(1, N)) ==
          u_poly(1, N) * Rational(2));
}

TEST_CASE("Leibniz rule for D_d at generic points via the etilde basis") {
    // D_d acts as a derivation on products of etilde generators
    int N = 5, d = 1;
    SymExpr a(N, Basis::etilde), b(N, Basis::etilde);
    a.add(Partition::parse("[2]"), 1);
    b.add(Partition::parse("[3]"), 1);
    SparsePoly pa = expand_symexpr(a), pb = expand_symexpr(b);
    CHECK(apply_Dd(d, pa * pb) ==
          apply_Dd(d, pa) * pb + pa * apply_Dd(d, pb));
}
