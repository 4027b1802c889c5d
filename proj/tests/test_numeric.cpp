#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "symcoord/numeric.hpp"

using namespace symcoord;

TEST_CASE("finite differences match exact derivatives") {
    FunctionOracle sq = FunctionOracle::from_poly(
        SparsePoly::variable(1, 0) * SparsePoly::variable(1, 0));
    CHECK(std::fabs(fd_partial(sq, {1}, {3.0}) - 6.0) < 1e-9);

    FunctionOracle e2 = FunctionOracle::from_poly(elementary_full(2, 3));
    CHECK(e2.partial({1, 1, 0}, {1, 2, 3}) == 1);  // exact path
    CHECK(std::fabs(fd_partial(e2, {1, 1, 0}, {1.0, 2.0, 3.0}) - 1.0) < 1e-6);

    // mixed third derivative of x^2 y
    SparsePoly x = SparsePoly::variable(2, 0), y = SparsePoly::variable(2, 1);
    FunctionOracle x2y = FunctionOracle::from_poly(x * x * y);
    CHECK(std::fabs(fd_partial(x2y, {2, 1}, {1.5, -2.0}) - 2.0) < 1e-4);
}

TEST_CASE("gradient harness carries its exact shadow") {
    FunctionOracle phi = FunctionOracle::from_poly(elementary_full(2, 3));
    GradientReport rep = fd_gradient(phi, {1.0, 2.0, 3.0});
    REQUIRE(rep.exact.size() == 3);
    CHECK(rep.exact[0] == 5);
    CHECK(rep.exact[1] == 4);
    CHECK(rep.exact[2] == 3);
    CHECK(rep.max_rel_err < 1e-7);
}

TEST_CASE("chain rule: hand-checked N=2 case") {
    // phi = x^2 + y^2 = 2 u_1^2 N^2/... in u-coordinates; the solved u-gradient
    // must match D_d phi directly.
    FunctionOracle phi = FunctionOracle::from_poly(power_sum(2, 2));
    std::vector<Rational> pt = {3, 7};
    JacobianReport rep = jacobian_check(2, phi, pt);
    CHECK(rep.pass);
    CHECK(rep.chain_values == rep.direct_values);  // both exact pipelines
    // hand algebra: p_2 = 2 u_1^2 - 4 u_2 at N=2, so phi_{u_1} = 4 u_1 = 2(x+y)
    CHECK(rep.chain_values[0] == 2 * (3 + 7));
    CHECK(rep.chain_values[1] == -4);
}

TEST_CASE("chain rule: u_r expressed back gives a standard basis vector") {
    int N = 3;
    for (int r = 1; r <= N; ++r) {
        FunctionOracle phi = FunctionOracle::from_poly(u_poly(r, N));
        JacobianReport rep = jacobian_check(N, phi, {2, 5, 11});
        CHECK(rep.pass);
        for (int d = 1; d <= N; ++d)
            CHECK(rep.chain_values[d - 1] == ((d == r) ? 1 : 0));
    }
}

TEST_CASE("chain rule at random integer points") {
    std::mt19937 rng(4242);
    for (int N = 2; N <= 4; ++N) {
        SparsePoly p = elementary_full(1, N) * elementary_full(2, N);
        FunctionOracle phi = FunctionOracle::from_poly(p);
        for (int trial = 0; trial < 5; ++trial) {
            JacobianReport rep = jacobian_check(N, phi, random_distinct_point(N, rng));
            CHECK(rep.pass);
            CHECK(rep.chain_values == rep.direct_values);
        }
    }
}

TEST_CASE("trace oracles work through the jacobian pipeline") {
    FunctionOracle tr = FunctionOracle::from_trace({0, 0, 0, 1}, 3);  // sum x_i^3
    JacobianReport rep = jacobian_check(3, tr, {1, 2, 4});
    CHECK(rep.pass);
    CHECK(rep.chain_values == rep.direct_values);
    CHECK_THROWS(jacobian_check(3, tr, {1, 1, 4}));
}

TEST_CASE("limit of the generic formula: two-variable full collapse") {
    FunctionOracle phi = FunctionOracle::from_poly(power_sum(2, 2));
    LimitReport rep = limit_check({0, 1}, {0, 1}, 3, {}, phi);
    CHECK(rep.pass);
    CHECK(std::fabs(rep.formula_value + 2.0) < 1e-12);
    CHECK(std::fabs(rep.extrapolated + 2.0) < 1e-7);
}

TEST_CASE("limit of the generic formula: partial collapse in three variables") {
    FunctionOracle phi = FunctionOracle::from_poly(elementary_full(3, 3));
    LimitReport rep = limit_check({0, 1, 2}, {0, 1}, 2, {{2, 9}}, phi);
    CHECK(rep.pass);
    CHECK(rep.rel_err < 1e-8);
    CHECK(rep.observed_order >= 1.0);
}

TEST_CASE("limit check against the trace value on the total diagonal") {
    // N=2, f = x^4, d=2: Dhat_2 = D_{01}; diagonal value (-1) f''(a)/1!
    FunctionOracle tr = FunctionOracle::from_trace({0, 0, 0, 0, 1}, 2);
    Rational a = 2;
    LimitReport rep = limit_check({0, 1}, {0, 1}, a, {}, tr);
    CHECK(rep.pass);
    double expected = -static_cast<double>(univariate_eval(
        univariate_derivative({0, 0, 0, 0, 1}, 2), a));
    CHECK(std::fabs(rep.formula_value - expected) < 1e-12);
    CHECK(total_diagonal_Dhat(2, tr, a) == Rational(-48));
}
