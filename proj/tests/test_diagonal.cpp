#include <catch2/catch_amalgamated.hpp>

#include "symcoord/diagonal.hpp"
#include "symcoord/operators.hpp"

using namespace symcoord;

TEST_CASE("combination coefficients: hand values for g = 1, 2, 3") {
    auto c1 = diag_combo(1);
    CHECK(c1.terms.size() == 1);
    CHECK(c1.terms.at(Partition::parse("[1]")) == 1);

    auto c2 = diag_combo(2);
    CHECK(c2.terms.at(Partition::parse("[1,1]")) == 1);
    CHECK(c2.terms.at(Partition::parse("[2]")) == -1);

    auto c3 = diag_combo(3);
    CHECK(c3.terms.at(Partition::parse("[1,1,1]")) == 1);
    CHECK(c3.terms.at(Partition::parse("[2,1]")) == Rational(-3, 2));
    CHECK(c3.terms.at(Partition::parse("[3]")) == Rational(1, 2));
}

TEST_CASE("three independent constructions of the combination agree") {
    for (int g = 1; g <= 6; ++g) {
        auto direct = diag_combo(g);
        CHECK(diag_combo_via_bell(g) == direct);
        CHECK(diag_combo_via_recursion(g) == direct);
    }
}

TEST_CASE("symmetrized partial: assignment invariance on a coincident block") {
    // phi = e_3 in 4 vars, block J = {0,1,2} at common value 2
    FunctionOracle phi = FunctionOracle::from_poly(elementary_full(3, 4));
    std::vector<Rational> pt = {2, 2, 2, 5};
    Partition sigma = Partition::parse("[2,1]");
    // manual reassignments of the parts to block indices
    std::vector<std::vector<int>> assignments = {{2, 1, 0}, {0, 2, 1}, {1, 0, 2}};
    Rational ref = symmetrized_partial({0, 1, 2}, sigma, phi, pt);
    for (auto& J : assignments) {
        std::vector<int> orders(4, 0);
        for (size_t q = 0; q < sigma.parts().size(); ++q)
            orders[J[q]] = sigma.parts()[q];
        CHECK(phi.partial(orders, pt) == ref);
    }
    CHECK_THROWS(symmetrized_partial({0, 1}, Partition::parse("[1,1,1]"), phi, pt));
}

TEST_CASE("symmetrized partial examples from elementary and trace functions") {
    int N = 4, h = 3;
    FunctionOracle phi = FunctionOracle::from_poly(elementary_full(h, N));
    std::vector<Rational> pt = {2, 2, 7, 11};
    // sigma=(1,1) on {0,1}: mixed partial = e_{h-2} of the complement
    Rational mixed = symmetrized_partial({0, 1}, Partition::parse("[1,1]"), phi, pt);
    CHECK(mixed == elementary(h - 2, {2, 3}, N).evaluate(pt));
    // sigma=(2): repeated derivative of a multilinear function vanishes
    CHECK(symmetrized_partial({0, 1}, Partition::parse("[2]"), phi, pt) == 0);

    // trace functions: any genuinely mixed pattern vanishes
    FunctionOracle tr = FunctionOracle::from_trace({0, 0, 0, 1}, N);  // f = x^3
    CHECK(symmetrized_partial({0, 1}, Partition::parse("[1,1]"), tr, pt) == 0);
    CHECK(symmetrized_partial({0, 1, 2}, Partition::parse("[2,1]"), tr, pt) == 0);
    CHECK(symmetrized_partial({0, 1}, Partition::parse("[2]"), tr, pt) == 12);  // f''(2)
}

TEST_CASE("one coincident block: base case and the N=2 example") {
    // |J| = 1 reduces to the generic D_I formula
    FunctionOracle phi = FunctionOracle::from_poly(elementary_full(2, 3));
    std::vector<int> I = {0, 1, 2};
    Rational y = 2;
    std::map<int, Rational> others = {{1, 5}, {2, 11}};
    Rational viaBlock = apply_DI_one_block(I, {0}, y, others, phi);
    std::vector<Rational> pt = {2, 5, 11};
    Rational generic = 0;
    for (int i : I) {
        std::vector<int> orders(3, 0);
        orders[i] = 1;
        Rational den = 1;
        for (int j : I)
            if (j != i) den *= (pt[j] - pt[i]);
        generic += phi.partial(orders, pt) / den;
    }
    CHECK(viaBlock == generic);

    // N=2, I=J, phi = x^2+y^2: combination value phi_xy - phi_xx = -2
    FunctionOracle p2 = FunctionOracle::from_poly(power_sum(2, 2));
    CHECK(apply_DI_one_block({0, 1}, {0, 1}, 3, {}, p2) == -2);

    CHECK_THROWS(apply_DI_one_block(I, {0}, y, {{1, y}, {2, 11}}, phi));
}

TEST_CASE("one coincident block equals the exact collapsed divided difference") {
    // D_I phi is a polynomial for symmetric phi; specializing it to the
    // coincidence point must equal the diagonal formula.
    for (int N : {3, 4}) {
        SparsePoly p = elementary_full(2, N) * elementary_full(1, N);
        FunctionOracle phi = FunctionOracle::from_poly(p);
        std::vector<int> I, J;
        for (int i = 0; i < N; ++i) I.push_back(i);
        J = {0, 1};
        std::map<int, Rational> others;
        std::vector<Rational> pt(N);
        pt[0] = pt[1] = 3;
        for (int k = 2; k < N; ++k) {
            others[k] = 5 + 2 * k;
            pt[k] = others[k];
        }
        SparsePoly exact = apply_DI_poly(p, I);
        CHECK(apply_DI_one_block(I, J, 3, others, phi) == exact.evaluate(pt));
    }
}

TEST_CASE("general pattern reduces to the one-block and generic forms") {
    int N = 4;
    SparsePoly p = elementary_full(3, N);
    FunctionOracle phi = FunctionOracle::from_poly(p);

    // all singletons = generic evaluation of the exact polynomial
    std::vector<std::vector<int>> singletons = {{0}, {1}, {2}, {3}};
    std::vector<Rational> vals = {1, 4, 9, 16};
    SparsePoly exact = apply_DI_poly(p, {0, 1, 2, 3});
    CHECK(apply_DI_general(singletons, vals, phi) == exact.evaluate({1, 4, 9, 16}));

    // one nontrivial block + singletons = apply_DI_one_block
    std::vector<std::vector<int>> blocks = {{0, 1}, {2}, {3}};
    std::vector<Rational> ys = {3, 7, 12};
    CHECK(apply_DI_general(blocks, ys, phi) ==
          apply_DI_one_block({0, 1, 2, 3}, {0, 1}, 3, {{2, 7}, {3, 12}}, phi));

    CHECK_THROWS(apply_DI_general({{0, 1}, {2, 3}}, {5, 5}, phi));
}

TEST_CASE("D_d at a point: first-order and second-order displays") {
    int N = 5;
    SparsePoly p = elementary_full(3, N) * elementary_full(1, N);
    FunctionOracle phi = FunctionOracle::from_poly(p);
    CoincidencePattern pat;
    pat.blocks = {{0, 1}, {2, 3}, {4}};
    pat.values = {2, 5, 9};
    std::vector<Rational> pt = pat.point();

    // D_1 phi = sum_alpha |H_alpha| partial^1_{H_alpha} phi
    Rational d1 = 0;
    for (size_t a = 0; a < pat.blocks.size(); ++a)
        d1 += Rational(pat.blocks[a].size()) * diag_partial(pat.blocks[a], 1, phi, pt);
    CHECK(apply_Dd_at_point(1, pat, phi) == d1);

    // D_2 phi = 2 sum_{a} sum_{b != a} |H_a||H_b| partial^1_{H_a} phi/(y_b-y_a)
    //         + sum_a |H_a|(|H_a|-1) partial^2_{H_a} phi
    Rational d2 = 0;
    for (size_t a = 0; a < pat.blocks.size(); ++a) {
        for (size_t b = 0; b < pat.blocks.size(); ++b) {
            if (b == a) continue;
            d2 += Rational(2) * Rational(pat.blocks[a].size()) *
                  Rational(pat.blocks[b].size()) * diag_partial(pat.blocks[a], 1, phi, pt) /
                  (pat.values[b] - pat.values[a]);
        }
        int Ha = static_cast<int>(pat.blocks[a].size());
        if (Ha >= 2)
            d2 += Rational(Ha) * Rational(Ha - 1) * diag_partial(pat.blocks[a], 2, phi, pt);
    }
    CHECK(apply_Dd_at_point(2, pat, phi) == d2);
}

TEST_CASE("D_d at a point: consistency with the exact operator") {
    // fully distinct values = generic evaluation
    int N = 4;
    SparsePoly p = elementary_full(2, N) * elementary_full(2, N);
    FunctionOracle phi = FunctionOracle::from_poly(p);
    CoincidencePattern generic = CoincidencePattern::detect({1, 4, 9, 16});
    for (int d = 1; d <= 3; ++d)
        CHECK(apply_Dd_at_point(d, generic, phi) ==
              apply_Dd(d, p).evaluate({1, 4, 9, 16}));

    // intermediate pattern: compare against the exact polynomial specialized
    CoincidencePattern mid = CoincidencePattern::detect({3, 3, 9, 16});
    for (int d = 1; d <= 3; ++d)
        CHECK(apply_Dd_at_point(d, mid, phi) == apply_Dd(d, p).evaluate({3, 3, 9, 16}));

    // single block = total diagonal, up to the d! C(N,d) scaling
    CoincidencePattern diag = CoincidencePattern::detect({7, 7, 7, 7});
    for (int d = 1; d <= N; ++d)
        CHECK(apply_Dd_at_point(d, diag, phi) ==
              Rational(falling_factorial(N, d)) * total_diagonal_Dhat(d, phi, 7));
}

TEST_CASE("total diagonal trace values") {
    // f(x) = x^3, d = 3, a = 1: (+1) * 6 / 2! = 3
    FunctionOracle tr3 = FunctionOracle::from_trace({0, 0, 0, 1}, 4);
    CHECK(total_diagonal_Dhat(3, tr3, 1) == 3);

    // f(x) = x^2, d = 1, a = 2: f'(2) = 4
    FunctionOracle tr2 = FunctionOracle::from_trace({0, 0, 1}, 4);
    CHECK(total_diagonal_Dhat(1, tr2, 2) == 4);

    // phi = e_2, N = 3, d = 2, a = 1: D_2 e_2 = N(N-1) e_0 = 6, so Dhat_2 e_2 = 1;
    // the diagonal formula must reproduce the exact pipeline
    FunctionOracle e2 = FunctionOracle::from_poly(elementary_full(2, 3));
    Rational viaExact = apply_Dhat(2, elementary_full(2, 3)).evaluate({1, 1, 1});
    CHECK(viaExact == 1);
    CHECK(total_diagonal_Dhat(2, e2, 1) == viaExact);
}

TEST_CASE("derivative-of-quotient identity over A_{K,nu}") {
    // d^nu/dx_j^nu [psi'(x_j)/prod(x_k - x_j)]
    //   = sum_{A_{K,nu}} nu! psi^(a)(x_j) / ((a-1)! prod (x_k-x_j)^{b_k})
    int nvars = 3;  // x_j = var 0, K = {1, 2}
    std::vector<int> K = {1, 2};
    SparsePoly xj = SparsePoly::variable(nvars, 0);
    SparsePoly psi = xj * xj * xj * xj + xj * xj * Rational(3);  // x^4 + 3x^2
    SparsePoly denom = SparsePoly::constant(nvars, 1);
    for (int k : K) denom *= SparsePoly::variable(nvars, k) - xj;

    for (int nu = 0; nu <= 4; ++nu) {
        RationalFuncX lhs(psi.partial_derivative(0), denom);
        for (int q = 0; q < nu; ++q) lhs = lhs.derivative(0);

        RationalFuncX rhs(SparsePoly(nvars), SparsePoly::constant(nvars, 1));
        for (auto& t : enumerate_A(K, nu)) {
            SparsePoly psiA = psi;
            for (int q = 0; q < t.a; ++q) psiA = psiA.partial_derivative(0);
            SparsePoly d = SparsePoly::constant(nvars, 1);
            for (int k : K)
                for (int q = 0; q < t.b.at(k); ++q)
                    d *= SparsePoly::variable(nvars, k) - xj;
            Rational c = Rational(factorial(nu)) / Rational(factorial(t.a - 1));
            rhs = rhs + RationalFuncX(psiA * c, d);
        }
        CHECK(lhs.equals(rhs));
    }
}

TEST_CASE("composing the diagonal-only formulas is not the true composition") {
    // naive: merge the two combination tables formally and evaluate on the diagonal
    int N = 2;
    SparsePoly p = elementary_full(2, N);
    FunctionOracle phi = FunctionOracle::from_poly(p);
    std::vector<Rational> diag = {4, 4};
    std::vector<int> all = {0, 1};

    Rational naive = 0;
    for (auto& [s1, c1] : diag_combo(1).terms)
        for (auto& [s2, c2] : diag_combo(1).terms)
            naive += c1 * c2 * symmetrized_partial(all, s1.merged(s2), phi, diag);

    Rational truth = apply_Dhat(1, apply_Dhat(1, p)).evaluate(diag);
    CHECK(naive != truth);  // the warned-against shortcut really fails
}

TEST_CASE("local charts per coincidence block") {
    CoincidencePattern pat = CoincidencePattern::detect({5, 5, 2});
    LocalChart chart = local_coordinates(pat);
    REQUIRE(chart.blocks.size() == 2);
    CHECK(chart.blocks[0].vars == std::vector<int>{0, 1});
    REQUIRE(chart.blocks[0].coords.size() == 2);
    // uhat_2 in 2 local variables is proportional to (x-y)^2
    SparsePoly x = SparsePoly::variable(2, 0), y = SparsePoly::variable(2, 1);
    CHECK(chart.blocks[0].coords[1] == (x - y) * (x - y) * Rational(-1, 4));
    CHECK(chart.blocks[1].coords.size() == 1);

    // trace derivatives: blocks (2,1), f = x^3
    auto ders = chart_trace_derivatives(pat, {0, 0, 0, 1});
    REQUIRE(ders.size() == 2);
    CHECK(ders[0][0] == 75);    // f'(5)
    CHECK(ders[0][1] == -30);   // -f''(5)/1!
    CHECK(ders[1][0] == 12);    // f'(2)
}

TEST_CASE("floating-point pattern detection groups near-coincident values") {
    auto pat = CoincidencePattern::detect_double({1.0, 1.0 + 1e-12, 2.0});
    CHECK(pat.blocks.size() == 2);
    auto fine = CoincidencePattern::detect_double({1.0, 1.0 + 1e-3, 2.0});
    CHECK(fine.blocks.size() == 3);
}
