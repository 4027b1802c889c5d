#pragma once

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "symcoord/asymptotic.hpp"
#include "symcoord/diagonal.hpp"
#include "symcoord/numeric.hpp"
#include "symcoord/operators.hpp"

namespace symcoord {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = true;
    std::string detail;  // diagnostics on failure, summary stats otherwise
};

namespace selftest {

inline CriterionResult duality_matrices(int jobs) {
    CriterionResult res{1, "duality matrix D_d u_r = delta_{d,r}, N = 1..6"};
    for (int N = 1; N <= 6; ++N) {
        DualityReport rep = check_duality(N, jobs);
        if (!rep.ok) {
            res.pass = false;
            res.detail += "N=" + std::to_string(N) + ": " + rep.failures.front() + " ";
        }
    }
    return res;
}

inline CriterionResult operator_on_e_basis(int jobs) {
    CriterionResult res{2, "D_d on e_h and etilde_lambda closed forms"};
    for (int N = 2; N <= 6; ++N)
        for (int d = 1; d <= N; ++d) {
            for (int h = d; h <= N; ++h) {
                SparsePoly lhs = apply_Dd(d, elementary_full(h, N), jobs);
                SparsePoly rhs =
                    elementary_full(h - d, N) * Rational(falling_factorial(N - h + d, d));
                if (!(lhs == rhs)) {
                    res.pass = false;
                    res.detail += "e_h case N=" + std::to_string(N) + " d=" +
                                  std::to_string(d) + " h=" + std::to_string(h) + " ";
                }
            }
            for (int r = 1; r <= 5; ++r)
                for (auto& lam : enumerate_partitions(r)) {
                    if (lam.max_part() > N) continue;
                    SymExpr expr(N, Basis::etilde);
                    expr.add(lam, 1);
                    SparsePoly lhs = apply_Dd(d, expand_symexpr(expr), jobs);
                    SparsePoly rhs = expand_symexpr(apply_Dd_etilde(d, expr));
                    if (!(lhs == rhs)) {
                        res.pass = false;
                        res.detail += "etilde case N=" + std::to_string(N) + " d=" +
                                      std::to_string(d) + " lam=" + lam.str() + " ";
                    }
                }
        }
    return res;
}

inline CriterionResult diagonal_vanishing() {
    CriterionResult res{3, "order-d patterns (d != r) kill u_r on the diagonal"};
    for (int N = 2; N <= 5; ++N)
        for (int r = 1; r <= N; ++r) {
            for (int d = 1; d <= r + 1; ++d) {
                for (auto& sigma : enumerate_partitions(d)) {
                    if (sigma.length() > N) continue;
                    bool vanishes = check_diagonal_vanishing(r, sigma, N);
                    if (d != r && !vanishes) {
                        res.pass = false;
                        res.detail += "nonzero: N=" + std::to_string(N) + " r=" +
                                      std::to_string(r) + " sigma=" + sigma.str() + " ";
                    }
                }
            }
            // diagonal values: u_1 = a, u_r = 0 for r >= 2
            std::vector<Rational> diag(N, Rational(5));
            Rational v = u_poly(r, N).evaluate(diag);
            if ((r == 1 && v != 5) || (r >= 2 && v != 0)) {
                res.pass = false;
                res.detail += "diag value: N=" + std::to_string(N) + " r=" +
                              std::to_string(r) + " ";
            }
        }
    return res;
}

inline CriterionResult combination_coefficients() {
    CriterionResult res{4, "three constructions of partial^g agree, g <= 6"};
    for (int g = 1; g <= 6; ++g) {
        auto direct = diag_combo(g);
        if (!(diag_combo_via_bell(g) == direct) ||
            !(diag_combo_via_recursion(g) == direct)) {
            res.pass = false;
            res.detail += "mismatch at g=" + std::to_string(g) + " ";
        }
    }
    auto c2 = diag_combo(2);
    auto c3 = diag_combo(3);
    if (c2.terms.at(Partition::parse("[1,1]")) != 1 ||
        c2.terms.at(Partition::parse("[2]")) != -1 ||
        c3.terms.at(Partition::parse("[1,1,1]")) != 1 ||
        c3.terms.at(Partition::parse("[2,1]")) != Rational(-3, 2) ||
        c3.terms.at(Partition::parse("[3]")) != Rational(1, 2)) {
        res.pass = false;
        res.detail += "hand values for g in {2,3} ";
    }
    return res;
}

inline CriterionResult limit_consistency() {
    CriterionResult res{5, "diagonal formulas equal extrapolated generic limits"};
    struct Case {
        FunctionOracle phi;
        std::vector<int> I, J;
        Rational y;
        std::map<int, Rational> others;
    };
    auto eLam = [](const char* s, int N) {
        SymExpr e(N, Basis::e);
        e.add(Partition::parse(s), 1);
        return FunctionOracle::from_poly(expand_symexpr(e));
    };
    auto traceK = [](int k, int N) {
        std::vector<Rational> f(k + 1, 0);
        f[k] = 1;
        return FunctionOracle::from_trace(f, N);
    };
    std::vector<Case> cases = {
        {eLam("[2]", 2), {0, 1}, {0, 1}, 3, {}},
        {traceK(3, 2), {0, 1}, {0, 1}, 2, {}},
        {eLam("[3]", 3), {0, 1, 2}, {0, 1}, 2, {{2, 9}}},
        {eLam("[2,1]", 3), {0, 1, 2}, {1, 2}, 4, {{0, 1}}},
        {traceK(4, 3), {0, 1, 2}, {0, 1, 2}, 1, {}},
        {eLam("[1,1,1]", 3), {0, 1, 2}, {0, 1}, 7, {{2, 3}}},
        {eLam("[2]", 4), {0, 1, 2, 3}, {0, 1}, 3, {{2, 7}, {3, 11}}},
        {eLam("[4]", 4), {0, 1, 2, 3}, {0, 1, 2, 3}, 2, {}},
        {traceK(5, 4), {0, 1, 2}, {0, 1}, 5, {{2, 2}}},
        {traceK(6, 4), {0, 1, 2, 3}, {0, 1, 2, 3}, 1, {}},
        {eLam("[3,1]", 4), {0, 1, 2, 3}, {1, 2, 3}, 2, {{0, 9}}},
        {eLam("[2,2]", 4), {0, 1, 2, 3}, {2, 3}, -3, {{0, 1}, {1, 6}}},
    };
    int idx = 0;
    for (auto& c : cases) {
        ++idx;
        LimitReport rep = limit_check(c.I, c.J, c.y, c.others, c.phi);
        if (!rep.pass || rep.rel_err >= 1e-7) {
            res.pass = false;
            std::ostringstream os;
            os << "case " << idx << " rel_err=" << rep.rel_err << " ";
            res.detail += os.str();
        }
    }
    res.detail += res.pass ? "12 cases" : "";
    return res;
}

inline CriterionResult total_diagonal_trace(int jobs) {
    CriterionResult res{6, "total-diagonal trace values (-1)^{d-1} f^(d)(a)/(d-1)!"};
    std::vector<Rational> f = {-9, 5, -1, 7, 1, -2, 3};  // degree 6
    for (int N = 2; N <= 6; ++N) {
        FunctionOracle tr = FunctionOracle::from_trace(f, N);
        SparsePoly trPoly = oracle_to_poly(tr);
        for (int d = 1; d <= std::min(4, N); ++d)
            for (Rational a : {Rational(1), Rational(-2), Rational(1, 3)}) {
                Rational expected =
                    univariate_eval(univariate_derivative(f, d), a) /
                    Rational(factorial(d - 1));
                if (d % 2 == 0) expected = -expected;
                Rational viaCombo = total_diagonal_Dhat(d, tr, a);
                std::vector<Rational> diag(N, a);
                Rational viaExact = apply_Dhat(d, trPoly, jobs).evaluate(diag);
                if (viaCombo != expected || viaExact != expected) {
                    res.pass = false;
                    res.detail += "N=" + std::to_string(N) + " d=" + std::to_string(d) +
                                  " a=" + to_string(a) + " ";
                }
            }
    }
    return res;
}

inline CriterionResult chain_rule(unsigned seed) {
    CriterionResult res{7, "jacobian chain-rule duality at random points"};
    std::mt19937 rng(seed);
    double worst = 0;
    for (int point = 0; point < 20; ++point)
        for (int N = 2; N <= 4; ++N) {
            SymExpr e(N, Basis::e);
            // rotate through a few symmetric test functions
            switch (point % 4) {
                case 0: e.add(Partition::parse("[2]"), 1); break;
                case 1: e.add(Partition::parse("[2,1]"), 1); break;
                case 2: e.add(Partition::parse("[1,1]"), 1); break;
                default: e.add(Partition::parse("[2]"), 2);
                         e.add(Partition::parse("[1,1,1]"), -1); break;
            }
            FunctionOracle phi = FunctionOracle::from_poly(expand_symexpr(e));
            JacobianReport rep = jacobian_check(N, phi, random_distinct_point(N, rng));
            worst = std::max(worst, rep.max_rel_err);
            if (!(rep.chain_values == rep.direct_values) || rep.max_rel_err >= 1e-9) {
                res.pass = false;
                res.detail += "N=" + std::to_string(N) + " point " +
                              std::to_string(point) + " ";
            }
        }
    if (res.pass) {
        std::ostringstream os;
        os << "max rel err " << worst;
        res.detail = os.str();
    }
    return res;
}

inline CriterionResult pure_derivative_normalization() {
    CriterionResult res{8, "pure pattern (-1)^{r-1}(r-1)!/N^r; mixed decay >= r+1"};
    for (int r = 1; r <= 6; ++r) {
        auto pure = derivative_constant(r, Partition(std::vector<int>{r}));
        std::vector<Int> den(r + 1, 0);
        den[r] = 1;
        RationalOfN expected(
            UniPoly::constant(Int(r % 2 ? 1 : -1) * factorial(r - 1)), UniPoly(den));
        if (!(pure.value == expected)) {
            res.pass = false;
            res.detail += "pure r=" + std::to_string(r) + " ";
        }
        for (auto& sigma : enumerate_partitions(r)) {
            if (sigma.length() < 2) continue;
            if (derivative_constant(r, sigma).value.decay_order() < r + 1) {
                res.pass = false;
                res.detail += "mixed sigma=" + sigma.str() + " ";
            }
        }
    }
    return res;
}

inline CriterionResult conjecture_evidence() {
    CriterionResult res{9, "reported decay >= r + l(sigma) - 1 for all sigma, r <= 6"};
    int meets = 0, exceeds = 0, violations = 0;
    for (auto& row : decay_table(6)) {
        if (row.status == "meets") ++meets;
        else if (row.status == "exceeds") ++exceeds;
        else ++violations;
    }
    std::ostringstream os;
    os << meets << " meets, " << exceeds << " exceeds, " << violations << " violations";
    res.detail = os.str();
    if (violations > 0)
        res.detail += "  ** CONJECTURED BOUND VIOLATED (reported, not a failure) **";
    // reported evidence, never a build failure
    return res;
}

inline CriterionResult power_sum_limit() {
    CriterionResult res{10, "uhat_r -> (-1)^{r-1} p_r/r with decay >= 1 per coefficient"};
    for (int r = 1; r <= 4; ++r) {
        auto rep = limit_to_power_sum(r, {2, 3, 4, 5, 6});
        if (!rep.all_decay_ge1) {
            res.pass = false;
            res.detail += "decay < 1 at r=" + std::to_string(r) + " ";
        }
        for (auto& [n, eq] : rep.equality_at) {
            bool want = (r == 1);
            if (eq != want) {
                res.pass = false;
                res.detail += "equality flag r=" + std::to_string(r) + " N=" +
                              std::to_string(n) + " ";
            }
        }
        if (r == 1 && !rep.rows[0].diff.is_zero()) {
            res.pass = false;
            res.detail += "uhat_1 != p_1 ";
        }
    }
    return res;
}

inline CriterionResult two_pipeline_constants() {
    CriterionResult res{11, "derivative constants equal direct differentiation of u_r"};
    for (int r = 1; r <= 5; ++r)
        for (auto& sigma : enumerate_partitions(r))
            for (int N = r; N <= 6; ++N) {
                SparsePoly p = u_poly(r, N);
                int var = 0;
                for (int s : sigma.parts()) {
                    for (int q = 0; q < s; ++q) p = p.partial_derivative(var);
                    ++var;
                }
                Rational direct = p.constant_value();
                if (derivative_constant(r, sigma).value.evaluate(N) != direct) {
                    res.pass = false;
                    res.detail += "r=" + std::to_string(r) + " sigma=" + sigma.str() +
                                  " N=" + std::to_string(N) + " ";
                }
            }
    return res;
}

}  // namespace selftest

inline std::vector<CriterionResult> run_acceptance(unsigned seed = 20240817, int jobs = 1) {
    return {
        selftest::duality_matrices(jobs),
        selftest::operator_on_e_basis(jobs),
        selftest::diagonal_vanishing(),
        selftest::combination_coefficients(),
        selftest::limit_consistency(),
        selftest::total_diagonal_trace(jobs),
        selftest::chain_rule(seed),
        selftest::pure_derivative_normalization(),
        selftest::conjecture_evidence(),
        selftest::power_sum_limit(),
        selftest::two_pipeline_constants(),
    };
}

}  // namespace symcoord
