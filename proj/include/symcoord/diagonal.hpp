#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "symcoord/index_sets.hpp"
#include "symcoord/oracle.hpp"
#include "symcoord/symmetric.hpp"

namespace symcoord {

/// Grouping of {0..N-1} into blocks of coincident variable values.
struct CoincidencePattern {
    std::vector<std::vector<int>> blocks;  // H_alpha, ascending indices
    std::vector<Rational> values;          // y_alpha, pairwise distinct

    int nvars() const {
        int n = 0;
        for (auto& b : blocks) n += static_cast<int>(b.size());
        return n;
    }

    std::vector<Rational> point() const {
        std::vector<Rational> x(nvars());
        for (size_t a = 0; a < blocks.size(); ++a)
            for (int i : blocks[a]) x[i] = values[a];
        return x;
    }

    /// Exact grouping by equal values.
    static CoincidencePattern detect(const std::vector<Rational>& x) {
        CoincidencePattern pat;
        for (int i = 0; i < static_cast<int>(x.size()); ++i) {
            bool placed = false;
            for (size_t a = 0; a < pat.values.size(); ++a)
                if (pat.values[a] == x[i]) {
                    pat.blocks[a].push_back(i);
                    placed = true;
                    break;
                }
            if (!placed) {
                pat.blocks.push_back({i});
                pat.values.push_back(x[i]);
            }
        }
        return pat;
    }

    /// Floating grouping: values within rel_tol of a block representative merge
    /// into it.  The formulas change form (not value) across patterns, so the
    /// grouping is explicit in the result.
    static CoincidencePattern detect_double(const std::vector<double>& x,
                                            double rel_tol = 1e-9) {
        CoincidencePattern pat;
        std::vector<double> reps;
        for (int i = 0; i < static_cast<int>(x.size()); ++i) {
            bool placed = false;
            for (size_t a = 0; a < reps.size(); ++a) {
                double scale = std::max({std::fabs(reps[a]), std::fabs(x[i]), 1.0});
                if (std::fabs(x[i] - reps[a]) <= rel_tol * scale) {
                    pat.blocks[a].push_back(i);
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                pat.blocks.push_back({i});
                reps.push_back(x[i]);
                pat.values.emplace_back(x[i]);
            }
        }
        return pat;
    }
};

// ---- the combinations partial_J^g -----------------------------------------

/// Coefficient table of partial^g: map sigma |- g -> rational coefficient.
struct DiagDerivativeCombo {
    int g = 0;
    std::map<Partition, Rational> terms;

    bool operator==(const DiagDerivativeCombo& o) const {
        return g == o.g && terms == o.terms;
    }
};

/// Closed form: coefficient of sigma is (-1)^{g-l} g (l-1)! / prod_h h!^{m_h} m_h!.
inline DiagDerivativeCombo diag_combo(int g) {
    if (g < 1) throw std::invalid_argument("g must be positive");
    DiagDerivativeCombo combo;
    combo.g = g;
    for (const Partition& sigma : enumerate_partitions(g)) {
        int l = sigma.length();
        Rational denom = 1;
        for (auto& [h, m] : sigma.multiplicities()) {
            for (int k = 0; k < m; ++k) denom *= Rational(factorial(h));
            denom *= Rational(factorial(m));
        }
        Rational c = Rational(g) * Rational(factorial(l - 1)) / denom;
        if ((g - l) % 2) c = -c;
        combo.terms[sigma] = c;
    }
    return combo;
}

namespace detail {

/// Formal linear combination of derivative patterns; product merges patterns.
struct FormalCombo {
    std::map<Partition, Rational> terms;

    FormalCombo operator+(const FormalCombo& o) const {
        FormalCombo r = *this;
        for (auto& [k, c] : o.terms) {
            r.terms[k] += c;
            if (r.terms[k] == 0) r.terms.erase(k);
        }
        return r;
    }

    FormalCombo operator*(const FormalCombo& o) const {
        FormalCombo r;
        for (auto& [k1, c1] : terms)
            for (auto& [k2, c2] : o.terms) {
                r.terms[k1.merged(k2)] += c1 * c2;
                if (r.terms[k1.merged(k2)] == 0) r.terms.erase(k1.merged(k2));
            }
        return r;
    }

    FormalCombo operator*(const Rational& s) const {
        FormalCombo r;
        if (s == 0) return r;
        for (auto& [k, c] : terms) r.terms.emplace(k, c * s);
        return r;
    }
};

}  // namespace detail

/// Ordinary-Bell route: (-1)^g g sum_t Bhat_{g,t}(z)/t with z_h the pure h-th
/// derivative scaled by -1/h!.  Must agree with diag_combo.
inline DiagDerivativeCombo diag_combo_via_bell(int g) {
    if (g < 1) throw std::invalid_argument("g must be positive");
    detail::FormalCombo acc;
    for (int t = 1; t <= g; ++t) {
        std::vector<detail::FormalCombo> z;
        for (int h = 1; h <= g - t + 1; ++h) {
            detail::FormalCombo zh;
            zh.terms[Partition({h})] = Rational(-1) / Rational(factorial(h));
            z.push_back(zh);
        }
        acc = acc + ordinary_bell(g, t, z, detail::FormalCombo{}) * (Rational(1) / Rational(t));
    }
    Rational scale = Rational(g) * (g % 2 ? -1 : 1);
    acc = acc * scale;
    DiagDerivativeCombo combo;
    combo.g = g;
    combo.terms = acc.terms;
    return combo;
}

/// Inductive route: partial^g is recovered from the limit identity
///   partial_j^g + sum_{mu=1}^{g-1} ((g-1)!/mu!)(-1)^{g-mu} partial_j^mu partial_J^{g-mu}
///   -> -(-1)^g (g-1)! partial_{J u {j}}^g.
inline DiagDerivativeCombo diag_combo_via_recursion(int g) {
    if (g < 1) throw std::invalid_argument("g must be positive");
    std::vector<detail::FormalCombo> combos(g + 1);
    combos[1].terms[Partition({1})] = 1;
    for (int k = 2; k <= g; ++k) {
        detail::FormalCombo inner;
        inner.terms[Partition({k})] = 1;  // the pure partial_j^k term
        for (int mu = 1; mu <= k - 1; ++mu) {
            Rational c = Rational(factorial(k - 1)) / Rational(factorial(mu));
            if ((k - mu) % 2) c = -c;
            detail::FormalCombo extra;
            extra.terms[Partition({mu})] = c;
            inner = inner + combos[k - mu] * extra;
        }
        Rational scale = Rational(1) / Rational(factorial(k - 1));
        if (k % 2 == 0) scale = -scale;  // -(-1)^k prefactor inverted
        combos[k] = inner * scale;
    }
    DiagDerivativeCombo combo;
    combo.g = g;
    combo.terms = combos[g].terms;
    return combo;
}

// ---- evaluation at coincidence points -------------------------------------

/// partial_J^sigma phi: parts of sigma assigned to the indices of J in ascending
/// order (any assignment gives the same value; determinism for golden tests).
inline Rational symmetrized_partial(const std::vector<int>& J, const Partition& sigma,
                                    const FunctionOracle& phi,
                                    const std::vector<Rational>& point) {
    if (sigma.length() > static_cast<int>(J.size()))
        throw std::invalid_argument("pattern has more parts than block indices");
    std::vector<int> Js(J);
    std::sort(Js.begin(), Js.end());
    std::vector<int> orders(phi.nvars(), 0);
    for (size_t q = 0; q < sigma.parts().size(); ++q) orders[Js[q]] = sigma.parts()[q];
    return phi.partial(orders, point);
}

/// partial_J^g phi via the combination table.
inline Rational diag_partial(const std::vector<int>& J, int g, const FunctionOracle& phi,
                             const std::vector<Rational>& point) {
    if (g > static_cast<int>(J.size()))
        throw std::invalid_argument("order exceeds block size");
    Rational acc = 0;
    for (auto& [sigma, c] : diag_combo(g).terms)
        acc += c * symmetrized_partial(J, sigma, phi, point);
    return acc;
}

/// D_I phi at a point with one coincident block J (value y) and the remaining
/// variables x_k, k in I \ J, distinct from y and from one another:
///   sum_{k} phi_k / [(y-x_k)^p prod_{l != k}(x_l-x_k)]
/// + sum_{(a,b) in A_{I\J, p-1}} (-1)^{p-a} partial_J^a phi / prod_k (x_k-y)^{b_k}.
inline Rational apply_DI_one_block(const std::vector<int>& I, const std::vector<int>& J,
                                   const Rational& y, const std::map<int, Rational>& others,
                                   const FunctionOracle& phi) {
    int p = static_cast<int>(J.size());
    if (p < 1) throw std::invalid_argument("J must be nonempty");
    std::vector<int> K;
    for (int i : I) {
        bool inJ = std::find(J.begin(), J.end(), i) != J.end();
        if (!inJ) K.push_back(i);
    }
    std::vector<Rational> point(phi.nvars(), 0);
    for (int i : J) point[i] = y;
    for (int k : K) {
        auto it = others.find(k);
        if (it == others.end()) throw std::invalid_argument("missing value for generic index");
        if (it->second == y)
            throw std::invalid_argument("coincident value: use the coarser pattern");
        point[k] = it->second;
    }
    for (size_t a = 0; a < K.size(); ++a)
        for (size_t b = a + 1; b < K.size(); ++b)
            if (point[K[a]] == point[K[b]])
                throw std::invalid_argument("coincident value: use the coarser pattern");

    Rational acc = 0;
    for (int k : K) {
        std::vector<int> orders(phi.nvars(), 0);
        orders[k] = 1;
        Rational num = phi.partial(orders, point);
        Rational den = 1;
        for (int q = 0; q < p; ++q) den *= (y - point[k]);
        for (int l : K)
            if (l != k) den *= (point[l] - point[k]);
        acc += num / den;
    }
    for (const IndexTupleA& t : enumerate_A(K, p - 1)) {
        Rational num = diag_partial(J, t.a, phi, point);
        if ((p - t.a) % 2) num = -num;
        Rational den = 1;
        for (int k : K)
            for (int q = 0; q < t.b.at(k); ++q) den *= (point[k] - y);
        acc += num / den;
    }
    return acc;
}

/// D_I phi at a general coincidence pattern on I (blocks J_alpha with distinct
/// values y_alpha):
///   sum_alpha sum_{(a,c) in B} [prod binom(c_b-1,|J_b|-1)]
///     (-1)^{|J_alpha|-a} partial_{J_alpha}^a phi / prod (y_b - y_alpha)^{c_b}.
inline Rational apply_DI_general(const std::vector<std::vector<int>>& blocks,
                                 const std::vector<Rational>& values,
                                 const FunctionOracle& phi) {
    size_t s = blocks.size();
    if (s != values.size()) throw std::invalid_argument("blocks/values size mismatch");
    for (size_t a = 0; a < s; ++a)
        for (size_t b = a + 1; b < s; ++b)
            if (values[a] == values[b])
                throw std::invalid_argument("block values must be distinct");
    std::vector<Rational> point(phi.nvars(), 0);
    for (size_t a = 0; a < s; ++a)
        for (int i : blocks[a]) point[i] = values[a];

    std::vector<int> sizes;
    for (auto& b : blocks) sizes.push_back(static_cast<int>(b.size()));

    Rational acc = 0;
    for (size_t alpha = 0; alpha < s; ++alpha) {
        for (const IndexTupleB& t : enumerate_B(sizes, static_cast<int>(alpha))) {
            Rational coeff = 1;
            for (auto& [beta, cb] : t.c)
                coeff *= Rational(binomial(cb - 1, sizes[beta] - 1));
            if (coeff == 0) continue;
            Rational num = diag_partial(blocks[alpha], t.a, phi, point);
            if ((sizes[alpha] - t.a) % 2) num = -num;
            Rational den = 1;
            for (auto& [beta, cb] : t.c)
                for (int q = 0; q < cb; ++q) den *= (values[beta] - values[alpha]);
            acc += coeff * num / den;
        }
    }
    return acc;
}

/// D_d phi at an arbitrary coincidence pattern covering all N variables:
///   d! sum_alpha sum_{c: sum c_beta < d} C_{alpha,c}
///        partial_{H_alpha}^{d - sum c} phi / prod (y_beta - y_alpha)^{c_beta},
/// with C_{alpha,c} the signed Xi-sum of binomials.
inline Rational apply_Dd_at_point(int d, const CoincidencePattern& pat,
                                  const FunctionOracle& phi) {
    int N = pat.nvars();
    if (N != phi.nvars()) throw std::invalid_argument("pattern/oracle arity mismatch");
    if (d < 1 || d > N) throw std::invalid_argument("need 1 <= d <= N");
    std::vector<Rational> point = pat.point();
    size_t M = pat.blocks.size();

    Rational acc = 0;
    for (size_t alpha = 0; alpha < M; ++alpha) {
        int Ha = static_cast<int>(pat.blocks[alpha].size());
        std::vector<int> others;
        for (size_t b = 0; b < M; ++b)
            if (b != alpha) others.push_back(static_cast<int>(b));
        // enumerate c_beta >= 0 with sum < d
        std::map<int, int> c;
        std::function<void(size_t, int)> rec = [&](size_t idx, int used) {
            if (idx == others.size()) {
                int a = d - used;
                if (a < 1 || a > Ha) return;  // partial_{H_alpha}^a needs a <= |H_alpha|
                // C_{alpha,c}
                Rational C = 0;
                for (auto& kappa : enumerate_Xi(c)) {
                    int ks = 0, cs = 0;
                    for (auto& [beta, k] : kappa) ks += k;
                    for (auto& [beta, cb] : c) cs += cb;
                    Rational term = Rational(binomial(Ha, d - ks));
                    for (auto& [beta, cb] : c) {
                        if (cb == 0) continue;
                        int k = kappa.at(beta);
                        term *= Rational(binomial(cb - 1, k - 1));
                        term *= Rational(binomial(static_cast<int>(pat.blocks[beta].size()), k));
                    }
                    if ((cs - ks) % 2) term = -term;
                    C += term;
                }
                if (C == 0) return;
                Rational num = diag_partial(pat.blocks[alpha], a, phi, point);
                Rational den = 1;
                for (auto& [beta, cb] : c)
                    for (int q = 0; q < cb; ++q)
                        den *= (pat.values[beta] - pat.values[alpha]);
                acc += C * num / den;
                return;
            }
            for (int cb = 0; used + cb < d; ++cb) {
                c[others[idx]] = cb;
                rec(idx + 1, used + cb);
            }
            c.erase(others[idx]);
        };
        rec(0, 0);
    }
    return acc * Rational(factorial(d));
}

/// Dhat_d phi on the total diagonal x_i = a: equals partial^d of the single
/// block {0..N-1}; for the trace of f this is (-1)^{d-1} f^(d)(a) / (d-1)!.
inline Rational total_diagonal_Dhat(int d, const FunctionOracle& phi, const Rational& a) {
    std::vector<int> all;
    for (int i = 0; i < phi.nvars(); ++i) all.push_back(i);
    std::vector<Rational> point(phi.nvars(), a);
    return diag_partial(all, d, phi, point);
}

// ---- local coordinate charts ----------------------------------------------

/// Per-block charts: the coordinates uhat_r^{|H_alpha|}(x_{H_alpha}), r = 1..|H_alpha|,
/// built with all normalizing constants based on the block size.
struct LocalChart {
    struct BlockChart {
        std::vector<int> vars;            // indices of H_alpha in the ambient space
        std::vector<SparsePoly> coords;   // uhat_r in |H_alpha| local variables
    };
    std::vector<BlockChart> blocks;
};

inline LocalChart local_coordinates(const CoincidencePattern& pat) {
    LocalChart chart;
    for (auto& H : pat.blocks) {
        LocalChart::BlockChart bc;
        bc.vars = H;
        int n = static_cast<int>(H.size());
        for (int r = 1; r <= n; ++r)
            bc.coords.push_back(build_u(r, n, NormalizationTag::hat_u).second);
        chart.blocks.push_back(std::move(bc));
    }
    return chart;
}

/// The coordinate-direction derivatives of the trace of f in the chart:
/// per block alpha, the list {(-1)^{d-1} f^(d)(y_alpha)/(d-1)!}, d = 1..|H_alpha|.
inline std::vector<std::vector<Rational>>
chart_trace_derivatives(const CoincidencePattern& pat, const std::vector<Rational>& fcoeffs) {
    std::vector<std::vector<Rational>> out;
    for (size_t a = 0; a < pat.blocks.size(); ++a) {
        std::vector<Rational> vals;
        for (int d = 1; d <= static_cast<int>(pat.blocks[a].size()); ++d) {
            Rational v = univariate_eval(univariate_derivative(fcoeffs, d), pat.values[a]) /
                         Rational(factorial(d - 1));
            if (d % 2 == 0) v = -v;
            vals.push_back(v);
        }
        out.push_back(std::move(vals));
    }
    return out;
}

}  // namespace symcoord
