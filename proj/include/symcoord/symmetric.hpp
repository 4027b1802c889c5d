#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "symcoord/partition.hpp"
#include "symcoord/polynomial.hpp"

namespace symcoord {

// ---- elementary symmetric functions ---------------------------------------

/// e_h over the variables listed in `vars` (0-based indices into an nvars ring).
/// Conventions: e_0 = 1, e_h = 0 for h < 0 or h > |vars|.
inline SparsePoly elementary(int h, const std::vector<int>& vars, int nvars) {
    SparsePoly p(nvars);
    if (h < 0 || h > static_cast<int>(vars.size())) return p;
    if (h == 0) return SparsePoly::constant(nvars, 1);
    std::vector<int> idx(h);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == h) {
            SparsePoly::Exponents e(nvars, 0);
            for (int i : idx) e[i] = 1;
            p.add_term(e, 1);
            return;
        }
        for (int i = start; i < static_cast<int>(vars.size()); ++i) {
            idx[depth] = vars[i];
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return p;
}

inline std::vector<int> all_vars(int nvars) {
    std::vector<int> v(nvars);
    for (int i = 0; i < nvars; ++i) v[i] = i;
    return v;
}

inline SparsePoly elementary_full(int h, int nvars) {
    return elementary(h, all_vars(nvars), nvars);
}

/// etilde_h = e_h / (h! C(N,h)); equals a^h/h! on the total diagonal.
inline SparsePoly normalized_elementary(int h, int nvars) {
    if (h < 0 || h > nvars) return SparsePoly(nvars);
    Rational scale = Rational(1) / Rational(factorial(h) * binomial(nvars, h));
    return elementary_full(h, nvars) * scale;
}

/// Lemma-style decomposition e_h = sum_l e_l(x_I) * e_{h-l}(x_{I^c}).
inline std::vector<std::pair<SparsePoly, SparsePoly>>
expand_product_rule(int h, const std::vector<int>& I, int nvars) {
    std::set<int> inI(I.begin(), I.end());
    std::vector<int> comp;
    for (int i = 0; i < nvars; ++i)
        if (!inI.count(i)) comp.push_back(i);
    std::vector<std::pair<SparsePoly, SparsePoly>> out;
    for (int l = 0; l <= h; ++l)
        out.emplace_back(elementary(l, I, nvars), elementary(h - l, comp, nvars));
    return out;
}

inline SparsePoly power_sum(int r, int nvars) {
    SparsePoly p(nvars);
    for (int i = 0; i < nvars; ++i) {
        SparsePoly::Exponents e(nvars, 0);
        e[i] = r;
        p.add_term(e, 1);
    }
    return p;
}

/// Partial ordinary Bell polynomial
/// Bhat_{r,t}(z_1,...,z_{r-t+1}) = sum_{lambda|-r, l(lambda)=t} t!/prod m_h! prod z_h^{m_h}.
/// T needs +, *, and scaling by Rational; `zero` seeds the sum.
template <class T>
T ordinary_bell(int r, int t, const std::vector<T>& z, T zero) {
    if (t < 1 || t > r) throw std::invalid_argument("need 1 <= t <= r");
    T acc = std::move(zero);
    for (const Partition& lam : enumerate_partitions(r)) {
        if (lam.length() != t) continue;
        if (lam.max_part() > static_cast<int>(z.size()))
            throw std::invalid_argument("not enough Bell arguments");
        Rational coeff = Rational(factorial(t)) / Rational(lam.multiplicity_factorial());
        bool first = true;
        T mono = acc;  // placeholder, overwritten below
        for (int p : lam.parts()) {
            if (first) {
                mono = z[p - 1];
                first = false;
            } else {
                mono = mono * z[p - 1];
            }
        }
        acc = acc + mono * coeff;
    }
    return acc;
}

// ---- symmetric expressions in named bases ---------------------------------

enum class Basis { e, etilde, monomial, power, u };

enum class NormalizationTag { paper_u, hat_u, signed_power, taylor };

/// Per-degree scalar mapping paper_u to the requested normalization.
inline Rational normalization_scale(NormalizationTag tag, int r, int nvars) {
    Rational hat = Rational(falling_factorial(nvars, r));
    switch (tag) {
        case NormalizationTag::paper_u: return 1;
        case NormalizationTag::hat_u: return hat;
        case NormalizationTag::signed_power:
            return hat * Rational(r) * (r % 2 == 1 ? 1 : -1);
        case NormalizationTag::taylor:
            return hat / Rational(factorial(r - 1)) * (r % 2 == 1 ? 1 : -1);
    }
    throw std::logic_error("unknown tag");
}

inline char basis_letter(Basis b) {
    switch (b) {
        case Basis::e: return 'e';
        case Basis::etilde: return 't';  // printed as "et"
        case Basis::monomial: return 'm';
        case Basis::power: return 'p';
        case Basis::u: return 'u';
    }
    return '?';
}

class SymExpr;
SparsePoly expand_symexpr(const SymExpr& expr);
SymExpr to_basis(const SymExpr& expr, Basis target);

/// Symmetric polynomial as partition-indexed coefficients in a named basis.
class SymExpr {
public:
    SymExpr(int nvars, Basis basis) : nvars_(nvars), basis_(basis) {}

    int nvars() const { return nvars_; }
    Basis basis() const { return basis_; }
    const std::map<Partition, Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    void add(const Partition& key, const Rational& c) {
        if (c == 0) return;
        if (key.max_part() > nvars_ &&
            (basis_ == Basis::e || basis_ == Basis::etilde || basis_ == Basis::u))
            throw std::invalid_argument("partition key inadmissible for " +
                                        std::to_string(nvars_) + " variables: " + key.str());
        if (basis_ == Basis::monomial && key.length() > nvars_)
            throw std::invalid_argument("monomial key longer than variable count");
        auto it = coeffs_.find(key);
        if (it == coeffs_.end()) {
            coeffs_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    SymExpr operator+(const SymExpr& o) const {
        check_compatible(o);
        SymExpr r = *this;
        for (auto& [k, c] : o.coeffs_) r.add(k, c);
        return r;
    }

    SymExpr operator-(const SymExpr& o) const {
        check_compatible(o);
        SymExpr r = *this;
        for (auto& [k, c] : o.coeffs_) r.add(k, -c);
        return r;
    }

    SymExpr operator*(const Rational& s) const {
        SymExpr r(nvars_, basis_);
        for (auto& [k, c] : coeffs_) r.add(k, c * s);
        return r;
    }

    /// Product in a multiplicative basis (e, etilde, power, u): keys merge.
    SymExpr operator*(const SymExpr& o) const {
        check_compatible(o);
        if (basis_ == Basis::monomial)
            throw std::logic_error("monomial basis is not multiplicative");
        SymExpr r(nvars_, basis_);
        for (auto& [k1, c1] : coeffs_)
            for (auto& [k2, c2] : o.coeffs_) r.add(k1.merged(k2), c1 * c2);
        return r;
    }

    bool operator==(const SymExpr& o) const {
        return nvars_ == o.nvars_ && basis_ == o.basis_ && coeffs_ == o.coeffs_;
    }

    std::string str() const {
        std::string s;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            s += to_string(it->second) + " : ";
            s += (basis_ == Basis::etilde) ? "et" : std::string(1, basis_letter(basis_));
            s += it->first.str() + "\n";
        }
        return s;
    }

private:
    void check_compatible(const SymExpr& o) const {
        if (nvars_ != o.nvars_ || basis_ != o.basis_)
            throw std::invalid_argument("SymExpr basis/nvars mismatch");
    }

    int nvars_;
    Basis basis_;
    std::map<Partition, Rational> coeffs_;
};

// ---- the coordinates u_r ---------------------------------------------------

/// u_r as partition-sum over lambda |- r in the etilde basis (paper normalization).
inline SymExpr u_symexpr(int r, int nvars) {
    if (r < 1 || r > nvars)
        throw std::invalid_argument("u_r requires 1 <= r <= N");
    SymExpr expr(nvars, Basis::etilde);
    for (const Partition& lam : enumerate_partitions(r)) {
        int l = lam.length();
        Rational c = Rational(factorial(l - 1)) / Rational(lam.multiplicity_factorial());
        if ((l - 1) % 2) c = -c;
        expr.add(lam, c);
    }
    return expr;
}

namespace detail {

inline SparsePoly u_bell_route(int r, int nvars) {
    // -sum_t Bhat_{r,t}(-etilde_1,...,-etilde_{r-t+1}) / t
    SparsePoly acc(nvars);
    for (int t = 1; t <= r; ++t) {
        std::vector<SparsePoly> z;
        for (int h = 1; h <= r - t + 1; ++h) z.push_back(-normalized_elementary(h, nvars));
        SparsePoly b = ordinary_bell(r, t, z, SparsePoly(nvars));
        acc -= b * (Rational(1) / Rational(t));
    }
    return acc;
}

inline const SparsePoly& u_poly_cached(int r, int nvars) {
    static std::map<std::pair<int, int>, SparsePoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(nvars, r);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SparsePoly fromSum = expand_symexpr(u_symexpr(r, nvars));
    SparsePoly fromBell = u_bell_route(r, nvars);
    if (!(fromSum == fromBell))
        throw std::logic_error("u_r partition-sum and Bell constructions disagree");
    return cache.emplace(key, std::move(fromSum)).first->second;
}

}  // namespace detail

/// Both the etilde-basis form and the expanded polynomial of u_r, scaled per tag.
/// The two independent constructions (partition sum, Bell) are cross-checked.
inline std::pair<SymExpr, SparsePoly>
build_u(int r, int nvars, NormalizationTag tag = NormalizationTag::paper_u) {
    Rational s = normalization_scale(tag, r, nvars);
    return {u_symexpr(r, nvars) * s, detail::u_poly_cached(r, nvars) * s};
}

inline SparsePoly u_poly(int r, int nvars) { return detail::u_poly_cached(r, nvars); }

// ---- expansion and basis conversion ---------------------------------------

inline SparsePoly expand_symexpr(const SymExpr& expr) {
    int N = expr.nvars();
    SparsePoly acc(N);
    for (auto& [key, c] : expr.coeffs()) {
        SparsePoly term = SparsePoly::constant(N, c);
        switch (expr.basis()) {
            case Basis::e:
                for (int h : key.parts()) term *= elementary_full(h, N);
                break;
            case Basis::etilde:
                for (int h : key.parts()) term *= normalized_elementary(h, N);
                break;
            case Basis::power:
                for (int h : key.parts()) term *= power_sum(h, N);
                break;
            case Basis::u:
                for (int h : key.parts()) term *= u_poly(h, N);
                break;
            case Basis::monomial: {
                // sum of distinct permutations of the exponent pattern
                SparsePoly m(N);
                std::vector<int> e(key.parts().begin(), key.parts().end());
                e.resize(N, 0);
                std::sort(e.begin(), e.end());
                do {
                    m.add_term(e, 1);
                } while (std::next_permutation(e.begin(), e.end()));
                term *= m;
                break;
            }
        }
        acc += term;
    }
    return acc;
}

namespace detail {

/// Expanded symmetric polynomial -> e basis, by stripping lex-leading monomials.
inline SymExpr expanded_to_e(const SparsePoly& p, int nvars) {
    SymExpr out(nvars, Basis::e);
    SparsePoly rem = p;
    while (!rem.is_zero()) {
        auto lead = *rem.terms().rbegin();
        std::vector<int> parts;
        for (int i = 0; i < nvars; ++i) {
            if (i + 1 < nvars && lead.first[i] < lead.first[i + 1])
                throw std::invalid_argument("polynomial is not symmetric");
            if (lead.first[i] > 0) parts.push_back(lead.first[i]);
        }
        Partition mu(parts);
        Partition key = mu.conjugate();  // e_{mu^t} has leading monomial x^mu
        out.add(key, lead.second);
        SymExpr one(nvars, Basis::e);
        one.add(key, lead.second);
        rem -= expand_symexpr(one);
    }
    return out;
}

inline SymExpr expanded_to_monomial(const SparsePoly& p, int nvars) {
    SymExpr out(nvars, Basis::monomial);
    for (auto& [e, c] : p.terms()) {
        std::vector<int> sorted;
        for (int x : e)
            if (x > 0) sorted.push_back(x);
        std::sort(sorted.begin(), sorted.end(), std::greater<int>());
        bool isCanonical = true;  // count each orbit once, via its sorted representative
        std::vector<int> es(e);
        std::sort(es.begin(), es.end(), std::greater<int>());
        if (!std::equal(es.begin(), es.end(), e.begin())) isCanonical = false;
        if (isCanonical) out.add(Partition(sorted), c);
    }
    return out;
}

inline Rational etilde_scale(const Partition& key, int nvars) {
    // etilde_lambda = e_lambda / prod_h (h! C(N,h))^{m_h}
    Rational s = 1;
    for (int h : key.parts()) s *= Rational(factorial(h) * binomial(nvars, h));
    return s;
}

/// Expanded -> power basis by exact linear solve per homogeneous degree.
inline SymExpr expanded_to_power(const SparsePoly& p, int nvars) {
    SymExpr out(nvars, Basis::power);
    SymExpr mono = expanded_to_monomial(p, nvars);
    // split by degree
    std::set<int> degrees;
    for (auto& [k, c] : mono.coeffs()) degrees.insert(k.weight());
    for (int r : degrees) {
        std::vector<Partition> lams;
        for (auto& lam : enumerate_partitions(r))
            if (lam.max_part() <= nvars || nvars == 0) lams.push_back(lam);
        // candidate p_lambda expansions in the monomial basis
        std::vector<std::map<Partition, Rational>> cols;
        for (auto& lam : lams) {
            SymExpr pl(nvars, Basis::power);
            pl.add(lam, 1);
            cols.push_back(expanded_to_monomial(expand_symexpr(pl), nvars).coeffs());
        }
        std::vector<Partition> rows;
        {
            std::set<Partition> rs;
            for (auto& col : cols)
                for (auto& [k, c] : col) rs.insert(k);
            for (auto& [k, c] : mono.coeffs())
                if (k.weight() == r) rs.insert(k);
            rows.assign(rs.begin(), rs.end());
        }
        size_t m = rows.size(), n = cols.size();
        std::vector<std::vector<Rational>> A(m, std::vector<Rational>(n + 1, 0));
        for (size_t j = 0; j < n; ++j)
            for (auto& [k, c] : cols[j]) {
                size_t i = std::lower_bound(rows.begin(), rows.end(), k) - rows.begin();
                A[i][j] = c;
            }
        for (auto& [k, c] : mono.coeffs()) {
            if (k.weight() != r) continue;
            size_t i = std::lower_bound(rows.begin(), rows.end(), k) - rows.begin();
            A[i][n] = c;
        }
        // Gaussian elimination
        std::vector<int> pivotCol(m, -1);
        size_t row = 0;
        for (size_t col = 0; col < n && row < m; ++col) {
            size_t pr = row;
            while (pr < m && A[pr][col] == 0) ++pr;
            if (pr == m) continue;
            std::swap(A[row], A[pr]);
            Rational pv = A[row][col];
            for (size_t j = col; j <= n; ++j) A[row][j] /= pv;
            for (size_t i = 0; i < m; ++i) {
                if (i == row || A[i][col] == 0) continue;
                Rational f = A[i][col];
                for (size_t j = col; j <= n; ++j) A[i][j] -= f * A[row][j];
            }
            pivotCol[row] = static_cast<int>(col);
            ++row;
        }
        for (size_t i = row; i < m; ++i)
            if (A[i][n] != 0)
                throw std::invalid_argument("expression not representable in power basis");
        std::vector<Rational> x(n, 0);
        for (size_t i = 0; i < row; ++i) x[pivotCol[i]] = A[i][n];
        for (size_t j = 0; j < n; ++j) out.add(lams[j], x[j]);
    }
    return out;
}

/// etilde-basis expression -> u basis, by unitriangular elimination in length order.
inline SymExpr etilde_to_u(SymExpr expr) {
    int N = expr.nvars();
    SymExpr out(N, Basis::u);
    while (!expr.is_zero()) {
        // key of minimal length (ties broken arbitrarily)
        const Partition* best = nullptr;
        Rational c;
        for (auto& [k, v] : expr.coeffs()) {
            if (!best || k.length() < best->length()) {
                best = &k;
                c = v;
            }
        }
        Partition key = *best;
        if (key.max_part() > N)
            throw std::invalid_argument("not convertible to u basis: part exceeds N");
        out.add(key, c);
        // subtract c * (u_key expanded in the etilde basis)
        SymExpr ue = SymExpr(N, Basis::etilde);
        ue.add(Partition(), 1);
        for (int h : key.parts()) ue = ue * u_symexpr(h, N);
        expr = expr - ue * c;
    }
    return out;
}

}  // namespace detail

/// Exact basis conversion via the e-basis pivot (or expansion where needed).
inline SymExpr to_basis(const SymExpr& expr, Basis target) {
    if (expr.basis() == target) return expr;
    int N = expr.nvars();
    SparsePoly expanded = expand_symexpr(expr);
    switch (target) {
        case Basis::e:
            return detail::expanded_to_e(expanded, N);
        case Basis::etilde: {
            SymExpr e = detail::expanded_to_e(expanded, N);
            SymExpr out(N, Basis::etilde);
            for (auto& [k, c] : e.coeffs()) out.add(k, c * detail::etilde_scale(k, N));
            return out;
        }
        case Basis::monomial:
            return detail::expanded_to_monomial(expanded, N);
        case Basis::power:
            return detail::expanded_to_power(expanded, N);
        case Basis::u:
            return detail::etilde_to_u(to_basis(expr, Basis::etilde));
    }
    throw std::logic_error("unknown basis");
}

// ---- diagonal helpers ------------------------------------------------------

/// Substitute x_i = t for all i; returns coefficients of the univariate result.
inline std::map<int, Rational> collapse_to_diagonal(const SparsePoly& p) {
    std::map<int, Rational> uni;
    for (auto& [e, c] : p.terms()) {
        int d = 0;
        for (int x : e) d += x;
        uni[d] += c;
    }
    for (auto it = uni.begin(); it != uni.end();)
        it = (it->second == 0) ? uni.erase(it) : std::next(it);
    return uni;
}

/// Applies the simple derivative realizing `sigma` (parts on distinct leading
/// variables) to u_r, substitutes x_i = t, and reports whether the result
/// vanishes identically.
inline bool check_diagonal_vanishing(int r, const Partition& sigma, int nvars) {
    if (sigma.length() > nvars)
        throw std::invalid_argument("pattern needs more distinct indices than variables");
    SparsePoly p = u_poly(r, nvars);
    int var = 0;
    for (int s : sigma.parts()) {
        for (int k = 0; k < s; ++k) p = p.partial_derivative(var);
        ++var;
    }
    return collapse_to_diagonal(p).empty();
}

}  // namespace symcoord
