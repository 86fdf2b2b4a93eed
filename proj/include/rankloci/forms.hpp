#pragma once

// Waring-rank facts about forms in n variables: conciseness, catalecticant
// lower bounds, generic and maximal rank formulas, and the exact power-sum
// identities for powers of the sum-of-squares quadric.

#include "rankloci/errors.hpp"
#include "rankloci/matrix.hpp"
#include "rankloci/multiform.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rankloci {

/// Matrix of Theta |-> Theta _| F on degree-k operators: one column per
/// operator monomial, one row per monomial of degree d - k.
inline QMatrix catalecticant_matrix(const MultiForm& f, int k)
{
    const int n = f.num_vars(), d = f.degree();
    if (k < 0 || k > d) throw std::out_of_range("catalecticant degree outside [0, d]");
    const auto ops = monomials(n, k);
    const auto outs = monomials(n, d - k);
    std::map<Exponent, std::size_t> row_of;
    for (std::size_t r = 0; r < outs.size(); ++r) row_of[outs[r]] = r;
    QMatrix m(outs.size(), ops.size());
    for (std::size_t c = 0; c < ops.size(); ++c) {
        MultiForm op(n, k);
        op.add_term(ops[c], Rational(1));
        const MultiForm image = apolar_apply(op, f);
        for (const auto& [e, v] : image.terms()) m(row_of.at(e), c) = v;
    }
    return m;
}

/// Rank of the degree-k catalecticant, a lower bound for Waring rank.
inline int catalecticant_rank_bound(const MultiForm& f, int k)
{
    return static_cast<int>(rank(catalecticant_matrix(f, k)));
}

struct ConcisenessReport {
    int essential_count = 0;
    std::vector<MultiForm> essential_basis; // linear forms spanning <F>
    bool concise = false;
    /// F rewritten in y_1..y_k, where y_i is the i-th essential basis element.
    MultiForm restricted;
};

/// dim (F^perp)_1, computed from the first derivatives rather than the (d-1)-th.
inline int linear_apolar_dim(const MultiForm& f)
{
    return f.num_vars() - static_cast<int>(rank(catalecticant_matrix(f, 1)));
}

inline ConcisenessReport essential_variables(const MultiForm& f)
{
    if (f.is_zero()) throw std::invalid_argument("essential variables of the zero form");
    const int n = f.num_vars(), d = f.degree();
    if (d < 1) throw std::invalid_argument("essential variables need degree >= 1");
    // Rows: the (d-1)-th derivatives of F written as linear forms.
    const QMatrix derivs = catalecticant_matrix(f, d - 1).transpose();
    const auto ech = rref(derivs);
    ConcisenessReport report;
    report.essential_count = static_cast<int>(ech.pivots.size());
    report.concise = report.essential_count == n;

    QMatrix change(n, n);
    std::vector<bool> pivot_col(n, false);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
        std::vector<Rational> row(n);
        for (int j = 0; j < n; ++j) change(r, j) = row[j] = ech.reduced(r, j);
        report.essential_basis.push_back(MultiForm::linear(row));
        pivot_col[ech.pivots[r]] = true;
    }
    std::size_t next = ech.pivots.size();
    for (int j = 0; j < n; ++j)
        if (!pivot_col[j]) change(next++, j) = 1;

    // y = change * x, so F(x) = F(change^-1 y); it must only involve y_1..y_k.
    const auto inv = inverse(change);
    ensure(inv.has_value(), "essential basis completion is singular");
    const MultiForm in_y = f.substitute(*inv);
    const int k = report.essential_count;
    MultiForm restricted(k, d);
    for (const auto& [e, v] : in_y.terms()) {
        for (int j = k; j < n; ++j)
            if (e[j] != 0) throw std::logic_error("form is not a polynomial in its essential variables");
        restricted.add_term(Exponent(e.begin(), e.begin() + k), v);
    }
    report.restricted = std::move(restricted);
    return report;
}

// ---------------------------------------------------------------------------
// Generic and maximal Waring rank

struct GenericRank {
    int g = 0;
    bool hypersurface = false; // sigma_(g-1) is a hypersurface
};

inline bool is_ah_exception(int n, int d)
{
    return (n == 3 && d == 4) || (n == 4 && d == 4) || (n == 5 && d == 3) || (n == 5 && d == 4);
}

/// Alexander-Hirschowitz, with the binary and quadric cases filled in.
inline GenericRank generic_waring_rank(int n, int d)
{
    if (n < 1 || d < 1) throw std::invalid_argument("generic rank needs n >= 1 and d >= 1");
    if (n == 1 || d == 1) return {1, false};
    if (d == 2) return {n, true};
    const std::int64_t forms = binomial(d + n - 1, d);
    if (n == 2) return {(d + 2) / 2, forms % 2 == 1};
    if (is_ah_exception(n, d)) {
        static const std::map<std::pair<int, int>, int> exceptional{{{3, 4}, 6}, {{4, 4}, 10}, {{5, 3}, 8}, {{5, 4}, 15}};
        return {exceptional.at({n, d}), true};
    }
    return {static_cast<int>((forms + n - 1) / n), forms % n == 1};
}

struct MaxRankBounds {
    int codim_plus_one = 0;
    int two_g = 0;
    int refined = 0;   // 2g-1, or 2g-2 when sigma_(g-1) is a hypersurface
    int dimension_count_bound = 0;  // ceil(2 (d+n-1)! / (n! d!))
    std::optional<int> known_exact;
    int best = 0;
};

/// The four maximal ranks known for n >= 3.
inline std::optional<int> known_max_rank(int n, int d)
{
    static const std::map<std::pair<int, int>, int> table{{{3, 3}, 5}, {{3, 4}, 7}, {{3, 5}, 10}, {{4, 3}, 7}};
    auto it = table.find({n, d});
    if (it == table.end()) return std::nullopt;
    return it->second;
}

inline MaxRankBounds max_rank_bounds(int n, int d)
{
    if (n < 2 || d < 1) throw std::invalid_argument("maximal rank bounds need n >= 2 and d >= 1");
    const std::int64_t forms = binomial(d + n - 1, d);
    const auto gen = generic_waring_rank(n, d);
    MaxRankBounds b;
    // codim of the Veronese in P^(forms-1) is forms - n
    b.codim_plus_one = static_cast<int>(forms - n + 1);
    b.two_g = 2 * gen.g;
    b.refined = gen.hypersurface ? 2 * gen.g - 2 : 2 * gen.g - 1;
    b.dimension_count_bound = static_cast<int>((2 * forms + n - 1) / n);
    b.known_exact = known_max_rank(n, d);
    if (d == 1) b.refined = 1;
    b.best = std::min({b.codim_plus_one, b.two_g, b.refined, b.dimension_count_bound});
    if (b.known_exact) b.best = std::min(b.best, *b.known_exact);
    return b;
}

/// Whether every form of greater-than-generic rank is forced to be concise.
inline bool high_rank_implies_concise(int n, int d)
{
    if (n < 2 || d < 2) throw std::invalid_argument("needs n >= 2 and d >= 2");
    if (n == 2 || n == 3) return d >= 2;
    return d >= n + 1;
}

// ---------------------------------------------------------------------------
// Power sums

struct PowerTerm {
    Rational coeff;
    MultiForm linear_form;
    int exponent = 0;
};

struct PowerSumExpression {
    std::vector<PowerTerm> terms;

    std::size_t size() const { return terms.size(); }
};

inline void validate(const PowerSumExpression& e)
{
    for (const auto& t : e.terms) {
        if (t.linear_form.degree() != 1) throw std::invalid_argument("power-sum terms must use linear forms");
        if (t.linear_form.is_zero()) throw std::invalid_argument("power-sum terms must use nonzero linear forms");
        if (t.exponent != e.terms.front().exponent) throw std::invalid_argument("power-sum exponents must agree");
        if (t.linear_form.num_vars() != e.terms.front().linear_form.num_vars())
            throw std::invalid_argument("power-sum terms live in different numbers of variables");
    }
}

inline MultiForm expand_power_sum(const PowerSumExpression& e)
{
    if (e.terms.empty()) throw std::invalid_argument("empty power sum");
    validate(e);
    const int n = e.terms.front().linear_form.num_vars();
    const int d = e.terms.front().exponent;
    MultiForm out(n, d);
    for (const auto& t : e.terms) out = out + t.coeff * pow(t.linear_form, t.exponent);
    return out;
}

/// Coefficient-exact comparison of the expansion with the target.
inline bool verify_identity(const PowerSumExpression& e, const MultiForm& target)
{
    const MultiForm lhs = expand_power_sum(e);
    if (lhs.num_vars() != target.num_vars() || lhs.degree() != target.degree())
        throw std::invalid_argument("identity sides differ in variable count or degree");
    return lhs == target;
}

/// (x_1^2 + ... + x_n^2)^k
inline MultiForm power_of_quadric(int n, int k)
{
    MultiForm q(n, 2);
    for (int i = 0; i < n; ++i) {
        Exponent e(n, 0);
        e[i] = 2;
        q.add_term(e, Rational(1));
    }
    return pow(q, k);
}

namespace detail {

inline MultiForm signed_sum(int n, const std::vector<int>& idx, const std::vector<int>& signs)
{
    std::vector<Rational> c(n, Rational(0));
    for (std::size_t i = 0; i < idx.size(); ++i) c[idx[i]] = signs[i];
    return MultiForm::linear(c);
}

inline void push_term(PowerSumExpression& e, const Rational& coeff, MultiForm lin, int exponent)
{
    if (!coeff.is_zero()) e.terms.push_back({coeff, std::move(lin), exponent});
}

} // namespace detail

/// Q_n^2 = 1/6 sum_{i<j} (x_i +- x_j)^4 + (4-n)/3 sum x_i^4, both signs per pair.
inline PowerSumExpression reznick_quartic(int n)
{
    if (n < 1) throw std::invalid_argument("n must be positive");
    PowerSumExpression e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int sj : {1, -1}) detail::push_term(e, frac(1, 6), detail::signed_sum(n, {i, j}, {1, sj}), 4);
    for (int i = 0; i < n; ++i) detail::push_term(e, frac(4 - n, 3), detail::signed_sum(n, {i}, {1}), 4);
    return e;
}

/// 60 Q_n^3 = sum_{i<j<k} (x_i +- x_j +- x_k)^6 + 2(5-n) sum_{i<j} (x_i +- x_j)^6
///            + 2(n^2-9n+38) sum x_i^6, every sign choice with the first sign fixed.
/// Returned already divided by 60 so that it expands to Q_n^3.
inline PowerSumExpression reznick_sextic(int n)
{
    if (n < 1) throw std::invalid_argument("n must be positive");
    PowerSumExpression e;
    const Rational sixtieth = frac(1, 60);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int sj : {1, -1})
                    for (int sk : {1, -1}) detail::push_term(e, sixtieth, detail::signed_sum(n, {i, j, k}, {1, sj, sk}), 6);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int sj : {1, -1})
                detail::push_term(e, sixtieth * Rational(2 * (5 - n)), detail::signed_sum(n, {i, j}, {1, sj}), 6);
    for (int i = 0; i < n; ++i)
        detail::push_term(e, sixtieth * Rational(2 * (n * n - 9 * n + 38)), detail::signed_sum(n, {i}, {1}), 6);
    return e;
}

/// Term counts the two identities certify: rank(Q_n^2) <= n^2 and
/// rank(Q_n^3) <= 4 C(n,3) + 2 C(n,2) + n.
inline std::int64_t reznick_quartic_bound(int n) { return static_cast<std::int64_t>(n) * n; }
inline std::int64_t reznick_sextic_bound(int n) { return 4 * binomial(n, 3) + 2 * binomial(n, 2) + n; }

} // namespace rankloci
