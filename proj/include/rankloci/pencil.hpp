#pragma once

// Matrix pencils s*M1 + t*M2 (equivalently 2 x p x q tensors), their Kronecker
// invariants, and tensor rank through the Grigoriev / Ja'Ja' / Teichert formula
//
//   rank = sum eps_i + sum eta_j + #eps + #eta + f + m(F).

#include "rankloci/binary_form.hpp"
#include "rankloci/errors.hpp"
#include "rankloci/matrix.hpp"
#include "rankloci/poly.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace rankloci {

class Pencil {
public:
    Pencil() = default;
    Pencil(QMatrix m1, QMatrix m2) : m1_(std::move(m1)), m2_(std::move(m2))
    {
        if (m1_.rows() != m2_.rows() || m1_.cols() != m2_.cols())
            throw std::invalid_argument("pencil matrices must have identical dimensions");
    }
    static Pencil zero(std::size_t rows, std::size_t cols) { return {QMatrix(rows, cols), QMatrix(rows, cols)}; }

    std::size_t rows() const { return m1_.rows(); }
    std::size_t cols() const { return m1_.cols(); }
    const QMatrix& m1() const { return m1_; }
    const QMatrix& m2() const { return m2_; }

    bool is_zero() const { return m1_.is_zero() && m2_.is_zero(); }

    /// Entry (i, j) as the linear form M1(i,j) s + M2(i,j) t.
    BinaryForm entry(std::size_t i, std::size_t j) const { return BinaryForm::linear(m1_(i, j), m2_(i, j)); }

    /// The constant matrix a*M1 + b*M2.
    QMatrix at(const Rational& a, const Rational& b) const { return a * m1_ + b * m2_; }

    Pencil transpose() const { return {m1_.transpose(), m2_.transpose()}; }

    friend Pencil operator+(const Pencil& a, const Pencil& b) { return {a.m1_ + b.m1_, a.m2_ + b.m2_}; }
    friend bool operator==(const Pencil& a, const Pencil& b) { return a.m1_ == b.m1_ && a.m2_ == b.m2_; }

    std::string str() const
    {
        std::ostringstream out;
        out << "[";
        for (std::size_t i = 0; i < rows(); ++i) {
            out << (i ? "; " : "");
            for (std::size_t j = 0; j < cols(); ++j) out << (j ? ", " : "") << entry(i, j).str();
        }
        out << "]";
        return out.str();
    }

private:
    QMatrix m1_;
    QMatrix m2_;
};

/// Action of (g1, A, B) in GL2 x GLp x GLq: (as+ct)M1 + (bs+dt)M2 with g1 = [[a,b],[c,d]],
/// then M -> A M B on both slots.
inline Pencil act(const Pencil& p, const QMatrix& g1, const QMatrix& left, const QMatrix& right)
{
    const QMatrix n1 = g1(0, 0) * p.m1() + g1(0, 1) * p.m2();
    const QMatrix n2 = g1(1, 0) * p.m1() + g1(1, 1) * p.m2();
    return {left * n1 * right, left * n2 * right};
}

// ---------------------------------------------------------------------------
// Constructors for normal-form blocks

/// L_eps: eps x (eps+1), s on the diagonal, t on the superdiagonal.
inline Pencil build_L(int eps)
{
    if (eps < 1) throw std::invalid_argument("L block needs eps >= 1");
    QMatrix m1(eps, eps + 1), m2(eps, eps + 1);
    for (int i = 0; i < eps; ++i) {
        m1(i, i) = 1;
        m2(i, i + 1) = 1;
    }
    return {m1, m2};
}

inline Pencil build_L_transpose(int eta) { return build_L(eta).transpose(); }

/// s*Id + t*F for a square F.
inline Pencil build_regular(const QMatrix& f)
{
    if (f.rows() != f.cols()) throw std::invalid_argument("regular block needs a square matrix");
    return {QMatrix::identity(f.rows()), f};
}

/// Jordan block of the given size and eigenvalue, as a constant matrix.
inline QMatrix jordan_block(std::size_t size, const Rational& eigenvalue)
{
    QMatrix j(size, size);
    for (std::size_t i = 0; i < size; ++i) {
        j(i, i) = eigenvalue;
        if (i + 1 < size) j(i, i + 1) = 1;
    }
    return j;
}

/// Block diagonal sum; zero-size blocks pad with zero rows or columns.
inline Pencil direct_sum(std::span<const Pencil> blocks)
{
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    QMatrix m1(rows, cols), m2(rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) {
                m1(r0 + i, c0 + j) = b.m1()(i, j);
                m2(r0 + i, c0 + j) = b.m2()(i, j);
            }
        r0 += b.rows();
        c0 += b.cols();
    }
    return {m1, m2};
}

inline Pencil direct_sum(std::initializer_list<Pencil> blocks)
{
    return direct_sum(std::span<const Pencil>(blocks.begin(), blocks.size()));
}

// ---------------------------------------------------------------------------
// Determinants and minors over Q[s, t]

using FormMatrix = std::vector<std::vector<BinaryForm>>;

/// Bareiss elimination; every division is exact in Q[s, t].
inline BinaryForm determinant(FormMatrix m, int entry_degree = 1)
{
    const std::size_t n = m.size();
    const int out_degree = static_cast<int>(n) * entry_degree;
    if (n == 0) return BinaryForm::constant(Rational(1));
    Rational sign = 1;
    BinaryForm prev = BinaryForm::constant(Rational(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k].is_zero()) ++pivot;
        if (pivot == n) return BinaryForm(out_degree);
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            sign = -sign;
        }
        const int next_degree = static_cast<int>(k + 2) * entry_degree;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                const BinaryForm num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = num.is_zero() ? BinaryForm(next_degree) : divide_exact(num, prev);
            }
        prev = m[k][k];
    }
    BinaryForm det = sign * m[n - 1][n - 1];
    return det.is_zero() ? BinaryForm(out_degree) : det;
}

inline FormMatrix to_form_matrix(const Pencil& p)
{
    FormMatrix m(p.rows(), std::vector<BinaryForm>(p.cols()));
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) m[i][j] = p.entry(i, j);
    return m;
}

/// det(s M1 + t M2) of a square pencil, a form of degree rows().
inline BinaryForm det_pencil(const Pencil& p)
{
    if (p.rows() != p.cols()) throw std::invalid_argument("determinant of a non-square pencil");
    return determinant(to_form_matrix(p));
}

// ---------------------------------------------------------------------------
// Kronecker invariants

struct KroneckerInvariants {
    std::vector<int> eps;                        // column minimal indices, positive, ascending
    std::vector<int> eta;                        // row minimal indices, positive, ascending
    std::vector<BinaryForm> invariant_factors;   // d_1 | d_2 | ..., monic, nonconstant
    int zero_rows = 0;                           // L_0^T blocks
    int zero_cols = 0;                           // L_0 blocks

    int regular_size() const
    {
        int f = 0;
        for (const auto& d : invariant_factors) f += d.degree();
        return f;
    }
    int normal_rank() const
    {
        return std::accumulate(eps.begin(), eps.end(), 0) + std::accumulate(eta.begin(), eta.end(), 0) +
               regular_size();
    }
    std::vector<int> factor_degrees() const
    {
        std::vector<int> out;
        for (const auto& d : invariant_factors) out.push_back(d.degree());
        return out;
    }
};

struct MinimalIndices {
    std::vector<int> eps;
    std::vector<int> eta;
    int zero_rows = 0;
    int zero_cols = 0;
};

namespace detail {

/// Normal rank and a point (1, c) where it is attained. Only finitely many c
/// (at most the normal rank) can drop the rank, so c in 0..min(p,q) suffices.
inline std::pair<std::size_t, Rational> normal_rank_point(const Pencil& p)
{
    const std::size_t cap = std::min(p.rows(), p.cols());
    std::size_t best = 0;
    Rational best_c = 0;
    for (std::size_t c = 0; c <= cap; ++c) {
        const std::size_t r = rank(p.at(Rational(1), Rational(static_cast<long>(c))));
        if (r > best || c == 0) {
            best = r;
            best_c = Rational(static_cast<long>(c));
        }
        if (best == cap) break;
    }
    return {best, best_c};
}

/// Block Toeplitz matrix whose kernel is the space of degree-k polynomial
/// vectors x(s,t) with (s M1 + t M2) x = 0.
inline QMatrix kernel_system(const QMatrix& m1, const QMatrix& m2, std::size_t k)
{
    const std::size_t p = m1.rows(), q = m1.cols();
    QMatrix sys((k + 2) * p, (k + 1) * q);
    for (std::size_t j = 0; j <= k; ++j)
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = 0; b < q; ++b) {
                // x_j contributes M1 x_j to s^(k+1-j) t^j and M2 x_j to s^(k-j) t^(j+1)
                sys(j * p + a, j * q + b) = m1(a, b);
                sys((j + 1) * p + a, j * q + b) = m2(a, b);
            }
    return sys;
}

/// Column minimal indices including zeros (each zero is an L_0, i.e. a zero column).
inline std::vector<int> column_indices(const QMatrix& m1, const QMatrix& m2, std::size_t normal_rank)
{
    const std::size_t q = m1.cols();
    const std::size_t total = q - normal_rank;
    std::vector<int> out;
    if (total == 0) return out;
    std::size_t prev_n = 0, prev_c = 0;
    for (std::size_t k = 0;; ++k) {
        const std::size_t n = (k + 1) * q - rank(kernel_system(m1, m2, k));
        const std::size_t c = n - prev_n; // #{eps <= k}
        for (std::size_t i = prev_c; i < c; ++i) out.push_back(static_cast<int>(k));
        if (c >= total) break;
        ensure(k <= normal_rank, "column minimal index search exceeded the normal rank");
        prev_n = n;
        prev_c = c;
    }
    ensure(out.size() == total, "column minimal index count disagrees with the normal rank");
    return out;
}

using PolyMatrix = std::vector<std::vector<UPoly>>;

/// Nonconstant monic invariant factors of a matrix over Q[u] via Smith reduction.
inline std::vector<UPoly> smith_invariant_factors(PolyMatrix a)
{
    const std::size_t p = a.size();
    const std::size_t q = p ? a[0].size() : 0;
    std::vector<UPoly> diag;
    for (std::size_t k = 0; k < std::min(p, q); ++k) {
        bool done = false;
        while (true) {
            std::size_t bi = p, bj = q;
            int bdeg = -1;
            for (std::size_t i = k; i < p; ++i)
                for (std::size_t j = k; j < q; ++j)
                    if (!a[i][j].is_zero() && (bdeg < 0 || a[i][j].degree() < bdeg)) {
                        bdeg = a[i][j].degree();
                        bi = i;
                        bj = j;
                    }
            if (bdeg < 0) {
                done = true;
                break;
            }
            std::swap(a[k], a[bi]);
            for (std::size_t i = 0; i < p; ++i) std::swap(a[i][k], a[i][bj]);

            bool clean = true;
            for (std::size_t i = k + 1; i < p; ++i) {
                if (a[i][k].is_zero()) continue;
                const UPoly quot = divmod(a[i][k], a[k][k]).first;
                for (std::size_t j = k; j < q; ++j) a[i][j] = a[i][j] - quot * a[k][j];
                if (!a[i][k].is_zero()) clean = false;
            }
            for (std::size_t j = k + 1; j < q; ++j) {
                if (a[k][j].is_zero()) continue;
                const UPoly quot = divmod(a[k][j], a[k][k]).first;
                for (std::size_t i = k; i < p; ++i) a[i][j] = a[i][j] - quot * a[i][k];
                if (!a[k][j].is_zero()) clean = false;
            }
            if (!clean) continue;

            bool divides = true;
            for (std::size_t i = k + 1; i < p && divides; ++i)
                for (std::size_t j = k + 1; j < q; ++j)
                    if (!a[i][j].is_zero() && !divmod(a[i][j], a[k][k]).second.is_zero()) {
                        for (std::size_t jj = k; jj < q; ++jj) a[k][jj] = a[k][jj] + a[i][jj];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (done) break;
        diag.push_back(a[k][k].monic());
    }
    std::vector<UPoly> out;
    for (auto& d : diag)
        if (d.degree() > 0) out.push_back(std::move(d));
    return out;
}

} // namespace detail

/// Invariant factors of the pencil as homogeneous forms. The pencil is viewed in
/// coordinates u, v with s = u, t = c u + v, where (1, c) is a point of maximal
/// rank; dehomogenizing at v = 1 then loses no elementary divisor, and the result
/// is mapped back to (s, t), so a root at [1:0] needs no special treatment.
inline std::vector<BinaryForm> invariant_factors(const Pencil& p)
{
    if (p.rows() == 0 || p.cols() == 0 || p.is_zero()) return {};
    const auto [nr, c] = detail::normal_rank_point(p);
    const QMatrix a = p.at(Rational(1), c);
    detail::PolyMatrix poly(p.rows(), std::vector<UPoly>(p.cols()));
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) poly[i][j] = UPoly{p.m2()(i, j), a(i, j)};
    std::vector<BinaryForm> out;
    for (const auto& e : detail::smith_invariant_factors(std::move(poly))) {
        // e is in u with v = 1: coefficient of u^(deg-i) v^i is e_(deg-i)
        std::vector<Rational> rev(e.coeffs().rbegin(), e.coeffs().rend());
        const BinaryForm uv(e.degree(), std::move(rev));
        out.push_back(substitute(uv, Rational(1), Rational(0), -c, Rational(1)).monic());
    }
    return out;
}

/// Reference implementation: d_k = D_k / D_(k-1) with D_k the gcd of all k x k
/// minors. Exponential; meant for small pencils and cross-checks.
inline std::vector<BinaryForm> invariant_factors_by_minors(const Pencil& p)
{
    const FormMatrix full = to_form_matrix(p);
    const std::size_t n = std::min(p.rows(), p.cols());
    std::vector<BinaryForm> out;
    BinaryForm prev = BinaryForm::constant(Rational(1));
    auto subsets = [](std::size_t total, std::size_t k) {
        std::vector<std::vector<std::size_t>> all;
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        if (k > total) return all;
        while (true) {
            all.push_back(idx);
            int i = static_cast<int>(k) - 1;
            while (i >= 0 && idx[i] == total - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        return all;
    };
    for (std::size_t k = 1; k <= n; ++k) {
        BinaryForm g(static_cast<int>(k));
        bool any = false;
        for (const auto& rs : subsets(p.rows(), k))
            for (const auto& cs : subsets(p.cols(), k)) {
                FormMatrix minor(k, std::vector<BinaryForm>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) minor[i][j] = full[rs[i]][cs[j]];
                const BinaryForm det = determinant(minor);
                if (det.is_zero()) continue;
                g = any ? gcd_binary(g, det) : det.monic();
                any = true;
            }
        if (!any) break;
        const BinaryForm d = divide_exact(g, prev).monic();
        if (d.degree() > 0) out.push_back(d);
        prev = g;
    }
    return out;
}

inline MinimalIndices minimal_indices(const Pencil& p)
{
    MinimalIndices out;
    const std::size_t nr = detail::normal_rank_point(p).first;
    auto split = [](const std::vector<int>& all, std::vector<int>& positive, int& zeros) {
        for (int e : all) {
            if (e == 0) ++zeros;
            else positive.push_back(e);
        }
    };
    split(detail::column_indices(p.m1(), p.m2(), nr), out.eps, out.zero_cols);
    split(detail::column_indices(p.m1().transpose(), p.m2().transpose(), nr), out.eta, out.zero_rows);
    return out;
}

inline void check_budgets(const KroneckerInvariants& k, std::size_t rows, std::size_t cols)
{
    const int f = k.regular_size();
    int row_budget = f + k.zero_rows, col_budget = f + k.zero_cols;
    for (int e : k.eps) {
        row_budget += e;
        col_budget += e + 1;
    }
    for (int e : k.eta) {
        row_budget += e + 1;
        col_budget += e;
    }
    ensure(row_budget == static_cast<int>(rows), "Kronecker row budget does not add up to " + std::to_string(rows));
    ensure(col_budget == static_cast<int>(cols), "Kronecker column budget does not add up to " + std::to_string(cols));
    for (std::size_t i = 1; i < k.invariant_factors.size(); ++i) {
        bool divides = true;
        try {
            divide_exact(k.invariant_factors[i], k.invariant_factors[i - 1]);
        } catch (const std::domain_error&) {
            divides = false;
        }
        ensure(divides, "invariant factors do not form a divisibility chain");
    }
}

inline KroneckerInvariants kronecker_invariants(const Pencil& p)
{
    const auto idx = minimal_indices(p);
    KroneckerInvariants k{idx.eps, idx.eta, invariant_factors(p), idx.zero_rows, idx.zero_cols};
    check_budgets(k, p.rows(), p.cols());
    return k;
}

// ---------------------------------------------------------------------------
// Rank

/// Flattening ranks are full in all three factors.
inline bool is_concise(const Pencil& p)
{
    if (p.rows() == 0 || p.cols() == 0) return false;
    QMatrix slots(2, p.rows() * p.cols());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) {
            slots(0, i * p.cols() + j) = p.m1()(i, j);
            slots(1, i * p.cols() + j) = p.m2()(i, j);
        }
    return rank(slots) == 2 && rank(hconcat(p.m1(), p.m2())) == p.rows() &&
           rank(vconcat(p.m1(), p.m2())) == p.cols();
}

struct PencilRankReport {
    KroneckerInvariants invariants;
    int f = 0;
    int m_F = 0;
    int rank = 0;
    bool concise = false;
};

inline PencilRankReport pencil_rank(const Pencil& p)
{
    PencilRankReport r;
    r.invariants = kronecker_invariants(p);
    r.f = r.invariants.regular_size();
    for (const auto& d : r.invariants.invariant_factors)
        if (has_multiple_root(d)) ++r.m_F;
    r.rank = r.f + r.m_F;
    for (int e : r.invariants.eps) r.rank += e + 1;
    for (int e : r.invariants.eta) r.rank += e + 1;
    r.concise = is_concise(p);
    return r;
}

// ---------------------------------------------------------------------------
// Eigenvalue structure

/// For every projective root of the regular part, the partition given by its
/// multiplicities across the invariant factors (its Jordan block sizes). Sorted,
/// one entry per root over the algebraic closure.
inline std::vector<std::vector<int>> eigen_partitions(const std::vector<BinaryForm>& factors)
{
    if (factors.empty()) return {};
    struct Piece {
        BinaryForm roots;
        std::vector<int> exps;
    };
    std::vector<Piece> pieces;
    for (const auto& [e, j] : squarefree_decompose(factors.back()).parts) pieces.push_back({e, {}});
    for (const auto& d : factors) {
        const auto parts = squarefree_decompose(d).parts;
        std::vector<Piece> next;
        for (const auto& piece : pieces) {
            BinaryForm rest = piece.roots;
            for (const auto& [e, m] : parts) {
                const BinaryForm g = gcd_binary(rest, e);
                if (g.degree() == 0) continue;
                auto exps = piece.exps;
                exps.push_back(m);
                next.push_back({g, std::move(exps)});
                rest = divide_exact(rest, g);
            }
            if (rest.degree() > 0) {
                auto exps = piece.exps;
                exps.push_back(0);
                next.push_back({rest, std::move(exps)});
            }
        }
        pieces = std::move(next);
    }
    std::vector<std::vector<int>> out;
    for (const auto& piece : pieces) {
        std::vector<int> partition;
        for (int e : piece.exps)
            if (e > 0) partition.push_back(e);
        std::sort(partition.rbegin(), partition.rend());
        for (int i = 0; i < piece.roots.degree(); ++i) out.push_back(partition);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace rankloci
