#pragma once

// Orbit dimensions from Lie algebra stabilizers. The tangent space of the
// stabilizer at the identity is the kernel of g |-> drho(g).X, a linear system
// in the entries of g; the projective stabilizer solves drho(g).X = c X instead.

#include "rankloci/errors.hpp"
#include "rankloci/matrix.hpp"
#include "rankloci/multiform.hpp"
#include "rankloci/pencil.hpp"

#include <stdexcept>

namespace rankloci {

struct OrbitReport {
    int group_dim = 0;
    int stabilizer_dim = 0;            // annihilator of X
    int projective_stabilizer_dim = 0; // g with drho(g).X in span(X)
    int affine_orbit_dim = 0;
    int projective_orbit_dim = 0;
};

namespace detail {

/// Fills the report from the ranks of the plain and augmented systems.
inline OrbitReport orbit_report(int group_dim, std::size_t plain_rank, std::size_t augmented_rank)
{
    OrbitReport r;
    r.group_dim = group_dim;
    r.stabilizer_dim = group_dim - static_cast<int>(plain_rank);
    r.projective_stabilizer_dim = group_dim + 1 - static_cast<int>(augmented_rank);
    r.affine_orbit_dim = group_dim - r.stabilizer_dim;
    r.projective_orbit_dim = group_dim - r.projective_stabilizer_dim;
    ensure(r.projective_orbit_dim == r.affine_orbit_dim - 1,
           "scalars should act nontrivially: projective orbit must be one less than affine");
    return r;
}

/// Drops the last column.
inline QMatrix without_last_column(const QMatrix& m)
{
    QMatrix out(m.rows(), m.cols() - 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j + 1 < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

} // namespace detail

/// Stabilizer of s M1 + t M2 under GL2 x GLp x GLq, where (g1, g2, g3) with
/// g1 = [[a,b],[c,d]] acts by
///   ((as+ct) M1 + (bs+dt) M2) + (s g2 M1 + t g2 M2) - (s M1 g3 + t M2 g3).
inline OrbitReport pencil_stabilizer(const Pencil& pencil)
{
    if (pencil.is_zero()) throw std::invalid_argument("stabilizer of the zero pencil");
    const std::size_t p = pencil.rows(), q = pencil.cols();
    const QMatrix& m1 = pencil.m1();
    const QMatrix& m2 = pencil.m2();
    const std::size_t g2_at = 4, g3_at = 4 + p * p, scale_at = 4 + p * p + q * q;
    // Unknowns: a, b, c, d, g2 row-major, g3 row-major, then the scale c of the augmented system.
    QMatrix sys(2 * p * q, scale_at + 1);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            const std::size_t es = i * q + j;         // s-coefficient equation
            const std::size_t et = p * q + i * q + j; // t-coefficient equation
            sys(es, 0) = m1(i, j);
            sys(es, 1) = m2(i, j);
            sys(et, 2) = m1(i, j);
            sys(et, 3) = m2(i, j);
            for (std::size_t k = 0; k < p; ++k) {
                sys(es, g2_at + i * p + k) += m1(k, j);
                sys(et, g2_at + i * p + k) += m2(k, j);
            }
            for (std::size_t l = 0; l < q; ++l) {
                sys(es, g3_at + l * q + j) -= m1(i, l);
                sys(et, g3_at + l * q + j) -= m2(i, l);
            }
            sys(es, scale_at) = -m1(i, j);
            sys(et, scale_at) = -m2(i, j);
        }
    const int group_dim = static_cast<int>(scale_at);
    return detail::orbit_report(group_dim, rank(detail::without_last_column(sys)), rank(sys));
}

/// Stabilizer of F under GL(V) acting through the derivations
/// drho(g) F = sum_ij g_ij x_i dF/dx_j.
inline OrbitReport form_stabilizer(const MultiForm& f)
{
    if (f.is_zero()) throw std::invalid_argument("stabilizer of the zero form");
    const int n = f.num_vars();
    const auto basis = monomials(n, f.degree());
    std::map<Exponent, std::size_t> row_of;
    for (std::size_t r = 0; r < basis.size(); ++r) row_of[basis[r]] = r;
    QMatrix sys(basis.size(), static_cast<std::size_t>(n * n) + 1);
    for (int j = 0; j < n; ++j) {
        const MultiForm dj = f.partial(j);
        for (int i = 0; i < n; ++i) {
            const MultiForm col = MultiForm::variable(n, i) * dj;
            for (const auto& [e, v] : col.terms()) sys(row_of.at(e), i * n + j) = v;
        }
    }
    for (const auto& [e, v] : f.terms()) sys(row_of.at(e), n * n) = -v;
    return detail::orbit_report(n * n, rank(detail::without_last_column(sys)), rank(sys));
}

} // namespace rankloci
