#pragma once

// Waring rank of binary forms through the apolar ideal. A nonzero F of degree d
// has F^perp = (Theta, Psi) with deg Theta = r <= d + 2 - r; the rank is r when
// Theta is squarefree and d + 2 - r otherwise.

#include "rankloci/binary_form.hpp"
#include "rankloci/matrix.hpp"

#include <stdexcept>
#include <string>

namespace rankloci {

/// Matrix of Theta |-> Theta _| F on degree-k operators. Column j is the operator
/// alpha^(k-j) beta^j, row l the output monomial x^(d-k-l) y^l.
struct Catalecticant {
    int source_degree = 0;
    QMatrix matrix;
};

inline Catalecticant catalecticant(const BinaryForm& f, int k)
{
    const int d = f.degree();
    if (k < 0 || k > d)
        throw std::out_of_range("catalecticant degree " + std::to_string(k) + " outside [0, " + std::to_string(d) + "]");
    Catalecticant cat{k, QMatrix(d - k + 1, k + 1)};
    for (int l = 0; l <= d - k; ++l)
        for (int j = 0; j <= k; ++j) {
            const int i = l + j;
            if (f[i].is_zero()) continue;
            // alpha^(k-j) _| x^(d-i) and beta^j _| y^i
            cat.matrix(l, j) = f[i] * falling_factorial(d - i, k - j) * falling_factorial(i, j);
        }
    return cat;
}

/// Theta _| F for a binary operator Theta in (alpha, beta).
inline BinaryForm apolar_apply(const BinaryForm& theta, const BinaryForm& f)
{
    const int k = theta.degree();
    if (k > f.degree()) throw std::invalid_argument("operator degree exceeds form degree");
    const auto cat = catalecticant(f, k);
    BinaryForm out(f.degree() - k);
    for (int l = 0; l <= f.degree() - k; ++l)
        for (int j = 0; j <= k; ++j) out[l] += cat.matrix(l, j) * theta[j];
    return out;
}

struct ApolarGenerator {
    int degree = 0;      // r
    BinaryForm theta;    // in the dual variables, coefficient j on alpha^(r-j) beta^j
    int kernel_dim = 0;  // dim (F^perp)_r
};

inline ApolarGenerator apolar_theta(const BinaryForm& f)
{
    if (f.is_zero()) throw std::invalid_argument("apolar generator of the zero form");
    if (f.degree() < 1) throw std::invalid_argument("binary form must have degree >= 1");
    for (int k = 1; k <= f.degree(); ++k) {
        const auto kernel = kernel_basis(catalecticant(f, k).matrix);
        if (kernel.empty()) continue;
        return {k, BinaryForm(k, kernel.front()).monic(), static_cast<int>(kernel.size())};
    }
    throw std::logic_error("apolar ideal has no generator of degree <= d");
}

inline int binary_generic_rank(int d)
{
    if (d < 1) throw std::invalid_argument("degree must be >= 1");
    return (d + 2) / 2;
}

inline int binary_max_rank(int d)
{
    if (d < 1) throw std::invalid_argument("degree must be >= 1");
    return d;
}

struct BinaryStratumReport {
    int degree = 0;
    int border_rank = 0;
    int rank = 0;
    BinaryForm theta;
    bool theta_squarefree = false;
    int kernel_dim = 0;
    std::string locus_label;
    int generic_rank = 0;
    int maximal_rank = 0;
};

/// "σ_r" up to the generic rank, "W_k = τ(X)+jX" above it.
inline std::string binary_locus_label(int d, int rank)
{
    if (rank <= binary_generic_rank(d)) return "σ_" + std::to_string(rank);
    const int joins = d - rank;
    std::string label = "W_" + std::to_string(rank) + " = τ(X)";
    if (joins == 1) label += "+X";
    else if (joins > 1) label += "+" + std::to_string(joins) + "X";
    return label;
}

inline BinaryStratumReport binary_rank(const BinaryForm& f)
{
    const auto gen = apolar_theta(f);
    BinaryStratumReport report;
    report.degree = f.degree();
    report.border_rank = gen.degree;
    report.theta = gen.theta;
    report.kernel_dim = gen.kernel_dim;
    report.theta_squarefree = is_squarefree(gen.theta);
    // kernel_dim >= 2 only happens when r = d + 2 - r, where both readings agree
    report.rank = (report.theta_squarefree || gen.kernel_dim >= 2) ? gen.degree : f.degree() + 2 - gen.degree;
    report.generic_rank = binary_generic_rank(f.degree());
    report.maximal_rank = binary_max_rank(f.degree());
    report.locus_label = binary_locus_label(f.degree(), report.rank);
    return report;
}

} // namespace rankloci
