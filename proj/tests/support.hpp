#pragma once

// Seeded generators shared by the test suites.

#include "rankloci/binary_form.hpp"
#include "rankloci/matrix.hpp"
#include "rankloci/multiform.hpp"
#include "rankloci/pencil.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <vector>

namespace rankloci {

// Readable gtest failure output.
inline void PrintTo(const BinaryForm& f, std::ostream* os) { *os << f.str(); }
inline void PrintTo(const MultiForm& f, std::ostream* os) { *os << f.str(); }
inline void PrintTo(const Pencil& p, std::ostream* os) { *os << p.str(); }

} // namespace rankloci

namespace testsupport {

using namespace rankloci;

inline std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream = 0)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), 0x5eedu};
    return std::mt19937_64(seq);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational small_rational(std::mt19937_64& rng, int num_bound = 5, int den_bound = 3)
{
    return frac(uniform_int(rng, -num_bound, num_bound), uniform_int(rng, 1, den_bound));
}

inline Rational nonzero_rational(std::mt19937_64& rng, int num_bound = 5, int den_bound = 3)
{
    Rational r;
    do r = small_rational(rng, num_bound, den_bound);
    while (r.is_zero());
    return r;
}

inline BinaryForm random_binary_form(std::mt19937_64& rng, int degree, int bound = 5)
{
    std::vector<Rational> c(degree + 1);
    for (auto& x : c) x = uniform_int(rng, -bound, bound);
    return BinaryForm(degree, std::move(c));
}

inline BinaryForm random_nonzero_binary_form(std::mt19937_64& rng, int degree, int bound = 5)
{
    BinaryForm f;
    do f = random_binary_form(rng, degree, bound);
    while (f.is_zero());
    return f;
}

inline QMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound = 5)
{
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform_int(rng, -bound, bound);
    return m;
}

inline QMatrix random_invertible(std::mt19937_64& rng, std::size_t n, int bound = 3)
{
    for (;;) {
        QMatrix m = random_matrix(rng, n, n, bound);
        if (rank(m) == n) return m;
    }
}

inline Pencil random_pencil(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound = 5)
{
    return {random_matrix(rng, rows, cols, bound), random_matrix(rng, rows, cols, bound)};
}

/// Random (g1, A, B) change of coordinates.
inline Pencil random_conjugate(std::mt19937_64& rng, const Pencil& p)
{
    return act(p, random_invertible(rng, 2), random_invertible(rng, p.rows()), random_invertible(rng, p.cols()));
}

inline MultiForm random_form(std::mt19937_64& rng, int n, int d, int bound = 4)
{
    MultiForm f(n, d);
    for (const auto& e : monomials(n, d)) f.add_term(e, Rational(uniform_int(rng, -bound, bound)));
    return f;
}

inline MultiForm random_linear_form(std::mt19937_64& rng, int n, int bound = 3)
{
    std::vector<Rational> c(n);
    do
        for (auto& x : c) x = uniform_int(rng, -bound, bound);
    while (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x.is_zero(); }));
    return MultiForm::linear(c);
}

/// A pencil assembled from Kronecker blocks together with the invariants it must have.
struct CanonicalPencil {
    Pencil pencil;
    std::vector<int> eps, eta;
    int zero_rows = 0, zero_cols = 0;
    std::vector<int> factor_degrees; // ascending, matching the divisibility chain
    int m_F = 0;
    int rank = 0;
};

/// Jordan block of the given size at the root of s + lambda t, or at t = 0 when
/// lambda is empty (the eigenvalue at infinity).
inline Pencil jordan_pencil(int size, const std::optional<Rational>& lambda)
{
    if (lambda) return build_regular(jordan_block(size, *lambda));
    const Pencil finite = build_regular(jordan_block(size, Rational(0)));
    return {finite.m2(), finite.m1()};
}

/// Random block structure with at most max_dim rows and columns.
inline CanonicalPencil random_canonical_pencil(std::mt19937_64& rng, int max_dim = 10)
{
    static const std::vector<std::optional<Rational>> eigenvalues{
        Rational(0), Rational(1), Rational(-1), Rational(2), frac(1, 2), std::nullopt};
    CanonicalPencil c;
    std::vector<Pencil> blocks;
    std::map<int, std::vector<int>> sizes_by_eigenvalue;
    int rows = 0, cols = 0;
    const int attempts = uniform_int(rng, 1, 8);
    for (int a = 0; a < attempts; ++a) {
        const int kind = uniform_int(rng, 0, 4);
        const int size = uniform_int(rng, 1, 4);
        int dr = 0, dc = 0;
        switch (kind) {
        case 0: dr = size, dc = size + 1; break;
        case 1: dr = size + 1, dc = size; break;
        case 2: case 3: dr = dc = size; break;
        default: dr = uniform_int(rng, 0, 1), dc = uniform_int(rng, 0, 1); break;
        }
        if (rows + dr > max_dim || cols + dc > max_dim) continue;
        rows += dr;
        cols += dc;
        if (kind == 0) {
            c.eps.push_back(size);
            blocks.push_back(build_L(size));
        } else if (kind == 1) {
            c.eta.push_back(size);
            blocks.push_back(build_L_transpose(size));
        } else if (kind == 2 || kind == 3) {
            const int which = uniform_int(rng, 0, static_cast<int>(eigenvalues.size()) - 1);
            sizes_by_eigenvalue[which].push_back(size);
            blocks.push_back(jordan_pencil(size, eigenvalues[which]));
        } else {
            c.zero_rows += dr;
            c.zero_cols += dc;
            blocks.push_back(Pencil::zero(dr, dc));
        }
    }
    if (rows == 0 || cols == 0) {
        c.eps.push_back(1);
        blocks.push_back(build_L(1));
    }
    c.pencil = direct_sum(std::span<const Pencil>(blocks.data(), blocks.size()));
    std::sort(c.eps.begin(), c.eps.end());
    std::sort(c.eta.begin(), c.eta.end());

    std::size_t chain = 0;
    for (auto& [which, sizes] : sizes_by_eigenvalue) {
        std::sort(sizes.rbegin(), sizes.rend());
        chain = std::max(chain, sizes.size());
    }
    // The i-th largest invariant factor collects the i-th largest block of every eigenvalue.
    std::vector<int> degrees(chain, 0);
    std::vector<bool> repeated(chain, false);
    for (const auto& [which, sizes] : sizes_by_eigenvalue)
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            degrees[i] += sizes[i];
            if (sizes[i] >= 2) repeated[i] = true;
        }
    c.factor_degrees.assign(degrees.rbegin(), degrees.rend());
    c.m_F = static_cast<int>(std::count(repeated.begin(), repeated.end(), true));
    c.rank = c.m_F;
    for (int d : degrees) c.rank += d;
    for (int e : c.eps) c.rank += e + 1;
    for (int e : c.eta) c.rank += e + 1;
    return c;
}

} // namespace testsupport
