#pragma once

// Classification of 2 x 4 x 4 tensors (4 x 4 pencils) into G-orbits, with
// G = GL2 x GL4 x GL4: the two codimension-one families T4, T5, fourteen
// further concise orbits, and the nonconcise remainder.

#include "rankloci/binary_form.hpp"
#include "rankloci/errors.hpp"
#include "rankloci/orbits.hpp"
#include "rankloci/pencil.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace rankloci {

// ---------------------------------------------------------------------------
// Binary quartics

using QuarticCoeffs = std::array<Rational, 5>;

/// (a0..a4) with f = a0 s^4 + a1 s^3 t + a2 s^2 t^2 + a3 s t^3 + a4 t^4.
inline QuarticCoeffs quartic_coeffs(const BinaryForm& f)
{
    if (f.degree() != 4) throw std::invalid_argument("quartic_coeffs needs a degree-4 form");
    return {f[0], f[1], f[2], f[3], f[4]};
}

/// Determinant of a square 4 x 4 pencil.
inline BinaryForm det_t244(const Pencil& p)
{
    if (p.rows() != 4 || p.cols() != 4) throw std::invalid_argument("expected a 4x4 pencil");
    return det_pencil(p);
}

inline Rational discriminant_quartic(const Rational& a0, const Rational& a1, const Rational& a2, const Rational& a3,
                                     const Rational& a4)
{
    auto p = [](const Rational& x, int e) {
        Rational r = 1;
        for (int i = 0; i < e; ++i) r *= x;
        return r;
    };
    return 256 * p(a0, 3) * p(a4, 3) - 192 * p(a0, 2) * a1 * a3 * p(a4, 2) - 128 * p(a0, 2) * p(a2, 2) * p(a4, 2) +
           144 * p(a0, 2) * a2 * p(a3, 2) * a4 - 27 * p(a0, 2) * p(a3, 4) + 144 * a0 * p(a1, 2) * a2 * p(a4, 2) -
           6 * a0 * p(a1, 2) * p(a3, 2) * a4 - 80 * a0 * a1 * p(a2, 2) * a3 * a4 + 18 * a0 * a1 * a2 * p(a3, 3) +
           16 * a0 * p(a2, 4) * a4 - 4 * a0 * p(a2, 3) * p(a3, 2) - 27 * p(a1, 4) * p(a4, 2) +
           18 * p(a1, 3) * a2 * a3 * a4 - 4 * p(a1, 3) * p(a3, 3) - 4 * p(a1, 2) * p(a2, 3) * a4 +
           p(a1, 2) * p(a2, 2) * p(a3, 2);
}

inline Rational discriminant_quartic(const QuarticCoeffs& a) { return discriminant_quartic(a[0], a[1], a[2], a[3], a[4]); }

/// The degree-2 and degree-3 invariants; 27 * discriminant = 4 I^3 - J^2.
struct QuarticInvariants {
    Rational I;
    Rational J;
};

inline QuarticInvariants quartic_invariants(const QuarticCoeffs& a)
{
    QuarticInvariants q;
    q.I = 12 * a[0] * a[4] - 3 * a[1] * a[3] + a[2] * a[2];
    q.J = 72 * a[0] * a[2] * a[4] + 9 * a[1] * a[2] * a[3] - 27 * a[0] * a[3] * a[3] - 27 * a[4] * a[1] * a[1] -
          2 * a[2] * a[2] * a[2];
    return q;
}

/// A point (s : t) of P^1 with rational coordinates.
struct ProjectivePoint {
    Rational s;
    Rational t;
};

namespace detail {

/// Continued-fraction convergents of x, shortest first.
inline std::vector<Rational> convergents(long double x, int max_terms = 40)
{
    std::vector<Rational> out;
    Integer h_prev = 1, h = 0, k_prev = 0, k = 1;
    long double rest = x;
    for (int i = 0; i < max_terms; ++i) {
        const long double a_ld = std::floor(rest);
        if (!std::isfinite(a_ld) || std::fabs(a_ld) > 1e18L) break;
        const Integer a(static_cast<long long>(a_ld));
        const Integer h_next = a * h_prev + h;
        const Integer k_next = a * k_prev + k;
        h = h_prev;
        k = k_prev;
        h_prev = h_next;
        k_prev = k_next;
        out.push_back(Rational(h_prev) / Rational(k_prev));
        const long double frac_part = rest - a_ld;
        if (frac_part < 1e-18L) break;
        rest = 1.0L / frac_part;
    }
    return out;
}

/// Complex roots of a univariate polynomial (ascending coefficients, nonzero leading) by Durand-Kerner.
inline std::vector<std::complex<long double>> approximate_roots(const UPoly& p)
{
    const int n = p.degree();
    std::vector<std::complex<long double>> z(n);
    if (n <= 0) return z;
    std::vector<long double> c(n + 1);
    const Rational lead = p.leading();
    for (int i = 0; i <= n; ++i) c[i] = static_cast<long double>((p.coeff(i) / lead).convert_to<long double>());
    auto eval = [&](std::complex<long double> x) {
        std::complex<long double> acc = 0;
        for (int i = n; i >= 0; --i) acc = acc * x + c[i];
        return acc;
    };
    long double radius = 1;
    for (int i = 0; i < n; ++i) radius = std::max(radius, 1 + std::fabs(c[i]));
    const std::complex<long double> seed(0.4L, 0.9L);
    for (int i = 0; i < n; ++i) z[i] = radius * std::pow(seed, i);
    for (int iter = 0; iter < 2000; ++iter) {
        long double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<long double> denom = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            if (std::abs(denom) == 0) denom = 1e-30L;
            const auto step = eval(z[i]) / denom;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-30L) break;
    }
    return z;
}

} // namespace detail

/// Distinct rational projective roots of f, each verified exactly.
inline std::vector<ProjectivePoint> rational_roots(const BinaryForm& f)
{
    if (f.is_zero()) throw std::invalid_argument("roots of the zero form");
    std::vector<ProjectivePoint> out;
    const auto stripped = detail::strip_monomial(f);
    if (stripped.t_pow > 0) out.push_back({Rational(1), Rational(0)});
    if (stripped.s_pow > 0) out.push_back({Rational(0), Rational(1)});
    const UPoly core = stripped.core.dehomogenize();
    std::vector<Rational> found;
    for (const auto& z : detail::approximate_roots(core)) {
        if (std::fabs(z.imag()) > 1e-6L * std::max(1.0L, std::abs(z))) continue;
        const long double tol = 1e-9L * std::max(1.0L, std::fabs(z.real()));
        for (const auto& cand : detail::convergents(z.real())) {
            if (std::fabs(cand.convert_to<long double>() - z.real()) > tol || !core(cand).is_zero()) continue;
            if (std::find(found.begin(), found.end(), cand) == found.end()) found.push_back(cand);
            break;
        }
    }
    for (const auto& x : found) out.push_back({Rational(1), x});
    return out;
}

/// Permutation-invariant fingerprint of four points on P^1, compared through the
/// j-invariant I^3 / (4 I^3 - J^2) of the quartic vanishing on them.
struct CrossRatioClass {
    bool rational_roots = false;
    std::vector<Rational> cross_ratios; // sorted {l, 1/l, 1-l, 1/(1-l), l/(l-1), (l-1)/l}; empty unless rational
    Rational I;
    Rational J;
    Rational j_invariant;

    friend bool operator==(const CrossRatioClass& a, const CrossRatioClass& b) { return a.j_invariant == b.j_invariant; }
};

inline Rational bracket(const ProjectivePoint& a, const ProjectivePoint& b) { return a.s * b.t - b.s * a.t; }

/// [12][43] / ([13][42]).
inline Rational cross_ratio(const ProjectivePoint& p1, const ProjectivePoint& p2, const ProjectivePoint& p3,
                            const ProjectivePoint& p4)
{
    const Rational den = bracket(p1, p3) * bracket(p4, p2);
    if (den.is_zero()) throw std::invalid_argument("cross-ratio of coincident points");
    return bracket(p1, p2) * bracket(p4, p3) / den;
}

inline std::vector<Rational> cross_ratio_orbit(const Rational& l)
{
    std::vector<Rational> out{l, 1 / l, 1 - l, 1 / (1 - l), l / (l - 1), (l - 1) / l};
    std::sort(out.begin(), out.end());
    return out;
}

/// Requires a squarefree quartic.
inline CrossRatioClass cross_ratio_class(const BinaryForm& quartic)
{
    if (quartic.degree() != 4 || has_multiple_root(quartic))
        throw std::invalid_argument("cross-ratio class needs a squarefree quartic");
    CrossRatioClass c;
    const auto inv = quartic_invariants(quartic_coeffs(quartic));
    c.I = inv.I;
    c.J = inv.J;
    const Rational delta = 4 * inv.I * inv.I * inv.I - inv.J * inv.J;
    ensure(!delta.is_zero(), "squarefree quartic with vanishing 4I^3 - J^2");
    c.j_invariant = inv.I * inv.I * inv.I / delta;
    const auto roots = rational_roots(quartic);
    if (roots.size() == 4) {
        c.rational_roots = true;
        c.cross_ratios = cross_ratio_orbit(cross_ratio(roots[0], roots[1], roots[2], roots[3]));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Orbit families

/// Kronecker data that is constant on G-orbits of concise 4 x 4 pencils.
struct OrbitSignature {
    std::vector<int> eps;
    std::vector<int> eta;
    std::vector<std::vector<int>> partitions; // Jordan block sizes per eigenvalue

    friend bool operator==(const OrbitSignature&, const OrbitSignature&) = default;

    std::string str() const
    {
        std::ostringstream out;
        auto list = [&](const std::vector<int>& v) {
            out << "[";
            for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
            out << "]";
        };
        out << "eps=";
        list(eps);
        out << " eta=";
        list(eta);
        out << " jordan=[";
        for (std::size_t i = 0; i < partitions.size(); ++i) {
            out << (i ? "," : "");
            list(partitions[i]);
        }
        out << "]";
        return out.str();
    }
};

inline OrbitSignature orbit_signature(const KroneckerInvariants& k)
{
    return {k.eps, k.eta, eigen_partitions(k.invariant_factors)};
}

/// T4(l1..l4) = diag(s + l_i t).
inline Pencil t4_pencil(const std::array<Rational, 4>& lambda)
{
    QMatrix m2(4, 4);
    for (int i = 0; i < 4; ++i) m2(i, i) = lambda[i];
    return {QMatrix::identity(4), m2};
}

/// T5(l1, l2, l3): a size-2 Jordan block at l1 plus simple eigenvalues l2, l3.
inline Pencil t5_pencil(const Rational& l1, const Rational& l2, const Rational& l3)
{
    QMatrix m2(4, 4);
    m2(0, 0) = m2(1, 1) = l1;
    m2(0, 1) = 1;
    m2(2, 2) = l2;
    m2(3, 3) = l3;
    return {QMatrix::identity(4), m2};
}

/// s I_n (+) s I_n with t I_n in the upper right block: the maximal-rank 2 x 2n x 2n tensor.
inline Pencil t6_pencil(int n)
{
    if (n < 1) throw std::invalid_argument("n must be positive");
    QMatrix m2(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) m2(i, n + i) = 1;
    return {QMatrix::identity(2 * n), m2};
}

struct Table1Entry {
    std::string id;
    Pencil representative;
    int orbit_dim = 0;
    int rank = 0;
};

namespace detail {

/// Rows of a pencil written as (M1 row, M2 row) integer pairs: entry = a s + b t.
inline Pencil pencil_from_pairs(const std::array<std::array<std::pair<int, int>, 4>, 4>& e)
{
    QMatrix m1(4, 4), m2(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            m1(i, j) = e[i][j].first;
            m2(i, j) = e[i][j].second;
        }
    return {m1, m2};
}

} // namespace detail

/// The fourteen concise orbits of dimension at most 29 other than T4 and T5, with
/// their orbit dimensions and ranks. Ids are stable and shared with fixtures/table1.json.
inline const std::vector<Table1Entry>& table1_entries()
{
    using P = std::pair<int, int>;
    constexpr P o{0, 0}, S{1, 0}, T{0, 1}, SpT{1, 1}, SmT{1, -1};
    static const std::vector<Table1Entry> entries{
        {"table1.01", detail::pencil_from_pairs({{{S, T, o, o}, {o, S, o, o}, {o, o, S, T}, {o, o, o, S}}}), 24, 6},
        {"table1.02", detail::pencil_from_pairs({{{S, T, o, o}, {o, S, T, o}, {o, o, o, S}, {o, o, o, T}}}), 26, 5},
        {"table1.03", detail::pencil_from_pairs({{{S, T, o, o}, {o, S, T, o}, {o, o, S, o}, {o, o, o, SpT}}}), 29, 5},
        {"table1.04", detail::pencil_from_pairs({{{S, T, o, o}, {o, o, S, o}, {o, o, T, S}, {o, o, o, T}}}), 26, 5},
        {"table1.05", detail::pencil_from_pairs({{{S, T, o, o}, {o, S, o, o}, {o, o, SpT, T}, {o, o, o, SpT}}}), 29, 5},
        {"table1.06", detail::pencil_from_pairs({{{S, T, o, o}, {o, o, S, o}, {o, o, T, o}, {o, o, o, S}}}), 25, 5},
        {"table1.07", detail::pencil_from_pairs({{{S, T, o, o}, {o, S, T, o}, {o, o, S, T}, {o, o, o, S}}}), 28, 5},
        {"table1.08", detail::pencil_from_pairs({{{S, T, o, o}, {o, S, o, o}, {o, o, S, o}, {o, o, o, S}}}), 22, 5},
        {"table1.09", detail::pencil_from_pairs({{{S, T, o, o}, {o, S, o, o}, {o, o, SpT, o}, {o, o, o, SpT}}}), 27, 5},
        {"table1.10", detail::pencil_from_pairs({{{S, o, o, o}, {o, S, o, o}, {o, o, SpT, o}, {o, o, o, SmT}}}), 28, 4},
        {"table1.11", detail::pencil_from_pairs({{{S, T, o, o}, {o, S, o, o}, {o, o, S, o}, {o, o, o, SpT}}}), 27, 5},
        {"table1.12", detail::pencil_from_pairs({{{S, o, o, o}, {o, S, o, o}, {o, o, SpT, o}, {o, o, o, SpT}}}), 25, 4},
        {"table1.13", detail::pencil_from_pairs({{{S, T, o, o}, {o, S, T, o}, {o, o, S, o}, {o, o, o, S}}}), 26, 5},
        {"table1.14", detail::pencil_from_pairs({{{S, o, o, o}, {o, S, o, o}, {o, o, S, o}, {o, o, o, SpT}}}), 23, 4},
    };
    return entries;
}

struct OrbitFamily {
    std::string id;
    OrbitSignature signature;
    int orbit_dim = 0;
};

/// Signatures of T4, T5 and the fourteen tabulated orbits, computed from representatives.
/// The first call checks that all sixteen are pairwise distinct and that the
/// stabilizer computation reproduces every tabulated orbit dimension and rank.
inline const std::vector<OrbitFamily>& orbit_families()
{
    static const std::vector<OrbitFamily> families = [] {
        std::vector<OrbitFamily> out;
        const Pencil t4 = t4_pencil({Rational(0), Rational(1), Rational(2), Rational(3)});
        const Pencil t5 = t5_pencil(Rational(0), Rational(1), Rational(-1));
        out.push_back({"T4", orbit_signature(kronecker_invariants(t4)), pencil_stabilizer(t4).projective_orbit_dim});
        out.push_back({"T5", orbit_signature(kronecker_invariants(t5)), pencil_stabilizer(t5).projective_orbit_dim});
        ensure(out[0].orbit_dim == 30 && out[1].orbit_dim == 30, "T4/T5 orbits are not of codimension one");
        for (const auto& e : table1_entries()) {
            const auto report = pencil_rank(e.representative);
            const int dim = pencil_stabilizer(e.representative).projective_orbit_dim;
            ensure(report.concise, e.id + " representative is not concise");
            ensure(dim == e.orbit_dim, e.id + ": computed orbit dimension " + std::to_string(dim) +
                                           " differs from tabulated " + std::to_string(e.orbit_dim));
            ensure(report.rank == e.rank, e.id + ": computed rank " + std::to_string(report.rank) +
                                              " differs from tabulated " + std::to_string(e.rank));
            out.push_back({e.id, orbit_signature(report.invariants), dim});
        }
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = i + 1; j < out.size(); ++j)
                ensure(!(out[i].signature == out[j].signature),
                       "orbit signatures collide: " + out[i].id + " and " + out[j].id);
        return out;
    }();
    return families;
}

// ---------------------------------------------------------------------------
// Classification

enum class Locus { W4, W5, W6 };

inline std::string to_string(Locus l)
{
    switch (l) {
    case Locus::W4: return "W4";
    case Locus::W5: return "W5";
    case Locus::W6: return "W6";
    }
    return "?";
}

struct T244Report {
    bool concise = false;
    BinaryForm det;
    Rational discriminant;
    int rank = 0;
    std::string orbit_id; // "T4", "T5", "table1.NN" or "nonconcise"
    int orbit_dim = 0;    // projective
    Locus locus = Locus::W4;
    OrbitSignature signature;
    std::optional<CrossRatioClass> cross_ratio; // T4 only
};

inline Locus locus_of_rank(int rank)
{
    if (rank <= 4) return Locus::W4;
    return rank == 5 ? Locus::W5 : Locus::W6;
}

inline T244Report classify_t244(const Pencil& tensor)
{
    if (tensor.rows() != 4 || tensor.cols() != 4) throw std::invalid_argument("expected a 4x4 pencil");
    if (tensor.is_zero()) throw std::invalid_argument("classification of the zero tensor");
    T244Report r;
    r.det = det_t244(tensor);
    r.discriminant = discriminant_quartic(quartic_coeffs(r.det));
    ensure(r.discriminant.is_zero() == has_multiple_root(r.det),
           "discriminant vanishing disagrees with the repeated-root test for det = " + r.det.str());

    const auto rank_report = pencil_rank(tensor);
    r.concise = rank_report.concise;
    r.rank = rank_report.rank;
    r.locus = locus_of_rank(r.rank);
    r.signature = orbit_signature(rank_report.invariants);
    ensure(r.rank >= 1 && r.rank <= 6, "2x4x4 rank outside [1, 6]");

    if (!r.concise) {
        r.orbit_id = "nonconcise";
        r.orbit_dim = pencil_stabilizer(tensor).projective_orbit_dim;
    } else {
        const OrbitFamily* match = nullptr;
        int matches = 0;
        for (const auto& fam : orbit_families())
            if (fam.signature == r.signature) {
                match = &fam;
                ++matches;
            }
        ensure(matches == 1, "concise tensor matches " + std::to_string(matches) +
                                 " orbit families; signature " + r.signature.str());
        r.orbit_id = match->id;
        r.orbit_dim = match->orbit_dim;
        if (r.orbit_id == "T4") r.cross_ratio = cross_ratio_class(r.det);
    }
    ensure((r.locus == Locus::W6) == (r.orbit_id == "table1.01"), "rank 6 must coincide with the 24-dimensional orbit");
    ensure(r.rank < 5 || r.discriminant.is_zero(), "rank >= 5 tensor off the discriminant divisor");
    return r;
}

// ---------------------------------------------------------------------------
// Perturbation experiments

struct NestingSample {
    int trial = 0;
    int rank = 0;
    std::string orbit_id;
    std::string det;
};

struct NestingRun {
    std::string base;           // "T6" or "T5"
    int expected_rank = 0;
    int trials = 0;
    int generic = 0;            // samples with the expected outcome
    std::map<int, int> rank_histogram;
    std::vector<NestingSample> degenerate;
};

struct NestingSummary {
    std::uint64_t seed = 0;
    int entry_bound = 0;
    NestingRun t6_plus_rank_one;
    NestingRun t5_plus_rank_one;
};

/// Random u (x) v (x) w with entries in [-bound, bound] and no zero factor.
inline Pencil random_rank_one(std::mt19937_64& rng, int bound)
{
    if (bound < 1) throw std::invalid_argument("entry bound must be positive");
    std::uniform_int_distribution<int> dist(-bound, bound);
    auto vec = [&](int n) {
        std::vector<int> v;
        do {
            v.assign(n, 0);
            for (auto& x : v) x = dist(rng);
        } while (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; }));
        return v;
    };
    const auto u = vec(2), v = vec(4), w = vec(4);
    QMatrix m1(4, 4), m2(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            m1(i, j) = u[0] * v[i] * w[j];
            m2(i, j) = u[1] * v[i] * w[j];
        }
    return {m1, m2};
}

/// det = s^2 q with q a quadratic with two distinct roots, neither of them s = 0.
inline bool has_t5_determinant_shape(const BinaryForm& det)
{
    if (det.is_zero() || det.degree() != 4) return false;
    if (!det[3].is_zero() || !det[4].is_zero()) return false;
    const BinaryForm q{det[0], det[1], det[2]};
    return !q[2].is_zero() && !has_multiple_root(q);
}

namespace detail {

inline std::mt19937_64 trial_rng(std::uint64_t seed, int experiment, int trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(experiment), static_cast<std::uint32_t>(trial)};
    return std::mt19937_64(seq);
}

} // namespace detail

constexpr int kDefaultNestingBound = 100;

/// Adds seeded random rank-one tensors to T6 (expect rank 5, orbit T5) and to
/// T5(0,1,-1) (expect rank 4). Samples with any other outcome are listed as degenerate.
/// For T6 + (u0 s + u1 t) v w^T the determinant is s^2 (s^2 + (u0 s + u1 t)((w.v) s - c t))
/// with c = w[0..1].v[2..3], so u1 = 0 or c = 0 lands off the generic stratum.
inline NestingSummary nesting_experiment(std::uint64_t seed, int trials, int bound = kDefaultNestingBound)
{
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    NestingSummary s;
    s.seed = seed;
    s.entry_bound = bound;
    auto run = [&](NestingRun& out, const Pencil& base, int experiment, int expected_rank, auto&& is_generic) {
        out.expected_rank = expected_rank;
        out.trials = trials;
        for (int i = 0; i < trials; ++i) {
            auto rng = detail::trial_rng(seed, experiment, i);
            const Pencil sum = base + random_rank_one(rng, bound);
            const auto rep = classify_t244(sum);
            ++out.rank_histogram[rep.rank];
            if (is_generic(rep)) ++out.generic;
            else out.degenerate.push_back({i, rep.rank, rep.orbit_id, rep.det.str()});
        }
    };
    s.t6_plus_rank_one.base = "T6";
    run(s.t6_plus_rank_one, t6_pencil(2), 6, 5, [](const T244Report& r) {
        return r.rank == 5 && r.orbit_id == "T5" && has_t5_determinant_shape(r.det);
    });
    s.t5_plus_rank_one.base = "T5";
    run(s.t5_plus_rank_one, t5_pencil(Rational(0), Rational(1), Rational(-1)), 5, 4,
        [](const T244Report& r) { return r.rank == 4; });
    return s;
}

} // namespace rankloci
