// Acceptance gate: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include "rankloci/binary_apolarity.hpp"
#include "rankloci/forms.hpp"
#include "rankloci/orbits.hpp"
#include "rankloci/pencil.hpp"
#include "rankloci/t244.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace rankloci;
using testsupport::rng_for;
using testsupport::uniform_int;

namespace {

/// Collects the first few failure messages of one criterion.
struct Check {
    int failures = 0;
    std::ostringstream detail;

    void expect(bool ok, const std::string& what)
    {
        if (ok) return;
        if (failures++ < 3) detail << (failures > 1 ? "; " : "") << what;
    }
};

struct Criterion {
    std::string id;
    std::string title;
    double limit_seconds; // 0 for no limit
    std::function<std::string(Check&)> body;
};

std::string ac1(Check& c)
{
    int matched = 0;
    for (const auto& e : table1_entries()) {
        const int rank = pencil_rank(e.representative).rank;
        const int dim = pencil_stabilizer(e.representative).projective_orbit_dim;
        c.expect(rank == e.rank && dim == e.orbit_dim,
                 e.id + ": rank " + std::to_string(rank) + " dim " + std::to_string(dim));
        matched += (rank == e.rank && dim == e.orbit_dim) ? 1 : 0;
    }
    const auto& t = table1_entries();
    c.expect(t.size() == 14, "expected 14 entries");
    c.expect(t.front().rank == 6 && t.front().orbit_dim == 24, "first entry is not rank 6 / dim 24");
    c.expect(t[2].rank == 5 && t[2].orbit_dim == 29, "entry 3 is not rank 5 / dim 29");
    c.expect(t.back().rank == 4 && t.back().orbit_dim == 23, "last entry is not rank 4 / dim 23");
    return std::to_string(matched) + "/14 rows match";
}

std::string ac2(Check& c)
{
    std::string dims;
    for (int n = 2; n <= 4; ++n) {
        const auto r = pencil_stabilizer(t6_pencil(n));
        c.expect(r.stabilizer_dim == 2 * n * n + 3, "n=" + std::to_string(n) + " stabilizer " + std::to_string(r.stabilizer_dim));
        c.expect(r.projective_orbit_dim == 6 * n * n, "n=" + std::to_string(n) + " dim " + std::to_string(r.projective_orbit_dim));
        dims += (n > 2 ? "/" : "") + std::to_string(r.projective_orbit_dim);
    }
    return "dims " + dims;
}

std::string ac3(Check& c)
{
    for (int seed = 0; seed < 20; ++seed) {
        auto rng = rng_for(seed, 1003);
        std::array<Rational, 4> l;
        for (int i = 0; i < 4;) {
            const Rational x = testsupport::small_rational(rng, 9, 4);
            if (std::find(l.begin(), l.begin() + i, x) == l.begin() + i) l[i++] = x;
        }
        const auto r = pencil_stabilizer(t4_pencil(l));
        c.expect(r.projective_stabilizer_dim == 6 && r.projective_orbit_dim == 30, "T4 seed " + std::to_string(seed));
    }
    const auto t5 = pencil_stabilizer(t5_pencil(Rational(0), Rational(1), Rational(-1)));
    c.expect(t5.projective_stabilizer_dim == 6 && t5.projective_orbit_dim == 30, "T5(0,1,-1)");
    return "20 T4 seeds + T5, projective stabilizer 6, orbit dim 30";
}

std::string ac4(Check& c)
{
    auto check_batch = [&](std::uint64_t stream, int count, int bound) {
        auto rng = rng_for(0, stream);
        int zero = 0;
        for (int i = 0; i < count; ++i) {
            const Pencil p = testsupport::random_pencil(rng, 4, 4, bound);
            const BinaryForm det = det_t244(p);
            const bool vanishes = discriminant_quartic(quartic_coeffs(det)).is_zero();
            // d f = s f_s + t f_t, so the partials share a factor exactly when f has a repeated one.
            const bool repeated = det.is_zero() || !gcd_binary(det.d_ds(), det.d_dt()).is_constant();
            c.expect(vanishes == repeated, "mismatch at sample " + std::to_string(i) + " of bound " + std::to_string(bound));
            c.expect(repeated == has_multiple_root(det), "has_multiple_root disagrees at sample " + std::to_string(i));
            zero += vanishes ? 1 : 0;
        }
        return zero;
    };
    const int main_zero = check_batch(1004, 1000, 5);
    // Entries in {-1, 0, 1} land on the discriminant often enough to exercise the other direction.
    const int small_zero = check_batch(1014, 300, 1);
    return "1000 pencils (" + std::to_string(main_zero) + " on the discriminant) + 300 small-entry pencils (" +
           std::to_string(small_zero) + " on it), " + std::to_string(c.failures) + " mismatches";
}

std::string ac5(Check& c)
{
    const auto s = nesting_experiment(0, 100);
    for (const NestingRun* run : {&s.t6_plus_rank_one, &s.t5_plus_rank_one}) {
        c.expect(run->generic >= 95, run->base + ": only " + std::to_string(run->generic) + " generic");
        c.expect(run->generic + static_cast<int>(run->degenerate.size()) == run->trials, run->base + ": unaccounted samples");
    }
    return "T6+X generic " + std::to_string(s.t6_plus_rank_one.generic) + "/100 (rank 5, det s^2 q), T5+X generic " +
           std::to_string(s.t5_plus_rank_one.generic) + "/100 (rank 4), degenerate " +
           std::to_string(s.t6_plus_rank_one.degenerate.size() + s.t5_plus_rank_one.degenerate.size());
}

std::string ac6(Check& c)
{
    for (int seed = 0; seed < 500; ++seed) {
        auto rng = rng_for(seed, 1006);
        const auto canon = testsupport::random_canonical_pencil(rng, 10);
        const Pencil p = testsupport::random_conjugate(rng, canon.pencil);
        const auto r = pencil_rank(p);
        const bool ok = r.invariants.eps == canon.eps && r.invariants.eta == canon.eta &&
                        r.invariants.zero_rows == canon.zero_rows && r.invariants.zero_cols == canon.zero_cols &&
                        r.invariants.factor_degrees() == canon.factor_degrees && r.m_F == canon.m_F &&
                        r.rank == canon.rank;
        c.expect(ok, "seed " + std::to_string(seed) + ": " + canon.pencil.str());
    }
    return "500 conjugated canonical pencils, " + std::to_string(c.failures) + " failures";
}

std::string ac7(Check& c)
{
    for (int d = 2; d <= 10; ++d) {
        c.expect(binary_rank(BinaryForm::monomial(Rational(1), d - 1, 1)).rank == d, "x^(d-1) y, d=" + std::to_string(d));
        for (int a = 1; a < d; ++a) {
            const int b = d - a;
            c.expect(binary_rank(BinaryForm::monomial(Rational(1), a, b)).rank == std::max(a, b) + 1,
                     "x^" + std::to_string(a) + " y^" + std::to_string(b));
        }
    }
    for (int d = 1; d <= 12; ++d) {
        c.expect(binary_generic_rank(d) == (d + 2) / 2, "generic rank d=" + std::to_string(d));
        c.expect(generic_waring_rank(2, d).g == (d + 2) / 2, "generic Waring rank n=2 d=" + std::to_string(d));
    }
    int sums = 0;
    for (int seed = 0; seed < 100; ++seed) {
        auto rng = rng_for(seed, 1007);
        const int d = uniform_int(rng, 1, 10);
        const int r = uniform_int(rng, 1, (d + 1) / 2);
        std::vector<Rational> points;
        while (static_cast<int>(points.size()) < r) {
            const Rational l = testsupport::small_rational(rng, 9, 4);
            if (std::find(points.begin(), points.end(), l) == points.end()) points.push_back(l);
        }
        BinaryForm f(d);
        for (const auto& l : points) f = f + testsupport::nonzero_rational(rng) * pow(BinaryForm::linear(1, l), d);
        if (f.is_zero()) continue;
        ++sums;
        c.expect(binary_rank(f).rank == r, "power sum seed " + std::to_string(seed));
    }
    return "monomials d <= 10, " + std::to_string(sums) + " power sums";
}

std::string ac8(Check& c)
{
    for (int n = 3; n <= 6; ++n) {
        c.expect(verify_identity(reznick_quartic(n), power_of_quadric(n, 2)), "quartic identity n=" + std::to_string(n));
        c.expect(verify_identity(reznick_sextic(n), power_of_quadric(n, 3)), "sextic identity n=" + std::to_string(n));
        c.expect(reznick_quartic_bound(n) == n * n, "quartic bound");
        c.expect(reznick_sextic_bound(n) == 4 * binomial(n, 3) + 2 * binomial(n, 2) + n, "sextic bound");
        c.expect(static_cast<std::int64_t>(reznick_quartic(n).size()) <= reznick_quartic_bound(n), "quartic term count");
        c.expect(static_cast<std::int64_t>(reznick_sextic(n).size()) <= reznick_sextic_bound(n), "sextic term count");
    }
    for (auto [n, k] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{3, 3}}) {
        const int lower = catalecticant_rank_bound(power_of_quadric(n, k), k);
        c.expect(lower == binomial(n - 1 + k, n - 1),
                 "catalecticant (" + std::to_string(n) + "," + std::to_string(k) + ") = " + std::to_string(lower));
    }
    return "identities n = 3..6, bounds n^2 and 4C(n,3)+2C(n,2)+n, catalecticant 6/10/10";
}

std::string ac9(Check& c)
{
    MultiForm f(3, 3);
    f.add_term({2, 1, 0}, Rational(1));
    f.add_term({0, 2, 1}, Rational(1));
    c.expect(form_stabilizer(f).projective_orbit_dim == 6, "x^2y + y^2z");
    c.expect(form_stabilizer(power_of_quadric(3, 2)).projective_orbit_dim == 5, "Q_3^2");

    int concise = 0;
    for (int seed = 0; concise < 50; ++seed) {
        auto rng = rng_for(seed, 1009);
        const int n = uniform_int(rng, 3, 4), d = uniform_int(rng, 3, 4);
        const MultiForm g = testsupport::random_form(rng, n, d, 2);
        if (g.is_zero() || !essential_variables(g).concise) continue;
        ++concise;
        const int dim = form_stabilizer(g).projective_orbit_dim;
        const int floor = static_cast<int>(binomial(n + 1, 2)) - 1;
        c.expect(dim > floor || (dim == floor && d % 2 == 0), "lower bound violated: " + g.str());
    }
    int nonconcise = 0;
    for (int seed = 0; nonconcise < 30; ++seed) {
        auto rng = rng_for(seed, 1010);
        const int n = uniform_int(rng, 3, 5), k = uniform_int(rng, 1, n - 1), d = uniform_int(rng, 2, 4);
        const MultiForm g = testsupport::random_form(rng, k, d, 3);
        const QMatrix a = testsupport::random_matrix(rng, k, n, 3);
        if (g.is_zero() || rank(a) < static_cast<std::size_t>(k)) continue;
        const MultiForm h = g.substitute(a);
        const auto ess = essential_variables(h);
        if (ess.concise) continue;
        ++nonconcise;
        const int kk = ess.essential_count;
        c.expect(form_stabilizer(h).projective_orbit_dim ==
                     form_stabilizer(ess.restricted).projective_orbit_dim + kk * (n - kk),
                 "additivity violated: " + h.str());
    }
    return "examples 6 and 5, " + std::to_string(concise) + " concise, " + std::to_string(nonconcise) + " nonconcise forms";
}

std::string ac10(Check& c)
{
    const std::map<std::pair<int, int>, int> exceptions{{{3, 4}, 6}, {{4, 4}, 10}, {{5, 3}, 8}, {{5, 4}, 15}};
    for (int n = 3; n <= 6; ++n)
        for (int d = 3; d <= 8; ++d) {
            const auto forms = binomial(n + d - 1, d);
            const auto it = exceptions.find({n, d});
            const int expected = it != exceptions.end() ? it->second : static_cast<int>((forms + n - 1) / n);
            c.expect(generic_waring_rank(n, d).g == expected, "generic (" + std::to_string(n) + "," + std::to_string(d) + ")");
        }
    for (auto [nd, value] : std::map<std::pair<int, int>, int>{{{3, 3}, 5}, {{3, 4}, 7}, {{3, 5}, 10}, {{4, 3}, 7}}) {
        const auto known = max_rank_bounds(nd.first, nd.second).known_exact;
        c.expect(known && *known == value, "known maximal rank (" + std::to_string(nd.first) + "," + std::to_string(nd.second) + ")");
    }
    return "24 generic ranks incl. exceptions 6/10/8/15; known maxima 5/7/10/7";
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {"AC1", "tabulated 2x4x4 orbit ranks and dimensions", 60, ac1},
        {"AC2", "maximal-rank locus dimension 6n^2, stabilizer 2n^2+3", 60, ac2},
        {"AC3", "T4/T5 stabilizers and codimension-one orbits", 0, ac3},
        {"AC4", "discriminant vanishes iff det has a repeated factor", 60, ac4},
        {"AC5", "rank-one perturbations of T6 and T5", 0, ac5},
        {"AC6", "Kronecker round trip", 300, ac6},
        {"AC7", "binary form ranks", 0, ac7},
        {"AC8", "power-of-quadric identities and catalecticant bounds", 120, ac8},
        {"AC9", "form orbit dimensions", 0, ac9},
        {"AC10", "generic and known maximal Waring ranks", 0, ac10},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        std::string summary;
        try {
            summary = cr.body(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (cr.limit_seconds > 0 && secs > cr.limit_seconds)
            check.expect(false, "took longer than " + std::to_string(static_cast<int>(cr.limit_seconds)) + " s");
        const bool ok = check.failures == 0;
        failed += ok ? 0 : 1;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << cr.id << " " << cr.title << ": " << summary;
        std::cout.setf(std::ios::fixed);
        std::cout.precision(2);
        std::cout << " (" << secs << " s)";
        if (!ok) std::cout << " -- " << check.detail.str();
        std::cout << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
