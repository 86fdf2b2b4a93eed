#pragma once

// JSON encoding of inputs and reports. Rationals are always strings ("p" or
// "p/q"); integer JSON numbers are accepted on input, floats are rejected.

#include "rankloci/binary_apolarity.hpp"
#include "rankloci/forms.hpp"
#include "rankloci/orbits.hpp"
#include "rankloci/pencil.hpp"
#include "rankloci/t244.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace rankloci::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Decoding. Every malformed input throws std::invalid_argument.

inline Rational rational_from_json(const json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    throw std::invalid_argument("expected a rational as a string or integer, got " + j.dump());
}

inline BinaryForm binary_form_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw std::invalid_argument("binary form needs {\"degree\": d, \"coeffs\": [...]}");
    std::vector<Rational> coeffs;
    for (const auto& c : j["coeffs"]) coeffs.push_back(rational_from_json(c));
    if (coeffs.empty()) throw std::invalid_argument("binary form needs at least one coefficient");
    const int degree = j.contains("degree") ? j["degree"].get<int>() : static_cast<int>(coeffs.size()) - 1;
    return BinaryForm(degree, std::move(coeffs));
}

inline QMatrix matrix_from_json(const json& j)
{
    if (!j.is_array() || j.empty() || !j.front().is_array())
        throw std::invalid_argument("matrix must be a nonempty array of rows");
    const std::size_t cols = j.front().size();
    QMatrix m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw std::invalid_argument("matrix rows differ in length");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(j[i][c]);
    }
    return m;
}

/// [M1, M2] or {"m1": M1, "m2": M2}.
inline Pencil pencil_from_json(const json& j)
{
    if (j.is_array() && j.size() == 2) return {matrix_from_json(j[0]), matrix_from_json(j[1])};
    if (j.is_object() && j.contains("m1") && j.contains("m2")) return {matrix_from_json(j["m1"]), matrix_from_json(j["m2"])};
    throw std::invalid_argument("tensor must be [M1, M2] or {\"m1\": ..., \"m2\": ...}");
}

/// {"n": n, "d": d, "terms": {"[2,1,0]": "1", ...}}.
inline MultiForm form_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("n") || !j.contains("d") || !j.contains("terms") || !j["terms"].is_object())
        throw std::invalid_argument("form needs {\"n\", \"d\", \"terms\"}");
    MultiForm f(j["n"].get<int>(), j["d"].get<int>());
    for (const auto& [key, value] : j["terms"].items()) {
        const json exponent = json::parse(key, nullptr, false);
        if (!exponent.is_array()) throw std::invalid_argument("term key must be an exponent array, got " + key);
        Exponent e;
        for (const auto& k : exponent) {
            if (!k.is_number_integer()) throw std::invalid_argument("exponents must be integers in " + key);
            e.push_back(k.get<int>());
        }
        f.add_term(e, rational_from_json(value));
    }
    return f;
}

// ---------------------------------------------------------------------------
// Encoding

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const BinaryForm& f)
{
    json coeffs = json::array();
    for (const auto& c : f.coeffs()) coeffs.push_back(to_string(c));
    return {{"degree", f.degree()}, {"coeffs", coeffs}, {"text", f.str()}};
}

inline json to_json(const QMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(i, c)));
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const Pencil& p) { return {{"m1", to_json(p.m1())}, {"m2", to_json(p.m2())}, {"text", p.str()}}; }

inline json to_json(const MultiForm& f)
{
    json terms = json::object();
    for (const auto& [e, v] : f.terms()) terms[json(e).dump()] = to_string(v);
    return {{"n", f.num_vars()}, {"d", f.degree()}, {"terms", terms}, {"text", f.str()}};
}

inline json to_json(const BinaryStratumReport& r)
{
    return {{"degree", r.degree},
            {"border_rank", r.border_rank},
            {"rank", r.rank},
            {"theta", to_json(r.theta)},
            {"theta_squarefree", r.theta_squarefree},
            {"kernel_dim", r.kernel_dim},
            {"locus_label", r.locus_label},
            {"generic_rank", r.generic_rank},
            {"maximal_rank", r.maximal_rank}};
}

inline json to_json(const KroneckerInvariants& k)
{
    json factors = json::array();
    for (const auto& d : k.invariant_factors) factors.push_back(to_json(d));
    return {{"eps", k.eps},
            {"eta", k.eta},
            {"invariant_factors", factors},
            {"zero_rows", k.zero_rows},
            {"zero_cols", k.zero_cols},
            {"normal_rank", k.normal_rank()}};
}

inline json to_json(const PencilRankReport& r)
{
    return {{"invariants", to_json(r.invariants)}, {"f", r.f}, {"m_F", r.m_F}, {"rank", r.rank}, {"concise", r.concise}};
}

inline json to_json(const ConcisenessReport& r)
{
    json basis = json::array();
    for (const auto& l : r.essential_basis) basis.push_back(to_json(l));
    return {{"essential_count", r.essential_count},
            {"concise", r.concise},
            {"essential_basis", basis},
            {"restricted", to_json(r.restricted)}};
}

inline json to_json(const GenericRank& g) { return {{"g", g.g}, {"hypersurface", g.hypersurface}}; }

inline json to_json(const MaxRankBounds& b)
{
    return {{"codim_plus_one", b.codim_plus_one},
            {"two_g", b.two_g},
            {"refined", b.refined},
            {"dimension_count_bound", b.dimension_count_bound},
            {"known_exact", b.known_exact ? json(*b.known_exact) : json(nullptr)},
            {"best", b.best}};
}

inline json to_json(const OrbitReport& r)
{
    return {{"group_dim", r.group_dim},
            {"stabilizer_dim", r.stabilizer_dim},
            {"projective_stabilizer_dim", r.projective_stabilizer_dim},
            {"affine_orbit_dim", r.affine_orbit_dim},
            {"projective_orbit_dim", r.projective_orbit_dim}};
}

inline json to_json(const OrbitSignature& s)
{
    return {{"eps", s.eps}, {"eta", s.eta}, {"jordan_partitions", s.partitions}};
}

inline json to_json(const CrossRatioClass& c)
{
    json ratios = json::array();
    for (const auto& r : c.cross_ratios) ratios.push_back(to_string(r));
    return {{"rational_roots", c.rational_roots},
            {"cross_ratios", ratios},
            {"I", to_string(c.I)},
            {"J", to_string(c.J)},
            {"j_invariant", to_string(c.j_invariant)}};
}

inline json to_json(const T244Report& r)
{
    return {{"concise", r.concise},
            {"det", to_json(r.det)},
            {"discriminant", to_string(r.discriminant)},
            {"rank", r.rank},
            {"orbit_id", r.orbit_id},
            {"orbit_dim", r.orbit_dim},
            {"locus", to_string(r.locus)},
            {"signature", to_json(r.signature)},
            {"cross_ratio", r.cross_ratio ? to_json(*r.cross_ratio) : json(nullptr)}};
}

inline json to_json(const NestingRun& r)
{
    json histogram = json::object();
    for (const auto& [rank, count] : r.rank_histogram) histogram[std::to_string(rank)] = count;
    json degenerate = json::array();
    for (const auto& d : r.degenerate)
        degenerate.push_back({{"trial", d.trial}, {"rank", d.rank}, {"orbit_id", d.orbit_id}, {"det", d.det}});
    return {{"base", r.base},
            {"expected_rank", r.expected_rank},
            {"trials", r.trials},
            {"generic", r.generic},
            {"rank_histogram", histogram},
            {"degenerate", degenerate}};
}

inline json to_json(const NestingSummary& s)
{
    return {{"seed", s.seed},
            {"entry_bound", s.entry_bound},
            {"t6_plus_rank_one", to_json(s.t6_plus_rank_one)},
            {"t5_plus_rank_one", to_json(s.t5_plus_rank_one)}};
}

} // namespace rankloci::io
