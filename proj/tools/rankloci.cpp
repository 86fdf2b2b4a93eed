// rankloci: command-line front end. Every command prints one CommandResult
// JSON document (or a flattened key/value table with --output table).
//
// Exit codes: 0 success, 2 malformed input, 3 invariant violation or fixture mismatch.

#include "rankloci/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#ifndef RANKLOCI_DEFAULT_FIXTURES
#define RANKLOCI_DEFAULT_FIXTURES "fixtures"
#endif

namespace {

using namespace rankloci;
using io::json;

constexpr int kExitMalformed = 2;
constexpr int kExitInvariant = 3;

/// Thrown when recomputed values disagree with a shipped fixture.
struct FixtureMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixture_dir()
{
    if (const char* env = std::getenv("RANKLOCI_FIXTURES"); env && *env) return env;
    return RANKLOCI_DEFAULT_FIXTURES;
}

std::optional<json> load_table1_fixture()
{
    std::ifstream in(fixture_dir() + "/table1.json");
    if (!in) return std::nullopt;
    return json::parse(in);
}

std::string fixture_version()
{
    try {
        const auto fixture = load_table1_fixture();
        if (fixture && fixture->contains("version")) return (*fixture)["version"].get<std::string>();
    } catch (const json::exception&) {
    }
    return "none";
}

json parse_json_arg(const std::string& text, const std::string& what)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument(what + " is not valid JSON");
    return j;
}

void flatten(const json& j, const std::string& prefix, std::ostream& out)
{
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

// ---------------------------------------------------------------------------
// Commands

json reproduce_table1()
{
    const auto fixture = load_table1_fixture();
    if (!fixture) throw std::invalid_argument("table1 fixture not found in " + fixture_dir());
    json rows = json::array();
    int matched = 0;
    for (const auto& entry : (*fixture)["entries"]) {
        const Pencil p = io::pencil_from_json(entry["representative"]);
        const auto rank_report = pencil_rank(p);
        const auto orbit = pencil_stabilizer(p);
        const bool match = rank_report.rank == entry["rank"].get<int>() &&
                           orbit.projective_orbit_dim == entry["orbit_dim"].get<int>() &&
                           io::to_json(orbit_signature(rank_report.invariants)) == entry["signature"];
        matched += match ? 1 : 0;
        rows.push_back({{"id", entry["id"]},
                        {"representative", p.str()},
                        {"computed_dim", orbit.projective_orbit_dim},
                        {"computed_rank", rank_report.rank},
                        {"fixture_dim", entry["orbit_dim"]},
                        {"fixture_rank", entry["rank"]},
                        {"match", match}});
    }
    json result{{"rows", rows}, {"matched", matched}, {"total", rows.size()}};
    if (matched != static_cast<int>(rows.size()))
        throw FixtureMismatch("table1: " + std::to_string(rows.size() - matched) + " rows differ from the fixture\n" +
                              result.dump(2));
    return result;
}

json reproduce_wm_dims(const std::vector<int>& ns)
{
    json rows = json::array();
    for (int n : ns) {
        if (n < 1) throw std::invalid_argument("--n must be positive");
        const auto r = pencil_stabilizer(t6_pencil(n));
        rows.push_back({{"n", n},
                        {"stabilizer_dim", r.stabilizer_dim},
                        {"expected_stabilizer_dim", 2 * n * n + 3},
                        {"projective_orbit_dim", r.projective_orbit_dim},
                        {"expected_orbit_dim", 6 * n * n},
                        {"match", r.stabilizer_dim == 2 * n * n + 3 && r.projective_orbit_dim == 6 * n * n}});
    }
    return {{"rows", rows}};
}

json identity_result(const std::string& id, int n)
{
    if (n < 1) throw std::invalid_argument("--n must be positive");
    PowerSumExpression e;
    MultiForm target;
    std::int64_t bound = 0;
    if (id == "reznick4") {
        e = reznick_quartic(n);
        target = power_of_quadric(n, 2);
        bound = reznick_quartic_bound(n);
    } else if (id == "reznick6") {
        e = reznick_sextic(n);
        target = power_of_quadric(n, 3);
        bound = reznick_sextic_bound(n);
    } else {
        throw std::invalid_argument("unknown identity id '" + id + "' (expected reznick4 or reznick6)");
    }
    return {{"id", id},
            {"n", n},
            {"verified", verify_identity(e, target)},
            {"terms", e.size()},
            {"rank_upper_bound", bound}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact rank and rank-locus computations for binary forms, pencils and forms"};
    app.require_subcommand(1);
    // Subcommands inherit this, so global options may follow the subcommand name.
    app.fallthrough();

    std::uint64_t seed = 0;
    int trials = 100;
    std::string output = "json";
    app.add_option("--seed", seed, "Master seed for randomized commands")->capture_default_str();
    app.add_option("--trials", trials, "Trials for experiment commands")->capture_default_str();
    app.add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();

    std::string form_text, m1_text, m2_text, tensor_text, pencil_text, id_text;
    int n = 0, d = 0, bound = kDefaultNestingBound;
    std::vector<int> wm_ns{2, 3, 4};

    auto* binary = app.add_subcommand("binary-rank", "Waring rank and locus of a binary form");
    binary->add_option("--form", form_text, R"(JSON {"degree": d, "coeffs": [...]})")->required();

    auto* pencil_cmd = app.add_subcommand("pencil-rank", "Kronecker invariants and rank of s*M1 + t*M2");
    pencil_cmd->add_option("--m1", m1_text, "JSON matrix")->required();
    pencil_cmd->add_option("--m2", m2_text, "JSON matrix")->required();

    auto* waring = app.add_subcommand("waring", "Generic and maximal Waring rank bounds");
    waring->add_option("--n", n, "Number of variables")->required();
    waring->add_option("--d", d, "Degree")->required();

    auto* concise = app.add_subcommand("concise", "Essential variables of a form");
    concise->add_option("--form", form_text, R"(JSON {"n", "d", "terms"})")->required();

    auto* identity = app.add_subcommand("verify-identity", "Verify a power-sum identity for Q_n^k");
    identity->add_option("--id", id_text, "reznick4 or reznick6")->required();
    identity->add_option("--n", n, "Number of variables")->required();

    auto* orbit = app.add_subcommand("orbit-dim", "Orbit and stabilizer dimensions");
    auto* orbit_pencil = orbit->add_option("--pencil", pencil_text, "JSON [M1, M2] or {m1, m2}");
    auto* orbit_form = orbit->add_option("--form", form_text, "JSON form");
    orbit_pencil->excludes(orbit_form);

    auto* t244 = app.add_subcommand("t244", "2x4x4 tensors");
    t244->require_subcommand(1);
    auto* classify = t244->add_subcommand("classify", "Classify a 2x4x4 tensor");
    classify->add_option("--tensor", tensor_text, "JSON [M1, M2] or {m1, m2}")->required();
    auto* nesting = t244->add_subcommand("nesting", "Rank-one perturbations of T6 and T5");
    nesting->add_option("--bound", bound, "Entry bound for the random rank-one tensors")->capture_default_str();

    auto* reproduce = app.add_subcommand("reproduce", "Recompute tabulated values");
    reproduce->require_subcommand(1);
    auto* table1 = reproduce->add_subcommand("table1", "The fourteen concise 2x4x4 orbits");
    auto* wm = reproduce->add_subcommand("wm-dims", "Dimension of the maximal-rank locus of 2 x 2n x 2n tensors");
    wm->add_option("--n", wm_ns, "Values of n")->capture_default_str();


    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitMalformed;
    }

    json doc;
    doc["seed"] = seed;
    doc["fixture_version"] = fixture_version();
    try {
        if (binary->parsed()) {
            doc["command"] = "binary-rank";
            const json in = parse_json_arg(form_text, "--form");
            doc["input_echo"] = {{"form", in}};
            doc["result"] = io::to_json(binary_rank(io::binary_form_from_json(in)));
        } else if (pencil_cmd->parsed()) {
            doc["command"] = "pencil-rank";
            const json j1 = parse_json_arg(m1_text, "--m1"), j2 = parse_json_arg(m2_text, "--m2");
            doc["input_echo"] = {{"m1", j1}, {"m2", j2}};
            doc["result"] = io::to_json(pencil_rank(Pencil(io::matrix_from_json(j1), io::matrix_from_json(j2))));
        } else if (waring->parsed()) {
            doc["command"] = "waring";
            doc["input_echo"] = {{"n", n}, {"d", d}};
            json result{{"generic", io::to_json(generic_waring_rank(n, d))}};
            if (n >= 2) result["max_rank_bounds"] = io::to_json(max_rank_bounds(n, d));
            if (n >= 2 && d >= 2) result["high_rank_implies_concise"] = high_rank_implies_concise(n, d);
            doc["result"] = result;
        } else if (concise->parsed()) {
            doc["command"] = "concise";
            const json in = parse_json_arg(form_text, "--form");
            doc["input_echo"] = {{"form", in}};
            doc["result"] = io::to_json(essential_variables(io::form_from_json(in)));
        } else if (identity->parsed()) {
            doc["command"] = "verify-identity";
            doc["input_echo"] = {{"id", id_text}, {"n", n}};
            doc["result"] = identity_result(id_text, n);
        } else if (orbit->parsed()) {
            doc["command"] = "orbit-dim";
            if (!pencil_text.empty()) {
                const json in = parse_json_arg(pencil_text, "--pencil");
                doc["input_echo"] = {{"pencil", in}};
                doc["result"] = io::to_json(pencil_stabilizer(io::pencil_from_json(in)));
            } else if (!form_text.empty()) {
                const json in = parse_json_arg(form_text, "--form");
                doc["input_echo"] = {{"form", in}};
                doc["result"] = io::to_json(form_stabilizer(io::form_from_json(in)));
            } else {
                throw std::invalid_argument("orbit-dim needs --pencil or --form");
            }
        } else if (classify->parsed()) {
            doc["command"] = "t244 classify";
            const json in = parse_json_arg(tensor_text, "--tensor");
            doc["input_echo"] = {{"tensor", in}};
            doc["result"] = io::to_json(classify_t244(io::pencil_from_json(in)));
        } else if (nesting->parsed()) {
            doc["command"] = "t244 nesting";
            doc["input_echo"] = {{"trials", trials}, {"bound", bound}};
            doc["result"] = io::to_json(nesting_experiment(seed, trials, bound));
        } else if (table1->parsed()) {
            doc["command"] = "reproduce table1";
            doc["input_echo"] = json::object();
            doc["result"] = reproduce_table1();
        } else if (wm->parsed()) {
            doc["command"] = "reproduce wm-dims";
            doc["input_echo"] = {{"n", wm_ns}};
            doc["result"] = reproduce_wm_dims(wm_ns);
        }
    } catch (const InvariantViolation& e) {
        std::cerr << json{{"error", "invariant_violation"}, {"message", e.what()}, {"partial", doc}}.dump(2) << "\n";
        return kExitInvariant;
    } catch (const FixtureMismatch& e) {
        std::cerr << json{{"error", "fixture_mismatch"}, {"message", e.what()}}.dump(2) << "\n";
        return kExitInvariant;
    } catch (const json::exception& e) {
        std::cerr << json{{"error", "malformed_input"}, {"message", e.what()}}.dump(2) << "\n";
        return kExitMalformed;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "malformed_input"}, {"message", e.what()}}.dump(2) << "\n";
        return kExitMalformed;
    } catch (const std::out_of_range& e) {
        std::cerr << json{{"error", "malformed_input"}, {"message", e.what()}}.dump(2) << "\n";
        return kExitMalformed;
    } catch (const std::domain_error& e) {
        std::cerr << json{{"error", "malformed_input"}, {"message", e.what()}}.dump(2) << "\n";
        return kExitMalformed;
    } catch (const std::logic_error& e) {
        std::cerr << json{{"error", "invariant_violation"}, {"message", e.what()}, {"partial", doc}}.dump(2) << "\n";
        return kExitInvariant;
    }

    if (output == "table") flatten(doc, "", std::cout);
    else std::cout << doc.dump(2) << "\n";
    return 0;
}
