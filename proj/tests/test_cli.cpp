#include <json.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

using nlohmann::json;

struct CliRun {
    int exit_code = -1;
    std::string out;
};

std::string quote(const std::string& arg)
{
    std::string q = "'";
    for (char c : arg) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

CliRun run(const std::vector<std::string>& args, const std::string& fixtures = RANKLOCI_FIXTURES_DIR)
{
    std::string cmd = "RANKLOCI_FIXTURES=" + quote(fixtures) + " " + quote(RANKLOCI_CLI);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json run_json(const std::vector<std::string>& args)
{
    const CliRun r = run(args);
    EXPECT_EQ(r.exit_code, 0) << r.out;
    return json::parse(r.out);
}

} // namespace

TEST(Cli, BinaryRank)
{
    const auto doc = run_json({"binary-rank", "--form", R"({"degree": 3, "coeffs": ["0", "1", "0", "0"]})"});
    EXPECT_EQ(doc["command"], "binary-rank");
    EXPECT_EQ(doc["result"]["rank"], 3);
    EXPECT_EQ(doc["seed"], 0);
    EXPECT_EQ(doc["fixture_version"], "table1-v1");
}

TEST(Cli, PencilRank)
{
    const auto doc = run_json({"pencil-rank", "--m1", "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]", "--m2",
                               "[[0,0,1,0],[0,0,0,1],[0,0,0,0],[0,0,0,0]]"});
    EXPECT_EQ(doc["result"]["rank"], 6);
}

TEST(Cli, Waring)
{
    const auto doc = run_json({"waring", "--n", "3", "--d", "4"});
    EXPECT_EQ(doc["result"]["generic"]["g"], 6);
    EXPECT_EQ(doc["result"]["max_rank_bounds"]["known_exact"], 7);
}

TEST(Cli, ConciseAndOrbitDim)
{
    const std::string form = R"({"n": 3, "d": 3, "terms": {"[2,1,0]": "1", "[0,2,1]": "1"}})";
    EXPECT_EQ(run_json({"concise", "--form", form})["result"]["concise"], true);
    EXPECT_EQ(run_json({"orbit-dim", "--form", form})["result"]["projective_orbit_dim"], 6);
}

TEST(Cli, VerifyIdentity)
{
    const auto doc = run_json({"verify-identity", "--id", "reznick6", "--n", "4"});
    EXPECT_EQ(doc["result"]["verified"], true);
    EXPECT_EQ(doc["result"]["rank_upper_bound"], 4 * 4 + 2 * 6 + 4);
}

TEST(Cli, ClassifyTensor)
{
    const auto doc = run_json({"t244", "classify", "--tensor",
                               R"({"m1": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],
                                   "m2": [[0,1,0,0],[0,0,1,0],[0,0,0,0],[0,0,0,1]]})"});
    EXPECT_EQ(doc["result"]["orbit_dim"], 29);
    EXPECT_EQ(doc["result"]["rank"], 5);
    EXPECT_EQ(doc["result"]["locus"], "W5");
}

TEST(Cli, ReproduceTable1)
{
    const auto doc = run_json({"reproduce", "table1"});
    EXPECT_EQ(doc["result"]["matched"], 14);
    EXPECT_EQ(doc["result"]["total"], 14);
    EXPECT_EQ(doc["result"]["rows"][0]["computed_dim"], 24);
    EXPECT_EQ(doc["result"]["rows"][13]["computed_rank"], 4);
}

TEST(Cli, ReproduceWmDims)
{
    const auto doc = run_json({"reproduce", "wm-dims", "--n", "2"});
    ASSERT_EQ(doc["result"]["rows"].size(), 1u);
    EXPECT_EQ(doc["result"]["rows"][0]["projective_orbit_dim"], 24);
    EXPECT_EQ(doc["result"]["rows"][0]["match"], true);
}

TEST(Cli, NestingIsByteIdenticalForSameSeed)
{
    const std::vector<std::string> args{"t244", "nesting", "--seed", "5", "--trials", "8"};
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto doc = json::parse(a.out);
    EXPECT_EQ(doc["seed"], 5);
    EXPECT_EQ(doc["result"]["t6_plus_rank_one"]["trials"], 8);
}

TEST(Cli, TableOutput)
{
    const CliRun r = run({"waring", "--n", "3", "--d", "3", "--output", "table"});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("result.generic.g: 4"), std::string::npos) << r.out;
}

TEST(Cli, MalformedInputExitsTwo)
{
    const std::vector<std::vector<std::string>> cases{
        {"binary-rank", "--form", "{not json"},
        {"binary-rank", "--form", R"({"degree": 2, "coeffs": ["1", "2"]})"},
        {"binary-rank", "--form", R"({"degree": 1, "coeffs": [0.5, 1]})"},
        {"binary-rank", "--form", R"({"degree": 1, "coeffs": ["1/0", "1"]})"},
        {"pencil-rank", "--m1", "[[1,2],[3]]", "--m2", "[[1,2],[3,4]]"},
        {"pencil-rank", "--m1", "[[1,2]]", "--m2", "[[1,2],[3,4]]"},
        {"t244", "classify", "--tensor", "[[[1,0],[0,1]],[[0,0],[0,0]]]"},
        {"t244", "classify", "--tensor", R"({"m1": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]],
                                             "m2": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})"},
        {"verify-identity", "--id", "nope", "--n", "3"},
        {"waring", "--n", "0", "--d", "3"},
        {"waring", "--n", "x", "--d", "3"},
        {"orbit-dim"},
        {"no-such-command"},
        {"t244", "nesting", "--trials", "0"},
        {"reproduce", "wm-dims", "--n", "0"},
    };
    for (const auto& c : cases) {
        std::string joined;
        for (const auto& a : c) joined += a + " ";
        EXPECT_EQ(run(c).exit_code, 2) << joined;
    }
}

TEST(Cli, FixtureMismatchExitsThree)
{
    const auto dir = std::filesystem::temp_directory_path() / "rankloci_fixture_mismatch";
    std::filesystem::create_directories(dir);
    std::ifstream in(std::string(RANKLOCI_FIXTURES_DIR) + "/table1.json");
    json fixture = json::parse(in);
    fixture["entries"][3]["orbit_dim"] = fixture["entries"][3]["orbit_dim"].get<int>() + 1;
    std::ofstream(dir / "table1.json") << fixture.dump(2);
    EXPECT_EQ(run({"reproduce", "table1"}, dir.string()).exit_code, 3);
    std::filesystem::remove_all(dir);
}

TEST(Cli, MissingFixtureIsMalformedInput)
{
    EXPECT_EQ(run({"reproduce", "table1"}, "/nonexistent/fixtures").exit_code, 2);
}
