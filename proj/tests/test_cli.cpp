#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "tgrs/cli.hpp"

using namespace tgrs;
using tgrs::testing::parse_vec;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = cli::run(std::move(args), in, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
    return std::string(TGRS_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

/// Writes the text to a fresh file under the test's scratch directory and
/// returns its path. Files pile up until the process exits, which is fine
/// for a test run.
std::string scratch_file(const std::string& name, const std::string& text) {
    auto dir = std::filesystem::temp_directory_path() / "tgrs_cli_tests";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream f(path);
    f << text;
    return path.string();
}

} // namespace

TEST_CASE("classify names the Singleton class of each fixture", "[cli]") {
    auto r = invoke({"classify", "--spec", fixture("ex42.json")});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "NMDS [12,5,7] over GF(16)\n");

    r = invoke({"classify", "--spec", fixture("ex31.json")});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "MDS [6,3,4] over GF(11)\n");

    r = invoke({"--spec", fixture("ex33.json"), "classify", "--json"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    REQUIRE(j["tag"] == "MDS");
    REQUIRE(j["length"] == 6);
    REQUIRE(j["dimension"] == 3);
    REQUIRE(j["distance"] == 4);
    REQUIRE(j["field"]["p"] == 13);
}

TEST_CASE("classify accepts a bare code document", "[cli]") {
    auto f = Field::create(11, 1);
    auto C = grs(parse_vec(f, "1,2,3,4,5,6"), FVector(6, f->one()), 3);
    auto path = scratch_file("grs_code.json", code_to_json(C).dump());
    auto r = invoke({"classify", "--spec", path});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "MDS [6,3,4] over GF(11)\n");
}

TEST_CASE("specs can arrive on standard input", "[cli]") {
    auto r = invoke({"classify", "--spec", "-"}, read_file(fixture("ex31.json")));
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "MDS [6,3,4] over GF(11)\n");

    // The default source is standard input, so --spec - is optional.
    r = invoke({"classify"}, read_file(fixture("ex31.json")));
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "MDS [6,3,4] over GF(11)\n");
}

TEST_CASE("matrices prints the defining pair", "[cli]") {
    auto r = invoke({"matrices", "--spec", fixture("ex31.json"), "--json"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);

    auto f = Field::create(11, 1);
    TwistedSpec spec{f, parse_vec(f, "0,3,4,5,9,10"), FVector(6, f->one()), f->one(), 3, false};
    REQUIRE(matrix_from_json(f, j["generator"]) == twisted_generator(spec));
    REQUIRE(matrix_from_json(f, j["parity_check"]) == twisted_code(spec).parity_check());

    r = invoke({"matrices", "--spec", fixture("ex31.json")});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("G =") != std::string::npos);
    REQUIRE(r.out.find("H =") != std::string::npos);
}

TEST_CASE("decode reproduces the worked trace", "[cli]") {
    auto r = invoke({"decode", "--spec", fixture("ex42.json"), "--received",
                     "w^13,w^10,w^2,w^10,w^5,w^6,w^7,w^2,w^5,w^4,0,1", "--json"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    REQUIRE(j["outcome"] == "CODEWORD");
    REQUIRE(j["t"] == 3);
    REQUIRE(j["zeros"] == Json::array({2, 5, 7}));

    auto f = Field::create(2, 4);
    REQUIRE(vector_from_json(f, j["syndrome"]) == parse_vec(f, "w^13,w,w^14,1,w^4,w^3,w^6"));
    REQUIRE(vector_from_json(f, j["error"]) == parse_vec(f, "0,w^9,0,0,w^4,0,w^10,0,0,0,0,0"));
    REQUIRE(vector_from_json(f, j["codeword"]) ==
            parse_vec(f, "w^13,w^13,w^2,w^10,w^8,w^6,w^6,w^2,w^5,w^4,0,1"));

    r = invoke({"decode", "--spec", fixture("ex42.json"), "--received",
                "w^13,w^10,w^2,w^10,w^5,w^6,w^7,w^2,w^5,w^4,0,1"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("CODEWORD\n") == 0);
    REQUIRE(r.out.find("zeros (1-indexed): {2,5,7}") != std::string::npos);
}

TEST_CASE("decode signals uncorrectable words through the exit code", "[cli]") {
    // A weight-5 pattern on top of the traced codeword; the library call
    // pins the expected outcome so the exit-code mapping is what is tested.
    auto f = Field::create(2, 4);
    TwistedSpec spec = spec_from_json(Json::parse(read_file(fixture("ex42.json"))));
    auto y = parse_vec(f, "w^2,w^13,w^2,w^10,w^8,w^6,w^6,w^11,w^5,w^7,w^3,1");
    auto res = decode(spec, y);
    REQUIRE(res.tag == DecodeOutcome::Tag::TOO_MANY_ERRORS);

    auto r = invoke({"decode", "--spec", fixture("ex42.json"), "--received",
                     "w^2,w^13,w^2,w^10,w^8,w^6,w^6,w^11,w^5,w^7,w^3,1", "--json"});
    REQUIRE(r.code == 2);
    REQUIRE(Json::parse(r.out)["outcome"] == "TOO_MANY_ERRORS");
}

TEST_CASE("ecp builds and verifies the pair", "[cli]") {
    auto r = invoke({"ecp", "build", "--spec", fixture("ex42.json"), "--json"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    REQUIRE(j["t"] == 3);
    REQUIRE(j["parity"] == "even");

    r = invoke({"ecp", "verify", "--spec", fixture("ex42.json"), "--json"});
    REQUIRE(r.code == 0);
    j = Json::parse(r.out);
    REQUIRE(j["product_in_dual"] == true);
    REQUIRE(j["dual_b_distance"] == true);
    REQUIRE(j["a_dimension"] == true);
    REQUIRE(j["distance_sum"] == true);
    REQUIRE(j["all"] == true);

    // Pairs only exist for extended specs.
    r = invoke({"ecp", "build", "--spec", fixture("ex31.json")});
    REQUIRE(r.code == 64);
}

TEST_CASE("schur certifies or reports inconclusive with matching exit codes", "[cli]") {
    auto r = invoke({"schur", "--spec", fixture("ex33.json"), "--json"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    REQUIRE(j["tag"] == "CERTIFIED_NON_GRS");
    REQUIRE(j["route"] == "square_dimension");
    REQUIRE(j["square_dim"] == 6);
    REQUIRE(j["expected_square_dim"] == 5);

    // A genuine GRS code stays inconclusive, which exits 3.
    auto f = Field::create(11, 1);
    auto C = grs(parse_vec(f, "1,2,3,4,5,6,7,8"), FVector(8, f->one()), 3);
    auto path = scratch_file("grs_8_3.json", code_to_json(C).dump());
    r = invoke({"schur", "--spec", path});
    REQUIRE(r.code == 3);
    REQUIRE(r.out.find("INCONCLUSIVE") == 0);

    // Forcing a statistic outside its dimension range is an input error
    // (the distance route needs 2k >= n, and ex42 has k = 5, n = 12).
    r = invoke({"schur", "--spec", fixture("ex42.json"), "--dist"});
    REQUIRE(r.code == 64);
}

TEST_CASE("equiv search lists every equivalent evaluation set", "[cli]") {
    auto r = invoke({"equiv", "search", "--spec", fixture("ex31.json"), "--json"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    REQUIRE(j["tag"] == "EQUIVALENT_TO_GRS");
    REQUIRE(j["candidates_tested"] == 462);
    REQUIRE(j["witness_sets"].size() == 165);
    REQUIRE(j["witness_set"] == Json::array({"0", "1", "2", "3", "4", "5"}));
    auto& sets = j["witness_sets"];
    REQUIRE(std::find(sets.begin(), sets.end(), Json::array({"1", "2", "5", "6", "9", "10"})) !=
            sets.end());

    r = invoke({"equiv", "search", "--spec", fixture("ex33.json"), "--json"});
    REQUIRE(r.code == 0);
    j = Json::parse(r.out);
    REQUIRE(j["tag"] == "CERTIFIED_NON_GRS");
    REQUIRE(j["candidates_tested"] == 1716);
    REQUIRE(j["witness_sets"].empty());
}

TEST_CASE("equiv pair compares two documents", "[cli]") {
    auto f = Field::create(11, 1);
    auto eq = grs(parse_vec(f, "1,2,5,6,9,10"), FVector(6, f->one()), 3);
    auto ne = grs(parse_vec(f, "0,1,2,3,4,6"), FVector(6, f->one()), 3);
    auto eq_path = scratch_file("grs_equiv.json", code_to_json(eq).dump());
    auto ne_path = scratch_file("grs_inequiv.json", code_to_json(ne).dump());

    auto r = invoke({"equiv", "pair", eq_path, "--spec", fixture("ex31.json"), "--json"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    REQUIRE(j["equivalent"] == true);
    REQUIRE(j["witness"]["perm"].size() == 6);

    r = invoke({"equiv", "pair", ne_path, "--spec", fixture("ex31.json"), "--json"});
    REQUIRE(r.code == 0);
    REQUIRE(Json::parse(r.out)["equivalent"] == false);

    // Both documents parse through the same field cache, so two files over
    // GF(11) interoperate while a GF(13) partner is a real mismatch.
    r = invoke({"equiv", "pair", fixture("ex33.json"), "--spec", fixture("ex31.json")});
    REQUIRE(r.code == 64);
}

TEST_CASE("deephole emits the vector and its verdict", "[cli]") {
    auto r = invoke({"deephole", "vector", "--spec", fixture("ex43.json"), "--json"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    REQUIRE(j["class"] == 1);
    REQUIRE(j["t"] == 2);
    REQUIRE(j["s"] == "1");
    auto f = Field::create(13, 1);
    REQUIRE(vector_from_json(f, j["u"]) == parse_vec(f, "4,3,12,12,3,9"));

    r = invoke({"deephole", "check", "--spec", fixture("ex43.json"), "--json"});
    REQUIRE(r.code == 0);
    j = Json::parse(r.out);
    REQUIRE(j["radius"] == 3);
    REQUIRE(j["distance"] == 3);
    REQUIRE(j["is_deep_hole"] == true);

    // The class 2 pivot vanishes for this spec.
    r = invoke({"deephole", "vector", "--class", "2", "--spec", fixture("ex43.json")});
    REQUIRE(r.code == 64);

    // On the shifted-dual spec both classes exist.
    r = invoke({"deephole", "check", "--class", "2", "--spec", fixture("ex33.json"), "--json"});
    REQUIRE(r.code == 0);
    REQUIRE(Json::parse(r.out)["is_deep_hole"] == true);
}

TEST_CASE("radius prints the covering radius of the dual", "[cli]") {
    auto r = invoke({"radius", "--spec", fixture("ex43.json")});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "3\n");

    r = invoke({"radius", "--spec", fixture("ex43.json"), "--json"});
    REQUIRE(r.code == 0);
    REQUIRE(Json::parse(r.out) == Json{{"radius", 3}});
}

TEST_CASE("bad inputs exit sixty-four", "[cli]") {
    REQUIRE(invoke({"classify", "--spec", "/nonexistent/path.json"}).code == 64);
    REQUIRE(invoke({"classify", "--spec", "-"}, "not json at all").code == 64);
    REQUIRE(invoke({"classify", "--spec", "-"}, R"({"field": {"p": 11, "m": 1}})").code == 64);
    REQUIRE(invoke({"classify", "--no-such-flag"}).code == 64);
    REQUIRE(invoke({"decode", "--spec", fixture("ex42.json")}).code == 64);

    // Duplicate evaluation points are rejected by spec validation.
    auto dup = R"({"field": {"p": 11, "m": 1}, "S": ["1", "1", "2"], "v": "ones", "eta": "1", "k": 2})";
    REQUIRE(invoke({"classify", "--spec", "-"}, dup).code == 64);

    // matrices needs a twisted spec, not a bare code.
    auto f = Field::create(11, 1);
    auto C = grs(parse_vec(f, "1,2,3"), FVector(3, f->one()), 2);
    auto path = scratch_file("bare_code.json", code_to_json(C).dump());
    REQUIRE(invoke({"matrices", "--spec", path}).code == 64);
}

TEST_CASE("exhausted budgets exit sixty-five", "[cli]") {
    REQUIRE(invoke({"equiv", "search", "--spec", fixture("ex31.json"), "--cap", "10"}).code == 65);
    REQUIRE(invoke({"radius", "--spec", fixture("ex43.json"), "--cap", "5"}).code == 65);
}

TEST_CASE("help exits cleanly", "[cli]") {
    auto r = invoke({"--help"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("classify") != std::string::npos);
}

TEST_CASE("json output is deterministic and round trips", "[cli]") {
    for (const char* name : {"ex31.json", "ex33.json", "ex36.json", "ex42.json", "ex43.json"}) {
        auto once = invoke({"classify", "--spec", fixture(name), "--json"});
        auto twice = invoke({"classify", "--spec", fixture(name), "--json"});
        REQUIRE(once.code == 0);
        REQUIRE(once.out == twice.out);

        // Parsing a spec and reserializing it reaches a fixed point after
        // one pass (the first pass expands shorthands like "ones").
        auto j = Json::parse(read_file(fixture(name)));
        auto normalized = spec_to_json(spec_from_json(j));
        REQUIRE(spec_to_json(spec_from_json(normalized)) == normalized);
    }

    auto a = invoke({"equiv", "search", "--spec", fixture("ex31.json"), "--json"});
    auto b = invoke({"equiv", "search", "--spec", fixture("ex31.json"), "--json"});
    REQUIRE(a.out == b.out);
}

TEST_CASE("seed is accepted on any verb", "[cli]") {
    auto r = invoke({"classify", "--spec", fixture("ex31.json"), "--seed", "42"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "MDS [6,3,4] over GF(11)\n");
}
