#include "frametk/cli.hpp"
#include "frametk/json_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace frametk;

namespace {

const std::string kData = FRAMETK_TEST_DATA;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("classify a file") {
    const Run r = run({"classify", "--input", kData + "/onb2.json"});
    REQUIRE(r.code == 0);
    const json j = parse_json(r.out);
    const auto& rb = j["consensus"][static_cast<std::size_t>(Label::riesz_basis)];
    CHECK(rb["holds"] == true);
    CHECK(rb["A"] == 1.0);
    CHECK(rb["B"] == 1.0);
    CHECK(j["agreement"] == true);
    // Deterministic bytes, and the output re-parses under the report schema.
    CHECK(run({"classify", "--input", kData + "/onb2.json"}).out == r.out);
    CHECK(canonical_dump(to_json(report_from_json(j))) + "\n" == r.out);
}

TEST_CASE("classify text and fixtures") {
    const Run r = run({"classify", "--input", kData + "/e1e1e2.json", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Frame: yes A=1 B=2") != std::string::npos);
    const Run f = run({"classify", "--fixture", "R5"});
    CHECK(f.code == 0);
    CHECK(parse_json(f.out)["consensus"][0]["holds"] == false);
    const Run t = run({"classify", "--input", kData + "/e1e1e2.json", "--tol-rank", "0.5"});
    CHECK(t.code == 0);
}

TEST_CASE("operators") {
    const Run r = run({"operators", "--input", kData + "/e1e1e2.json"});
    REQUIRE(r.code == 0);
    const json j = parse_json(r.out);
    CHECK(j["all_passed"] == true);
    CHECK(j["gram"]["rows"] == 3);
}

TEST_CASE("gallery") {
    const Run all = run({"gallery"});
    REQUIRE(all.code == 0);
    const json j = parse_json(all.out);
    REQUIRE(j["fixtures"].size() == 7);
    CHECK(j["fixtures"][0]["fixture"] == "R1");
    for (const auto& f : j["fixtures"])
        for (const auto& fact : f["facts"]) CHECK(fact["passed"] == true);

    const Run ln2 = run({"gallery", "--fixture", "R4", "--probe-lnx2", "--levels", "1000"});
    REQUIRE(ln2.code == 0);
    const json p = parse_json(ln2.out);
    const auto& ev = p["results"][0]["evidence"][0];
    CHECK(ev[0] == 1000);
    CHECK(ev[1].get<double>() <= 1.0 / 1001.0);
    CHECK(p["results"][0]["within_bound"] == true);
}

TEST_CASE("probe") {
    const Run r = run({"probe", "--fixture", "R3", "--coeff", "delta1", "--domain", "G"});
    REQUIRE(r.code == 0);
    const json j = parse_json(r.out);
    CHECK(j["status"] == "NotInDomain");
    CHECK(j["anchor"] == "δ_1∉dom(G)");

    const Run c = run({"probe", "--fixture", "R3", "--coeff", "custom:" + kData + "/coeff_d1_minus_d3.json",
                       "--domain", "G"});
    REQUIRE(c.code == 0);
    CHECK(parse_json(c.out)["status"] == "InDomain");

    const Run levels = run({"probe", "--fixture", "R4", "--coeff", "harmonic-alt", "--domain", "D", "--levels",
                            "64,256,1024,4096,16384,65536,262144,1048576"});
    REQUIRE(levels.code == 0);
    CHECK(parse_json(levels.out)["status"] == "NumericEvidenceConverges");
    CHECK(run({"probe", "--fixture", "R4", "--levels", "8,4"}).code == 2);
    CHECK(run({"probe", "--fixture", "R4", "--coeff", "nope"}).code == 2);
}

TEST_CASE("transform") {
    const Run r = run({"transform", "--input", kData + "/onb2.json", "--operator", kData + "/scale2.json", "--rule",
                       "frame"});
    REQUIRE(r.code == 0);
    const json j = parse_json(r.out);
    CHECK(j["sandwich"] == true);
    CHECK(j["predicted"]["A"] == doctest::Approx(4.0));
    CHECK(j["actual"]["B"] == doctest::Approx(4.0));

    const Run bad = run({"transform", "--input", kData + "/onb2.json", "--operator", kData + "/rank1.json"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("surjective") != std::string::npos);
}

TEST_CASE("factorize") {
    const Run r = run({"factorize", "--input", kData + "/e1e1e2.json"});
    REQUIRE(r.code == 0);
    const json j = parse_json(r.out);
    CHECK(j["surjective"] == true);
    CHECK(j["injective"] == false);
    CHECK(j["matches_classification"] == true);
}

TEST_CASE("input errors exit with 2") {
    const Run verb = run({"frobnicate"});
    CHECK(verb.code == 2);
    CHECK(verb.err.find("Usage") != std::string::npos);
    CHECK(verb.out.empty());
    CHECK(run({"classify", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"classify"}).code == 2);
    CHECK(run({"classify", "--input", kData + "/missing.json"}).code == 2);
    CHECK(run({"classify", "--input", kData + "/truncated.json"}).code == 2);
    CHECK(run({"classify", "--input", kData + "/bad_length.json"}).code == 2);
    CHECK(run({"classify", "--input", kData + "/onb2.json", "--format", "xml"}).code == 2);
    CHECK(run({"probe", "--fixture", "R9"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
