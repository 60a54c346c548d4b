#include <doctest.h>

#include "hydroham/run.hpp"

using namespace hydroham;

namespace {

Json manifest(const char* text) { return Json::parse(text); }

RunOptions opts() { return RunOptions{}; }

} // namespace

TEST_CASE("check-ghs passes on the KdV structure and reports its connection") {
    Json m = manifest(R"({
        "dimension": 1,
        "structure": {"g": [["v1"]], "gamma": [[["1/2"]]]}
    })");
    Report r = run_command("check-ghs", m, opts());
    CHECK(r.pass);
    CHECK(r.command == "check-ghs");
    std::string json = report_to_json(r);
    CHECK(json.find("\"verdict\": \"pass\"") != std::string::npos);
}

TEST_CASE("check-ghs fails with printable residuals on a broken structure") {
    Json m = manifest(R"({
        "dimension": 2,
        "structure": {
            "g": [["1","0"],["0","1"]],
            "gamma": [[["0","0"],["0","0"]],[["0","0"],["0","0"]]]
        }
    })");
    m["structure"]["gamma"][0][0][1] = "v1";
    Report r = run_command("check-ghs", m, opts());
    CHECK_FALSE(r.pass);
    bool found_residual = false;
    for (const CheckReport& c : r.checks)
        if (!c.residuals.empty())
            found_residual = true;
    CHECK(found_residual);
}

TEST_CASE("check-gbhs on the dispersionless KdV pencil") {
    Json m = manifest(R"({
        "dimension": 1,
        "structure0": {"g": [["1"]]},
        "structure1": {"g": [["v1"]], "gamma": [[["1/2"]]]}
    })");
    Report r = run_command("check-gbhs", m, opts());
    CHECK(r.pass);
}

TEST_CASE("data and from-data are mutually inverse through manifests") {
    Json m = manifest(R"({
        "dimension": 1,
        "structure": {"g": [["v1"]], "gamma": [[["1/2"]]]}
    })");
    Report r = run_command("data", m, opts());
    CHECK(r.pass);
    bool found = false;
    for (const auto& [k, v] : r.outputs)
        if (k == "connection.christoffels")
            found = v.find("(-1/2)/(v1)") != std::string::npos;
    CHECK(found);

    Json back = manifest(R"json({
        "dimension": 1,
        "g": [["v1"]],
        "connection": {"christoffels": [[["(-1)/(2*v1)"]]]}
    })json");
    Report r2 = run_command("from-data", back, opts());
    CHECK(r2.pass);
    for (const auto& [k, v] : r2.outputs)
        if (k == "gamma")
            CHECK(v.find("1/2") != std::string::npos);
}

TEST_CASE("check-flow distinguishes compatible and incompatible flows") {
    Json good = manifest(R"({
        "dimension": 2,
        "structure": {"g": [["1","0"],["0","1"]]},
        "flow": {"X": [["0","1"],["1","0"]]}
    })");
    CHECK(run_command("check-flow", good, opts()).pass);

    Json bad = manifest(R"({
        "dimension": 2,
        "structure": {"g": [["1","0"],["0","1"]]},
        "flow": {"X": [["0","v1"],["0","0"]]}
    })");
    Report r = run_command("check-flow", bad, opts());
    CHECK_FALSE(r.pass);
}

TEST_CASE("hamiltonian-form emits the densities") {
    Json m = manifest(R"({
        "dimension": 1,
        "structure": {"g": [["1"]]},
        "flow": {"X": [["v1"]]}
    })");
    Report r = run_command("hamiltonian-form", m, opts());
    CHECK(r.pass);
    REQUIRE(r.outputs.size() == 1);
    CHECK(r.outputs[0].second == "1/2*v1^2");
}

TEST_CASE("hierarchy lists the Hopf flows") {
    Json m = manifest(R"({
        "dimension": 1,
        "structureConstants": [[["1"]]],
        "unit": ["1"],
        "pmax": 2
    })");
    Report r = run_command("hierarchy", m, opts());
    CHECK(r.pass);
    REQUIRE(r.outputs.size() == 4);
    CHECK(r.outputs[1].second.find("v1") != std::string::npos);
    CHECK(r.outputs[2].second.find("1/2*v1^2") != std::string::npos);
}

TEST_CASE("canonical-semisimple verdicts") {
    Json ok = manifest(R"({
        "dimension": 2,
        "canonicalA": {"1,2": "0", "2,1": "0"}
    })");
    CHECK(run_command("canonical-semisimple", ok, opts()).pass);

    Json bad = manifest(R"({
        "dimension": 2,
        "canonicalA": {"1,2": "1", "2,1": "0"}
    })");
    Report r = run_command("canonical-semisimple", bad, opts());
    CHECK_FALSE(r.pass);
    CHECK(r.error.find("PDEViolation") != std::string::npos);
    CHECK(r.error.find("E(A^i_{ij})") != std::string::npos);
}

TEST_CASE("gm-flatness honors custom sample points") {
    Json m = manifest(R"({
        "dimension": 2,
        "L": [["u1","0"],["0","u2"]],
        "connection": {"christoffels": [[["0","0"],["0","0"]],[["0","0"],["0","0"]]]},
        "nablaStar": {"christoffels": [[["-1/u1","0"],["0","0"]],[["0","0"],["0","-1/u2"]]]}
    })");
    RunOptions o;
    o.sample_points = {Rational(7), Rational(11)};
    Report r = run_command("gm-flatness", m, o);
    CHECK(r.pass);
    bool found = false;
    for (const CheckReport& c : r.checks)
        if (c.name.find("z = 7") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("schouten and bracket commands") {
    // [P,P] for P = 1/2 int th1 th1'
    Json m = manifest(R"({
        "dimension": 1,
        "F": [{"coeff": "1/2", "odd": [[1,0],[1,1]]}],
        "G": [{"coeff": "1/2", "odd": [[1,0],[1,1]]}]
    })");
    Report r = run_command("schouten", m, opts());
    CHECK(r.pass);

    Json br = manifest(R"({
        "dimension": 1,
        "X": {"parity": 1, "a": [[{"coeff": "1", "odd": [[1,1]]}]], "b": [[]]},
        "Y": {"parity": 1, "a": [[{"coeff": "1", "odd": [[1,1]]}]], "b": [[]]}
    })");
    CHECK(run_command("bracket", br, opts()).pass);
}

TEST_CASE("one-form-bracket reproduces the worked example") {
    Json m = manifest(R"({
        "dimension": 1,
        "structure": {"g": [["1"]]},
        "omega": [[{"coeff": "v1"}]],
        "zeta": [[{"coeff": "1"}]]
    })");
    Report r = run_command("one-form-bracket", m, opts());
    CHECK(r.pass);
    CHECK(r.outputs[0].second == "0");
}

TEST_CASE("manifest errors carry the offending path") {
    Json missing = manifest(R"({"dimension": 1, "structure": {"gamma": [[["1/2"]]]}})");
    CHECK_THROWS_WITH_AS(run_command("check-ghs", missing, opts()),
                         doctest::Contains("structure"), ManifestError);
    Json unknown = manifest(R"({"dimension": 1})");
    CHECK_THROWS_AS(run_command("no-such-command", unknown, opts()), ManifestError);
    Json badexpr = manifest(R"({"dimension": 1, "structure": {"g": [["v7"]]}})");
    CHECK_THROWS_AS(run_command("check-ghs", badexpr, opts()), ManifestError);
}

TEST_CASE("reports are deterministic and residuals reparse") {
    Json m = manifest(R"({
        "dimension": 1,
        "structure": {"g": [["v1"]], "gamma": [[["1"]]], "V": [[["1/2"]]]}
    })");
    Report r1 = run_command("check-ghs", m, opts());
    Report r2 = run_command("check-ghs", m, opts());
    CHECK_FALSE(r1.pass);
    CHECK(report_to_json(r1) == report_to_json(r2));
    // every jet-space residual carries a canonical serialized form that
    // reparses to the same value
    for (const CheckReport& c : r1.checks)
        for (const ResidualEntry& e : c.residuals) {
            if (e.serialized.empty())
                continue;
            DiffPoly round = parse_diffpoly(Json::parse(e.serialized), 1, "roundtrip");
            CHECK(to_string(round) == e.expr);
        }
}

TEST_CASE("oddFrame and coordinateMap manifest keys transform the input") {
    Json framed = manifest(R"({
        "dimension": 1,
        "structure": {"g": [["1"]]},
        "oddFrame": [["1 + v1^2"]]
    })");
    CHECK(run_command("check-ghs", framed, opts()).pass);

    Json mapped = manifest(R"({
        "dimension": 1,
        "structure": {"g": [["1"]]},
        "flow": {"X": [["1 + 4*v1 + 4*v1^2"]]},
        "coordinateMap": ["v1 + v1^2"]
    })");
    Report r = run_command("check-flow", mapped, opts());
    CHECK(r.pass);
    Report d = run_command("data", mapped, opts());
    bool found = false;
    for (const auto& [k, v] : d.outputs)
        if (k == "g")
            found = v.find("4*v1 + 1") != std::string::npos;
    CHECK(found);
}

TEST_CASE("the jet-order cap is honored as a run option") {
    Json m = manifest(R"({
        "dimension": 1,
        "F": [{"coeff": "1", "odd": [[1,0]], "even": [[1,3,1]]}],
        "G": [{"coeff": "1", "odd": [[1,0]], "even": [[1,3,1]]}]
    })");
    RunOptions tight;
    tight.max_jet_order = 2;
    Report r = run_command("schouten", m, tight);
    CHECK_FALSE(r.pass);
    CHECK(r.error.find("JetOrderExceeded") != std::string::npos);
    // at the default cap the same bracket computes (and happens to vanish)
    CHECK(run_command("schouten", m, opts()).pass);
}

TEST_CASE("frobenius-pencil command") {
    Json m = manifest(R"({
        "dimension": 1,
        "eta": [["1"]],
        "structureConstants": [[["1"]]],
        "euler": ["v1"],
        "nu": "0"
    })");
    Report r = run_command("frobenius-pencil", m, opts());
    CHECK(r.pass);
    bool lfound = false;
    for (const auto& [k, v] : r.outputs)
        if (k == "L")
            lfound = v.find("v1") != std::string::npos;
    CHECK(lfound);
}
