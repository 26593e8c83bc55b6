#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "emfwd/constants.hpp"
#include "emfwd/model.hpp"
#include "support/oracles.hpp"

using namespace emfwd;
namespace fs = std::filesystem;

TEST_SUITE("model") {

TEST_CASE("the standard buried-sphere scenario is valid") {
    CHECK(validate_scenario(oracles::section81_scenario()).empty());
}

TEST_CASE("object above ground is a single violation") {
    Scenario s = oracles::section81_scenario();
    s.object.position = {0, 0, 0.4};
    const auto v = validate_scenario(s);
    REQUIRE(v.size() >= 1);
    bool found = false;
    for (const auto& msg : v)
        if (msg.find("above ground") != std::string::npos ||
            msg.find("position[2]") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("coil radius ordering is reported") {
    Scenario s = oracles::section81_scenario();
    s.excite.r_inner = 0.2;
    s.excite.r_outer = 0.15;
    const auto v = validate_scenario(s);
    REQUIRE(v.size() == 1);
    CHECK(v.front().find("radius ordering") != std::string::npos);
}

TEST_CASE("remaining invariants are all enforced") {
    Scenario s = oracles::section81_scenario();
    s.soil.sigma_s = -1.0;
    s.soil.mu_rs = 0.5;
    s.object.sigma_star = 0.0;
    s.measure.center.z = 0.04;  // lower edge dips below ground
    s.frequencies = {1e5, 1e5};
    const auto v = validate_scenario(s);
    CHECK(v.size() >= 5);

    Scenario sh = oracles::section81_scenario();
    sh.object.sigma_star = 1.0;  // below the soil's 1.6 S/m
    const auto v2 = validate_scenario(sh);
    REQUIRE(v2.size() == 1);
    CHECK(v2.front().find("exceed") != std::string::npos);

    Scenario shallow = oracles::section81_scenario();
    shallow.object.position = {0, 0, -0.05};  // sphere of radius 0.1 pokes out
    CHECK(validate_scenario(shallow).size() == 1);

    Scenario ext = oracles::section81_scenario();
    ext.object.shape = ObjectShape::ExternalSignature;  // no signature attached
    CHECK(validate_scenario(ext).size() == 1);
}

TEST_CASE("validation is pure and idempotent") {
    Scenario s = oracles::section81_scenario();
    s.excite.height = -1.0;
    const auto a = validate_scenario(s);
    const auto b = validate_scenario(s);
    CHECK(a == b);
}

TEST_CASE("regime diagnostics reproduce the dimensionless definitions") {
    const Scenario s = oracles::section81_scenario();
    const RegimeReport r = regime_diagnostics(s, 1e5);
    CHECK(r.nu == doctest::Approx(1256.6370614359).epsilon(1e-12));
    CHECK(r.epsilon == doctest::Approx(3.2169908772759e-2).epsilon(1e-12));
    CHECK(r.depth_D == 0.4);
    CHECK(r.epsilon_le_nu);
    CHECK(r.mu_rs_bound_ok);  // 1.0006 <= 1 + 0.1/0.4

    Scenario dry = s;
    dry.soil.sigma_s = 0.0;
    const RegimeReport rd = regime_diagnostics(dry, 1e5);
    CHECK(rd.epsilon == 0.0);
    CHECK(rd.epsilon_le_nu);
}

TEST_CASE("regime diagnostics are exactly homogeneous in omega") {
    const Scenario s = oracles::section81_scenario();
    const RegimeReport a = regime_diagnostics(s, 3.7e4);
    const RegimeReport b = regime_diagnostics(s, 7.4e4);
    CHECK(b.nu == 2.0 * a.nu);
    CHECK(b.epsilon == 2.0 * a.epsilon);
}

TEST_CASE("object skin depth shrinks with frequency") {
    const Scenario s = oracles::section81_scenario();
    double prev = 1e300;
    for (double omega : {1e3, 1e4, 1e5, 1e6}) {
        const double d = regime_diagnostics(s, omega).skin_depth_object;
        CHECK(d < prev);
        prev = d;
    }
    // sqrt(2 / (omega mu0 mu sigma)) at 1e5, sigma 1e6
    CHECK(regime_diagnostics(s, 1e5).skin_depth_object ==
          doctest::Approx(std::sqrt(2.0 / (1e5 * kMu0 * 1e6))).epsilon(1e-14));
}

TEST_CASE("scenario JSON round trip") {
    const Scenario s = oracles::section81_scenario();
    const std::string text = scenario_to_json(s);
    const Scenario back = scenario_from_json(text);
    CHECK(scenario_to_json(back) == text);
    CHECK(validate_scenario(back).empty());
    CHECK(back.frequencies == s.frequencies);
}

TEST_CASE("unknown keys are rejected at every level") {
    const Scenario s = oracles::section81_scenario();
    std::string text = scenario_to_json(s);

    std::string top = text;
    top.insert(top.find_last_of('}'), ",\"frequency_unit\":\"Hz\"");
    CHECK_THROWS_WITH_AS(scenario_from_json(top),
                         doctest::Contains("unknown key 'frequency_unit'"), std::runtime_error);

    std::string nested = text;
    nested.insert(nested.find("\"sigma_s\""), "\"sigma\": 1.0, ");
    CHECK_THROWS_WITH_AS(scenario_from_json(nested), doctest::Contains("unknown key 'sigma'"),
                         std::runtime_error);
}

TEST_CASE("non-e3 coil axis is rejected") {
    std::string text = scenario_to_json(oracles::section81_scenario());
    text.insert(text.find("\"r_inner\""), "\"axis\": [0.0, 1.0, 0.0], ");
    CHECK_THROWS_WITH_AS(scenario_from_json(text), doctest::Contains("axis"), std::runtime_error);
}

TEST_CASE("bad shape string is rejected") {
    std::string text = scenario_to_json(oracles::section81_scenario());
    const std::string from = "\"sphere\"";
    text.replace(text.find(from), from.size(), "\"cube\"");
    CHECK_THROWS_AS(scenario_from_json(text), std::runtime_error);
}

TEST_CASE("external signature objects load their table relative to the file") {
    const fs::path dir = fs::temp_directory_path() / "emfwd_model_tests";
    fs::create_directories(dir);

    MptSignature sig;
    sig.provenance = "sphere-analytic";
    for (double omega : {1e3, 1e4, 1e5, 1e6})
        sig.entries.push_back(sphere_mpt(0.1, 1e6, 1.0, omega));
    save_signature(sig, dir / "sig.csv");

    Scenario s = oracles::section81_scenario();
    s.object.shape = ObjectShape::ExternalSignature;
    s.object.signature_path = "sig.csv";
    const std::string text = scenario_to_json(s);
    std::ofstream(dir / "scenario.json") << text;

    const Scenario loaded = load_scenario(dir / "scenario.json");
    CHECK(validate_scenario(loaded).empty());
    REQUIRE(loaded.object.signature);
    CHECK(loaded.object.signature->entries.size() == 4);
}

}  // TEST_SUITE
