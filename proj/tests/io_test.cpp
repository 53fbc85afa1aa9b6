#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "rss/errors.hpp"
#include "rss/io.hpp"
#include "rss/units.hpp"

using namespace rss;
using units::Kind;

namespace {

const std::string kFixtures = RSS_FIXTURE_DIR;

// Writes content to a unique temp file and removes it on scope exit.
struct TempFile {
    std::filesystem::path path;

    explicit TempFile(const std::string& content, const char* stem) {
        path = std::filesystem::temp_directory_path() /
               (std::string("rss_io_test_") + stem + ".tmp");
        std::ofstream(path) << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("quantity parsing accepts the documented unit suffixes") {
    auto q = [](const char* text, Kind k) {
        return units::parse_quantity_text(text, k, "field");
    };
    CHECK(q("25 m/s", Kind::Speed) == 25.0);
    CHECK(q("90 km/h", Kind::Speed) == doctest::Approx(25.0));
    CHECK(q("0.3 g", Kind::Accel) == doctest::Approx(2.943));
    CHECK(q("3 m/s^2", Kind::Accel) == 3.0);
    CHECK(q("0.5 s", Kind::Time) == 0.5);
    CHECK(q("500 ms", Kind::Time) == 0.5);
    CHECK(q("-10 deg", Kind::Angle) == doctest::Approx(-10.0 * M_PI / 180.0));
    CHECK(q("0.2 rad", Kind::Angle) == 0.2);
    CHECK(q("100 m", Kind::Distance) == 100.0);
    CHECK(q("1.5 km", Kind::Distance) == 1500.0);
    CHECK(q("2 degC", Kind::Temperature) == 2.0);
    CHECK(q("0.7", Kind::Dimensionless) == 0.7);
    CHECK(std::isinf(q("unbounded", Kind::Accel)));
    CHECK(std::isinf(q("straight", Kind::Distance)));
}

TEST_CASE("quantity parsing rejects bad input") {
    auto q = [](const char* text, Kind k) {
        return units::parse_quantity_text(text, k, "field");
    };
    CHECK_THROWS_AS(q("25", Kind::Speed), ConfigError);        // bare number, dimensioned
    CHECK_THROWS_AS(q("25 mph", Kind::Speed), ConfigError);    // unknown suffix
    CHECK_THROWS_AS(q("25 s", Kind::Speed), ConfigError);      // wrong dimension
    CHECK_THROWS_AS(q("0.7 g", Kind::Dimensionless), ConfigError);
    CHECK_THROWS_AS(q("unbounded", Kind::Speed), ConfigError);
    CHECK_THROWS_AS(q("fast m/s", Kind::Speed), ConfigError);
    CHECK_THROWS_AS(q("", Kind::Speed), ConfigError);
}

TEST_CASE("load_scenario with direct brake bounds") {
    const auto sc = io::load_scenario(kFixtures + "/scenario_special.json");
    CHECK(!sc.from_environment);
    CHECK(sc.params.v_r == 25.0);
    CHECK(sc.params.v_f == 25.0);
    CHECK(sc.params.rho == 0.5);
    CHECK(sc.params.a_max_accel == doctest::Approx(2.943));
    CHECK(sc.params.a_min_brake == doctest::Approx(3.924));
    CHECK(sc.params.a_max_brake == doctest::Approx(2.943));
}

TEST_CASE("load_scenario with an unbounded front brake") {
    const auto sc = io::load_scenario(kFixtures + "/scenario_unbounded.json");
    CHECK(sc.params.front_brake_unbounded());
}

TEST_CASE("load_scenario from road environments") {
    const auto sc = io::load_scenario(kFixtures + "/scenario_env.json");
    CHECK(sc.from_environment);
    CHECK(sc.params.a_min_brake == doctest::Approx(0.7 * 9.81));
    CHECK(sc.params.a_max_brake == doctest::Approx(0.9 * 9.81));
}

TEST_CASE("load_scenario errors") {
    CHECK_THROWS_AS(io::load_scenario(kFixtures + "/scenario_env_nosafe.json"),
                    NoSafeDistanceError);
    CHECK_THROWS_AS(io::load_scenario(kFixtures + "/does_not_exist.json"), ConfigError);

    TempFile both(R"({"v_r": "1 m/s", "v_f": "1 m/s", "rho": "0.1 s",
                      "a_max_accel": "0 g", "a_min_brake": "0.3 g",
                      "a_max_brake": "0.3 g",
                      "environment": {"rear": {"mu": 0.7}, "front": {"mu": 0.7}}})",
                  "both");
    CHECK_THROWS_AS(io::load_scenario(both.path.string()), ConfigError);

    TempFile bare(R"({"v_r": 25, "v_f": "25 m/s", "rho": "0.5 s",
                      "a_max_accel": "0.3 g", "a_min_brake": "0.4 g",
                      "a_max_brake": "0.3 g"})",
                  "bare");
    CHECK_THROWS_AS(io::load_scenario(bare.path.string()), ConfigError);
}

TEST_CASE("load_odd_config reads the urban fixture") {
    const auto config = io::load_odd_config(kFixtures + "/figure5.json", 3);
    CHECK(config.mu_odds.size() == 6);
    CHECK(config.defensive_id == "defensive_stop");
    const auto* def = config.find("defensive_stop");
    REQUIRE(def != nullptr);
    CHECK(def->posture == odd::Posture::Defensive);
    CHECK(def->behavior.value_or("") == "stop");

    const auto* cruise = config.find("urban_cruise");
    REQUIRE(cruise != nullptr);
    CHECK(cruise->posture == odd::Posture::Normal);
    REQUIRE(cruise->worst.d_min.has_value());
    CHECK(*cruise->worst.d_min > 0.0);

    // The environment-bounded region derives its braking interval from mu.
    const auto* ice = config.find("ice_capable");
    REQUIRE(ice != nullptr);
    REQUIRE(ice->worst.d_min.has_value());
    CHECK(*ice->worst.d_min > *cruise->worst.d_min / 100.0);

    CHECK(config.prior.weights.at("nominal") == doctest::Approx(0.8));
    CHECK(config.rules.size() == 3);
    CHECK(config.lookahead_rules.size() == 1);
}

TEST_CASE("load_odd_config rejects a config without a defensive region") {
    CHECK_THROWS_AS(io::load_odd_config(kFixtures + "/bad_no_defensive.json", 2), ConfigError);
}

TEST_CASE("load_evidence_log") {
    const auto events = io::load_evidence_log(kFixtures + "/figure5_evidence.jsonl");
    REQUIRE(events.size() == 3);
    CHECK(events[0].key == "time_of_day");
    CHECK(events[0].value.text == "night");
    CHECK(events[1].value.text == "true");  // boolean canonicalized
    CHECK(events[2].t == 3.0);

    SUBCASE("records are returned in timestamp order") {
        TempFile log("{\"t\": \"2 s\", \"key\": \"a\", \"value\": \"x\"}\n"
                     "\n"
                     "{\"t\": \"1 s\", \"key\": \"b\", \"value\": \"-2 degC\"}\n",
                     "order");
        const auto ev = io::load_evidence_log(log.path.string());
        REQUIRE(ev.size() == 2);
        CHECK(ev[0].key == "b");
        REQUIRE(ev[0].value.number.has_value());
        CHECK(*ev[0].value.number == -2.0);
        CHECK(ev[1].key == "a");
        CHECK(!ev[1].value.number.has_value());
    }
    SUBCASE("malformed lines are reported with their line number") {
        TempFile log("{\"t\": \"1 s\", \"key\": \"a\", \"value\": \"x\"}\nnot json\n", "bad");
        bool threw = false;
        try {
            io::load_evidence_log(log.path.string());
        } catch (const ConfigError& e) {
            threw = true;
            CHECK(std::string(e.what()).find(":2:") != std::string::npos);
        }
        CHECK(threw);
    }
}

TEST_CASE("load_table_spec") {
    const auto spec = io::load_table_spec(kFixtures + "/table_spec.json");
    CHECK(spec.row_param == "a_max_brake");
    CHECK(spec.col_param == "a_min_brake");
    REQUIRE(spec.row_bins.size() == 1);
    REQUIRE(spec.col_bins.size() == 2);
    CHECK(spec.row_bins[0].lo == doctest::Approx(0.3 * 9.81));
    CHECK(spec.fixed.at("v_r").lo == 25.0);
}
