#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tcrisk/errors.hpp>
#include <tcrisk/scenario.hpp>

#include <string>

using namespace tcrisk;

namespace {

const char* kMinimal = R"({
  "schema": "tcrisk-scenario/1",
  "space": {"outcomes": ["w1", "w2", "w3"], "p0": ["1/3", "1/3", "1/3"]},
  "generators": [["3/5", "1/5", "1/5"], ["1/5", "3/5", "1/5"]]
})";

std::string path_of_error(const std::string& text, bool enforce_limits = true) {
    try {
        parse_scenario(text, enforce_limits);
    } catch (const ScenarioError& e) {
        return e.element_path;
    }
    return "(no error)";
}

}  // namespace

TEST_CASE("minimal scenario parses") {
    const Scenario s = parse_scenario(kMinimal);
    CHECK(s.space->size() == 3);
    CHECK(s.generators.size() == 2);
    CHECK(s.filtrations.empty());
    CHECK(s.positions.empty());
    CHECK(s.options.max_outcomes == 12);
    CHECK(s.options.max_generators == 12);
    CHECK_FALSE(s.options.seed.has_value());
    CHECK_FALSE(exceeds_limits(s));
    CHECK(s.risk().generator_count() == 2);
}

TEST_CASE("full scenario with filtrations, positions and options") {
    const std::string text = R"({
      "schema": "tcrisk-scenario/1",
      "space": {"outcomes": ["w1", "w2", "w3"], "p0": ["1/3", "1/3", "1/3"]},
      "generators": [["3/5", "1/5", "1/5"]],
      "filtrations": {
        "fA": [[["w1", "w2", "w3"]], [["w1"], ["w2", "w3"]], [["w1"], ["w2"], ["w3"]]]
      },
      "positions": {"x1": ["1", "0", "-1/2"]},
      "options": {"max_outcomes": 5, "max_generators": 4, "seed": 7}
    })";
    const Scenario s = parse_scenario(text);
    REQUIRE(s.filtrations.count("fA") == 1);
    const Filtration& f = s.filtrations.at("fA");
    CHECK(f.level_count() == 3);
    CHECK(f.level(1) == Partition::two_block({0}, 3));
    REQUIRE(s.positions.count("x1") == 1);
    CHECK(s.positions.at("x1")[2] == Rational(-1, 2));
    CHECK(s.options.max_outcomes == 5);
    CHECK(s.options.max_generators == 4);
    CHECK(s.options.seed == 7u);
}

TEST_CASE("document-level failures") {
    CHECK(path_of_error("{nope") == "(document)");
    CHECK(path_of_error("[1,2]") == "(document)");
    CHECK(path_of_error("{}") == "schema");
    CHECK(path_of_error(R"({"schema": "other/9"})") == "schema");
    CHECK(path_of_error(R"({"schema": "tcrisk-scenario/1", "surprise": 1})") == "surprise");
}

TEST_CASE("space failures carry precise paths") {
    CHECK(path_of_error(R"({"schema": "tcrisk-scenario/1"})") == "space");
    CHECK(path_of_error(R"({"schema": "tcrisk-scenario/1",
                            "space": {"outcomes": ["w1"]},
                            "generators": [["1"]]})") == "space.p0");
    CHECK(path_of_error(R"({"schema": "tcrisk-scenario/1",
                            "space": {"outcomes": ["w1"], "p0": ["1"], "ref": []},
                            "generators": [["1"]]})") == "space.ref");
    CHECK(path_of_error(R"({"schema": "tcrisk-scenario/1",
                            "space": {"outcomes": ["w1", "w2"], "p0": ["1/2"]},
                            "generators": [["1", "0"]]})") == "space.p0");
    CHECK(path_of_error(R"({"schema": "tcrisk-scenario/1",
                            "space": {"outcomes": ["w1", "w2"], "p0": ["1/2", "1/3"]},
                            "generators": [["1", "0"]]})") == "space");
    CHECK(path_of_error(R"({"schema": "tcrisk-scenario/1",
                            "space": {"outcomes": ["w1", "w2"], "p0": ["1/2", "0.5"]},
                            "generators": [["1", "0"]]})") == "space.p0[1]");
}

TEST_CASE("generator failures carry precise paths") {
    CHECK(path_of_error(R"({"schema": "tcrisk-scenario/1",
                            "space": {"outcomes": ["w1"], "p0": ["1"]}})") == "generators");
    const std::string bad_rational = R"({
      "schema": "tcrisk-scenario/1",
      "space": {"outcomes": ["w1", "w2", "w3"], "p0": ["1/3", "1/3", "1/3"]},
      "generators": [["1/2", "1/4", "1/4"], ["1/4", "1/2", "x"]]
    })";
    CHECK(path_of_error(bad_rational) == "generators[1][2]");

    const std::string bad_sum = R"({
      "schema": "tcrisk-scenario/1",
      "space": {"outcomes": ["w1", "w2"], "p0": ["1/2", "1/2"]},
      "generators": [["1/2", "1/4"]]
    })";
    try {
        parse_scenario(bad_sum);
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        CHECK(e.element_path == "generators[0]");
        CHECK(std::string(e.what()).find("sum to 1") != std::string::npos);
    }
}

TEST_CASE("filtration failures carry precise paths") {
    const std::string base = R"({
      "schema": "tcrisk-scenario/1",
      "space": {"outcomes": ["w1", "w2", "w3"], "p0": ["1/3", "1/3", "1/3"]},
      "generators": [["1/3", "1/3", "1/3"]],
      "filtrations": )";

    CHECK(path_of_error(base + R"({"f": [[["w1","w2","w3"]], [["w1"],["zz","w3"]],
                                         [["w1"],["w2"],["w3"]]]}})") == "filtrations.f[1][1][0]");
    CHECK(path_of_error(base + R"({"f": [[["w1","w2","w3"]], [["w1"],["w2"]],
                                         [["w1"],["w2"],["w3"]]]}})") == "filtrations.f[1]");
    // refinement breaks between levels: blamed on the filtration as a whole
    CHECK(path_of_error(base + R"({"f": [[["w1","w2","w3"]], [["w1","w2"],["w3"]],
                                         [["w1"],["w2","w3"]], [["w1"],["w2"],["w3"]]]}})") ==
          "filtrations.f");
    // missing discrete tail
    CHECK(path_of_error(base + R"({"f": [[["w1","w2","w3"]], [["w1"],["w2","w3"]]]}})") ==
          "filtrations.f");
}

TEST_CASE("position failures carry precise paths") {
    const std::string text = R"({
      "schema": "tcrisk-scenario/1",
      "space": {"outcomes": ["w1", "w2"], "p0": ["1/2", "1/2"]},
      "generators": [["1/2", "1/2"]],
      "positions": {"x": ["1", "2", "3"]}
    })";
    CHECK(path_of_error(text) == "positions.x");
}

TEST_CASE("declared limits are enforced unless bypassed") {
    std::string outcomes = "[";
    std::string p0 = "[";
    std::string gen = "[";
    for (int i = 0; i < 13; ++i) {
        if (i) {
            outcomes += ", ";
            p0 += ", ";
            gen += ", ";
        }
        outcomes += "\"o" + std::to_string(i) + "\"";
        p0 += "\"1/13\"";
        gen += "\"1/13\"";
    }
    outcomes += "]";
    p0 += "]";
    gen += "]";
    const std::string big = R"({"schema": "tcrisk-scenario/1", "space": {"outcomes": )" +
                            outcomes + R"(, "p0": )" + p0 + R"(}, "generators": [)" + gen +
                            "]}";
    try {
        parse_scenario(big);
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        CHECK(e.element_path == "space.outcomes");
        CHECK(std::string(e.what()).find("--force") != std::string::npos);
    }
    const Scenario s = parse_scenario(big, /*enforce_limits=*/false);
    CHECK(s.space->size() == 13);
    CHECK(exceeds_limits(s));
}

TEST_CASE("options validation") {
    const std::string head = R"({"schema": "tcrisk-scenario/1",
      "space": {"outcomes": ["w1"], "p0": ["1"]}, "generators": [["1"]], "options": )";
    CHECK(path_of_error(head + R"({"max_outcomes": 0}})") == "options.max_outcomes");
    CHECK(path_of_error(head + R"({"seed": -4}})") == "options.seed");
    CHECK(path_of_error(head + R"({"verbose": true}})") == "options.verbose");
    CHECK(path_of_error(head + "3}") == "options");
}

TEST_CASE("serialization is canonical and round-trips") {
    const std::string messy = R"({
      "positions": {"x": ["2/4", "0"]},
      "generators": [["4/8", "1/2"]],
      "space": {"p0": ["1/2", "2/4"], "outcomes": ["w1", "w2"]},
      "schema": "tcrisk-scenario/1"
    })";
    const std::string once = serialize_scenario(parse_scenario(messy));
    const std::string twice = serialize_scenario(parse_scenario(once));
    CHECK(once == twice);
    CHECK(once.find("\"1/2\"") != std::string::npos);
    CHECK(once.find("2/4") == std::string::npos);  // lowest terms everywhere
    CHECK(once.find("4/8") == std::string::npos);
    // canonical key order: schema first
    CHECK(once.find("\"schema\"") < once.find("\"space\""));
    CHECK(once.find("\"space\"") < once.find("\"generators\""));
}

TEST_CASE("filtrations and positions survive a round-trip") {
    const std::string text = R"({
      "schema": "tcrisk-scenario/1",
      "space": {"outcomes": ["u", "v", "w"], "p0": ["1/2", "1/4", "1/4"]},
      "generators": [["1/2", "1/4", "1/4"], ["1/4", "1/2", "1/4"]],
      "filtrations": {"f": [[["u","v","w"]], [["u","v"],["w"]], [["u"],["v"],["w"]]]},
      "positions": {"a": ["1", "-2", "3/7"]},
      "options": {"seed": 11}
    })";
    const Scenario s1 = parse_scenario(text);
    const Scenario s2 = parse_scenario(serialize_scenario(s1));
    CHECK(*s1.space == *s2.space);
    CHECK(s1.generators.size() == s2.generators.size());
    for (std::size_t i = 0; i < s1.generators.size(); ++i) {
        CHECK(s1.generators[i] == s2.generators[i]);
    }
    CHECK(s1.filtrations.at("f") == s2.filtrations.at("f"));
    CHECK(s1.positions.at("a") == s2.positions.at("a"));
    CHECK(s2.options.seed == 11u);
}

TEST_CASE("load_scenario reads the shipped examples") {
    const std::string dir = TCRISK_SCENARIO_DIR;
    const Scenario s = load_scenario(dir + "/worked_example.json");
    CHECK(s.space->size() == 3);
    CHECK(s.generators.size() == 2);
    CHECK(s.filtrations.count("fA") == 1);
    CHECK(s.positions.count("x012") == 1);

    try {
        load_scenario(dir + "/no_such_file.json");
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        CHECK(e.element_path == "(file)");
    }
}
