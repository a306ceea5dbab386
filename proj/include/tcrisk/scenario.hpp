#pragma once

#include "tcrisk/risk_measure.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace tcrisk {

inline constexpr const char* kScenarioSchema = "tcrisk-scenario/1";
inline constexpr const char* kReportSchema = "tcrisk-report/1";

/// Default caps keep the rectangle enumeration (exponential in block count)
/// at desk scale; the CLI can bypass them with --force after printing the
/// combinatorial cost estimate.
struct ScenarioOptions {
    std::size_t max_outcomes = 12;
    std::size_t max_generators = 12;
    std::optional<std::uint64_t> seed;
};

/**
 * A scenario file: one space, the generators of one risk measure, and named
 * filtrations/positions to run commands against. Rationals travel as
 * "num/den" strings so exactness survives serialization.
 */
struct Scenario {
    SpacePtr space;
    std::vector<Measure> generators;
    std::map<std::string, Filtration> filtrations;
    std::map<std::string, Position> positions;
    ScenarioOptions options;

    RiskMeasure risk() const { return RiskMeasure(space, generators); }
};

/// True when the scenario is larger than its own declared limits allow.
bool exceeds_limits(const Scenario& s);

/**
 * Parses and validates scenario JSON. Every failure throws ScenarioError
 * carrying the path of the offending element (for example
 * "generators[1][2]" or "filtrations.fA[2][0]"). With enforce_limits set,
 * scenarios over their declared limits are rejected at load.
 */
Scenario parse_scenario(const std::string& text, bool enforce_limits = true);

Scenario load_scenario(const std::string& path, bool enforce_limits = true);

/// Canonical serialization: fixed key order, rationals in lowest terms.
/// serialize(parse(serialize(parse(text)))) == serialize(parse(text)).
std::string serialize_scenario(const Scenario& s);

}  // namespace tcrisk
