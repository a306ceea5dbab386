#include "tcrisk/scenario.hpp"

#include "tcrisk/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <utility>

namespace tcrisk {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string idx(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

std::string key_path(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) throw ScenarioError(key_path(path, it.key()), "unknown key");
    }
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const char* key, const std::string& path) {
    const json* v = find(obj, key);
    if (!v) throw ScenarioError(key_path(path, key), "missing required key");
    return *v;
}

std::string require_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ScenarioError(path, "expected a string");
    return j.get<std::string>();
}

Rational require_rational(const json& j, const std::string& path) {
    if (!j.is_string())
        throw ScenarioError(path, "expected a rational as a \"num/den\" string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(path, e.what());
    }
}

std::vector<Rational> rational_vector(const json& j, const std::string& path, std::size_t want) {
    if (!j.is_array()) throw ScenarioError(path, "expected an array");
    if (j.size() != want)
        throw ScenarioError(path, "expected " + std::to_string(want) + " entries, got " +
                                      std::to_string(j.size()));
    std::vector<Rational> out;
    out.reserve(want);
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(require_rational(j[i], idx(path, i)));
    return out;
}

std::size_t require_positive_integer(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0)
        throw ScenarioError(path, "expected a positive integer");
    return static_cast<std::size_t>(j.get<std::uint64_t>());
}

}  // namespace

bool exceeds_limits(const Scenario& s) {
    return s.space->size() > s.options.max_outcomes ||
           s.generators.size() > s.options.max_generators;
}

Scenario parse_scenario(const std::string& text, bool enforce_limits) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError("(document)", e.what());
    }
    if (!j.is_object()) throw ScenarioError("(document)", "top level must be an object");
    check_keys(j, "", {"schema", "space", "generators", "filtrations", "positions", "options"});

    const std::string schema = require_string(require(j, "schema", ""), "schema");
    if (schema != kScenarioSchema)
        throw ScenarioError("schema", "unsupported schema \"" + schema + "\"; expected \"" +
                                          std::string(kScenarioSchema) + "\"");

    ScenarioOptions options;
    if (const json* o = find(j, "options")) {
        if (!o->is_object()) throw ScenarioError("options", "expected an object");
        check_keys(*o, "options", {"max_outcomes", "max_generators", "seed"});
        if (const json* v = find(*o, "max_outcomes"))
            options.max_outcomes = require_positive_integer(*v, "options.max_outcomes");
        if (const json* v = find(*o, "max_generators"))
            options.max_generators = require_positive_integer(*v, "options.max_generators");
        if (const json* v = find(*o, "seed")) {
            if (!v->is_number_unsigned())
                throw ScenarioError("options.seed", "expected a nonnegative integer");
            options.seed = v->get<std::uint64_t>();
        }
    }

    const json& jspace = require(j, "space", "");
    if (!jspace.is_object()) throw ScenarioError("space", "expected an object");
    check_keys(jspace, "space", {"outcomes", "p0"});
    const json& joutcomes = require(jspace, "outcomes", "space");
    if (!joutcomes.is_array() || joutcomes.empty())
        throw ScenarioError("space.outcomes", "expected a nonempty array of outcome labels");
    std::vector<std::string> labels;
    labels.reserve(joutcomes.size());
    for (std::size_t i = 0; i < joutcomes.size(); ++i)
        labels.push_back(require_string(joutcomes[i], idx("space.outcomes", i)));
    if (enforce_limits && labels.size() > options.max_outcomes)
        throw ScenarioError("space.outcomes",
                            "too many outcomes (" + std::to_string(labels.size()) + " > " +
                                std::to_string(options.max_outcomes) +
                                "); raise options.max_outcomes or run with --force");
    std::vector<Rational> p0 = rational_vector(require(jspace, "p0", "space"), "space.p0",
                                               labels.size());
    SpacePtr space;
    try {
        space = make_space(std::move(labels), std::move(p0));
    } catch (const std::invalid_argument& e) {
        throw ScenarioError("space", e.what());
    }
    const std::size_t n = space->size();

    const json& jgens = require(j, "generators", "");
    if (!jgens.is_array() || jgens.empty())
        throw ScenarioError("generators", "expected a nonempty array of measures");
    if (enforce_limits && jgens.size() > options.max_generators)
        throw ScenarioError("generators",
                            "too many generators (" + std::to_string(jgens.size()) + " > " +
                                std::to_string(options.max_generators) +
                                "); raise options.max_generators or run with --force");
    std::vector<Measure> generators;
    generators.reserve(jgens.size());
    for (std::size_t i = 0; i < jgens.size(); ++i) {
        std::vector<Rational> v = rational_vector(jgens[i], idx("generators", i), n);
        try {
            generators.emplace_back(space, std::move(v));
        } catch (const std::invalid_argument& e) {
            throw ScenarioError(idx("generators", i), e.what());
        }
    }

    std::map<std::string, Filtration> filtrations;
    if (const json* jf = find(j, "filtrations")) {
        if (!jf->is_object()) throw ScenarioError("filtrations", "expected an object");
        for (auto it = jf->begin(); it != jf->end(); ++it) {
            const std::string fpath = "filtrations." + it.key();
            const json& jlevels = it.value();
            if (!jlevels.is_array() || jlevels.empty())
                throw ScenarioError(fpath, "expected a nonempty array of levels");
            std::vector<Partition> levels;
            for (std::size_t t = 0; t < jlevels.size(); ++t) {
                const std::string tpath = idx(fpath, t);
                const json& jblocks = jlevels[t];
                if (!jblocks.is_array() || jblocks.empty())
                    throw ScenarioError(tpath, "expected a nonempty array of blocks");
                std::vector<OutcomeSet> blocks;
                for (std::size_t k = 0; k < jblocks.size(); ++k) {
                    const std::string kpath = idx(tpath, k);
                    const json& jblock = jblocks[k];
                    if (!jblock.is_array() || jblock.empty())
                        throw ScenarioError(kpath, "expected a nonempty array of outcome labels");
                    OutcomeSet block;
                    for (std::size_t m = 0; m < jblock.size(); ++m) {
                        const std::string label = require_string(jblock[m], idx(kpath, m));
                        try {
                            block.push_back(space->index_of(label));
                        } catch (const std::invalid_argument&) {
                            throw ScenarioError(idx(kpath, m),
                                                "unknown outcome label \"" + label + "\"");
                        }
                    }
                    blocks.push_back(std::move(block));
                }
                try {
                    levels.emplace_back(std::move(blocks), n);
                } catch (const std::invalid_argument& e) {
                    throw ScenarioError(tpath, e.what());
                }
            }
            try {
                filtrations.emplace(it.key(), Filtration(std::move(levels)));
            } catch (const std::invalid_argument& e) {
                throw ScenarioError(fpath, e.what());
            }
        }
    }

    std::map<std::string, Position> positions;
    if (const json* jp = find(j, "positions")) {
        if (!jp->is_object()) throw ScenarioError("positions", "expected an object");
        for (auto it = jp->begin(); it != jp->end(); ++it) {
            const std::string ppath = "positions." + it.key();
            positions.emplace(it.key(), Position(space, rational_vector(it.value(), ppath, n)));
        }
    }

    return Scenario{std::move(space), std::move(generators), std::move(filtrations),
                    std::move(positions), options};
}

Scenario load_scenario(const std::string& path, bool enforce_limits) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError("(file)", "cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), enforce_limits);
}

std::string serialize_scenario(const Scenario& s) {
    ordered_json j;
    j["schema"] = kScenarioSchema;
    j["space"]["outcomes"] = s.space->outcomes();
    {
        ordered_json p0 = ordered_json::array();
        for (const Rational& r : s.space->reference()) p0.push_back(format_rational(r));
        j["space"]["p0"] = std::move(p0);
    }
    {
        ordered_json gens = ordered_json::array();
        for (const Measure& g : s.generators) {
            ordered_json one = ordered_json::array();
            for (const Rational& r : g.values()) one.push_back(format_rational(r));
            gens.push_back(std::move(one));
        }
        j["generators"] = std::move(gens);
    }
    if (!s.filtrations.empty()) {
        ordered_json fs = ordered_json::object();
        for (const auto& [name, f] : s.filtrations) {
            ordered_json levels = ordered_json::array();
            for (const Partition& pi : f.levels()) {
                ordered_json blocks = ordered_json::array();
                for (const OutcomeSet& block : pi.blocks()) {
                    ordered_json one = ordered_json::array();
                    for (std::size_t i : block) one.push_back(s.space->label(i));
                    blocks.push_back(std::move(one));
                }
                levels.push_back(std::move(blocks));
            }
            fs[name] = std::move(levels);
        }
        j["filtrations"] = std::move(fs);
    }
    if (!s.positions.empty()) {
        ordered_json ps = ordered_json::object();
        for (const auto& [name, x] : s.positions) {
            ordered_json one = ordered_json::array();
            for (const Rational& r : x.values()) one.push_back(format_rational(r));
            ps[name] = std::move(one);
        }
        j["positions"] = std::move(ps);
    }
    j["options"]["max_outcomes"] = s.options.max_outcomes;
    j["options"]["max_generators"] = s.options.max_generators;
    if (s.options.seed) j["options"]["seed"] = *s.options.seed;
    return j.dump(2) + "\n";
}

}  // namespace tcrisk
