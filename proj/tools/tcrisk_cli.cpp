// tcrisk: coherent risk measures on finite probability spaces.
//
// Subcommands: eval, check, classify, witness, extend, simplex, entropic.
// Exit codes: 0 success/consistent, 1 inconsistent or NotUniversal (including
// extend's refusal), 2 input error.

#include "tcrisk/classify.hpp"
#include "tcrisk/errors.hpp"
#include "tcrisk/extensions.hpp"
#include "tcrisk/pasting.hpp"
#include "tcrisk/scenario.hpp"
#include "tcrisk/simplex_export.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::ordered_json;
using namespace tcrisk;

struct CommonArgs {
    std::string scenario_path;
    bool json = false;
    bool force = false;
};

std::string join_rationals(const std::vector<Rational>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_rational(v[i]);
    }
    return out;
}

std::string partition_str(const Partition& pi, const Space& sp) {
    std::string out = "{ ";
    for (std::size_t k = 0; k < pi.block_count(); ++k) {
        if (k) out += ", ";
        out += set_to_string(pi.block(k), sp);
    }
    out += " }";
    return out;
}

ordered_json rationals_json(const std::vector<Rational>& v) {
    ordered_json a = ordered_json::array();
    for (const Rational& r : v) a.push_back(format_rational(r));
    return a;
}

ordered_json set_json(const OutcomeSet& s, const Space& sp) {
    ordered_json a = ordered_json::array();
    for (std::size_t i : s) a.push_back(sp.label(i));
    return a;
}

ordered_json partition_json(const Partition& pi, const Space& sp) {
    ordered_json a = ordered_json::array();
    for (const OutcomeSet& block : pi.blocks()) a.push_back(set_json(block, sp));
    return a;
}

ordered_json report_head(const char* command) {
    ordered_json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    return j;
}

std::string class_summary(const Classification& cls, const Space& sp) {
    switch (cls.tag) {
        case ClassTag::OneAtomic: return "OneAtomic(" + sp.label(*cls.omega1) + ")";
        case ClassTag::TwoAtomic:
            return "TwoAtomic(" + sp.label(*cls.omega1) + ", " + sp.label(*cls.omega2) + ", " +
                   format_rational(*cls.alpha) + ", " + format_rational(*cls.beta) + ")";
        case ClassTag::Extremal: return "Extremal";
        case ClassTag::Linear: return "Linear(" + join_rationals(cls.linear_measure->values()) + ")";
        case ClassTag::NotUniversal: return "NotUniversal";
    }
    return "?";
}

void print_witness_human(const Witness& w, const Space& sp, std::ostream& os) {
    os << "witness: A=" << set_to_string(w.a, sp) << " B=" << set_to_string(w.b, sp) << '\n';
    os << "failing partition: " << partition_str(w.failing_partition, sp) << '\n';
    os << "failing vertex: " << join_rationals(w.failing_vertex.values()) << '\n';
    if (w.certificate.separator)
        os << "separator: " << join_rationals(w.certificate.separator->values()) << '\n';
    if (w.chain) {
        os << "chain (" << w.chain->side << " side, A=" << set_to_string(w.chain->a, sp)
           << " B=" << set_to_string(w.chain->b, sp) << "):\n";
        for (std::size_t i = 0; i < w.chain->z.size(); ++i)
            os << "  z" << i + 1 << " = " << join_rationals(w.chain->z[i].values()) << "   ["
               << w.chain->roles[i] << "]\n";
    }
}

ordered_json witness_json(const Witness& w, const Space& sp) {
    ordered_json j;
    j["a"] = set_json(w.a, sp);
    j["b"] = set_json(w.b, sp);
    j["failing_partition"] = partition_json(w.failing_partition, sp);
    j["failing_vertex"] = rationals_json(w.failing_vertex.values());
    if (w.certificate.separator)
        j["separator"] = rationals_json(w.certificate.separator->values());
    if (w.chain) {
        ordered_json c;
        c["side"] = w.chain->side;
        c["a"] = set_json(w.chain->a, sp);
        c["b"] = set_json(w.chain->b, sp);
        ordered_json zs = ordered_json::array();
        for (const Measure& z : w.chain->z) zs.push_back(rationals_json(z.values()));
        c["z"] = std::move(zs);
        c["roles"] = w.chain->roles;
        j["chain"] = std::move(c);
    }
    return j;
}

ordered_json classification_json(const Classification& cls, const Space& sp) {
    ordered_json j;
    j["tag"] = to_string(cls.tag);
    j["non_polar"] = set_json(cls.non_polar, sp);
    if (cls.omega1) j["omega1"] = sp.label(*cls.omega1);
    if (cls.omega2) j["omega2"] = sp.label(*cls.omega2);
    if (cls.alpha) j["alpha"] = format_rational(*cls.alpha);
    if (cls.beta) j["beta"] = format_rational(*cls.beta);
    if (cls.linear_measure) j["linear_measure"] = rationals_json(cls.linear_measure->values());
    if (cls.witness) j["witness"] = witness_json(*cls.witness, sp);
    return j;
}

const Position& lookup_position(const Scenario& s, const std::string& name) {
    auto it = s.positions.find(name);
    if (it == s.positions.end())
        throw ScenarioError("positions." + name, "no position with this name");
    return it->second;
}

const Filtration& lookup_filtration(const Scenario& s, const std::string& name) {
    auto it = s.filtrations.find(name);
    if (it == s.filtrations.end())
        throw ScenarioError("filtrations." + name, "no filtration with this name");
    return it->second;
}

/// With --force on an over-limit scenario, surface the enumeration size the
/// user is about to pay for (on stderr, so machine output stays clean).
void announce_cost(const Scenario& s, const std::vector<Partition>& partitions) {
    if (!exceeds_limits(s) || partitions.empty()) return;
    RiskMeasure rm = s.risk();
    unsigned long long total = 0;
    constexpr auto cap = std::numeric_limits<unsigned long long>::max();
    for (const Partition& pi : partitions) {
        const unsigned long long c = rectangle_cost_estimate(rm, pi);
        total = (total > cap - c) ? cap : total + c;
    }
    std::cerr << "note: limits exceeded; rectangle enumeration cost estimate: " << total
              << " vertices\n";
}

std::vector<Partition> singleton_partitions(const RiskMeasure& rm) {
    std::vector<Partition> out;
    const std::size_t n = rm.space()->size();
    if (n < 2) return out;
    for (std::size_t i : rm.non_polar_outcomes()) out.push_back(Partition::two_block({i}, n));
    return out;
}

OutcomeSet parse_label_set(const std::string& csv, const SpacePtr& sp, const char* flag) {
    OutcomeSet out;
    std::stringstream ss(csv);
    std::string label;
    while (std::getline(ss, label, ',')) {
        if (label.empty())
            throw PreconditionError(std::string(flag) + ": empty outcome label");
        try {
            out.push_back(sp->index_of(label));
        } catch (const std::invalid_argument&) {
            throw PreconditionError(std::string(flag) + ": unknown outcome label \"" + label +
                                    "\"");
        }
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw PreconditionError(std::string(flag) + ": duplicate outcome label");
    if (out.empty()) throw PreconditionError(std::string(flag) + ": no outcome labels given");
    return out;
}

int run_eval(const CommonArgs& c, const std::string& position, const std::string& filtration,
             std::optional<std::size_t> level) {
    Scenario s = load_scenario(c.scenario_path, !c.force);
    RiskMeasure rm = s.risk();
    const Position& x = lookup_position(s, position);
    if (!filtration.empty()) {
        const Filtration& f = lookup_filtration(s, filtration);
        if (*level >= f.level_count())
            throw ScenarioError("filtrations." + filtration,
                                "level " + std::to_string(*level) + " out of range (levels 0.." +
                                    std::to_string(f.level_count() - 1) + ")");
        const Partition& pi = f.level(*level);
        Position v = conditional_rho(rm, x, pi);
        if (c.json) {
            ordered_json j = report_head("eval");
            j["position"] = position;
            j["filtration"] = filtration;
            j["level"] = *level;
            ordered_json blocks = ordered_json::array();
            for (const OutcomeSet& block : pi.blocks()) {
                ordered_json one;
                one["block"] = set_json(block, *s.space);
                one["value"] = format_rational(v[block.front()]);
                blocks.push_back(std::move(one));
            }
            j["blocks"] = std::move(blocks);
            j["values"] = rationals_json(v.values());
            std::cout << j.dump(2) << '\n';
        } else {
            for (const OutcomeSet& block : pi.blocks())
                std::cout << "block " << set_to_string(block, *s.space) << ": "
                          << format_rational(v[block.front()]) << '\n';
        }
        return 0;
    }
    Rational value = rho(rm, x);
    if (c.json) {
        ordered_json j = report_head("eval");
        j["position"] = position;
        j["value"] = format_rational(value);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << format_rational(value) << '\n';
    }
    return 0;
}

int run_check(const CommonArgs& c, const std::string& filtration) {
    Scenario s = load_scenario(c.scenario_path, !c.force);
    RiskMeasure rm = s.risk();
    const Filtration& f = lookup_filtration(s, filtration);
    announce_cost(s, f.levels());
    std::vector<RectangleReport> reports = is_filtration_consistent(rm, f);
    const bool ok = all_consistent(reports);
    if (c.json) {
        ordered_json j = report_head("check");
        j["filtration"] = filtration;
        j["consistent"] = ok;
        ordered_json levels = ordered_json::array();
        for (std::size_t t = 0; t < reports.size(); ++t) {
            ordered_json one;
            one["level"] = t;
            one["partition"] = partition_json(reports[t].partition, *s.space);
            one["pass"] = reports[t].consistent();
            ordered_json fails = ordered_json::array();
            for (const auto& [vertex, cert] : reports[t].failures) {
                ordered_json fj;
                fj["vertex"] = rationals_json(vertex.values());
                if (cert.separator) fj["separator"] = rationals_json(cert.separator->values());
                fails.push_back(std::move(fj));
            }
            one["failures"] = std::move(fails);
            levels.push_back(std::move(one));
        }
        j["levels"] = std::move(levels);
        std::cout << j.dump(2) << '\n';
    } else {
        for (std::size_t t = 0; t < reports.size(); ++t) {
            std::cout << "level " << t << ' ' << partition_str(reports[t].partition, *s.space)
                      << ": " << (reports[t].consistent() ? "PASS" : "FAIL") << '\n';
            for (const auto& [vertex, cert] : reports[t].failures) {
                std::cout << "  vertex " << join_rationals(vertex.values()) << " is outside";
                if (cert.separator)
                    std::cout << "; separator " << join_rationals(cert.separator->values());
                std::cout << '\n';
            }
        }
        std::cout << (ok ? "consistent" : "inconsistent") << '\n';
    }
    return ok ? 0 : 1;
}

int run_classify(const CommonArgs& c) {
    Scenario s = load_scenario(c.scenario_path, !c.force);
    RiskMeasure rm = s.risk();
    announce_cost(s, singleton_partitions(rm));
    Classification cls = classify(rm);
    if (c.json) {
        ordered_json j = report_head("classify");
        j["classification"] = classification_json(cls, *s.space);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << class_summary(cls, *s.space) << '\n';
        if (cls.witness) print_witness_human(*cls.witness, *s.space, std::cout);
    }
    return cls.tag == ClassTag::NotUniversal ? 1 : 0;
}

int run_witness(const CommonArgs& c) {
    Scenario s = load_scenario(c.scenario_path, !c.force);
    RiskMeasure rm = s.risk();
    announce_cost(s, singleton_partitions(rm));
    Classification cls = classify(rm);
    if (cls.tag != ClassTag::NotUniversal) {
        if (c.json) {
            ordered_json j = report_head("witness");
            j["witness_exists"] = false;
            j["classification"] = classification_json(cls, *s.space);
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "no witness: classified " << class_summary(cls, *s.space) << '\n';
        }
        return 0;
    }
    if (c.json) {
        ordered_json j = report_head("witness");
        j["witness_exists"] = true;
        j["witness"] = witness_json(*cls.witness, *s.space);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "NotUniversal\n";
        print_witness_human(*cls.witness, *s.space, std::cout);
    }
    return 1;
}

int run_extend(const CommonArgs& c, const std::string& filtration, const std::string& position) {
    Scenario s = load_scenario(c.scenario_path, !c.force);
    RiskMeasure rm = s.risk();
    const Filtration& f = lookup_filtration(s, filtration);
    const Position& x = lookup_position(s, position);
    announce_cost(s, f.levels());
    Classification cls = classify(rm);
    if (cls.tag == ClassTag::NotUniversal) {
        if (c.json) {
            ordered_json j = report_head("extend");
            j["refused"] = true;
            j["reason"] = "NotUniversal: no time-consistent extension exists for the witnessed "
                          "simple filtration";
            j["witness"] = witness_json(*cls.witness, *s.space);
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "refused: the risk measure is NotUniversal, so no dynamic extension "
                         "exists for every filtration\n";
            print_witness_human(*cls.witness, *s.space, std::cout);
        }
        return 1;
    }
    DynamicRiskMeasure d(reduce_to_vertices(rm), f, cls);
    Rational worst(0);
    for (std::size_t t = 0; t < f.level_count(); ++t)
        for (std::size_t u = 0; u <= t; ++u) {
            Rational r = semigroup_residual(d, x, u, t);
            if (r > worst) worst = r;
        }
    if (c.json) {
        ordered_json j = report_head("extend");
        j["refused"] = false;
        j["classification"] = classification_json(cls, *s.space);
        j["filtration"] = filtration;
        j["position"] = position;
        ordered_json levels = ordered_json::array();
        for (std::size_t t = 0; t < f.level_count(); ++t) {
            Position v = d.evaluate(t, x);
            ordered_json one;
            one["level"] = t;
            ordered_json blocks = ordered_json::array();
            for (const OutcomeSet& block : f.level(t).blocks()) {
                ordered_json bj;
                bj["block"] = set_json(block, *s.space);
                bj["value"] = format_rational(v[block.front()]);
                blocks.push_back(std::move(bj));
            }
            one["blocks"] = std::move(blocks);
            levels.push_back(std::move(one));
        }
        j["levels"] = std::move(levels);
        j["semigroup_residual"] = format_rational(worst);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "class: " << class_summary(cls, *s.space) << '\n';
        for (std::size_t t = 0; t < f.level_count(); ++t) {
            Position v = d.evaluate(t, x);
            std::cout << "level " << t << ':';
            for (const OutcomeSet& block : f.level(t).blocks())
                std::cout << "  " << set_to_string(block, *s.space) << " -> "
                          << format_rational(v[block.front()]);
            std::cout << '\n';
        }
        std::cout << "semigroup residual: " << format_rational(worst) << '\n';
    }
    return 0;
}

int run_simplex(const CommonArgs& c, const std::string& a_csv, const std::string& b_csv,
                const std::string& out_path, const std::string& csv_path) {
    Scenario s = load_scenario(c.scenario_path, !c.force);
    RiskMeasure rm = s.risk();
    const OutcomeSet a = parse_label_set(a_csv, s.space, "--a");
    const OutcomeSet b = parse_label_set(b_csv, s.space, "--b");
    announce_cost(s, {Partition::two_block(a, s.space->size())});
    SimplexScene scene = project(rm, a, b);
    {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ScenarioError("(file)", "cannot write \"" + out_path + "\"");
        out << render_svg(scene);
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw ScenarioError("(file)", "cannot write \"" + csv_path + "\"");
        out << render_csv(scene);
    }
    if (c.json) {
        ordered_json j = report_head("simplex");
        j["out"] = out_path;
        if (!csv_path.empty()) j["csv"] = csv_path;
        ordered_json pts = ordered_json::array();
        for (const ScenePoint& p : scene.points) {
            ordered_json pj;
            pj["label"] = p.label;
            pj["pA"] = format_rational(p.bary[0]);
            pj["pB"] = format_rational(p.bary[1]);
            pj["pRest"] = format_rational(p.bary[2]);
            pts.push_back(std::move(pj));
        }
        j["points"] = std::move(pts);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "wrote " << out_path << '\n';
        if (!csv_path.empty()) std::cout << "wrote " << csv_path << '\n';
    }
    return 0;
}

int run_entropic(const CommonArgs& c, double gamma, const std::string& position,
                 const std::string& filtration) {
    Scenario s = load_scenario(c.scenario_path, !c.force);
    const Position& x = lookup_position(s, position);
    const Filtration& f = lookup_filtration(s, filtration);
    EntropicReport rep = entropic_consistency_demo(f, gamma, reference_measure(s.space), x);
    if (c.json) {
        ordered_json j = report_head("entropic");
        j["approx"] = true;  // floating point: the one non-exact corner of the tool
        j["gamma"] = rep.gamma;
        j["position"] = position;
        j["filtration"] = filtration;
        j["levels"] = rep.levels;
        j["max_semigroup_residual"] = rep.max_semigroup_residual;
        j["homogeneity_gap"] = rep.homogeneity_gap;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout.precision(12);
        std::cout << "gamma: " << rep.gamma << '\n';
        for (std::size_t t = 0; t < rep.levels.size(); ++t) {
            std::cout << "level " << t << " (approx):";
            for (double v : rep.levels[t]) std::cout << ' ' << v;
            std::cout << '\n';
        }
        std::cout << "max semigroup residual (approx): " << rep.max_semigroup_residual << '\n';
        std::cout << "homogeneity gap |rho(2x)-2rho(x)| (approx): " << rep.homogeneity_gap
                  << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coherent risk measures on finite spaces: evaluation, time-consistency "
                 "checks, classification, witnesses, dynamic extensions, simplex figures"};
    app.require_subcommand(1);

    CommonArgs common[7];
    auto add_common = [&](CLI::App* sub, CommonArgs& c) {
        sub->add_option("scenario", c.scenario_path, "Scenario JSON file")->required();
        sub->add_flag("--json", c.json, "Emit a machine-readable JSON report");
        sub->add_flag("--force", c.force,
                      "Bypass the scenario's size limits (prints a cost estimate)");
    };

    auto* eval = app.add_subcommand("eval", "Evaluate rho(X), or blockwise rho_t(X) at a level");
    std::string eval_position, eval_filtration;
    std::size_t eval_level = 0;
    std::optional<std::size_t> eval_level_opt;
    add_common(eval, common[0]);
    eval->add_option("--position", eval_position, "Position name")->required();
    auto* eval_f = eval->add_option("--filtration", eval_filtration, "Filtration name");
    auto* eval_l = eval->add_option("--level", eval_level, "Filtration level (0-based)");
    eval_f->needs(eval_l);
    eval_l->needs(eval_f);

    auto* check = app.add_subcommand("check", "Rectangle-vertex consistency check per level");
    std::string check_filtration;
    add_common(check, common[1]);
    check->add_option("--filtration", check_filtration, "Filtration name")->required();

    auto* classify_cmd = app.add_subcommand("classify", "Four-way classification");
    add_common(classify_cmd, common[2]);

    auto* witness_cmd = app.add_subcommand("witness", "Witness for a NotUniversal risk measure");
    add_common(witness_cmd, common[3]);

    auto* extend_cmd = app.add_subcommand("extend", "Dynamic extension table and residuals");
    std::string extend_filtration, extend_position;
    add_common(extend_cmd, common[4]);
    extend_cmd->add_option("--filtration", extend_filtration, "Filtration name")->required();
    extend_cmd->add_option("--position", extend_position, "Position name")->required();

    auto* simplex_cmd = app.add_subcommand("simplex", "Barycentric SVG/CSV export");
    std::string simplex_a, simplex_b, simplex_out, simplex_csv;
    add_common(simplex_cmd, common[5]);
    simplex_cmd->add_option("--a", simplex_a, "Comma-separated outcome labels for A")->required();
    simplex_cmd->add_option("--b", simplex_b, "Comma-separated outcome labels for B")->required();
    simplex_cmd->add_option("--out", simplex_out, "Output SVG path")->required();
    simplex_cmd->add_option("--csv", simplex_csv, "Optional output CSV path");

    auto* entropic_cmd = app.add_subcommand("entropic", "Entropic contrast demo");
    double entropic_gamma = 1.0;
    std::string entropic_position, entropic_filtration;
    add_common(entropic_cmd, common[6]);
    entropic_cmd->add_option("--gamma", entropic_gamma, "Risk-aversion parameter, > 0")
        ->required()
        ->check(CLI::PositiveNumber);
    entropic_cmd->add_option("--position", entropic_position, "Position name")->required();
    entropic_cmd->add_option("--filtration", entropic_filtration, "Filtration name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) {
            if (*eval_l) eval_level_opt = eval_level;
            return run_eval(common[0], eval_position, eval_filtration, eval_level_opt);
        }
        if (check->parsed()) return run_check(common[1], check_filtration);
        if (classify_cmd->parsed()) return run_classify(common[2]);
        if (witness_cmd->parsed()) return run_witness(common[3]);
        if (extend_cmd->parsed())
            return run_extend(common[4], extend_filtration, extend_position);
        if (simplex_cmd->parsed())
            return run_simplex(common[5], simplex_a, simplex_b, simplex_out, simplex_csv);
        if (entropic_cmd->parsed())
            return run_entropic(common[6], entropic_gamma, entropic_position,
                                entropic_filtration);
    } catch (const ScenarioError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const SpaceMismatchError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const IllDefinedPasteError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const PolarBlockError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
