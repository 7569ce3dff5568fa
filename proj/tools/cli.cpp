#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "record.hpp"

namespace riparian::cli {

namespace {

struct Options {
    bool json = false;
    double tolerance = Tolerance{}.relative;

    std::string inflows;
    std::string withdrawals;
    std::string dataset;
    std::string rule;

    std::string axioms = "all";
    std::size_t trials = 1000;
    std::uint64_t seed = 42;
    std::size_t min_agents = 2;
    std::size_t max_agents = 10;
    bool strict_impartiality = false;

    std::string family = "compromise";
    std::string series;
    std::size_t steps = 100;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) {
            ++used;
        }
        if (token.empty() || used != token.size()) {
            throw InputError(std::string("invalid ") + what + " value '" + token + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) throw InputError(std::string("no ") + what + " given");
    return out;
}

BasinDataset resolve_dataset(const Options& opt) {
    if (!opt.dataset.empty() && !opt.inflows.empty()) {
        throw InputError("give either --dataset or --inflows, not both");
    }
    if (opt.dataset == "nile") return builtin_nile();
    if (!opt.dataset.empty()) return load_dataset_file(opt.dataset);
    if (opt.inflows.empty()) throw InputError("no input: pass --inflows or --dataset");

    auto e = parse_list(opt.inflows, "inflow");
    std::vector<std::string> agents;
    for (std::size_t i = 0; i < e.size(); ++i) agents.push_back(std::to_string(i + 1));
    BasinDataset ds{"inline", "km³/year", std::move(agents), InflowProfile(std::move(e)),
                    std::nullopt, std::nullopt};
    if (!opt.withdrawals.empty()) {
        auto raw = parse_list(opt.withdrawals, "withdrawal");
        ds.withdrawals = normalize_withdrawals(ds.inflows, raw);
        ds.raw_withdrawals = std::move(raw);
    }
    return ds;
}

Json dataset_inputs(const Options& opt, const BasinDataset& ds) {
    Json j;
    j["dataset"] = opt.dataset.empty() ? Json(nullptr) : Json(opt.dataset);
    j["agents"] = ds.agents;
    j["inflows"] = ds.inflows.vector();
    if (ds.raw_withdrawals) j["raw_withdrawals"] = *ds.raw_withdrawals;
    j["tolerance"] = opt.tolerance;
    return j;
}

Family parse_family(const std::string& name) {
    if (name == "compromise") return Family::Compromise;
    if (name == "partial") return Family::PartialCompromise;
    throw InputError("unknown family '" + name + "' (expected compromise or partial)");
}

std::vector<AxiomId> parse_axiom_list(const std::string& text) {
    if (text == "all") return {kAllAxioms.begin(), kAllAxioms.end()};
    std::vector<AxiomId> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        auto id = parse_axiom(token);
        if (!id) {
            std::string known;
            for (auto a : kAllAxioms) known += (known.empty() ? "" : ", ") + std::string(to_string(a));
            throw InputError("unknown axiom '" + token + "' (known: " + known + ", or all)");
        }
        out.push_back(*id);
    }
    if (out.empty()) throw InputError("empty axiom list");
    return out;
}

std::string fixed4(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << v;
    return os.str();
}

std::size_t name_width(const std::vector<std::string>& agents) {
    std::size_t w = 5;
    for (const auto& a : agents) w = std::max(w, a.size());
    return w + 2;
}

void print_table(std::ostream& out, const std::vector<std::string>& agents,
                 const std::vector<TableColumn>& columns) {
    const std::size_t w = name_width(agents);
    out << std::left << std::setw(static_cast<int>(w)) << "agent" << std::right;
    for (const auto& c : columns) out << std::setw(16) << c.label;
    out << '\n';
    for (std::size_t i = 0; i < agents.size(); ++i) {
        out << std::left << std::setw(static_cast<int>(w)) << agents[i] << std::right;
        for (const auto& c : columns) out << std::setw(16) << fixed4(c.values[i]);
        out << '\n';
    }
}

void print_legitimacy(std::ostream& out, const std::vector<std::string>& agents,
                      const LegitimacyReport& report) {
    const std::size_t w = name_width(agents);
    out << "legitimacy (" << to_string(report.family) << " family bounds)\n";
    out << std::left << std::setw(static_cast<int>(w)) << "agent" << std::right << std::setw(12)
        << "lower" << std::setw(12) << "upper" << std::setw(12) << "observed"
        << "  classification\n";
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const auto& a = report.agents[i];
        out << std::left << std::setw(static_cast<int>(w)) << agents[i] << std::right
            << std::setw(12) << fixed4(a.lower) << std::setw(12) << fixed4(a.upper)
            << std::setw(12) << fixed4(a.observed) << "  " << to_string(a.classification)
            << '\n';
    }
}

void print_vector(std::ostream& out, std::span<const double> v) {
    out << '(';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << fixed4(v[i]);
    out << ')';
}

int cmd_allocate(const Options& opt, std::ostream& out) {
    if (opt.rule.empty()) throw InputError("--rule is required");
    const auto ds = resolve_dataset(opt);
    const auto rule = parse_rule_spec(opt.rule);
    const auto x = rule.apply(ds.inflows);
    const Tolerance tol{opt.tolerance};
    const auto check = validate_allocation(ds.inflows, x.values(), tol);

    if (opt.json) {
        Json inputs = dataset_inputs(opt, ds);
        inputs["rule"] = rule.to_string();
        Json outputs;
        outputs["allocation"] = x.vector();
        outputs["valid"] = check.ok;
        out << run_record("allocate", std::move(inputs), std::move(outputs)).dump(2) << '\n';
        return kSuccess;
    }
    out << "rule: " << rule.to_string() << '\n';
    print_table(out, ds.agents,
                {{"inflow", ds.inflows.vector()}, {"allocation", x.vector()}});
    out << "valid allocation: " << (check.ok ? "yes" : "no (" + check.diagnostic + ")") << '\n';
    return kSuccess;
}

int cmd_axioms(const Options& opt, std::ostream& out) {
    if (opt.rule.empty()) throw InputError("--rule is required");
    if (opt.trials == 0) throw InputError("--trials must be at least 1");
    const auto rule = parse_rule_spec(opt.rule);
    const auto axioms = parse_axiom_list(opt.axioms);
    SuiteOptions suite;
    suite.min_agents = opt.min_agents;
    suite.max_agents = opt.max_agents;
    suite.tolerance.relative = opt.tolerance;
    suite.impartiality = opt.strict_impartiality ? ImpartialityMode::AllDownstream
                                                 : ImpartialityMode::EqualInflowTail;
    const auto reports = run_axiom_suite(rule, axioms, opt.trials, opt.seed, suite);
    const bool all_passed =
        std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });

    if (opt.json) {
        Json inputs;
        inputs["rule"] = rule.to_string();
        Json names = Json::array();
        for (auto a : axioms) names.push_back(std::string(to_string(a)));
        inputs["axioms"] = std::move(names);
        inputs["trials"] = opt.trials;
        inputs["min_agents"] = opt.min_agents;
        inputs["max_agents"] = opt.max_agents;
        inputs["strict_impartiality"] = opt.strict_impartiality;
        inputs["tolerance"] = opt.tolerance;
        Json outputs;
        outputs["reports"] = Json::array();
        for (const auto& r : reports) outputs["reports"].push_back(to_json(r));
        outputs["passed"] = all_passed;
        out << run_record("axioms", std::move(inputs), std::move(outputs), opt.seed).dump(2)
            << '\n';
    } else {
        out << "rule: " << rule.to_string() << "  seed: " << opt.seed << '\n';
        for (const auto& r : reports) {
            out << std::left << std::setw(34) << to_string(r.axiom) << std::right
                << (r.passed() ? "PASS" : "FAIL") << "  " << r.violations << '/' << r.trials
                << " violations\n";
            if (r.first_counterexample) {
                const auto& cx = *r.first_counterexample;
                out << "    e  = ";
                print_vector(out, cx.profile);
                out << "\n    R  = ";
                print_vector(out, cx.allocation);
                if (!cx.other_profile.empty()) {
                    out << "\n    e' = ";
                    print_vector(out, cx.other_profile);
                    out << "\n    R' = ";
                    print_vector(out, cx.other_allocation);
                }
                out << "\n    " << cx.violated << '\n';
            }
        }
    }
    return all_passed ? kSuccess : kCheckFailed;
}

int cmd_fit(const Options& opt, std::ostream& out) {
    const auto ds = resolve_dataset(opt);
    if (!ds.withdrawals) throw InputError("fit needs observed withdrawals in the dataset");
    const auto family = parse_family(opt.family);
    const auto& e = ds.inflows;
    const auto& z = *ds.withdrawals;
    const auto fit = fit_family(e, z, family);
    const auto legit = legitimacy_bounds(e, z, family, Tolerance{opt.tolerance});
    const double integral = integrate_distance(e, z, family);

    if (!opt.series.empty()) {
        if (opt.steps == 0) throw InputError("--steps must be at least 1");
        std::ofstream csv(opt.series);
        if (!csv) throw InputError("cannot write series file '" + opt.series + "'");
        csv << "parameter,distance\n" << std::setprecision(17);
        for (const auto& [t, d] : distance_series(e, z, family, opt.steps)) {
            csv << t << ',' << d << '\n';
        }
    }

    if (opt.json) {
        Json inputs = dataset_inputs(opt, ds);
        inputs["family"] = std::string(to_string(family));
        Json outputs;
        outputs["observed"] = std::vector<double>(z.values().begin(), z.values().end());
        outputs["fit"] = to_json(fit);
        outputs["legitimacy"] = to_json(legit, ds.agents);
        outputs["distance_integral"] = integral;
        out << run_record("fit", std::move(inputs), std::move(outputs)).dump(2) << '\n';
        return kSuccess;
    }
    const char* symbol = family == Family::Compromise ? "lambda" : "delta";
    out << "family: " << to_string(family) << '\n';
    out << symbol << "* = " << fixed4(fit.parameter_star);
    if (fit.clipped) out << " (clipped; unconstrained minimizer " << fixed4(fit.unconstrained) << ')';
    if (fit.degenerate) out << " (degenerate family: endpoints coincide)";
    out << '\n';
    print_table(out, ds.agents,
                {{"inflow", e.vector()},
                 {"observed", {z.values().begin(), z.values().end()}},
                 {"fitted", fit.fitted_allocation.vector()}});
    out << "residual distance: " << fixed4(fit.residual_distance) << '\n';
    out << "integral of distance over [0,1]: " << fixed4(integral) << '\n';
    print_legitimacy(out, ds.agents, legit);
    return kSuccess;
}

int cmd_case_study(const Options& opt, std::ostream& out) {
    const auto cs = run_nile_case_study();
    const auto& agents = cs.dataset.agents;

    if (opt.json) {
        Json outputs;
        Json table;
        for (const auto& c : cs.table) table[c.label] = c.values;
        outputs["table"] = std::move(table);
        outputs["compromise_fit"] = to_json(cs.compromise_fit);
        outputs["partial_fit"] = to_json(cs.partial_fit);
        outputs["compromise_integral"] = cs.compromise_integral;
        outputs["partial_integral"] = cs.partial_integral;
        outputs["compromise_legitimacy"] = to_json(cs.compromise_legitimacy, agents);
        outputs["partial_legitimacy"] = to_json(cs.partial_legitimacy, agents);
        Json shares;
        for (const auto& c : cs.shares) shares[c.label] = c.values;
        outputs["shares"] = std::move(shares);
        outputs["checks"] = Json::array();
        for (const auto& c : cs.checks) outputs["checks"].push_back(to_json(c));
        outputs["passed"] = cs.passed();
        Json inputs;
        inputs["dataset"] = "nile";
        inputs["agents"] = agents;
        inputs["inflows"] = cs.dataset.inflows.vector();
        inputs["raw_withdrawals"] = *cs.dataset.raw_withdrawals;
        out << run_record("case-study", std::move(inputs), std::move(outputs)).dump(2) << '\n';
    } else {
        out << "Nile river: inflows, observed withdrawals and rule allocations ("
            << cs.dataset.units << ")\n";
        print_table(out, agents, cs.table);
        out << "\nlambda* = " << fixed4(cs.compromise_fit.parameter_star) << ", R^lambda*(e) = ";
        print_vector(out, cs.compromise_fit.fitted_allocation.values());
        out << "\ndelta*  = " << fixed4(cs.partial_fit.parameter_star)
            << (cs.partial_fit.clipped ? " (clipped)" : "") << '\n';
        out << "integral of compromise distance: " << fixed4(cs.compromise_integral) << '\n';
        out << "integral of partial distance:    " << fixed4(cs.partial_integral) << "\n\n";
        print_legitimacy(out, agents, cs.compromise_legitimacy);
        out << '\n';
        print_legitimacy(out, agents, cs.partial_legitimacy);
        out << "\nshares of the total\n";
        print_table(out, agents, cs.shares);
        std::size_t failed = 0;
        for (const auto& c : cs.checks) {
            if (!c.passed) {
                ++failed;
                out << "MISMATCH " << c.name << ": expected " << c.expected << " got "
                    << c.actual << " (tolerance " << c.tolerance << ")\n";
            }
        }
        out << "\nchecks: " << cs.checks.size() - failed << '/' << cs.checks.size()
            << " within published tolerance\n";
    }
    return cs.passed() ? kSuccess : kCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fair allocation of riparian water rights along a linear river"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", opt.json, "Emit the machine-readable run record");
        sub->add_option("--tolerance", opt.tolerance, "Relative comparison tolerance")
            ->check(CLI::PositiveNumber);
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--inflows", opt.inflows, "Comma-separated inflows, upstream first");
        sub->add_option("--withdrawals", opt.withdrawals,
                        "Comma-separated observed withdrawals (normalized to the total inflow)");
        sub->add_option("--dataset", opt.dataset, "CSV/JSON dataset path, or 'nile'");
    };

    auto* allocate = app.add_subcommand("allocate", "Allocate the inflows under one rule");
    add_common(allocate);
    add_input(allocate);
    allocate->add_option("--rule", opt.rule,
                         "nt | eft | ept | shapley | compromise:<l> | partial:<d> | alpha:<a,...>");

    auto* axioms = app.add_subcommand("axioms", "Property-test a rule against the axioms");
    add_common(axioms);
    axioms->add_option("--rule", opt.rule, "Rule spec");
    axioms->add_option("--axioms", opt.axioms, "Comma-separated axiom names, or 'all'");
    axioms->add_option("--trials", opt.trials, "Random instances per axiom");
    axioms->add_option("--seed", opt.seed, "Random seed");
    axioms->add_option("--min-agents", opt.min_agents, "Smallest river size")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
    axioms->add_option("--max-agents", opt.max_agents, "Largest river size")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
    axioms->add_flag("--strict-impartiality", opt.strict_impartiality,
                     "Require equal gains for all downstream agents, not only equal-inflow ones");

    auto* fit = app.add_subcommand("fit", "Fit a rule family to observed withdrawals");
    add_common(fit);
    add_input(fit);
    fit->add_option("--family", opt.family, "compromise | partial");
    fit->add_option("--series", opt.series, "Write the distance curve as CSV to this file");
    fit->add_option("--steps", opt.steps, "Number of intervals in the distance series");

    auto* case_study = app.add_subcommand("case-study", "Reproduce the Nile analysis");
    add_common(case_study);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        if (*allocate) return cmd_allocate(opt, out);
        if (*axioms) return cmd_axioms(opt, out);
        if (*fit) return cmd_fit(opt, out);
        if (*case_study) return cmd_case_study(opt, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {  // dimension, rule-parse and input errors
        err << "error: " << e.what() << '\n';
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::runtime_error& e) {  // dataset and option errors
        err << "error: " << e.what() << '\n';
    }
    return kInputError;
}

}  // namespace riparian::cli
