#include "record.hpp"

#ifndef RIPARIAN_VERSION
#define RIPARIAN_VERSION "0.0.0"
#endif

namespace riparian::cli {

std::string tool_version() { return RIPARIAN_VERSION; }

Json to_json(const Counterexample& cx) {
    Json j;
    j["profile"] = cx.profile;
    j["allocation"] = cx.allocation;
    if (!cx.other_profile.empty()) {
        j["other_profile"] = cx.other_profile;
        j["other_allocation"] = cx.other_allocation;
    }
    if (cx.agent) j["agent"] = *cx.agent + 1;
    if (cx.parameter) j["parameter"] = *cx.parameter;
    j["violated"] = cx.violated;
    return j;
}

Json to_json(const AxiomReport& report) {
    Json j;
    j["axiom"] = std::string(to_string(report.axiom));
    j["trials"] = report.trials;
    j["violations"] = report.violations;
    j["passed"] = report.passed();
    j["seed"] = report.seed;
    j["first_counterexample"] =
        report.first_counterexample ? to_json(*report.first_counterexample) : Json(nullptr);
    return j;
}

Json to_json(const FitResult& fit) {
    Json j;
    j["family"] = std::string(to_string(fit.family));
    j["parameter_star"] = fit.parameter_star;
    j["unconstrained"] = fit.unconstrained;
    j["clipped"] = fit.clipped;
    j["degenerate"] = fit.degenerate;
    j["fitted_allocation"] = fit.fitted_allocation.vector();
    j["residual_distance"] = fit.residual_distance;
    return j;
}

Json to_json(const LegitimacyReport& report, const std::vector<std::string>& agents) {
    Json j;
    j["family"] = std::string(to_string(report.family));
    Json rows = Json::array();
    for (std::size_t i = 0; i < report.agents.size(); ++i) {
        const auto& a = report.agents[i];
        Json row;
        row["agent"] = i < agents.size() ? agents[i] : std::to_string(i + 1);
        row["lower"] = a.lower;
        row["upper"] = a.upper;
        row["observed"] = a.observed;
        row["classification"] = std::string(to_string(a.classification));
        rows.push_back(std::move(row));
    }
    j["agents"] = std::move(rows);
    return j;
}

Json to_json(const ToleranceCheck& check) {
    Json j;
    j["name"] = check.name;
    j["expected"] = check.expected;
    j["actual"] = check.actual;
    j["tolerance"] = check.tolerance;
    j["passed"] = check.passed;
    return j;
}

Json run_record(std::string_view command, Json inputs, Json outputs,
                std::optional<std::uint64_t> seed) {
    Json j;
    j["tool"] = "riparian";
    j["version"] = tool_version();
    j["command"] = std::string(command);
    j["inputs"] = std::move(inputs);
    if (seed) j["seed"] = *seed;
    j["outputs"] = std::move(outputs);
    return j;
}

}  // namespace riparian::cli
