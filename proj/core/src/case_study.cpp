#include "riparian/case_study.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "riparian/rules.hpp"

namespace riparian {

namespace {

// Published figures, two decimals unless stated.
constexpr std::array<std::array<double, 5>, 8> kPublishedTable = {{
    {16.8, 16.2, 17.6, 65.3, 0.0},        // e
    {5.4, 0.7, 0.7, 28.1, 81.0},          // z
    {0.0, 4.2, 9.6, 18.4, 83.7},          // EFT
    {8.40, 10.20, 13.60, 41.85, 41.85},   // compromise 1/2
    {16.8, 16.2, 17.6, 65.3, 0.0},        // NT
    {8.40, 12.22, 17.33, 63.46, 14.49},   // partial 1/2
    {0.0, 8.25, 17.05, 61.62, 28.98},     // EPT
    {3.36, 7.41, 13.28, 45.93, 45.93},    // Shapley
}};
constexpr std::array<const char*, 8> kColumnLabels = {
    "e", "z", "EFT", "compromise(1/2)", "NT", "partial(1/2)", "EPT", "Shapley"};

constexpr double kTableTolerance = 0.01;
constexpr double kLambdaStar = 0.068;
constexpr double kLambdaTolerance = 0.001;
constexpr std::array<double, 5> kFittedCompromise = {1.1, 5.0, 10.2, 21.6, 78.0};
constexpr double kFittedTolerance = 0.1;
constexpr double kCompromiseIntegral = 46.52;
constexpr double kPartialIntegral = 78.27;
constexpr double kIntegralTolerance = 0.01;
constexpr double kTanzaniaInflowShare = 0.145;
constexpr double kEgyptWithdrawalShare = 0.70;
constexpr double kShareTolerance = 0.005;

using L = Legitimacy;
constexpr std::array<Legitimacy, 5> kCompromiseLegitimacy = {
    L::Legitimate, L::BelowLower, L::BelowLower, L::Legitimate, L::Legitimate};
constexpr std::array<Legitimacy, 5> kPartialLegitimacy = {
    L::Legitimate, L::BelowLower, L::BelowLower, L::BelowLower, L::AboveUpper};

ToleranceCheck compare(std::string name, double expected, double actual, double tolerance) {
    return {std::move(name), expected, actual, tolerance,
            std::abs(actual - expected) <= tolerance + 1e-12};
}

}  // namespace

bool CaseStudy::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

CaseStudy run_nile_case_study() {
    auto ds = builtin_nile();
    const auto& e = ds.inflows;
    const auto& z = *ds.withdrawals;

    std::vector<TableColumn> table;
    auto add = [&](std::span<const double> v) {
        table.push_back({kColumnLabels[table.size()], {v.begin(), v.end()}});
    };
    add(e.values());
    add(z.values());
    add(egalitarian_full_transfer(e).values());
    add(compromise(e, 0.5).values());
    add(no_transfer(e).values());
    add(partial_compromise(e, 0.5).values());
    add(egalitarian_partial_transfer(e).values());
    add(shapley(e).values());

    std::vector<TableColumn> shares;
    for (const auto& col : table) shares.push_back({col.label, shares_of_total(col.values)});

    auto compromise_fit = fit_family(e, z, Family::Compromise);
    auto partial_fit = fit_family(e, z, Family::PartialCompromise);
    const double compromise_integral = integrate_distance(e, z, Family::Compromise);
    const double partial_integral = integrate_distance(e, z, Family::PartialCompromise);
    auto compromise_legitimacy = legitimacy_bounds(e, z, Family::Compromise);
    auto partial_legitimacy = legitimacy_bounds(e, z, Family::PartialCompromise);

    CaseStudy cs{
        std::move(ds),
        std::move(table),
        std::move(compromise_fit),
        std::move(partial_fit),
        compromise_integral,
        partial_integral,
        std::move(compromise_legitimacy),
        std::move(partial_legitimacy),
        std::move(shares),
        {},
    };

    const auto& agents = cs.dataset.agents;
    for (std::size_t c = 0; c < cs.table.size(); ++c) {
        for (std::size_t i = 0; i < agents.size(); ++i) {
            cs.checks.push_back(compare("table " + cs.table[c].label + " " + agents[i],
                                        kPublishedTable[c][i], cs.table[c].values[i],
                                        kTableTolerance));
        }
    }
    cs.checks.push_back(compare("lambda*", kLambdaStar, cs.compromise_fit.parameter_star,
                                kLambdaTolerance));
    for (std::size_t i = 0; i < agents.size(); ++i) {
        cs.checks.push_back(compare("R^lambda* " + agents[i], kFittedCompromise[i],
                                    cs.compromise_fit.fitted_allocation[i], kFittedTolerance));
    }
    cs.checks.push_back(compare("delta*", 0.0, cs.partial_fit.parameter_star, 0.0));
    cs.checks.push_back(compare("delta* clipped", 1.0, cs.partial_fit.clipped ? 1.0 : 0.0, 0.0));
    cs.checks.push_back(compare("integral compromise", kCompromiseIntegral,
                                cs.compromise_integral, kIntegralTolerance));
    cs.checks.push_back(compare("integral partial", kPartialIntegral, cs.partial_integral,
                                kIntegralTolerance));
    for (std::size_t i = 0; i < agents.size(); ++i) {
        cs.checks.push_back(compare(
            "legitimacy compromise " + agents[i], static_cast<double>(kCompromiseLegitimacy[i]),
            static_cast<double>(cs.compromise_legitimacy.agents[i].classification), 0.0));
        cs.checks.push_back(compare(
            "legitimacy partial " + agents[i], static_cast<double>(kPartialLegitimacy[i]),
            static_cast<double>(cs.partial_legitimacy.agents[i].classification), 0.0));
    }
    cs.checks.push_back(compare("share of inflow Tanzania", kTanzaniaInflowShare,
                                cs.shares[0].values[0], kShareTolerance));
    cs.checks.push_back(compare("share of withdrawals Egypt", kEgyptWithdrawalShare,
                                cs.shares[1].values[4], kShareTolerance));
    return cs;
}

}  // namespace riparian
