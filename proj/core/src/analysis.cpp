#include "riparian/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>

#include "riparian/rules.hpp"

namespace riparian {

namespace {

void require_same_length(const InflowProfile& e, const ObservedAllocation& z) {
    if (e.size() != z.size()) {
        throw DimensionError("observed allocation has " + std::to_string(z.size()) +
                             " entries but the profile has " + std::to_string(e.size()));
    }
}

// Residual of the family member at t: B + t (A - B) - z.
struct AffinePath {
    std::vector<double> base;       // B - z
    std::vector<double> direction;  // A - B

    AffinePath(const InflowProfile& e, const ObservedAllocation& z, Family family) {
        require_same_length(e, z);
        const auto [a, b] = family_endpoints(e, family);
        base.resize(e.size());
        direction.resize(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            base[i] = b[i] - z[i];
            direction[i] = a[i] - b[i];
        }
    }

    double norm_at(double t) const {
        double s = 0.0;
        for (std::size_t i = 0; i < base.size(); ++i) {
            const double r = base[i] + t * direction[i];
            s += r * r;
        }
        return std::sqrt(s);
    }
};

}  // namespace

std::string_view to_string(Family family) {
    switch (family) {
        case Family::Compromise: return "compromise";
        case Family::PartialCompromise: return "partial";
    }
    return "?";
}

std::string_view to_string(Legitimacy legitimacy) {
    switch (legitimacy) {
        case Legitimacy::Legitimate: return "legitimate";
        case Legitimacy::BelowLower: return "below-lower";
        case Legitimacy::AboveUpper: return "above-upper";
    }
    return "?";
}

std::pair<Allocation, Allocation> family_endpoints(const InflowProfile& e, Family family) {
    switch (family) {
        case Family::Compromise: return {no_transfer(e), egalitarian_full_transfer(e)};
        case Family::PartialCompromise: return {no_transfer(e), egalitarian_partial_transfer(e)};
    }
    throw std::logic_error("unknown family");
}

Allocation family_member(const InflowProfile& e, Family family, double parameter) {
    return family == Family::Compromise ? compromise(e, parameter)
                                        : partial_compromise(e, parameter);
}

FitResult fit_family(const InflowProfile& e, const ObservedAllocation& z, Family family) {
    const AffinePath path(e, z, family);
    const double dd = std::inner_product(path.direction.begin(), path.direction.end(),
                                         path.direction.begin(), 0.0);
    // -<B - z, A - B> = <z - B, A - B>
    const double zd = -std::inner_product(path.base.begin(), path.base.end(),
                                          path.direction.begin(), 0.0);

    const Tolerance tol;
    const double eps = tol.at(e.total());
    const bool degenerate = std::sqrt(dd) <= eps;
    const double unconstrained = degenerate ? 0.0 : zd / dd;
    const double star = std::clamp(unconstrained, 0.0, 1.0);
    return FitResult{
        .family = family,
        .parameter_star = star,
        .unconstrained = unconstrained,
        .fitted_allocation = family_member(e, family, star),
        .residual_distance = path.norm_at(star),
        .clipped = !degenerate && star != unconstrained,
        .degenerate = degenerate,
    };
}

double distance_at(const InflowProfile& e, const ObservedAllocation& z, Family family,
                   double parameter) {
    require_unit_interval(parameter, "family parameter");
    return AffinePath(e, z, family).norm_at(parameter);
}

double integrate_distance(const InflowProfile& e, const ObservedAllocation& z, Family family,
                          QuadratureRule rule) {
    const AffinePath path(e, z, family);
    auto f = [&path](double t) { return path.norm_at(t); };
    using boost::math::quadrature::gauss;
    switch (rule) {
        case QuadratureRule::GaussLegendre64: return gauss<double, 64>::integrate(f, 0.0, 1.0);
        case QuadratureRule::GaussLegendre128: return gauss<double, 128>::integrate(f, 0.0, 1.0);
    }
    throw std::logic_error("unknown quadrature rule");
}

LegitimacyReport legitimacy_bounds(const InflowProfile& e, const ObservedAllocation& z,
                                   Family family, const Tolerance& tol) {
    require_same_length(e, z);
    const auto [a, b] = family_endpoints(e, family);
    const double eps = tol.at(e.total());
    LegitimacyReport report{family, {}};
    report.agents.reserve(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        AgentLegitimacy agent;
        agent.lower = std::min(a[i], b[i]);
        agent.upper = std::max(a[i], b[i]);
        agent.observed = z[i];
        if (z[i] < agent.lower - eps) {
            agent.classification = Legitimacy::BelowLower;
        } else if (z[i] > agent.upper + eps) {
            agent.classification = Legitimacy::AboveUpper;
        }
        report.agents.push_back(agent);
    }
    return report;
}

std::vector<double> shares_of_total(std::span<const double> amounts) {
    const double total = std::accumulate(amounts.begin(), amounts.end(), 0.0);
    if (!(total > 0.0)) throw DomainError("shares need a positive total");
    std::vector<double> out(amounts.begin(), amounts.end());
    for (auto& v : out) v /= total;
    return out;
}

std::vector<std::pair<double, double>> distance_series(const InflowProfile& e,
                                                       const ObservedAllocation& z, Family family,
                                                       std::size_t steps) {
    if (steps == 0) throw DomainError("distance series needs at least one step");
    const AffinePath path(e, z, family);
    std::vector<std::pair<double, double>> out;
    out.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(steps);
        out.emplace_back(t, path.norm_at(t));
    }
    return out;
}

}  // namespace riparian
