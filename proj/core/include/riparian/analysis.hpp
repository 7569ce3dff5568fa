#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "riparian/types.hpp"

namespace riparian {

/// One-parameter families anchored at no-transfer (parameter 1). Compromise
/// runs to the egalitarian full-transfer rule, PartialCompromise to the
/// egalitarian partial-transfer rule (parameter 0).
enum class Family { Compromise, PartialCompromise };

[[nodiscard]] std::string_view to_string(Family family);

/// The (parameter 1, parameter 0) endpoints of the family for `e`.
[[nodiscard]] std::pair<Allocation, Allocation> family_endpoints(const InflowProfile& e,
                                                                 Family family);

[[nodiscard]] Allocation family_member(const InflowProfile& e, Family family, double parameter);

struct FitResult {
    Family family{};
    double parameter_star = 0.0;   // clipped to [0, 1]
    double unconstrained = 0.0;    // least-squares minimizer before clipping
    Allocation fitted_allocation;
    double residual_distance = 0.0;
    bool clipped = false;
    // The two endpoints coincide, so every parameter gives the same allocation.
    bool degenerate = false;
};

/// Closed-form least squares over the family: the member is affine in the
/// parameter, so the minimizer of ||R(t) - z|| is <z - B, A - B> / ||A - B||^2
/// clipped to [0, 1]. A degenerate family reports parameter 0.
[[nodiscard]] FitResult fit_family(const InflowProfile& e, const ObservedAllocation& z,
                                   Family family);

/// Euclidean distance between the family member at `parameter` and z.
[[nodiscard]] double distance_at(const InflowProfile& e, const ObservedAllocation& z,
                                 Family family, double parameter);

enum class QuadratureRule { GaussLegendre64, GaussLegendre128 };

/// Integral of distance_at over the parameter range [0, 1].
[[nodiscard]] double integrate_distance(const InflowProfile& e, const ObservedAllocation& z,
                                        Family family,
                                        QuadratureRule rule = QuadratureRule::GaussLegendre64);

enum class Legitimacy { Legitimate, BelowLower, AboveUpper };

[[nodiscard]] std::string_view to_string(Legitimacy legitimacy);

struct AgentLegitimacy {
    double lower = 0.0;
    double upper = 0.0;
    double observed = 0.0;
    Legitimacy classification = Legitimacy::Legitimate;
};

struct LegitimacyReport {
    Family family{};
    std::vector<AgentLegitimacy> agents;
};

/// Classifies each observed amount against the interval spanned by the
/// family's two endpoint rules, widened by the comparison tolerance.
[[nodiscard]] LegitimacyReport legitimacy_bounds(const InflowProfile& e,
                                                 const ObservedAllocation& z, Family family,
                                                 const Tolerance& tol = {});

/// Each component divided by the total. Throws DomainError on a zero total.
[[nodiscard]] std::vector<double> shares_of_total(std::span<const double> amounts);

/// Evenly spaced samples (parameter, distance) over [0, 1], `steps` + 1 points.
[[nodiscard]] std::vector<std::pair<double, double>> distance_series(
    const InflowProfile& e, const ObservedAllocation& z, Family family, std::size_t steps);

}  // namespace riparian
