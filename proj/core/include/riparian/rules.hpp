#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "riparian/types.hpp"

namespace riparian {

// Allocation rules for the linear river. Every rule returns an Allocation, so
// non-wastefulness and feasibility are checked on every evaluation.

/// Each agent keeps its own inflow (absolute territorial sovereignty).
[[nodiscard]] Allocation no_transfer(const InflowProfile& e);

/// Each non-terminal inflow is split equally among the strictly downstream
/// agents; the last agent also keeps its own inflow. Agent 1 gets nothing.
[[nodiscard]] Allocation egalitarian_full_transfer(const InflowProfile& e);

/// Each inflow is split equally among its own agent and everyone downstream.
[[nodiscard]] Allocation shapley(const InflowProfile& e);

/// Each inflow is cut into n-1 equal parts; one part goes to every downstream
/// agent and the agent keeps the parts that correspond to upstream agents.
[[nodiscard]] Allocation egalitarian_partial_transfer(const InflowProfile& e);

/// lambda * no_transfer + (1 - lambda) * egalitarian_full_transfer.
[[nodiscard]] Allocation compromise(const InflowProfile& e, double lambda);

/// delta * no_transfer + (1 - delta) * egalitarian_partial_transfer.
[[nodiscard]] Allocation partial_compromise(const InflowProfile& e, double delta);

/// Agent k keeps alpha_k of its inflow and splits the remainder equally among
/// the downstream agents; the last agent keeps everything. Closed form:
///   x_i = alpha_i e_i + sum_{k<i} (1 - alpha_k) e_k / (n - k)   (1-based).
[[nodiscard]] Allocation alpha_rule(const InflowProfile& e, const AlphaParams& alpha);

// Parameter maps embedding the named rules into the alpha family.
[[nodiscard]] AlphaParams shapley_alphas(std::size_t n);
[[nodiscard]] AlphaParams compromise_alphas(std::size_t n, double lambda);
[[nodiscard]] AlphaParams partial_compromise_alphas(std::size_t n, double delta);

namespace rule {

struct NoTransfer {};
struct EgalitarianFullTransfer {};
struct EgalitarianPartialTransfer {};
struct Shapley {};
struct Compromise {
    double lambda;
};
struct PartialCompromise {
    double delta;
};
struct Alpha {
    AlphaParams alpha;
};

}  // namespace rule

/// A rule together with its parameter, if any.
class RuleSpec {
public:
    using Variant = std::variant<rule::NoTransfer, rule::EgalitarianFullTransfer,
                                 rule::EgalitarianPartialTransfer, rule::Shapley,
                                 rule::Compromise, rule::PartialCompromise, rule::Alpha>;

    static RuleSpec no_transfer() { return RuleSpec(rule::NoTransfer{}); }
    static RuleSpec egalitarian_full_transfer() { return RuleSpec(rule::EgalitarianFullTransfer{}); }
    static RuleSpec egalitarian_partial_transfer() {
        return RuleSpec(rule::EgalitarianPartialTransfer{});
    }
    static RuleSpec shapley() { return RuleSpec(rule::Shapley{}); }
    static RuleSpec compromise(double lambda);
    static RuleSpec partial_compromise(double delta);
    static RuleSpec alpha(AlphaParams alpha) { return RuleSpec(rule::Alpha{std::move(alpha)}); }

    [[nodiscard]] const Variant& variant() const noexcept { return rule_; }

    /// Number of agents the rule is restricted to, if any (alpha rules only).
    [[nodiscard]] std::optional<std::size_t> fixed_size() const;

    /// Canonical textual form, parseable by parse_rule_spec.
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] Allocation apply(const InflowProfile& e) const;

private:
    explicit RuleSpec(Variant v) : rule_(std::move(v)) {}
    Variant rule_;
};

class RuleParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses `nt | eft | ept | shapley | compromise:<l> | partial:<d> |
/// alpha:<a1,...,a_{n-1}>`. Throws RuleParseError naming the offending token,
/// or DomainError when a parameter lies outside [0, 1].
[[nodiscard]] RuleSpec parse_rule_spec(std::string_view text);

}  // namespace riparian
