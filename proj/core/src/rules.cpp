#include "riparian/rules.hpp"

#include <string>

namespace riparian {

namespace {

std::vector<double> convex_combination(const InflowProfile& e, const Allocation& other,
                                       double weight_on_e) {
    std::vector<double> out(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        out[i] = weight_on_e * e[i] + (1.0 - weight_on_e) * other[i];
    }
    return out;
}

void require_alpha_size(const InflowProfile& e, const AlphaParams& alpha) {
    if (alpha.agents() != e.size()) {
        throw DimensionError("alpha rule with " + std::to_string(alpha.size()) +
                             " parameters needs " + std::to_string(alpha.agents()) +
                             " agents, profile has " + std::to_string(e.size()));
    }
}

}  // namespace

Allocation no_transfer(const InflowProfile& e) {
    return Allocation::checked(e, e.vector());
}

Allocation egalitarian_full_transfer(const InflowProfile& e) {
    const std::size_t n = e.size();
    std::vector<double> x(n, 0.0);
    // Running sum of the per-agent shares released by every upstream agent.
    double received = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = received;
        if (i + 1 < n) received += e[i] / static_cast<double>(n - 1 - i);
    }
    x[n - 1] += e[n - 1];
    return Allocation::checked(e, std::move(x));
}

Allocation shapley(const InflowProfile& e) {
    const std::size_t n = e.size();
    std::vector<double> x(n, 0.0);
    double received = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        received += e[i] / static_cast<double>(n - i);
        x[i] = received;
    }
    return Allocation::checked(e, std::move(x));
}

Allocation egalitarian_partial_transfer(const InflowProfile& e) {
    const std::size_t n = e.size();
    const double parts = static_cast<double>(n - 1);
    std::vector<double> x(n, 0.0);
    double upstream = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // Agent i (0-based) keeps the i parts earmarked for its upstream agents.
        x[i] = (static_cast<double>(i) / parts) * e[i] + upstream / parts;
        upstream += e[i];
    }
    return Allocation::checked(e, std::move(x));
}

Allocation compromise(const InflowProfile& e, double lambda) {
    require_unit_interval(lambda, "lambda");
    return Allocation::checked(e, convex_combination(e, egalitarian_full_transfer(e), lambda));
}

Allocation partial_compromise(const InflowProfile& e, double delta) {
    require_unit_interval(delta, "delta");
    return Allocation::checked(e, convex_combination(e, egalitarian_partial_transfer(e), delta));
}

Allocation alpha_rule(const InflowProfile& e, const AlphaParams& alpha) {
    require_alpha_size(e, alpha);
    const std::size_t n = e.size();
    std::vector<double> x(n, 0.0);
    double received = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        x[i] = alpha[i] * e[i] + received;
        received += (1.0 - alpha[i]) * e[i] / static_cast<double>(n - 1 - i);
    }
    x[n - 1] = e[n - 1] + received;
    return Allocation::checked(e, std::move(x));
}

AlphaParams shapley_alphas(std::size_t n) {
    if (n < 2) throw DimensionError("alpha maps need n >= 2");
    std::vector<double> a(n - 1);
    // 1-based: alpha_k = 1 / (n - k + 1).
    for (std::size_t k = 0; k + 1 < n; ++k) a[k] = 1.0 / static_cast<double>(n - k);
    return AlphaParams(std::move(a));
}

AlphaParams compromise_alphas(std::size_t n, double lambda) {
    if (n < 2) throw DimensionError("alpha maps need n >= 2");
    require_unit_interval(lambda, "lambda");
    return AlphaParams(std::vector<double>(n - 1, lambda));
}

AlphaParams partial_compromise_alphas(std::size_t n, double delta) {
    if (n < 2) throw DimensionError("alpha maps need n >= 2");
    require_unit_interval(delta, "delta");
    std::vector<double> a(n - 1);
    // 1-based: alpha_1 = delta, alpha_i = 1 - (1 - delta)(n - i)/(n - 1). The
    // general expression already gives delta at i = 1.
    const double parts = static_cast<double>(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        a[k] = 1.0 - (1.0 - delta) * static_cast<double>(n - 1 - k) / parts;
    }
    a[0] = delta;
    return AlphaParams(std::move(a));
}

RuleSpec RuleSpec::compromise(double lambda) {
    require_unit_interval(lambda, "lambda");
    return RuleSpec(rule::Compromise{lambda});
}

RuleSpec RuleSpec::partial_compromise(double delta) {
    require_unit_interval(delta, "delta");
    return RuleSpec(rule::PartialCompromise{delta});
}

std::optional<std::size_t> RuleSpec::fixed_size() const {
    if (const auto* a = std::get_if<rule::Alpha>(&rule_)) return a->alpha.agents();
    return std::nullopt;
}

Allocation RuleSpec::apply(const InflowProfile& e) const {
    struct Visitor {
        const InflowProfile& e;
        Allocation operator()(const rule::NoTransfer&) const { return riparian::no_transfer(e); }
        Allocation operator()(const rule::EgalitarianFullTransfer&) const {
            return riparian::egalitarian_full_transfer(e);
        }
        Allocation operator()(const rule::EgalitarianPartialTransfer&) const {
            return riparian::egalitarian_partial_transfer(e);
        }
        Allocation operator()(const rule::Shapley&) const { return riparian::shapley(e); }
        Allocation operator()(const rule::Compromise& r) const {
            return riparian::compromise(e, r.lambda);
        }
        Allocation operator()(const rule::PartialCompromise& r) const {
            return riparian::partial_compromise(e, r.delta);
        }
        Allocation operator()(const rule::Alpha& r) const {
            return riparian::alpha_rule(e, r.alpha);
        }
    };
    return std::visit(Visitor{e}, rule_);
}

}  // namespace riparian
