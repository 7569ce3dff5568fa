#include "riparian/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace riparian {

namespace {

constexpr std::array<std::string_view, 9> kAxiomNames = {
    "scale-invariance",
    "upstream-invariance",
    "downstream-impartiality",
    "order-preservation",
    "progressivity",
    "regressivity",
    "balance",
    "equal-treatment-source",
    "equal-treatment-upstream-total",
};

CheckResult holds() { return {}; }

CheckResult violated(std::string detail) { return {Verdict::Violated, std::move(detail)}; }

CheckResult not_met(std::string detail) { return {Verdict::HypothesisNotMet, std::move(detail)}; }

std::ostringstream number_stream() {
    std::ostringstream os;
    os.precision(12);
    return os;
}

void require_agent(const InflowProfile& e, std::size_t i) {
    if (i >= e.size()) {
        throw std::out_of_range("agent " + std::to_string(i + 1) + " out of range for " +
                                std::to_string(e.size()) + " agents");
    }
}

InflowProfile bumped(const InflowProfile& e, std::size_t i, double delta) {
    std::vector<double> v = e.vector();
    v[i] += delta;
    return InflowProfile(std::move(v));
}

double upstream_total(const InflowProfile& e, std::size_t i) {
    double s = 0.0;
    for (std::size_t j = 0; j < i; ++j) s += e[j];
    return s;
}

// ---------------------------------------------------------------------------
// Instances and generators

struct Instance {
    std::vector<double> profile;
    std::vector<double> other;  // empty unless the axiom compares two profiles
    std::size_t agent = 0;
    double parameter = 0.0;
};

std::vector<double> unit(std::size_t n, std::size_t k, double magnitude = 1.0) {
    std::vector<double> v(n, 0.0);
    v[k] = magnitude;
    return v;
}

// Unit vectors, all-ones and a strictly decreasing profile.
std::vector<std::vector<double>> adversarial_profiles(std::size_t n) {
    std::vector<std::vector<double>> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(unit(n, k));
    out.emplace_back(n, 1.0);
    std::vector<double> descending(n);
    for (std::size_t k = 0; k < n; ++k) descending[k] = static_cast<double>(n - k);
    out.push_back(std::move(descending));
    return out;
}

std::vector<Instance> directed_instances(AxiomId axiom, std::size_t n) {
    std::vector<Instance> out;
    switch (axiom) {
        case AxiomId::ScaleInvariance:
            for (auto& p : adversarial_profiles(n)) {
                out.push_back({p, {}, 0, 2.0});
                out.push_back({p, {}, 0, 0.5});
            }
            break;
        case AxiomId::UpstreamInvariance:
            for (auto& p : adversarial_profiles(n)) {
                for (std::size_t i = 1; i < n; ++i) out.push_back({p, {}, i, 1.0});
            }
            break;
        case AxiomId::DownstreamImpartiality:
            for (std::size_t i = 0; i + 1 < n; ++i) {
                out.push_back({std::vector<double>(n, 0.0), {}, i, 1.0});
                out.push_back({std::vector<double>(n, 1.0), {}, i, 1.0});
                for (std::size_t k = 0; k <= i; ++k) out.push_back({unit(n, k), {}, i, 1.0});
            }
            break;
        case AxiomId::OrderPreservation:
            for (auto& p : adversarial_profiles(n)) out.push_back({p, {}, 0, 0.0});
            break;
        case AxiomId::Progressivity:
        case AxiomId::Regressivity:
        case AxiomId::Balance:
            for (std::size_t i = 0; i + 1 < n; ++i) out.push_back({unit(n, i), {}, i, 0.0});
            break;
        case AxiomId::EqualTreatmentEqualSourceInflows:
            for (std::size_t s = 0; s + 1 < n; ++s) {
                for (std::size_t t = 0; t + 1 < n; ++t) {
                    if (s != t) out.push_back({unit(n, s), unit(n, t), 0, 0.0});
                }
                auto busy = unit(n, s);
                for (std::size_t k = s + 1; k < n; ++k) busy[k] = 1.0;
                out.push_back({unit(n, s), busy, 0, 0.0});
            }
            break;
        case AxiomId::EqualTreatmentEqualUpstreamTotalInflow:
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < i; ++j) {
                    for (std::size_t k = 0; k < i; ++k) {
                        if (j != k) out.push_back({unit(n, j), unit(n, k), i, 0.0});
                    }
                }
            }
            break;
    }
    return out;
}

class Generator {
public:
    Generator(const SuiteOptions& options, std::uint64_t seed, AxiomId axiom, std::uint64_t trial,
              std::uint64_t attempt)
        : options_(options) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(axiom), static_cast<std::uint32_t>(trial),
                          static_cast<std::uint32_t>(trial >> 32),
                          static_cast<std::uint32_t>(attempt)};
        rng_.seed(seq);
    }

    std::size_t index(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }

    double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

    // Strictly positive, in (0, max_inflow].
    double positive() { return options_.max_inflow * (1.0 - uniform01()); }

    double inflow() { return uniform01() < options_.zero_probability ? 0.0 : positive(); }

    std::vector<double> profile(std::size_t n) {
        std::vector<double> v(n);
        for (auto& x : v) x = inflow();
        return v;
    }

    // Log-uniform in [1e-2, 1e2].
    double scale_factor() { return std::exp(std::log(1e-2) + uniform01() * std::log(1e4)); }

private:
    const SuiteOptions& options_;
    std::mt19937_64 rng_;
};

Instance random_instance(AxiomId axiom, std::size_t n, Generator& g) {
    Instance inst;
    switch (axiom) {
        case AxiomId::ScaleInvariance:
            inst.profile = g.profile(n);
            inst.parameter = g.scale_factor();
            break;
        case AxiomId::UpstreamInvariance:
            inst.profile = g.profile(n);
            inst.agent = g.index(1, n - 1);
            inst.parameter = g.positive();
            break;
        case AxiomId::DownstreamImpartiality: {
            inst.agent = g.index(0, n - 2);
            inst.profile = g.profile(n);
            const double tail = g.inflow();
            for (std::size_t k = inst.agent + 1; k < n; ++k) inst.profile[k] = tail;
            inst.parameter = g.positive();
            break;
        }
        case AxiomId::OrderPreservation:
            inst.profile = g.profile(n);
            break;
        case AxiomId::Progressivity:
        case AxiomId::Regressivity:
        case AxiomId::Balance:
            inst.agent = g.index(0, n - 2);
            inst.profile = unit(n, inst.agent, g.positive());
            break;
        case AxiomId::EqualTreatmentEqualSourceInflows: {
            const double v = g.positive();
            auto make = [&] {
                const std::size_t s = g.index(0, n - 2);
                std::vector<double> p(n, 0.0);
                p[s] = v;
                for (std::size_t k = s + 1; k < n; ++k) p[k] = g.inflow();
                return p;
            };
            inst.profile = make();
            inst.other = make();
            break;
        }
        case AxiomId::EqualTreatmentEqualUpstreamTotalInflow: {
            const std::size_t i = g.index(0, n - 1);
            inst.agent = i;
            inst.profile = g.profile(n);
            inst.other = g.profile(n);
            inst.other[i] = inst.profile[i];
            // Redistribute the same upstream total with fresh random weights.
            const double total = upstream_total(InflowProfile(inst.profile), i);
            std::vector<double> w(i);
            double wsum = 0.0;
            for (auto& x : w) wsum += (x = g.inflow());
            if (i > 0 && wsum == 0.0) {
                w[g.index(0, i - 1)] = 1.0;
                wsum = 1.0;
            }
            for (std::size_t j = 0; j < i; ++j) inst.other[j] = total * w[j] / wsum;
            break;
        }
    }
    return inst;
}

struct AxiomContext {
    const RuleSpec& rule;
    const SuiteOptions& options;
};

CheckResult evaluate(const AxiomContext& ctx, AxiomId axiom, const Instance& inst) {
    const InflowProfile e(inst.profile);
    const Tolerance& tol = ctx.options.tolerance;
    switch (axiom) {
        case AxiomId::ScaleInvariance:
            return check_scale_invariance(ctx.rule, e, inst.parameter, tol);
        case AxiomId::UpstreamInvariance:
            return check_upstream_invariance(ctx.rule, e, inst.agent, inst.parameter, tol);
        case AxiomId::DownstreamImpartiality:
            return check_downstream_impartiality(ctx.rule, e, inst.agent, inst.parameter,
                                                 ctx.options.impartiality, tol);
        case AxiomId::OrderPreservation:
            return check_order_preservation(ctx.rule, e, tol);
        case AxiomId::Progressivity:
            return check_source_shape(ctx.rule, e, SourceShape::Progressivity, tol);
        case AxiomId::Regressivity:
            return check_source_shape(ctx.rule, e, SourceShape::Regressivity, tol);
        case AxiomId::Balance:
            return check_source_shape(ctx.rule, e, SourceShape::Balance, tol);
        case AxiomId::EqualTreatmentEqualSourceInflows:
            return check_equal_treatment_source(ctx.rule, e, InflowProfile(inst.other), tol);
        case AxiomId::EqualTreatmentEqualUpstreamTotalInflow:
            return check_equal_treatment_upstream_total(ctx.rule, e, InflowProfile(inst.other),
                                                        inst.agent, tol);
    }
    return holds();
}

Counterexample make_counterexample(const RuleSpec& rule, AxiomId axiom, const Instance& inst,
                                   std::string detail) {
    Counterexample cx;
    const InflowProfile e(inst.profile);
    cx.profile = inst.profile;
    cx.allocation = rule.apply(e).vector();
    cx.violated = std::move(detail);

    std::optional<InflowProfile> other;
    switch (axiom) {
        case AxiomId::ScaleInvariance:
            other = e.scaled(inst.parameter);
            cx.parameter = inst.parameter;
            break;
        case AxiomId::UpstreamInvariance:
        case AxiomId::DownstreamImpartiality:
            other = bumped(e, inst.agent, inst.parameter);
            cx.agent = inst.agent;
            cx.parameter = inst.parameter;
            break;
        case AxiomId::Progressivity:
        case AxiomId::Regressivity:
        case AxiomId::Balance:
            cx.agent = inst.agent;
            break;
        case AxiomId::EqualTreatmentEqualSourceInflows:
            other = InflowProfile(inst.other);
            break;
        case AxiomId::EqualTreatmentEqualUpstreamTotalInflow:
            other = InflowProfile(inst.other);
            cx.agent = inst.agent;
            break;
        case AxiomId::OrderPreservation:
            break;
    }
    if (other) {
        cx.other_profile = other->vector();
        cx.other_allocation = rule.apply(*other).vector();
    }
    return cx;
}

std::vector<std::size_t> suite_sizes(const RuleSpec& rule, const SuiteOptions& options) {
    if (auto fixed = rule.fixed_size()) return {*fixed};
    if (options.min_agents < 2 || options.min_agents > options.max_agents) {
        throw std::invalid_argument("suite agent range must satisfy 2 <= min_agents <= max_agents");
    }
    std::vector<std::size_t> sizes;
    for (std::size_t n = options.min_agents; n <= options.max_agents; ++n) sizes.push_back(n);
    return sizes;
}

}  // namespace

std::string_view to_string(AxiomId id) { return kAxiomNames[static_cast<std::size_t>(id)]; }

std::optional<AxiomId> parse_axiom(std::string_view name) {
    for (auto id : kAllAxioms) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

CheckResult check_scale_invariance(const RuleSpec& rule, const InflowProfile& e, double gamma,
                                   const Tolerance& tol) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw DomainError("scale factor must be positive and finite");
    }
    const auto base = rule.apply(e);
    const auto scaled = rule.apply(e.scaled(gamma));
    const double eps = tol.at(std::max(e.total(), gamma * e.total()));
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (std::abs(scaled[k] - gamma * base[k]) > eps) {
            auto os = number_stream();
            os << "R_" << k + 1 << "(gamma e) = " << scaled[k] << " != gamma R_" << k + 1
               << "(e) = " << gamma * base[k];
            return violated(os.str());
        }
    }
    return holds();
}

CheckResult check_upstream_invariance(const RuleSpec& rule, const InflowProfile& e, std::size_t i,
                                      double delta, const Tolerance& tol) {
    require_agent(e, i);
    if (!(delta > 0.0)) throw DomainError("inflow increase must be positive");
    const auto e2 = bumped(e, i, delta);
    const auto before = rule.apply(e);
    const auto after = rule.apply(e2);
    const double eps = tol.at(e2.total());
    for (std::size_t k = 0; k < i; ++k) {
        if (std::abs(after[k] - before[k]) > eps) {
            auto os = number_stream();
            os << "raising e_" << i + 1 << " changed upstream R_" << k + 1 << " from "
               << before[k] << " to " << after[k];
            return violated(os.str());
        }
    }
    return holds();
}

CheckResult check_downstream_impartiality(const RuleSpec& rule, const InflowProfile& e,
                                          std::size_t i, double delta, ImpartialityMode mode,
                                          const Tolerance& tol) {
    require_agent(e, i);
    if (!(delta > 0.0)) throw DomainError("inflow increase must be positive");
    if (mode == ImpartialityMode::EqualInflowTail) {
        for (std::size_t k = i + 2; k < e.size(); ++k) {
            if (e[k] != e[i + 1]) {
                return not_met("downstream inflows of agent " + std::to_string(i + 1) +
                               " are not all equal");
            }
        }
    }
    const auto e2 = bumped(e, i, delta);
    const auto before = rule.apply(e);
    const auto after = rule.apply(e2);
    const double eps = tol.at(e2.total());
    if (i + 1 >= e.size()) return holds();
    const double reference = after[i + 1] - before[i + 1];
    for (std::size_t k = i + 2; k < e.size(); ++k) {
        const double gain = after[k] - before[k];
        if (std::abs(gain - reference) > eps) {
            auto os = number_stream();
            os << "raising e_" << i + 1 << " gave agent " << i + 2 << " " << reference
               << " but agent " << k + 1 << " " << gain;
            return violated(os.str());
        }
    }
    return holds();
}

CheckResult check_order_preservation(const RuleSpec& rule, const InflowProfile& e,
                                     const Tolerance& tol) {
    const auto x = rule.apply(e);
    const double eps = tol.at(e.total());
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            if (e[i] >= e[j] && x[i] < x[j] - eps) {
                auto os = number_stream();
                os << "e_" << i + 1 << " = " << e[i] << " >= e_" << j + 1 << " = " << e[j]
                   << " but R_" << i + 1 << " = " << x[i] << " < R_" << j + 1 << " = " << x[j];
                return violated(os.str());
            }
        }
    }
    return holds();
}

CheckResult check_source_shape(const RuleSpec& rule, std::size_t n, std::size_t i,
                               SourceShape shape, const Tolerance& tol) {
    if (n < 2) throw DimensionError("source checks need at least 2 agents");
    if (i + 1 >= n) {
        throw std::out_of_range("source agent must be upstream of the last agent, got " +
                                std::to_string(i + 1) + " of " + std::to_string(n));
    }
    return check_source_shape(rule, InflowProfile(unit(n, i)), shape, tol);
}

CheckResult check_source_shape(const RuleSpec& rule, const InflowProfile& e, SourceShape shape,
                               const Tolerance& tol) {
    const auto s = source(e);
    if (!s) return not_met("profile has no source");
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (k != *s && e[k] != 0.0) return not_met("profile has more than one positive inflow");
    }
    const std::size_t i = *s;
    const auto x = rule.apply(e);
    double downstream = 0.0;
    for (std::size_t k = i + 1; k < e.size(); ++k) downstream += x[k];
    const double mean = downstream / static_cast<double>(e.size() - 1 - i);
    const double eps = tol.at(e.total());

    bool ok = true;
    const char* relation = "";
    switch (shape) {
        case SourceShape::Progressivity:
            ok = x[i] <= mean + eps;
            relation = "<=";
            break;
        case SourceShape::Regressivity:
            ok = x[i] >= mean - eps;
            relation = ">=";
            break;
        case SourceShape::Balance:
            ok = std::abs(x[i] - mean) <= eps;
            relation = "==";
            break;
    }
    if (ok) return holds();
    auto os = number_stream();
    os << "source R_" << i + 1 << " = " << x[i] << ", downstream mean " << mean
       << "; required R_" << i + 1 << " " << relation << " mean";
    return violated(os.str());
}

CheckResult check_equal_treatment_source(const RuleSpec& rule, const InflowProfile& e,
                                         const InflowProfile& e_other, const Tolerance& tol) {
    const auto s = source(e);
    const auto t = source(e_other);
    if (!s || !t) return not_met("a profile has no source");
    const double eps = tol.at(std::max(e.total(), e_other.total()));
    if (std::abs(e[*s] - e_other[*t]) > eps) return not_met("source inflows differ");
    const auto x = rule.apply(e);
    const auto y = rule.apply(e_other);
    if (std::abs(x[*s] - y[*t]) > eps) {
        auto os = number_stream();
        os << "sources with inflow " << e[*s] << " receive R_" << *s + 1 << "(e) = " << x[*s]
           << " and R_" << *t + 1 << "(e') = " << y[*t];
        return violated(os.str());
    }
    return holds();
}

CheckResult check_equal_treatment_upstream_total(const RuleSpec& rule, const InflowProfile& e,
                                                 const InflowProfile& e_other, std::size_t i,
                                                 const Tolerance& tol) {
    if (e.size() != e_other.size()) {
        throw DimensionError("profiles to compare must have the same number of agents");
    }
    require_agent(e, i);
    const double eps = tol.at(std::max(e.total(), e_other.total()));
    if (std::abs(e[i] - e_other[i]) > eps) return not_met("own inflows differ");
    if (std::abs(upstream_total(e, i) - upstream_total(e_other, i)) > eps) {
        return not_met("upstream totals differ");
    }
    const auto x = rule.apply(e);
    const auto y = rule.apply(e_other);
    if (std::abs(x[i] - y[i]) > eps) {
        auto os = number_stream();
        os << "equal own inflow and upstream total " << upstream_total(e, i) << " but R_" << i + 1
           << "(e) = " << x[i] << " != R_" << i + 1 << "(e') = " << y[i];
        return violated(os.str());
    }
    return holds();
}

std::vector<AxiomReport> run_axiom_suite(const RuleSpec& rule, std::span<const AxiomId> axioms,
                                         std::size_t trials, std::uint64_t seed,
                                         const SuiteOptions& options) {
    if (axioms.empty()) throw std::invalid_argument("axiom set is empty");
    if (trials == 0) throw std::invalid_argument("trials must be at least 1");
    const auto sizes = suite_sizes(rule, options);
    const AxiomContext ctx{rule, options};
    constexpr std::uint64_t kMaxAttempts = 16;

    std::vector<AxiomReport> reports;
    for (const AxiomId axiom : axioms) {
        AxiomReport report;
        report.axiom = axiom;
        report.seed = seed;

        auto tally = [&](const Instance& inst) {
            auto result = evaluate(ctx, axiom, inst);
            if (result.verdict == Verdict::HypothesisNotMet) return false;
            ++report.trials;
            if (result.violated()) {
                ++report.violations;
                if (!report.first_counterexample) {
                    report.first_counterexample =
                        make_counterexample(rule, axiom, inst, std::move(result.detail));
                }
            }
            return true;
        };

        if (options.directed_search) {
            for (const auto n : sizes) {
                for (const auto& inst : directed_instances(axiom, n)) tally(inst);
            }
        }
        for (std::size_t trial = 0; trial < trials; ++trial) {
            for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
                Generator g(options, seed, axiom, trial, attempt);
                const std::size_t n = sizes[g.index(0, sizes.size() - 1)];
                if (tally(random_instance(axiom, n, g))) break;
            }
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

Allocation oracle_transfer_simulation(const InflowProfile& e, const AlphaParams& alpha) {
    const std::size_t n = e.size();
    if (alpha.agents() != n) {
        throw DimensionError("alpha parameters do not match the number of agents");
    }
    // transfers[k][j]: water that originates at agent k and ends with agent j.
    std::vector<std::vector<double>> transfers(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        const double keep = k + 1 < n ? alpha[k] : 1.0;
        transfers[k][k] = keep * e[k];
        const double released = e[k] - transfers[k][k];
        const std::size_t receivers = n - 1 - k;
        for (std::size_t j = k + 1; j < n; ++j) {
            transfers[k][j] = released / static_cast<double>(receivers);
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k <= j; ++k) x[j] += transfers[k][j];
    }
    return Allocation::checked(e, std::move(x));
}

}  // namespace riparian
