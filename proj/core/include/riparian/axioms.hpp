#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riparian/rules.hpp"
#include "riparian/types.hpp"

namespace riparian {

enum class AxiomId {
    ScaleInvariance,
    UpstreamInvariance,
    DownstreamImpartiality,
    OrderPreservation,
    Progressivity,
    Regressivity,
    Balance,
    EqualTreatmentEqualSourceInflows,
    EqualTreatmentEqualUpstreamTotalInflow,
};

inline constexpr std::array<AxiomId, 9> kAllAxioms = {
    AxiomId::ScaleInvariance,
    AxiomId::UpstreamInvariance,
    AxiomId::DownstreamImpartiality,
    AxiomId::OrderPreservation,
    AxiomId::Progressivity,
    AxiomId::Regressivity,
    AxiomId::Balance,
    AxiomId::EqualTreatmentEqualSourceInflows,
    AxiomId::EqualTreatmentEqualUpstreamTotalInflow,
};

/// Kebab-case name used on the command line and in reports.
[[nodiscard]] std::string_view to_string(AxiomId id);
[[nodiscard]] std::optional<AxiomId> parse_axiom(std::string_view name);

enum class Verdict { Holds, Violated, HypothesisNotMet };

struct CheckResult {
    Verdict verdict = Verdict::Holds;
    std::string detail;  // the failed (in)equality, or why the hypothesis is not met

    [[nodiscard]] bool holds() const noexcept { return verdict == Verdict::Holds; }
    [[nodiscard]] bool violated() const noexcept { return verdict == Verdict::Violated; }
};

enum class SourceShape { Progressivity, Regressivity, Balance };

/// The default compares only downstream agents with equal inflows (the
/// axiom's hypothesis). AllDownstream drops that hypothesis and requires every
/// downstream agent to gain the same amount.
enum class ImpartialityMode { EqualInflowTail, AllDownstream };

// Agent indices below are 0-based. Out-of-range indices throw std::out_of_range.

/// R(gamma e) == gamma R(e), gamma > 0.
[[nodiscard]] CheckResult check_scale_invariance(const RuleSpec& rule, const InflowProfile& e,
                                                 double gamma, const Tolerance& tol = {});

/// Raising e_i by delta > 0 leaves every agent upstream of i unchanged.
[[nodiscard]] CheckResult check_upstream_invariance(const RuleSpec& rule, const InflowProfile& e,
                                                    std::size_t i, double delta,
                                                    const Tolerance& tol = {});

/// Raising e_i by delta > 0 changes every downstream agent by the same amount.
/// Under EqualInflowTail, a profile whose downstream inflows differ does not
/// meet the hypothesis.
[[nodiscard]] CheckResult check_downstream_impartiality(
    const RuleSpec& rule, const InflowProfile& e, std::size_t i, double delta,
    ImpartialityMode mode = ImpartialityMode::EqualInflowTail, const Tolerance& tol = {});

/// For every i < j with e_i >= e_j, R_i(e) >= R_j(e).
[[nodiscard]] CheckResult check_order_preservation(const RuleSpec& rule, const InflowProfile& e,
                                                   const Tolerance& tol = {});

/// Compares the source's assignment with the mean assignment downstream of it
/// on the unit single-source profile of n agents with source i (i < n-1).
[[nodiscard]] CheckResult check_source_shape(const RuleSpec& rule, std::size_t n, std::size_t i,
                                             SourceShape shape, const Tolerance& tol = {});

/// Same check on an arbitrary profile; the hypothesis requires exactly one
/// positive inflow at a non-terminal agent.
[[nodiscard]] CheckResult check_source_shape(const RuleSpec& rule, const InflowProfile& e,
                                             SourceShape shape, const Tolerance& tol = {});

/// Two profiles whose sources have equal inflow give their sources equal
/// amounts. Missing sources or unequal source inflows do not meet the hypothesis.
[[nodiscard]] CheckResult check_equal_treatment_source(const RuleSpec& rule,
                                                       const InflowProfile& e,
                                                       const InflowProfile& e_other,
                                                       const Tolerance& tol = {});

/// If e_i == e'_i and the inflows upstream of i have equal totals, agent i
/// gets the same amount under both profiles.
[[nodiscard]] CheckResult check_equal_treatment_upstream_total(const RuleSpec& rule,
                                                               const InflowProfile& e,
                                                               const InflowProfile& e_other,
                                                               std::size_t i,
                                                               const Tolerance& tol = {});

struct Counterexample {
    std::vector<double> profile;
    std::vector<double> allocation;
    // Second profile of a pair (perturbed, rescaled, or compared profile).
    std::vector<double> other_profile;
    std::vector<double> other_allocation;
    std::optional<std::size_t> agent;  // 0-based
    std::optional<double> parameter;   // gamma or delta where the axiom has one
    std::string violated;
};

struct AxiomReport {
    AxiomId axiom{};
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::optional<Counterexample> first_counterexample;
    std::uint64_t seed = 0;

    [[nodiscard]] bool passed() const noexcept { return violations == 0; }
};

struct SuiteOptions {
    std::size_t min_agents = 2;
    std::size_t max_agents = 10;
    double max_inflow = 100.0;
    // Probability that a generated inflow is exactly zero.
    double zero_probability = 0.2;
    // Evaluate the fixed adversarial library before the random trials.
    bool directed_search = true;
    ImpartialityMode impartiality = ImpartialityMode::EqualInflowTail;
    Tolerance tolerance{};
};

/// Runs `trials` random hypothesis-satisfying instances per axiom (plus the
/// adversarial library when enabled). Deterministic in `seed`: every trial
/// draws from its own generator derived from (seed, axiom, trial).
/// Throws std::invalid_argument if `axioms` is empty or trials == 0.
[[nodiscard]] std::vector<AxiomReport> run_axiom_suite(const RuleSpec& rule,
                                                       std::span<const AxiomId> axioms,
                                                       std::size_t trials, std::uint64_t seed,
                                                       const SuiteOptions& options = {});

/// Computes an alpha-rule allocation by simulating every agent's keep-and-split
/// step and delivering each share to each downstream agent individually.
/// Independent of alpha_rule's closed form; used to cross-check it.
[[nodiscard]] Allocation oracle_transfer_simulation(const InflowProfile& e,
                                                    const AlphaParams& alpha);

}  // namespace riparian
