#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace riparian {

// Agents are indexed from 0 (most upstream) to n-1 (most downstream) in code.
// Human-facing output (CLI, diagnostics) uses 1-based agent numbers.

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Comparison tolerance scaled by the magnitude of the problem:
/// `max(relative * scale, absolute_floor)`, where scale is usually the total
/// inflow.
struct Tolerance {
    double relative = 1e-9;
    double absolute_floor = 1e-12;

    [[nodiscard]] double at(double scale) const noexcept;
};

/// Non-negative inflows along a linear river, upstream first. At least two agents.
class InflowProfile {
public:
    explicit InflowProfile(std::vector<double> inflows);
    InflowProfile(std::initializer_list<double> inflows);

    [[nodiscard]] std::size_t size() const noexcept { return inflows_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return inflows_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return inflows_; }
    [[nodiscard]] const std::vector<double>& vector() const noexcept { return inflows_; }
    [[nodiscard]] double total() const noexcept;

    /// Profile with every inflow multiplied by `gamma` (gamma >= 0).
    [[nodiscard]] InflowProfile scaled(double gamma) const;

    friend bool operator==(const InflowProfile&, const InflowProfile&) = default;

private:
    std::vector<double> inflows_;
};

/// Most upstream non-terminal agent with positive inflow. Only agents
/// 0..n-2 qualify; a profile whose only positive inflow is the last agent
/// has no source.
[[nodiscard]] std::optional<std::size_t> source(const InflowProfile& e);

enum class ConstraintKind {
    None,
    LengthMismatch,
    Negativity,
    NonWastefulness,
    Feasibility,
};

/// Outcome of checking a candidate vector against the allocation constraints.
/// For Negativity and Feasibility `index` is the 0-based agent (Feasibility:
/// the prefix ending at that agent); otherwise it is unused.
struct AllocationCheck {
    bool ok = true;
    ConstraintKind violated = ConstraintKind::None;
    std::size_t index = 0;
    std::string diagnostic;

    explicit operator bool() const noexcept { return ok; }
};

/// Checks non-negativity, non-wastefulness and the n-1 cumulative feasibility
/// constraints (water only flows downstream). Throws DimensionError when the
/// lengths differ.
[[nodiscard]] AllocationCheck validate_allocation(const InflowProfile& e,
                                                  std::span<const double> x,
                                                  const Tolerance& tol = {});

/// A non-wasteful, feasible distribution of the total inflow.
class Allocation {
public:
    /// Clamps components in (-tol, 0) to zero and validates against `e`.
    /// Throws std::logic_error if the result is not a valid allocation, since
    /// every caller is a rule whose output must satisfy the constraints.
    static Allocation checked(const InflowProfile& e, std::vector<double> amounts,
                              const Tolerance& tol = {});

    [[nodiscard]] std::size_t size() const noexcept { return amounts_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return amounts_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return amounts_; }
    [[nodiscard]] const std::vector<double>& vector() const noexcept { return amounts_; }
    [[nodiscard]] double total() const noexcept;

private:
    explicit Allocation(std::vector<double> amounts) : amounts_(std::move(amounts)) {}
    std::vector<double> amounts_;
};

/// Retention shares of the n-1 non-terminal agents, each in [0, 1]. The last
/// agent always retains all of its inflow.
class AlphaParams {
public:
    explicit AlphaParams(std::vector<double> alphas);

    [[nodiscard]] std::size_t size() const noexcept { return alphas_.size(); }
    [[nodiscard]] double operator[](std::size_t k) const { return alphas_[k]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return alphas_; }
    [[nodiscard]] std::size_t agents() const noexcept { return alphas_.size() + 1; }

    friend bool operator==(const AlphaParams&, const AlphaParams&) = default;

private:
    std::vector<double> alphas_;
};

/// Observed (normalized) withdrawals used as the empirical allocation.
class ObservedAllocation {
public:
    explicit ObservedAllocation(std::vector<double> withdrawals);

    [[nodiscard]] std::size_t size() const noexcept { return withdrawals_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return withdrawals_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return withdrawals_; }
    [[nodiscard]] double total() const noexcept;

private:
    std::vector<double> withdrawals_;
};

/// Throws DomainError unless `value` lies in [0, 1]; `what` names the parameter.
void require_unit_interval(double value, const char* what);

}  // namespace riparian
