#include "riparian/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace riparian {

namespace {

double sum(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

double Tolerance::at(double scale) const noexcept {
    return std::max(relative * std::abs(scale), absolute_floor);
}

void require_unit_interval(double value, const char* what) {
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream os;
        os << what << " must lie in [0, 1], got " << value;
        throw DomainError(os.str());
    }
}

InflowProfile::InflowProfile(std::vector<double> inflows) : inflows_(std::move(inflows)) {
    if (inflows_.size() < 2) {
        throw DimensionError("an inflow profile needs at least 2 agents, got " +
                             std::to_string(inflows_.size()));
    }
    for (std::size_t i = 0; i < inflows_.size(); ++i) {
        if (!std::isfinite(inflows_[i]) || inflows_[i] < 0.0) {
            std::ostringstream os;
            os << "inflow of agent " << i + 1 << " must be finite and non-negative, got "
               << inflows_[i];
            throw DomainError(os.str());
        }
    }
}

InflowProfile::InflowProfile(std::initializer_list<double> inflows)
    : InflowProfile(std::vector<double>(inflows)) {}

double InflowProfile::total() const noexcept { return sum(inflows_); }

InflowProfile InflowProfile::scaled(double gamma) const {
    std::vector<double> out(inflows_);
    for (auto& v : out) v *= gamma;
    return InflowProfile(std::move(out));
}

std::optional<std::size_t> source(const InflowProfile& e) {
    for (std::size_t k = 0; k + 1 < e.size(); ++k) {
        if (e[k] > 0.0) return k;
    }
    return std::nullopt;
}

AllocationCheck validate_allocation(const InflowProfile& e, std::span<const double> x,
                                    const Tolerance& tol) {
    if (x.size() != e.size()) {
        throw DimensionError("allocation has " + std::to_string(x.size()) +
                             " entries but the profile has " + std::to_string(e.size()));
    }
    const double eps = tol.at(e.total());
    AllocationCheck check;
    auto fail = [&](ConstraintKind kind, std::size_t index, std::string msg) {
        check.ok = false;
        check.violated = kind;
        check.index = index;
        check.diagnostic = std::move(msg);
        return check;
    };

    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= -eps)) {
            std::ostringstream os;
            os << "negative amount " << x[i] << " for agent " << i + 1;
            return fail(ConstraintKind::Negativity, i, os.str());
        }
    }

    const double total_x = sum(x);
    const double total_e = e.total();
    if (!(std::abs(total_x - total_e) <= eps)) {
        std::ostringstream os;
        os << "non-wastefulness violated: allocated " << total_x << " of " << total_e;
        return fail(ConstraintKind::NonWastefulness, 0, os.str());
    }

    double prefix_x = 0.0;
    double prefix_e = 0.0;
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        prefix_x += x[k];
        prefix_e += e[k];
        if (prefix_x > prefix_e + eps) {
            std::ostringstream os;
            os << "cumulative constraint at k=" << k + 1 << " violated: agents 1.." << k + 1
               << " receive " << prefix_x << " but only " << prefix_e << " entered upstream";
            return fail(ConstraintKind::Feasibility, k, os.str());
        }
    }
    return check;
}

Allocation Allocation::checked(const InflowProfile& e, std::vector<double> amounts,
                               const Tolerance& tol) {
    const double eps = tol.at(e.total());
    for (auto& v : amounts) {
        if (v < 0.0 && v > -eps) v = 0.0;
    }
    if (auto check = validate_allocation(e, amounts, tol); !check) {
        throw std::logic_error("rule produced an invalid allocation: " + check.diagnostic);
    }
    return Allocation(std::move(amounts));
}

double Allocation::total() const noexcept { return sum(amounts_); }

AlphaParams::AlphaParams(std::vector<double> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.empty()) {
        throw DimensionError("alpha parameters need at least one entry (n >= 2)");
    }
    for (std::size_t k = 0; k < alphas_.size(); ++k) {
        const std::string name = "alpha_" + std::to_string(k + 1);
        require_unit_interval(alphas_[k], name.c_str());
    }
}

ObservedAllocation::ObservedAllocation(std::vector<double> withdrawals)
    : withdrawals_(std::move(withdrawals)) {
    for (std::size_t i = 0; i < withdrawals_.size(); ++i) {
        if (!std::isfinite(withdrawals_[i]) || withdrawals_[i] < 0.0) {
            std::ostringstream os;
            os << "withdrawal of agent " << i + 1 << " must be finite and non-negative, got "
               << withdrawals_[i];
            throw DomainError(os.str());
        }
    }
}

double ObservedAllocation::total() const noexcept { return sum(withdrawals_); }

}  // namespace riparian
