#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "riparian/types.hpp"

namespace riparian {

/// Named agents in river order (upstream first) with their inflows and,
/// optionally, observed withdrawals.
struct BasinDataset {
    std::string name;
    std::string units = "km³/year";
    std::vector<std::string> agents;
    InflowProfile inflows;
    std::optional<std::vector<double>> raw_withdrawals;
    // Withdrawals rescaled to the total inflow; present whenever raw ones are.
    std::optional<ObservedAllocation> withdrawals;
};

class DatasetError : public std::runtime_error {
public:
    DatasetError(const std::string& message, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    /// 1-based line of the input, 0 when the error is not tied to a line.
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// z = z_raw * (sum e / sum z_raw). Throws DomainError on a zero withdrawal
/// total, DimensionError on a length mismatch.
[[nodiscard]] ObservedAllocation normalize_withdrawals(const InflowProfile& e,
                                                       std::span<const double> raw);

enum class DatasetFormat { Csv, Json };

/// CSV: header `agent,inflow[,withdrawal]`, one row per agent in river order.
/// JSON: {"agents": [{"name", "inflow", "withdrawal"?}, ...], "units"?, "name"?}.
/// Withdrawals, if present, must be given for every agent.
[[nodiscard]] BasinDataset load_dataset(std::istream& in, DatasetFormat format);

/// Chooses the format from the extension (.json, otherwise CSV).
[[nodiscard]] BasinDataset load_dataset_file(const std::filesystem::path& path);

/// Writes agents, inflows and raw withdrawals with shortest round-trip numbers.
void write_dataset(std::ostream& out, const BasinDataset& dataset, DatasetFormat format);

/// The five-country Nile case (Tanzania, Uganda, South Sudan, Sudan, Egypt).
/// `withdrawals` holds the normalized withdrawals at the published one-decimal
/// precision, (5.4, 0.7, 0.7, 28.1, 81); the raw values sum to 111.11.
[[nodiscard]] BasinDataset builtin_nile();

}  // namespace riparian
