#pragma once

// JSON serialization of library results for the machine-readable run records.

#include <nlohmann/json.hpp>

#include "riparian/riparian.hpp"

namespace riparian::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Counterexample& cx);
Json to_json(const AxiomReport& report);
Json to_json(const FitResult& fit);
Json to_json(const LegitimacyReport& report, const std::vector<std::string>& agents);
Json to_json(const ToleranceCheck& check);

/// Envelope shared by every command: tool, version, command, inputs, outputs
/// and the seed when the command is randomized.
Json run_record(std::string_view command, Json inputs, Json outputs,
                std::optional<std::uint64_t> seed = std::nullopt);

std::string tool_version();

}  // namespace riparian::cli
