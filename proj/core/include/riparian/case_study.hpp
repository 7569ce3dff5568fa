#pragma once

#include <string>
#include <vector>

#include "riparian/analysis.hpp"
#include "riparian/dataset.hpp"

namespace riparian {

struct TableColumn {
    std::string label;
    std::vector<double> values;
};

/// A reproduced figure compared with its published value.
struct ToleranceCheck {
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct CaseStudy {
    BasinDataset dataset;
    // e, z, EFT, compromise 1/2, NT, partial 1/2, EPT, Shapley.
    std::vector<TableColumn> table;
    FitResult compromise_fit;
    FitResult partial_fit;
    double compromise_integral = 0.0;
    double partial_integral = 0.0;
    LegitimacyReport compromise_legitimacy;
    LegitimacyReport partial_legitimacy;
    // Share of the total for every table column, same order as `table`.
    std::vector<TableColumn> shares;
    std::vector<ToleranceCheck> checks;

    [[nodiscard]] bool passed() const;
};

/// Reproduces the Nile analysis on the embedded dataset and checks every
/// figure against the published one.
[[nodiscard]] CaseStudy run_nile_case_study();

}  // namespace riparian
