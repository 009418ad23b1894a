/**
 * @file appendix.hpp
 * @brief Built-in three-asset IID dataset and its published reference values
 *
 * The dataset is the three-asset example of Li and Ng (2000): gross returns
 * with means (1.162, 1.246, 1.228) and the covariance below. `verify`
 * recomputes every published statistic and reports the deltas.
 */

#pragma once

#include <string>
#include <vector>

#include "hansen/market.hpp"

namespace hansen::appendix {

inline constexpr int kPeriods = 4;

AssetUniverse universe();

struct PrintedValue {
    std::string name;
    double printed;
    int decimals;  ///< digits after the decimal point in the printed figure
};

struct ExactValue {
    std::string name;
    double numerator;
    double denominator;
};

/// Rounded decimals as published, one-period then four-period.
const std::vector<PrintedValue>& printed_values();

/// Exact rational values of the one-period statistics.
const std::vector<ExactValue>& exact_values();

struct Comparison {
    std::string name;
    double computed = 0.0;
    double reference = 0.0;
    double rel_delta = 0.0;
    /// computed rounded to the printed number of decimals equals the figure
    /// (only meaningful for printed values)
    bool rounds_to_reference = false;
    bool pass = false;
};

struct VerifyReport {
    std::vector<Comparison> printed;
    std::vector<Comparison> exact;
    bool pass = false;
};

/// Recomputes every reference value. Printed values pass at
/// relative_tolerance, exact fractions at exact_tolerance.
VerifyReport verify(double relative_tolerance = 1e-5, double exact_tolerance = 1e-12);

}  // namespace hansen::appendix
