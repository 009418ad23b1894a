#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hansen::cli {

enum class Command { Frontier, Multiperiod, Mhr, Hj, Verify };

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 2;
};

struct RunConfig {
    Command command = Command::Verify;
    std::string input;
    std::string output;      ///< empty: stdout
    std::string points_csv;  ///< frontier points file; empty: none
    int periods = 1;
    std::optional<GridSpec> grid;
    std::vector<std::string> kernels;  ///< hj: scenario CSVs of candidate kernels
    bool monotone = false;             ///< hj: also run the positivity-constrained bound
    double relative_tolerance = 1e-5;  ///< verify: printed decimals
    double exact_tolerance = 1e-12;    ///< verify: exact fractions
    bool renormalize = false;
    bool allow_no_downside = false;
};

/// Throws hansen::Error(InvalidInput) when the grid has fewer than two
/// points or a tolerance is not positive.
void validate(const RunConfig& config);

/// Executes one command. Reports go to `out` (or the output file); errors
/// are written to `err` as {"code","message","context"}. Returns 0 on
/// success, 1 on validation errors, 2 on internal invariant violations
/// (including a failed `verify`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and calls run().
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hansen::cli
