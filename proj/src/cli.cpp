#include "hansen/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hansen/appendix.hpp"
#include "hansen/error.hpp"
#include "hansen/io.hpp"

namespace hansen::cli {

using io::Json;

void validate(const RunConfig& config) {
    if (config.grid && config.grid->count < 2) {
        throw Error(ErrorCode::InvalidInput, "grid needs at least two points");
    }
    if (config.grid && !(config.grid->max > config.grid->min)) {
        throw Error(ErrorCode::InvalidInput, "grid max must exceed grid min");
    }
    if (!(config.relative_tolerance > 0.0) || !(config.exact_tolerance > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "tolerances must be positive");
    }
    if (config.command == Command::Multiperiod && config.periods < 1) {
        throw Error(ErrorCode::InvalidHorizon, "periods must be at least 1");
    }
    if (config.command != Command::Verify && config.input.empty()) {
        throw Error(ErrorCode::InvalidInput, "an input file is required");
    }
}

namespace {

std::vector<double> grid_values(const RunConfig& config, const FrontierCoefficients& fc) {
    GridSpec g;
    if (config.grid) {
        g = *config.grid;
    } else {
        g.min = std::min(fc.mu_Y, fc.mu_Z) - 0.5;
        g.max = std::max(fc.mu_Y, fc.mu_Z) + 0.5;
        g.count = 101;
    }
    std::vector<double> out(static_cast<std::size_t>(g.count));
    for (int i = 0; i < g.count; ++i) {
        out[static_cast<std::size_t>(i)] = g.min + (g.max - g.min) * i / (g.count - 1);
    }
    return out;
}

void maybe_write_points(const RunConfig& config, const FrontierCoefficients& fc) {
    if (config.points_csv.empty()) return;
    std::ofstream file(config.points_csv);
    if (!file) throw Error(ErrorCode::IoError, "cannot write points file", config.points_csv);
    io::write_points_csv(file, frontier_points(fc, grid_values(config, fc)));
}

Json frontier_report(const RunConfig& config) {
    const GramMarket mkt = io::read_market_json(config.input, config.renormalize);
    const SpecialPortfolios sp = solve_special_portfolios(mkt);
    const FrontierCoefficients fc = frontier_coefficients(sp);
    maybe_write_points(config, fc);
    Json j;
    j["special_portfolios"] = io::to_json(sp);
    j["frontier"] = io::to_json(fc);
    j["hansen_bound"] = io::to_json(check_hansen_bound(sp));
    if (mkt.sequence()) j["sequence"] = io::to_json(*mkt.sequence());
    return j;
}

Json multiperiod_report(const RunConfig& config) {
    const GramMarket mkt = io::read_market_json(config.input, config.renormalize);
    const SpecialPortfolios sp = solve_special_portfolios(mkt);
    const MultiperiodStats mp = propagate(sp, config.periods);
    const FrontierCoefficients fc = multiperiod_frontier(mp);
    maybe_write_points(config, fc);
    Json j;
    j["one_period"] = io::to_json(sp);
    j["multiperiod"] = io::to_json(mp);
    j["frontier"] = io::to_json(fc);
    return j;
}

Json mhr_report(const RunConfig& config) {
    const ScenarioPayoff w = io::read_scenario_csv(config.input, config.renormalize);
    return io::to_json(monotone_hansen_ratio(w, {.allow_no_downside = config.allow_no_downside}));
}

Json hj_report(const RunConfig& config) {
    const GramMarket mkt = io::read_market_json(config.input, config.renormalize);
    std::vector<ScenarioPayoff> kernels;
    for (const auto& path : config.kernels) kernels.push_back(io::read_scenario_csv(path, config.renormalize));
    Json j = io::to_json(hj_bounds(mkt, kernels));
    if (config.monotone) {
        Json mono = Json::array();
        for (const auto& m : kernels) mono.push_back(io::to_json(monotone_hj_bound(mkt, m)));
        j["monotone"] = std::move(mono);
    }
    return j;
}

Json comparison_json(const appendix::Comparison& c) {
    return {{"name", c.name},
            {"computed", c.computed},
            {"reference", c.reference},
            {"rel_delta", c.rel_delta},
            {"rounds_to_reference", c.rounds_to_reference},
            {"pass", c.pass}};
}

Json verify_report(const RunConfig& config, bool& pass) {
    const auto report = appendix::verify(config.relative_tolerance, config.exact_tolerance);
    Json printed = Json::array();
    for (const auto& c : report.printed) printed.push_back(comparison_json(c));
    Json exact = Json::array();
    for (const auto& c : report.exact) exact.push_back(comparison_json(c));
    pass = report.pass;
    return {{"relative_tolerance", config.relative_tolerance},
            {"exact_tolerance", config.exact_tolerance},
            {"printed", std::move(printed)},
            {"exact", std::move(exact)},
            {"pass", report.pass}};
}

void write_error(std::ostream& err, std::string_view code, const std::string& message, const std::string& context) {
    Json j;
    j["code"] = code;
    j["message"] = message;
    j["context"] = context;
    err << j.dump() << '\n';
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        Json report;
        bool verify_pass = true;
        switch (config.command) {
            case Command::Frontier: report = frontier_report(config); break;
            case Command::Multiperiod: report = multiperiod_report(config); break;
            case Command::Mhr: report = mhr_report(config); break;
            case Command::Hj: report = hj_report(config); break;
            case Command::Verify: report = verify_report(config, verify_pass); break;
        }
        const std::string text = io::dump(report);
        if (config.output.empty()) {
            out << text << '\n';
        } else {
            std::ofstream file(config.output);
            if (!file) throw Error(ErrorCode::IoError, "cannot write output file", config.output);
            file << text << '\n';
        }
        if (!verify_pass) {
            write_error(err, to_string(ErrorCode::InternalInvariant), "reference values not reproduced within tolerance", "verify");
            return 2;
        }
        return 0;
    } catch (const Error& e) {
        write_error(err, to_string(e.code()), e.what(), e.context());
        return is_validation_error(e.code()) ? 1 : 2;
    } catch (const nlohmann::json::exception& e) {
        write_error(err, to_string(ErrorCode::ParseError), e.what(), config.input);
        return 1;
    }
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hansen-ratio mean-variance frontier toolkit"};
    app.require_subcommand(1);

    RunConfig config;
    double grid_min = 0.0, grid_max = 0.0;
    int grid_count = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-o,--output", config.output, "Write the JSON report here instead of stdout");
        sub->add_flag("--renormalize", config.renormalize, "Rescale scenario probabilities to sum to 1");
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--points", config.points_csv, "Write frontier points CSV (mu,omega,sigma)");
        sub->add_option("--grid-min", grid_min, "Smallest mean on the points grid");
        sub->add_option("--grid-max", grid_max, "Largest mean on the points grid");
        sub->add_option("--grid-count", grid_count, "Number of grid points (>= 2)");
    };

    auto* frontier = app.add_subcommand("frontier", "Special portfolios and frontier of a market JSON");
    frontier->add_option("input", config.input, "Market JSON")->required();
    add_common(frontier);
    add_grid(frontier);

    auto* multiperiod = app.add_subcommand("multiperiod", "n-period IID frontier of a market JSON");
    multiperiod->add_option("input", config.input, "Market JSON")->required();
    multiperiod->add_option("-n,--periods", config.periods, "Number of periods")->required();
    add_common(multiperiod);
    add_grid(multiperiod);

    auto* mhr = app.add_subcommand("mhr", "Monotone Hansen ratio of a scenario CSV");
    mhr->add_option("input", config.input, "Scenario CSV (probability,value)")->required();
    mhr->add_flag("--allow-no-downside", config.allow_no_downside, "Accept payoffs without downside");
    add_common(mhr);

    auto* hj = app.add_subcommand("hj", "Hansen-Jagannathan bounds of a market JSON");
    hj->add_option("input", config.input, "Market JSON")->required();
    hj->add_option("-k,--kernel", config.kernels, "Scenario CSV of a candidate kernel (repeatable)");
    hj->add_flag("--monotone", config.monotone, "Also check the bound for non-negative kernels");
    add_common(hj);

    auto* verify = app.add_subcommand("verify", "Recompute the built-in three-asset reference example");
    verify->add_option("--tolerance", config.relative_tolerance, "Relative tolerance on printed decimals");
    verify->add_option("--exact-tolerance", config.exact_tolerance, "Relative tolerance on exact fractions");
    verify->add_option("-o,--output", config.output, "Write the JSON report here instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        write_error(err, to_string(ErrorCode::InvalidInput), e.what(), "arguments");
        return 1;
    }

    if (frontier->parsed()) config.command = Command::Frontier;
    if (multiperiod->parsed()) config.command = Command::Multiperiod;
    if (mhr->parsed()) config.command = Command::Mhr;
    if (hj->parsed()) config.command = Command::Hj;
    if (verify->parsed()) config.command = Command::Verify;
    if (grid_count != 0 || grid_min != 0.0 || grid_max != 0.0) {
        config.grid = GridSpec{grid_min, grid_max, grid_count};
    }
    return run(config, out, err);
}

}  // namespace hansen::cli
