#include "hansen/appendix.hpp"

#include <cmath>
#include <map>

#include "hansen/frontier.hpp"
#include "hansen/multiperiod.hpp"

namespace hansen::appendix {

AssetUniverse universe() {
    AssetUniverse u;
    u.mean_returns = Vector{{1.162, 1.246, 1.228}};
    u.covariance = Matrix{{0.0146, 0.0187, 0.0145},
                          {0.0187, 0.0854, 0.0104},
                          {0.0145, 0.0104, 0.0289}};
    return u;
}

const std::vector<PrintedValue>& printed_values() {
    static const std::vector<PrintedValue> values = {
        {"omega_sq_Y", 0.87107, 5},
        {"mu_Y", 0.74242, 5},
        {"mu_Y_over_omega_sq_Y", 0.85231, 5},
        {"hr_sq_Y", 0.63278, 5},
        {"hr_sq_X", 0.35665, 5},
        {"hr_sq_X_plus_hr_sq_Y", 0.98943, 5},
        {"n4_hr_sq_X", 0.81550, 5},
        {"n4_mu_Y", 0.30381, 5},
        {"n4_omega_sq_Y", 0.57571, 5},
        {"n4_inv_hr_sq_X", 1.22625, 5},
        {"n4_mu_Z", 1.64663, 5},
        {"n4_sigma_sq_Z", 0.075446, 6},
        {"n4_inv_sr_sq_X", 0.22625, 5},
    };
    return values;
}

const std::vector<ExactValue>& exact_values() {
    static const std::vector<ExactValue> values = {
        {"hr_sq_X_plus_hr_sq_Y", 28147713781.0, 28448540506.0},
        {"mu_Y_over_omega_sq_Y", 12123548000.0, 14224270253.0},
        {"omega_sq_Y", 14224270253.0, 16329740000.0},
        {"hr_sq_Y", 7349020805415200.0, 11613931746061211.0},
        {"hr_sq_X", 582399.0, 1632974.0},
        {"mu_Y", 3030887.0, 4082435.0},
    };
    return values;
}

namespace {

std::map<std::string, double> computed_values() {
    const GramMarket mkt = gram_from_universe(universe());
    const SpecialPortfolios sp = solve_special_portfolios(mkt);
    const MultiperiodStats mp = propagate(sp, kPeriods);
    const FrontierCoefficients fc = multiperiod_frontier(mp);
    return {
        {"omega_sq_Y", sp.omega_sq_Y},
        {"mu_Y", sp.mu_Y},
        {"mu_Y_over_omega_sq_Y", sp.mu_Y / sp.omega_sq_Y},
        {"hr_sq_Y", sp.hr_sq_Y},
        {"hr_sq_X", sp.hr_sq_X},
        {"hr_sq_X_plus_hr_sq_Y", sp.hr_sq_X + sp.hr_sq_Y},
        {"n4_hr_sq_X", mp.hr_sq_X},
        {"n4_mu_Y", mp.mu_Y},
        {"n4_omega_sq_Y", mp.omega_sq_Y},
        {"n4_inv_hr_sq_X", fc.inv_hr_sq_X},
        {"n4_mu_Z", fc.mu_Z},
        {"n4_sigma_sq_Z", fc.sigma_sq_Z},
        {"n4_inv_sr_sq_X", fc.inv_sr_sq_X},
    };
}

}  // namespace

VerifyReport verify(double relative_tolerance, double exact_tolerance) {
    const auto computed = computed_values();
    VerifyReport report;
    report.pass = true;
    for (const auto& pv : printed_values()) {
        Comparison c;
        c.name = pv.name;
        c.computed = computed.at(pv.name);
        c.reference = pv.printed;
        c.rel_delta = std::abs(c.computed - c.reference) / std::abs(c.reference);
        const double unit = std::pow(10.0, pv.decimals);
        c.rounds_to_reference = std::round(c.computed * unit) == std::round(pv.printed * unit);
        c.pass = c.rel_delta <= relative_tolerance;
        report.pass = report.pass && c.pass;
        report.printed.push_back(c);
    }
    for (const auto& ev : exact_values()) {
        Comparison c;
        c.name = ev.name;
        c.computed = computed.at(ev.name);
        c.reference = ev.numerator / ev.denominator;
        c.rel_delta = std::abs(c.computed - c.reference) / std::abs(c.reference);
        c.rounds_to_reference = true;
        c.pass = c.rel_delta <= exact_tolerance;
        report.pass = report.pass && c.pass;
        report.exact.push_back(c);
    }
    return report;
}

}  // namespace hansen::appendix
