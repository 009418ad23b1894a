#include "hansen/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hansen/error.hpp"

namespace hansen {

namespace {

struct Solves {
    Vector price_dir;  // G^-1 p
    Vector mean_dir;   // G^-1 m
    double pp = 0.0;   // p^T G^-1 p
    double pm = 0.0;   // p^T G^-1 m
};

Solves solve_both(const GramMarket& mkt) {
    Solves s;
    s.price_dir = mkt.factor().solve(mkt.prices());
    s.mean_dir = mkt.factor().solve(mkt.means());
    s.pp = mkt.prices().dot(s.price_dir);
    s.pm = mkt.prices().dot(s.mean_dir);
    return s;
}

PortfolioY make_Y(const GramMarket& mkt, const Solves& s) {
    PortfolioY y;
    y.weights = s.price_dir / s.pp;
    y.second_moment = 1.0 / s.pp;
    y.mean = mkt.means().dot(y.weights);
    return y;
}

PortfolioX make_X(const GramMarket& mkt, const Solves& s) {
    PortfolioX x;
    x.multiplier = s.pm / s.pp;
    x.weights = s.mean_dir - x.multiplier * s.price_dir;
    x.hr_sq = std::max(0.0, mkt.means().dot(x.weights));
    if (x.hr_sq >= 1.0 - kArbitrageTolerance) {
        throw Error(ErrorCode::ArbitrageDetected, "the constant payoff is (numerically) a zero-cost payoff",
                    "HR^2_X = " + std::to_string(x.hr_sq));
    }
    return x;
}

}  // namespace

PortfolioY solve_Y(const GramMarket& mkt) {
    return make_Y(mkt, solve_both(mkt));
}

PortfolioX solve_X(const GramMarket& mkt) {
    return make_X(mkt, solve_both(mkt));
}

PortfolioZ solve_Z(const GramMarket& mkt) {
    const auto sp = solve_special_portfolios(mkt);
    return {sp.w_Z, sp.mu_Z, sp.sigma_sq_Z};
}

std::pair<double, double> minimum_variance_stats(const FrontierStats& fs) {
    const double complement = 1.0 - fs.hr_sq_X;
    if (!(complement > kArbitrageTolerance)) {
        throw Error(ErrorCode::ArbitrageDetected, "1 - HR^2_X vanishes", "HR^2_X = " + std::to_string(fs.hr_sq_X));
    }
    const double mu_Z = fs.mu_Y / complement;
    double sigma_sq_Z = fs.omega_sq_Y * (1.0 - fs.hr_sq_Y() / complement);
    if (sigma_sq_Z < 0.0) {
        if (sigma_sq_Z < -1e-12) {
            throw Error(ErrorCode::InternalInvariant, "minimum variance is negative",
                        "sigma^2_Z = " + std::to_string(sigma_sq_Z));
        }
        sigma_sq_Z = 0.0;
    }
    return {mu_Z, sigma_sq_Z};
}

SpecialPortfolios solve_special_portfolios(const GramMarket& mkt) {
    const Solves s = solve_both(mkt);
    const PortfolioY y = make_Y(mkt, s);
    const PortfolioX x = make_X(mkt, s);

    SpecialPortfolios sp;
    sp.w_Y = y.weights;
    sp.w_X = x.weights;
    sp.mu_Y = y.mean;
    sp.omega_sq_Y = y.second_moment;
    sp.hr_sq_Y = y.mean * y.mean / y.second_moment;
    sp.hr_sq_X = x.hr_sq;
    sp.degenerate = x.hr_sq <= kDegenerateTolerance;

    const auto [mu_Z, sigma_sq_Z] = minimum_variance_stats(frontier_stats(sp));
    sp.mu_Z = mu_Z;
    sp.sigma_sq_Z = sigma_sq_Z;
    sp.lambda_hat = mu_Z;
    sp.w_Z = sp.w_Y + mu_Z * sp.w_X;

    sp.max_hr_attained = sp.mu_Y != 0.0;
    if (sp.max_hr_attained) sp.max_hr_lambda = sp.omega_sq_Y / sp.mu_Y;
    return sp;
}

FrontierStats frontier_stats(const SpecialPortfolios& sp) {
    return {sp.mu_Y, sp.omega_sq_Y, sp.hr_sq_X};
}

double FrontierCoefficients::omega_sq(double mu) const noexcept {
    const double d = mu - mu_Y;
    return omega_sq_Y + inv_hr_sq_X * d * d;
}

double FrontierCoefficients::sigma_sq(double mu) const noexcept {
    const double d = mu - mu_Z;
    return sigma_sq_Z + inv_sr_sq_X * d * d;
}

FrontierCoefficients frontier_coefficients(const FrontierStats& fs) {
    if (!(fs.omega_sq_Y > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "omega^2_Y must be positive");
    }
    if (fs.hr_sq_X < 0.0) throw Error(ErrorCode::InvalidInput, "HR^2_X must be non-negative");
    const auto [mu_Z, sigma_sq_Z] = minimum_variance_stats(fs);

    FrontierCoefficients fc;
    fc.omega_sq_Y = fs.omega_sq_Y;
    fc.mu_Y = fs.mu_Y;
    fc.sigma_sq_Z = sigma_sq_Z;
    fc.mu_Z = mu_Z;
    fc.degenerate = fs.hr_sq_X <= kDegenerateTolerance;
    if (!fc.degenerate) {
        fc.inv_hr_sq_X = 1.0 / fs.hr_sq_X;
        fc.inv_sr_sq_X = (1.0 - fs.hr_sq_X) / fs.hr_sq_X;
    }
    return fc;
}

FrontierCoefficients frontier_coefficients(const SpecialPortfolios& sp) {
    return frontier_coefficients(frontier_stats(sp));
}

std::vector<FrontierPoint> frontier_points(const FrontierCoefficients& fc, const std::vector<double>& mu_grid) {
    std::vector<FrontierPoint> out;
    if (fc.degenerate) {
        const double variance = std::max(0.0, fc.omega_sq_Y - fc.mu_Y * fc.mu_Y);
        out.push_back({fc.mu_Y, std::sqrt(fc.omega_sq_Y), std::sqrt(variance)});
        return out;
    }
    out.reserve(mu_grid.size());
    for (double mu : mu_grid) {
        const double omega_sq = fc.omega_sq(mu);
        const double sigma_sq = fc.sigma_sq(mu);
        const double gap = omega_sq - mu * mu - sigma_sq;
        if (std::abs(gap) > 1e-10 * std::max(1.0, omega_sq)) {
            throw Error(ErrorCode::InternalInvariant, "frontier parabolas disagree",
                        "mu = " + std::to_string(mu) + ", gap = " + std::to_string(gap));
        }
        out.push_back({mu, std::sqrt(omega_sq), std::sqrt(std::max(0.0, sigma_sq))});
    }
    return out;
}

HansenBoundReport check_hansen_bound(const SpecialPortfolios& sp) {
    HansenBoundReport r;
    r.sum = sp.hr_sq_X + sp.hr_sq_Y;
    r.slack = 1.0 - r.sum;
    r.pass = r.sum <= 1.0 + kHansenBoundTolerance;
    return r;
}

}  // namespace hansen
