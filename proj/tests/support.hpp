// Random market generators and brute-force oracles shared by the tests.
// Oracles here never call the frontier/kernel/monotone solvers.

#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hansen/market.hpp"
#include "hansen/moments.hpp"

namespace hansen::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<double> random_probabilities(Rng& rng, std::size_t k) {
    std::vector<double> p(k);
    double total = 0.0;
    for (auto& x : p) {
        x = uniform(rng, 0.05, 1.0);
        total += x;
    }
    for (auto& x : p) x /= total;
    return p;
}

inline ScenarioPayoff random_payoff(Rng& rng, std::size_t k, double lo, double hi) {
    const auto p = random_probabilities(rng, k);
    std::vector<double> v(k);
    for (auto& x : v) x = uniform(rng, lo, hi);
    return ScenarioPayoff(p, v);
}

inline AssetUniverse random_universe(Rng& rng, int n) {
    AssetUniverse u;
    u.mean_returns = Vector(n);
    for (int i = 0; i < n; ++i) u.mean_returns[i] = uniform(rng, 0.95, 1.3);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = uniform(rng, -0.15, 0.15);
    u.covariance = a * a.transpose() + 0.002 * Matrix::Identity(n, n);
    return u;
}

/// Gram market with random (positive) prices.
inline GramMarket random_gram_market(Rng& rng, int n) {
    const AssetUniverse u = random_universe(rng, n);
    Vector prices(n);
    for (int i = 0; i < n; ++i) prices[i] = uniform(rng, 0.7, 1.3);
    return GramMarket(u.covariance + u.mean_returns * u.mean_returns.transpose(), u.mean_returns, prices);
}

/// Scenario market priced by random positive state prices, so a strictly
/// positive kernel exists.
inline GramMarket random_scenario_market(Rng& rng, std::size_t states, std::size_t assets) {
    const auto probs = random_probabilities(rng, states);
    std::vector<double> state_prices(states);
    for (auto& q : state_prices) q = uniform(rng, 0.1, 0.5);
    std::vector<ScenarioPayoff> basis;
    Vector prices(static_cast<Eigen::Index>(assets));
    for (std::size_t i = 0; i < assets; ++i) {
        std::vector<double> v(states);
        double price = 0.0;
        for (std::size_t s = 0; s < states; ++s) {
            v[s] = uniform(rng, 0.5, 1.6);
            price += state_prices[s] * v[s];
        }
        prices[static_cast<Eigen::Index>(i)] = price;
        basis.emplace_back(probs, v);
    }
    return gram_from_scenarios(std::move(basis), prices);
}

/// Golden-section maximization of a unimodal f on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        }
    }
    return std::max(fc, fd);
}

/// Dense grid scan followed by golden refinement around the best cell.
inline double grid_then_refine_max(const std::function<double(double)>& f, double lo, double hi, int points) {
    double best = f(lo);
    int best_i = 0;
    const double h = (hi - lo) / points;
    for (int i = 1; i <= points; ++i) {
        const double val = f(lo + h * i);
        if (val > best) {
            best = val;
            best_i = i;
        }
    }
    const double a = lo + h * std::max(0, best_i - 1);
    const double b = lo + h * std::min(points, best_i + 1);
    return std::max(best, golden_max(f, a, b));
}

/// E[X] with plain loops, for oracle use.
inline double expect(const std::vector<double>& p, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * v[i];
    return s;
}

/// HR^2 of a list of values under probabilities p (plain loops).
inline double hr_sq_plain(const std::vector<double>& p, const std::vector<double>& v) {
    double m = 0.0, s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        m += p[i] * v[i];
        s += p[i] * v[i] * v[i];
    }
    return m * m / s;
}

/// HR(W ∧ k) by direct evaluation.
inline double clipped_hr(const ScenarioPayoff& w, double k) {
    double m = 0.0, s = 0.0;
    for (const auto& st : w.states()) {
        const double v = std::min(st.value, k);
        m += st.probability * v;
        s += st.probability * v * v;
    }
    return m / std::sqrt(s);
}

/// Four equiprobable states reproducing a three-asset mean vector and
/// covariance matrix exactly (Hadamard design).
inline std::vector<ScenarioPayoff> moment_matched_basis(const AssetUniverse& u) {
    const Eigen::Matrix<double, 3, 4> z{{1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
    const Matrix l = u.covariance.llt().matrixL();
    const std::vector<double> probs(4, 0.25);
    std::vector<ScenarioPayoff> basis;
    for (int i = 0; i < 3; ++i) {
        std::vector<double> v(4);
        for (int s = 0; s < 4; ++s) v[s] = u.mean_returns[i] + l.row(i).dot(z.col(s));
        basis.emplace_back(probs, v);
    }
    return basis;
}

inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace hansen::testing
