#include <cmath>
#include <vector>

#include <doctest.h>

#include "hansen/appendix.hpp"
#include "hansen/error.hpp"
#include "hansen/frontier.hpp"
#include "hansen/kernel.hpp"
#include "support.hpp"

using namespace hansen;
using hansen::testing::Rng;
using hansen::testing::uniform;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected hansen::Error");
    return ErrorCode::InternalInvariant;
}

/// Residual of the constant 1 after weighted least-squares regression on the basis.
std::vector<double> projection_residual(const std::vector<ScenarioPayoff>& basis) {
    const auto probs = basis[0].probabilities();
    const Eigen::Index k = static_cast<Eigen::Index>(probs.size());
    const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
    Matrix a(k, n);
    Vector b(k);
    for (Eigen::Index s = 0; s < k; ++s) {
        const double w = std::sqrt(probs[static_cast<std::size_t>(s)]);
        for (Eigen::Index i = 0; i < n; ++i) a(s, i) = w * basis[static_cast<std::size_t>(i)].value(static_cast<std::size_t>(s));
        b[s] = w;
    }
    const Vector c = a.colPivHouseholderQr().solve(b);
    std::vector<double> v(static_cast<std::size_t>(k));
    for (Eigen::Index s = 0; s < k; ++s) {
        double fit = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) fit += c[i] * basis[static_cast<std::size_t>(i)].value(static_cast<std::size_t>(s));
        v[static_cast<std::size_t>(s)] = 1.0 - fit;
    }
    return v;
}

/// Risk-free asset priced at 1 plus the zero-cost payoff (-0.01, 0.01, 0.11).
GramMarket zero_cost_market() {
    const std::vector<double> p{1.0 / 6, 0.5, 1.0 / 3};
    const ScenarioPayoff rf(p, std::vector<double>{1.0, 1.0, 1.0});
    const ScenarioPayoff w(p, std::vector<double>{-0.01, 0.01, 0.11});
    return gram_from_scenarios({rf, w}, Vector{{1.0, 0.0}});
}

struct PricedMarket {
    GramMarket market;
    ScenarioPayoff positive_kernel;
};

/// Scenario market priced by positive state prices q; the kernel q / P is returned.
PricedMarket priced_market(Rng& rng, std::size_t states, std::size_t assets) {
    const auto probs = hansen::testing::random_probabilities(rng, states);
    std::vector<double> q(states), kernel(states);
    for (std::size_t s = 0; s < states; ++s) {
        q[s] = uniform(rng, 0.05, 0.4);
        kernel[s] = q[s] / probs[s];
    }
    std::vector<ScenarioPayoff> basis;
    Vector prices(static_cast<Eigen::Index>(assets));
    for (std::size_t i = 0; i < assets; ++i) {
        std::vector<double> v(states);
        double price = 0.0;
        for (std::size_t s = 0; s < states; ++s) {
            v[s] = uniform(rng, -0.5, 2.0);
            price += q[s] * v[s];
        }
        prices[static_cast<Eigen::Index>(i)] = price;
        basis.emplace_back(probs, v);
    }
    return {gram_from_scenarios(std::move(basis), prices), ScenarioPayoff(probs, kernel)};
}

}  // namespace

TEST_CASE("complete market has no kernel direction") {
    const std::vector<double> p{0.2, 0.3, 0.5};
    std::vector<ScenarioPayoff> basis{ScenarioPayoff(p, std::vector<double>{1.0, 0.0, 0.0}),
                                      ScenarioPayoff(p, std::vector<double>{1.0, 1.0, 0.0}),
                                      ScenarioPayoff(p, std::vector<double>{0.5, 1.0, 2.0})};
    const GramMarket mkt = gram_from_scenarios(basis, Vector{{0.3, 0.55, 0.9}});
    const KernelFrontier kf = kernel_frontier(mkt);
    for (double v : kf.direction.values()) CHECK(v == 0.0);
    CHECK(kf.hr_sq_V == 0.0);
    const auto diag = check_kernel(kf.kernel(0.0), mkt);
    CHECK(diag.pricing_error < 1e-12);
    CHECK(std::abs(diag.hr_sq_m - diag.hr_bound) < 1e-10);
}

TEST_CASE("moment-matched lift of the three-asset dataset") {
    const auto basis = hansen::testing::moment_matched_basis(appendix::universe());
    const GramMarket lifted = gram_from_scenarios(basis, Vector::Ones(3));
    const GramMarket reference = gram_from_universe(appendix::universe());
    CHECK((lifted.gram() - reference.gram()).cwiseAbs().maxCoeff() < 1e-12);

    const KernelFrontier kf = kernel_frontier(lifted);
    const double expected = 1.0 - 28147713781.0 / 28448540506.0;
    CHECK(std::abs(kf.hr_sq_V - expected) < 1e-10);
    CHECK(kf.hr_sq_V == doctest::Approx(0.01057).epsilon(1e-3));
    const auto oracle = projection_residual(basis);
    for (std::size_t s = 0; s < 4; ++s) CHECK(std::abs(kf.direction.value(s) - oracle[s]) < 1e-12);
    for (const auto& b : basis) CHECK(std::abs(inner_product(kf.direction, b)) < 1e-12);
}

TEST_CASE("single asset on two states") {
    const std::vector<double> p{0.5, 0.5};
    SUBCASE("risk-free asset spans the constant") {
        const GramMarket mkt = gram_from_scenarios({ScenarioPayoff(p, std::vector<double>{1.0, 1.0})}, Vector{{0.9}});
        const KernelFrontier kf = kernel_frontier(mkt);
        for (double v : kf.direction.values()) CHECK(std::abs(v) < 1e-15);
    }
    SUBCASE("risky asset leaves a residual") {
        const ScenarioPayoff b(p, std::vector<double>{1.0, 2.0});
        const GramMarket mkt = gram_from_scenarios({b}, Vector{{1.2}});
        const KernelFrontier kf = kernel_frontier(mkt);
        // c = E[B] / E[B^2] = 0.6, V = 1 - 0.6 B.
        CHECK(kf.direction.value(0) == doctest::Approx(0.4).epsilon(1e-14));
        CHECK(kf.direction.value(1) == doctest::Approx(-0.2).epsilon(1e-14));
        CHECK(kf.hr_sq_V == doctest::Approx(0.1).epsilon(1e-14));
    }
}

TEST_CASE("bounds on the three-asset dataset") {
    const HJBoundReport r = hj_bounds(gram_from_universe(appendix::universe()));
    CHECK(std::abs(r.hr_bound / (1050575.0 / 1632974.0) - 1.0) < 1e-12);
    CHECK(std::abs(r.variance_bound / (582399.0 / 1050575.0) - 1.0) < 1e-12);
    CHECK(r.hr_bound == doctest::Approx(0.64335).epsilon(1e-5));
    CHECK(r.variance_bound == doctest::Approx(0.55436).epsilon(1e-5));
    CHECK(r.kernels.empty());
}

TEST_CASE("bounds without zero-cost opportunity") {
    const HJBoundReport r = hj_bounds(GramMarket(Matrix{{1.0}}, Vector{{1.0}}, Vector{{1.0}}));
    CHECK(r.hr_bound == 1.0);
    CHECK(r.variance_bound == 0.0);
}

TEST_CASE("zero-cost payoff market: variance bound is its squared Sharpe ratio") {
    const GramMarket mkt = zero_cost_market();
    const HJBoundReport r = hj_bounds(mkt);
    CHECK(std::abs(r.variance_bound - 0.64) < 1e-12);
    CHECK(std::abs(r.hr_bound - 25.0 / 41.0) < 1e-12);
    // The constant is traded, so the kernel frontier is the single point Y / omega_Y^2.
    const KernelFrontier kf = kernel_frontier(mkt);
    CHECK(kf.hr_sq_V == 0.0);
    const auto d = check_kernel(kf.base, mkt);
    CHECK(std::abs(d.hr_sq_m - r.hr_bound) < 1e-10);
    REQUIRE(d.var_over_mean_sq);
    CHECK(std::abs(*d.var_over_mean_sq - 0.64) < 1e-10);
}

TEST_CASE("frontier kernels") {
    const GramMarket mkt = gram_from_scenarios(hansen::testing::moment_matched_basis(appendix::universe()), Vector::Ones(3));
    const KernelFrontier kf = kernel_frontier(mkt);
    const SpecialPortfolios sp = solve_special_portfolios(mkt);
    REQUIRE(kf.optimal_eta);
    CHECK(*kf.optimal_eta == doctest::Approx(1.0 / sp.mu_Y));

    SUBCASE("Y / omega_Y^2 prices the market and respects the bound") {
        const auto d = check_kernel(kf.base, mkt);
        CHECK(d.pricing_error < 1e-12);
        CHECK(d.hr_sq_m == doctest::Approx(sp.hr_sq_Y).epsilon(1e-12));
        CHECK(d.hr_pass);
        CHECK(d.pass);
    }
    SUBCASE("optimal eta attains the bound, confirmed by an eta grid") {
        const auto d = check_kernel(kf.kernel(*kf.optimal_eta), mkt);
        CHECK(std::abs(d.hr_sq_m - d.hr_bound) < 1e-10);
        REQUIRE(d.var_over_mean_sq);
        CHECK(std::abs(*d.var_over_mean_sq - d.variance_bound) < 1e-10);
        const auto f = [&](double eta) { return stats(kf.kernel(eta)).hansen_sq(); };
        const double lo = *kf.optimal_eta - 50.0, hi = *kf.optimal_eta + 50.0;
        CHECK(std::abs(hansen::testing::grid_then_refine_max(f, lo, hi, 20000) - d.hr_bound) < 1e-10);
    }
    SUBCASE("zero-mean kernel skips the variance form") {
        const double eta = -kf.base.mean() / kf.direction.mean();
        const auto d = check_kernel(kf.kernel(eta), mkt);
        CHECK_FALSE(d.var_over_mean_sq);
        CHECK_FALSE(d.variance_pass);
        CHECK(d.hr_pass);
        CHECK(d.pass);
    }
}

TEST_CASE("kernel errors") {
    const GramMarket mkt = zero_cost_market();
    const KernelFrontier kf = kernel_frontier(mkt);
    const ScenarioPayoff off = kf.base.scaled(1.01);
    CHECK(code_of([&] { check_kernel(off, mkt); }) == ErrorCode::NotAKernel);
    CHECK(pricing_error(off, mkt) > 1e-3);
    const ScenarioPayoff other({{0.5, 1.0}, {0.5, 1.0}});
    CHECK(code_of([&] { check_kernel(other, mkt); }) == ErrorCode::StateSpaceMismatch);
    const GramMarket plain = gram_from_universe(appendix::universe());
    CHECK(code_of([&] { kernel_frontier(plain); }) == ErrorCode::NotScenarioBacked);
    CHECK(code_of([&] { check_kernel(other, plain); }) == ErrorCode::NotScenarioBacked);
}

TEST_CASE("random scenario markets: every kernel respects both bounds") {
    Rng rng(83);
    int variance_checks = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t states = 3 + trial % 6;
        const std::size_t assets = 1 + trial % (states - 1);
        const PricedMarket pm = priced_market(rng, states, assets);
        const KernelFrontier kf = kernel_frontier(pm.market);
        const HJBoundReport bounds = hj_bounds(pm.market);

        std::vector<ScenarioPayoff> kernels{pm.positive_kernel, kf.base};
        if (kf.optimal_eta) kernels.push_back(kf.kernel(*kf.optimal_eta));
        for (int i = 0; i < 5; ++i) kernels.push_back(kf.kernel(uniform(rng, -20.0, 20.0)));

        const HJBoundReport report = hj_bounds(pm.market, kernels);
        REQUIRE(report.kernels.size() == kernels.size());
        for (const auto& d : report.kernels) {
            CHECK(d.hr_sq_m <= bounds.hr_bound + 1e-10);
            CHECK(d.hr_pass);
            if (d.var_over_mean_sq) {
                ++variance_checks;
                CHECK(*d.var_over_mean_sq >= bounds.variance_bound - 1e-10 * (1.0 + bounds.variance_bound));
                // 1/HR^2 - 1 >= 1/(1 - HR_X^2) - 1 is the same statement.
                CHECK(1.0 / d.hr_sq_m - 1.0 >= 1.0 / bounds.hr_bound - 1.0 - 1e-9);
                CHECK(std::abs(*d.var_over_mean_sq - (1.0 / d.hr_sq_m - 1.0)) < 1e-8 * (1.0 + *d.var_over_mean_sq));
            }
            CHECK(d.pass);
        }
        if (kf.optimal_eta) {
            const auto& opt = report.kernels[2];
            CHECK(std::abs(opt.hr_sq_m - bounds.hr_bound) < 1e-10);
        }
        // Orthogonal decomposition: HR^2 on the kernel frontier never exceeds HR^2_Y + HR^2_V.
        for (int i = 0; i <= 100; ++i) {
            const double eta = -50.0 + i;
            CHECK(stats(kf.kernel(eta)).hansen_sq() <= kf.hr_sq_base + kf.hr_sq_V + 1e-10);
        }
        CHECK(std::abs(kf.hr_sq_V - (1.0 - kf.hr_sq_X - kf.hr_sq_base)) < 1e-10);
    }
    CHECK(variance_checks > 1000);
}
