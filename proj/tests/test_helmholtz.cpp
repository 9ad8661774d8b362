#include <doctest.h>

#include "breather/helmholtz.hpp"
#include "breather/radial.hpp"

#include <cmath>
#include <random>

using namespace breather;

namespace {

// Closed-form transform of e^{-r^2}; the (5-4r^2)e^{-r^2} image under
// (-Δ - 1) has transform (rho^2 - 1) * gauss_hat(rho), vanishing at rho = 1.
double gauss_hat(double rho) { return std::pow(2.0, -1.5) * std::exp(-rho * rho / 4.0); }

RadialFn gaussian(const GridPtr& g) {
    return RadialFn::from_function(g, [](double r) { return std::exp(-r * r); });
}

RadialFn helmholtz_gaussian_image(const GridPtr& g) {
    return RadialFn::from_function(
        g, [](double r) { return (5.0 - 4.0 * r * r) * std::exp(-r * r); });
}

}  // namespace

TEST_CASE("cosine-kernel convolution solves the PDE") {
    auto g = make_grid(40.0, 4096, 1.0);
    auto f = helmholtz_gaussian_image(g);
    auto w = convolve_cosine_kernel(1.0, f);
    double fmax = norm_xq(f, WeightOrder{0.0});
    CHECK(radial_residual(w, 1.0, f) <= 1e-6 * fmax);
    CHECK(norm_xq(convolve_cosine_kernel(1.0, RadialFn::zero(g)), kX1) == 0.0);
    CHECK_THROWS_AS(convolve_cosine_kernel(-1.0, f), std::invalid_argument);
}

TEST_CASE("cosine-kernel far field carries the transform strength") {
    auto g = make_grid(180.0, 8192, 1.0);
    // (5-4r^2)e^{-r^2}: transform vanishes at rho=1, so both coefficients fade.
    auto w0 = convolve_cosine_kernel(1.0, helmholtz_gaussian_image(g));
    auto ff0 = far_field(1.0, w0);
    const double scale = 4.0 * M_PI * std::sqrt(M_PI / 2.0) * gauss_hat(1.0);
    CHECK(std::abs(ff0.alpha) < 1e-3 * scale);
    CHECK(std::abs(ff0.beta) < 1e-3 * scale);

    // Plain Gaussian: pure cosine far field of size 4 pi sqrt(pi/2) f_hat(1).
    auto w = convolve_cosine_kernel(1.0, gaussian(g));
    auto ff = far_field(1.0, w);
    CHECK(ff.beta == doctest::Approx(scale).epsilon(1e-6));
    CHECK(std::abs(ff.alpha) < 1e-6 * scale);
}

TEST_CASE("sine-kernel convolution is the exact Herglotz multiple") {
    auto g = make_grid(40.0, 2048, 1.0);
    auto f = helmholtz_gaussian_image(g);
    auto wt = convolve_sine_kernel(1.0, f);
    const double c = 4.0 * M_PI * std::sqrt(M_PI / 2.0) * fourier_profile(f, 1.0);
    auto expect = c * sine_profile(g, 1.0);
    for (std::size_t i : {0u, 100u, 1000u, 2047u})
        CHECK(wt.values[i] == doctest::Approx(expect.values[i]).epsilon(1e-14));
    // Homogeneous solution: residual of (-Δ - mu) wt is zero.
    auto g2 = make_grid(40.0, 2048, 1.0);
    auto smooth = RadialFn::from_function(g2, [](double r) { return std::exp(-0.5 * r * r); });
    auto wt2 = convolve_sine_kernel(2.0, smooth);
    CHECK(radial_residual(wt2, 2.0, RadialFn::zero(g2)) < 1e-7);
    CHECK(norm_xq(convolve_sine_kernel(1.0, RadialFn::zero(g)), kX1) == 0.0);
}

TEST_CASE("helmholtz_resolve: residual, far field, phase selection") {
    auto g = make_grid(180.0, 16384, 1.0);
    auto f = gaussian(g);
    const double fhat = gauss_hat(1.0);
    for (double tau : {M_PI / 4.0, M_PI / 2.0, 3.0 * M_PI / 4.0}) {
        auto u = helmholtz_resolve(1.0, tau, f);
        CHECK(radial_residual(u, 1.0, f) <= 1e-6);
        auto ff = far_field(1.0, u);
        CHECK(std::abs(ff.sigma - tau) < 1e-3);
        const double c_expect = std::sqrt(M_PI / 2.0) * fhat / std::sin(tau);
        CHECK(ff.c == doctest::Approx(c_expect).epsilon(1e-3));
        CHECK(ff.fit_residual < 1e-6);
    }
    CHECK_THROWS_AS(helmholtz_resolve(1.0, 0.0, f), std::invalid_argument);
    CHECK_THROWS_AS(helmholtz_resolve(1.0, M_PI, f), std::invalid_argument);
    CHECK_THROWS_AS(helmholtz_resolve(-2.0, 1.0, f), std::invalid_argument);
    CHECK(norm_xq(helmholtz_resolve(1.0, 1.0, RadialFn::zero(g)), kX1) == 0.0);
}

TEST_CASE("resolvent phase identity: tau=pi/4 vs 3pi/4 differ by 2 sine-kernel terms") {
    auto g = make_grid(60.0, 2048, 1.0);
    auto f = helmholtz_gaussian_image(g);
    auto a = helmholtz_resolve(1.0, M_PI / 4.0, f);
    auto b = helmholtz_resolve(1.0, 3.0 * M_PI / 4.0, f);
    auto two_tilde = 2.0 * convolve_sine_kernel(1.0, f);
    const double scale = std::max(norm_xq(a, kX1), 1e-30);
    for (std::size_t i = 0; i < g->size(); i += 37) {
        CHECK(std::abs(a.values[i] - b.values[i] - two_tilde.values[i]) <= 1e-10 * scale);
    }
}

TEST_CASE("two independent resolvent routes agree") {
    // Direct shifted-sine sweep vs cosine-kernel + cot(tau) * sine-kernel.
    auto g = make_grid(50.0, 1024, 1.0);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double a0 = dist(rng), a1 = dist(rng), a2 = dist(rng);
        auto f = RadialFn::from_function(g, [=](double r) {
            return (a0 + a1 * r + a2 * r * r) * std::exp(-0.7 * r * r);
        });
        for (double mu : {1.0, 7.3}) {
            for (double tau : {0.4, M_PI / 2.0, 2.9}) {
                auto direct = helmholtz_resolve(mu, tau, f);
                auto composed = convolve_cosine_kernel(mu, f) +
                                (1.0 / std::tan(tau)) * convolve_sine_kernel(mu, f);
                const double scale = std::max(norm_xq(direct, WeightOrder{0.0}), 1e-30);
                for (std::size_t i = 0; i < g->size(); i += 101)
                    CHECK(std::abs(direct.values[i] - composed.values[i]) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("all four operators are linear") {
    auto g = make_grid(40.0, 512, 1.0);
    auto f1 = RadialFn::from_function(g, [](double r) { return std::exp(-r * r); });
    auto f2 = RadialFn::from_function(g, [](double r) { return r * r * std::exp(-2.0 * r); });
    const double a = 1.7, b = -0.6;
    RadialFn combo = a * f1 + b * f2;

    auto check_linear = [&](auto op) {
        auto lhs = op(combo);
        auto rhs = a * op(f1) + b * op(f2);
        const double scale = std::max(norm_xq(lhs, WeightOrder{0.0}), 1e-30);
        for (std::size_t i = 0; i < g->size(); i += 53)
            CHECK(std::abs(lhs.values[i] - rhs.values[i]) <= 1e-12 * scale);
    };
    check_linear([](const RadialFn& f) { return convolve_cosine_kernel(2.0, f); });
    check_linear([](const RadialFn& f) { return convolve_sine_kernel(2.0, f); });
    check_linear([](const RadialFn& f) { return helmholtz_resolve(2.0, 0.8, f); });
    check_linear([](const RadialFn& f) { return schrodinger_resolve(2.0, f); });
}

TEST_CASE("schrodinger_resolve recovers the analytic Gaussian pair") {
    auto g = make_grid(40.0, 4096, 1.0);
    auto f = RadialFn::from_function(
        g, [](double r) { return (7.0 - 4.0 * r * r) * std::exp(-r * r); });
    auto u = schrodinger_resolve(1.0, f);
    for (std::size_t i = 0; i < g->size(); ++i) {
        const double r = g->node(i);
        CHECK(std::abs(u.values[i] - std::exp(-r * r)) < 1e-6);
    }
    CHECK(norm_xq(schrodinger_resolve(1.0, RadialFn::zero(g)), kX1) == 0.0);
    CHECK_THROWS_AS(schrodinger_resolve(0.0, f), std::invalid_argument);
    CHECK_THROWS_AS(schrodinger_resolve(-1.0, f), std::invalid_argument);
}

TEST_CASE("schrodinger_resolve output decays") {
    auto g = make_grid(60.0, 2048, 1.0);
    auto f = RadialFn::from_function(g, [](double r) { return std::exp(-0.5 * r * r); });
    auto u = schrodinger_resolve(2.25, f);
    CHECK(std::isfinite(norm_xq(u, kX1)));
    // r*u decays exponentially over the tail window.
    const double v40 = std::abs(g->node(1365) * u.values[1365]);
    const double v55 = std::abs(g->node(1877) * u.values[1877]);
    CHECK(v55 < v40 * std::exp(-1.5 * (g->node(1877) - g->node(1365)) * 0.9));
}

TEST_CASE("scaling bound of the far-field resolvent") {
    // ||R f||_X1 sin(tau) / ((1 + 1/sqrt(mu)) ||f||_X3) stays bounded over the sweep.
    auto g = make_grid(40.0, 4096, 1.0);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double a0 = dist(rng), a1 = dist(rng), s = 0.3 + 0.5 * std::abs(dist(rng));
        auto f = RadialFn::from_function(g, [=](double r) {
            return (a0 + a1 * r * r) * std::exp(-s * r * r);
        });
        const double f3 = norm_xq(f, kX3);
        for (double mu : {1.0, 10.0, 100.0, 1000.0}) {
            for (double tau : {M_PI / 8.0, M_PI / 2.0, 7.0 * M_PI / 8.0}) {
                auto u = helmholtz_resolve(mu, tau, f);
                const double ratio =
                    norm_xq(u, kX1) * std::sin(tau) / ((1.0 + 1.0 / std::sqrt(mu)) * f3);
                worst = std::max(worst, ratio);
            }
        }
    }
    CHECK(worst < 10.0);
    CHECK(worst > 0.0);
}

TEST_CASE("far_field conventions") {
    auto g = make_grid(120.0, 4096, 1.0);
    const double mu = 2.0;

    auto psi = sine_profile(g, mu);
    auto ff = far_field(mu, psi);
    CHECK(ff.alpha == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(ff.beta) < 1e-10);
    CHECK(std::abs(ff.sigma) < 1e-10);

    auto shifted = RadialFn::from_function(g, [mu](double r) {
        return r > 0.0 ? std::sin(std::sqrt(mu) * r + M_PI / 3.0) / r : 0.0;
    });
    auto ff2 = far_field(mu, shifted);
    CHECK(ff2.sigma == doctest::Approx(M_PI / 3.0).epsilon(1e-12));
    CHECK(ff2.c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ff2.fit_residual < 1e-10);

    // Sign convention: phases outside [0, pi) fold back with a negative c.
    auto folded = RadialFn::from_function(g, [mu](double r) {
        return r > 0.0 ? std::sin(std::sqrt(mu) * r + M_PI / 3.0 + M_PI) / r : 0.0;
    });
    auto ff3 = far_field(mu, folded);
    CHECK(ff3.sigma == doctest::Approx(M_PI / 3.0).epsilon(1e-12));
    CHECK(ff3.c == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("far_field rejects short windows") {
    auto g = make_grid(30.0, 512, 1.0);  // window spans only 1.43 periods at mu=1
    auto u = sine_profile(g, 1.0);
    CHECK_THROWS_AS(far_field(1.0, u), std::runtime_error);
    CHECK(far_field_window_periods(1.0, *g) < 8.0);
}

TEST_CASE("dense operator matrices reproduce the O(n) sweeps") {
    auto g = make_grid(30.0, 257, 1.0);
    auto f = RadialFn::from_function(g, [](double r) { return (1.0 - r) * std::exp(-0.4 * r * r); });
    Eigen::VectorXd fv = Eigen::Map<const Eigen::VectorXd>(f.values.data(), f.size());

    auto Mh = helmholtz_resolve_matrix(3.0, 0.7, *g);
    auto uh = helmholtz_resolve(3.0, 0.7, f);
    Eigen::VectorXd prod = Mh * fv;
    for (std::size_t i = 0; i < g->size(); i += 17)
        CHECK(prod(i) == doctest::Approx(uh.values[i]).epsilon(1e-11));

    auto Ms = schrodinger_resolve_matrix(1.0, *g);
    auto us = schrodinger_resolve(1.0, f);
    Eigen::VectorXd prods = Ms * fv;
    for (std::size_t i = 0; i < g->size(); i += 17)
        CHECK(prods(i) == doctest::Approx(us.values[i]).epsilon(1e-11));

    auto wrow = sine_kernel_strength_weights(3.0, *g);
    const double strength = 4.0 * M_PI * std::sqrt(M_PI / 2.0) * fourier_profile(f, std::sqrt(3.0));
    CHECK(wrow.dot(fv) == doctest::Approx(strength).epsilon(1e-12));
}

TEST_CASE("far-field functional rows match the fit") {
    auto g = make_grid(120.0, 2048, 1.0);
    const double mu = 5.0;
    auto u = RadialFn::from_function(g, [mu](double r) {
        return r > 0.0 ? 0.8 * std::sin(std::sqrt(mu) * r + 0.9) / r + std::exp(-r) : 0.0;
    });
    auto ff = far_field(mu, u);
    auto [rowA, rowB] = far_field_functional_rows(mu, *g);
    Eigen::VectorXd uv = Eigen::Map<const Eigen::VectorXd>(u.values.data(), u.size());
    CHECK(4.0 * M_PI * rowA.dot(uv) == doctest::Approx(ff.alpha).epsilon(1e-10));
    CHECK(4.0 * M_PI * rowB.dot(uv) == doctest::Approx(ff.beta).epsilon(1e-10));
}
