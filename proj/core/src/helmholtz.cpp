#include "breather/helmholtz.hpp"

#include <cmath>
#include <stdexcept>

namespace breather {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

void require_mu(double mu, const char* who) {
    if (mu <= 0.0) throw std::invalid_argument(std::string(who) + ": mu must be positive");
}

}  // namespace

RadialFn sine_profile(const GridPtr& g, double mu) {
    require_mu(mu, "sine_profile");
    const double kappa = std::sqrt(mu);
    return RadialFn::from_function(g, [kappa](double r) {
        return r > 0.0 ? std::sin(kappa * r) / (kFourPi * r) : kappa / kFourPi;
    });
}

RadialFn cosine_profile(const GridPtr& g, double mu) {
    require_mu(mu, "cosine_profile");
    const double kappa = std::sqrt(mu);
    // 1/r pole at the origin; the node-0 sample is a placeholder, not a limit.
    return RadialFn::from_function(g, [kappa](double r) {
        return r > 0.0 ? std::cos(kappa * r) / (kFourPi * r) : 0.0;
    });
}

RadialFn convolve_cosine_kernel(double mu, const RadialFn& f) {
    require_mu(mu, "convolve_cosine_kernel");
    const RadialGrid& g = *f.grid;
    const double kappa = std::sqrt(mu);
    const std::size_t n = g.size();
    std::vector<double> gsin(n), gcos(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = g.node(i);
        gsin[i] = r * f.values[i] * std::sin(kappa * r);
        gcos[i] = r * f.values[i] * std::cos(kappa * r);
    }
    const auto A = g.cumulative_integral(gsin);
    const auto B = g.cumulative_integral(gcos);
    const double b_tot = B.back();
    std::vector<double> u(n);
    u[0] = b_tot;
    for (std::size_t i = 1; i < n; ++i) {
        const double r = g.node(i);
        u[i] = (std::cos(kappa * r) * A[i] + std::sin(kappa * r) * (b_tot - B[i])) / (kappa * r);
    }
    return RadialFn(f.grid, std::move(u));
}

RadialFn convolve_sine_kernel(double mu, const RadialFn& f) {
    require_mu(mu, "convolve_sine_kernel");
    const double strength = kFourPi * std::sqrt(M_PI / 2.0) * fourier_profile(f, std::sqrt(mu));
    return strength * sine_profile(f.grid, mu);
}

RadialFn helmholtz_resolve(double mu, double tau, const RadialFn& f) {
    require_mu(mu, "helmholtz_resolve");
    if (!(tau > 0.0 && tau < M_PI))
        throw std::invalid_argument("helmholtz_resolve: tau must lie in (0, pi)");
    const RadialGrid& g = *f.grid;
    const double kappa = std::sqrt(mu);
    const double s_tau = std::sin(tau);
    const std::size_t n = g.size();
    std::vector<double> gsin(n), gtau(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = g.node(i);
        gsin[i] = r * f.values[i] * std::sin(kappa * r);
        gtau[i] = r * f.values[i] * std::sin(kappa * r + tau);
    }
    const auto A = g.cumulative_integral(gsin);
    const auto C = g.cumulative_integral(gtau);
    const double c_tot = C.back();
    std::vector<double> u(n);
    u[0] = c_tot / s_tau;
    for (std::size_t i = 1; i < n; ++i) {
        const double r = g.node(i);
        u[i] = (std::sin(kappa * r + tau) * A[i] + std::sin(kappa * r) * (c_tot - C[i])) /
               (kappa * s_tau * r);
    }
    return RadialFn(f.grid, std::move(u));
}

RadialFn schrodinger_resolve(double mass_sq, const RadialFn& f) {
    if (mass_sq <= 0.0)
        throw std::invalid_argument("schrodinger_resolve: mass_sq must be positive");
    const RadialGrid& g = *f.grid;
    const double kappa = std::sqrt(mass_sq);
    const std::size_t n = g.size();

    std::vector<double> gexp(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = g.node(i);
        gexp[i] = r * f.values[i] * std::exp(-kappa * r);
    }
    const double J = g.integrate(gexp);

    // Forward/backward exponentially damped sweeps; every factor stays below
    // e^{O(kappa h)}, so no large intermediates regardless of kappa * r_max.
    std::vector<double> I1(n, 0.0), I2(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double rn = g.node(i + 1);
        const auto& w = g.interval_weights(i);
        const int st = g.interval_start(i);
        double local = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double s = g.node(st + j);
            local += w[j] * s * f.values[st + j] * std::exp(-kappa * (rn - s));
        }
        I1[i + 1] = std::exp(-kappa * (rn - g.node(i))) * I1[i] + local;
    }
    for (std::size_t ii = n - 1; ii-- > 0;) {
        const double ri = g.node(ii);
        const auto& w = g.interval_weights(ii);
        const int st = g.interval_start(ii);
        double local = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double s = g.node(st + j);
            local += w[j] * s * f.values[st + j] * std::exp(-kappa * (s - ri));
        }
        I2[ii] = std::exp(-kappa * (g.node(ii + 1) - ri)) * I2[ii + 1] + local;
    }

    std::vector<double> u(n);
    u[0] = J;
    for (std::size_t i = 1; i < n; ++i) {
        const double r = g.node(i);
        u[i] = (I1[i] + I2[i] - std::exp(-kappa * r) * J) / (2.0 * kappa * r);
    }
    return RadialFn(f.grid, std::move(u));
}

double far_field_window_periods(double mu, const RadialGrid& g, double w_lo, double w_hi) {
    return (w_hi - w_lo) * g.r_max() * std::sqrt(mu) / (2.0 * M_PI);
}

FarFieldData far_field(double mu, const RadialFn& u, double w_lo, double w_hi) {
    require_mu(mu, "far_field");
    const RadialGrid& g = *u.grid;
    if (far_field_window_periods(mu, g, w_lo, w_hi) < 8.0)
        throw std::runtime_error("far_field: fit window shorter than 8 oscillation periods");
    const double kappa = std::sqrt(mu);
    const double lo = w_lo * g.r_max(), hi = w_hi * g.r_max();

    std::vector<double> s, c, y;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = g.node(i);
        if (r < lo || r > hi) continue;
        s.push_back(std::sin(kappa * r));
        c.push_back(std::cos(kappa * r));
        y.push_back(r * u.values[i]);
    }
    const auto m = static_cast<Eigen::Index>(y.size());
    Eigen::MatrixXd M(m, 2);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        M(i, 0) = s[i];
        M(i, 1) = c[i];
        rhs(i) = y[i];
    }
    const Eigen::Vector2d ab = M.colPivHouseholderQr().solve(rhs);
    const double A = ab(0), B = ab(1);

    FarFieldData out;
    out.alpha = kFourPi * A;
    out.beta = kFourPi * B;
    double sigma = std::atan2(B, A);
    double amp = std::hypot(A, B);
    if (sigma < 0.0) {
        sigma += M_PI;
        amp = -amp;
    }
    if (sigma >= M_PI) {
        sigma -= M_PI;
        amp = -amp;
    }
    out.sigma = sigma;
    out.c = amp;
    const double norm_y = rhs.norm();
    out.fit_residual = norm_y > 0.0 ? (M * ab - rhs).norm() / norm_y : 0.0;
    return out;
}

namespace {

// Cumulative node-weight table: lo(i, j) = weight of node j in \int_0^{r_i}.
Eigen::MatrixXd cumulative_weight_table(const RadialGrid& g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd lo = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) {
        lo.row(i) = lo.row(i - 1);
        const auto& w = g.interval_weights(i - 1);
        const int st = g.interval_start(i - 1);
        for (int j = 0; j < 4; ++j) lo(i, st + j) += w[j];
    }
    return lo;
}

void require_dense_size(const RadialGrid& g, const char* who) {
    if (g.size() > 6000)
        throw std::invalid_argument(std::string(who) + ": grid too large for a dense operator");
}

}  // namespace

Eigen::MatrixXd helmholtz_resolve_matrix(double mu, double tau, const RadialGrid& g) {
    require_mu(mu, "helmholtz_resolve_matrix");
    if (!(tau > 0.0 && tau < M_PI))
        throw std::invalid_argument("helmholtz_resolve_matrix: tau must lie in (0, pi)");
    require_dense_size(g, "helmholtz_resolve_matrix");
    const double kappa = std::sqrt(mu);
    const double s_tau = std::sin(tau);
    const auto n = static_cast<Eigen::Index>(g.size());
    const Eigen::MatrixXd lo = cumulative_weight_table(g);

    Eigen::VectorXd ssin(n), stau(n), r(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        r(j) = g.node(j);
        ssin(j) = std::sin(kappa * r(j));
        stau(j) = std::sin(kappa * r(j) + tau);
    }
    Eigen::MatrixXd M(n, n);
    for (Eigen::Index i = 1; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double t_lo = lo(i, j);
            const double t_hi = lo(n - 1, j) - t_lo;
            const double v = stau(i) * t_lo * ssin(j) + ssin(i) * t_hi * stau(j);
            M(i, j) = v * r(j) / (kappa * s_tau * r(i));
        }
    }
    for (Eigen::Index j = 0; j < n; ++j) M(0, j) = lo(n - 1, j) * stau(j) * r(j) / s_tau;
    return M;
}

Eigen::MatrixXd schrodinger_resolve_matrix(double mass_sq, const RadialGrid& g) {
    if (mass_sq <= 0.0)
        throw std::invalid_argument("schrodinger_resolve_matrix: mass_sq must be positive");
    require_dense_size(g, "schrodinger_resolve_matrix");
    const double kappa = std::sqrt(mass_sq);
    const auto n = static_cast<Eigen::Index>(g.size());
    const Eigen::MatrixXd lo = cumulative_weight_table(g);

    Eigen::VectorXd r(n);
    for (Eigen::Index j = 0; j < n; ++j) r(j) = g.node(j);
    Eigen::MatrixXd M(n, n);
    for (Eigen::Index i = 1; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double t_lo = lo(i, j);
            const double t_hi = lo(n - 1, j) - t_lo;
            const double m1 = t_lo * std::exp(-kappa * (r(i) - r(j)));
            const double m2 = t_hi * std::exp(-kappa * (r(j) - r(i)));
            const double m3 = lo(n - 1, j) * std::exp(-kappa * (r(i) + r(j)));
            M(i, j) = (m1 + m2 - m3) * r(j) / (2.0 * kappa * r(i));
        }
    }
    for (Eigen::Index j = 0; j < n; ++j) M(0, j) = lo(n - 1, j) * r(j) * std::exp(-kappa * r(j));
    return M;
}

Eigen::VectorXd sine_kernel_strength_weights(double mu, const RadialGrid& g) {
    require_mu(mu, "sine_kernel_strength_weights");
    const double kappa = std::sqrt(mu);
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::VectorXd w(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double r = g.node(j);
        w(j) = kFourPi / kappa * g.weights()[j] * std::sin(kappa * r) * r;
    }
    return w;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> far_field_functional_rows(
    double mu, const RadialGrid& g, double w_lo, double w_hi) {
    require_mu(mu, "far_field_functional_rows");
    if (far_field_window_periods(mu, g, w_lo, w_hi) < 8.0)
        throw std::runtime_error("far_field_functional_rows: window shorter than 8 periods");
    const double kappa = std::sqrt(mu);
    const double lo = w_lo * g.r_max(), hi = w_hi * g.r_max();
    const auto n = static_cast<Eigen::Index>(g.size());

    // (A, B) = (M^T M)^{-1} M^T D_r restricted to the window, as two rows.
    double ss = 0.0, sc = 0.0, cc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = g.node(i);
        if (r < lo || r > hi) continue;
        const double s = std::sin(kappa * r), c = std::cos(kappa * r);
        ss += s * s;
        sc += s * c;
        cc += c * c;
    }
    const double det = ss * cc - sc * sc;
    Eigen::VectorXd rowA = Eigen::VectorXd::Zero(n), rowB = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = g.node(i);
        if (r < lo || r > hi) continue;
        const double s = std::sin(kappa * r), c = std::cos(kappa * r);
        rowA(i) = (cc * s - sc * c) / det * r;
        rowB(i) = (ss * c - sc * s) / det * r;
    }
    return {rowA, rowB};
}

}  // namespace breather

