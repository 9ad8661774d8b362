#include "breather/radial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace breather {

namespace {

// Fornberg's recursion: weights of derivative orders 0..m at x0 on the given
// nodes. c[j][k] multiplies the sample at node j in the k-th derivative.
void fornberg_weights(double x0, const double* x, int nd, int m,
                      std::vector<std::array<double, 3>>& c) {
    c.assign(nd, {0.0, 0.0, 0.0});
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < nd; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
}

std::vector<double> graded_nodes(double r_max, std::size_t n, double grading) {
    std::vector<double> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(n - 1);
        nodes[i] = r_max * std::pow(t, grading);
    }
    nodes.back() = r_max;
    return nodes;
}

}  // namespace

RadialGrid::RadialGrid(double r_max, std::size_t n, double grading)
    : r_max_(r_max), grading_(grading) {
    if (r_max <= 0.0) throw std::invalid_argument("RadialGrid: r_max must be positive");
    if (n < 16) throw std::invalid_argument("RadialGrid: need at least 16 nodes");
    if (grading < 1.0) throw std::invalid_argument("RadialGrid: grading must be >= 1");

    nodes_ = graded_nodes(r_max, n, grading);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(nodes_[i + 1] > nodes_[i]))
            throw std::invalid_argument("RadialGrid: nodes must be strictly increasing");
        max_spacing_ = std::max(max_spacing_, nodes_[i + 1] - nodes_[i]);
    }

    // Per-interval 4-point rules: integrate the local cubic interpolant over
    // [r_i, r_{i+1}]; composes to an O(h^4) rule and yields prefix integrals
    // in one sweep.
    const std::size_t ni = n - 1;
    interval_w_.resize(ni);
    interval_start_.resize(ni);
    for (std::size_t i = 0; i < ni; ++i) {
        int start = std::clamp(static_cast<int>(i) - 1, 0, static_cast<int>(n) - 4);
        interval_start_[i] = start;
        const double a = nodes_[i], b = nodes_[i + 1];
        const double c = 0.5 * (a + b);
        Eigen::Matrix4d V;
        Eigen::Vector4d mom;
        for (int p = 0; p < 4; ++p) {
            for (int j = 0; j < 4; ++j) V(p, j) = std::pow(nodes_[start + j] - c, p);
            mom(p) = (std::pow(b - c, p + 1) - std::pow(a - c, p + 1)) / (p + 1);
        }
        Eigen::Vector4d w = V.partialPivLu().solve(mom);
        for (int j = 0; j < 4; ++j) interval_w_[i][j] = w(j);
    }

    weights_.assign(n, 0.0);
    for (std::size_t i = 0; i < ni; ++i)
        for (int j = 0; j < 4; ++j) weights_[interval_start_[i] + j] += interval_w_[i][j];

    // 5-point stencils with even reflection across r = 0.
    d1_.resize(n);
    d2_.resize(n);
    stencil_base_.resize(n);
    std::vector<std::array<double, 3>> c;
    for (std::size_t i = 0; i < n; ++i) {
        int base = std::clamp(static_cast<int>(i) - 2, -2, static_cast<int>(n) - 5);
        stencil_base_[i] = base;
        double x[5];
        for (int j = 0; j < 5; ++j) {
            int idx = base + j;
            x[j] = idx >= 0 ? nodes_[idx] : -nodes_[-idx];
        }
        fornberg_weights(nodes_[i], x, 5, 2, c);
        for (int j = 0; j < 5; ++j) {
            d1_[i][j] = c[j][1];
            d2_[i][j] = c[j][2];
        }
    }
}

double RadialGrid::integrate(const std::vector<double>& g) const {
    if (g.size() != nodes_.size()) throw std::invalid_argument("integrate: size mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) s += weights_[j] * g[j];
    return s;
}

std::vector<double> RadialGrid::cumulative_integral(const std::vector<double>& g) const {
    if (g.size() != nodes_.size()) throw std::invalid_argument("cumulative_integral: size mismatch");
    std::vector<double> acc(g.size(), 0.0);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const auto& w = interval_w_[i];
        const int st = interval_start_[i];
        s += w[0] * g[st] + w[1] * g[st + 1] + w[2] * g[st + 2] + w[3] * g[st + 3];
        acc[i + 1] = s;
    }
    return acc;
}

double RadialGrid::stencil_apply(const std::vector<double>& u, std::size_t i,
                                 const std::array<double, 5>& w) const {
    const int base = stencil_base_[i];
    double s = 0.0;
    for (int j = 0; j < 5; ++j) {
        int idx = base + j;
        s += w[j] * u[idx >= 0 ? idx : -idx];
    }
    return s;
}

double RadialGrid::deriv1(const std::vector<double>& u, std::size_t i) const {
    return stencil_apply(u, i, d1_[i]);
}

double RadialGrid::deriv2(const std::vector<double>& u, std::size_t i) const {
    return stencil_apply(u, i, d2_[i]);
}

double RadialGrid::monomial_error(int p) const {
    std::vector<double> g(nodes_.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::pow(nodes_[i], p);
    const double exact = std::pow(r_max_, p + 1) / (p + 1);
    return std::abs(integrate(g) - exact) / exact;
}

GridPtr make_grid(double r_max, std::size_t n, double grading) {
    return std::make_shared<const RadialGrid>(r_max, n, grading);
}

RadialFn::RadialFn(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid || values.size() != grid->size())
        throw std::invalid_argument("RadialFn: values do not match grid");
    origin_value = values[0];
}

RadialFn RadialFn::from_function(const GridPtr& g, const std::function<double(double)>& f) {
    std::vector<double> v(g->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g->node(i));
    return RadialFn(g, std::move(v));
}

RadialFn RadialFn::zero(const GridPtr& g) { return constant(g, 0.0); }

RadialFn RadialFn::constant(const GridPtr& g, double c) {
    return RadialFn(g, std::vector<double>(g->size(), c));
}

double RadialFn::sample(double r) const {
    const auto& x = grid->nodes();
    const std::size_t n = x.size();
    if (r <= 0.0) return values[0];
    if (r >= x[n - 1]) return values[n - 1];
    auto it = std::upper_bound(x.begin(), x.end(), r);
    int i = static_cast<int>(it - x.begin()) - 1;
    int base = std::clamp(i - 1, 0, static_cast<int>(n) - 4);
    double p = 0.0;
    for (int j = 0; j < 4; ++j) {
        double lj = 1.0;
        for (int k = 0; k < 4; ++k) {
            if (k == j) continue;
            lj *= (r - x[base + k]) / (x[base + j] - x[base + k]);
        }
        p += lj * values[base + j];
    }
    return p;
}

double RadialFn::origin_consistency() const {
    const auto& x = grid->nodes();
    double p = 0.0;
    for (int j = 1; j <= 3; ++j) {
        double lj = 1.0;
        for (int k = 1; k <= 3; ++k) {
            if (k == j) continue;
            lj *= (0.0 - x[k]) / (x[j] - x[k]);
        }
        p += lj * values[j];
    }
    return std::abs(p - origin_value);
}

namespace {
void require_same_grid(const RadialFn& a, const RadialFn& b, const char* who) {
    if (!a.grid || !b.grid || !a.grid->same_as(*b.grid))
        throw std::invalid_argument(std::string(who) + ": grids mismatch");
}
}  // namespace

RadialFn operator+(const RadialFn& a, const RadialFn& b) {
    require_same_grid(a, b, "operator+");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values[i] + b.values[i];
    return RadialFn(a.grid, std::move(v));
}

RadialFn operator-(const RadialFn& a, const RadialFn& b) {
    require_same_grid(a, b, "operator-");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values[i] - b.values[i];
    return RadialFn(a.grid, std::move(v));
}

RadialFn operator*(double c, const RadialFn& a) {
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * a.values[i];
    return RadialFn(a.grid, std::move(v));
}

RadialFn pointwise(const RadialFn& a, const RadialFn& b) {
    require_same_grid(a, b, "pointwise");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values[i] * b.values[i];
    return RadialFn(a.grid, std::move(v));
}

double norm_xq(const RadialFn& f, WeightOrder q) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = f.grid->node(i);
        m = std::max(m, std::pow(1.0 + r * r, 0.5 * q.q) * std::abs(f.values[i]));
    }
    return m;
}

double fourier_profile(const RadialFn& f, double rho) {
    if (rho <= 0.0) throw std::invalid_argument("fourier_profile: rho must be positive");
    std::vector<double> g(f.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = f.grid->node(i);
        g[i] = std::sin(rho * r) * f.values[i] * r;
    }
    return std::sqrt(2.0 / M_PI) / rho * f.grid->integrate(g);
}

double radial_residual(const RadialFn& u, double mu_signed, const RadialFn& f) {
    require_same_grid(u, f, "radial_residual");
    const RadialGrid& g = *u.grid;
    const double r_cut = 0.8 * g.r_max();
    double m = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = g.node(i);
        if (r > r_cut) break;
        double lap;
        if (i == 0) {
            lap = 3.0 * g.deriv2(u.values, 0);
        } else {
            lap = g.deriv2(u.values, i) + 2.0 / r * g.deriv1(u.values, i);
        }
        m = std::max(m, std::abs(-lap - mu_signed * u.values[i] - f.values[i]));
    }
    return m;
}

double tail_weight_fraction(const RadialFn& f) {
    const RadialGrid& g = *f.grid;
    const double r_cut = 0.9 * g.r_max();
    double total = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = g.node(i);
        const double m = g.weights()[i] * std::abs(f.values[i]) * r * r;
        total += m;
        if (r >= r_cut) tail += m;
    }
    return total > 0.0 ? tail / total : 0.0;
}

void write_csv(const RadialFn& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << "r,value\n";
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < f.size(); ++i)
        out << f.grid->node(i) << ',' << f.values[i] << '\n';
}

namespace {
std::pair<std::vector<double>, std::vector<double>> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("r,value", 0) != 0)
        throw std::runtime_error("read_csv: expected 'r,value' header in " + path);
    std::vector<double> r, v;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("read_csv: malformed row in " + path);
        r.push_back(std::stod(line.substr(0, comma)));
        v.push_back(std::stod(line.substr(comma + 1)));
    }
    return {std::move(r), std::move(v)};
}
}  // namespace

RadialFn read_csv(const GridPtr& expected_grid, const std::string& path) {
    auto [r, v] = parse_csv(path);
    if (r.size() != expected_grid->size())
        throw std::runtime_error("read_csv: node count does not match grid: " + path);
    const double tol = 1e-12 * expected_grid->r_max();
    for (std::size_t i = 0; i < r.size(); ++i)
        if (std::abs(r[i] - expected_grid->node(i)) > tol)
            throw std::runtime_error("read_csv: nodes do not match grid: " + path);
    return RadialFn(expected_grid, std::move(v));
}

RadialFn read_csv_any(const std::string& path) {
    auto [r, v] = parse_csv(path);
    if (r.size() < 16 || r.front() != 0.0)
        throw std::runtime_error("read_csv: grid must start at r=0 with >=16 nodes: " + path);
    // Reconstruct the grading exponent from the second node.
    const std::size_t n = r.size();
    const double t1 = 1.0 / static_cast<double>(n - 1);
    const double g = std::log(r[1] / r.back()) / std::log(t1);
    auto grid = make_grid(r.back(), n, std::max(1.0, g));
    const double tol = 1e-9 * r.back();
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(r[i] - grid->node(i)) > tol)
            throw std::runtime_error("read_csv: nodes are not a graded grid of this toolkit: " + path);
    return RadialFn(grid, std::move(v));
}

}  // namespace breather
