#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace breather {

/// Weight exponent of the (1+r^2)^{q/2}-weighted supremum norm.
struct WeightOrder {
    double q = 1.0;
};

inline constexpr WeightOrder kX1{1.0};
inline constexpr WeightOrder kX2{2.0};
inline constexpr WeightOrder kX3{3.0};

/// Radial grid on [0, r_max] with graded nodes r_i = r_max * (i/(n-1))^grading.
///
/// Carries quadrature machinery used throughout:
///  - full-interval weights for \int_0^{r_max} g(r) dr (local-cubic composite rule),
///  - per-interval 4-point rules enabling O(n) cumulative (prefix) integrals,
///  - 5-point finite-difference stencils for d/dr and d^2/dr^2, with even
///    extension across r = 0 (valid for radial profiles, u'(0) = 0).
///
/// Immutable after construction.
class RadialGrid {
  public:
    RadialGrid(double r_max, std::size_t n, double grading);

    std::size_t size() const { return nodes_.size(); }
    double r_max() const { return r_max_; }
    double grading() const { return grading_; }
    double node(std::size_t i) const { return nodes_[i]; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double max_spacing() const { return max_spacing_; }

    /// \int_0^{r_max} g dr for g sampled on the nodes.
    double integrate(const std::vector<double>& g) const;

    /// Prefix integrals I[i] = \int_0^{r_i} g dr (I[0] = 0), single O(n) sweep.
    std::vector<double> cumulative_integral(const std::vector<double>& g) const;

    /// The 4-point rule of interval [r_i, r_{i+1}]: weights apply to nodes
    /// [interval_start(i), interval_start(i)+4).
    int interval_start(std::size_t i) const { return interval_start_[i]; }
    const std::array<double, 4>& interval_weights(std::size_t i) const { return interval_w_[i]; }

    /// d/dr and d^2/dr^2 at node i from the precomputed 5-point stencil.
    double deriv1(const std::vector<double>& u, std::size_t i) const;
    double deriv2(const std::vector<double>& u, std::size_t i) const;

    /// Relative error of the full-interval rule on r^p (exactness diagnostic).
    double monomial_error(int p) const;

    bool same_as(const RadialGrid& other) const { return this == &other; }

  private:
    double stencil_apply(const std::vector<double>& u, std::size_t i,
                         const std::array<double, 5>& w) const;

    double r_max_ = 0.0;
    double grading_ = 1.0;
    double max_spacing_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    // per-interval rule: 4 weights applied to nodes [start, start+4)
    std::vector<std::array<double, 4>> interval_w_;
    std::vector<int> interval_start_;
    // per-node stencils: 5 weights on conceptual nodes [base, base+5),
    // base may be negative (even reflection across r=0)
    std::vector<std::array<double, 5>> d1_;
    std::vector<std::array<double, 5>> d2_;
    std::vector<int> stencil_base_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(double r_max, std::size_t n, double grading);

/// Radial profile u(r) sampled on a shared grid. Node 0 sits at r = 0 and
/// holds the limit u(0+); values are immutable by convention once built.
struct RadialFn {
    GridPtr grid;
    std::vector<double> values;
    double origin_value = 0.0;

    RadialFn() = default;
    RadialFn(GridPtr g, std::vector<double> v);

    static RadialFn from_function(const GridPtr& g, const std::function<double(double)>& f);
    static RadialFn zero(const GridPtr& g);
    static RadialFn constant(const GridPtr& g, double c);

    std::size_t size() const { return values.size(); }
    double operator()(std::size_t i) const { return values[i]; }

    /// Cubic (4-point Lagrange) interpolation at arbitrary r in [0, r_max].
    double sample(double r) const;

    /// Max mismatch between origin_value and the quadratic extrapolation from
    /// the first interior nodes; small for profiles smooth at the origin.
    double origin_consistency() const;
};

RadialFn operator+(const RadialFn& a, const RadialFn& b);
RadialFn operator-(const RadialFn& a, const RadialFn& b);
RadialFn operator*(double c, const RadialFn& a);
RadialFn pointwise(const RadialFn& a, const RadialFn& b);  // a*b

/// Grid-supremum approximation of ||f||_{X_q} = sup (1+r^2)^{q/2} |f|.
double norm_xq(const RadialFn& f, WeightOrder q);

/// Profile of the unitary 3-D radial Fourier transform,
///   f_hat(rho) = sqrt(2/pi) (1/rho) \int_0^{r_max} sin(rho r) f(r) r dr.
double fourier_profile(const RadialFn& f, double rho);

/// Max over interior nodes (outer 20% excluded) of
///   | -u'' - (2/r) u' - mu_signed * u - f |,
/// using the grid's 5-point stencils; at r = 0 the Laplacian limit -3 u''(0).
double radial_residual(const RadialFn& u, double mu_signed, const RadialFn& f);

/// Fraction of \int |f| r^2 dr carried by the outer 10% of the domain;
/// flags profiles whose tail the quadrature cannot resolve.
double tail_weight_fraction(const RadialFn& f);

void write_csv(const RadialFn& f, const std::string& path);
RadialFn read_csv(const GridPtr& expected_grid, const std::string& path);
RadialFn read_csv_any(const std::string& path);  // builds its own grid from the file

}  // namespace breather
