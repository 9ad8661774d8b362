#pragma once

#include "breather/radial.hpp"

#include <Eigen/Dense>

namespace breather {

/// Far-field data of a radial Helmholtz solution,
///   r u(r) ~ A sin(r sqrt(mu)) + B cos(r sqrt(mu)) + O(1/r),
/// reported as the sine/cosine kernel coefficients alpha = 4 pi A,
/// beta = 4 pi B and the amplitude/phase pair u ~ c sin(r sqrt(mu) + sigma)/r
/// with sigma in [0, pi) and the sign absorbed into c.
struct FarFieldData {
    double alpha = 0.0;
    double beta = 0.0;
    double c = 0.0;
    double sigma = 0.0;
    double fit_residual = 0.0;
};

/// Fundamental radial profiles sin(r sqrt(mu))/(4 pi r), cos(r sqrt(mu))/(4 pi r).
RadialFn sine_profile(const GridPtr& g, double mu);
RadialFn cosine_profile(const GridPtr& g, double mu);

/// Convolution with the cosine kernel: w solves -Δw - mu w = f and carries a
/// pure-cosine far field of size 4 pi sqrt(pi/2) f_hat(sqrt(mu)).
RadialFn convolve_cosine_kernel(double mu, const RadialFn& f);

/// Convolution with the sine kernel: collapses to the exact multiple
/// 4 pi sqrt(pi/2) f_hat(sqrt(mu)) of the sine profile (a Herglotz wave).
RadialFn convolve_sine_kernel(double mu, const RadialFn& f);

/// Far-field resolvent of -Δu - mu u = f selecting phase tau in (0, pi):
/// r u(r) ~ c sin(r sqrt(mu) + tau) with c = (1/sin tau) sqrt(pi/2) f_hat(sqrt(mu)).
RadialFn helmholtz_resolve(double mu, double tau, const RadialFn& f);

/// Resolvent of -Δu + mass_sq u = f (exponentially decaying kernel).
RadialFn schrodinger_resolve(double mass_sq, const RadialFn& f);

/// Least-squares fit of r u(r) against {sin(r sqrt(mu)), cos(r sqrt(mu))} over
/// [w_lo, w_hi]*r_max. Requires at least 8 oscillation periods in the window.
FarFieldData far_field(double mu, const RadialFn& u, double w_lo = 0.6, double w_hi = 0.9);

/// Periods of the mu-oscillation inside the default fit window.
double far_field_window_periods(double mu, const RadialGrid& g,
                                double w_lo = 0.6, double w_hi = 0.9);

/// Dense n-by-n matrices of the operators above acting on node samples;
/// the structural second route used by the dense-Jacobian assembly and the
/// singular-value oracles. Row i reproduces the O(n) sweep at node i.
Eigen::MatrixXd helmholtz_resolve_matrix(double mu, double tau, const RadialGrid& g);
Eigen::MatrixXd schrodinger_resolve_matrix(double mass_sq, const RadialGrid& g);

/// Row functional q -> 4 pi sqrt(pi/2) (q-integrand) used by the rank-one
/// sine-kernel convolution: weights such that w . f = 4 pi sqrt(pi/2) f_hat(sqrt(mu)).
Eigen::VectorXd sine_kernel_strength_weights(double mu, const RadialGrid& g);

/// Least-squares row functionals for (alpha, beta) on a grid: rows A and B with
/// A . u = far-field sine coefficient (times 4 pi), as used by far_field.
std::pair<Eigen::VectorXd, Eigen::VectorXd> far_field_functional_rows(
    double mu, const RadialGrid& g, double w_lo = 0.6, double w_hi = 0.9);

}  // namespace breather
