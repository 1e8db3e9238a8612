#pragma once

#include <complex>

#include "vacuumlab/quadrature.hpp"

namespace vacuumlab::specfun {

using cdouble = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286061;

// Si(x) = ∫_0^x sin t / t dt.
double sine_integral(double x);

// Ci(x) = γ + ln x + ∫_0^x (cos t − 1)/t dt, x > 0.
double cosine_integral(double x);

// E1(x) = Γ(0, x), x > 0.
double exp_integral_e1(double x);

// Modified Bessel function of the second kind for order 0, 1, 2, 3 or 4.
double bessel_k(int order, double x);

// Principal branch of K0 off the negative real axis.
cdouble bessel_k0_complex(cdouble z);

// Branch `branch` of Lambert W, W e^W = z.
cdouble lambert_w(int branch, cdouble z);

// Γ(α, x, b) = ∫_x^∞ t^{α−1} e^{−t−b/t} dt.
double gen_incomplete_gamma(double alpha, double x, double b,
                            const QuadratureSpec& spec = {});

// Exact B_index for even index in [2, 20] (and B_0 = 1).
double bernoulli_number(int index);

// Second Bernoulli polynomial x² − x + 1/6.
double bernoulli_polynomial_2(double x);

// Periodized second-order remainder kernel on a grid of step dx: on each
// cell ((j−1)dx, j dx] it is x²/2 + dx(1/2 − j)x + d_j with zero cell mean.
double remainder_kernel_p2(double x, double dx);

}  // namespace vacuumlab::specfun
