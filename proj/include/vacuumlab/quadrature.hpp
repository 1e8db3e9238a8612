#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace vacuumlab {

enum class OscillatoryStrategy { SeriesTermwise, FilonSegments };

struct QuadratureSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  int max_subdivisions = 4000;
  OscillatoryStrategy oscillatory_strategy = OscillatoryStrategy::FilonSegments;
};

namespace quad {

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

// Global adaptive Gauss-Kronrod (21 point). Either bound may be infinite.
// Throws NonConvergence when the subdivision budget runs out.
Estimate integrate_estimate(const RealFn& f, double a, double b,
                            const QuadratureSpec& spec);
double integrate(const RealFn& f, double a, double b, const QuadratureSpec& spec);
std::complex<double> integrate_complex(const ComplexFn& f, double a, double b,
                                       const QuadratureSpec& spec);

// Sums the integrals over consecutive breakpoints; use for kinks and peaks.
double integrate_pieces(const RealFn& f, const std::vector<double>& breaks,
                        const QuadratureSpec& spec);

// Shanks transform via Wynn's epsilon algorithm; returns the last stable
// diagonal entry. `partial_sums` must hold at least three values.
double wynn_epsilon(const std::vector<double>& partial_sums);

// ∫_a^∞ f for f oscillating with (asymptotic) half period `half_period`:
// integrates successive half periods and accelerates the partial sums.
double integrate_oscillatory_tail(const RealFn& f, double a, double half_period,
                                  const QuadratureSpec& spec, int max_cycles = 400);

}  // namespace quad
}  // namespace vacuumlab
