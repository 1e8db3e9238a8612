#pragma once

#include <functional>
#include <vector>

#include "vacuumlab/quadrature.hpp"

namespace vacuumlab::deltaseq {

using RealFn = std::function<double(double)>;

enum class Shape { LambdaTriangle, MShape, ShiftedPair, PrincipalValue };

// One member of a delta-sequence. For MShape the width parameter is ε = 1/n
// and `a` is the value at 0; `j` only matters for ShiftedPair, which is
// ½δ_n(k − j/n) + ½δ_n(−k − j/n) built from the triangle.
struct DeltaFamily {
  Shape shape = Shape::LambdaTriangle;
  long n = 1;
  int j = 0;
  double a = 0.0;
};

DeltaFamily lambda_triangle(long n);
DeltaFamily m_shape(double a, long n);
DeltaFamily shifted_pair(int j, long n);
DeltaFamily principal_value(long n);
DeltaFamily with_index(DeltaFamily family, long n);

// θ(0) = 1/2, sgn(0) = 0.
double heaviside(double x);
double sign(double x);

// Throws DomainError for n < 1, j < 0 or a < 0.
void validate(const DeltaFamily& family);

double eval(const DeltaFamily& family, double k);

// (1/2π)∫ δ_n(k) e^{ikx} dk in closed form.
double fourier(const DeltaFamily& family, double x);

// Half-width of the support; +∞ for PrincipalValue.
double support_radius(const DeltaFamily& family);

// Points where eval is not smooth, sorted, inside the support.
std::vector<double> kinks(const DeltaFamily& family);

// ∫_ℝ fourier(family, x) dx, which must equal eval(family, 0). Integrates
// whole periods and extrapolates the truncation in 1/X.
double fourier_integral(const DeltaFamily& family, const QuadratureSpec& spec);

// Result of a sequential limit. A divergent limit carries no number.
struct LimitValue {
  enum class Kind { Finite, Divergent };
  Kind kind = Kind::Finite;
  double value = 0.0;

  static LimitValue finite(double v) { return {Kind::Finite, v}; }
  static LimitValue divergent() { return {Kind::Divergent, 0.0}; }
  bool is_divergent() const { return kind == Kind::Divergent; }
  bool is_finite() const { return kind == Kind::Finite; }
};

// ∫ δ_n(k) f(k) dk at the family's own index.
double integrate_against(const DeltaFamily& family, const RealFn& f,
                         const QuadratureSpec& spec);

// lim_n ∫ δ_n f; the family's index is ignored. Throws NonConvergence when
// the sweep does not settle.
double filtering_integral(const DeltaFamily& family, const RealFn& f,
                          const QuadratureSpec& spec);

// Nested limit of ∫ Π_i δ^{(i)}_{n_i}(k) f(k) dk. Factors are listed
// outermost first; the last factor's index is swept to convergence first.
// All factors must share an equivalence class (their δ(0) value), otherwise
// IncompatibleClasses. PrincipalValue factors are rejected with DomainError.
LimitValue nested_product_limit(const std::vector<DeltaFamily>& factors,
                                const RealFn& f, const QuadratureSpec& spec);

enum class LimitOrder { LastInnermost, FirstInnermost };

LimitValue power_filtering_integral(const DeltaFamily& family, int power,
                                    const RealFn& f, const QuadratureSpec& spec,
                                    LimitOrder order = LimitOrder::LastInnermost);

// δ*_{nm}(k) = ∫ δ_n(k − k′) δ_m(k′) dk′ with fam1 at index n, fam2 at m.
double convolve_eval(const DeltaFamily& fam1, long n, const DeltaFamily& fam2,
                     long m, double k, const QuadratureSpec& spec);

// lim_m δ*_{nm}(k) with n fixed.
LimitValue convolve_inner_limit(const DeltaFamily& fam1, long n,
                                const DeltaFamily& fam2, double k,
                                const QuadratureSpec& spec);

// lim_n δ*_{nn}(k).
LimitValue convolve_diagonal_limit(const DeltaFamily& family, double k,
                                   const QuadratureSpec& spec);

struct MeasureDensity {
  RealFn rho;
  bool is_constant = false;
};

bool measure_consistency_check(const MeasureDensity& rho, double a);

// ∫ dμ(p′) δ(p, p′) δ(p + k, p′ + k) f(p′) with the measure-adapted M-shaped
// sequence δ_n(p, p′) = ρ(p′)^{-1} δ(p − p′, aρ(p), 1/n). With
// LastInnermost the second delta's index goes to infinity first.
LimitValue measure_product_integral(const MeasureDensity& rho, double a,
                                    double p, double k, const RealFn& f,
                                    LimitOrder order, const QuadratureSpec& spec);

struct RootWeight {
  double root;
  double weight;
};

// Weights 1/|f′(k_l)| of δ[f(k)] = Σ δ(k − k_l)/|f′(k_l)|. Throws
// SingularRoot when |f′(k_l)| < derivative_tol and DomainError when a
// supplied point is not a root or is repeated.
std::vector<RootWeight> composed_delta_weights(const RealFn& f,
                                               const RealFn& f_prime,
                                               const std::vector<double>& roots,
                                               double derivative_tol = 1e-10);

}  // namespace vacuumlab::deltaseq
