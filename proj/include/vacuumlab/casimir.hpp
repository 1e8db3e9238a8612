#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "vacuumlab/quadrature.hpp"
#include "vacuumlab/vacuum.hpp"

namespace vacuumlab::casimir {

// Physical constants used for unit conversion (CODATA 2018).
inline constexpr double kHbar = 1.054571817e-34;        // J s
inline constexpr double kSpeedOfLight = 299792458.0;    // m/s
inline constexpr double kPlanckLength = 1.616255e-35;   // m

// r(k) = 1/(1 − 2ik/α)² for a delta mirror of strength α.
std::complex<double> reflection_coeff(double k, double alpha);

// 1+1 pressure between two delta mirrors a distance L apart, as the sum of
// the multiple-reflection integrals ∫₀^∞ k rⁿ e^{2nikL} dk + c.c. Each term
// is taken on the imaginary k axis, where it is real and positive, and the
// 1/n² tail of the sum is closed with the Euler–Maclaurin formula in n.
double pressure_1p1_series(double alpha, double L, const QuadratureSpec& spec = {});

// Same pressure by quadrature of the resummed integrand
// (1/2π)·2k·Re[q/(1 − q)], q = r e^{2ikL}: along the real axis through the
// first resonance peaks, then up a vertical ray where the tail decays.
double pressure_1p1_quad(double alpha, double L, const QuadratureSpec& spec = {});

// The real-axis integrand of pressure_1p1_quad.
double integrand_1p1(double k, double alpha, double L);

// Full width at half maximum, in k, of resonance peak m ≥ 1 of
// (1 − |r|²)/|1 − r e^{2ikL}|².
double peak_width_1p1(double alpha, double L, int m);

struct SweepRow {
  double alpha, L, p_series, p_quad, p_comb16, p_em24;
};

std::vector<SweepRow> alpha_sweep_1p1(double L, const std::vector<double>& alphas,
                                      const QuadratureSpec& spec = {});

enum class Endpoint { Sixteen, TwentyFour };

// The analytic endpoint closest to the last row of a sweep.
Endpoint nearest_endpoint(const SweepRow& row);

// Dirichlet comb with a cutoff K = Jπ/L + κ:
// (−L²κ² + Jπ(π − 2Lκ))/(4L²π). Finite as J → ∞ only for κ = π/(2L).
double pressure_dirichlet_comb(double L, double kappa, int J);

// −(1/2π)(π²/L²)(B₂/2) = −π/(24L²).
double pressure_euler_maclaurin(double L);

struct EulerMaclaurinGap {
  double gap;     // Σ₀ᴺ f(n) − [f(N) + f(0)]/2 − ∫₀ᴺ f
  double series;  // Σⱼ B₂ⱼ/(2j)!·[f^{(2j−1)}(N) − f^{(2j−1)}(0)], j ≤ orders
};

// `derivative(m, x)` must return f^{(m)}(x) for odd m up to 2·orders − 1.
// orders ≤ 10.
EulerMaclaurinGap euler_maclaurin_gap(const std::function<double(double)>& f,
                                      const std::function<double(int, double)>& derivative,
                                      int N, int orders, const QuadratureSpec& spec = {});

struct PressureBreakdown {
  double total;
  double leading;             // −Zπ²/(240L⁴)
  double y0_corrections;      // powers of y0/L at λ² = 0
  double lambda2_correction;  // first order in λ²
  int terms_used;
};

// 3+1 pressure for a LorentzExp profile (λ² = 0 allowed through the
// aggregate form). Requires y0/L < 0.1.
PressureBreakdown pressure_3p1(const vacuum::VacuumProfile& profile, double L,
                               const QuadratureSpec& spec = {});

// 2/3 − Σⱼ Δx (jΔx)² E₁(jΔx): the stairs-versus-area gap of x²Γ(0, x).
double stairs_gap(double dx);

// The same pressure from the unexpanded j-sum of Γ(1, jπy0/L, λ²) minus the
// K₄ term. Loses (y0/L)⁴ relative precision to cancellation, so it is a
// cross-check for moderate y0/L only.
double pressure_3p1_direct(const vacuum::VacuumProfile& profile, double L,
                           const QuadratureSpec& spec = {});

// Dimensionless pressure times ħc/ℓ⁴, in Pa.
double to_physical_pressure(double p_dimensionless);

}  // namespace vacuumlab::casimir
