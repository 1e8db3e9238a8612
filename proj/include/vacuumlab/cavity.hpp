#pragma once

#include <complex>
#include <vector>

namespace vacuumlab::cavity {

using cdouble = std::complex<double>;

// Two delta barriers of strengths alpha (left) and beta (right) a distance
// L apart. `dirichlet` selects the fully reflecting α = β = ∞ limit; alpha
// and beta are then ignored.
struct CavityConfig {
  double alpha = 0.0;
  double beta = 0.0;
  double L = 1.0;
  bool dirichlet = false;
};

enum class Side { Left, Right };

// Plane-wave amplitudes of one scattering solution. Left incidence has A = 1
// and F = 0 (waves A,B left of the cavity, C,D inside, E right of it);
// right incidence has F = 1, A = 0 with B the left-going transmitted wave,
// C,D inside and E the reflected wave.
struct ScatteringCoefficients {
  cdouble A, B, C, D, E, F;
};

// Δ(k) = k² + i(α+β)k + (e^{ikL} − 1)αβ.
cdouble delta_denominator(cdouble k, double alpha, double beta, double L);

// Throws DegenerateMode when |Δ| vanishes relative to its terms.
ScatteringCoefficients scattering_coeffs(double k, const CavityConfig& cfg, Side side);

// Amplitudes of a mode in its three regions: f = plus·e^{ikw} + minus·e^{−ikw}
// with k = |k_z|.
struct RegionAmplitudes {
  cdouble left_plus, left_minus;
  cdouble inner_plus, inner_minus;
  cdouble right_plus, right_minus;
};

// f(k_z, ·): left incidence for k_z > 0, right incidence for k_z < 0, the
// mean of both at k_z = 0. Barriers sit at ±L/4. Requires alpha == beta.
RegionAmplitudes mode_amplitudes(double k_z, const CavityConfig& cfg);
cdouble mode_function(double k_z, double z, const CavityConfig& cfg);
cdouble mode_derivative(double k_z, double z, const CavityConfig& cfg);

// f̃(k_z, z): barriers at ±L/2 with derivative jumps α f̃ and β f̃. Equal to
// the f machinery at (α/2, β/2, 2L).
CavityConfig field_config(const CavityConfig& cfg);
cdouble field_mode(double k_z, double z, const CavityConfig& cfg);

// Residual of k² + 2iαk + (e^{ikL} − 1)α² for complex k.
cdouble resonance_residual(cdouble k, double alpha, double L);

struct Resonance {
  int branch;
  int sign;  // ±1 in W_n(±e^{Lα/2}Lα/2)
  cdouble k;
  double residual;
};

// k_{n,±} = −i(Lα − 2W_n(±e^{Lα/2}Lα/2))/L for n in [n_min, n_max].
std::vector<Resonance> resonance_roots(const CavityConfig& cfg, int n_min, int n_max);

// ∫_{−n}^{n} conj f(l_z, z) f(k_z, z) dz through the boundary terms of the
// Green identity. Requires n > L/4 and k_z² ≠ l_z² (DegenerateMode).
cdouble boundary_inner_product(double l_z, double k_z, double window_n,
                               const CavityConfig& cfg);

// Mean of boundary_inner_product over n ∈ [n_lo, n_hi], in closed form.
cdouble cesaro_inner_product(double l_z, double k_z, double n_lo, double n_hi,
                             const CavityConfig& cfg);

// Coefficient of δ(|k_z| − |l_z|) in the inner product for modes of the
// given signs at common magnitude k. `regular` receives the coefficient of
// the 1/(k − l) pole, which must vanish for the limit to exist.
cdouble delta_channel_coefficient(double k, bool k_positive, bool l_positive,
                                  const CavityConfig& cfg, cdouble* regular = nullptr);

}  // namespace vacuumlab::cavity
