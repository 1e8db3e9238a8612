#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vacuumlab/quadrature.hpp"
#include "vacuumlab/vacuum.hpp"

namespace vacuumlab::coulomb {

// Generalized Coulomb potentials in dimensionless units. Every potential is
// q⟨φ_gC⟩, i.e. it carries q_ph² and the attractive sign of −q_ph²/(4πr).

double potential_box(double q_ph, double k1, double k2, double r);

// Closed form through K₀ at 2λ√(1 ± ir/y0), principal square root.
// Throws BranchError when the two kernel values are not a conjugate pair.
double potential_lorentz(double q_ph, double lambda2, double y0, double r);

// Dispatches on the profile kind.
double potential(const vacuum::VacuumProfile& profile, double q_ph, double r);

// −(q_ph²/2π²r) ∫ χ(κ) sin(κr)/κ dκ by quadrature, for any profile.
double potential_quadrature(const vacuum::VacuumProfile& profile, double q_ph, double r,
                            const QuadratureSpec& spec = {});

// ⟨φ_gC(r)⟩ for a bare charge q.
double mean_field(const vacuum::VacuumProfile& profile, double q, double r);

// Compensating field of the standard representation, θ(0) = 1/2.
double compensating_field_closed(double q, double r, double dt);

// Vacuum average q∫d³k/((2π)³|𝐤|²)|O₀|²cos(|𝐤|dt − 𝐤·𝐱) by quadrature.
double compensating_field_avg(const vacuum::VacuumProfile& profile, double q, double r,
                              double dt, const QuadratureSpec& spec = {});

// Bisection root of `potential` in [r_lo, r_hi] to 1e-10 relative.
// Throws NoSignChange if both ends have the same sign.
double sign_change_radius(const std::function<double(double)>& potential, double r_lo,
                          double r_hi);

// Expands r_hi geometrically from `r_start` until the sign flips, then
// bisects. Throws NoSignChange after `max_steps` expansions.
double first_sign_change(const std::function<double(double)>& potential, double r_start,
                         double growth = 1.25, int max_steps = 400);

// 0 ≤ π(1 − e^{−r/λ_min}) − Si(k1 r) at every grid point, all in units of ℓ.
bool yukawa_bound_check(double k1, double lambda_min_ratio, const std::vector<double>& r_grid);

struct PotentialCurve {
  std::vector<double> r_values;
  std::vector<double> v_values;
  std::string profile_tag;
};

PotentialCurve potential_curve(const vacuum::VacuumProfile& profile, double q_ph,
                               const std::vector<double>& r_values);

}  // namespace vacuumlab::coulomb
