#pragma once

#include <utility>

#include "vacuumlab/quadrature.hpp"

namespace vacuumlab::vacuum {

enum class ProfileKind { BoxShell, LorentzExp };

// Rest-frame vacuum profile |O₀(𝐤)|² depending on κ = |𝐤| only. Build with
// the make_* functions; the aggregate form exists for deliberately invalid
// profiles (e.g. a box without infrared cutoff).
struct VacuumProfile {
  ProfileKind kind = ProfileKind::BoxShell;
  double k1 = 0.0;
  double k2 = 0.0;
  double lambda2 = 0.0;
  double y0 = 0.0;
  double Z = 0.0;           // peak of the density
  double norm_const = 0.0;  // |C|²

  double lambda() const;
};

VacuumProfile make_lorentz_profile(double lambda2, double y0);
VacuumProfile make_box_profile(double k1, double k2);

double density(const VacuumProfile& profile, double k_abs);
double cutoff(const VacuumProfile& profile, double k_abs);

// κ where the density peaks (λ/y0 for LorentzExp; shell midpoint for a box).
double peak_momentum(const VacuumProfile& profile);

// Radial range outside which the density is below e^{-60}·Z.
std::pair<double, double> effective_support(const VacuumProfile& profile);

// ∫ dk density·|𝐤|^{-power}, dk = d³k/((2π)³2|𝐤|). power = 0 is the
// normalization.
double radial_moment(const VacuumProfile& profile, int power, const QuadratureSpec& spec = {});

// density/κⁿ → 0 at the origin and ∫ dk density/|𝐤|ⁿ converges there.
bool infrared_condition_check(const VacuumProfile& profile, int n,
                              const QuadratureSpec& spec = {});

double physical_charge(double q, const VacuumProfile& profile);

}  // namespace vacuumlab::vacuum
