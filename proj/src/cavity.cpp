#include "vacuumlab/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vacuumlab/errors.hpp"
#include "vacuumlab/specfun.hpp"

namespace vacuumlab::cavity {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cdouble kI{0.0, 1.0};

// e^{iθ} − 1 without cancellation for small θ.
cdouble expm1_i(double theta) {
  const double s = std::sin(0.5 * theta);
  return {-2.0 * s * s, std::sin(theta)};
}

void require_config(const CavityConfig& cfg) {
  if (!(cfg.L > 0.0) || !std::isfinite(cfg.L)) throw DomainError("cavity: L must be positive");
  if (cfg.dirichlet) return;
  if (!(cfg.alpha >= 0.0) || !(cfg.beta >= 0.0) || !std::isfinite(cfg.alpha) ||
      !std::isfinite(cfg.beta)) {
    throw DomainError("cavity: alpha and beta must be finite and non-negative");
  }
}

void require_symmetric(const CavityConfig& cfg, const char* what) {
  if (!cfg.dirichlet && cfg.alpha != cfg.beta) {
    throw DomainError(std::string(what) + ": only alpha == beta is supported");
  }
}

// Left-incidence amplitudes for finite barriers.
ScatteringCoefficients left_finite(double k, double a, double b, double L) {
  const cdouble em1 = expm1_i(k * L);
  const cdouble delta = k * k + kI * (a + b) * k + em1 * a * b;
  const double scale = k * k + (a + b) * k + 2 * a * b;
  if (std::abs(delta) <= 1e-15 * scale || std::abs(delta) == 0.0) {
    throw DegenerateMode("scattering_coeffs: denominator vanishes at k = " + std::to_string(k));
  }
  const cdouble eh = std::polar(1.0, 0.5 * k * L);
  ScatteringCoefficients c{};
  c.A = 1.0;
  c.B = -kI * std::conj(eh) * (k * (a + (1.0 + em1) * b) - kI * em1 * a * b) / delta;
  c.C = k * (k + kI * b) / delta;
  c.D = -kI * eh * k * b / delta;
  c.E = k * k / delta;
  c.F = 0.0;
  return c;
}

ScatteringCoefficients left_dirichlet(double k, double L) {
  const cdouble eh = std::polar(1.0, 0.5 * k * L);
  ScatteringCoefficients c{};
  c.A = 1.0;
  c.B = -std::conj(eh);
  // The α → ∞ limit is not uniform in k: on kL ∈ 2πℤ the cavity keeps an
  // interior standing wave.
  if (std::abs(expm1_i(k * L)) <= 1e-12) {
    c.C = 0.5;
    c.D = -0.5 * eh;
  }
  return c;
}

// Case (iii) from case (i) with the barriers interchanged.
ScatteringCoefficients mirror(const ScatteringCoefficients& l) {
  ScatteringCoefficients r{};
  r.F = 1.0;
  r.E = l.B;
  r.D = l.C;
  r.C = l.D;
  r.B = l.E;
  r.A = 0.0;
  return r;
}

RegionAmplitudes regions_of(const ScatteringCoefficients& c) {
  return {c.A, c.B, c.C, c.D, c.E, c.F};
}

struct Wave {
  cdouble plus, minus;
};

Wave region_at(const RegionAmplitudes& a, double w, double L) {
  if (w < -0.25 * L) return {a.left_plus, a.left_minus};
  if (w > 0.25 * L) return {a.right_plus, a.right_minus};
  return {a.inner_plus, a.inner_minus};
}

cdouble eval_wave(const Wave& v, double k, double w) {
  return v.plus * std::polar(1.0, k * w) + v.minus * std::polar(1.0, -k * w);
}

cdouble eval_wave_derivative(const Wave& v, double k, double w) {
  return kI * k * (v.plus * std::polar(1.0, k * w) - v.minus * std::polar(1.0, -k * w));
}

// −f̄_l f_k′ + f_k f̄_l′ at w for outer-region waves, as a sum of e^{iωw}.
// Each call adds the four (σ, τ) terms −i(σk + τl) a b̄ e^{i(σk − τl)w}.
struct Term {
  cdouble coeff;
  double freq;
};

void wronskian_terms(const Wave& fk, double k, const Wave& fl, double l, Term out[4]) {
  const cdouble a[2] = {fk.plus, fk.minus};
  const cdouble b[2] = {fl.plus, fl.minus};
  const double sg[2] = {1.0, -1.0};
  int idx = 0;
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      out[idx++] = {-kI * (sg[s] * k + sg[t] * l) * a[s] * std::conj(b[t]),
                    sg[s] * k - sg[t] * l};
    }
  }
}

}  // namespace

cdouble delta_denominator(cdouble k, double alpha, double beta, double L) {
  return k * k + kI * (alpha + beta) * k + (std::exp(kI * k * L) - 1.0) * alpha * beta;
}

ScatteringCoefficients scattering_coeffs(double k, const CavityConfig& cfg, Side side) {
  require_config(cfg);
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("scattering_coeffs: k must be positive");
  if (cfg.dirichlet) {
    const auto l = left_dirichlet(k, cfg.L);
    return side == Side::Left ? l : mirror(l);
  }
  if (side == Side::Left) return left_finite(k, cfg.alpha, cfg.beta, cfg.L);
  return mirror(left_finite(k, cfg.beta, cfg.alpha, cfg.L));
}

RegionAmplitudes mode_amplitudes(double k_z, const CavityConfig& cfg) {
  require_config(cfg);
  require_symmetric(cfg, "mode_function");
  const double k = std::abs(k_z);
  if (k == 0.0) {
    // Limit k → 0: any barrier reflects the wave completely with B → −1.
    if (!cfg.dirichlet && cfg.alpha == 0.0) return {1.0, 0.0, 1.0, 0.0, 1.0, 0.0};
    return {};
  }
  if (k_z > 0.0) return regions_of(scattering_coeffs(k, cfg, Side::Left));
  return regions_of(scattering_coeffs(k, cfg, Side::Right));
}

cdouble mode_function(double k_z, double z, const CavityConfig& cfg) {
  const auto a = mode_amplitudes(k_z, cfg);
  return eval_wave(region_at(a, z, cfg.L), std::abs(k_z), z);
}

cdouble mode_derivative(double k_z, double z, const CavityConfig& cfg) {
  const auto a = mode_amplitudes(k_z, cfg);
  return eval_wave_derivative(region_at(a, z, cfg.L), std::abs(k_z), z);
}

CavityConfig field_config(const CavityConfig& cfg) {
  CavityConfig t = cfg;
  t.alpha = 0.5 * cfg.alpha;
  t.beta = 0.5 * cfg.beta;
  t.L = 2.0 * cfg.L;
  return t;
}

cdouble field_mode(double k_z, double z, const CavityConfig& cfg) {
  return mode_function(k_z, z, field_config(cfg));
}

cdouble resonance_residual(cdouble k, double alpha, double L) {
  return delta_denominator(k, alpha, alpha, L);
}

std::vector<Resonance> resonance_roots(const CavityConfig& cfg, int n_min, int n_max) {
  require_config(cfg);
  require_symmetric(cfg, "resonance_roots");
  if (cfg.dirichlet || !(cfg.alpha > 0.0)) {
    throw DomainError("resonance_roots: need a finite alpha > 0");
  }
  if (n_min > n_max) throw DomainError("resonance_roots: empty branch range");
  const double a = cfg.alpha, L = cfg.L;
  const double arg = std::exp(0.5 * L * a) * 0.5 * L * a;
  std::vector<Resonance> out;
  for (int n = n_min; n <= n_max; ++n) {
    for (int sign : {1, -1}) {
      const cdouble w = specfun::lambert_w(n, cdouble(sign * arg, 0.0));
      cdouble k = -kI * (L * a - 2.0 * w) / L;
      double res = std::abs(resonance_residual(k, a, L));
      // Newton polish; the Lambert value is already close, so keep the best.
      for (int it = 0; it < 3 && res > 0.0; ++it) {
        const cdouble d = 2.0 * k + 2.0 * kI * a + kI * L * a * a * std::exp(kI * k * L);
        const cdouble kn = k - resonance_residual(k, a, L) / d;
        const double rn = std::abs(resonance_residual(kn, a, L));
        if (!(rn < res)) break;
        k = kn;
        res = rn;
      }
      // Near |k| ≫ α the terms of the equation cancel at the 1e-16 level.
      const double terms = std::norm(k) + a * a * std::abs(std::exp(kI * k * L));
      if (!(res < std::max(1e-8 * a * a, 1e-13 * terms))) {
        throw NonConvergence("resonance_roots: residual " + std::to_string(res) +
                             " on branch " + std::to_string(n));
      }
      out.push_back({n, sign, k, res});
    }
  }
  return out;
}

cdouble boundary_inner_product(double l_z, double k_z, double window_n,
                               const CavityConfig& cfg) {
  require_config(cfg);
  require_symmetric(cfg, "boundary_inner_product");
  if (l_z == 0.0 || k_z == 0.0) throw DomainError("boundary_inner_product: need nonzero momenta");
  if (!(window_n > 0.25 * cfg.L)) {
    throw DomainError("boundary_inner_product: window must exceed L/4");
  }
  const double k = std::abs(k_z), l = std::abs(l_z);
  if (k == l) throw DegenerateMode("boundary_inner_product: k_z^2 == l_z^2");
  const auto ak = mode_amplitudes(k_z, cfg), al = mode_amplitudes(l_z, cfg);
  auto wr = [&](double w) {
    const Wave fk = region_at(ak, w, cfg.L), fl = region_at(al, w, cfg.L);
    return -std::conj(eval_wave(fl, l, w)) * eval_wave_derivative(fk, k, w) +
           eval_wave(fk, k, w) * std::conj(eval_wave_derivative(fl, l, w));
  };
  return (wr(window_n) - wr(-window_n)) / (k * k - l * l);
}

cdouble cesaro_inner_product(double l_z, double k_z, double n_lo, double n_hi,
                             const CavityConfig& cfg) {
  require_config(cfg);
  require_symmetric(cfg, "cesaro_inner_product");
  if (!(n_lo > 0.25 * cfg.L) || !(n_hi > n_lo)) {
    throw DomainError("cesaro_inner_product: need L/4 < n_lo < n_hi");
  }
  const double k = std::abs(k_z), l = std::abs(l_z);
  if (k == 0.0 || l == 0.0) throw DomainError("cesaro_inner_product: need nonzero momenta");
  if (k == l) throw DegenerateMode("cesaro_inner_product: k_z^2 == l_z^2");
  const auto ak = mode_amplitudes(k_z, cfg), al = mode_amplitudes(l_z, cfg);
  Term right[4], left[4];
  wronskian_terms({ak.right_plus, ak.right_minus}, k, {al.right_plus, al.right_minus}, l, right);
  wronskian_terms({ak.left_plus, ak.left_minus}, k, {al.left_plus, al.left_minus}, l, left);
  const double width = n_hi - n_lo;
  // Mean over n of e^{iωn}.
  auto mean_exp = [&](double om) -> cdouble {
    if (std::abs(om * width) < 1e-12) return std::polar(1.0, om * n_lo);
    return (std::polar(1.0, om * n_hi) - std::polar(1.0, om * n_lo)) / (kI * om * width);
  };
  cdouble sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    sum += right[i].coeff * mean_exp(right[i].freq);
    sum -= left[i].coeff * mean_exp(-left[i].freq);
  }
  return sum / (k * k - l * l);
}

cdouble delta_channel_coefficient(double k, bool k_positive, bool l_positive,
                                  const CavityConfig& cfg, cdouble* regular) {
  if (!(k > 0.0)) throw DomainError("delta_channel_coefficient: k must be positive");
  const auto a = mode_amplitudes(k_positive ? k : -k, cfg);
  const auto b = mode_amplitudes(l_positive ? k : -k, cfg);
  // Near k = l the boundary terms reduce to (P e^{iδn} + Q e^{−iδn})/δ with
  // δ = k − l; P + Q is the pole residue and π(Q − P)/i the delta weight.
  const cdouble P = -kI * (a.right_plus * std::conj(b.right_plus) +
                           a.left_minus * std::conj(b.left_minus));
  const cdouble Q = kI * (a.right_minus * std::conj(b.right_minus) +
                          a.left_plus * std::conj(b.left_plus));
  if (regular) *regular = P + Q;
  return kPi * (Q - P) / kI;
}

}  // namespace vacuumlab::cavity
