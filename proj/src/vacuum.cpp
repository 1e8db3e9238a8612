#include "vacuumlab/vacuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "vacuumlab/errors.hpp"
#include "vacuumlab/specfun.hpp"

namespace vacuumlab::vacuum {
namespace {

constexpr double kPi = std::numbers::pi;
// Densities below e^{-kCut}·Z are treated as zero when truncating ranges.
constexpr double kCut = 60.0;

void require_valid(const VacuumProfile& p) {
  if (p.kind == ProfileKind::LorentzExp) {
    if (!(p.lambda2 > 0.0) || !(p.y0 > 0.0)) {
      throw DomainError("vacuum profile: lambda2 and y0 must be positive");
    }
  } else if (!(p.k2 > p.k1) || p.k1 < 0.0) {
    throw DomainError("vacuum profile: box shell needs 0 <= k1 < k2");
  }
}

}  // namespace

double VacuumProfile::lambda() const { return std::sqrt(lambda2); }

VacuumProfile make_lorentz_profile(double lambda2, double y0) {
  if (!(lambda2 > 0.0) || !std::isfinite(lambda2)) {
    throw DomainError("make_lorentz_profile: lambda2 must be positive");
  }
  if (!(y0 > 0.0) || !std::isfinite(y0)) {
    throw DomainError("make_lorentz_profile: y0 must be positive");
  }
  VacuumProfile p;
  p.kind = ProfileKind::LorentzExp;
  p.lambda2 = lambda2;
  p.y0 = y0;
  const double lam = std::sqrt(lambda2);
  p.norm_const = 2 * kPi * kPi * y0 * y0 / (lambda2 * specfun::bessel_k(2, 2 * lam));
  p.Z = p.norm_const * std::exp(-2 * lam);
  return p;
}

VacuumProfile make_box_profile(double k1, double k2) {
  if (!(k1 > 0.0) || !(k2 > k1) || !std::isfinite(k2)) {
    throw DomainError("make_box_profile: need 0 < k1 < k2");
  }
  VacuumProfile p;
  p.kind = ProfileKind::BoxShell;
  p.k1 = k1;
  p.k2 = k2;
  p.Z = 8 * kPi * kPi / (k2 * k2 - k1 * k1);
  p.norm_const = p.Z;
  return p;
}

double density(const VacuumProfile& p, double k) {
  if (p.kind == ProfileKind::BoxShell) return (k >= p.k1 && k <= p.k2) ? p.Z : 0.0;
  return p.Z * cutoff(p, k);
}

double cutoff(const VacuumProfile& p, double k) {
  if (p.kind == ProfileKind::BoxShell) return (k >= p.k1 && k <= p.k2) ? 1.0 : 0.0;
  if (k <= 0.0) return 0.0;
  const double t = p.y0 * k;
  const double lam = p.lambda();
  // −λ²/t − t + 2λ = −(√t − λ/√t)², which keeps the exponent ≤ 0 exactly.
  const double d = std::sqrt(t) - lam / std::sqrt(t);
  return std::exp(-d * d);
}

double peak_momentum(const VacuumProfile& p) {
  if (p.kind == ProfileKind::BoxShell) return 0.5 * (p.k1 + p.k2);
  return p.lambda() / p.y0;
}

std::pair<double, double> effective_support(const VacuumProfile& p) {
  if (p.kind == ProfileKind::BoxShell) return {p.k1, p.k2};
  // Solve (√t − λ/√t)² = kCut for the two roots in t = y0 κ.
  const double lam = p.lambda();
  const double s = std::sqrt(kCut);
  const double up = 0.5 * (s + std::sqrt(kCut + 4 * lam));
  const double lo = 0.5 * (-s + std::sqrt(kCut + 4 * lam));
  return {lo * lo / p.y0, up * up / p.y0};
}

double radial_moment(const VacuumProfile& p, int power, const QuadratureSpec& spec) {
  require_valid(p);
  const double pref = 1.0 / (4 * kPi * kPi);
  if (p.kind == ProfileKind::BoxShell) {
    const int e = 2 - power;  // ∫ κ^{1−power} dκ
    if (e == 0) {
      if (p.k1 <= 0.0) throw DomainError("radial_moment: divergent at the origin");
      return pref * p.Z * std::log(p.k2 / p.k1);
    }
    if (e < 0 && p.k1 <= 0.0) throw DomainError("radial_moment: divergent at the origin");
    return pref * p.Z * (std::pow(p.k2, e) - std::pow(p.k1, e)) / e;
  }
  // t = y0 κ tames the essential singularity at κ = 0.
  const auto [lo, hi] = effective_support(p);
  const double tlo = lo * p.y0, thi = hi * p.y0;
  std::vector<double> breaks{tlo};
  for (double t = tlo * 10; t < thi; t *= 10) breaks.push_back(t);
  breaks.push_back(p.lambda());
  breaks.push_back(thi);
  std::sort(breaks.begin(), breaks.end());
  const double lam = p.lambda();
  auto f = [&](double t) {
    // Density in units of Z.
    const double d = std::sqrt(t) - lam / std::sqrt(t);
    return std::pow(t, 1 - power) * std::exp(-d * d);
  };
  const double integral = quad::integrate_pieces(f, breaks, spec);
  return pref * p.Z * std::pow(p.y0, power - 2) * integral;
}

bool infrared_condition_check(const VacuumProfile& p, int n, const QuadratureSpec& spec) {
  if (n < 1 || n > 4) throw DomainError("infrared_condition_check: n must lie in 1..4");
  const double s = peak_momentum(p);
  if (!(s > 0.0)) return false;

  // Pointwise decay of density/κⁿ on a geometric grid toward the origin.
  constexpr int kDecades = 40;
  std::vector<double> ratio;
  double peak = 0.0;
  for (int i = 1; i <= kDecades; ++i) {
    const double k = s * std::pow(10.0, -i);
    ratio.push_back(density(p, k) / std::pow(k, n));
    peak = std::max(peak, ratio.back());
  }
  if (peak == 0.0) return true;
  if (!(ratio.back() <= 1e-12 * peak)) return false;
  for (int i = kDecades - 5; i < kDecades; ++i) {
    if (ratio[i] > ratio[i - 1]) return false;
  }

  // Decade contributions to ∫ κ^{1−n} density dκ must die out.
  std::vector<double> contrib;
  double total = 0.0;
  for (int i = 0; i < kDecades; ++i) {
    const double hi = s * std::pow(10.0, -i), lo = hi / 10;
    const double c = quad::integrate(
        [&](double k) { return std::pow(k, 1 - n) * density(p, k); }, lo, hi, spec);
    contrib.push_back(c);
    total += c;
  }
  return contrib.back() <= 1e-12 * total;
}

double physical_charge(double q, const VacuumProfile& p) { return q * std::sqrt(p.Z); }

}  // namespace vacuumlab::vacuum
