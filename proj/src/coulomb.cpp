#include "vacuumlab/coulomb.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "vacuumlab/errors.hpp"
#include "vacuumlab/specfun.hpp"

namespace vacuumlab::coulomb {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kMaxOscillationPieces = 4'000'000;

// ∫_lo^hi g(κ) sin(ωκ)/κ dκ, split into half periods of sin(ωκ).
double sine_transform(const std::function<double(double)>& g, double lo, double hi,
                      double omega, const QuadratureSpec& spec) {
  if (omega == 0.0 || !(hi > lo)) return 0.0;
  auto f = [&](double k) {
    const double x = omega * k;
    const double s = std::abs(x) < 1e-8 ? omega : std::sin(x) / k;
    return g(k) * s;
  };
  const double span = std::abs(omega) * (hi - lo) / kPi;
  if (span > static_cast<double>(kMaxOscillationPieces)) {
    throw NonConvergence("sine transform: " + std::to_string(span) +
                         " half periods exceed the oscillation budget");
  }
  const long pieces = std::max(1L, static_cast<long>(std::ceil(span)));
  const double h = (hi - lo) / static_cast<double>(pieces);
  double sum = 0.0;
  for (long i = 0; i < pieces; ++i) {
    sum += quad::integrate(f, lo + i * h, lo + (i + 1) * h, spec);
  }
  return sum;
}

void require_positive_r(double r, const char* what) {
  if (!(r > 0.0)) throw DomainError(std::string(what) + ": r must be positive");
}

}  // namespace

double potential_box(double q_ph, double k1, double k2, double r) {
  require_positive_r(r, "potential_box");
  if (!(k1 >= 0.0) || !(k2 > k1)) throw DomainError("potential_box: need 0 <= k1 < k2");
  const double diff = specfun::sine_integral(k2 * r) - specfun::sine_integral(k1 * r);
  return -q_ph * q_ph / (4 * kPi * r) * diff / (kPi / 2);
}

double potential_lorentz(double q_ph, double lambda2, double y0, double r) {
  require_positive_r(r, "potential_lorentz");
  if (!(lambda2 > 0.0) || !(y0 > 0.0)) {
    throw DomainError("potential_lorentz: lambda2 and y0 must be positive");
  }
  using specfun::cdouble;
  const double lam = std::sqrt(lambda2);
  const cdouble zp = 2 * lam * std::sqrt(cdouble(1.0, r / y0));
  const cdouble zm = 2 * lam * std::sqrt(cdouble(1.0, -r / y0));
  const cdouble kp = specfun::bessel_k0_complex(zp);
  const cdouble km = specfun::bessel_k0_complex(zm);
  const double mag = std::abs(kp);
  if (std::abs(km - std::conj(kp)) > 1e-10 * mag) {
    throw BranchError("potential_lorentz: K0 values at conjugate arguments are not conjugate");
  }
  const cdouble w = cdouble(0.0, 1.0) * (km - kp);
  if (std::abs(w.imag()) > 1e-12 * mag) {
    throw BranchError("potential_lorentz: imaginary residue exceeds tolerance");
  }
  return q_ph * q_ph / (2 * kPi * kPi) * std::exp(2 * lam) * w.real() / r;
}

double potential(const vacuum::VacuumProfile& profile, double q_ph, double r) {
  if (profile.kind == vacuum::ProfileKind::BoxShell) {
    return potential_box(q_ph, profile.k1, profile.k2, r);
  }
  return potential_lorentz(q_ph, profile.lambda2, profile.y0, r);
}

double potential_quadrature(const vacuum::VacuumProfile& profile, double q_ph, double r,
                            const QuadratureSpec& spec) {
  require_positive_r(r, "potential_quadrature");
  const auto [lo, hi] = vacuum::effective_support(profile);
  const double s = sine_transform([&](double k) { return vacuum::cutoff(profile, k); }, lo,
                                  hi, r, spec);
  return -q_ph * q_ph / (2 * kPi * kPi * r) * s;
}

double mean_field(const vacuum::VacuumProfile& profile, double q, double r) {
  return q * potential(profile, std::sqrt(profile.Z), r);
}

double compensating_field_closed(double q, double r, double dt) {
  require_positive_r(r, "compensating_field_closed");
  const double ad = std::abs(dt);
  double step = 0.0;
  if (r > ad) step = 1.0;
  else if (r == ad) step = 0.5;
  return q / (4 * kPi * r) * step;
}

double compensating_field_avg(const vacuum::VacuumProfile& profile, double q, double r,
                              double dt, const QuadratureSpec& spec) {
  require_positive_r(r, "compensating_field_avg");
  if (q == 0.0) return 0.0;
  // cos(κ dt) sin(κ r) = [sin(κ(r + dt)) + sin(κ(r − dt))]/2 after the angular integral.
  const auto [lo, hi] = vacuum::effective_support(profile);
  auto g = [&](double k) { return vacuum::density(profile, k); };
  const double s = sine_transform(g, lo, hi, r + dt, spec) + sine_transform(g, lo, hi, r - dt, spec);
  return q / (2 * kPi * kPi * r) * 0.5 * s;
}

double sign_change_radius(const std::function<double(double)>& potential, double r_lo,
                          double r_hi) {
  if (!(r_lo < r_hi)) throw DomainError("sign_change_radius: need r_lo < r_hi");
  double flo = potential(r_lo), fhi = potential(r_hi);
  if (flo == 0.0) return r_lo;
  if (fhi == 0.0) return r_hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw NoSignChange("sign_change_radius: potential has the same sign at both ends");
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (r_lo + r_hi);
    if (r_hi - r_lo <= 1e-10 * std::abs(mid)) return mid;
    const double fm = potential(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      r_lo = mid;
      flo = fm;
    } else {
      r_hi = mid;
    }
  }
  return 0.5 * (r_lo + r_hi);
}

double first_sign_change(const std::function<double(double)>& potential, double r_start,
                         double growth, int max_steps) {
  if (!(r_start > 0.0) || !(growth > 1.0)) {
    throw DomainError("first_sign_change: need r_start > 0 and growth > 1");
  }
  double lo = r_start;
  const double f0 = potential(lo);
  for (int i = 0; i < max_steps; ++i) {
    const double hi = lo * growth;
    const double f = potential(hi);
    if (f == 0.0 || std::signbit(f) != std::signbit(f0)) {
      return sign_change_radius(potential, lo, hi);
    }
    lo = hi;
  }
  throw NoSignChange("first_sign_change: no sign flip up to r = " + std::to_string(lo));
}

bool yukawa_bound_check(double k1, double lambda_min_ratio, const std::vector<double>& r_grid) {
  if (!(lambda_min_ratio > 0.0)) {
    throw DomainError("yukawa_bound_check: lambda_min_ratio must be positive");
  }
  for (double r : r_grid) {
    require_positive_r(r, "yukawa_bound_check");
    const double lhs = kPi * -std::expm1(-r / lambda_min_ratio) - specfun::sine_integral(k1 * r);
    if (lhs < 0.0) return false;
  }
  return true;
}

PotentialCurve potential_curve(const vacuum::VacuumProfile& profile, double q_ph,
                               const std::vector<double>& r_values) {
  PotentialCurve c;
  std::ostringstream tag;
  tag.precision(17);
  if (profile.kind == vacuum::ProfileKind::BoxShell) {
    tag << "box(k1=" << profile.k1 << ",k2=" << profile.k2 << ")";
  } else {
    tag << "lorentz(lambda2=" << profile.lambda2 << ",y0=" << profile.y0 << ")";
  }
  c.profile_tag = tag.str();
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    if (i > 0 && !(r_values[i] > r_values[i - 1])) {
      throw DomainError("potential_curve: r values must be strictly increasing");
    }
    c.r_values.push_back(r_values[i]);
    c.v_values.push_back(potential(profile, q_ph, r_values[i]));
  }
  return c;
}

}  // namespace vacuumlab::coulomb
