#include "vacuumlab/casimir.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "vacuumlab/errors.hpp"
#include "vacuumlab/specfun.hpp"

namespace vacuumlab::casimir {
namespace {

using cdouble = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kZeta3 = 1.2020569031595942854;

void require_mirrors(double alpha, double L, const char* what) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !(L > 0.0) || !std::isfinite(L)) {
    throw DomainError(std::string(what) + ": alpha and L must be positive");
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Breakpoints 0, s, 4s, 16s, ... for integrands living on the scale s.
std::vector<double> geometric_breaks(double s, int count) {
  std::vector<double> b{0.0};
  for (int i = 0; i < count; ++i) b.push_back(s * std::pow(4.0, i));
  b.push_back(INFINITY);
  return b;
}

// Series route. With g(t) = log(1 + 2t/α) + Lt the n-th term on the
// imaginary axis is J(n) = ∫₀^∞ t e^{−2n g(t)} dt; J extends smoothly to
// real n, which is what the Euler–Maclaurin tail needs.
struct SeriesTerms {
  double alpha, L;
  QuadratureSpec spec;

  double g(double t) const { return std::log1p(2 * t / alpha) + L * t; }

  double scale(double x) const { return 1.0 / (2 * x * (L + 2 / alpha)); }

  // d^m/dx^m J(x).
  double J(double x, int m) const {
    auto f = [&](double t) {
      const double gg = g(t);
      return t * std::pow(-2 * gg, m) * std::exp(-2 * x * gg);
    };
    return quad::integrate_pieces(f, geometric_breaks(scale(x), 14), spec);
  }

  // ∫_N^∞ J(x) dx.
  double tail_integral(double N) const {
    auto f = [&](double t) {
      if (t == 0.0) return 1.0 / (2 * (2 / alpha + L));
      const double gg = g(t);
      return t * std::exp(-2 * N * gg) / (2 * gg);
    };
    return quad::integrate_pieces(f, geometric_breaks(scale(N), 14), spec);
  }

  double sum(int N) const {
    double s = 0.0;
    for (int n = 1; n < N; ++n) s += J(n, 0);
    s += tail_integral(N) + 0.5 * J(N, 0);
    for (int j = 1; j <= 3; ++j) {
      s -= specfun::bernoulli_number(2 * j) / factorial(2 * j) * J(N, 2 * j - 1);
    }
    return s;
  }
};

// Phase of q = r e^{2ikL}: resonance peaks at 2πm, troughs at (2m+1)π.
double phase(double k, double alpha, double L) { return 2 * k * L + 2 * std::atan(2 * k / alpha); }

double k_at_phase(double target, double alpha, double L) {
  // φ ∈ [2kL, 2kL + π) brackets the solution.
  const double lo = std::max(0.0, (target - kPi) / (2 * L)), hi = target / (2 * L);
  if (hi <= lo) return lo;
  auto f = [&](double k) { return phase(k, alpha, L) - target; };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

// Airy-type resonance profile (1 − |r|²)/|1 − q|² in a cancellation-free form.
double airy(double k, double alpha, double L) {
  const double u = 4 * k * k / (alpha * alpha);
  const double rm = 1.0 / (1.0 + u), one_minus = u / (1.0 + u);
  const double s = std::sin(0.5 * phase(k, alpha, L));
  return one_minus * (1.0 + rm) / (one_minus * one_minus + 4 * rm * s * s);
}

}  // namespace

std::complex<double> reflection_coeff(double k, double alpha) {
  if (!(k > 0.0) || !(alpha > 0.0)) throw DomainError("reflection_coeff: need k, alpha > 0");
  const cdouble d = cdouble(1.0, -2 * k / alpha);
  return 1.0 / (d * d);
}

double pressure_1p1_series(double alpha, double L, const QuadratureSpec& spec) {
  require_mirrors(alpha, L, "pressure_1p1_series");
  QuadratureSpec qs = spec;
  qs.rel_tol = std::min(spec.rel_tol, 1e-12);
  qs.abs_tol = 0.0;
  const SeriesTerms terms{alpha, L, qs};
  double prev = terms.sum(16);
  for (int N = 32; N <= 1024; N *= 2) {
    const double cur = terms.sum(N);
    if (std::abs(cur - prev) <= std::max(spec.abs_tol, spec.rel_tol * std::abs(cur))) {
      return -cur / kPi;
    }
    prev = cur;
  }
  throw NonConvergence("pressure_1p1_series: Euler-Maclaurin tail did not settle");
}

double integrand_1p1(double k, double alpha, double L) {
  require_mirrors(alpha, L, "integrand_1p1");
  if (k <= 0.0) return 0.0;
  const double u = 4 * k * k / (alpha * alpha);
  const double rm = 1.0 / (1.0 + u), one_minus = u / (1.0 + u);
  const double s = std::sin(0.5 * phase(k, alpha, L));
  // 2k Re[q/(1 − q)]/(2π) with Re q − |r|² = |r|((1 − |r|) − 2 sin²(ψ/2)).
  return k / kPi * rm * (one_minus - 2 * s * s) /
         (one_minus * one_minus + 4 * rm * s * s);
}

double pressure_1p1_quad(double alpha, double L, const QuadratureSpec& spec) {
  require_mirrors(alpha, L, "pressure_1p1_quad");
  // Real axis through the first M resonance peaks, one trough-to-trough
  // period at a time. Inside a period the integrand is evaluated in the
  // offset δ from the peak centre k_m, so the phase near the peak carries no
  // rounding from 2k_mL, and breakpoints at δ = ±h·4^i resolve peaks of half
  // width h ≈ (1 − |r|)/(2L + 4/α) however narrow.
  const int M = std::clamp(static_cast<int>(std::ceil(2 * alpha * L / kPi)), 4, 24);
  auto piece_spec = [&](double k_hi, double width) {
    QuadratureSpec qs = spec;
    // Each period nearly cancels (baseline against peak), so the tolerance is
    // set against the size of the baseline.
    qs.abs_tol = std::max(spec.abs_tol, 1e-14 * k_hi * width);
    return qs;
  };
  double trough = k_at_phase(kPi, alpha, L);
  double real_part = quad::integrate([&](double k) { return integrand_1p1(k, alpha, L); }, 0.0,
                                     trough, piece_spec(trough, trough));
  for (int m = 1; m <= M; ++m) {
    const double next = k_at_phase((2 * m + 1) * kPi, alpha, L);
    const double km = k_at_phase(2 * m * kPi, alpha, L);
    const double lo = trough - km, hi = next - km;
    const double um = 4 * km * km / (alpha * alpha);
    const double h = um / (1 + um) / (2 * L + 4 / alpha);
    std::vector<double> cuts{lo, 0.0, hi};
    for (double d = h; d < std::min(-lo, hi); d *= 4) {
      cuts.push_back(-d);
      cuts.push_back(d);
    }
    std::sort(cuts.begin(), cuts.end());
    auto f = [&](double d) {
      const double k = km + d;
      const double u = 4 * k * k / (alpha * alpha);
      const double rm = 1.0 / (1.0 + u), one_minus = u / (1.0 + u);
      // φ(k) − 2πm = 2Lδ + 2[atan(2k/α) − atan(2k_m/α)].
      const double psi = 2 * L * d + 2 * std::atan2(2 * d / alpha, 1 + 4 * km * k / (alpha * alpha));
      const double s = std::sin(0.5 * psi);
      return k / kPi * rm * (one_minus - 2 * s * s) / (one_minus * one_minus + 4 * rm * s * s);
    };
    const auto qs = piece_spec(next, next - trough);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      real_part += quad::integrate(f, cuts[i], cuts[i + 1], qs);
    }
    trough = next;
  }
  const double K = trough;

  // ∫_K^{K+i∞} k q/(1 − q) dk, which decays like e^{−2L Im k}.
  auto ray = [&](double t) {
    const cdouble k(K, t);
    const cdouble d = 1.0 - 2.0 * cdouble(0, 1) * k / alpha;
    const cdouble q = std::exp(2.0 * cdouble(0, 1) * k * L) / (d * d);
    return cdouble(0, 1) * k * q / (1.0 - q);
  };
  cdouble tail = 0.0;
  const auto b = geometric_breaks(1.0 / L, 8);
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    tail += quad::integrate_complex(ray, b[i], b[i + 1], spec);
  }
  return real_part + tail.real() / kPi;
}

double peak_width_1p1(double alpha, double L, int m) {
  require_mirrors(alpha, L, "peak_width_1p1");
  if (m < 1) throw DomainError("peak_width_1p1: m must be >= 1");
  const double kp = k_at_phase(2 * m * kPi, alpha, L);
  const double half = 0.5 * airy(kp, alpha, L);
  auto f = [&](double k) { return airy(k, alpha, L) - half; };
  const double lo = k_at_phase((2 * m - 1) * kPi, alpha, L);
  const double hi = k_at_phase((2 * m + 1) * kPi, alpha, L);
  if (!(f(lo) < 0.0) || !(f(hi) < 0.0)) {
    throw NonConvergence("peak_width_1p1: peak does not rise above twice its base");
  }
  auto solve = [&](double a, double b) {
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(
        f, a, b, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
  };
  return solve(kp, hi) - solve(lo, kp);
}

std::vector<SweepRow> alpha_sweep_1p1(double L, const std::vector<double>& alphas,
                                      const QuadratureSpec& spec) {
  std::vector<SweepRow> rows;
  for (double a : alphas) {
    rows.push_back({a, L, pressure_1p1_series(a, L, spec), pressure_1p1_quad(a, L, spec),
                    pressure_dirichlet_comb(L, kPi / (2 * L), 1), pressure_euler_maclaurin(L)});
  }
  return rows;
}

Endpoint nearest_endpoint(const SweepRow& row) {
  const double p = row.p_series;
  return std::abs(p - row.p_comb16) < std::abs(p - row.p_em24) ? Endpoint::Sixteen
                                                               : Endpoint::TwentyFour;
}

double pressure_dirichlet_comb(double L, double kappa, int J) {
  if (!(L > 0.0)) throw DomainError("pressure_dirichlet_comb: L must be positive");
  if (!(kappa > 0.0) || !(kappa < kPi / L)) {
    throw DomainError("pressure_dirichlet_comb: kappa must lie in (0, pi/L)");
  }
  if (J < 1) throw DomainError("pressure_dirichlet_comb: J must be >= 1");
  return (-L * L * kappa * kappa + J * kPi * (kPi - 2 * L * kappa)) / (4 * L * L * kPi);
}

double pressure_euler_maclaurin(double L) {
  if (!(L > 0.0)) throw DomainError("pressure_euler_maclaurin: L must be positive");
  return -1.0 / (2 * kPi) * kPi * kPi / (L * L) * specfun::bernoulli_number(2) / 2;
}

EulerMaclaurinGap euler_maclaurin_gap(const std::function<double(double)>& f,
                                      const std::function<double(int, double)>& derivative,
                                      int N, int orders, const QuadratureSpec& spec) {
  if (N < 1) throw DomainError("euler_maclaurin_gap: N must be >= 1");
  if (orders < 0 || orders > 10) throw DomainError("euler_maclaurin_gap: orders must be 0..10");
  double sum = 0.0;
  for (int n = 0; n <= N; ++n) sum += f(n);
  std::vector<double> breaks;
  for (int n = 0; n <= N; ++n) breaks.push_back(n);
  const double integral = quad::integrate_pieces(f, breaks, spec);
  EulerMaclaurinGap r{sum - 0.5 * (f(N) + f(0)) - integral, 0.0};
  for (int j = 1; j <= orders; ++j) {
    r.series += specfun::bernoulli_number(2 * j) / factorial(2 * j) *
                (derivative(2 * j - 1, N) - derivative(2 * j - 1, 0.0));
  }
  return r;
}

double stairs_gap(double dx) {
  if (!(dx > 0.0) || !(dx < 1.0)) throw DomainError("stairs_gap: need 0 < dx < 1");
  // Mellin expansion of Σⱼ g(jΔx), g = x²E₁(x): the double pole at s = −2
  // gives −ζ′(−2)Δx³ = ζ(3)Δx³/(4π²); the poles at s = −2 − k, k odd, give
  // the Bernoulli terms.
  double s = kZeta3 * dx * dx * dx / (4 * kPi * kPi);
  for (int k = 1; k + 3 <= 20; k += 2) {
    s += specfun::bernoulli_number(k + 3) * std::pow(dx, k + 3) / ((k + 3) * k * factorial(k));
  }
  return s;
}

PressureBreakdown pressure_3p1(const vacuum::VacuumProfile& p, double L,
                               const QuadratureSpec& spec) {
  if (p.kind != vacuum::ProfileKind::LorentzExp) {
    throw DomainError("pressure_3p1: needs a LorentzExp profile");
  }
  if (!(p.Z > 0.0) || !(p.y0 > 0.0) || !(p.lambda2 >= 0.0) || !(L > 0.0)) {
    throw DomainError("pressure_3p1: need Z, y0, L > 0 and lambda2 >= 0");
  }
  if (!(p.y0 / L < 0.1)) throw DomainError("pressure_3p1: expansion needs y0/L < 0.1");
  const double x = kPi * p.y0 / L;
  PressureBreakdown b{};
  b.leading = -p.Z * kPi * kPi / (240 * std::pow(L, 4));

  // Σⱼ j² e^{−jx} = 2/x³ + Σ_{k odd} B_{k+3} x^k/(k!(k+3)) and the k = 1
  // term is the leading one.
  double series = 0.0;
  int small = 0;
  for (int k = 3; k + 3 <= 20; k += 2) {
    const double term =
        std::pow(x, k - 1) * specfun::bernoulli_number(k + 3) / (2 * factorial(k) * (k + 3));
    series += term;
    ++b.terms_used;
    small = std::abs(term) < spec.rel_tol * std::abs(series) ? small + 1 : 0;
    if (small == 3) break;
  }
  b.y0_corrections = p.Z * kPi * kPi / std::pow(L, 4) * series;

  b.lambda2_correction =
      p.Z / (2 * kPi * kPi * std::pow(p.y0, 4)) * stairs_gap(x) * p.lambda2;
  b.total = b.leading + b.y0_corrections + b.lambda2_correction;
  return b;
}

double pressure_3p1_direct(const vacuum::VacuumProfile& p, double L,
                           const QuadratureSpec& spec) {
  if (p.kind != vacuum::ProfileKind::LorentzExp || !(p.Z > 0.0) || !(p.y0 > 0.0) ||
      !(p.lambda2 >= 0.0) || !(L > 0.0)) {
    throw DomainError("pressure_3p1_direct: needs a LorentzExp profile and L > 0");
  }
  const double x = kPi * p.y0 / L;
  const double pref = p.Z * kPi / (2 * std::pow(L, 3) * p.y0);
  // The truncation rule uses spec.rel_tol; each Γ value is computed to 1e-13.
  QuadratureSpec gs = spec;
  gs.rel_tol = std::max(spec.rel_tol, 1e-13);
  double sum = 0.0;
  int small = 0;
  for (long j = 1;; ++j) {
    const double jd = static_cast<double>(j);
    const double term = pref * jd * jd * specfun::gen_incomplete_gamma(1.0, jd * x, p.lambda2, gs);
    sum += term;
    small = term < spec.rel_tol * sum ? small + 1 : 0;
    if (small == 3) break;
    if (j > 10'000'000) throw NonConvergence("pressure_3p1_direct: j-sum does not decay");
  }
  const double lam = std::sqrt(p.lambda2);
  // λ⁴K₄(2λ) → 3 as λ → 0.
  const double l4k4 = lam == 0.0 ? 3.0 : p.lambda2 * p.lambda2 * specfun::bessel_k(4, 2 * lam);
  return sum - 2 * p.Z * l4k4 / (6 * kPi * kPi * std::pow(p.y0, 4));
}

double to_physical_pressure(double p) {
  return p * kHbar * kSpeedOfLight / std::pow(kPlanckLength, 4);
}

}  // namespace vacuumlab::casimir
