#include "vacuumlab/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vacuumlab/errors.hpp"

namespace vacuumlab::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

QuadratureSpec kernel_spec() {
  QuadratureSpec s;
  s.abs_tol = 0.0;
  s.rel_tol = 1e-14;
  s.max_subdivisions = 2000;
  return s;
}

// Returns E1(ix) via the Lentz continued fraction; valid for x ≳ 2.
cdouble e1_imaginary(double x) {
  cdouble b(1.0, x);
  cdouble c = 1.0 / kTiny;
  cdouble d = 1.0 / b;
  cdouble h = d;
  for (int i = 1; i < 100000; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cdouble del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) {
      return h * cdouble(std::cos(x), -std::sin(x));
    }
  }
  throw NonConvergence("sine/cosine integral continued fraction");
}

// Si and Ci by power series, |x| ≤ 4.
void si_ci_series(double x, double* si, double* ci) {
  const double x2 = x * x;
  double term = x;  // x^{2k+1}/(2k+1)! with sign
  double s = x;
  for (int k = 1; k < 60; ++k) {
    term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
    const double add = term / (2.0 * k + 1.0);
    s += add;
    if (std::abs(add) < kEps * std::abs(s)) break;
  }
  *si = s;
  if (ci) {
    double t = 1.0;  // x^{2k}/(2k)! with sign
    double c = 0.0;
    for (int k = 1; k < 60; ++k) {
      t *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
      const double add = t / (2.0 * k);
      c += add;
      if (std::abs(add) < kEps * (std::abs(c) + kTiny)) break;
    }
    *ci = kEulerGamma + std::log(std::abs(x)) + c;
  }
}

double bessel_i_series(int nu, double x) {
  const double q = 0.25 * x * x;
  double term = std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (k * static_cast<double>(k + nu));
    sum += term;
    if (term < kEps * sum) break;
  }
  return sum;
}

double k0_series(double x) {
  const double q = 0.25 * x * x;
  double t = 1.0, h = 0.0, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    t *= q / (static_cast<double>(k) * k);
    h += 1.0 / k;
    sum += t * h;
    if (t * h < kEps * sum) break;
  }
  return -(std::log(0.5 * x) + kEulerGamma) * bessel_i_series(0, x) + sum;
}

double k1_series(double x) {
  const double q = 0.25 * x * x;
  // Σ_k [ψ(k+1) + ψ(k+2)] q^k / (k!(k+1)!)
  double t = 1.0;
  double hk = 0.0;  // H_k
  double sum = (-2.0 * kEulerGamma + 1.0) * t;
  for (int k = 1; k < 200; ++k) {
    t *= q / (static_cast<double>(k) * (k + 1));
    hk += 1.0 / k;
    const double add = (-2.0 * kEulerGamma + 2.0 * hk + 1.0 / (k + 1)) * t;
    sum += add;
    if (std::abs(add) < kEps * std::abs(sum)) break;
  }
  return 1.0 / x + std::log(0.5 * x) * bessel_i_series(1, x) - 0.25 * x * sum;
}

// K_nu(x) = e^{−x} ∫_0^∞ e^{−x(cosh t − 1)} cosh(νt) dt.
double k_integral(int nu, double x) {
  if (x > 740.0) return 0.0;
  const double tmax = std::acosh(1.0 + 45.0 / x) + 1.0;
  auto f = [x, nu](double t) {
    return std::exp(-x * (std::cosh(t) - 1.0)) * std::cosh(nu * t);
  };
  return std::exp(-x) * quad::integrate(f, 0.0, tmax, kernel_spec());
}

cdouble k0_complex_series(cdouble z) {
  const cdouble q = 0.25 * z * z;
  cdouble t = 1.0, i0 = 1.0, sum = 0.0;
  double h = 0.0;
  for (int k = 1; k < 400; ++k) {
    t *= q / (static_cast<double>(k) * k);
    h += 1.0 / k;
    i0 += t;
    sum += t * h;
    if (std::abs(t) * (1.0 + h) < kEps * (std::abs(i0) + std::abs(sum))) break;
  }
  return -(std::log(0.5 * z) + kEulerGamma) * i0 + sum;
}

cdouble k0_complex_integral(cdouble z) {
  const double tmax = std::acosh(1.0 + 45.0 / z.real()) + 1.0;
  auto f = [z](double t) { return std::exp(-z * (std::cosh(t) - 1.0)); };
  return std::exp(-z) * quad::integrate_complex(f, 0.0, tmax, kernel_spec());
}

cdouble branch_point_series(cdouble p) {
  // W = −1 + p − p²/3 + 11p³/72 − 43p⁴/540 + 769p⁵/17280
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 +
                                 p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
}

}  // namespace

double sine_integral(double x) {
  if (x < 0) return -sine_integral(-x);
  if (x == 0) return 0.0;
  if (x <= 4.0) {
    double si;
    si_ci_series(x, &si, nullptr);
    return si;
  }
  return 0.5 * kPi + e1_imaginary(x).imag();
}

double cosine_integral(double x) {
  if (!(x > 0)) throw DomainError("cosine_integral requires x > 0");
  if (x <= 4.0) {
    double si, ci;
    si_ci_series(x, &si, &ci);
    return ci;
  }
  return -e1_imaginary(x).real();
}

double exp_integral_e1(double x) {
  if (!(x > 0)) throw DomainError("exp_integral_e1 requires x > 0");
  if (x <= 1.0) {
    double term = 1.0, sum = 0.0;
    for (int k = 1; k < 100; ++k) {
      term *= -x / k;
      const double add = -term / k;
      sum += add;
      if (std::abs(add) < kEps * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
  }
  if (x > 740.0) return 0.0;
  double b = x + 1.0, c = 1.0 / kTiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 10000; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h * std::exp(-x);
  }
  throw NonConvergence("exp_integral_e1 continued fraction");
}

double bessel_k(int order, double x) {
  if (!(x > 0)) throw DomainError("bessel_k requires x > 0");
  if (order < 0 || order > 4) throw DomainError("bessel_k supports orders 0..4");
  double k0, k1;
  if (x <= 2.0) {
    k0 = k0_series(x);
    k1 = k1_series(x);
  } else {
    k0 = k_integral(0, x);
    k1 = k_integral(1, x);
  }
  if (order == 0) return k0;
  // Upward recurrence K_{ν+1} = K_{ν−1} + (2ν/x) K_ν is stable for K.
  double km = k0, kc = k1;
  for (int nu = 1; nu < order; ++nu) {
    const double kn = km + (2.0 * nu / x) * kc;
    km = kc;
    kc = kn;
  }
  return kc;
}

cdouble bessel_k0_complex(cdouble z) {
  if (z.imag() == 0.0 && z.real() <= 0.0) {
    throw DomainError("bessel_k0_complex: argument on the branch cut");
  }
  const double r = std::abs(z);
  if (r < 2.0 || (z.real() < 0.3 * r && r < 12.0)) return k0_complex_series(z);
  if (z.real() <= 0.0) {
    throw DomainError("bessel_k0_complex: left half-plane with |z| >= 12 unsupported");
  }
  // |K0(z)| < sqrt(pi/2|z|) e^{-Re z}: below the smallest normal double.
  if (z.real() > 720.0) return 0.0;
  return k0_complex_integral(z);
}

cdouble lambert_w(int branch, cdouble z) {
  if (z == 0.0) {
    if (branch == 0) return 0.0;
    throw DomainError("lambert_w: W_k(0) is singular for k != 0");
  }
  const cdouble branch_offset = 2.0 * kPi * branch * cdouble(0, 1);
  const cdouble ez1 = std::numbers::e * z + 1.0;
  const bool near_bp = std::abs(ez1) < 0.5 * std::numbers::e;  // |z + 1/e| < 0.5
  cdouble w;
  if (branch == 0 && near_bp) {
    w = branch_point_series(std::sqrt(2.0 * ez1));
  } else if (near_bp && z.real() < 0.0 && std::abs(ez1) < 0.3 * std::numbers::e &&
             ((branch == -1 && !std::signbit(z.imag())) ||
                         (branch == 1 && std::signbit(z.imag())))) {
    w = branch_point_series(-std::sqrt(2.0 * ez1));
  } else if (branch == 0 && z.real() > -0.5 && std::abs(z) < 3.0) {
    w = std::log(1.0 + z);
  } else {
    const cdouble l1 = std::log(z) + branch_offset;
    const cdouble l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  for (int it = 0; it < 200; ++it) {
    const cdouble ew = std::exp(w);
    const cdouble f = w * ew - z;
    const cdouble wp1 = w + 1.0;
    const cdouble denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const cdouble dw = f / denom;
    w -= dw;
    if (std::abs(dw) <= 4.0 * kEps * (1.0 + std::abs(w))) {
      return w;
    }
  }
  throw NonConvergence("lambert_w: Halley iteration did not converge");
}

double gen_incomplete_gamma(double alpha, double x, double b, const QuadratureSpec& spec) {
  if (!(x > 0)) throw DomainError("gen_incomplete_gamma requires x > 0");
  if (b < 0) throw DomainError("gen_incomplete_gamma requires b >= 0");
  QuadratureSpec s = spec;
  s.abs_tol = 0.0;
  s.rel_tol = std::min(spec.rel_tol, 1e-13);
  const double t0 = std::max(x, std::sqrt(b));
  // Upper part ∫_{t0}^∞ with the peak value factored out.
  const double shift = t0 + (b > 0 ? b / t0 : 0.0);
  auto upper = [=](double s_) {
    const double t = t0 + s_;
    const double expo = -t - (b > 0 ? b / t : 0.0) + shift;
    return std::pow(t, alpha - 1.0) * std::exp(expo);
  };
  double value = std::exp(-shift) * quad::integrate(upper, 0.0, INFINITY, s);
  if (t0 > x) {
    // ∫_x^{√b} t^{α−1} e^{−t−b/t} dt = b^α ∫_{√b}^{b/x} u^{−α−1} e^{−u−b/u} du
    const double sb = std::sqrt(b);
    const double peak = 2.0 * sb;
    auto lower = [=](double u) {
      return std::pow(u, -alpha - 1.0) * std::exp(-u - b / u + peak);
    };
    value += std::pow(b, alpha) * std::exp(-peak) * quad::integrate(lower, sb, b / x, s);
  }
  return value;
}

double bernoulli_number(int index) {
  static constexpr std::array<std::pair<double, double>, 11> table{{
      {1, 1}, {1, 6}, {-1, 30}, {1, 42}, {-1, 30}, {5, 66},
      {-691, 2730}, {7, 6}, {-3617, 510}, {43867, 798}, {-174611, 330}}};
  if (index < 0 || index > 20 || (index % 2 != 0)) {
    throw DomainError("bernoulli_number: index must be even in [0, 20], got " +
                      std::to_string(index));
  }
  const auto& [num, den] = table[static_cast<std::size_t>(index / 2)];
  return num / den;
}

double bernoulli_polynomial_2(double x) { return x * x - x + 1.0 / 6.0; }

double remainder_kernel_p2(double x, double dx) {
  if (!(dx > 0)) throw DomainError("remainder_kernel_p2 requires dx > 0");
  double j = std::ceil(x / dx);
  if (j < 1.0) j = 1.0;
  const double d = dx * dx / 12.0 + 0.5 * j * (j - 1.0) * dx * dx;
  return 0.5 * x * x + dx * (0.5 - j) * x + d;
}

}  // namespace vacuumlab::specfun
