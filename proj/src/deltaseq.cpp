#include "vacuumlab/deltaseq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vacuumlab/errors.hpp"

namespace vacuumlab::deltaseq {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxLevels = 20;
constexpr long kFirstIndex = 16;

double triangle(long n, double k) {
  const double nd = static_cast<double>(n);
  const double ak = std::abs(k);
  if (ak >= 1.0 / nd) return 0.0;
  return nd - nd * nd * ak;
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

QuadratureSpec inner_spec(const QuadratureSpec& spec) {
  QuadratureSpec s = spec;
  s.abs_tol = std::max(spec.abs_tol * 1e-2, 1e-17);
  s.rel_tol = std::max(spec.rel_tol * 1e-2, 1e-14);
  return s;
}

long next_pow2_at_least(double x) {
  long p = kFirstIndex;
  while (static_cast<double>(p) < x) p *= 2;
  return p;
}

// Support radius at n = 1; the radius at index n is this over n.
double unit_reach(const DeltaFamily& f) { return support_radius(with_index(f, 1)); }

// Limit of value_at(n) over n = n0·2^i via Richardson extrapolation in 1/n.
// Three consecutive growth steps by more than 1.5 are taken as divergence.
LimitValue sweep_limit(const std::function<LimitValue(long)>& value_at, long n0,
                       const QuadratureSpec& spec, const char* what) {
  std::vector<double> raw;
  std::vector<double> prev_row;
  double prev_diag = std::numeric_limits<double>::quiet_NaN();
  for (int level = 0; level < kMaxLevels; ++level) {
    const long n = n0 << level;
    const LimitValue v = value_at(n);
    if (v.is_divergent()) return v;
    raw.push_back(v.value);

    const std::size_t s = raw.size();
    if (s >= 4 && std::abs(raw[s - 1]) > 1.0) {
      bool growing = true;
      for (std::size_t i = s - 3; i < s; ++i) {
        if (!(std::abs(raw[i]) > 1.5 * std::abs(raw[i - 1]))) growing = false;
      }
      if (growing) return LimitValue::divergent();
    }

    std::vector<double> row{v.value};
    for (std::size_t c = 1; c <= prev_row.size(); ++c) {
      const double factor = std::ldexp(1.0, static_cast<int>(c)) - 1.0;
      row.push_back(row[c - 1] + (row[c - 1] - prev_row[c - 1]) / factor);
    }
    const double diag = row.back();
    if (s >= 3) {
      const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(diag));
      if (std::abs(raw[s - 1] - raw[s - 2]) <= tol &&
          std::abs(raw[s - 2] - raw[s - 3]) <= tol) {
        return LimitValue::finite(raw.back());
      }
      if (std::abs(diag - prev_diag) <= tol) return LimitValue::finite(diag);
    }
    prev_diag = diag;
    prev_row = std::move(row);
  }
  throw NonConvergence(std::string(what) + ": index sweep did not settle up to n = " +
                       std::to_string(n0 << (kMaxLevels - 1)));
}

struct ClassKey {
  bool unbounded;
  double value;
};

ClassKey class_key(const DeltaFamily& f) {
  switch (f.shape) {
    case Shape::LambdaTriangle:
    case Shape::PrincipalValue:
      return {true, 0.0};
    case Shape::ShiftedPair:
      return f.j == 0 ? ClassKey{true, 0.0} : ClassKey{false, 0.0};
    case Shape::MShape:
      return {false, f.a};
  }
  return {true, 0.0};
}

bool same_class(const ClassKey& x, const ClassKey& y) {
  if (x.unbounded || y.unbounded) return x.unbounded && y.unbounded;
  return std::abs(x.value - y.value) <= 1e-12 * std::max(1.0, std::abs(x.value));
}

void require_compact(const DeltaFamily& f, const char* what) {
  validate(f);
  if (f.shape == Shape::PrincipalValue) {
    throw DomainError(std::string(what) +
                      ": principal-value sequences have unbounded support");
  }
}

// ∫ Π δ^{(i)}_{n_i}(u) f(u) du at fixed indices.
double product_integral(const std::vector<DeltaFamily>& fams, const RealFn& f,
                        const QuadratureSpec& spec) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& fam : fams) r = std::min(r, support_radius(fam));
  std::vector<double> breaks{-r, 0.0, r};
  for (const auto& fam : fams) {
    for (double k : kinks(fam)) {
      if (k > -r && k < r) breaks.push_back(k);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  auto integrand = [&](double u) {
    double v = f(u);
    for (const auto& fam : fams) v *= eval(fam, u);
    return v;
  };
  return quad::integrate_pieces(integrand, breaks, inner_spec(spec));
}

LimitValue nested_level(const std::vector<DeltaFamily>& factors, std::vector<long>& idx,
                        const RealFn& f, const QuadratureSpec& spec) {
  const std::size_t level = idx.size();
  if (level == factors.size()) {
    std::vector<DeltaFamily> fams;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      fams.push_back(with_index(factors[i], idx[i]));
    }
    return LimitValue::finite(product_integral(fams, f, spec));
  }
  long n0 = kFirstIndex;
  if (level > 0) {
    const long outer = *std::max_element(idx.begin(), idx.end());
    // Start once the inner support sits inside the outer linear pieces.
    n0 = next_pow2_at_least(8.0 * unit_reach(factors[level]) * static_cast<double>(outer));
  }
  return sweep_limit(
      [&](long n) {
        idx.push_back(n);
        const LimitValue v = nested_level(factors, idx, f, spec);
        idx.pop_back();
        return v;
      },
      n0, spec, "nested delta limit");
}

LimitValue nested_engine(const std::vector<DeltaFamily>& factors, const RealFn& f,
                         const QuadratureSpec& spec) {
  std::vector<long> idx;
  return nested_level(factors, idx, f, spec);
}

}  // namespace

DeltaFamily lambda_triangle(long n) { return {Shape::LambdaTriangle, n, 0, 0.0}; }
DeltaFamily m_shape(double a, long n) { return {Shape::MShape, n, 0, a}; }
DeltaFamily shifted_pair(int j, long n) { return {Shape::ShiftedPair, n, j, 0.0}; }
DeltaFamily principal_value(long n) { return {Shape::PrincipalValue, n, 0, 0.0}; }

DeltaFamily with_index(DeltaFamily family, long n) {
  family.n = n;
  return family;
}

double heaviside(double x) {
  if (x > 0) return 1.0;
  if (x < 0) return 0.0;
  return 0.5;
}

double sign(double x) {
  if (x > 0) return 1.0;
  if (x < 0) return -1.0;
  return 0.0;
}

void validate(const DeltaFamily& f) {
  if (f.n < 1) throw DomainError("delta family: index n must be positive");
  if (f.j < 0) throw DomainError("delta family: shift j must be nonnegative");
  if (!(f.a >= 0.0) || !std::isfinite(f.a)) {
    throw DomainError("delta family: M-shape height a must be finite and nonnegative");
  }
}

double eval(const DeltaFamily& f, double k) {
  const double nd = static_cast<double>(f.n);
  switch (f.shape) {
    case Shape::LambdaTriangle:
      return triangle(f.n, k);
    case Shape::ShiftedPair: {
      const double s = f.j / nd;
      return 0.5 * triangle(f.n, k - s) + 0.5 * triangle(f.n, -k - s);
    }
    case Shape::MShape: {
      const double eps = 1.0 / nd;
      const double a = f.a;
      if (k < -eps / 2 || k >= eps / 2) return 0.0;
      if (k < -eps / 4) return (4 * k / eps + 2) * (2 / eps - a / 2);
      if (k < 0) return -4 * k / eps * (2 / eps - 1.5 * a) + a;
      if (k < eps / 4) return 4 * k / eps * (2 / eps - 1.5 * a) + a;
      return (-4 * k / eps + 2) * (2 / eps - a / 2);
    }
    case Shape::PrincipalValue:
      if (k == 0.0) return nd / kPi;
      return std::sin(nd * k) / (kPi * k);
  }
  return 0.0;
}

double fourier(const DeltaFamily& f, double x) {
  const double nd = static_cast<double>(f.n);
  switch (f.shape) {
    case Shape::LambdaTriangle: {
      const double s = sinc(x / (2 * nd));
      return s * s / (2 * kPi);
    }
    case Shape::ShiftedPair: {
      const double s = sinc(x / (2 * nd));
      return s * s / (2 * kPi) * std::cos(f.j * x / nd);
    }
    case Shape::MShape: {
      const double eps = 1.0 / nd;
      const double s = sinc(eps * x / 8);
      return (eps * f.a + (4 - eps * f.a) * std::cos(eps * x / 4)) * s * s / (8 * kPi);
    }
    case Shape::PrincipalValue: {
      const double ax = std::abs(x);
      if (ax < nd) return 1.0 / (2 * kPi);
      if (ax == nd) return 0.5 / (2 * kPi);
      return 0.0;
    }
  }
  return 0.0;
}

double support_radius(const DeltaFamily& f) {
  const double nd = static_cast<double>(f.n);
  switch (f.shape) {
    case Shape::LambdaTriangle:
      return 1.0 / nd;
    case Shape::ShiftedPair:
      return (f.j + 1) / nd;
    case Shape::MShape:
      return 0.5 / nd;
    case Shape::PrincipalValue:
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

std::vector<double> kinks(const DeltaFamily& f) {
  const double nd = static_cast<double>(f.n);
  std::vector<double> out;
  switch (f.shape) {
    case Shape::LambdaTriangle:
      out = {-1 / nd, 0.0, 1 / nd};
      break;
    case Shape::ShiftedPair:
      for (int s : {-1, 1}) {
        for (int d : {-1, 0, 1}) out.push_back(s * (f.j + d) / nd);
      }
      break;
    case Shape::MShape:
      out = {-0.5 / nd, -0.25 / nd, 0.0, 0.25 / nd, 0.5 / nd};
      break;
    case Shape::PrincipalValue:
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double fourier_integral(const DeltaFamily& f, const QuadratureSpec& spec) {
  validate(f);
  const double nd = static_cast<double>(f.n);
  if (f.shape == Shape::PrincipalValue) return nd / kPi;
  // Truncation error at whole periods expands in powers of 1/X.
  const double period = (f.shape == Shape::MShape ? 8.0 : 2.0) * kPi * nd;
  QuadratureSpec qs = inner_spec(spec);
  // Periods can integrate to nearly zero; tie the floor to the period length.
  qs.abs_tol = std::max(qs.abs_tol, 1e-15 * period);
  auto g = [&](double x) { return fourier(f, x); };
  auto abs_g = [&](double x) { return std::abs(fourier(f, x)); };

  constexpr int kFirstPeriods = 4;
  double sum = 0.0, scale = 0.0;
  long done = 0;
  for (; done < kFirstPeriods; ++done) {
    sum += quad::integrate(g, done * period, (done + 1) * period, qs);
    scale += quad::integrate(abs_g, done * period, (done + 1) * period, qs);
  }
  const double tol = std::max(spec.abs_tol, spec.rel_tol * 2 * scale);
  std::vector<double> prev_row;
  double prev_diag = std::numeric_limits<double>::quiet_NaN();
  for (int level = 0; level < 16; ++level) {
    const long target = static_cast<long>(kFirstPeriods) << level;
    for (; done < target; ++done) {
      sum += quad::integrate(g, done * period, (done + 1) * period, qs);
    }
    std::vector<double> row{2 * sum};
    for (std::size_t c = 1; c <= prev_row.size(); ++c) {
      const double factor = std::ldexp(1.0, static_cast<int>(c)) - 1.0;
      row.push_back(row[c - 1] + (row[c - 1] - prev_row[c - 1]) / factor);
    }
    if (level >= 2 && std::abs(row.back() - prev_diag) <= tol) return row.back();
    prev_diag = row.back();
    prev_row = std::move(row);
  }
  throw NonConvergence("fourier_integral: truncation extrapolation did not settle");
}

double integrate_against(const DeltaFamily& family, const RealFn& f,
                         const QuadratureSpec& spec) {
  validate(family);
  if (family.shape == Shape::PrincipalValue) {
    // x = n k; the symmetrized integrand sin x/(πx)·[f(x/n) + f(−x/n)].
    const double nd = static_cast<double>(family.n);
    auto g = [&](double x) {
      const double s = x == 0.0 ? 1.0 / kPi : std::sin(x) / (kPi * x);
      return s * (f(x / nd) + f(-x / nd));
    };
    return quad::integrate_oscillatory_tail(g, 0.0, kPi, inner_spec(spec));
  }
  return product_integral({family}, f, spec);
}

double filtering_integral(const DeltaFamily& family, const RealFn& f,
                          const QuadratureSpec& spec) {
  validate(family);
  const LimitValue v = sweep_limit(
      [&](long n) {
        return LimitValue::finite(integrate_against(with_index(family, n), f, spec));
      },
      kFirstIndex, spec, "filtering_integral");
  if (v.is_divergent()) {
    throw NonConvergence("filtering_integral: integrals grow without bound; f must be "
                         "bounded near 0");
  }
  return v.value;
}

LimitValue nested_product_limit(const std::vector<DeltaFamily>& factors,
                                const RealFn& f, const QuadratureSpec& spec) {
  if (factors.empty()) throw DomainError("nested_product_limit: no factors");
  for (const auto& fam : factors) require_compact(fam, "nested_product_limit");
  const ClassKey key = class_key(factors.front());
  for (const auto& fam : factors) {
    if (!same_class(key, class_key(fam))) {
      throw IncompatibleClasses(
          "nested_product_limit: factors belong to different equivalence classes "
          "(different values at 0)");
    }
  }
  return nested_engine(factors, f, spec);
}

LimitValue power_filtering_integral(const DeltaFamily& family, int power,
                                    const RealFn& f, const QuadratureSpec& spec,
                                    LimitOrder order) {
  if (power < 1 || power > 8) {
    throw DomainError("power_filtering_integral: power must lie in [1, 8]");
  }
  std::vector<DeltaFamily> factors(power, family);
  if (order == LimitOrder::FirstInnermost) std::reverse(factors.begin(), factors.end());
  return nested_product_limit(factors, f, spec);
}

double convolve_eval(const DeltaFamily& fam1, long n, const DeltaFamily& fam2, long m,
                     double k, const QuadratureSpec& spec) {
  const DeltaFamily d1 = with_index(fam1, n);
  const DeltaFamily d2 = with_index(fam2, m);
  require_compact(d1, "convolve_eval");
  require_compact(d2, "convolve_eval");
  const double r1 = support_radius(d1), r2 = support_radius(d2);
  const double lo = std::max(-r2, k - r1), hi = std::min(r2, k + r1);
  if (!(lo < hi)) return 0.0;
  std::vector<double> breaks{lo, hi};
  for (double c : kinks(d2)) breaks.push_back(c);
  for (double c : kinks(d1)) breaks.push_back(k - c);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                              [&](double x) { return x < lo || x > hi; }),
               breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  auto integrand = [&](double kp) { return eval(d1, k - kp) * eval(d2, kp); };
  return quad::integrate_pieces(integrand, breaks, inner_spec(spec));
}

LimitValue convolve_inner_limit(const DeltaFamily& fam1, long n, const DeltaFamily& fam2,
                                double k, const QuadratureSpec& spec) {
  const long m0 = next_pow2_at_least(8.0 * unit_reach(fam2) * static_cast<double>(n));
  return sweep_limit(
      [&](long m) { return LimitValue::finite(convolve_eval(fam1, n, fam2, m, k, spec)); },
      m0, spec, "convolve_inner_limit");
}

LimitValue convolve_diagonal_limit(const DeltaFamily& family, double k,
                                   const QuadratureSpec& spec) {
  return sweep_limit(
      [&](long n) {
        return LimitValue::finite(convolve_eval(family, n, family, n, k, spec));
      },
      kFirstIndex, spec, "convolve_diagonal_limit");
}

bool measure_consistency_check(const MeasureDensity& rho, double a) {
  return a == 0.0 || rho.is_constant;
}

LimitValue measure_product_integral(const MeasureDensity& rho, double a, double p,
                                    double k, const RealFn& f, LimitOrder order,
                                    const QuadratureSpec& spec) {
  if (!rho.rho) throw DomainError("measure_product_integral: density is empty");
  const double rho_p = rho.rho(p), rho_pk = rho.rho(p + k);
  if (!(rho_p > 0.0) || !(rho_pk > 0.0)) {
    throw DomainError("measure_product_integral: density must be positive");
  }
  if (!(a >= 0.0)) throw DomainError("measure_product_integral: a must be nonnegative");
  // p′ = p + u; both kernels are symmetric M-shapes centred at u = 0.
  std::vector<DeltaFamily> factors{m_shape(a * rho_p, 1), m_shape(a * rho_pk, 1)};
  if (order == LimitOrder::FirstInnermost) std::reverse(factors.begin(), factors.end());
  auto weight = [&](double u) { return f(p + u) / rho.rho(p + u + k); };
  return nested_engine(factors, weight, spec);
}

std::vector<RootWeight> composed_delta_weights(const RealFn& f, const RealFn& f_prime,
                                               const std::vector<double>& roots,
                                               double derivative_tol) {
  std::vector<RootWeight> out;
  std::vector<double> sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("composed_delta_weights: repeated root");
  }
  for (double r : roots) {
    const double d = f_prime(r);
    if (!(std::abs(d) >= derivative_tol)) {
      throw SingularRoot("composed_delta_weights: f'(" + std::to_string(r) +
                         ") vanishes; δ[f] has no finite weight there");
    }
    const double residual = std::abs(f(r));
    if (residual > 1e-9 * std::max(1.0, std::abs(d) * std::max(1.0, std::abs(r)))) {
      throw DomainError("composed_delta_weights: f(" + std::to_string(r) +
                        ") is not zero");
    }
    out.push_back({r, 1.0 / std::abs(d)});
  }
  return out;
}

}  // namespace vacuumlab::deltaseq
