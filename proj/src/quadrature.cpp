#include "vacuumlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vacuumlab/errors.hpp"

namespace vacuumlab::quad {
namespace {

using GK21 = boost::math::quadrature::gauss_kronrod<double, 21>;
constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class T>
std::pair<std::function<T(double)>, std::pair<double, double>> map_interval(
    const std::function<T(double)>& f, double a, double b) {
  const bool ia = std::isinf(a), ib = std::isinf(b);
  if (!ia && !ib) return {f, {a, b}};
  if (ia && ib) {
    auto g = [f](double t) -> T {
      const double d = 1.0 - t * t;
      const double x = t / d;
      return f(x) * ((1.0 + t * t) / (d * d));
    };
    return {g, {-1.0, 1.0}};
  }
  if (ib) {
    auto g = [f, a](double t) -> T {
      const double d = 1.0 - t;
      return f(a + t / d) / (d * d);
    };
    return {g, {0.0, 1.0}};
  }
  auto g = [f, b](double t) -> T {
    const double d = 1.0 - t;
    return f(b - t / d) / (d * d);
  };
  return {g, {0.0, 1.0}};
}

template <class T>
T adaptive(const std::function<T(double)>& f0, double a, double b,
           const QuadratureSpec& spec, double* err_out, int* subdiv_out) {
  if (a == b) return T(0);
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  auto [f, range] = map_interval<T>(f0, a, b);
  auto eval = [&](double lo, double hi, T* value) {
    double err = 0.0, l1 = 0.0;
    *value = GK21::integrate(f, lo, hi, 0, 0.0, &err, &l1);
    // Boost reports the Kronrod-Gauss difference on the reference interval.
    err *= 0.5 * (hi - lo);
    return std::max(err, 10.0 * kEps * l1);
  };

  struct Item {
    double lo, hi, err;
    T value;
    bool operator<(const Item& o) const { return err < o.err; }
  };
  std::priority_queue<Item> heap;
  T total{};
  double total_err = 0.0;
  {
    T v;
    const double e = eval(range.first, range.second, &v);
    heap.push({range.first, range.second, e, v});
    total = v;
    total_err = e;
  }
  int subdiv = 1;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (subdiv >= spec.max_subdivisions) {
      throw NonConvergence("adaptive quadrature: subdivision budget exhausted on [" +
                           std::to_string(a) + ", " + std::to_string(b) +
                           "], error estimate " + std::to_string(total_err));
    }
    Item top = heap.top();
    heap.pop();
    const double mid = 0.5 * (top.lo + top.hi);
    if (!(mid > top.lo && mid < top.hi)) {
      throw NonConvergence("adaptive quadrature: interval collapsed near " +
                           std::to_string(top.lo));
    }
    T v1, v2;
    const double e1 = eval(top.lo, mid, &v1);
    const double e2 = eval(mid, top.hi, &v2);
    total += v1 + v2 - top.value;
    total_err += e1 + e2 - top.err;
    heap.push({top.lo, mid, e1, v1});
    heap.push({mid, top.hi, e2, v2});
    ++subdiv;
    if (subdiv % 64 == 0) {
      // Re-accumulate to keep the running sums free of drift.
      auto copy = heap;
      total = T(0);
      total_err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().err;
        copy.pop();
      }
    }
  }
  if (err_out) *err_out = total_err;
  if (subdiv_out) *subdiv_out = subdiv;
  return sign * total;
}

}  // namespace

Estimate integrate_estimate(const RealFn& f, double a, double b,
                            const QuadratureSpec& spec) {
  Estimate est;
  est.value = adaptive<double>(f, a, b, spec, &est.error, &est.subdivisions);
  return est;
}

double integrate(const RealFn& f, double a, double b, const QuadratureSpec& spec) {
  return adaptive<double>(f, a, b, spec, nullptr, nullptr);
}

std::complex<double> integrate_complex(const ComplexFn& f, double a, double b,
                                       const QuadratureSpec& spec) {
  return adaptive<std::complex<double>>(f, a, b, spec, nullptr, nullptr);
}

double integrate_pieces(const RealFn& f, const std::vector<double>& breaks,
                        const QuadratureSpec& spec) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    sum += integrate(f, breaks[i], breaks[i + 1], spec);
  }
  return sum;
}

double wynn_epsilon(const std::vector<double>& s) {
  const std::size_t n = s.size();
  if (n < 3) return n ? s.back() : 0.0;
  std::vector<double> prev(n + 1, 0.0);  // eps_{k-1}
  std::vector<double> cur(s);            // eps_k
  double best = s.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const double diff = cur[j + 1] - cur[j];
      if (diff == 0.0 || !std::isfinite(diff)) return best;
      next[j] = prev[j + 1] + 1.0 / diff;
    }
    if (k % 2 == 0) {
      if (!std::isfinite(next.back())) return best;
      best = next.back();
    }
    prev = cur;
    cur = next;
    if (cur.size() < 2) break;
  }
  return best;
}

double integrate_oscillatory_tail(const RealFn& f, double a, double half_period,
                                  const QuadratureSpec& spec, int max_cycles) {
  std::vector<double> partial;
  double sum = 0.0;
  double last = std::numeric_limits<double>::quiet_NaN();
  int stable = 0;
  for (int i = 0; i < max_cycles; ++i) {
    sum += integrate(f, a + i * half_period, a + (i + 1) * half_period, spec);
    partial.push_back(sum);
    if (partial.size() < 8) continue;
    const std::size_t window = std::min<std::size_t>(partial.size(), 21);
    std::vector<double> tail(partial.end() - window, partial.end());
    const double est = wynn_epsilon(tail);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(est));
    if (std::abs(est - last) <= tol) {
      if (++stable >= 2) return est;
    } else {
      stable = 0;
    }
    last = est;
  }
  throw NonConvergence("oscillatory tail: accelerated partial sums did not settle");
}

}  // namespace vacuumlab::quad
