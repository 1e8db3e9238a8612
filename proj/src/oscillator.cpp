#include "vacuumlab/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/distributions/binomial.hpp>

#include "vacuumlab/errors.hpp"

namespace vacuumlab::oscillator {
namespace {

constexpr double kPi = std::numbers::pi;

using Triplet = Eigen::Triplet<cdouble>;

// Embeds a single-site operator at every factor of the N-fold tensor power
// and sums the copies with weight `scale`.
SparseMatrix kronecker_sum(const Eigen::MatrixXcd& site, const TruncatedRep& rep, double scale) {
  const std::int64_t d = rep.site_dim;
  // Nonzero entries of each column of the site block.
  std::vector<std::vector<std::pair<std::int64_t, cdouble>>> cols(d);
  for (std::int64_t c = 0; c < d; ++c) {
    for (std::int64_t r = 0; r < d; ++r) {
      if (site(r, c) != cdouble(0.0)) cols[c].emplace_back(r, scale * site(r, c));
    }
  }
  std::vector<Triplet> trips;
  std::int64_t stride = rep.dim / d;
  for (int j = 0; j < rep.N; ++j, stride /= d) {
    for (std::int64_t g = 0; g < rep.dim; ++g) {
      const std::int64_t s = (g / stride) % d;
      for (const auto& [r, v] : cols[s]) {
        trips.emplace_back(static_cast<int>(g + (r - s) * stride), static_cast<int>(g), v);
      }
    }
  }
  SparseMatrix m(rep.dim, rep.dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

void require_distribution(const std::vector<double>& p, const char* who) {
  if (p.empty()) throw DomainError(std::string(who) + ": empty distribution");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw DomainError(std::string(who) + ": negative probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw DomainError(std::string(who) + ": probabilities must sum to 1");
  }
}

double poisson_mass(double mean, int n) {
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
}

}  // namespace

int TruncatedRep::excitations(std::int64_t index) const {
  int total = 0;
  for (int j = 0; j < N; ++j, index /= site_dim) total += static_cast<int>((index % site_dim) % (n_max + 1));
  return total;
}

int TruncatedRep::frequency_index(std::int64_t index, int factor) const {
  for (int j = N - 1; j > factor; --j) index /= site_dim;
  return static_cast<int>((index % site_dim) / (n_max + 1));
}

TruncatedRep build_rep(const std::vector<double>& omegas, const std::vector<double>& weights,
                       int n_max, int N, std::int64_t dimension_cap) {
  if (omegas.empty() || omegas.size() != weights.size()) {
    throw DomainError("build_rep: need one weight per frequency");
  }
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (!(omegas[i] > 0.0)) throw DomainError("build_rep: frequencies must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (omegas[i] == omegas[j]) throw DomainError("build_rep: frequencies must be distinct");
    }
  }
  require_distribution(weights, "build_rep");
  if (n_max < 1 || N < 1) throw DomainError("build_rep: n_max and N must be positive");

  TruncatedRep rep;
  rep.omegas = omegas;
  rep.weights = weights;
  rep.n_max = n_max;
  rep.N = N;
  rep.site_dim = static_cast<std::int64_t>(omegas.size()) * (n_max + 1);
  double dim = std::pow(static_cast<double>(rep.site_dim), N);
  if (dim > static_cast<double>(dimension_cap)) {
    throw DimensionCap("build_rep: dimension " + std::to_string(dim) + " exceeds the cap " +
                       std::to_string(dimension_cap));
  }
  rep.dim = 1;
  for (int j = 0; j < N; ++j) rep.dim *= rep.site_dim;

  const int levels = n_max + 1;
  const std::int64_t d = rep.site_dim;
  for (std::size_t w = 0; w < omegas.size(); ++w) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d), I = a, n = a;
    const std::int64_t base = static_cast<std::int64_t>(w) * levels;
    for (int k = 0; k < levels; ++k) {
      I(base + k, base + k) = 1.0;
      n(base + k, base + k) = static_cast<double>(k);
      if (k > 0) a(base + k - 1, base + k) = std::sqrt(static_cast<double>(k));
    }
    rep.site_a.push_back(a);
    rep.site_I.push_back(I);
    rep.site_n.push_back(n);
  }

  const double cN = 1.0 / std::sqrt(static_cast<double>(N));
  for (std::size_t w = 0; w < omegas.size(); ++w) {
    rep.a.push_back(kronecker_sum(rep.site_a[w], rep, cN));
    rep.a_dag.push_back(SparseMatrix(rep.a.back().adjoint()));
    rep.I.push_back(kronecker_sum(rep.site_I[w], rep, 1.0 / N));
    rep.n_tilde.push_back(kronecker_sum(rep.site_n[w], rep, 1.0));
  }

  Eigen::VectorXcd one = Eigen::VectorXcd::Zero(d);
  for (std::size_t w = 0; w < omegas.size(); ++w) one(w * levels) = std::sqrt(weights[w]);
  rep.vacuum = one;
  for (int j = 1; j < N; ++j) {
    Eigen::VectorXcd next(rep.vacuum.size() * d);
    for (Eigen::Index i = 0; i < rep.vacuum.size(); ++i) next.segment(i * d, d) = rep.vacuum(i) * one;
    rep.vacuum = std::move(next);
  }
  return rep;
}

double commutator_residual(const TruncatedRep& rep) {
  std::vector<Triplet> keep;
  for (std::int64_t g = 0; g < rep.dim; ++g) {
    if (rep.excitations(g) < rep.n_max) keep.emplace_back(g, g, 1.0);
  }
  SparseMatrix P(rep.dim, rep.dim);
  P.setFromTriplets(keep.begin(), keep.end());

  double worst = 0.0;
  const std::size_t m = rep.omegas.size();
  for (std::size_t w = 0; w < m; ++w) {
    for (std::size_t v = 0; v < m; ++v) {
      SparseMatrix c1 = rep.a[w] * rep.a_dag[v] - rep.a_dag[v] * rep.a[w];
      SparseMatrix c2 = rep.a[w] * rep.n_tilde[v] - rep.n_tilde[v] * rep.a[w];
      if (w == v) {
        c1 -= rep.I[w];
        c2 -= rep.a[w];
      }
      worst = std::max({worst, SparseMatrix(c1 * P).norm(), SparseMatrix(c2 * P).norm()});
    }
  }
  return worst;
}

Eigen::VectorXcd coherent_state(const TruncatedRep& rep, const std::vector<cdouble>& alphas) {
  if (alphas.size() != rep.omegas.size()) {
    throw DomainError("coherent_state: need one amplitude per frequency");
  }
  SparseMatrix raise(rep.dim, rep.dim);
  Eigen::VectorXd damp = Eigen::VectorXd::Zero(rep.dim);
  for (std::size_t w = 0; w < alphas.size(); ++w) {
    raise += alphas[w] * rep.a_dag[w];
    damp += std::norm(alphas[w]) * rep.I[w].diagonal().real();
  }
  // a(N)† is nilpotent on the truncated space, so the series terminates.
  Eigen::VectorXcd term = rep.vacuum, psi = rep.vacuum;
  for (int m = 1; m <= rep.N * rep.n_max; ++m) {
    term = raise * term / static_cast<double>(m);
    psi += term;
  }
  return (-0.5 * damp.array()).exp().cast<cdouble>() * psi.array();
}

double excitation_probability(const TruncatedRep& rep, const Eigen::VectorXcd& psi, int n) {
  double p = 0.0;
  for (std::int64_t g = 0; g < rep.dim; ++g) {
    if (rep.excitations(g) == n) p += std::norm(psi(g));
  }
  return p;
}

double frequency_count_probability(const TruncatedRep& rep, const Eigen::VectorXcd& psi,
                                   int omega_index, int s) {
  double p = 0.0;
  for (std::int64_t g = 0; g < rep.dim; ++g) {
    int count = 0;
    for (int j = 0; j < rep.N; ++j) count += rep.frequency_index(g, j) == omega_index;
    if (count == s) p += std::norm(psi(g));
  }
  return p;
}

double binomial_projector_prob(double p, int N, int s) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial_projector_prob: p outside [0, 1]");
  if (N < 1) throw DomainError("binomial_projector_prob: N must be positive");
  if (s < 0 || s > N) return 0.0;
  return boost::math::pdf(boost::math::binomial_distribution<double>(N, p), s);
}

double wlln_average(const std::function<double(double)>& F, double p, int N) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("wlln_average: p outside [0, 1]");
  if (N < 1) throw DomainError("wlln_average: N must be positive");
  const boost::math::binomial_distribution<double> dist(N, p);
  double sum = 0.0;
  for (int s = 0; s <= N; ++s) {
    const double w = boost::math::pdf(dist, s);
    if (w != 0.0) sum += F(static_cast<double>(s) / N) * w;
  }
  return sum;
}

double renyi_poisson_pmf(const std::vector<double>& probs, const std::vector<double>& intensities,
                         int N, int n, std::int64_t pattern_cap) {
  require_distribution(probs, "renyi_poisson_pmf");
  if (probs.size() != intensities.size()) {
    throw DomainError("renyi_poisson_pmf: need one intensity per probability");
  }
  for (double w : intensities) {
    if (!(w >= 0.0)) throw DomainError("renyi_poisson_pmf: intensities must be non-negative");
  }
  if (N < 1 || n < 0) throw DomainError("renyi_poisson_pmf: need N >= 1 and n >= 0");

  // Only modes with p > 0 contribute to the expansion of the N-th power.
  std::vector<double> logp, w;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) {
      logp.push_back(std::log(probs[i]));
      w.push_back(intensities[i]);
    }
  }
  const int m = static_cast<int>(w.size());
  // C(N + m − 1, m − 1) occupation patterns.
  const double patterns =
      std::exp(std::lgamma(N + m + 0.0) - std::lgamma(N + 1.0) - std::lgamma(m + 0.0));
  if (patterns > static_cast<double>(pattern_cap)) {
    throw CombinatorialCap("renyi_poisson_pmf: " + std::to_string(patterns) +
                           " occupation patterns exceed the cap");
  }

  const double log_nfact_N = std::lgamma(N + 1.0);
  double total = 0.0;
  std::vector<int> s(m, 0);
  // Depth-first over s_0 + … + s_{m−1} = N, accumulating the log multinomial
  // weight and Σ s_i w_i along the way.
  std::function<void(int, int, double, double)> visit = [&](int i, int left, double logw,
                                                            double load) {
    if (i == m - 1) {
      logw += left * logp[i] - std::lgamma(left + 1.0);
      load += left * w[i];
      total += std::exp(log_nfact_N + logw) * poisson_mass(load / N, n);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      visit(i + 1, left - k, logw + k * logp[i] - std::lgamma(k + 1.0), load + k * w[i]);
    }
  };
  visit(0, N, 0.0, 0.0);
  return total;
}

double shannon_poisson_pmf(const std::vector<double>& probs,
                           const std::vector<double>& intensities, int n) {
  require_distribution(probs, "shannon_poisson_pmf");
  if (probs.size() != intensities.size()) {
    throw DomainError("shannon_poisson_pmf: need one intensity per probability");
  }
  if (n < 0) return 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) mean += probs[i] * intensities[i];
  return poisson_mass(mean, n);
}

double kn_average(double q, const std::vector<double>& probs, const std::vector<double>& values) {
  require_distribution(probs, "kn_average");
  if (probs.size() != values.size()) throw DomainError("kn_average: size mismatch");
  const double eps = 1.0 - q;
  if (std::abs(eps) < 1e-8) {
    double mean = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) mean += probs[i] * values[i];
    return mean;
  }
  // ln Σ p e^{x} with x = εA, shifted by the largest x that carries weight.
  double shift = -INFINITY;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) shift = std::max(shift, eps * values[i]);
  }
  const double psum = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(shift) < 1.0) {
    // Small exponents: log1p keeps ε⟨A⟩ from being swamped by the leading 1.
    double s = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] > 0.0) s += probs[i] * std::expm1(eps * values[i]);
    }
    return (std::log(psum) + std::log1p(s / psum)) / eps;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) s += probs[i] * std::exp(eps * values[i] - shift);
  }
  return (shift + std::log(s)) / eps;
}

double renyi_entropy(double q, const std::vector<double>& probs) {
  std::vector<double> p, info;
  for (double x : probs) {
    if (x > 0.0) {
      p.push_back(x);
      info.push_back(-std::log(x));
    }
  }
  return kn_average(q, p, info);
}

double source_intensity(double q_charge, double k_abs, double dt) {
  if (!(k_abs > 0.0)) throw DomainError("source_intensity: |k| must be positive");
  const double s = std::sin(0.5 * k_abs * dt) / (0.5 * k_abs);
  return q_charge * q_charge * s * s;
}

double radiative_shift(const vacuum::VacuumProfile& profile, double q_charge,
                       std::optional<double> plane_gap, const QuadratureSpec& spec) {
  if (!vacuum::infrared_condition_check(profile, 2, spec)) {
    throw DomainError("radiative_shift: the profile fails the infrared condition");
  }
  const double q2 = q_charge * q_charge;
  const double free = q2 * vacuum::radial_moment(profile, 1, spec);
  if (!plane_gap) return free;
  const double L = *plane_gap;
  if (!(L > 0.0)) throw DomainError("radiative_shift: plane gap must be positive");

  // Image term (q²/4π²)∫ density sin(2κL)/(2κL) dκ, split at every half
  // period of the sine.
  const auto [lo, hi] = vacuum::effective_support(profile);
  const double half = kPi / (2 * L);
  const double pieces = (hi - lo) / half;
  if (pieces > 2e5) throw NonConvergence("radiative_shift: plane too far for the radial grid");
  std::vector<double> breaks{lo, hi, vacuum::peak_momentum(profile)};
  for (double k = std::ceil(lo / half) * half; k < hi; k += half) breaks.push_back(k);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const double image = quad::integrate_pieces(
      [&](double k) {
        const double x = 2 * k * L;
        const double sinc = x < 1e-8 ? 1.0 : std::sin(x) / x;
        return vacuum::density(profile, k) * sinc;
      },
      breaks, spec);
  return free - q2 * image / (4 * kPi * kPi);
}

}  // namespace vacuumlab::oscillator
