#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "vacuumlab/coulomb.hpp"
#include "vacuumlab/errors.hpp"
#include "vacuumlab/oscillator.hpp"
#include "vacuumlab/vacuum.hpp"

using namespace vacuumlab;
using namespace vacuumlab::oscillator;

namespace {

constexpr double kPi = std::numbers::pi;

double poisson(double mean, int n) {
  double p = std::exp(-mean);
  for (int k = 1; k <= n; ++k) p *= mean / k;
  return p;
}

}  // namespace

TEST_CASE("single oscillator, one frequency") {
  const auto rep = build_rep({1.0}, {1.0}, 6, 1);
  REQUIRE(rep.dim == 7);
  const Eigen::MatrixXcd a = Eigen::MatrixXcd(rep.a[0]);
  for (int n = 1; n <= 6; ++n) CHECK(a(n - 1, n) == cdouble(std::sqrt(n)));
  const Eigen::MatrixXcd c = a * a.adjoint() - a.adjoint() * a;
  // The top level carries the cutoff artifact.
  CHECK((c.topLeftCorner(6, 6) - Eigen::MatrixXcd::Identity(6, 6)).norm() < 1e-14);
  CHECK(std::abs(c(6, 6) - cdouble(-6.0)) < 1e-14);
}

TEST_CASE("frequency projectors") {
  const auto rep = build_rep({1.0, 2.5}, {0.4, 0.6}, 3, 1);
  for (std::size_t w = 0; w < 2; ++w) {
    const Eigen::MatrixXcd I = Eigen::MatrixXcd(rep.I[w]);
    CHECK((I * I - I).norm() < 1e-15);
    CHECK(std::abs(I.trace() - cdouble(4.0)) < 1e-15);
  }
  CHECK((Eigen::MatrixXcd(rep.I[0] * rep.I[1])).norm() == 0.0);

  const auto rep2 = build_rep({1.0, 2.5}, {0.4, 0.6}, 2, 2);
  const Eigen::MatrixXcd I2 = Eigen::MatrixXcd(rep2.I[0]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(I2);
  std::set<long> levels;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    levels.insert(std::lround(2 * es.eigenvalues()(i)));
    CHECK(std::abs(2 * es.eigenvalues()(i) - std::round(2 * es.eigenvalues()(i))) < 1e-13);
  }
  CHECK(levels == std::set<long>{0, 1, 2});

  for (const auto* r : {&rep, &rep2}) {
    SparseMatrix sum = r->I[0] + r->I[1];
    SparseMatrix id(r->dim, r->dim);
    id.setIdentity();
    CHECK(SparseMatrix(sum - id).norm() < 1e-14);
  }
}

TEST_CASE("dimension cap") {
  CHECK_THROWS_AS(build_rep({1.0, 2.0}, {0.5, 0.5}, 9, 6), DimensionCap);
  CHECK_THROWS_AS(build_rep({1.0, 2.0}, {0.5, 0.5}, 3, 3, 500), DimensionCap);
  CHECK_NOTHROW(build_rep({1.0, 2.0}, {0.5, 0.5}, 3, 3, 512));
  CHECK_THROWS_AS(build_rep({1.0, 2.0}, {0.5, 0.6}, 3, 1), DomainError);
  CHECK_THROWS_AS(build_rep({1.0, 1.0}, {0.5, 0.5}, 3, 1), DomainError);
}

TEST_CASE("oscillator algebra on the excitation-bounded subspace") {
  for (int N : {1, 2, 3}) {
    const auto rep = build_rep({0.7, 1.3, 3.0}, {0.2, 0.5, 0.3}, 3, N);
    CAPTURE(N);
    CHECK(commutator_residual(rep) < 1e-12);
    // Different frequencies commute exactly, with no truncation caveat.
    CHECK(SparseMatrix(rep.a[0] * rep.a_dag[2] - rep.a_dag[2] * rep.a[0]).norm() == 0.0);
    CHECK(SparseMatrix(rep.a[1] * rep.a_dag[0] - rep.a_dag[0] * rep.a[1]).norm() == 0.0);
  }

  const auto rep = build_rep({1.0, 2.0}, {0.3, 0.7}, 3, 3);
  CHECK(std::abs(rep.vacuum.norm() - 1.0) < 1e-14);
  for (std::size_t w = 0; w < 2; ++w) {
    CHECK((rep.a[w] * rep.vacuum).norm() == 0.0);
    const Eigen::VectorXcd one = rep.a_dag[w] * rep.vacuum;
    CHECK((rep.n_tilde[w] * one - one).norm() < 1e-14);
    // Squared norm of the one-excitation state is p_ω.
    CHECK(one.squaredNorm() == doctest::Approx(rep.weights[w]).epsilon(1e-14));
  }
}

TEST_CASE("binomial frequency counts") {
  const double p = 0.3;
  const auto rep = build_rep({1.0, 2.0}, {p, 1 - p}, 1, 3);
  double total = 0.0;
  for (int s = 0; s <= 3; ++s) {
    const double brute = frequency_count_probability(rep, rep.vacuum, 0, s);
    CHECK(std::abs(binomial_projector_prob(p, 3, s) - brute) < 1e-12);
    total += binomial_projector_prob(p, 3, s);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binomial_projector_prob(0.5, 2, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(binomial_projector_prob(0.5, 2, 3) == 0.0);
  CHECK_THROWS_AS(binomial_projector_prob(1.2, 2, 1), DomainError);
}

TEST_CASE("weak law of large numbers") {
  for (int N : {1, 7, 50, 1000}) {
    CHECK(wlln_average([](double x) { return x; }, 0.37, N) == doctest::Approx(0.37).epsilon(1e-13));
  }
  CHECK(wlln_average([](double x) { return x * x; }, 0.3, 100) ==
        doctest::Approx(0.09 + 0.21 / 100).epsilon(1e-13));
  CHECK(std::abs(wlln_average([](double x) { return std::sin(x); }, 0.5, 10000) - std::sin(0.5)) <
        1e-3);

  // The worst Lipschitz-1 function for a given p is |x − p|.
  for (int N : {4, 16, 64, 256}) {
    for (double p : {0.05, 0.3, 0.5, 0.81}) {
      const double dev = wlln_average([p](double x) { return std::abs(x - p); }, p, N);
      CAPTURE(N);
      CAPTURE(p);
      CHECK(dev <= 1 / (2 * std::sqrt(N)) + 1.0 / N);
    }
  }
}

TEST_CASE("Renyi-deformed Poisson statistics") {
  const std::vector<double> p{0.3, 0.7}, w{1.0, 2.5};

  // One oscillator: a p-weighted mixture of Poisson laws.
  for (int n = 0; n <= 8; ++n) {
    const double mix = p[0] * poisson(w[0], n) + p[1] * poisson(w[1], n);
    CHECK(renyi_poisson_pmf(p, w, 1, n) == doctest::Approx(mix).epsilon(1e-13));
    CHECK(renyi_poisson_pmf({1.0}, {1.7}, 1, n) == doctest::Approx(poisson(1.7, n)).epsilon(1e-13));
    CHECK(renyi_poisson_pmf({1.0}, {1.7}, 9, n) == doctest::Approx(poisson(1.7, n)).epsilon(1e-13));
  }

  // Generating function Σ pmf zⁿ = (Σ p e^{(z−1)w/N})^N.
  for (int N : {2, 5, 40}) {
    for (double z : {0.0, 0.5, 1.0}) {
      double lhs = 0.0, zn = 1.0;
      for (int n = 0; n <= 80; ++n, zn *= z) lhs += renyi_poisson_pmf(p, w, N, n) * zn;
      const double rhs = std::pow(p[0] * std::exp((z - 1) * w[0] / N) + p[1] * std::exp((z - 1) * w[1] / N), N);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }

  // Approach to the Shannon limit.
  double prev = INFINITY;
  for (int N : {10, 100, 1000, 10000}) {
    double gap = 0.0;
    for (int n = 0; n <= 30; ++n) {
      gap = std::max(gap, std::abs(renyi_poisson_pmf(p, w, N, n) - shannon_poisson_pmf(p, w, n)));
    }
    CAPTURE(N);
    CHECK(gap < prev);
    CHECK(gap < 2.0 / N);
    prev = gap;
  }

  CHECK_THROWS_AS(renyi_poisson_pmf({0.2, 0.3, 0.5}, {1, 1, 1}, 5000, 1, 1000), CombinatorialCap);
  CHECK_THROWS_AS(renyi_poisson_pmf({0.2, 0.3}, {1, 1}, 5, 1), DomainError);
}

TEST_CASE("Renyi statistics against the truncated Fock space") {
  const std::vector<double> omegas{1.0, 2.0}, p{0.35, 0.65};
  const std::vector<cdouble> alpha{{0.8, 0.3}, {-0.5, 1.1}};
  const std::vector<double> w{std::norm(alpha[0]), std::norm(alpha[1])};
  for (int N = 1; N <= 4; ++N) {
    const auto rep = build_rep(omegas, p, 6, N);
    const auto psi = coherent_state(rep, alpha);
    for (int n = 0; n <= 6; ++n) {
      CAPTURE(N);
      CAPTURE(n);
      CHECK(std::abs(renyi_poisson_pmf(p, w, N, n) - excitation_probability(rep, psi, n)) < 1e-10);
    }
  }
}

TEST_CASE("coherent states are generalized eigenvectors") {
  const std::vector<cdouble> alpha{{0.4, -0.2}, {0.3, 0.5}};
  for (int N : {1, 2, 3}) {
    const auto rep = build_rep({1.0, 2.0}, {0.5, 0.5}, 8, N);
    const auto psi = coherent_state(rep, alpha);
    for (std::size_t k = 0; k < 2; ++k) {
      const double resid = (rep.a[k] * psi - alpha[k] * (rep.I[k] * psi)).norm();
      // The cut falls on level n_max: a(N) cannot lower the missing level
      // n_max + 1, so the residual is |α| times the amplitude left at and
      // above n_max in one factor with intensity |α|²/N.
      double top = 0.0;
      for (std::size_t j = 0; j < 2; ++j) {
        double below = 0.0;
        for (int n = 0; n < rep.n_max; ++n) below += poisson(std::norm(alpha[j]) / N, n);
        top = std::max(top, 1.0 - below);
      }
      CAPTURE(N);
      CHECK(resid <= std::abs(alpha[k]) * std::sqrt(top));
    }
  }
}

TEST_CASE("Shannon Poisson") {
  CHECK(shannon_poisson_pmf({0.5, 0.5}, {0.0, 0.0}, 0) == 1.0);
  CHECK(shannon_poisson_pmf({0.5, 0.5}, {0.0, 0.0}, 3) == 0.0);
  double s = 0.0;
  for (int n = 0; n < 80; ++n) s += shannon_poisson_pmf({0.3, 0.7}, {1.0, 2.5}, n);
  CHECK(std::abs(s - 1.0) < 1e-12);
  CHECK(shannon_poisson_pmf({0.3, 0.7}, {1.0, 2.5}, 2) == doctest::Approx(poisson(2.05, 2)).epsilon(1e-14));
}

TEST_CASE("Kolmogorov-Nagumo averages") {
  const std::vector<double> p{0.1, 0.25, 0.4, 0.25}, A{-1.0, 0.3, 2.0, 4.5};
  const double mean = 0.1 * -1.0 + 0.25 * 0.3 + 0.4 * 2.0 + 0.25 * 4.5;
  for (double q : {-2.0, 0.0, 0.5, 0.999, 1.0, 1.5, 3.0}) {
    for (double C : {-3.0, 0.7, 10.0}) {
      std::vector<double> AC = A;
      for (double& x : AC) x += C;
      CHECK(std::abs(kn_average(q, p, AC) - kn_average(q, p, A) - C) < 1e-12);
    }
  }
  CHECK(kn_average(1.0, p, A) == doctest::Approx(mean).epsilon(1e-15));
  CHECK(std::abs(kn_average(1 + 1e-9, p, A) - mean) < 1e-12);
  CHECK(std::abs(kn_average(1 + 1e-7, p, A) - mean) < 1e-6);
  // Below 1 the average leans toward large values, above 1 toward small ones.
  CHECK(kn_average(0.5, p, A) > mean);
  CHECK(kn_average(1.5, p, A) < mean);

  double shannon = 0.0;
  for (double x : p) shannon -= x * std::log(x);
  for (double q : {0.3, 2.0, 5.0}) {
    double s = 0.0;
    for (double x : p) s += std::pow(x, q);
    CHECK(renyi_entropy(q, p) == doctest::Approx(std::log(s) / (1 - q)).epsilon(1e-13));
  }
  CHECK(renyi_entropy(1.0, p) == doctest::Approx(shannon).epsilon(1e-15));
  CHECK(std::abs(renyi_entropy(1 - 1e-6, p) - shannon) < 1e-5);

  // Additivity for independent distributions.
  const std::vector<double> p2{0.6, 0.3, 0.1};
  std::vector<double> prod;
  for (double x : p) {
    for (double y : p2) prod.push_back(x * y);
  }
  for (double q : {0.2, 0.9, 1.0, 2.5}) {
    CHECK(std::abs(renyi_entropy(q, prod) - renyi_entropy(q, p) - renyi_entropy(q, p2)) < 1e-12);
  }
}

TEST_CASE("source intensity") {
  CHECK(source_intensity(2.0, 3.0, 0.0) == 0.0);
  for (double k : {1e-6, 0.1, 1.0, 7.3, 1e4}) {
    for (double dt : {0.01, 1.0, 50.0}) {
      CHECK(source_intensity(1.5, k, dt) <= 2.25 * dt * dt * (1 + 1e-15));
    }
  }
  CHECK(source_intensity(1.0, 1e-7, 2.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(source_intensity(1.0, kPi, 2.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(source_intensity(1.0, 0.0, 1.0), DomainError);

  // Vacuum-averaged intensity is bounded by dt² for a normalized profile.
  const auto prof = vacuum::make_lorentz_profile(0.5, 1.0);
  const auto [lo, hi] = vacuum::effective_support(prof);
  for (double dt : {0.1, 1.0, 10.0}) {
    QuadratureSpec spec;
    const double avg =
        quad::integrate([&](double k) { return k * vacuum::density(prof, k) * source_intensity(1.0, k, dt); },
                        lo, hi, spec) /
        (4 * kPi * kPi);
    CHECK(avg > 0.0);
    CHECK(avg <= dt * dt * vacuum::radial_moment(prof, 0));
  }
}

TEST_CASE("radiative shift and the mirror image") {
  const double q = 0.8;
  const auto box = vacuum::make_box_profile(0.5, 3.0);
  CHECK(radiative_shift(box, q) == doctest::Approx(q * q * box.Z * 2.5 / (4 * kPi * kPi)).epsilon(1e-12));
  CHECK(radiative_shift(box, q) ==
        doctest::Approx(-0.5 * q * coulomb::mean_field(box, q, 1e-9)).epsilon(1e-8));

  const auto lor = vacuum::make_lorentz_profile(0.3, 2.0);
  for (const auto* prof : {&box, &lor}) {
    const double free = radiative_shift(*prof, q);
    for (double L : {0.1, 1.0, 4.0, 25.0}) {
      const double plane = radiative_shift(*prof, q, L);
      const double image = 0.5 * q * coulomb::mean_field(*prof, q, 2 * L);
      CAPTURE(L);
      CHECK(std::abs(plane - free - image) <= 1e-8 * std::abs(image));
    }
    // Far plane: the image term dies out.
    CHECK(std::abs(radiative_shift(*prof, q, 2000.0) - free) < 1e-3 * free);
  }

  CHECK_THROWS_AS(radiative_shift(vacuum::make_box_profile(0.0, 1.0), q), DomainError);
  CHECK_THROWS_AS(radiative_shift(box, q, -1.0), DomainError);
}
