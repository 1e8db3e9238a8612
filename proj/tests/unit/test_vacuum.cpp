#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "vacuumlab/errors.hpp"
#include "vacuumlab/vacuum.hpp"

using namespace vacuumlab;
using namespace vacuumlab::vacuum;

namespace {
constexpr double kPi = std::numbers::pi;
double K(int nu, double x) { return boost::math::cyl_bessel_k(nu, x); }
}  // namespace

TEST_CASE("Lorentz profile constants") {
  const auto p = make_lorentz_profile(1.0, 1.0);
  CHECK(p.norm_const == doctest::Approx(2 * kPi * kPi / K(2, 2.0)).epsilon(1e-13));
  CHECK(p.Z / p.norm_const == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(physical_charge(1.5, p) ==
        doctest::Approx(1.5 * std::sqrt(2 * kPi * kPi * std::exp(-2.0) / K(2, 2.0))));

  const auto q = make_lorentz_profile(0.09, 2.0);
  CHECK(q.norm_const ==
        doctest::Approx(2 * kPi * kPi * 4.0 / (0.09 * K(2, 0.6))).epsilon(1e-13));
  CHECK_THROWS_AS(make_lorentz_profile(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(make_lorentz_profile(1.0, -1.0), DomainError);
}

TEST_CASE("Lorentz normalization against an independent radial oracle") {
  const double lam = 0.3, y0 = 0.7;
  const auto p = make_lorentz_profile(lam * lam, y0);
  auto f = [&](double k) {
    return k * p.norm_const * std::exp(-lam * lam / (y0 * k) - y0 * k) / (4 * kPi * kPi);
  };
  const double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-12);
  CHECK(oracle == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(radial_moment(p, 0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("normalization over the parameter grid") {
  for (double lam : {1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0}) {
    for (double y0 : {1e-3, 1e-2, 0.3, 1.0, 10.0}) {
      const auto p = make_lorentz_profile(lam * lam, y0);
      CHECK(std::abs(radial_moment(p, 0) - 1.0) < 1e-8);
    }
  }
  for (auto [k1, k2] : {std::pair{1.0, 3.0}, std::pair{1e-4, 1e3}, std::pair{2.0, 2.5}}) {
    CHECK(std::abs(radial_moment(make_box_profile(k1, k2), 0) - 1.0) < 1e-12);
  }
}

TEST_CASE("inverse moments") {
  const double lam = 0.4, y0 = 1.3;
  const auto p = make_lorentz_profile(lam * lam, y0);
  // ∫κ^{−1}e^{−a/κ−bκ} = 2K0(2√(ab)), ∫e^{−a/κ−bκ} = 2√(a/b)K1(2√(ab)).
  CHECK(radial_moment(p, 2) ==
        doctest::Approx(p.norm_const * 2 * K(0, 2 * lam) / (4 * kPi * kPi)).epsilon(1e-10));
  CHECK(radial_moment(p, 1) ==
        doctest::Approx(p.norm_const * 2 * lam / y0 * K(1, 2 * lam) / (4 * kPi * kPi))
            .epsilon(1e-10));
  for (double l2 : {1e-12, 1e-4, 1.0}) {
    CHECK(std::isfinite(radial_moment(make_lorentz_profile(l2, 0.5), 2)));
  }
  CHECK(radial_moment(make_box_profile(1.0, 3.0), 2) ==
        doctest::Approx(kPi * kPi * std::log(3.0) / (4 * kPi * kPi)));
}

TEST_CASE("box profile") {
  const auto p = make_box_profile(1.0, 3.0);
  CHECK(p.Z == doctest::Approx(kPi * kPi));
  CHECK(physical_charge(2.0, p) == doctest::Approx(2 * kPi));
  CHECK(physical_charge(2.0, p) ==
        doctest::Approx(2.0 * 2 * std::sqrt(2.0) * kPi / std::sqrt(8.0)));
  CHECK(physical_charge(0.0, p) == 0.0);
  CHECK(cutoff(p, 2.0) == 1.0);
  CHECK(cutoff(p, 0.5) == 0.0);
  CHECK(cutoff(p, 3.5) == 0.0);
  CHECK_THROWS_AS(make_box_profile(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(make_box_profile(2.0, 1.0), DomainError);
}

TEST_CASE("cutoff function") {
  const double lam = 0.25, y0 = 0.5;
  const auto p = make_lorentz_profile(lam * lam, y0);
  CHECK(cutoff(p, lam / y0) == doctest::Approx(1.0).epsilon(1e-15));
  double best = 0.0;
  for (double k = 1e-3; k < 100; k *= 1.01) {
    const double c = cutoff(p, k);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    CHECK(c == doctest::Approx(std::exp(-lam * lam / (y0 * k) - y0 * k + 2 * lam))
                   .epsilon(1e-12));
    CHECK(density(p, k) == doctest::Approx(p.Z * c).epsilon(1e-14));
    best = std::max(best, c);
  }
  CHECK(best == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(peak_momentum(p) == doctest::Approx(0.5));
}

TEST_CASE("infrared boundary condition") {
  const auto lor = make_lorentz_profile(0.01, 1.0);
  for (int n = 1; n <= 4; ++n) {
    CHECK(infrared_condition_check(lor, n));
    CHECK(infrared_condition_check(make_box_profile(0.5, 2.0), n));
  }
  CHECK(infrared_condition_check(make_lorentz_profile(1e-12, 1e-3), 4));
  VacuumProfile open_box;
  open_box.kind = ProfileKind::BoxShell;
  open_box.k1 = 0.0;
  open_box.k2 = 2.0;
  open_box.Z = 8 * kPi * kPi / 4.0;
  CHECK_FALSE(infrared_condition_check(open_box, 4));
  CHECK_FALSE(infrared_condition_check(open_box, 1));
  CHECK_THROWS_AS(infrared_condition_check(lor, 5), DomainError);
}
