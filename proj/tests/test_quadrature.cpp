#include <cmath>
#include <numbers>

#include <doctest.h>

#include "mmwpt/quadrature.hpp"

using namespace mmwpt;

TEST_CASE("polynomial over a finite interval") {
  const auto r = quad::integrate([](double x) { return x; }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("symmetric integrand cancels to zero") {
  quad::QuadSpec spec;
  spec.abs_tol = 1e-12;
  const auto r = quad::integrate([](double x) { return std::sin(x); }, 0.0,
                                 2.0 * std::numbers::pi, spec);
  CHECK(r.converged);
  CHECK(std::fabs(r.value) <= 1e-12);
}

TEST_CASE("integrable endpoint singularity") {
  // closed-form antiderivative 2*sqrt(x) as the oracle
  const auto r =
      quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("breakpoints resolve interior kinks") {
  // |x - 0.3| over [0,1]: 0.3^2/2 + 0.7^2/2
  auto f = [](double x) { return std::fabs(x - 0.3); };
  const auto r = quad::integrate(f, 0.0, 1.0, std::vector<double>{0.3});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-12));
}

TEST_CASE("degenerate and reversed limits") {
  const auto r = quad::integrate([](double x) { return x; }, 2.0, 2.0);
  CHECK(r.converged);
  CHECK(r.value == 0.0);
}

TEST_CASE("convergence flag reports failure honestly") {
  quad::QuadSpec spec;
  spec.rel_tol = 1e-14;
  spec.abs_tol = 0.0;
  spec.max_subdivisions = 2;
  const auto r = quad::integrate(
      [](double x) { return std::sin(50.0 * x) * std::cos(121.7 * x); }, 0.0,
      10.0, spec);
  CHECK_FALSE(r.converged);
}

TEST_CASE("semi-infinite exponential tail") {
  const auto r = quad::integrate_semi_inf([](double x) { return std::exp(-x); },
                                          0.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("semi-infinite power-law tail") {
  const auto r =
      quad::integrate_semi_inf([](double x) { return 1.0 / (x * x); }, 1.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("blockage-scale Gamma integral") {
  // int_0^inf x exp(-x/q) dx = q^2; q = 141.4 matches the decay-length scale
  const double q = 141.4;
  const auto r = quad::integrate_semi_inf(
      [q](double x) { return x * std::exp(-x / q); }, 0.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(q * q).epsilon(1e-9));
}

TEST_CASE("semi-infinite with breakpoints and nonzero origin") {
  const double q = 141.4;
  const auto r = quad::integrate_semi_inf(
      [q](double x) { return x * std::exp(-x / q); }, 3.5,
      std::vector<double>{10.0, 500.0});
  const double u = 3.5 / q;
  const double exact = q * q * std::exp(-u) * (1.0 + u);
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("truncation tail policy") {
  quad::QuadSpec spec;
  spec.tail_policy = quad::TailPolicy::truncate_at_radius;
  spec.trunc_radius = 60.0;
  const auto r = quad::integrate_semi_inf([](double x) { return std::exp(-x); },
                                          0.0, spec);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-dimensional unit integrand") {
  const auto r = quad::integrate_2d([](double, double) { return 1.0; }, 0.0,
                                    1.0, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-dimensional separable product") {
  const auto r = quad::integrate_2d([](double x, double y) { return x * y; },
                                    0.0, 1.0, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("two-dimensional symmetric cancellation") {
  quad::QuadSpec spec;
  spec.abs_tol = 1e-9;
  const auto r = quad::integrate_2d(
      [](double x, double y) { return std::sin(x) * std::sin(y); }, 0.0,
      2.0 * std::numbers::pi, 0.0, 2.0 * std::numbers::pi, spec);
  CHECK(std::fabs(r.value) <= 1e-8);
}

TEST_CASE("error estimate brackets the true error") {
  const auto r = quad::integrate(
      [](double x) { return std::exp(x) * std::cos(10.0 * x); }, 0.0, 3.0);
  const double exact =
      (std::exp(3.0) * (std::cos(30.0) + 10.0 * std::sin(30.0)) - 1.0) / 101.0;
  CHECK(std::fabs(r.value - exact) <= std::max(r.err_estimate, 1e-12));
}

TEST_CASE("looser scales both tolerances") {
  quad::QuadSpec spec;
  spec.rel_tol = 1e-9;
  spec.abs_tol = 1e-14;
  const auto l = spec.looser(10.0);
  CHECK(l.rel_tol == doctest::Approx(1e-8));
  CHECK(l.abs_tol == doctest::Approx(1e-13));
  CHECK(l.max_subdivisions == spec.max_subdivisions);
}
