#include <cmath>
#include <complex>
#include <numbers>

#include <doctest.h>

#include "mmwpt/beamforming.hpp"
#include "mmwpt/rng.hpp"

using namespace mmwpt;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// direct complex phase sum |sum_{i<n} e^{-j i w}|^2, the defining oracle
// accumulated in extended precision so the oracle's own rounding error
// (~4e-9 in double at n = 256) stays below the comparison tolerance
double complex_sum_gain(int n, double w) {
  std::complex<long double> s = 0.0L;
  for (int i = 0; i < n; ++i)
    s += std::polar(1.0L, -static_cast<long double>(w) * i);
  return static_cast<double>(std::norm(s));
}

// closed form of the one-sided mean kernel gain over independent uniform
// angles: n + 2 sum_{m=1}^{n-1} (n-m) J0(2 pi m d/lambda)^2, from expanding
// the kernel into harmonics and averaging e^{j m z sin(angle)} to J0(m z)
double mean_gain_bessel(int n, double spacing_ratio) {
  double acc = static_cast<double>(n);
  for (int m = 1; m < n; ++m) {
    const double j = std::cyl_bessel_j(0.0, kTwoPi * spacing_ratio * m);
    acc += 2.0 * (n - m) * j * j;
  }
  return acc;
}

}  // namespace

TEST_CASE("array response structure") {
  const auto broadside = beam::ula_response(6, 0.5, 0.0);
  for (const auto& v : broadside) {
    CHECK(v.real() == doctest::Approx(1.0));
    CHECK(v.imag() == doctest::Approx(0.0));
  }

  double norm2 = 0.0;
  for (const auto& v : beam::ula_response(4, 0.5, 1.234)) norm2 += std::norm(v);
  CHECK(norm2 == doctest::Approx(4.0).epsilon(1e-12));

  const auto endfire = beam::ula_response(2, 0.5, std::numbers::pi / 2.0);
  CHECK(endfire[0] == std::complex<double>(1.0, 0.0));
  CHECK(endfire[1].real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(endfire[1].imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kernel gain at removable singularities and nulls") {
  CHECK(beam::fejer_gain(8, 0.0) == doctest::Approx(64.0));
  CHECK(beam::fejer_gain(8, 1e-11) == doctest::Approx(64.0).epsilon(1e-12));
  CHECK(beam::fejer_gain(8, kTwoPi) == doctest::Approx(64.0).epsilon(1e-12));
  CHECK(beam::fejer_gain(1, 2.123) == doctest::Approx(1.0));
  CHECK(beam::fejer_gain(4, std::numbers::pi) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kernel gain equals the complex-sum oracle") {
  CHECK(beam::fejer_gain(5, 0.7) ==
        doctest::Approx(complex_sum_gain(5, 0.7)).epsilon(1e-12));
  Rng rng(2024, 0);
  double worst = 0.0;
  for (int i = 0; i < 50000; ++i) {
    const int n = 1 + static_cast<int>(rng.uniform() * 256.0);
    double w = rng.uniform(-8.0 * std::numbers::pi, 8.0 * std::numbers::pi);
    if (i % 50 == 0) w = rng.uniform(-1e-6, 1e-6);  // near-singular band
    worst = std::max(worst,
                     std::fabs(beam::fejer_gain(n, w) - complex_sum_gain(n, w)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("phase offset formula") {
  const beam::AnglePair pair{0.2, 1.1};
  CHECK(beam::phase_offset(0.5, pair) ==
        doctest::Approx(std::numbers::pi * (std::sin(1.1) - std::sin(0.2)))
            .epsilon(1e-12));
  CHECK(beam::phase_offset(0.5, {0.7, 0.7}) == doctest::Approx(0.0));
}

TEST_CASE("interference gain against the inner-product oracle") {
  const beam::GainKernelParams kp{8, 4, 0.5};

  SUBCASE("aligned pairs peak at N^2 M^2") {
    const beam::AnglePair a{0.3, 0.3}, b{1.0, 1.0};
    CHECK(beam::interference_gain(a, b, kp) ==
          doctest::Approx(16.0 * 64.0).epsilon(1e-12));
  }

  SUBCASE("a transmit-array null zeroes the product") {
    // M=8, d/lambda=1/2: offset pi(sin a - sin b) = pi/4 is the first null
    const beam::AnglePair rx{0.1, 0.1};
    const beam::AnglePair tx{std::asin(0.25), std::asin(0.5)};
    CHECK(beam::interference_gain(rx, tx, kp) ==
          doctest::Approx(0.0).epsilon(1e-18));
  }

  SUBCASE("random pairs match |a^H a|^2 products") {
    Rng rng(5, 0);
    for (int i = 0; i < 200; ++i) {
      const beam::AnglePair rx{rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi)};
      const beam::AnglePair tx{rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi)};
      auto inner = [](const std::vector<std::complex<double>>& u,
                      const std::vector<std::complex<double>>& v) {
        std::complex<double> s = 0.0;
        for (size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * v[k];
        return std::norm(s);
      };
      const double oracle =
          inner(beam::ula_response(kp.n_ue, kp.spacing_ratio, rx.beam_rad),
                beam::ula_response(kp.n_ue, kp.spacing_ratio, rx.actual_rad)) *
          inner(beam::ula_response(kp.m_bs, kp.spacing_ratio, tx.actual_rad),
                beam::ula_response(kp.m_bs, kp.spacing_ratio, tx.beam_rad));
      CHECK(beam::interference_gain(rx, tx, kp) ==
            doctest::Approx(oracle).epsilon(1e-9));
    }
  }
}

TEST_CASE("mean kernel gain closed-form oracle") {
  CHECK(beam::mean_kernel_gain(1, 0.5) == doctest::Approx(1.0));
  for (int n : {2, 4, 16, 32}) {
    CHECK(beam::mean_kernel_gain(n, 0.5) ==
          doctest::Approx(mean_gain_bessel(n, 0.5)).epsilon(1e-6));
  }
  // off-default spacing exercises the quadrature rather than a lucky lattice
  CHECK(beam::mean_kernel_gain(8, 0.37) ==
        doctest::Approx(mean_gain_bessel(8, 0.37)).epsilon(1e-6));
}

TEST_CASE("mean interference gain factorizes and matches Monte Carlo") {
  const beam::GainKernelParams kp{16, 16, 0.5};
  const double hbar = beam::mean_interference_gain(kp);
  CHECK(hbar == doctest::Approx(beam::mean_kernel_gain(16, 0.5) *
                                beam::mean_kernel_gain(16, 0.5))
                    .epsilon(1e-12));

  Rng rng(77, 0);
  double acc = 0.0;
  const long n = 10000000;
  for (long i = 0; i < n; ++i) {
    const beam::AnglePair rx{rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi)};
    const beam::AnglePair tx{rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi)};
    acc += beam::interference_gain(rx, tx, kp);
  }
  const double mc = acc / static_cast<double>(n);
  CHECK(std::fabs(mc - hbar) / hbar <= 0.005);
}

TEST_CASE("memoized mean interference gain is stable across calls") {
  const beam::GainKernelParams kp{32, 16, 0.5};
  const double a = beam::mean_interference_gain(kp);
  const double b = beam::mean_interference_gain(kp);
  CHECK(a == b);
  CHECK(a == doctest::Approx(mean_gain_bessel(32, 0.5) *
                             mean_gain_bessel(16, 0.5))
                 .epsilon(1e-6));
}
