#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "tauberian/kernels.hpp"
#include "tauberian/quadrature.hpp"

using namespace tauberian;
namespace k = tauberian::kernels;

namespace {
constexpr double kPi = std::numbers::pi;

// closed-form second derivative of 2 cos x / (pi^2 - 4 x^2), used as the
// independent oracle for the quadrature route (valid away from +-pi/2)
double sharp_d2_closed(double x) {
    const double d = kPi * kPi - 4.0 * x * x;
    const double g = 1.0 / d;
    const double gp = 8.0 * x / (d * d);
    const double gpp = 8.0 / (d * d) + 128.0 * x * x / (d * d * d);
    return -2.0 * std::cos(x) * g - 4.0 * std::sin(x) * gp + 2.0 * std::cos(x) * gpp;
}
}  // namespace

TEST_CASE("sharp kernel point values") {
    REQUIRE(k::eval_sharp_kernel(0.0) == Catch::Approx(2.0 / (kPi * kPi)).epsilon(1e-15));
    REQUIRE(k::eval_sharp_kernel(kPi / 2) == Catch::Approx(1.0 / (2.0 * kPi)).margin(1e-16));
    REQUIRE(k::eval_sharp_kernel(-kPi / 2) == k::eval_sharp_kernel(kPi / 2));
    // series window straddles the removable point smoothly
    REQUIRE(k::eval_sharp_kernel(kPi / 2 + 0.99e-4) ==
            Catch::Approx(k::eval_sharp_kernel(kPi / 2 + 1.01e-4)).epsilon(1e-7));
    REQUIRE_THROWS_AS(k::eval_sharp_kernel(std::numeric_limits<double>::quiet_NaN()),
                      std::invalid_argument);
}

TEST_CASE("evenness is exact for all sampled points") {
    for (double x : {0.1, 0.5, kPi / 2, 1.9, 4.4, 12.3, 77.7}) {
        REQUIRE(k::eval_sharp_kernel(x) == k::eval_sharp_kernel(-x));
        REQUIRE(k::jackson_kernel().eval(x) == k::jackson_kernel().eval(-x));
        REQUIRE(k::fejer_kernel().eval(x) == k::fejer_kernel().eval(-x));
    }
}

TEST_CASE("fourier transform of the sharp kernel") {
    REQUIRE(k::eval_sharp_kernel_ft(0.0) == 1.0);
    REQUIRE(k::eval_sharp_kernel_ft(1.0) == 0.0);
    REQUIRE(k::eval_sharp_kernel_ft(2.0) == 0.0);
    REQUIRE(k::eval_sharp_kernel_ft(0.5) == Catch::Approx(std::cos(kPi / 4)).epsilon(1e-15));
}

TEST_CASE("derivative is odd, negative on (0, pi/2), and smooth at the seam") {
    REQUIRE(k::eval_sharp_kernel_derivative(0.7) < 0.0);
    REQUIRE(k::eval_sharp_kernel_derivative(-0.7) == -k::eval_sharp_kernel_derivative(0.7));
    REQUIRE(k::eval_sharp_kernel_derivative(kPi / 2 - 0.99e-4) ==
            Catch::Approx(k::eval_sharp_kernel_derivative(kPi / 2 - 1.01e-4)).epsilon(1e-6));
    // finite difference cross-check
    const double h = 1e-6;
    const double fd =
        (k::eval_sharp_kernel(0.7 + h) - k::eval_sharp_kernel(0.7 - h)) / (2.0 * h);
    REQUIRE(k::eval_sharp_kernel_derivative(0.7) == Catch::Approx(fd).margin(1e-9));
}

TEST_CASE("second derivative: quadrature route matches the closed form") {
    // frozen value at 0 from the band-limited representation:
    // K''(0) = -(1/2pi) int t^2 cos(pi t/2) dt = -2/pi^2 + 16/pi^4
    const double at0 = -2.0 / (kPi * kPi) + 16.0 / (kPi * kPi * kPi * kPi);
    REQUIRE(k::eval_kernel_derivative2(0.0) == Catch::Approx(at0).margin(1e-11));
    for (double x : {0.3, 0.7, 1.2, 1.5}) {
        REQUIRE(k::eval_kernel_derivative2(x) == Catch::Approx(sharp_d2_closed(x)).margin(1e-10));
        REQUIRE(k::eval_kernel_derivative2(x) < 0.0);
    }
    REQUIRE(k::eval_kernel_derivative2(0.7) == k::eval_kernel_derivative2(-0.7));
}

TEST_CASE("extremum locations of the translate ratio") {
    REQUIRE(k::extremum_location(1) == Catch::Approx(-kPi / 2).margin(1e-15));
    REQUIRE(k::extremum_location(2) ==
            Catch::Approx(kPi * (-2.0 + std::sqrt(3.0)) / 2.0).margin(1e-15));
    for (int N = 2; N <= 40; ++N) {
        const double e = k::extremum_location(N);
        REQUIRE(e < 0.0);
        REQUIRE(e > -kPi / 2);
        REQUIRE(std::abs(e) < kPi / (4.0 * N - 2.0));
    }
    REQUIRE_THROWS_AS(k::extremum_location(0), std::invalid_argument);
}

TEST_CASE("closed-form extrema match the numeric argextrema") {
    for (int N = 2; N <= 6; ++N)
        REQUIRE(k::ratio_argextremum(N) == Catch::Approx(k::extremum_location(N)).margin(1e-6));
}

TEST_CASE("translate ratio values and domain") {
    for (int N : {1, 2, 3}) {
        const double expect = k::eval_sharp_kernel(N * kPi) * kPi * kPi / 2.0;
        REQUIRE(k::eval_ratio(N, 0.0) == Catch::Approx(expect).epsilon(1e-14));
    }
    // ratio carries the sign of the translated kernel on the window
    for (double x : {-1.2, -0.3, 0.4, 1.3}) {
        REQUIRE(std::signbit(k::eval_ratio(2, x)) == std::signbit(k::eval_sharp_kernel(x + 2 * kPi)));
        REQUIRE(std::signbit(k::eval_ratio(3, x)) == std::signbit(k::eval_sharp_kernel(x + 3 * kPi)));
    }
    // e_2 is a local extremum: both grid neighbours sit on the same side
    const double e2 = k::extremum_location(2);
    const double v = k::eval_ratio(2, e2);
    const double vl = k::eval_ratio(2, e2 - 1e-4), vr = k::eval_ratio(2, e2 + 1e-4);
    REQUIRE((vl - v) * (vr - v) > 0.0);
    REQUIRE_THROWS_AS(k::eval_ratio(2, kPi / 2), std::domain_error);
    REQUIRE_THROWS_AS(k::eval_ratio(2, -kPi / 2), std::domain_error);
}

TEST_CASE("competitor kernel fourier transforms") {
    const auto j = k::jackson_kernel();
    const auto f = k::fejer_kernel();
    REQUIRE(j.fourier(0.0) == 1.0);
    REQUIRE(j.fourier(1.0) == 0.0);
    REQUIRE(j.fourier(1.5) == 0.0);
    REQUIRE(j.fourier(0.5) == Catch::Approx(0.25).epsilon(1e-15));  // both branches agree
    REQUIRE(f.fourier(0.0) == Catch::Approx(2 * kPi).epsilon(1e-15));
    REQUIRE(f.fourier(0.5) == Catch::Approx(kPi).epsilon(1e-15));
    REQUIRE(f.fourier(1.2) == 0.0);
}

TEST_CASE("jackson fourier transform matches direct quadrature") {
    // int phi(x) cos(t x) dx at t = 0.5 via head + telescoped power-law tail
    const auto j = k::jackson_kernel();
    const double t = 0.5;
    auto head = quadrature::integrate([&](double x) { return j.eval(x) * std::cos(t * x); }, 0.0,
                                      32 * kPi, j.singular_points, 1e-12);
    quadrature::Envelope env;
    env.kind = quadrature::Envelope::Kind::power_law;
    env.power = 4;
    auto tail = quadrature::integrate_periodic_tail(
        [&](double x) { return j.eval(x) * std::cos(t * x); }, 32 * kPi, 4 * kPi, 1e-11, env);
    REQUIRE(tail.converged);
    REQUIRE(2.0 * (head.value + tail.value) == Catch::Approx(j.fourier(t)).margin(1e-8));
}

TEST_CASE("kernel masses match the fourier transforms at zero") {
    REQUIRE(k::kernel_mass(k::sharp_kernel()) == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(k::kernel_mass(k::jackson_kernel()) == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(k::kernel_mass(k::fejer_kernel()) == Catch::Approx(2 * kPi).margin(1e-8));
}

TEST_CASE("first-moment constant: jackson converges, sharp and fejer diverge") {
    const double jc = k::kernel_constant(k::jackson_kernel());
    REQUIRE(jc == Catch::Approx(12.0 * std::log(2.0) / kPi).margin(1e-6));
    REQUIRE(jc < 6.0);
    REQUIRE(std::isinf(k::kernel_constant(k::sharp_kernel())));
    REQUIRE(std::isinf(k::kernel_constant(k::fejer_kernel())));
}
