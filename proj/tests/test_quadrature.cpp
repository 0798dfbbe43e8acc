#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "tauberian/config.hpp"
#include "tauberian/kernels.hpp"
#include "tauberian/quadrature.hpp"

using namespace tauberian;
namespace q = tauberian::quadrature;

namespace {
constexpr double kPi = std::numbers::pi;

double alpha_wave(double x) {
    x = std::fmod(std::abs(x), 2 * kPi);
    return x <= kPi ? kPi / 2 - x : x - 3 * kPi / 2;
}

double lemma31_integrand(double x) { return kernels::eval_sharp_kernel(x) * alpha_wave(x); }
}  // namespace

TEST_CASE("adaptive integral of sin over [0, pi]") {
    auto r = q::integrate([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12);
    REQUIRE(r.converged);
    REQUIRE(std::abs(r.value - 2.0) < 1e-12);
}

TEST_CASE("base rule is exact on monomials within its degree") {
    for (int k = 0; k <= 13; ++k) {
        auto r = q::integrate([k](double x) { return std::pow(x, k); }, 0.0, 1.0, 1e-13);
        REQUIRE(std::abs(r.value - 1.0 / (k + 1)) < 1e-14);
    }
}

TEST_CASE("odd integrand over a symmetric interval vanishes") {
    auto r = q::integrate([](double x) { return x * x * x * std::cos(x); }, -1.0, 1.0, 1e-12);
    REQUIRE(std::abs(r.value) < 1e-12);
}

TEST_CASE("declared-singularity splitting matches the series evaluation of K") {
    // raw formula (0/0 at the window edges, never sampled once pre-split)
    auto raw = [](double x) { return 2.0 * std::cos(x) / (kPi * kPi - 4.0 * x * x); };
    const double cuts[2] = {-kPi / 2, kPi / 2};
    auto a = q::integrate(raw, -kPi / 2, kPi / 2, std::span<const double>(cuts, 2), 1e-12);
    auto b = q::integrate([](double x) { return kernels::eval_sharp_kernel(x); }, -kPi / 2, kPi / 2,
                          1e-12);
    REQUIRE(a.converged);
    REQUIRE(std::isfinite(a.value));
    REQUIRE(std::abs(a.value - b.value) < 2e-11);
}

TEST_CASE("invalid arguments are rejected") {
    REQUIRE_THROWS_AS(q::integrate([](double) { return 0.0; }, 1.0, 0.0, 1e-10),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(q::integrate([](double) { return 0.0; }, 0.0, 1.0, -1.0),
                      std::invalid_argument);
}

TEST_CASE("error estimate bounds the true error on randomized smooth integrands") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        const double a1 = rng::uniform(gen, -2.0, 2.0);
        const double a2 = rng::uniform(gen, 0.5, 6.0);
        const double a3 = rng::uniform(gen, -3.0, 3.0);
        const double a4 = rng::uniform(gen, -1.0, 1.0);
        auto f = [=](double x) { return a1 * std::sin(a2 * x + a3) + a4 * x * x + std::exp(-x * x); };
        auto ref = q::integrate(f, -2.0, 3.0, 1e-13);
        auto coarse = q::integrate(f, -2.0, 3.0, 1e-6);
        REQUIRE(std::abs(coarse.value - ref.value) <= coarse.error_estimate + 1e-12);
    }
}

TEST_CASE("telescoped tail agrees with brute-force summation of 1e4 periods") {
    const double start = kPi / 2, P = kPi;
    auto full = q::integrate_periodic_tail(lemma31_integrand, start, P, 1e-12);
    REQUIRE(full.converged);

    double brute = 0.0, comp = 0.0;
    for (int k = 0; k < 10000; ++k) {
        auto seg = q::integrate(lemma31_integrand, start + k * P, start + (k + 1) * P, 1e-13);
        const double y = seg.value - comp;
        const double t = brute + y;
        comp = (t - brute) - y;
        brute = t;
    }
    auto rest = q::integrate_periodic_tail(lemma31_integrand, start + 10000 * P, P, 1e-12);
    REQUIRE(rest.converged);
    REQUIRE(std::abs(full.value - (brute + rest.value)) < 1e-9);
}

TEST_CASE("periodic tail of the kernel reproduces the analytic total") {
    // int_R K = Khat(0) = 1
    auto mid = q::integrate([](double x) { return kernels::eval_sharp_kernel(x); }, -kPi / 2,
                            kPi / 2, 1e-13);
    auto tail = q::integrate_periodic_tail([](double x) { return kernels::eval_sharp_kernel(x); },
                                           kPi / 2, 2 * kPi, 1e-11);
    REQUIRE(tail.converged);
    REQUIRE(std::abs(mid.value + 2 * tail.value - 1.0) < 1e-9);
}

TEST_CASE("constant-zero integrand sums to exactly zero") {
    auto r = q::integrate_periodic_tail([](double) { return 0.0; }, kPi, kPi, 1e-12);
    REQUIRE(r.converged);
    REQUIRE(r.value == 0.0);
}

TEST_CASE("non-decaying per-period contributions are flagged as divergent") {
    auto slow = [](double x) { return (2.0 + std::cos(x)) / x; };
    auto r = q::integrate_periodic_tail(slow, 10.0, 2 * kPi, 1e-10);
    REQUIRE_FALSE(r.converged);
}

TEST_CASE("identity check combines the two error estimates") {
    q::QuadratureResult a{1.0, 1e-10, 1, true};
    q::QuadratureResult b{1.0 + 5e-9, 1e-10, 1, true};
    REQUIRE(q::check_identity(a, b, 5e-9));
    REQUIRE_FALSE(q::check_identity(a, b, 1e-9));
    q::QuadratureResult c{2.0, 0.0, 1, true};
    REQUIRE_FALSE(q::check_identity(a, c, 1e-8));
}
