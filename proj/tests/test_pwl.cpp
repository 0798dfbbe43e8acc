#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "tauberian/config.hpp"
#include "tauberian/kernels.hpp"
#include "tauberian/mollified.hpp"
#include "tauberian/pwl.hpp"
#include "tauberian/quadrature.hpp"

using namespace tauberian;
namespace p = tauberian::pwl;

namespace {
constexpr double kPi = std::numbers::pi;

// branch-case references for the extremal examples
double tau2_ref(double x) {
    if (x <= 0.0) return 0.0;
    if (x <= kPi / 2) return x;
    const long N = 2 * std::lround(x / kPi);
    return (N % 4 == 2) ? -x + N * kPi / 2 : x - N * kPi / 2;
}

double alpha_ref(double x) {
    const double y = std::abs(x);
    const long N = 2 * static_cast<long>(std::floor(y / kPi));
    return (N % 4 == 0) ? (N + 1) * kPi / 2 - y : y - (N + 1) * kPi / 2;
}

double tau1_ref(double x) {  // valid away from the jump points (odd integers)
    if (x <= 0.0) return 0.0;
    if (x <= 1.0) return -x;
    const long N = 2 * std::lround(x / 2.0);
    return -x + N;
}

// dense scan lower bound for the moduli
double brute_modulus(const p::PiecewiseLinear& f, double delta, bool decrease) {
    const std::size_t s = f.tail_start_index();
    const double t0 = f.knots[s].x;
    const double P = f.last_x() - t0;
    double best = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double x = t0 + P * i / 2000.0;
        const double fx = f(x);
        for (int j = 0; j <= 400; ++j) {
            const double fv = f(x + delta * j / 400.0);
            best = std::max(best, decrease ? fx - fv : std::abs(fv - fx));
        }
    }
    return best;
}
}  // namespace

TEST_CASE("two-sided extremal example") {
    const auto f = p::build_two_sided_extremal();
    REQUIRE(f.is_continuous());
    REQUIRE(f(kPi / 2) == kPi / 2);
    REQUIRE(f(kPi) == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(f.tail_sup() == kPi / 2);
    REQUIRE(f.lipschitz() == 1.0);
    std::mt19937_64 gen(11);
    for (int i = 0; i < 200; ++i) {
        const double x = rng::uniform(gen, -5.0, 120.0);
        REQUIRE(f(x) == Catch::Approx(tau2_ref(x)).margin(1e-12));
    }
}

TEST_CASE("alpha triangle wave") {
    const auto a = p::build_alpha();
    REQUIRE(a(0.0) == kPi / 2);
    REQUIRE(a(kPi / 2) == 0.0);
    REQUIRE(a(kPi) == -kPi / 2);
    std::mt19937_64 gen(12);
    for (int i = 0; i < 200; ++i) {
        const double x = rng::uniform(gen, -60.0, 60.0);
        REQUIRE(a(x) == a(-x));
        REQUIRE(a(x) == Catch::Approx(alpha_ref(x)).margin(1e-12));
        REQUIRE(a(x + kPi) == Catch::Approx(-a(x)).margin(1e-12));
    }
}

TEST_CASE("one-sided sawtooth with jumps") {
    const auto f = p::build_one_sided_extremal();
    REQUIRE_FALSE(f.is_continuous());
    REQUIRE(f(1.0) == -1.0);  // left value at the jump
    REQUIRE(f(2.0) == 0.0);
    REQUIRE(f(3.5) == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(f(5.0) == -1.0);
    REQUIRE(f.tail_sup_abs() == 1.0);
    REQUIRE(f.lipschitz() == 1.0);
    std::mt19937_64 gen(13);
    for (int i = 0; i < 200; ++i) {
        double x = rng::uniform(gen, -2.0, 90.0);
        if (std::abs(x - (2 * std::round((x - 1) / 2) + 1)) < 1e-3) continue;  // skip jumps
        REQUIRE(f(x) == Catch::Approx(tau1_ref(x)).margin(1e-12));
    }
}

TEST_CASE("gamma and its offsets") {
    const double b0 = 0.3, b1 = 0.7;
    const auto g = p::build_gamma(b0, b1);
    REQUIRE(g(0.0) == b0 + kPi / 2);
    REQUIRE(g(0.4) == Catch::Approx(b0 + alpha_ref(0.4)).margin(1e-12));
    REQUIRE(g(2.0) == Catch::Approx(b1 / 2 + alpha_ref(2.0)).margin(1e-12));
    REQUIRE(g(4.0) == Catch::Approx(-2.5 * b1 + alpha_ref(4.0)).margin(1e-12));
    REQUIRE(g(2 * kPi) == Catch::Approx(b1 + kPi / 2).margin(1e-12));
    REQUIRE(g(-2.0) == g(2.0));  // even extension
    REQUIRE_THROWS_AS(p::build_gamma(0.0, -1.0), std::invalid_argument);

    // defining property of beta2: int gamma(x+pi) K = -int (beta1 + alpha) K
    auto K = [](double x) { return kernels::eval_sharp_kernel(x); };
    auto lhs = quadrature::integrate([&](double x) { return g(x + kPi) * K(x); }, -kPi / 2, kPi / 2,
                                     1e-12);
    auto rhs = quadrature::integrate([&](double x) { return (b1 + alpha_ref(x)) * K(x); }, -kPi / 2,
                                     kPi / 2, 1e-12);
    REQUIRE(lhs.value == Catch::Approx(-rhs.value).margin(1e-9));

    // first branch: int gamma K over the window equals int (beta0 + alpha) K
    auto win = quadrature::integrate([&](double x) { return g(x) * K(x); }, -kPi / 2, kPi / 2, 1e-12);
    auto win2 = quadrature::integrate([&](double x) { return (b0 + alpha_ref(x)) * K(x); },
                                      -kPi / 2, kPi / 2, 1e-12);
    REQUIRE(win.value == Catch::Approx(win2.value).margin(1e-10));
}

TEST_CASE("gamma-tilde integrates against K to zero") {
    const auto gt = p::build_gamma_tilde(0.7);
    auto K = [](double x) { return kernels::eval_sharp_kernel(x); };
    auto mid = quadrature::integrate([&](double x) { return gt(x) * K(x); }, -kPi / 2, kPi / 2, 1e-12);
    auto tail = quadrature::integrate_periodic_tail([&](double x) { return gt(x) * K(x); },
                                                    kPi / 2, 2 * kPi, 1e-10);
    REQUIRE(tail.converged);
    REQUIRE(std::abs(mid.value + 2 * tail.value) < 1e-8);
}

TEST_CASE("rescaling") {
    const auto f = p::build_two_sided_extremal();
    const auto same = p::rescale(f, 1.0, 1.0);
    for (double x : {0.3, 2.0, 9.1}) REQUIRE(same(x) == f(x));
    REQUIRE(p::rescale(f, 2.0, 1.0).lipschitz() == 0.5);
    const auto stretched = p::rescale(f, 1.0, 2.0);
    REQUIRE(stretched.period == 2.0 * f.period);
    REQUIRE(stretched.tail_sup() == 2.0 * f.tail_sup());
    REQUIRE_THROWS_AS(p::rescale(f, 0.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(p::rescale(f, 1.0, -2.0), std::invalid_argument);
}

TEST_CASE("lipschitz property on random pairs") {
    std::mt19937_64 gen(21);
    for (const auto& f : {p::build_two_sided_extremal(), p::build_alpha()}) {
        const double L = f.lipschitz();
        for (int i = 0; i < 10000; ++i) {
            const double x = rng::uniform(gen, -30.0, 90.0);
            const double y = rng::uniform(gen, -30.0, 90.0);
            REQUIRE(std::abs(f(x) - f(y)) <= L * std::abs(x - y) + 1e-11);
        }
    }
}

TEST_CASE("oscillation modulus of the two-sided example") {
    const auto f = p::build_two_sided_extremal();
    REQUIRE(p::oscillation_modulus(f, 0.3) == Catch::Approx(0.3).margin(1e-12));
    REQUIRE(p::oscillation_modulus(f, 3.0) == Catch::Approx(3.0).margin(1e-12));
    REQUIRE(p::oscillation_modulus(f, 5.0) == Catch::Approx(kPi).margin(1e-12));
    REQUIRE_THROWS_AS(p::oscillation_modulus(f, 0.0), std::invalid_argument);

    // subadditivity and the R-slow property Psi(delta)/delta maximal at 0+
    double prev_ratio = 1e300, prev = 0.0;
    for (double d : {0.1, 0.35, 0.8, 1.7, 2.9, 4.0, 7.3}) {
        const double v = p::oscillation_modulus(f, d);
        REQUIRE(v >= prev - 1e-12);
        REQUIRE(v / d <= prev_ratio + 1e-12);
        prev = v;
        prev_ratio = v / d;
    }
    for (double d1 : {0.2, 1.1, 2.5})
        for (double d2 : {0.4, 1.9}) {
            REQUIRE(p::oscillation_modulus(f, d1 + d2) <=
                    p::oscillation_modulus(f, d1) + p::oscillation_modulus(f, d2) + 1e-12);
        }
}

TEST_CASE("decrease modulus") {
    const auto saw = p::build_one_sided_extremal();
    REQUIRE(p::decrease_modulus(saw, 0.5) == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(p::decrease_modulus(saw, 1.99) == Catch::Approx(1.99).margin(1e-12));
    REQUIRE(p::decrease_modulus(saw, 5.0) == Catch::Approx(2.0).margin(1e-12));
    // jumps make the oscillation modulus saturate immediately
    REQUIRE(p::oscillation_modulus(saw, 0.5) == Catch::Approx(2.0).margin(1e-12));

    // non-decreasing tail has zero decrease modulus
    p::PiecewiseLinear up;
    up.knots = {p::Knot(0.0, 0.0), p::Knot(1.0, 1.0)};
    up.tail = p::TailKind::constant;
    REQUIRE(p::decrease_modulus(up, 2.0) == 0.0);
    REQUIRE(p::oscillation_modulus(up, 2.0) == 0.0);

    for (double d : {0.3, 1.2, 2.6}) {
        REQUIRE(p::decrease_modulus(saw, d) <= p::oscillation_modulus(saw, d) + 1e-15);
    }
}

TEST_CASE("moduli agree with the dense period scan") {
    const auto f = p::build_two_sided_extremal();
    const auto saw = p::build_one_sided_extremal();
    for (double d : {0.4, 1.3, 3.7}) {
        const double ex = p::oscillation_modulus(f, d);
        const double br = brute_modulus(f, d, false);
        REQUIRE(ex >= br - 1e-12);
        REQUIRE(ex <= br + 0.02);
        const double exd = p::decrease_modulus(saw, d);
        const double brd = brute_modulus(saw, d, true);
        REQUIRE(exd >= brd - 1e-12);
        REQUIRE(exd <= brd + 0.02);
    }
}

TEST_CASE("window average") {
    p::PiecewiseLinear cf;
    cf.knots = {p::Knot(0.0, 2.5), p::Knot(1.0, 2.5)};
    cf.tail = p::TailKind::constant;
    auto avg_c = p::window_average(cf, 0.7);
    for (double x : {0.0, 1.0, 5.5}) REQUIRE(avg_c(x) == Catch::Approx(2.5).margin(1e-13));

    p::PiecewiseLinear ramp;
    ramp.knots = {p::Knot(0.0, 0.0), p::Knot(10.0, 10.0)};
    ramp.tail = p::TailKind::constant;
    auto avg_r = p::window_average(ramp, 0.5);
    for (double x : {1.0, 4.2, 8.0}) REQUIRE(avg_r(x) == Catch::Approx(x + 0.25).margin(1e-13));

    const auto tau = p::build_two_sided_extremal();
    const double delta = 0.6;
    auto avg = p::window_average(tau, delta);
    REQUIRE(avg.lipschitz_bound() ==
            Catch::Approx(p::oscillation_modulus(tau, delta) / delta).margin(1e-15));
    std::mt19937_64 gen(31);
    for (int i = 0; i < 300; ++i) {
        const double x = rng::uniform(gen, 5.0, 60.0);
        const double h = rng::uniform(gen, 1e-4, 2.0);
        REQUIRE(std::abs(avg(x + h) - avg(x)) <= avg.lipschitz_bound() * h + 1e-10);
    }
    REQUIRE_THROWS_AS(p::window_average(tau, -1.0), std::invalid_argument);
}

TEST_CASE("serialization round-trips exactly") {
    for (const auto& f : {p::build_two_sided_extremal(), p::build_alpha(),
                          p::build_one_sided_extremal(), p::build_gamma(0.3, 0.7),
                          p::build_gamma_tilde(0.4)}) {
        const std::string text = p::serialize(f);
        const auto g = p::parse(text);
        REQUIRE(p::serialize(g) == text);
        REQUIRE(g.knots.size() == f.knots.size());
        for (std::size_t i = 0; i < f.knots.size(); ++i) {
            REQUIRE(g.knots[i].x == f.knots[i].x);
            REQUIRE(g.knots[i].left == f.knots[i].left);
            REQUIRE(g.knots[i].right == f.knots[i].right);
        }
        REQUIRE(g.period == f.period);
        REQUIRE(g.left_extension == f.left_extension);
    }
    REQUIRE_THROWS_AS(p::parse("garbage"), std::invalid_argument);
}

TEST_CASE("validate rejects malformed functions") {
    p::PiecewiseLinear bad;
    bad.knots = {p::Knot(0.0, 0.0), p::Knot(0.0, 1.0)};
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    p::PiecewiseLinear noper;
    noper.knots = {p::Knot(0.0, 0.0), p::Knot(1.0, 1.0)};
    noper.tail = p::TailKind::periodic;
    noper.period = 0.4;  // window start is not a knot
    REQUIRE_THROWS(noper.validate());
}

TEST_CASE("mollified sequence") {
    pwl::MollifiedSequence m8 = p::mollified_sequence(8);
    REQUIRE(std::abs(m8.grid_min() + 1.0) < 1e-3);
    REQUIRE(pwl::bump::psi_hat(0.0).real() == Catch::Approx(1.0).margin(1e-10));
    REQUIRE(pwl::bump::psi_hat(0.0).imag() == Catch::Approx(0.0).margin(1e-10));
    REQUIRE_THROWS_AS(p::mollified_sequence(0), std::invalid_argument);
    REQUIRE_THROWS_AS(p::mollified_sequence(100000000), std::runtime_error);

    // int_0^x rho_n equals the mollified primitive (psi_n * tau)(x)
    const auto tau = p::build_one_sided_extremal();
    auto conv = [&](int n, double x) {
        return quadrature::integrate(
                   [&](double y) { return pwl::bump::psi(y) * tau(x - y / n); }, 1.0, 3.0, 1e-11)
            .value;
    };
    for (double x : {0.9, 2.5, 4.2}) {
        auto cuts = m8.bump_edges(0.0, x);
        const double integral =
            quadrature::integrate([&](double u) { return m8.rho(u); }, 0.0, x, cuts, 1e-9, 40000)
                .value;
        REQUIRE(integral == Catch::Approx(conv(8, x)).margin(1e-6));
    }

    // away from the jumps the primitive converges to tau as n grows
    double err8 = 0.0, err64 = 0.0;
    for (double x = 0.31; x < 11.0; x += 0.83) {
        const double nearest_odd = 2.0 * std::round((x - 1.0) / 2.0) + 1.0;
        if (std::abs(x - nearest_odd) < 0.3) continue;
        err8 = std::max(err8, std::abs(conv(8, x) - tau(x)));
        err64 = std::max(err64, std::abs(conv(64, x) - tau(x)));
    }
    REQUIRE(err8 < 3.0 / 8 + 1e-9);
    REQUIRE(err64 < 3.0 / 64 + 1e-9);
    REQUIRE(err64 < err8);
}
