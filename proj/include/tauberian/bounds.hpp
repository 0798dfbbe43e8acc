#pragma once

// Tauberian constant formulas and sharpness checks: the two-sided pi/2 and
// one-sided pi bounds, oscillation/decrease-modulus bounds, the refined
// bound under the exponential Tauberian condition, the one-sided proof
// chain (Graham-Vaaler window and limit factor), the Fejer-kernel 4.1
// argument, and the kernel convolution probes behind all of them.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tauberian/kernels.hpp"
#include "tauberian/pwl.hpp"
#include "tauberian/quadrature.hpp"

namespace tauberian::bounds {

inline constexpr double pi = std::numbers::pi;

// ---------------------------------------------------------------------------
// verdict table
// ---------------------------------------------------------------------------

struct BoundReport {
    std::string name;
    double computed = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline BoundReport make_report(std::string name, double computed, double reference,
                               double tolerance) {
    BoundReport r{std::move(name), computed, reference, tolerance, false};
    r.pass = std::abs(computed - reference) <= tolerance;
    return r;
}

inline nlohmann::json to_json(const std::vector<BoundReport>& reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : reports)
        out.push_back({{"name", r.name},
                       {"computed", r.computed},
                       {"reference", r.reference},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
    return out;
}

inline std::string to_table(const std::vector<BoundReport>& reports) {
    std::size_t w = 4;
    for (const auto& r : reports) w = std::max(w, r.name.size());
    char buf[160];
    std::string out;
    std::snprintf(buf, sizeof(buf), "%-*s  %-24s %-24s %-12s %s\n", static_cast<int>(w), "name",
                  "computed", "reference", "tolerance", "pass");
    out += buf;
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof(buf), "%-*s  %-24.17g %-24.17g %-12.3g %s\n",
                      static_cast<int>(w), r.name.c_str(), r.computed, r.reference, r.tolerance,
                      r.pass ? "PASS" : "FAIL");
        out += buf;
    }
    return out;
}

// ---------------------------------------------------------------------------
// constant formulas
// ---------------------------------------------------------------------------

/// pi M / (2 lambda), the sharp two-sided constant
inline double two_sided_bound(double lambda, double M) {
    if (!(lambda > 0.0)) throw std::invalid_argument("two_sided_bound: lambda > 0 required");
    if (M < 0.0) throw std::invalid_argument("two_sided_bound: M >= 0 required");
    return pi * M / (2.0 * lambda);
}

/// pi M / lambda, the sharp one-sided constant
inline double one_sided_bound(double lambda, double M) {
    if (!(lambda > 0.0)) throw std::invalid_argument("one_sided_bound: lambda > 0 required");
    if (M < 0.0) throw std::invalid_argument("one_sided_bound: M >= 0 required");
    return pi * M / lambda;
}

/// (1 + theta pi / (2 lambda)) Theta
inline double ingham_refined_bound(double theta, double lambda, double Theta) {
    if (!(theta > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("ingham_refined_bound: theta, lambda > 0 required");
    return (1.0 + theta * pi / (2.0 * lambda)) * Theta;
}

/// Theta(theta) = (e^{pi theta} - 1) / (theta (1 + e^{pi theta}))
///              = tanh(pi theta / 2) / theta, overflow-safe for large theta.
inline double theta_sharpness(double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("theta_sharpness: theta > 0 required");
    return std::tanh(pi * theta / 2.0) / theta;
}

/// g(u) = (1 + u/4) . 2 (u e^u - e^u + 1) / (u (e^u - 1)); g -> 1 as u -> 0+
inline double one_sided_chain(double u) {
    if (!(u > 0.0)) throw std::invalid_argument("one_sided_chain: u > 0 required");
    double ratio;
    if (u < 0.1) {
        // (sum m u^{m-1}/(m+1)!) / (sum u^{m-1}/m!), both from m = 1
        double num = 0.0, den = 0.0, up = 1.0, fact = 1.0;
        for (int m = 1; m <= 14; ++m) {
            fact *= m;  // m!
            num += m * up / (fact * (m + 1));
            den += up / fact;
            up *= u;
        }
        ratio = num / den;
    } else {
        // overflow-safe rewrite (u - 1 + e^{-u}) / (u (1 - e^{-u}))
        const double em = std::exp(-u);
        ratio = (u - 1.0 + em) / (u * (1.0 - em));
    }
    return (1.0 + u / 4.0) * 2.0 * ratio;
}

/// The sharp Wiener-Ikehara window around M/theta:
/// lower = v/(e^v - 1) . M/theta, upper = lower e^v, v = 2 pi theta / lambda.
inline std::pair<double, double> graham_vaaler_window(double theta, double lambda, double M) {
    if (!(theta > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("graham_vaaler_window: theta, lambda > 0 required");
    if (M < 0.0) throw std::invalid_argument("graham_vaaler_window: M >= 0 required");
    const double v = 2.0 * pi * theta / lambda;
    const double lower = v / std::expm1(v) * (M / theta);
    return {lower, lower * std::exp(v)};
}

// ---------------------------------------------------------------------------
// modulus bound scan
// ---------------------------------------------------------------------------

struct OscBound {
    double value = 0.0;
    double delta = 0.0;  // argmin of the scanned objective
};

/// objective (1 + pi/(2 delta lambda)) psi(delta), or with pi/(delta lambda)
/// for the one-sided decrease-modulus version
inline double osc_bound_objective(const std::function<double(double)>& psi, double lambda,
                                  bool two_sided, double delta) {
    const double factor = two_sided ? 1.0 + pi / (2.0 * delta * lambda) : 1.0 + pi / (delta * lambda);
    return factor * psi(delta);
}

/// inf over delta > 0 of the modulus objective: 400 log-spaced points per
/// decade across [1e-4, 1e2], then golden-section refinement in log delta.
inline OscBound osc_bound(const std::function<double(double)>& psi, double lambda, bool two_sided) {
    if (!(lambda > 0.0)) throw std::invalid_argument("osc_bound: lambda > 0 required");
    auto score = [&](double ld) { return osc_bound_objective(psi, lambda, two_sided, std::exp(ld)); };
    const double lo = std::log(1e-4), hi = std::log(1e2);
    const int steps = 400 * 6;
    double best_ld = lo, best = score(lo);
    for (int i = 1; i <= steps; ++i) {
        const double ld = lo + (hi - lo) * i / steps;
        const double v = score(ld);
        if (v < best) {
            best = v;
            best_ld = ld;
        }
    }
    double a = std::max(lo, best_ld - (hi - lo) / steps);
    double b = std::min(hi, best_ld + (hi - lo) / steps);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = score(x1), f2 = score(x2);
    while (b - a > 1e-10 * std::max(1.0, std::abs(a))) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = score(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = score(x2);
        }
    }
    const double ld = 0.5 * (a + b);
    const double refined = score(ld);
    if (refined < best) return {refined, std::exp(ld)};
    return {best, std::exp(best_ld)};
}

// ---------------------------------------------------------------------------
// Fejer-kernel 4.1 argument
// ---------------------------------------------------------------------------

struct FejerReport {
    double first_constant = 0.0;    // 2 int_{-2.35}^{5.85} phi
    double second_constant = 0.0;   // int_{-2.35}^{5.85} (8.2 - (x + 2.35)) phi
    double mass = 0.0;              // int phi = 2 pi
    double rhs_first = 0.0;         // 2 pi (1 + eps/(S - 4.1))
    double rhs_second = 0.0;        // 4.1 mass + eps
    bool first_holds = false;
    bool second_holds = false;
};

inline FejerReport fejer_argument(double S = 4.2, double epsilon = 0.001) {
    if (!(S > 4.1)) throw std::invalid_argument("fejer_argument: S > 4.1 required");
    if (!(epsilon > 0.0)) throw std::invalid_argument("fejer_argument: epsilon > 0 required");
    const auto fejer = kernels::fejer_kernel();
    FejerReport r;
    const double cuts[1] = {0.0};
    r.first_constant =
        2.0 * quadrature::integrate([&](double x) { return fejer.eval(x); }, -2.35, 5.85,
                                    std::span<const double>(cuts, 1), 1e-11)
                  .value;
    r.second_constant = quadrature::integrate(
                            [&](double x) { return (8.2 - (x + 2.35)) * fejer.eval(x); }, -2.35,
                            5.85, std::span<const double>(cuts, 1), 1e-11)
                            .value;
    r.mass = kernels::kernel_mass(fejer, 1e-10);
    r.rhs_first = r.mass * (1.0 + epsilon / (S - 4.1));
    r.rhs_second = 4.1 * r.mass + epsilon;
    r.first_holds = r.first_constant > r.rhs_first;
    r.second_holds = r.second_constant > r.rhs_second;
    return r;
}

// ---------------------------------------------------------------------------
// kernel convolutions
// ---------------------------------------------------------------------------

/// int_{-pi/2}^{pi/2} f(x + y) K(x) dx with kink splitting
inline double windowed_convolution(const pwl::PiecewiseLinear& f,
                                   const kernels::BandLimitedKernel& kernel, double y,
                                   double tol = 1e-11) {
    std::vector<double> cuts = kernel.singular_points;
    for (double k : f.kinks_in(y - pi / 2, y + pi / 2)) cuts.push_back(k - y);
    auto r = quadrature::integrate([&](double x) { return f(x + y) * kernel.eval(x); }, -pi / 2,
                                   pi / 2, cuts, tol);
    if (!r.converged) throw std::runtime_error("windowed_convolution: quadrature failed");
    return r.value;
}

namespace detail {

// smallest common period of the function tail and the kernel oscillation
inline double common_period(double pf, double pk) {
    if (pf <= 0.0) return pk;
    for (int k = 1; k <= 64; ++k) {
        const double cand = k * pk;
        const double ratio = cand / pf;
        if (std::abs(ratio - std::round(ratio)) < 1e-9) return cand;
    }
    throw std::invalid_argument("full_convolution: incommensurate tail periods");
}

}  // namespace detail

/// int_R f(x + h) K(x) dx for eventually periodic f: an exact head plus the
/// telescoped periodic tails with the kernel envelope recentred at h.
inline double full_convolution(const pwl::PiecewiseLinear& f,
                               const kernels::BandLimitedKernel& kernel, double h,
                               double tol = 1e-9) {
    if (f.left_extension == pwl::LeftKind::even)
        throw std::invalid_argument("full_convolution: even-extended functions not supported");
    auto integrand = [&](double y) { return f(y) * kernel.eval(y - h); };

    const double pf = (f.tail == pwl::TailKind::periodic)
                          ? f.last_x() - f.knots[f.tail_start_index()].x
                          : 0.0;
    const double period = detail::common_period(pf, kernel.tail_period);

    // right tail start: beyond the prefix and the envelope's singular ring
    double y0 = std::max(f.last_x(), h + pi / 2 + 0.5);
    quadrature::Envelope env = kernels::detail::tail_envelope(kernel);
    env.shift = h;

    // left edge: zero extension cuts the integral at the support edge;
    // constant extension contributes a mirrored kernel tail
    double a0 = f.first_x();
    double left_tail = 0.0;
    if (f.left_extension == pwl::LeftKind::constant) {
        a0 = std::min(f.first_x(), h - pi / 2 - 0.5 - period);
        const double c = f.knots.front().left;
        if (c != 0.0) {
            quadrature::Envelope lenv = kernels::detail::tail_envelope(kernel);
            lenv.shift = 0.0;
            auto lt = quadrature::integrate_periodic_tail(
                [&](double u) { return c * kernel.eval(u); }, h - a0, kernel.tail_period, tol / 3,
                lenv);
            if (!lt.converged) throw std::runtime_error("full_convolution: left tail failed");
            left_tail = lt.value;
        }
    }

    std::vector<double> cuts = f.kinks_in(a0, y0);
    for (double sp : kernel.singular_points) cuts.push_back(h + sp);
    auto head = quadrature::integrate(integrand, a0, y0, cuts, tol / 3, 60000);
    if (!head.converged) throw std::runtime_error("full_convolution: head quadrature failed");

    auto tail = quadrature::integrate_periodic_tail(integrand, y0, period, tol / 3, env);
    if (!tail.converged) throw std::runtime_error("full_convolution: tail failed");

    return left_tail + head.value + tail.value;
}

/// 48 pi beta1 int_0^{pi/2} x cos x / ((pi^2 - 4x^2)(9 pi^2 - 4x^2)) dx,
/// the margin earned by gamma over gamma-tilde on [pi/2, 3 pi/2]; the
/// integrand is x K(x) / (2 (9 pi^2 - 4 x^2)), finite on the whole window.
/// Exactly linear in beta1 by construction.
inline double gamma_margin(double beta1) {
    if (!(beta1 > 0.0)) throw std::invalid_argument("gamma_margin: beta1 > 0 required");
    static const double unit = [] {
        auto r = quadrature::integrate(
            [](double x) {
                return x * kernels::eval_sharp_kernel(x) / (2.0 * (9.0 * pi * pi - 4.0 * x * x));
            },
            0.0, pi / 2, 1e-12);
        return 48.0 * pi * r.value;
    }();
    return beta1 * unit;
}

}  // namespace tauberian::bounds
