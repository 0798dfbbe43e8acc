#pragma once

// Exact Laplace transforms of eventually-periodic piecewise-linear functions
// (per-segment closed forms plus the geometric series for the tail, no
// quadrature), the closed-form transforms of the extremal examples, and
// boundary-segment probing on the imaginary axis.

#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tauberian/mollified.hpp"
#include "tauberian/pwl.hpp"

namespace tauberian::laplace {

inline constexpr double pi = std::numbers::pi;
using complex = std::complex<double>;

/// evaluation was requested exactly at a pole of the boundary extension
struct SingularPointError : std::domain_error {
    std::vector<double> singular_set;  // t values on the imaginary axis
    SingularPointError(const std::string& msg, std::vector<double> set)
        : std::domain_error(msg), singular_set(std::move(set)) {}
};

namespace detail {

// E_k(L, s) = int_0^L u^{k-1} e^{-su} du, series-evaluated when |sL| is small
inline void segment_moments(double L, complex s, complex& E1, complex& E2, complex& E3) {
    const complex z = s * L;
    if (std::abs(z) < 0.5) {
        complex t1 = 0, t2 = 0, t3 = 0, zp = 1.0;
        double fact = 1.0;
        for (int k = 0; k < 24; ++k) {
            if (k > 0) {
                fact *= k;
                zp *= -z;
            }
            const double inv = 1.0 / fact;
            t1 += zp * (inv / (k + 1));
            t2 += zp * (inv / (k + 2));
            t3 += zp * (inv / (k + 3));
        }
        E1 = L * t1;
        E2 = L * L * t2;
        E3 = L * L * L * t3;
        return;
    }
    const complex em = std::exp(-z);
    E1 = (1.0 - em) / s;
    E2 = (1.0 - (1.0 + z) * em) / (s * s);
    E3 = (2.0 - (2.0 + 2.0 * z + z * z) * em) / (s * s * s);
}

struct WindowIntegrals {
    complex value;       // int over the window of f e^{-sx}
    complex derivative;  // -int over the window of x f e^{-sx}
    double scale;        // magnitude yardstick for removability tests
};

inline WindowIntegrals window_transform(const pwl::PiecewiseLinear& f, std::size_t first,
                                        std::size_t last, complex s) {
    WindowIntegrals w{0.0, 0.0, 0.0};
    for (std::size_t i = first; i < last; ++i) {
        const auto& a = f.knots[i];
        const auto& b = f.knots[i + 1];
        const double L = b.x - a.x;
        const double v = a.right;
        const double m = (b.left - a.right) / L;
        complex E1, E2, E3;
        segment_moments(L, s, E1, E2, E3);
        const complex phase = std::exp(-s * a.x);
        w.value += phase * (v * E1 + m * E2);
        w.derivative -= phase * (a.x * (v * E1 + m * E2) + v * E2 + m * E3);
        w.scale += (std::abs(v) + std::abs(m) * L) * L * std::abs(phase);
    }
    return w;
}

}  // namespace detail

/// Boundary-axis poles of the transform of f within |t| <= t_max: the
/// geometric-series denominator zeros 2 pi k / period whose window integral
/// does not vanish, and t = 0 for non-closing tails.
inline std::vector<double> singular_boundary_points(const pwl::PiecewiseLinear& f, double t_max) {
    std::vector<double> out;
    if (f.tail == pwl::TailKind::constant) {
        if (f.knots.back().right != 0.0) out.push_back(0.0);
        return out;
    }
    const std::size_t s0 = f.tail_start_index();
    const double P = f.last_x() - f.knots[s0].x;
    for (int k = -static_cast<int>(t_max * P / (2 * pi)); k <= static_cast<int>(t_max * P / (2 * pi)); ++k) {
        const double t = 2 * pi * k / P;
        if (std::abs(t) > t_max) continue;
        auto w = detail::window_transform(f, s0, f.knots.size() - 1, complex(0.0, t));
        if (std::abs(w.value) > 1e-9 * (1.0 + w.scale)) out.push_back(t);
    }
    return out;
}

/// Exact transform of an eventually-periodic piecewise-linear function for
/// Re s > 0, extended to the imaginary axis by the geometric-series formula;
/// removable denominator zeros are evaluated by the L'Hopital limit.
inline complex laplace_pwl_exact(const pwl::PiecewiseLinear& f, complex s) {
    if (f.left_extension != pwl::LeftKind::zero)
        throw std::invalid_argument("laplace_pwl_exact: requires support in [0, infinity)");
    if (s.real() < 0.0)
        throw std::invalid_argument("laplace_pwl_exact: requires Re s >= 0");

    auto prefix = detail::window_transform(f, 0, f.knots.size() - 1, s);
    complex total = prefix.value;

    if (f.tail == pwl::TailKind::constant) {
        const double c = f.knots.back().right;
        if (c != 0.0 && std::abs(s) < 1e-300)
            throw SingularPointError("laplace_pwl_exact: pole at s = 0", {0.0});
        if (c != 0.0) total += c * std::exp(-s * f.last_x()) / s;
        return total;
    }

    const std::size_t s0 = f.tail_start_index();
    const double P = f.last_x() - f.knots[s0].x;
    auto window = detail::window_transform(f, s0, f.knots.size() - 1, s);
    const complex den = 1.0 - std::exp(-s * P);
    if (std::abs(den) < 1e-9) {
        if (std::abs(window.value) <= 1e-8 * (1.0 + window.scale))
            return total + window.derivative / P;  // removable: L'Hopital limit
        throw SingularPointError("laplace_pwl_exact: s lies in the transform's singular set",
                                 singular_boundary_points(f, std::abs(s.imag()) + 2 * pi / P + 1.0));
    }
    return total + window.value * std::exp(-s * P) / den;
}

// ---------------------------------------------------------------------------
// closed forms
// ---------------------------------------------------------------------------

namespace detail {

// (1 - e^{-a}) / a, entire after the removable origin
inline complex expm1_ratio(complex a) {
    if (std::abs(a) < 0.5) {
        complex sum = 0.0, ap = 1.0;
        double fact = 1.0;
        for (int k = 0; k < 22; ++k) {
            if (k > 0) {
                fact *= k;
                ap *= -a;
            }
            sum += ap / (fact * (k + 1));
        }
        return sum;
    }
    return (1.0 - std::exp(-a)) / a;
}

// (sinh s - s) / s^3, entire
inline complex sinh_defect(complex s) {
    const complex s2 = s * s;
    if (std::abs(s) < 0.5) {
        complex sum = 0.0, p = 1.0;
        double fact = 6.0;  // 3!
        for (int m = 0; m < 12; ++m) {
            if (m > 0) {
                p *= s2;
                fact *= (2.0 * m + 2.0) * (2.0 * m + 3.0);
            }
            sum += p / fact;
        }
        return sum;
    }
    return (std::sinh(s) - s) / (s2 * s);
}

// sinh(s) / s, entire; vanishes exactly at s = i k pi, k != 0
inline complex sinhc(complex s) {
    const complex s2 = s * s;
    if (std::abs(s) < 0.5) {
        complex sum = 0.0, p = 1.0;
        double fact = 1.0;
        for (int m = 0; m < 12; ++m) {
            if (m > 0) {
                p *= s2;
                fact *= (2.0 * m) * (2.0 * m + 1.0);
            }
            sum += p / fact;
        }
        return sum;
    }
    return std::sinh(s) / s;
}

}  // namespace detail

/// (1 - e^{-pi s/2})^2 / (s^2 (1 + e^{-pi s})), organized so the only
/// singularity source left is the denominator factor 1 + e^{-pi s}
/// (zeros at s = i t, t odd); the origin is removable with value pi^2/8.
inline complex closed_form_two_sided(complex s) {
    const complex g = detail::expm1_ratio(pi * s / 2.0);
    const complex den = 1.0 + std::exp(-pi * s);
    if (std::abs(den) < 1e-12)
        throw SingularPointError("closed_form_two_sided: pole at odd imaginary integers",
                                 {-1.0, 1.0});
    return (pi * pi / 4.0) * g * g / den;
}

/// -1/s^2 + 2 e^{-s} / (s (1 - e^{-2s})) = -(sinh s - s)/(s^2 sinh s);
/// removable origin with value -1/6, poles at s = i k pi, k != 0.
inline complex closed_form_one_sided(complex s) {
    const complex sc = detail::sinhc(s);
    if (std::abs(sc) < 1e-12)
        throw SingularPointError("closed_form_one_sided: pole at nonzero multiples of i pi",
                                 {-pi, pi});
    return -detail::sinh_defect(s) / sc;
}

/// L{rho_n; i t} = psi_hat(t/n) (-1/(it) + 2 e^{-it}/(1 - e^{-2it})) on
/// (-pi, pi); the scalar factor is -s (sinh s - s)/(s^2 sinh s) at s = it, so
/// the value at t = 0 is exactly 0.
inline complex closed_form_mollified(int n, double t) {
    if (n < 1) throw std::invalid_argument("closed_form_mollified: n >= 1 required");
    if (!(std::abs(t) < pi))
        throw std::domain_error("closed_form_mollified: |t| < pi required");
    const complex s(0.0, t);
    const complex factor = -s * detail::sinh_defect(s) / detail::sinhc(s);
    if (t == 0.0) return 0.0;
    return pwl::bump::psi_hat(t / n) * factor;
}

// ---------------------------------------------------------------------------
// boundary probing
// ---------------------------------------------------------------------------

/// A complex-valued closed-form transform with its declared boundary
/// singular set and the open segment where the extension is analytic.
struct LaplaceClosedForm {
    std::function<complex(complex)> eval;
    std::vector<double> singular_boundary_points;
    double regular_lo = 0.0;
    double regular_hi = 0.0;
};

inline LaplaceClosedForm two_sided_transform() {
    return LaplaceClosedForm{[](complex s) { return closed_form_two_sided(s); },
                             {-9, -7, -5, -3, -1, 1, 3, 5, 7, 9},
                             -1.0,
                             1.0};
}

inline LaplaceClosedForm one_sided_transform() {
    return LaplaceClosedForm{[](complex s) { return closed_form_one_sided(s); },
                             {-3 * pi, -2 * pi, -pi, pi, 2 * pi, 3 * pi},
                             -pi,
                             pi};
}

struct BoundaryProbe {
    struct Row {
        double t;
        double re;
        double im;
        double abs;
    };
    std::vector<Row> rows;
    double max_abs = 0.0;
    bool blow_up = false;  // any |F(it)| > 1e12: evidence of a missed singularity
};

inline BoundaryProbe boundary_probe(const LaplaceClosedForm& F, std::span<const double> t_grid) {
    BoundaryProbe p;
    for (double t : t_grid) {
        const complex v = F.eval(complex(0.0, t));
        const double a = std::abs(v);
        p.rows.push_back({t, v.real(), v.imag(), a});
        p.max_abs = std::max(p.max_abs, a);
        if (!(a <= 1e12)) p.blow_up = true;
    }
    return p;
}

inline std::string boundary_probe_csv(const BoundaryProbe& p) {
    std::string out = "t,re_f,im_f,abs_f\n";
    for (const auto& r : p.rows) {
        out += pwl::detail::fmt(r.t) + "," + pwl::detail::fmt(r.re) + "," +
               pwl::detail::fmt(r.im) + "," + pwl::detail::fmt(r.abs) + "\n";
    }
    return out;
}

}  // namespace tauberian::laplace
