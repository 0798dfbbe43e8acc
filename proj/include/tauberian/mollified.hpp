#pragma once

// Smooth approximations rho_n = psi_n * d(tau) of the one-sided extremal
// example's distributional derivative: a -1 plateau interrupted by bump
// images of the +2 jumps.  psi is a fixed C-infinity bump supported in (1,3)
// with unit mass, psi_n(x) = n psi(n x).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "tauberian/quadrature.hpp"

namespace tauberian::pwl {

namespace bump {

namespace detail {

inline double raw(double x) {
    const double u = x - 2.0;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

struct Table {
    std::vector<double> cdf;  // cumulative of raw over [1,3]
    double h;
    double mass;
    Table() {
        const int m = 16384;
        h = 2.0 / m;
        cdf.assign(m + 1, 0.0);
        // 3-point Gauss per cell; raw is smooth so this is exact to roundoff
        const double g = std::sqrt(0.6);
        for (int i = 0; i < m; ++i) {
            const double a = 1.0 + i * h, c = a + 0.5 * h;
            const double v = (5.0 * raw(c - 0.5 * h * g) + 8.0 * raw(c) + 5.0 * raw(c + 0.5 * h * g)) / 18.0;
            cdf[i + 1] = cdf[i] + v * h;
        }
        mass = cdf.back();
    }
};

inline const Table& table() {
    static const Table t;
    return t;
}

}  // namespace detail

/// normalized bump: supp (1,3), smooth, non-negative, unit mass
inline double psi(double x) { return detail::raw(x) / detail::table().mass; }

/// int_1^x psi
inline double psi_cdf(double x) {
    const auto& t = detail::table();
    if (x <= 1.0) return 0.0;
    if (x >= 3.0) return 1.0;
    const double pos = (x - 1.0) / t.h;
    const int i = std::min(static_cast<int>(pos), static_cast<int>(t.cdf.size()) - 2);
    const double a = 1.0 + i * t.h;
    double partial = 0.0;
    if (x > a) {
        const double g = std::sqrt(0.6);
        const double c = 0.5 * (a + x), hw = 0.5 * (x - a);
        partial = (5.0 * detail::raw(c - hw * g) + 8.0 * detail::raw(c) + 5.0 * detail::raw(c + hw * g)) / 18.0 * (x - a);
    }
    return (t.cdf[i] + partial) / t.mass;
}

/// Fourier transform psi_hat(u) = int psi(x) e^{-iux} dx; psi_hat(0) = 1
inline std::complex<double> psi_hat(double u) {
    auto re = quadrature::integrate([u](double x) { return psi(x) * std::cos(u * x); }, 1.0, 3.0, 1e-12);
    auto im = quadrature::integrate([u](double x) { return -psi(x) * std::sin(u * x); }, 1.0, 3.0, 1e-12);
    return {re.value, im.value};
}

}  // namespace bump

/// rho_n sampled on a uniform grid fine enough to resolve psi_n, plus the
/// exact evaluator behind the samples.
struct MollifiedSequence {
    int n = 1;
    double step = 0.0;
    std::vector<double> xs;
    std::vector<double> values;

    /// rho_n(x) = -int_0^x psi_n + 2 sum_k psi_n(x - 2k - 1)
    double rho(double x) const {
        double v = -bump::psi_cdf(n * x);
        // bump images at odd integers: x - (2k+1) in (1/n, 3/n)
        const int k_lo = static_cast<int>(std::floor((x - 3.0 / n - 1.0) / 2.0));
        const int k_hi = static_cast<int>(std::floor((x - 1.0 / n - 1.0) / 2.0));
        for (int k = std::max(0, k_lo); k <= k_hi; ++k)
            v += 2.0 * n * bump::psi(n * (x - 2.0 * k - 1.0));
        return v;
    }

    double grid_min() const {
        double m = values.front();
        for (double v : values) m = std::min(m, v);
        return m;
    }

    /// split hints for quadrature over the bump supports
    std::vector<double> bump_edges(double a, double b) const {
        std::vector<double> out;
        for (int k = 0;; ++k) {
            const double lo = 2.0 * k + 1.0 + 1.0 / n;
            const double hi = 2.0 * k + 1.0 + 3.0 / n;
            if (lo > b) break;
            if (hi >= a) {
                out.push_back(lo);
                out.push_back(0.5 * (lo + hi));
                out.push_back(hi);
            }
        }
        return out;
    }
};

inline MollifiedSequence mollified_sequence(int n, double x_max = 16.0, int max_points = 2000000) {
    if (n < 1) throw std::invalid_argument("mollified_sequence: n >= 1 required");
    MollifiedSequence m;
    m.n = n;
    m.step = 1.0 / (16.0 * n);
    const auto count = static_cast<long long>(std::ceil(x_max / m.step)) + 1;
    if (count > max_points)
        throw std::runtime_error("mollified_sequence: n too large for the configured grid");
    m.xs.resize(static_cast<std::size_t>(count));
    m.values.resize(m.xs.size());
    for (std::size_t i = 0; i < m.xs.size(); ++i) {
        m.xs[i] = i * m.step;
        m.values[i] = m.rho(m.xs[i]);
    }
    return m;
}

}  // namespace tauberian::pwl
