#pragma once

// Eventually-periodic piecewise-linear functions with exact breakpoint
// algebra: the extremal examples, their rescalings, oscillation and decrease
// moduli (computed exactly from kink-induced critical offsets), sliding
// window averages, and an exact-decimal text serialization.
//
// Knots carry separate left/right values so the discontinuous constructions
// (the one-sided sawtooth, gamma, gamma-tilde) are representable; evaluation
// at a jump returns the left value.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tauberian::pwl {

inline constexpr double pi = std::numbers::pi;

enum class TailKind { constant, periodic };
enum class LeftKind { zero, even, constant };

struct Knot {
    double x;
    double left;
    double right;
    Knot(double x_, double v) : x(x_), left(v), right(v) {}
    Knot(double x_, double l, double r) : x(x_), left(l), right(r) {}
};

class PiecewiseLinear {
public:
    std::vector<Knot> knots;
    TailKind tail = TailKind::constant;
    double period = 0.0;
    LeftKind left_extension = LeftKind::zero;

    double first_x() const { return knots.front().x; }
    double last_x() const { return knots.back().x; }

    // index of the knot opening the periodic window (x_last - period)
    std::size_t tail_start_index() const {
        const double t0 = last_x() - period;
        for (std::size_t i = 0; i < knots.size(); ++i)
            if (std::abs(knots[i].x - t0) <= 1e-9 * (1.0 + std::abs(t0))) return i;
        throw std::logic_error("PiecewiseLinear: periodic window start is not a knot");
    }

    double operator()(double x) const {
        if (x < first_x()) {
            switch (left_extension) {
                case LeftKind::zero: return 0.0;
                case LeftKind::even: return (*this)(-x);
                case LeftKind::constant: return knots.front().left;
            }
        }
        if (x > last_x()) {
            if (tail == TailKind::constant) return knots.back().right;
            const std::size_t s = tail_start_index();
            const double t0 = knots[s].x;
            const double P = last_x() - t0;
            double r = std::fmod(x - t0, P);
            if (r == 0.0) return knots[s].left;
            return eval_in_range(t0 + r);
        }
        return eval_in_range(x);
    }

    /// max |segment slope|; jumps do not contribute
    double lipschitz() const {
        double m = 0.0;
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            const double dx = knots[i + 1].x - knots[i].x;
            m = std::max(m, std::abs((knots[i + 1].left - knots[i].right) / dx));
        }
        return m;
    }

    double tail_sup() const { return tail_extreme(true); }
    double tail_inf() const { return tail_extreme(false); }
    double tail_sup_abs() const { return std::max(std::abs(tail_sup()), std::abs(tail_inf())); }

    bool is_continuous() const {
        for (const auto& k : knots)
            if (k.left != k.right) return false;
        if (tail == TailKind::periodic) {
            const auto s = tail_start_index();
            if (knots.back().left != knots[s].right) return false;
        }
        return true;
    }

    /// structural invariants: strictly increasing finite knots, positive
    /// period whose window is delimited by knots
    void validate() const {
        if (knots.empty()) throw std::invalid_argument("PiecewiseLinear: no knots");
        for (std::size_t i = 0; i < knots.size(); ++i) {
            if (!std::isfinite(knots[i].x) || !std::isfinite(knots[i].left) ||
                !std::isfinite(knots[i].right))
                throw std::invalid_argument("PiecewiseLinear: non-finite knot");
            if (i > 0 && !(knots[i - 1].x < knots[i].x))
                throw std::invalid_argument("PiecewiseLinear: knots not strictly increasing");
        }
        if (tail == TailKind::periodic) {
            if (!(period > 0.0)) throw std::invalid_argument("PiecewiseLinear: period must be > 0");
            (void)tail_start_index();
        }
    }

    /// kink/jump abscissae intersecting [a, b], with the periodic tail
    /// unrolled; used as quadrature split hints
    std::vector<double> kinks_in(double a, double b) const {
        std::vector<double> out;
        for (const auto& k : knots)
            if (k.x >= a && k.x <= b) out.push_back(k.x);
        if (tail == TailKind::periodic && b > last_x()) {
            const std::size_t s = tail_start_index();
            const double t0 = knots[s].x;
            const double P = last_x() - t0;
            for (int rep = 1;; ++rep) {
                bool any = false;
                for (std::size_t i = s; i < knots.size(); ++i) {
                    const double x = knots[i].x + rep * P;
                    if (x > b) break;
                    if (x >= a && x > last_x()) {
                        out.push_back(x);
                        any = true;
                    } else if (x <= b) {
                        any = true;
                    }
                }
                if (!any || t0 + rep * P > b) break;
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    double eval_in_range(double x) const {
        // last knot with knot.x <= x
        std::size_t lo = 0, hi = knots.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi + 1) / 2;
            if (knots[mid].x <= x)
                lo = mid;
            else
                hi = mid - 1;
        }
        if (knots[lo].x == x) return knots[lo].left;
        const Knot& a = knots[lo];
        const Knot& b = knots[lo + 1];
        const double t = (x - a.x) / (b.x - a.x);
        return a.right + t * (b.left - a.right);
    }

    double tail_extreme(bool want_max) const {
        if (tail == TailKind::constant) return knots.back().right;
        const std::size_t s = tail_start_index();
        double best = knots[s].right;
        for (std::size_t i = s; i < knots.size(); ++i) {
            for (double v : {knots[i].left, knots[i].right})
                best = want_max ? std::max(best, v) : std::min(best, v);
        }
        return best;
    }
};

// ---------------------------------------------------------------------------
// extremal examples
// ---------------------------------------------------------------------------

/// Two-sided extremal: 0 for x <= 0, slope +1 up to pi/2, then the +-1 slope
/// triangle wave of period 2 pi and amplitude pi/2.
inline PiecewiseLinear build_two_sided_extremal() {
    PiecewiseLinear f;
    f.knots = {Knot(0.0, 0.0), Knot(pi / 2, pi / 2), Knot(3 * pi / 2, -pi / 2),
               Knot(5 * pi / 2, pi / 2)};
    f.tail = TailKind::periodic;
    f.period = 2 * pi;
    f.validate();
    return f;
}

/// The even triangle wave alpha: alpha(0) = pi/2, alpha(+-pi/2) = 0,
/// period 2 pi in |x|.
inline PiecewiseLinear build_alpha() {
    PiecewiseLinear f;
    f.knots = {Knot(0.0, pi / 2), Knot(pi, -pi / 2), Knot(2 * pi, pi / 2)};
    f.tail = TailKind::periodic;
    f.period = 2 * pi;
    f.left_extension = LeftKind::even;
    f.validate();
    return f;
}

/// One-sided extremal: 0 for x <= 0, -x on [0,1], then -x + N on [N-1, N+1]
/// for even N: a slope -1 sawtooth with upward jumps of 2 at odd integers.
inline PiecewiseLinear build_one_sided_extremal() {
    PiecewiseLinear f;
    f.knots = {Knot(0.0, 0.0), Knot(1.0, -1.0, 1.0), Knot(3.0, -1.0, 1.0)};
    f.tail = TailKind::periodic;
    f.period = 2.0;
    f.validate();
    return f;
}

/// gamma: beta0 + alpha on |x| <= pi/2, beta1/2 + alpha on pi/2 <= |x| <= pi,
/// beta2 + alpha (beta2 = -5 beta1 / 2) on pi <= |x| <= 3 pi/2, then
/// +-beta1 + alpha by the sign of alpha.  Even.
inline PiecewiseLinear build_gamma(double beta0, double beta1) {
    if (!(beta1 > 0.0)) throw std::invalid_argument("build_gamma: beta1 > 0 required");
    const double beta2 = -2.5 * beta1;
    PiecewiseLinear f;
    f.knots = {Knot(0.0, beta0 + pi / 2),
               Knot(pi / 2, beta0, beta1 / 2),
               Knot(pi, beta1 / 2 - pi / 2, beta2 - pi / 2),
               Knot(3 * pi / 2, beta2, beta1),
               Knot(2 * pi, beta1 + pi / 2),
               Knot(5 * pi / 2, beta1, -beta1),
               Knot(3 * pi, -beta1 - pi / 2),
               Knot(7 * pi / 2, -beta1, beta1)};
    f.tail = TailKind::periodic;
    f.period = 2 * pi;
    f.left_extension = LeftKind::even;
    f.validate();
    return f;
}

/// gamma-tilde: alpha + beta1 * sign(alpha); even, integrates against K to 0.
inline PiecewiseLinear build_gamma_tilde(double beta1) {
    if (!(beta1 > 0.0)) throw std::invalid_argument("build_gamma_tilde: beta1 > 0 required");
    PiecewiseLinear f;
    f.knots = {Knot(0.0, beta1 + pi / 2),    Knot(pi / 2, beta1, -beta1),
               Knot(pi, -beta1 - pi / 2),    Knot(3 * pi / 2, -beta1, beta1),
               Knot(2 * pi, beta1 + pi / 2), Knot(5 * pi / 2, beta1, -beta1)};
    f.tail = TailKind::periodic;
    f.period = 2 * pi;
    f.left_extension = LeftKind::even;
    f.validate();
    return f;
}

/// x -> lambda f(x / lambda) / M; Lipschitz constant scales by 1/M, the
/// abscissa by lambda.
inline PiecewiseLinear rescale(const PiecewiseLinear& f, double M, double lambda) {
    if (!(M > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("rescale: M > 0 and lambda > 0 required");
    PiecewiseLinear g = f;
    const double vscale = lambda / M;
    for (auto& k : g.knots) {
        k.x *= lambda;
        k.left *= vscale;
        k.right *= vscale;
    }
    g.period *= lambda;
    return g;
}

// ---------------------------------------------------------------------------
// moduli at infinity
// ---------------------------------------------------------------------------

namespace detail {

struct Event {
    double x;
    double left;   // value approached from below / at the point
    double right;  // value just past the point
};

// knot events across one tail period plus delta of lookahead
inline std::vector<Event> tail_events(const PiecewiseLinear& f, double delta) {
    const std::size_t s = f.tail_start_index();
    const double t0 = f.knots[s].x;
    const double P = f.last_x() - t0;
    std::vector<Event> ev;
    const double horizon = t0 + P + delta + 1e-12;
    for (int rep = 0;; ++rep) {
        const double off = rep * P;
        if (t0 + off > horizon) break;
        for (std::size_t i = s; i < f.knots.size(); ++i) {
            if (rep > 0 && i == s) continue;  // same point as previous window's end
            const double x = f.knots[i].x + off;
            if (x > horizon) break;
            ev.push_back(Event{x, f.knots[i].left, f.knots[i].right});
        }
    }
    return ev;
}

// Exact sup of |f(v) - f(u)| (or of the drop f(u) - f(v)) over pairs with
// v - u in [0, delta] and u ranging over one tail period.  The difference is
// affine in u and v on each segment pair, so extrema occur with u or v at a
// kink and the other endpoint at a kink or at offset exactly delta; one-sided
// values at jumps realize the sup as a limit.  The only combination that is
// not reachable is u at a kink from the left with v strictly past a kink at
// distance exactly delta.
inline double modulus_scan(const PiecewiseLinear& f, double delta, bool decrease) {
    if (f.tail == TailKind::constant) return 0.0;
    const std::size_t s = f.tail_start_index();
    const double P = f.last_x() - f.knots[s].x;
    auto ev = tail_events(f, delta);
    double best = 0.0;
    auto consider = [&](double fu, double fv) {
        best = std::max(best, decrease ? fu - fv : std::abs(fv - fu));
    };
    const double u_end = f.knots[s].x + P;
    for (std::size_t i = 0; i < ev.size() && ev[i].x <= u_end + 1e-12; ++i) {
        const Event& U = ev[i];
        consider(U.left, U.right);  // h -> 0+ across the jump at U
        for (std::size_t j = i + 1; j < ev.size(); ++j) {
            const double gap = ev[j].x - U.x;
            if (gap > delta) break;
            const Event& V = ev[j];
            const bool edge = (gap == delta);
            for (int us = 0; us < 2; ++us)
                for (int vs = 0; vs < 2; ++vs) {
                    if (edge && us == 0 && vs == 1) continue;
                    consider(us ? U.right : U.left, vs ? V.right : V.left);
                }
        }
        const double v = f(U.x + delta);
        consider(U.left, v);
        consider(U.right, v);
    }
    // u exactly delta before a kink v (kink-kink pairs at exact distance were
    // already handled above with the unreachable side combination excluded)
    for (const auto& e : ev) {
        const double ux = e.x - delta;
        if (ux < f.knots[s].x - 1e-12) continue;
        bool at_kink = false;
        for (const auto& o : ev)
            if (o.x == ux) {
                at_kink = true;
                break;
            }
        if (at_kink) continue;
        const double u = f(ux);
        consider(u, e.left);
        consider(u, e.right);
    }
    return best;
}

}  // namespace detail

/// Oscillation modulus at infinity: max over a tail period of
/// sup_{h in [0,delta]} |f(x+h) - f(x)|; exact for piecewise-linear f.
inline double oscillation_modulus(const PiecewiseLinear& f, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("oscillation_modulus: delta > 0 required");
    return detail::modulus_scan(f, delta, /*decrease=*/false);
}

/// Decrease modulus at infinity: - min over a tail period of
/// inf_{h in [0,delta]} (f(x+h) - f(x)); always >= 0.
inline double decrease_modulus(const PiecewiseLinear& f, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("decrease_modulus: delta > 0 required");
    return detail::modulus_scan(f, delta, /*decrease=*/true);
}

// ---------------------------------------------------------------------------
// sliding window average
// ---------------------------------------------------------------------------

/// The exact sliding average x -> (1/delta) int_x^{x+delta} f (a piecewise
/// quadratic), exposed as an evaluator plus the Lipschitz bound
/// oscillation_modulus(f, delta) / delta from the averaging estimate.
class WindowAverage {
public:
    WindowAverage(PiecewiseLinear f, double delta)
        : f_(std::move(f)), delta_(delta), lip_bound_(0.0) {
        if (!(delta > 0.0)) throw std::invalid_argument("WindowAverage: delta > 0 required");
        if (f_.left_extension != LeftKind::zero)
            throw std::invalid_argument("WindowAverage: requires zero left extension");
        cum_.assign(f_.knots.size(), 0.0);
        for (std::size_t i = 0; i + 1 < f_.knots.size(); ++i) {
            const double dx = f_.knots[i + 1].x - f_.knots[i].x;
            cum_[i + 1] = cum_[i] + 0.5 * (f_.knots[i].right + f_.knots[i + 1].left) * dx;
        }
        if (f_.tail == TailKind::periodic) {
            const std::size_t s = f_.tail_start_index();
            period_integral_ = cum_.back() - cum_[s];
        }
        if (f_.tail == TailKind::periodic) lip_bound_ = oscillation_modulus(f_, delta_) / delta_;
    }

    double operator()(double x) const { return (antiderivative(x + delta_) - antiderivative(x)) / delta_; }

    double lipschitz_bound() const { return lip_bound_; }

    /// int_{x_first}^{x} f, exact (0 to the left of the support)
    double antiderivative(double x) const {
        if (x <= f_.first_x()) return 0.0;
        if (x <= f_.last_x()) return partial(x);
        if (f_.tail == TailKind::constant)
            return cum_.back() + f_.knots.back().right * (x - f_.last_x());
        const std::size_t s = f_.tail_start_index();
        const double t0 = f_.knots[s].x;
        const double P = f_.last_x() - t0;
        const double q = std::floor((x - t0) / P);
        const double r = x - t0 - q * P;
        return cum_[s] + q * period_integral_ + (partial(t0 + r) - cum_[s]);
    }

private:
    double partial(double x) const {
        std::size_t lo = 0, hi = f_.knots.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi + 1) / 2;
            if (f_.knots[mid].x <= x)
                lo = mid;
            else
                hi = mid - 1;
        }
        if (lo + 1 == f_.knots.size() || f_.knots[lo].x == x) return cum_[lo];
        const Knot& a = f_.knots[lo];
        const Knot& b = f_.knots[lo + 1];
        const double t = x - a.x;
        const double slope = (b.left - a.right) / (b.x - a.x);
        return cum_[lo] + a.right * t + 0.5 * slope * t * t;
    }

    PiecewiseLinear f_;
    double delta_;
    double lip_bound_;
    std::vector<double> cum_;
    double period_integral_ = 0.0;
};

inline WindowAverage window_average(const PiecewiseLinear& f, double delta) {
    return WindowAverage(f, delta);
}

// ---------------------------------------------------------------------------
// serialization (exact decimal round-trip)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

/// Line 1: `prefix x0 v0 x1 v1 ...` (a jump knot emits its x twice, left then
/// right value). Line 2: `tail periodic P` or `tail constant c`. A third line
/// `left even` / `left constant` appears only for non-default extensions.
inline std::string serialize(const PiecewiseLinear& f) {
    std::string out = "prefix";
    for (const auto& k : f.knots) {
        out += " " + detail::fmt(k.x) + " " + detail::fmt(k.left);
        if (k.right != k.left) out += " " + detail::fmt(k.x) + " " + detail::fmt(k.right);
    }
    out += "\n";
    if (f.tail == TailKind::periodic)
        out += "tail periodic " + detail::fmt(f.period) + "\n";
    else
        out += "tail constant " + detail::fmt(f.knots.back().right) + "\n";
    if (f.left_extension == LeftKind::even) out += "left even\n";
    if (f.left_extension == LeftKind::constant) out += "left constant\n";
    return out;
}

inline PiecewiseLinear parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    PiecewiseLinear f;
    if (!std::getline(in, line)) throw std::invalid_argument("parse: missing prefix line");
    {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "prefix") throw std::invalid_argument("parse: expected 'prefix'");
        double x, v;
        while (ls >> x >> v) {
            if (!f.knots.empty() && f.knots.back().x == x)
                f.knots.back().right = v;
            else
                f.knots.emplace_back(x, v);
        }
    }
    if (!std::getline(in, line)) throw std::invalid_argument("parse: missing tail line");
    {
        std::istringstream ls(line);
        std::string tag, kind;
        double v;
        ls >> tag >> kind >> v;
        if (tag != "tail" || (kind != "periodic" && kind != "constant"))
            throw std::invalid_argument("parse: malformed tail line");
        if (kind == "periodic") {
            f.tail = TailKind::periodic;
            f.period = v;
        } else {
            f.tail = TailKind::constant;
            if (!f.knots.empty()) f.knots.back().right = v;
        }
    }
    if (std::getline(in, line) && !line.empty()) {
        std::istringstream ls(line);
        std::string tag, kind;
        ls >> tag >> kind;
        if (tag != "left") throw std::invalid_argument("parse: malformed left line");
        if (kind == "even")
            f.left_extension = LeftKind::even;
        else if (kind == "constant")
            f.left_extension = LeftKind::constant;
        else if (kind != "zero")
            throw std::invalid_argument("parse: unknown left extension");
    }
    f.validate();
    return f;
}

}  // namespace tauberian::pwl
