#pragma once

// Dense bounded-variable two-phase simplex for the small LPs in this project
// (a handful of rows, up to a few hundred structural variables).  Variables
// need finite lower bounds; upper bounds may be +infinity.  Deterministic:
// Dantzig pricing with smallest-index ties, Bland's rule after a stall.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tauberian::lp {

enum class Sense { le, eq, ge };

struct Row {
    std::vector<double> a;
    Sense sense = Sense::le;
    double rhs = 0.0;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
    Status status = Status::optimal;
    std::vector<double> x;
    double objective = 0.0;
};

namespace detail {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tableau {
    int m, n;                       // rows, total columns (incl. slacks + artificials)
    std::vector<std::vector<double>> a;  // B^-1 A, m x n
    std::vector<double> xb;         // basic values
    std::vector<int> basis;         // basic column per row
    std::vector<int> stat;          // nonbasic: 0 = at lower, 1 = at upper; 2 = basic
    std::vector<double> lb, ub;

    double value(int j) const {
        if (stat[j] == 2) {
            for (int i = 0; i < m; ++i)
                if (basis[i] == j) return xb[i];
        }
        return stat[j] == 1 ? ub[j] : lb[j];
    }

    // one simplex pass on objective c; returns false when unbounded
    bool iterate(const std::vector<double>& c, const std::vector<bool>& frozen) {
        long iter = 0;
        const long bland_after = 5000, cap = 500000;
        while (true) {
            if (++iter > cap) throw std::runtime_error("simplex: iteration limit");
            const bool bland = iter > bland_after;
            // reduced costs d_j = c_j - c_B . column_j
            std::vector<double> cb(m);
            for (int i = 0; i < m; ++i) cb[i] = c[basis[i]];
            int enter = -1, dir = 0;
            double best = kEps;
            for (int j = 0; j < n; ++j) {
                if (stat[j] == 2 || frozen[j]) continue;
                double d = c[j];
                for (int i = 0; i < m; ++i)
                    if (cb[i] != 0.0) d -= cb[i] * a[i][j];
                double viol = 0.0;
                int dj = 0;
                if (stat[j] == 0 && d < -kEps) {
                    viol = -d;
                    dj = +1;
                } else if (stat[j] == 1 && d > kEps) {
                    viol = d;
                    dj = -1;
                }
                if (dj != 0 && viol > best) {
                    enter = j;
                    dir = dj;
                    best = viol;
                    if (bland) break;
                }
            }
            if (enter < 0) return true;  // optimal

            // ratio test along the +-column of the entering variable; ties go
            // to the smallest basic index (deterministic, Bland-compatible)
            double tmax = (std::isfinite(ub[enter]) && std::isfinite(lb[enter]))
                              ? ub[enter] - lb[enter]
                              : kInf;
            int leave = -1, leave_side = 0;
            for (int i = 0; i < m; ++i) {
                const double col = dir * a[i][enter];
                const int bj = basis[i];
                double t;
                int side;
                if (col > kEps) {  // basic decreases toward its lower bound
                    t = (xb[i] - lb[bj]) / col;
                    side = 0;
                } else if (col < -kEps && std::isfinite(ub[bj])) {
                    t = (xb[i] - ub[bj]) / col;
                    side = 1;
                } else {
                    continue;
                }
                const bool strictly = t < tmax - 1e-12;
                const bool tie_pref = t < tmax + 1e-12 && leave >= 0 && bj < basis[leave];
                if (strictly || tie_pref) {
                    tmax = t;
                    leave = i;
                    leave_side = side;
                }
            }
            if (!std::isfinite(tmax)) return false;  // unbounded
            if (tmax < 0.0) tmax = 0.0;

            // move the entering variable and update basics
            for (int i = 0; i < m; ++i) xb[i] -= tmax * dir * a[i][enter];
            if (leave < 0) {  // bound flip, basis unchanged
                stat[enter] = stat[enter] == 0 ? 1 : 0;
                continue;
            }
            const int out = basis[leave];
            const double enter_val = (stat[enter] == 0 ? lb[enter] : ub[enter]) + dir * tmax;
            stat[out] = leave_side == 0 ? 0 : 1;
            stat[enter] = 2;
            basis[leave] = enter;
            xb[leave] = enter_val;
            // row reduction
            const double piv = a[leave][enter];
            for (int j = 0; j < n; ++j) a[leave][j] /= piv;
            for (int i = 0; i < m; ++i) {
                if (i == leave) continue;
                const double f = a[i][enter];
                if (f == 0.0) continue;
                for (int j = 0; j < n; ++j) a[i][j] -= f * a[leave][j];
            }
        }
    }
};

}  // namespace detail

/// minimize c.x over { A x (sense) rhs, lb <= x <= ub }; lb must be finite.
inline Solution solve(const std::vector<double>& c, const std::vector<Row>& rows,
                      std::vector<double> lb, std::vector<double> ub) {
    const int nx = static_cast<int>(c.size());
    const int m = static_cast<int>(rows.size());
    for (int j = 0; j < nx; ++j)
        if (!std::isfinite(lb[j])) throw std::invalid_argument("simplex: finite lower bounds required");

    // slacks (one per inequality row) and one artificial per row
    int nslack = 0;
    for (const auto& r : rows)
        if (r.sense != Sense::eq) ++nslack;
    const int n = nx + nslack + m;

    detail::Tableau T;
    T.m = m;
    T.n = n;
    T.a.assign(m, std::vector<double>(n, 0.0));
    T.lb = std::move(lb);
    T.ub = std::move(ub);
    T.lb.resize(n, 0.0);
    T.ub.resize(n, detail::kInf);
    T.stat.assign(n, 0);
    T.basis.assign(m, -1);
    T.xb.assign(m, 0.0);

    int sl = nx;
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(rows[i].a.size()) != nx)
            throw std::invalid_argument("simplex: row width mismatch");
        for (int j = 0; j < nx; ++j) T.a[i][j] = rows[i].a[j];
        if (rows[i].sense == Sense::le) T.a[i][sl++] = 1.0;
        if (rows[i].sense == Sense::ge) T.a[i][sl++] = -1.0;
    }

    // start all structural/slack vars at their lower bound; artificials absorb b
    for (int i = 0; i < m; ++i) {
        double r = rows[i].rhs;
        for (int j = 0; j < nx + nslack; ++j)
            if (T.lb[j] != 0.0) r -= T.a[i][j] * T.lb[j];
        const int art = nx + nslack + i;
        T.a[i][art] = r >= 0.0 ? 1.0 : -1.0;
        T.basis[i] = art;
        T.xb[i] = std::abs(r);
        T.stat[art] = 2;
    }

    std::vector<bool> frozen(n, false);
    std::vector<double> c1(n, 0.0);
    for (int i = 0; i < m; ++i) c1[nx + nslack + i] = 1.0;
    if (!T.iterate(c1, frozen)) throw std::runtime_error("simplex: phase 1 unbounded");
    double infeas = 0.0;
    for (int i = 0; i < m; ++i)
        if (T.basis[i] >= nx + nslack) infeas += T.xb[i];
    if (infeas > 1e-7) return Solution{Status::infeasible, {}, 0.0};

    // pin artificials at zero for phase 2
    for (int j = nx + nslack; j < n; ++j) {
        frozen[j] = true;
        T.ub[j] = 0.0;
    }

    std::vector<double> c2(n, 0.0);
    for (int j = 0; j < nx; ++j) c2[j] = c[j];
    if (!T.iterate(c2, frozen)) return Solution{Status::unbounded, {}, 0.0};

    Solution sol;
    sol.status = Status::optimal;
    sol.x.resize(nx);
    for (int j = 0; j < nx; ++j) sol.x[j] = T.value(j);
    sol.objective = 0.0;
    for (int j = 0; j < nx; ++j) sol.objective += c[j] * sol.x[j];
    return sol;
}

}  // namespace tauberian::lp
