#include "slicegeo/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slicegeo {

namespace {

constexpr double kTol = 1e-9;

// Dense tableau simplex on equality-standard form:
//   minimize c.x  s.t.  T x = b (b >= 0), x >= 0,
// starting from the given basis (one basic column per row).
// Dantzig pricing with a Bland fallback once iterations stall.
struct Tableau {
    Matrix T;             // m x n
    Vec b;                // m
    Vec c;                // n
    std::vector<int> basis;  // m
    int m = 0, n = 0;

    void pivot(int row, int col) {
        double piv = T[row][col];
        double inv = 1.0 / piv;
        for (int j = 0; j < n; ++j) T[row][j] *= inv;
        b[row] *= inv;
        T[row][col] = 1.0;  // exact
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            double f = T[i][col];
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) T[i][j] -= f * T[row][j];
            T[i][col] = 0.0;
            b[i] -= f * b[row];
        }
        basis[row] = col;
    }

    // Reduced costs relative to the current basis.
    Vec reduced_costs() const {
        Vec y(m);  // multipliers: y = c_B applied through the (identity) basic columns
        for (int i = 0; i < m; ++i) y[i] = c[basis[i]];
        Vec r(n);
        for (int j = 0; j < n; ++j) {
            double s = c[j];
            for (int i = 0; i < m; ++i) s -= y[i] * T[i][j];
            r[j] = s;
        }
        return r;
    }

    // Returns optimal / unbounded.
    LpStatus run(int max_iters) {
        int stall = 0;
        double last_obj = objective();
        for (int iter = 0; iter < max_iters; ++iter) {
            Vec r = reduced_costs();
            bool bland = stall > 2 * (m + n);
            int col = -1;
            if (bland) {
                for (int j = 0; j < n; ++j)
                    if (r[j] < -kTol) {
                        col = j;
                        break;
                    }
            } else {
                double best = -kTol;
                for (int j = 0; j < n; ++j)
                    if (r[j] < best) {
                        best = r[j];
                        col = j;
                    }
            }
            if (col < 0) return LpStatus::optimal;

            int row = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                if (T[i][col] > kTol) {
                    double ratio = b[i] / T[i][col];
                    if (ratio < best_ratio - 1e-12 ||
                        (ratio < best_ratio + 1e-12 && (row < 0 || basis[i] < basis[row]))) {
                        best_ratio = ratio;
                        row = i;
                    }
                }
            }
            if (row < 0) return LpStatus::unbounded;
            pivot(row, col);

            double obj = objective();
            if (obj < last_obj - 1e-12) {
                stall = 0;
                last_obj = obj;
            } else {
                ++stall;
            }
        }
        return LpStatus::optimal;  // iteration cap; current point is feasible
    }

    double objective() const {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += c[basis[i]] * b[i];
        return s;
    }
};

}  // namespace

LpResult solve_lp(const Matrix& A, const Vec& b_in, const Vec& c_in, const std::vector<Rel>& rel) {
    int m = static_cast<int>(A.size());
    int nv = static_cast<int>(c_in.size());

    // Columns: original vars, then one slack/surplus per inequality row, then
    // one artificial per row (phase 1).
    int n_slack = 0;
    for (auto r : rel)
        if (r != Rel::EQ) ++n_slack;
    int n = nv + n_slack + m;

    Tableau tb;
    tb.m = m;
    tb.n = n;
    tb.T.assign(m, Vec(n, 0.0));
    tb.b.assign(m, 0.0);
    tb.basis.assign(m, -1);

    int slack_at = nv;
    for (int i = 0; i < m; ++i) {
        double sgn = (b_in[i] < 0.0) ? -1.0 : 1.0;
        for (int j = 0; j < nv; ++j) tb.T[i][j] = sgn * A[i][j];
        tb.b[i] = sgn * b_in[i];
        if (rel[i] != Rel::EQ) {
            double s = (rel[i] == Rel::LE) ? 1.0 : -1.0;
            tb.T[i][slack_at++] = sgn * s;
        }
    }
    // Artificials form the starting identity basis.
    for (int i = 0; i < m; ++i) {
        tb.T[i][nv + n_slack + i] = 1.0;
        tb.basis[i] = nv + n_slack + i;
    }

    // Phase 1: minimize sum of artificials.
    tb.c.assign(n, 0.0);
    for (int i = 0; i < m; ++i) tb.c[nv + n_slack + i] = 1.0;
    LpStatus st1 = tb.run(4000 + 40 * (m + n));
    (void)st1;
    if (tb.objective() > 1e-7) return {LpStatus::infeasible, 0.0, {}};

    // Drive leftover artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
        if (tb.basis[i] >= nv + n_slack) {
            int col = -1;
            for (int j = 0; j < nv + n_slack; ++j) {
                if (std::abs(tb.T[i][j]) > 1e-7) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) tb.pivot(i, col);
        }
    }

    // Phase 2: forbid artificials, restore the real objective.
    tb.c.assign(n, 0.0);
    for (int j = 0; j < nv; ++j) tb.c[j] = c_in[j];
    for (int i = 0; i < m; ++i) tb.c[nv + n_slack + i] = 1e12;  // keep parked artificials parked
    LpStatus st2 = tb.run(4000 + 40 * (m + n));
    if (st2 == LpStatus::unbounded) return {LpStatus::unbounded, 0.0, {}};

    LpResult res;
    res.status = LpStatus::optimal;
    res.x.assign(nv, 0.0);
    for (int i = 0; i < m; ++i)
        if (tb.basis[i] < nv) res.x[tb.basis[i]] = tb.b[i];
    res.objective = dot(c_in, res.x);
    return res;
}

LpResult lp_max_linear(const Matrix& A, const Vec& b, const Vec& f) {
    int m = static_cast<int>(A.size());
    int d = static_cast<int>(f.size());
    Matrix As(m, Vec(2 * d));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) {
            As[i][j] = A[i][j];
            As[i][d + j] = -A[i][j];
        }
    Vec c(2 * d);
    for (int j = 0; j < d; ++j) {
        c[j] = -f[j];
        c[d + j] = f[j];
    }
    std::vector<Rel> rel(m, Rel::LE);
    LpResult split = solve_lp(As, b, c, rel);
    LpResult res;
    res.status = split.status;
    if (split.status != LpStatus::optimal) return res;
    res.x.assign(d, 0.0);
    for (int j = 0; j < d; ++j) res.x[j] = split.x[j] - split.x[d + j];
    res.objective = dot(f, res.x);
    return res;
}

}  // namespace slicegeo
