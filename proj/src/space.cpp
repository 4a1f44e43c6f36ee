#include "slicegeo/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "slicegeo/linprog.hpp"
#include "slicegeo/rng.hpp"

namespace slicegeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt_p(double p) {
    if (std::isinf(p)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", p);
    return buf;
}

// Rank of a set of row vectors via Gaussian elimination with partial pivoting.
int rank_of(Matrix rows, double tol = 1e-9) {
    if (rows.empty()) return 0;
    std::size_t d = rows[0].size();
    int r = 0;
    for (std::size_t col = 0; col < d && r < static_cast<int>(rows.size()); ++col) {
        std::size_t piv = r;
        for (std::size_t i = r; i < rows.size(); ++i)
            if (std::abs(rows[i][col]) > std::abs(rows[piv][col])) piv = i;
        if (std::abs(rows[piv][col]) <= tol) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            double f = rows[i][col] / rows[r][col];
            for (std::size_t j = col; j < d; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

// Solves the d x d system M x = rhs; returns false when numerically singular.
bool solve_square(Matrix M, Vec rhs, Vec& out) {
    std::size_t d = M.size();
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col; i < d; ++i)
            if (std::abs(M[i][col]) > std::abs(M[piv][col])) piv = i;
        if (std::abs(M[piv][col]) < 1e-10) return false;
        std::swap(M[col], M[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (std::size_t i = col + 1; i < d; ++i) {
            double f = M[i][col] / M[col][col];
            for (std::size_t j = col; j < d; ++j) M[i][j] -= f * M[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    out.assign(d, 0.0);
    for (std::size_t i = d; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t j = i + 1; j < d; ++j) s -= M[i][j] * out[j];
        out[i] = s / M[i][i];
    }
    return true;
}

double lp_norm_value(const Vec& x, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    }
    if (p == 1.0) {
        double s = 0.0;
        for (double v : x) s += std::abs(v);
        return s;
    }
    if (p == 2.0) return norm2(x);
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

double conjugate_exponent(double p) {
    if (std::isinf(p)) return 1.0;
    if (p == 1.0) return kInf;
    return p / (p - 1.0);
}

// Lip coordinate layout: non-base points in index order.
std::vector<int> lip_points(const SpaceSpec& s) {
    std::vector<int> pts;
    for (int i = 0; i < static_cast<int>(s.metric.size()); ++i)
        if (i != s.base_index) pts.push_back(i);
    return pts;
}

// Value of f at metric point i, with f(base) = 0.
double lip_value(const SpaceSpec& s, const Vec& f, int point, const std::vector<int>& pts) {
    if (point == s.base_index) return 0.0;
    for (std::size_t c = 0; c < pts.size(); ++c)
        if (pts[c] == point) return f[c];
    return 0.0;
}

std::vector<Facet> lip_facets(const SpaceSpec& s) {
    auto pts = lip_points(s);
    int d = static_cast<int>(pts.size());
    std::vector<Facet> out;
    for (int a = 0; a < d; ++a) {
        for (int b = a + 1; b < d; ++b) {
            Vec n(d, 0.0);
            n[a] = 1.0;
            n[b] = -1.0;
            double off = s.metric[pts[a]][pts[b]];
            out.push_back({n, off});
            out.push_back({scaled(n, -1.0), off});
        }
        Vec n(d, 0.0);
        n[a] = 1.0;
        out.push_back({n, s.metric[pts[a]][s.base_index]});
        n[a] = -1.0;
        out.push_back({n, s.metric[pts[a]][s.base_index]});
    }
    return out;
}

void split_sum(const SpaceSpec& s, const Vec& x, Vec& xl, Vec& xr) {
    xl = head(x, static_cast<std::size_t>(s.left->dim));
    xr = tail(x, static_cast<std::size_t>(s.right->dim));
}

}  // namespace

const char* kind_name(SpaceKind k) {
    switch (k) {
        case SpaceKind::polytope_v: return "polytope_v";
        case SpaceKind::polytope_h: return "polytope_h";
        case SpaceKind::lp: return "lp";
        case SpaceKind::lip: return "lip";
        case SpaceKind::sum: return "sum";
    }
    return "?";
}

std::string SpaceSpec::id() const {
    if (!name.empty()) return name;
    char buf[96];
    switch (kind) {
        case SpaceKind::lp:
            std::snprintf(buf, sizeof(buf), "lp-%d-%s", dim, fmt_p(p).c_str());
            return buf;
        case SpaceKind::polytope_v:
            std::snprintf(buf, sizeof(buf), "polyV-%d-%zu", dim, vertices.size());
            return buf;
        case SpaceKind::polytope_h:
            std::snprintf(buf, sizeof(buf), "polyH-%d-%zu", dim, facets.size());
            return buf;
        case SpaceKind::lip:
            std::snprintf(buf, sizeof(buf), "lip-%zupts", metric.size());
            return buf;
        case SpaceKind::sum:
            return "sum" + fmt_p(p) + "(" + (left ? left->id() : "?") + "," +
                   (right ? right->id() : "?") + ")";
    }
    return "?";
}

SpaceSpec lp_space(int dim, double p, std::string name) {
    SpaceSpec s;
    s.kind = SpaceKind::lp;
    s.dim = dim;
    s.p = p;
    s.name = std::move(name);
    return s;
}

SpaceSpec polytope_v_space(std::vector<Vec> vertices, std::string name) {
    SpaceSpec s;
    s.kind = SpaceKind::polytope_v;
    s.dim = vertices.empty() ? 0 : static_cast<int>(vertices[0].size());
    s.vertices = std::move(vertices);
    s.name = std::move(name);
    return s;
}

SpaceSpec polytope_h_space(int dim, std::vector<Facet> facets, std::string name) {
    SpaceSpec s;
    s.kind = SpaceKind::polytope_h;
    s.dim = dim;
    s.facets = std::move(facets);
    s.name = std::move(name);
    return s;
}

SpaceSpec lip_space(Matrix metric, int base_index, std::string name) {
    SpaceSpec s;
    s.kind = SpaceKind::lip;
    s.metric = std::move(metric);
    s.base_index = base_index;
    s.dim = std::max<int>(0, static_cast<int>(s.metric.size()) - 1);
    s.name = std::move(name);
    return s;
}

SpaceSpec sum_space(SpaceSpec left, SpaceSpec right, double p, std::string name) {
    SpaceSpec s;
    s.kind = SpaceKind::sum;
    s.dim = left.dim + right.dim;
    s.p = p;
    s.left = std::make_shared<SpaceSpec>(std::move(left));
    s.right = std::make_shared<SpaceSpec>(std::move(right));
    s.name = std::move(name);
    return s;
}

ValidationReport validate(const SpaceSpec& spec) {
    ValidationReport rep;
    auto issue = [&](const std::string& inv, const std::string& det, std::vector<int> idx = {}) {
        rep.ok = false;
        rep.issues.push_back({inv, det, std::move(idx)});
    };

    if (spec.dim < 1) issue("dimension", "dim must be positive");

    switch (spec.kind) {
        case SpaceKind::polytope_v: {
            if (spec.vertices.size() < 2) issue("vertex-count", "need at least 2 vertices");
            for (int k = 0; k < static_cast<int>(spec.vertices.size()); ++k)
                if (static_cast<int>(spec.vertices[k].size()) != spec.dim)
                    issue("vertex-dim", "vertex has wrong dimension", {k});
            if (!rep.ok) break;
            for (int k = 0; k < static_cast<int>(spec.vertices.size()); ++k) {
                bool found = false;
                for (const auto& u : spec.vertices)
                    if (linf_dist(u, scaled(spec.vertices[k], -1.0)) <= 1e-9) {
                        found = true;
                        break;
                    }
                if (!found) issue("symmetry", "vertex set not closed under negation", {k});
            }
            if (rank_of(spec.vertices) < spec.dim)
                issue("full-dimensional", "vertex hull is not full-dimensional");
            break;
        }
        case SpaceKind::polytope_h: {
            if (spec.facets.empty()) issue("facet-count", "need at least one facet");
            Matrix normals;
            for (int k = 0; k < static_cast<int>(spec.facets.size()); ++k) {
                const auto& f = spec.facets[k];
                if (static_cast<int>(f.normal.size()) != spec.dim)
                    issue("facet-dim", "facet normal has wrong dimension", {k});
                if (!(f.offset > 0.0)) issue("offset-positive", "facet offset must be > 0", {k});
                normals.push_back(f.normal);
            }
            if (!rep.ok) break;
            for (int k = 0; k < static_cast<int>(spec.facets.size()); ++k) {
                Vec a = scaled(spec.facets[k].normal, 1.0 / spec.facets[k].offset);
                bool found = false;
                for (const auto& g : spec.facets)
                    if (linf_dist(scaled(g.normal, 1.0 / g.offset), scaled(a, -1.0)) <= 1e-9) {
                        found = true;
                        break;
                    }
                if (!found) issue("symmetry", "facet set not closed under negation", {k});
            }
            if (rank_of(normals) < spec.dim)
                issue("bounded", "facet normals do not span the space; ball unbounded");
            break;
        }
        case SpaceKind::lp:
            if (!(spec.p >= 1.0)) issue("exponent", "p must be in [1, inf]");
            break;
        case SpaceKind::lip: {
            int m = static_cast<int>(spec.metric.size());
            if (m < 2) issue("metric-size", "need at least 2 points");
            if (spec.base_index < 0 || spec.base_index >= m)
                issue("base-index", "base point index out of range");
            for (int i = 0; i < m; ++i) {
                if (static_cast<int>(spec.metric[i].size()) != m) {
                    issue("metric-square", "metric matrix is not square", {i});
                    continue;
                }
                if (spec.metric[i][i] != 0.0) issue("zero-diagonal", "d(i,i) must be 0", {i});
                for (int j = 0; j < m; ++j) {
                    if (i != j && !(spec.metric[i][j] > 0.0))
                        issue("positive", "off-diagonal distances must be > 0", {i, j});
                    if (!near(spec.metric[i][j], spec.metric[j][i], 1e-12))
                        issue("symmetric", "metric must be symmetric", {i, j});
                }
            }
            if (!rep.ok) break;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < m; ++k)
                        if (spec.metric[i][k] > spec.metric[i][j] + spec.metric[j][k] + 1e-12)
                            issue("triangle-inequality", "d(i,k) > d(i,j) + d(j,k)", {i, j, k});
            if (spec.dim != m - 1) issue("dimension", "dim must equal point count minus 1");
            break;
        }
        case SpaceKind::sum: {
            if (!spec.left || !spec.right) {
                issue("components", "sum requires left and right components");
                break;
            }
            if (!(spec.p >= 1.0)) issue("exponent", "p must be in [1, inf]");
            if (spec.dim != spec.left->dim + spec.right->dim)
                issue("dimension", "dim must equal left.dim + right.dim");
            auto lrep = validate(*spec.left);
            auto rrep = validate(*spec.right);
            for (auto& is : lrep.issues) issue("left." + is.invariant, is.detail, is.indices);
            for (auto& is : rrep.issues) issue("right." + is.invariant, is.detail, is.indices);
            break;
        }
    }
    return rep;
}

void require_valid(const SpaceSpec& spec) {
    auto rep = validate(spec);
    if (!rep.ok)
        fail(Errc::invalid_spec, spec.id() + ": " + rep.issues.front().invariant + " - " +
                                     rep.issues.front().detail);
}

double norm(const SpaceSpec& spec, const Vec& x) {
    if (static_cast<int>(x.size()) != spec.dim)
        fail(Errc::dimension_mismatch, "norm: vector size != spec.dim");
    switch (spec.kind) {
        case SpaceKind::lp:
            return lp_norm_value(x, spec.p);
        case SpaceKind::polytope_h: {
            double m = 0.0;
            for (const auto& f : spec.facets) m = std::max(m, dot(f.normal, x) / f.offset);
            return m;
        }
        case SpaceKind::polytope_v: {
            if (is_zero(x)) return 0.0;
            // gauge: min sum c_k with sum c_k v_k = x, c >= 0
            int nv = static_cast<int>(spec.vertices.size());
            Matrix A(spec.dim, Vec(nv));
            for (int i = 0; i < spec.dim; ++i)
                for (int k = 0; k < nv; ++k) A[i][k] = spec.vertices[k][i];
            Vec c(nv, 1.0);
            std::vector<Rel> rel(spec.dim, Rel::EQ);
            auto res = solve_lp(A, x, c, rel);
            if (res.status != LpStatus::optimal)
                fail(Errc::solver_failure, "gauge LP infeasible for " + spec.id());
            return res.objective;
        }
        case SpaceKind::lip: {
            auto pts = lip_points(spec);
            int m = static_cast<int>(spec.metric.size());
            double best = 0.0;
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) {
                    double q = std::abs(lip_value(spec, x, i, pts) - lip_value(spec, x, j, pts)) /
                               spec.metric[i][j];
                    best = std::max(best, q);
                }
            return best;
        }
        case SpaceKind::sum: {
            Vec xl, xr;
            split_sum(spec, x, xl, xr);
            Vec pair = {norm(*spec.left, xl), norm(*spec.right, xr)};
            return lp_norm_value(pair, spec.p);
        }
    }
    return 0.0;
}

double dual_norm(const SpaceSpec& spec, const Vec& f) {
    if (static_cast<int>(f.size()) != spec.dim)
        fail(Errc::dimension_mismatch, "dual_norm: vector size != spec.dim");
    switch (spec.kind) {
        case SpaceKind::lp:
            return lp_norm_value(f, conjugate_exponent(spec.p));
        case SpaceKind::polytope_v: {
            double m = 0.0;
            for (const auto& v : spec.vertices) m = std::max(m, dot(f, v));
            return m;
        }
        case SpaceKind::polytope_h:
        case SpaceKind::lip: {
            const auto fs = (spec.kind == SpaceKind::lip) ? lip_facets(spec) : spec.facets;
            Matrix A;
            Vec b;
            for (const auto& fc : fs) {
                A.push_back(fc.normal);
                b.push_back(fc.offset);
            }
            auto res = lp_max_linear(A, b, f);
            if (res.status != LpStatus::optimal)
                fail(Errc::solver_failure, "dual norm LP failed for " + spec.id());
            return res.objective;
        }
        case SpaceKind::sum: {
            Vec fl, fr;
            split_sum(spec, f, fl, fr);
            Vec pair = {dual_norm(*spec.left, fl), dual_norm(*spec.right, fr)};
            return lp_norm_value(pair, conjugate_exponent(spec.p));
        }
    }
    return 0.0;
}

Vec support_point(const SpaceSpec& spec, const Vec& f) {
    if (static_cast<int>(f.size()) != spec.dim)
        fail(Errc::dimension_mismatch, "support_point: vector size != spec.dim");
    switch (spec.kind) {
        case SpaceKind::lp: {
            int d = spec.dim;
            Vec x(d, 0.0);
            if (std::isinf(spec.p)) {
                for (int i = 0; i < d; ++i) x[i] = (f[i] > 0) - (f[i] < 0);
                if (is_zero(x)) x[0] = 1.0;
                return x;
            }
            if (spec.p == 1.0) {
                int best = 0;
                for (int i = 1; i < d; ++i)
                    if (std::abs(f[i]) > std::abs(f[best])) best = i;
                x[best] = (f[best] >= 0) ? 1.0 : -1.0;
                return x;
            }
            double q = conjugate_exponent(spec.p);
            double nf = lp_norm_value(f, q);
            if (nf == 0.0) return x;
            for (int i = 0; i < d; ++i) {
                double mag = std::pow(std::abs(f[i]) / nf, q - 1.0);
                x[i] = (f[i] >= 0 ? mag : -mag);
            }
            return x;
        }
        case SpaceKind::polytope_v: {
            int best = 0;
            for (int k = 1; k < static_cast<int>(spec.vertices.size()); ++k)
                if (dot(f, spec.vertices[k]) > dot(f, spec.vertices[best])) best = k;
            return spec.vertices[best];
        }
        case SpaceKind::polytope_h:
        case SpaceKind::lip: {
            const auto fs = (spec.kind == SpaceKind::lip) ? lip_facets(spec) : spec.facets;
            Matrix A;
            Vec b;
            for (const auto& fc : fs) {
                A.push_back(fc.normal);
                b.push_back(fc.offset);
            }
            auto res = lp_max_linear(A, b, f);
            if (res.status != LpStatus::optimal)
                fail(Errc::solver_failure, "support LP failed for " + spec.id());
            return res.x;
        }
        case SpaceKind::sum: {
            Vec fl, fr;
            split_sum(spec, f, fl, fr);
            Vec sl = support_point(*spec.left, fl);
            Vec sr = support_point(*spec.right, fr);
            double dl = dual_norm(*spec.left, fl);
            double dr = dual_norm(*spec.right, fr);
            double a = 1.0, b = 1.0;
            if (std::isinf(spec.p)) {
                // ball is the product
            } else if (spec.p == 1.0) {
                if (dl >= dr) {
                    b = 0.0;
                } else {
                    a = 0.0;
                }
            } else {
                double q = conjugate_exponent(spec.p);
                double den = std::pow(dl, q) + std::pow(dr, q);
                if (den == 0.0) {
                    a = b = 0.0;
                } else {
                    a = std::pow(std::pow(dl, q) / den, 1.0 / spec.p);
                    b = std::pow(std::pow(dr, q) / den, 1.0 / spec.p);
                }
            }
            return concat(scaled(sl, a), scaled(sr, b));
        }
    }
    return Vec(spec.dim, 0.0);
}

Vec norm_subgradient(const SpaceSpec& spec, const Vec& x) {
    if (static_cast<int>(x.size()) != spec.dim)
        fail(Errc::dimension_mismatch, "norm_subgradient: vector size != spec.dim");
    Vec g(spec.dim, 0.0);
    if (is_zero(x)) return g;
    switch (spec.kind) {
        case SpaceKind::lp: {
            if (std::isinf(spec.p)) {
                int best = 0;
                for (int i = 1; i < spec.dim; ++i)
                    if (std::abs(x[i]) > std::abs(x[best])) best = i;
                g[best] = (x[best] >= 0) ? 1.0 : -1.0;
                return g;
            }
            if (spec.p == 1.0) {
                for (int i = 0; i < spec.dim; ++i) g[i] = (x[i] > 0) - (x[i] < 0);
                return g;
            }
            double n = lp_norm_value(x, spec.p);
            for (int i = 0; i < spec.dim; ++i) {
                double mag = std::pow(std::abs(x[i]) / n, spec.p - 1.0);
                g[i] = (x[i] >= 0 ? mag : -mag);
            }
            return g;
        }
        case SpaceKind::polytope_h: {
            int best = 0;
            double bv = -kInf;
            for (int k = 0; k < static_cast<int>(spec.facets.size()); ++k) {
                double v = dot(spec.facets[k].normal, x) / spec.facets[k].offset;
                if (v > bv) {
                    bv = v;
                    best = k;
                }
            }
            return scaled(spec.facets[best].normal, 1.0 / spec.facets[best].offset);
        }
        case SpaceKind::lip: {
            auto pts = lip_points(spec);
            int m = static_cast<int>(spec.metric.size());
            double bv = -kInf;
            int bi = 0, bj = 1;
            double bs = 1.0;
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) {
                    double diff = lip_value(spec, x, i, pts) - lip_value(spec, x, j, pts);
                    double q = std::abs(diff) / spec.metric[i][j];
                    if (q > bv) {
                        bv = q;
                        bi = i;
                        bj = j;
                        bs = (diff >= 0) ? 1.0 : -1.0;
                    }
                }
            for (std::size_t c = 0; c < pts.size(); ++c) {
                if (pts[c] == bi) g[c] += bs / spec.metric[bi][bj];
                if (pts[c] == bj) g[c] -= bs / spec.metric[bi][bj];
            }
            return g;
        }
        case SpaceKind::polytope_v: {
            // supporting functional from the polar: max <g, x> s.t. <g, v_k> <= 1
            Matrix A;
            Vec b;
            for (const auto& v : spec.vertices) {
                A.push_back(v);
                b.push_back(1.0);
            }
            auto res = lp_max_linear(A, b, x);
            if (res.status != LpStatus::optimal)
                fail(Errc::solver_failure, "polar LP failed for " + spec.id());
            return res.x;
        }
        case SpaceKind::sum: {
            Vec xl, xr;
            split_sum(spec, x, xl, xr);
            Vec gl = norm_subgradient(*spec.left, xl);
            Vec gr = norm_subgradient(*spec.right, xr);
            double nl = norm(*spec.left, xl);
            double nr = norm(*spec.right, xr);
            if (std::isinf(spec.p)) {
                if (nl >= nr) return concat(gl, Vec(spec.right->dim, 0.0));
                return concat(Vec(spec.left->dim, 0.0), gr);
            }
            if (spec.p == 1.0) return concat(gl, gr);
            double n = lp_norm_value({nl, nr}, spec.p);
            if (n == 0.0) return g;
            double wl = std::pow(nl / n, spec.p - 1.0);
            double wr = std::pow(nr / n, spec.p - 1.0);
            return concat(scaled(gl, wl), scaled(gr, wr));
        }
    }
    return g;
}

Vec project_to_sphere(const SpaceSpec& spec, const Vec& x) {
    double n = norm(spec, x);
    if (n == 0.0) fail(Errc::zero_vector, "cannot normalize the zero vector");
    Vec y = scaled(x, 1.0 / n);
    // One or two polish rounds keep LP-backed gauges within 1e-12 of the sphere.
    for (int round = 0; round < 3; ++round) {
        double m = norm(spec, y);
        if (std::abs(m - 1.0) <= 1e-13) break;
        y = scaled(y, 1.0 / m);
    }
    return y;
}

Vec project_to_ball(const SpaceSpec& spec, const Vec& x) {
    if (spec.kind == SpaceKind::lp && std::isinf(spec.p)) {
        Vec y = x;
        for (auto& v : y) v = std::clamp(v, -1.0, 1.0);
        return y;
    }
    if (spec.kind == SpaceKind::sum && std::isinf(spec.p)) {
        Vec xl, xr;
        split_sum(spec, x, xl, xr);
        return concat(project_to_ball(*spec.left, xl), project_to_ball(*spec.right, xr));
    }
    double n = norm(spec, x);
    if (n <= 1.0) return x;
    Vec y = scaled(x, 1.0 / n);
    double m = norm(spec, y);
    if (m > 1.0) y = scaled(y, 1.0 / m);
    return y;
}

bool is_polytopal(const SpaceSpec& spec) {
    switch (spec.kind) {
        case SpaceKind::polytope_v:
        case SpaceKind::polytope_h:
        case SpaceKind::lip:
            return true;
        case SpaceKind::lp:
            // every 1D ball is the segment [-1, 1]
            return spec.p == 1.0 || std::isinf(spec.p) || spec.dim == 1;
        case SpaceKind::sum:
            return (spec.p == 1.0 || std::isinf(spec.p)) && spec.left && spec.right &&
                   is_polytopal(*spec.left) && is_polytopal(*spec.right);
    }
    return false;
}

std::vector<Facet> prune_redundant_facets(std::vector<Facet> facets, int dim) {
    // Normalize offsets to 1 and drop duplicates first.
    std::vector<Facet> fs;
    for (auto& f : facets) {
        Facet g{scaled(f.normal, 1.0 / f.offset), 1.0};
        bool dup = false;
        for (const auto& h : fs)
            if (linf_dist(h.normal, g.normal) <= 1e-12) {
                dup = true;
                break;
            }
        if (!dup) fs.push_back(std::move(g));
    }
    // Sequential removal: each survivor is tested against the current system.
    std::vector<bool> active(fs.size(), true);
    for (std::size_t i = 0; i < fs.size(); ++i) {
        Matrix A;
        Vec b;
        for (std::size_t j = 0; j < fs.size(); ++j) {
            if (j == i || !active[j]) continue;
            A.push_back(fs[j].normal);
            b.push_back(1.0);
        }
        if (A.empty()) continue;
        auto res = lp_max_linear(A, b, fs[i].normal);
        bool essential = res.status == LpStatus::unbounded ||
                         (res.status == LpStatus::optimal && res.objective > 1.0 + 1e-9);
        if (!essential) active[i] = false;
    }
    std::vector<Facet> out;
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (active[i]) out.push_back(fs[i]);
    return out;
}

std::vector<Vec> enumerate_h_vertices(const std::vector<Facet>& facets, int dim,
                                      std::uint64_t enum_cap) {
    int m = static_cast<int>(facets.size());
    if (m < dim) return {};
    // Basis count check before walking C(m, dim) subsets.
    double bases = 1.0;
    for (int i = 0; i < dim; ++i) bases = bases * (m - i) / (i + 1);
    if (bases > static_cast<double>(enum_cap))
        fail(Errc::dimension_budget_exceeded,
             "vertex enumeration would visit too many bases (" + std::to_string(m) + " facets in dim " +
                 std::to_string(dim) + ")");

    std::vector<Vec> kept;
    std::vector<int> idx(dim);
    for (int i = 0; i < dim; ++i) idx[i] = i;
    while (true) {
        Matrix M(dim);
        Vec rhs(dim);
        for (int i = 0; i < dim; ++i) {
            M[i] = facets[idx[i]].normal;
            rhs[i] = facets[idx[i]].offset;
        }
        Vec x;
        if (solve_square(std::move(M), std::move(rhs), x)) {
            bool feas = true;
            for (const auto& f : facets)
                if (dot(f.normal, x) > f.offset + 1e-9) {
                    feas = false;
                    break;
                }
            if (feas) {
                bool dup = false;
                for (const auto& v : kept)
                    if (linf_dist(v, x) <= 1e-10) {
                        dup = true;
                        break;
                    }
                if (!dup) kept.push_back(std::move(x));
            }
        }
        // next combination
        int pos = dim - 1;
        while (pos >= 0 && idx[pos] == m - dim + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int j = pos + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
    }
    return kept;
}

std::vector<Facet> facets_from_vertices_2d(const std::vector<Vec>& vertices) {
    std::vector<Vec> vs = vertices;
    std::sort(vs.begin(), vs.end(), [](const Vec& a, const Vec& b) {
        return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
    });
    std::vector<Facet> out;
    int n = static_cast<int>(vs.size());
    for (int k = 0; k < n; ++k) {
        const Vec& a = vs[k];
        const Vec& b = vs[(k + 1) % n];
        double det = a[0] * b[1] - a[1] * b[0];
        if (std::abs(det) < 1e-12) continue;  // collinear with origin; not a facet
        // normal n with <n, a> = <n, b> = 1
        Vec nrm = {(b[1] - a[1]) / det, (a[0] - b[0]) / det};
        out.push_back({nrm, 1.0});
    }
    return out;
}

namespace {

std::vector<Vec> extreme_points_of(const std::vector<Vec>& points) {
    // Dedup, then drop every point expressible as a convex combination of the rest.
    std::vector<Vec> pts;
    for (const auto& v : points) {
        bool dup = false;
        for (const auto& u : pts)
            if (linf_dist(u, v) <= 1e-12) {
                dup = true;
                break;
            }
        if (!dup) pts.push_back(v);
    }
    int d = pts.empty() ? 0 : static_cast<int>(pts[0].size());
    std::vector<bool> extreme(pts.size(), true);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        Matrix A(d + 1);
        std::vector<int> cols;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != k) cols.push_back(static_cast<int>(j));
        if (cols.empty()) continue;
        for (int i = 0; i < d; ++i) {
            A[i].resize(cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c) A[i][c] = pts[cols[c]][i];
        }
        A[d].assign(cols.size(), 1.0);
        Vec b = pts[k];
        b.push_back(1.0);
        Vec obj(cols.size(), 0.0);
        std::vector<Rel> rel(d + 1, Rel::EQ);
        auto res = solve_lp(A, b, obj, rel);
        if (res.status == LpStatus::optimal) extreme[k] = false;
    }
    std::vector<Vec> out;
    for (std::size_t k = 0; k < pts.size(); ++k)
        if (extreme[k]) out.push_back(pts[k]);
    return out;
}

}  // namespace

BallGeometry ball_geometry(const SpaceSpec& spec, const SolverBudget& budget) {
    if (!is_polytopal(spec))
        fail(Errc::not_polytopal, spec.id() + " has no exact polytopal structure");
    if (spec.dim > budget.dim_budget)
        fail(Errc::dimension_budget_exceeded,
             spec.id() + ": dim exceeds enumeration budget " + std::to_string(budget.dim_budget));

    BallGeometry geo;
    switch (spec.kind) {
        case SpaceKind::polytope_h: {
            geo.facets = prune_redundant_facets(spec.facets, spec.dim);
            geo.vertices = enumerate_h_vertices(geo.facets, spec.dim, budget.enum_cap);
            break;
        }
        case SpaceKind::lip: {
            geo.facets = prune_redundant_facets(lip_facets(spec), spec.dim);
            geo.vertices = enumerate_h_vertices(geo.facets, spec.dim, budget.enum_cap);
            break;
        }
        case SpaceKind::polytope_v: {
            geo.vertices = extreme_points_of(spec.vertices);
            if (spec.dim == 2) {
                geo.facets = facets_from_vertices_2d(geo.vertices);
            } else {
                // facet normals are the vertices of the polar body
                std::vector<Facet> polar;
                for (const auto& v : geo.vertices) polar.push_back({v, 1.0});
                auto normals = enumerate_h_vertices(polar, spec.dim, budget.enum_cap);
                for (auto& a : normals) geo.facets.push_back({a, 1.0});
            }
            break;
        }
        case SpaceKind::lp: {
            std::uint64_t two_d = 1ULL << spec.dim;
            if (spec.dim == 1) {
                geo.vertices = {{1.0}, {-1.0}};
                geo.facets = {{{1.0}, 1.0}, {{-1.0}, 1.0}};
                break;
            }
            if (std::isinf(spec.p)) {
                for (int i = 0; i < spec.dim; ++i) {
                    Vec e(spec.dim, 0.0);
                    e[i] = 1.0;
                    geo.facets.push_back({e, 1.0});
                    e[i] = -1.0;
                    geo.facets.push_back({e, 1.0});
                }
                if (two_d > budget.enum_cap)
                    fail(Errc::dimension_budget_exceeded, "cube has too many vertices");
                for (std::uint64_t mask = 0; mask < two_d; ++mask) {
                    Vec v(spec.dim);
                    for (int i = 0; i < spec.dim; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
                    geo.vertices.push_back(std::move(v));
                }
            } else {  // p == 1
                for (int i = 0; i < spec.dim; ++i) {
                    Vec e(spec.dim, 0.0);
                    e[i] = 1.0;
                    geo.vertices.push_back(e);
                    e[i] = -1.0;
                    geo.vertices.push_back(e);
                }
                if (two_d > budget.enum_cap)
                    fail(Errc::dimension_budget_exceeded, "cross-polytope has too many facets");
                for (std::uint64_t mask = 0; mask < two_d; ++mask) {
                    Vec a(spec.dim);
                    for (int i = 0; i < spec.dim; ++i) a[i] = (mask >> i) & 1 ? 1.0 : -1.0;
                    geo.facets.push_back({std::move(a), 1.0});
                }
            }
            break;
        }
        case SpaceKind::sum: {
            auto gl = ball_geometry(*spec.left, budget);
            auto gr = ball_geometry(*spec.right, budget);
            int dl = spec.left->dim, dr = spec.right->dim;
            if (std::isinf(spec.p)) {
                if (static_cast<std::uint64_t>(gl.vertices.size()) * gr.vertices.size() >
                    budget.enum_cap)
                    fail(Errc::dimension_budget_exceeded, "product vertex set too large");
                for (const auto& u : gl.vertices)
                    for (const auto& v : gr.vertices) geo.vertices.push_back(concat(u, v));
                for (const auto& f : gl.facets)
                    geo.facets.push_back({concat(f.normal, Vec(dr, 0.0)), f.offset});
                for (const auto& f : gr.facets)
                    geo.facets.push_back({concat(Vec(dl, 0.0), f.normal), f.offset});
            } else {  // p == 1
                for (const auto& u : gl.vertices) geo.vertices.push_back(concat(u, Vec(dr, 0.0)));
                for (const auto& v : gr.vertices) geo.vertices.push_back(concat(Vec(dl, 0.0), v));
                if (static_cast<std::uint64_t>(gl.facets.size()) * gr.facets.size() >
                    budget.enum_cap)
                    fail(Errc::dimension_budget_exceeded, "combined facet set too large");
                for (const auto& fa : gl.facets)
                    for (const auto& fb : gr.facets)
                        geo.facets.push_back(
                            {concat(scaled(fa.normal, 1.0 / fa.offset),
                                    scaled(fb.normal, 1.0 / fb.offset)),
                             1.0});
            }
            break;
        }
    }
    if (geo.vertices.empty())
        fail(Errc::solver_failure, spec.id() + ": vertex enumeration produced nothing");
    return geo;
}

std::vector<Vec> ball_vertices(const SpaceSpec& spec, const SolverBudget& budget) {
    return ball_geometry(spec, budget).vertices;
}

std::vector<Vec> sphere_sample(const SpaceSpec& spec, std::uint64_t seed, int count,
                               const SolverBudget& budget) {
    if (count < 1) fail(Errc::invalid_point, "sphere_sample: count must be >= 1");
    std::vector<Vec> out;
    if (is_polytopal(spec) && spec.dim <= budget.dim_budget) {
        try {
            out = ball_vertices(spec, budget);
        } catch (const DomainError&) {
            out.clear();  // enumeration over budget: fall back to pure sampling
        }
    }
    std::size_t base = out.size();
    std::size_t want = std::max<std::size_t>(static_cast<std::size_t>(count), base);
    for (std::size_t i = base; i < want; ++i) {
        Rng rng(derive_seed(seed, i));
        Vec z;
        do {
            z = rng.gaussian_vec(spec.dim);
        } while (norm2(z) < 1e-9);
        out.push_back(project_to_sphere(spec, z));
    }
    return out;
}

}  // namespace slicegeo
