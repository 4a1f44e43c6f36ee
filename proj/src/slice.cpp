#include "slicegeo/slice.hpp"

#include <algorithm>
#include <cmath>

#include "slicegeo/linprog.hpp"
#include "slicegeo/parallel.hpp"
#include "slicegeo/rng.hpp"

namespace slicegeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Deterministic boundary grid with exact antipodal symmetry: points k and
// k + n/2 are exact negations, so separation-2 pairs survive the >= filter.
std::vector<Vec> boundary_grid_2d(const SpaceSpec& spec, int n) {
    int half = std::max(2, n / 2);
    std::vector<Vec> pts;
    pts.reserve(2 * half);
    for (int k = 0; k < half; ++k) {
        double th = kPi * k / half;
        pts.push_back(project_to_sphere(spec, {std::cos(th), std::sin(th)}));
    }
    for (int k = 0; k < half; ++k) pts.push_back(scaled(pts[k], -1.0));
    return pts;
}

double max_adjacent_gap(const SpaceSpec& spec, const std::vector<Vec>& pts) {
    // Points are ordered by angle over the full circle.
    double h = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k)
        h = std::max(h, norm(spec, sub(pts[(k + 1) % pts.size()], pts[k])));
    return h;
}

// Support point of the closed slice {x in B : <f, x> >= c} in direction g,
// via a scalar multiplier bisection on support_point(g + mu f).
Vec slice_support(const SpaceSpec& spec, const Vec& f, double c, const Vec& g) {
    Vec x = support_point(spec, g);
    if (dot(f, x) >= c) return x;
    Vec anchor = support_point(spec, f);  // <f, anchor> = 1 >= c
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60 && dot(f, support_point(spec, add(g, scaled(f, hi)))) < c; ++it)
        hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (dot(f, support_point(spec, add(g, scaled(f, mid)))) >= c)
            hi = mid;
        else
            lo = mid;
    }
    x = support_point(spec, add(g, scaled(f, hi)));
    double fx = dot(f, x);
    if (fx < c) {
        double denom = dot(f, anchor) - fx;
        double t = denom > 0 ? std::min(1.0, (c - fx) / denom + 1e-15) : 1.0;
        x = add(x, scaled(sub(anchor, x), t));
    }
    return x;
}

DiameterResult diameter_over_points(const SpaceSpec& spec, const std::vector<Vec>& pts) {
    DiameterResult out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double d = norm(spec, sub(pts[i], pts[j]));
            if (d > out.lower) {
                out.lower = d;
                out.witness_u = pts[i];
                out.witness_v = pts[j];
            }
        }
    out.upper = out.lower;
    return out;
}

DiameterResult slice_diameter_polytopal(const Slice& s, const SolverBudget& budget) {
    auto geo = ball_geometry(s.space, budget);
    std::vector<Facet> sys = geo.facets;
    sys.push_back({scaled(s.functional, -1.0), -s.threshold()});
    auto verts = enumerate_h_vertices(sys, s.space.dim, budget.enum_cap);
    if (verts.empty())
        fail(Errc::empty_slice, "no vertex of the closed slice found (numerical failure)");
    auto out = diameter_over_points(s.space, verts);
    out.exact = true;
    return out;
}

DiameterResult slice_diameter_2d_arc(const Slice& s, const SolverBudget& budget) {
    const double c = s.threshold();
    DiameterResult out;
    if (c <= -1.0 + 1e-12) {
        // The slice covers the whole ball; antipodal unit vectors attain 2.
        Vec u = support_point(s.space, s.functional);
        out.witness_u = u;
        out.witness_v = scaled(u, -1.0);
        out.lower = out.upper = norm(s.space, sub(out.witness_u, out.witness_v));
        out.exact = true;
        return out;
    }
    int n = std::clamp(budget.resolution, 256, 4096);
    auto bnd = boundary_grid_2d(s.space, n);
    std::vector<Vec> pts;
    auto value = [&](const Vec& x) { return dot(s.functional, x); };
    auto at = [&](double th) { return project_to_sphere(s.space, {std::cos(th), std::sin(th)}); };
    for (std::size_t k = 0; k < bnd.size(); ++k) {
        if (value(bnd[k]) >= c) pts.push_back(bnd[k]);
        const Vec& a = bnd[k];
        const Vec& b = bnd[(k + 1) % bnd.size()];
        if ((value(a) >= c) != (value(b) >= c)) {
            // refine the crossing between adjacent grid points by angle bisection
            double ta = std::atan2(a[1], a[0]);
            double tb = std::atan2(b[1], b[0]);
            if (tb < ta) tb += 2.0 * kPi;
            bool a_in = value(a) >= c;
            for (int it = 0; it < 80; ++it) {
                double tm = 0.5 * (ta + tb);
                if ((value(at(tm)) >= c) == a_in)
                    ta = tm;
                else
                    tb = tm;
            }
            Vec m = at(a_in ? ta : tb);
            if (value(m) >= c - 1e-12) pts.push_back(m);
        }
    }
    if (pts.empty()) fail(Errc::empty_slice, "no boundary point met the slice threshold");
    out = diameter_over_points(s.space, pts);

    // Local polish: alternating golden-section over the boundary angle.
    auto theta_of = [](const Vec& v) { return std::atan2(v[1], v[0]); };
    double t1 = theta_of(out.witness_u), t2 = theta_of(out.witness_v);
    double window = 2.0 * kPi / n;
    const double gr = 0.6180339887498949;
    for (int round = 0; round < 4; ++round) {
        for (int which = 0; which < 2; ++which) {
            double t = which == 0 ? t1 : t2;
            Vec other = which == 0 ? at(t2) : at(t1);
            double lo = t - 2 * window, hi = t + 2 * window;
            auto score = [&](double th) {
                Vec x = at(th);
                if (value(x) < c - 1e-13) return -1.0;
                return norm(s.space, sub(x, other));
            };
            double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
            double fa = score(a), fb = score(b);
            for (int it = 0; it < 60; ++it) {
                if (fa < fb) {
                    lo = a;
                    a = b;
                    fa = fb;
                    b = lo + gr * (hi - lo);
                    fb = score(b);
                } else {
                    hi = b;
                    b = a;
                    fb = fa;
                    a = hi - gr * (hi - lo);
                    fa = score(a);
                }
            }
            double cand = 0.5 * (lo + hi);
            if (score(cand) > score(t)) {
                if (which == 0)
                    t1 = cand;
                else
                    t2 = cand;
            }
        }
        Vec u = at(t1), v = at(t2);
        if (value(u) >= c - 1e-13 && value(v) >= c - 1e-13) {
            double d = norm(s.space, sub(u, v));
            if (d > out.lower) {
                out.lower = out.upper = d;
                out.witness_u = u;
                out.witness_v = v;
            }
        }
    }
    out.upper = out.lower;
    out.exact = false;  // heuristic flag for smooth norms
    return out;
}

DiameterResult slice_diameter_smooth_nd(const Slice& s, const SolverBudget& budget) {
    const double c = s.threshold();
    DiameterResult best;
    if (c <= -1.0 + 1e-12) {
        Vec u = support_point(s.space, s.functional);
        best.witness_u = u;
        best.witness_v = scaled(u, -1.0);
        best.lower = best.upper = norm(s.space, sub(u, scaled(u, -1.0)));
        best.exact = true;
        return best;
    }
    int starts = std::max(4, budget.starts);
    std::vector<DiameterResult> results(starts);
    parallel_for(starts, budget.threads, [&](std::size_t k) {
        Rng rng(derive_seed(budget.seed, 7000 + k));
        Vec g = rng.gaussian_vec(s.space.dim);
        Vec u = slice_support(s.space, s.functional, c, g);
        Vec v = slice_support(s.space, s.functional, c, scaled(g, -1.0));
        double d = norm(s.space, sub(u, v));
        for (int it = 0; it < budget.iterations; ++it) {
            Vec dir = norm_subgradient(s.space, sub(u, v));
            if (is_zero(dir)) break;
            Vec nu = slice_support(s.space, s.functional, c, dir);
            Vec nv = slice_support(s.space, s.functional, c, scaled(dir, -1.0));
            double nd = norm(s.space, sub(nu, nv));
            if (nd <= d + 1e-13) break;
            u = nu;
            v = nv;
            d = nd;
        }
        if (s.contains_closed(u) && s.contains_closed(v)) {
            results[k].lower = results[k].upper = d;
            results[k].witness_u = u;
            results[k].witness_v = v;
        }
    });
    for (const auto& r : results)
        if (r.lower > best.lower) best = r;
    best.exact = false;
    if (best.witness_u.empty()) fail(Errc::empty_slice, "no feasible pair found in the slice");
    return best;
}

}  // namespace

bool Slice::contains(const Vec& x) const {
    return norm(space, x) <= 1.0 && dot(functional, x) > threshold();
}

bool Slice::contains_closed(const Vec& x, double tol) const {
    return norm(space, x) <= 1.0 + tol && dot(functional, x) >= threshold() - tol;
}

Slice make_slice(const SpaceSpec& space, const Vec& f, double depth) {
    if (static_cast<int>(f.size()) != space.dim)
        fail(Errc::dimension_mismatch, "make_slice: functional size != spec.dim");
    if (!(depth > 0.0) || depth > 2.0)
        fail(Errc::depth_out_of_range, "slice depth must lie in (0, 2]");
    double dn = dual_norm(space, f);
    if (dn == 0.0) fail(Errc::zero_functional, "slice functional must be nonzero");
    Slice s{space, scaled(f, 1.0 / dn), depth};
    double check = dual_norm(space, s.functional);
    if (std::abs(check - 1.0) > 1e-9) s.functional = scaled(s.functional, 1.0 / check);
    return s;
}

DiameterResult slice_diameter(const Slice& slice, const SolverBudget& budget) {
    if (std::abs(dual_norm(slice.space, slice.functional) - 1.0) > 1e-9)
        fail(Errc::invariant_violation, "slice functional is not dual-normalized");
    if (is_polytopal(slice.space) && slice.space.dim <= budget.dim_budget)
        return slice_diameter_polytopal(slice, budget);
    if (slice.space.dim == 2) return slice_diameter_2d_arc(slice, budget);
    return slice_diameter_smooth_nd(slice, budget);
}

MinDiameterResult min_slice_diameter(const SpaceSpec& space, double depth,
                                     const SolverBudget& budget) {
    if (!(depth > 0.0) || depth > 2.0)
        fail(Errc::depth_out_of_range, "slice depth must lie in (0, 2]");
    MinDiameterResult out;
    out.upper = std::numeric_limits<double>::infinity();
    bool exact_slices = is_polytopal(space) && space.dim <= budget.dim_budget;
    out.upper_certified = exact_slices;

    SolverBudget eval = budget;
    eval.resolution = std::min(budget.resolution, 512);

    auto try_functional = [&](const Vec& f) {
        Slice s = make_slice(space, f, depth);
        auto d = slice_diameter(s, eval);
        if (d.upper < out.upper) {
            out.upper = d.upper;
            out.witness_functional = s.functional;
            out.witness = d;
        }
        return d.upper;
    };

    if (space.dim == 2 && exact_slices) {
        int res = std::clamp(budget.resolution, 64, 1440);
        out.resolution = res;
        out.lower_resolution_qualified = true;
        std::vector<double> vals(res);
        parallel_for(res, budget.threads, [&](std::size_t k) {
            double th = 2.0 * kPi * static_cast<double>(k) / res;
            Slice s = make_slice(space, {std::cos(th), std::sin(th)}, depth);
            vals[k] = slice_diameter(s, eval).upper;
        });
        double grid_min = std::numeric_limits<double>::infinity();
        int best_k = 0;
        for (int k = 0; k < res; ++k)
            if (vals[k] < grid_min) {
                grid_min = vals[k];
                best_k = k;
            }
        out.lower = grid_min;
        double th = 2.0 * kPi * best_k / res;
        try_functional({std::cos(th), std::sin(th)});
        // golden refinement around the best grid angle
        double lo = th - 2.0 * kPi / res;
        double hi = th + 2.0 * kPi / res;
        const double gr = 0.6180339887498949;
        auto score = [&](double t) {
            Slice s = make_slice(space, {std::cos(t), std::sin(t)}, depth);
            return slice_diameter(s, eval).upper;
        };
        double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
        double fa = score(a), fb = score(b);
        for (int it = 0; it < 40; ++it) {
            if (fa > fb) {
                lo = a;
                a = b;
                fa = fb;
                b = lo + gr * (hi - lo);
                fb = score(b);
            } else {
                hi = b;
                b = a;
                fb = fa;
                a = hi - gr * (hi - lo);
                fa = score(a);
            }
        }
        try_functional({std::cos(0.5 * (lo + hi)), std::sin(0.5 * (lo + hi))});
        out.lower = std::min(out.lower, out.upper);
        return out;
    }

    // General path: multi-start random search with shrinking perturbations.
    int starts = std::max(4, budget.starts);
    std::vector<std::pair<double, Vec>> found(starts,
                                              {std::numeric_limits<double>::infinity(), Vec{}});
    parallel_for(starts, budget.threads, [&](std::size_t k) {
        Rng rng(derive_seed(budget.seed, 9000 + k));
        Vec f = rng.gaussian_vec(space.dim);
        if (norm2(f) < 1e-12) f[0] = 1.0;
        f = scaled(f, 1.0 / dual_norm(space, f));
        SolverBudget quiet = eval;
        quiet.starts = 4;
        auto eval_f = [&](const Vec& fn) {
            Slice s = make_slice(space, fn, depth);
            return slice_diameter(s, quiet).upper;
        };
        double cur = eval_f(f);
        double sigma = 0.5;
        for (int it = 0; it < budget.iterations; ++it) {
            Vec cand = add(f, scaled(rng.gaussian_vec(space.dim), sigma));
            if (norm2(cand) < 1e-12) continue;
            cand = scaled(cand, 1.0 / dual_norm(space, cand));
            double val = eval_f(cand);
            if (val < cur) {
                cur = val;
                f = cand;
            } else {
                sigma *= 0.85;
                if (sigma < 1e-4) break;
            }
        }
        found[k] = {cur, f};
    });
    for (const auto& [val, f] : found)
        if (!f.empty() && val <= out.upper) try_functional(f);
    out.lower = 0.0;  // no certified lower bound on this path
    out.lower_resolution_qualified = false;
    return out;
}

SeparationResult separating_slice(const SpaceSpec& space, const Vec& x0, double alpha, double eps,
                                  const SolverBudget& budget) {
    if (!(eps > 0.0) || !(eps < alpha) || alpha > 2.0)
        fail(Errc::depth_out_of_range, "need 0 < eps < alpha <= 2");
    if (norm(space, x0) > 1.0 + 1e-9)
        fail(Errc::invalid_point, "x0 must lie in the unit ball");
    const double level = alpha - eps;
    SeparationResult out;

    // Sample midpoints of level-separated pairs.
    std::vector<Vec> mids;
    double gap = 0.0;
    bool dense2d = space.dim == 2;
    if (dense2d) {
        auto bnd = boundary_grid_2d(space, std::min(budget.resolution, 2048));
        gap = max_adjacent_gap(space, bnd);
        // Relaxed separation (level - 2*gap) keeps the sampled family a cover
        // of the true one; its sup is then trustworthy up to +gap.
        double cut = std::max(0.0, level - 2.0 * gap);
        std::size_t nb = bnd.size();
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = i + 1; j < nb; ++j)
                if (norm(space, sub(bnd[i], bnd[j])) >= cut)
                    mids.push_back(midpoint(bnd[i], bnd[j]));
    } else {
        auto pts = sphere_sample(space, budget.seed, budget.samples, budget);
        mids.push_back(Vec(space.dim, 0.0));  // antipodal midpoint, always present
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (norm(space, sub(pts[i], pts[j])) >= level)
                    mids.push_back(midpoint(pts[i], pts[j]));
    }
    if (mids.empty()) {
        out.note = "no separated pairs sampled";
        return out;
    }

    // Reduce to convex-position candidates in 2D to keep the projection cheap.
    if (dense2d && mids.size() > 64) {
        std::sort(mids.begin(), mids.end());
        mids.erase(std::unique(mids.begin(), mids.end()), mids.end());
        auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
            return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
        };
        std::vector<Vec> hull;
        std::size_t start = 1;
        for (const auto& p : mids) {
            while (hull.size() >= start + 1 && cross(hull[hull.size() - 2], hull.back(), p) <= 0)
                hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();
        start = hull.size() + 1;
        for (auto it = mids.rbegin(); it != mids.rend(); ++it) {
            while (hull.size() >= start + 1 && cross(hull[hull.size() - 2], hull.back(), *it) <= 0)
                hull.pop_back();
            hull.push_back(*it);
        }
        hull.pop_back();
        if (hull.size() >= 3) mids = hull;
    }

    // Euclidean distance from x0 to conv(mids): projected gradient over the
    // weight simplex plus a conditional-gradient gap certificate.
    std::size_t K = mids.size();
    Vec lam(K, 1.0 / static_cast<double>(K));
    auto combo = [&](const Vec& l) {
        Vec y(space.dim, 0.0);
        for (std::size_t k = 0; k < K; ++k) axpy(y, l[k], mids[k]);
        return y;
    };
    auto project_simplex = [](Vec v) {
        Vec u = v;
        std::sort(u.begin(), u.end(), std::greater<double>());
        double css = 0.0, theta = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            css += u[i];
            double t = (css - 1.0) / static_cast<double>(i + 1);
            if (u[i] - t > 0) theta = t;
        }
        for (auto& x : v) x = std::max(0.0, x - theta);
        return v;
    };
    double lips = 0.0;
    for (const auto& m : mids) lips = std::max(lips, dot(m, m));
    lips = std::max(lips * static_cast<double>(K), 1e-12);
    double step = 1.0 / lips;
    Vec r = sub(x0, combo(lam));
    for (int it = 0; it < 600; ++it) {
        Vec next(K);
        for (std::size_t k = 0; k < K; ++k) next[k] = lam[k] + step * dot(mids[k], r);
        next = project_simplex(next);
        lam = next;
        r = sub(x0, combo(lam));
    }
    double fval = 0.5 * dot(r, r);
    double gmin = std::numeric_limits<double>::infinity(), glam = 0.0;
    {
        Vec grad(K);
        for (std::size_t k = 0; k < K; ++k) {
            grad[k] = -dot(mids[k], r);
            gmin = std::min(gmin, grad[k]);
        }
        glam = dot(grad, lam);
    }
    double fw_gap = std::max(0.0, glam - gmin);
    out.hull_distance_lower = std::sqrt(2.0 * std::max(0.0, fval - fw_gap));
    out.sampling_gap = gap;
    out.certified = dense2d;

    if (out.hull_distance_lower <= budget.margin) {
        out.note = "x0 within margin of the sampled midpoint hull";
        return out;
    }
    Vec g = r;
    double dn = dual_norm(space, g);
    if (dn <= 1e-14) {
        out.note = "separating direction degenerate";
        return out;
    }
    Vec f = scaled(g, 1.0 / dn);
    double s0 = dot(f, x0);
    double sa = -std::numeric_limits<double>::infinity();
    for (const auto& m : mids) sa = std::max(sa, dot(f, m));
    out.sup_x0 = s0;
    out.sup_hull = sa;
    // The functional is 1-Lipschitz for the space norm, so a boundary gap of
    // h costs at most h in the sup over the unsampled midpoints.
    if (s0 - sa <= gap + 1e-12) {
        out.note = "functional gap within sampling slack";
        return out;
    }
    double threshold = 0.5 * (s0 + sa + gap);
    out.slice = make_slice(space, f, 1.0 - threshold);
    out.separated = true;
    return out;
}

SpreadWitness slice_spread_witness(const Slice& slice, double alpha, double eps,
                                   const SolverBudget& budget) {
    if (!(eps > 0.0) || !(eps < alpha) || alpha > 2.0)
        fail(Errc::depth_out_of_range, "need 0 < eps < alpha <= 2");
    const SpaceSpec& X = slice.space;
    const double level = alpha - eps;
    const double want = 1.0 - 0.5 * slice.depth;  // half-depth slice threshold
    const Vec& f = slice.functional;

    auto feasible = [&](const Vec& u, const Vec& v) {
        return norm(X, u) <= 1.0 + 1e-9 && norm(X, v) <= 1.0 + 1e-9 &&
               norm(X, sub(u, v)) >= level - 1e-9;
    };
    auto restore = [&](Vec& u, Vec& v, Rng& rng) {
        for (int round = 0; round < budget.restore_rounds; ++round) {
            Vec m = midpoint(u, v);
            Vec w = scaled(sub(u, v), 0.5);
            double wn = norm(X, w);
            if (wn < 0.5 * level) {
                if (wn < 1e-14) {
                    Vec dir = rng.gaussian_vec(X.dim);
                    if (norm2(dir) < 1e-12) dir[0] = 1.0;
                    w = scaled(project_to_sphere(X, dir), 0.5 * level);
                } else {
                    w = scaled(w, 0.5 * level / wn);
                }
            }
            u = project_to_ball(X, add(m, w));
            v = project_to_ball(X, sub(m, w));
            if (feasible(u, v)) return true;
        }
        Vec w = sub(u, v);
        if (is_zero(w, 1e-14)) w = f;
        Vec wh = project_to_sphere(X, w);
        u = wh;
        v = scaled(wh, -1.0);
        return feasible(u, v);
    };

    SpreadWitness best;
    auto consider = [&](const Vec& u, const Vec& v) {
        if (!feasible(u, v)) return;
        double val = dot(f, midpoint(u, v));
        if (!best.found || val > best.midpoint_value) {
            best.u = u;
            best.v = v;
            best.midpoint_value = val;
            best.separation = norm(X, sub(u, v));
            best.found = true;
        }
    };

    std::vector<std::pair<Vec, Vec>> inits;
    if (is_polytopal(X) && X.dim <= budget.dim_budget) {
        auto verts = ball_vertices(X, budget);
        std::vector<std::pair<double, std::pair<Vec, Vec>>> ranked;
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                if (norm(X, sub(verts[i], verts[j])) >= level - 1e-12)
                    ranked.push_back({dot(f, midpoint(verts[i], verts[j])), {verts[i], verts[j]}});
        std::sort(ranked.begin(), ranked.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t k = 0; k < ranked.size() && k < static_cast<std::size_t>(budget.starts);
             ++k)
            inits.push_back(ranked[k].second);
    }
    Vec anchor = support_point(X, f);
    Rng seedr(derive_seed(budget.seed, 411));
    for (int k = 0; k < budget.starts; ++k) {
        Vec w = seedr.gaussian_vec(X.dim);
        if (norm2(w) < 1e-12) w[0] = 1.0;
        w = scaled(project_to_sphere(X, w), 0.5 * level);
        inits.push_back({project_to_ball(X, add(anchor, w)), project_to_ball(X, sub(anchor, w))});
    }

    for (std::size_t start = 0; start < inits.size(); ++start) {
        Rng rng(derive_seed(budget.seed, 500 + start));
        Vec u = inits[start].first, v = inits[start].second;
        if (!restore(u, v, rng)) continue;
        consider(u, v);
        double eta = 0.25;
        double cur = dot(f, midpoint(u, v));
        for (int it = 0; it < budget.iterations && eta > 1e-7; ++it) {
            Vec nu = add(u, scaled(f, eta));
            Vec nv = add(v, scaled(f, eta));
            if (!restore(nu, nv, rng)) {
                eta *= 0.5;
                continue;
            }
            double val = dot(f, midpoint(nu, nv));
            if (val > cur + 1e-14) {
                u = nu;
                v = nv;
                cur = val;
                consider(u, v);
            } else {
                eta *= 0.5;
            }
        }
        if (best.found && best.midpoint_value > want) break;
    }

    if (!best.found || !(best.midpoint_value > want)) return {};  // inconclusive
    if (!slice.contains_closed(best.u) || !slice.contains_closed(best.v)) return {};
    return best;
}

}  // namespace slicegeo
