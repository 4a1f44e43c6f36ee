#include "slicegeo/midpoints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "slicegeo/linprog.hpp"
#include "slicegeo/parallel.hpp"
#include "slicegeo/rng.hpp"

namespace slicegeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec combination_value_unchecked(const MidpointCombination& c, int dim) {
    Vec y(dim, 0.0);
    for (const auto& t : c.terms) axpy(y, 0.5 * t.weight, add(t.u, t.v));
    return y;
}

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

bool restore_pair(const SpaceSpec& X, Vec& u, Vec& v, double alpha, const SolverBudget& budget,
                  Rng& rng) {
    auto ok = [&](const Vec& a, const Vec& b) {
        return norm(X, a) <= 1.0 + budget.restore_tol && norm(X, b) <= 1.0 + budget.restore_tol &&
               norm(X, sub(a, b)) >= alpha - budget.restore_tol;
    };
    for (int round = 0; round < budget.restore_rounds; ++round) {
        if (ok(u, v)) return true;
        Vec m = midpoint(u, v);
        Vec w = scaled(sub(u, v), 0.5);
        double wn = norm(X, w);
        if (wn < 0.5 * alpha) {
            if (wn < 1e-14) {
                Vec dir = rng.gaussian_vec(X.dim);
                if (norm2(dir) < 1e-12) dir[0] = 1.0;
                w = scaled(project_to_sphere(X, dir), 0.5 * alpha);
            } else {
                w = scaled(w, 0.5 * alpha / wn);
            }
        }
        u = project_to_ball(X, add(m, w));
        v = project_to_ball(X, sub(m, w));
    }
    if (ok(u, v)) return true;
    // centered fallback: rescale the half-difference through the origin
    Vec w = sub(u, v);
    if (is_zero(w, 1e-14)) {
        w = rng.gaussian_vec(X.dim);
        if (norm2(w) < 1e-12) w[0] = 1.0;
    }
    Vec wh = project_to_sphere(X, w);
    u = wh;
    v = scaled(wh, -1.0);
    return ok(u, v);
}

// Exact weight subproblem on polytopal norms:
//   min t  s.t.  sum_i l_i <a_j, m_i> + b_j t >= <a_j, x>,  sum_i l_i = 1.
bool solve_weights_lp(const std::vector<Facet>& facets, const std::vector<Vec>& mids, const Vec& x,
                      Vec& weights, double& value) {
    int n = static_cast<int>(mids.size());
    Matrix A;
    Vec b;
    std::vector<Rel> rel;
    for (const auto& fc : facets) {
        Vec row(n + 1);
        for (int i = 0; i < n; ++i) row[i] = dot(fc.normal, mids[i]);
        row[n] = fc.offset;
        A.push_back(std::move(row));
        b.push_back(dot(fc.normal, x));
        rel.push_back(Rel::GE);
    }
    Vec simplex_row(n + 1, 1.0);
    simplex_row[n] = 0.0;
    A.push_back(simplex_row);
    b.push_back(1.0);
    rel.push_back(Rel::EQ);
    Vec c(n + 1, 0.0);
    c[n] = 1.0;
    auto res = solve_lp(A, b, c, rel);
    if (res.status != LpStatus::optimal) return false;
    weights.assign(res.x.begin(), res.x.begin() + n);
    value = res.x[n];
    return true;
}

// Conditional gradient on the simplex for smooth norms, with the standard
// duality-gap stop.
void solve_weights_fw(const SpaceSpec& spec, const std::vector<Vec>& mids, const Vec& x,
                      Vec& weights, const SolverBudget& budget) {
    int n = static_cast<int>(mids.size());
    if (static_cast<int>(weights.size()) != n) weights.assign(n, 1.0 / n);
    auto value_at = [&](const Vec& l) {
        Vec y = x;
        for (int i = 0; i < n; ++i) axpy(y, -l[i], mids[i]);
        return y;
    };
    for (int it = 0; it < 400; ++it) {
        Vec r = value_at(weights);
        double rn = norm(spec, r);
        if (rn < 1e-13) return;
        Vec g = norm_subgradient(spec, r);
        // d phi / d l_i = -<g, m_i>
        int best = 0;
        double bestg = std::numeric_limits<double>::infinity();
        double glam = 0.0;
        for (int i = 0; i < n; ++i) {
            double gi = -dot(g, mids[i]);
            if (gi < bestg) {
                bestg = gi;
                best = i;
            }
            glam += gi * weights[i];
        }
        if (glam - bestg <= budget.fw_gap_tol) return;
        // exact-ish line search toward the best vertex
        Vec dir(n, 0.0);
        for (int i = 0; i < n; ++i) dir[i] = (i == best ? 1.0 : 0.0) - weights[i];
        double lo = 0.0, hi = 1.0;
        const double gr = 0.6180339887498949;
        auto phi = [&](double t) {
            Vec l = weights;
            axpy(l, t, dir);
            return norm(spec, value_at(l));
        };
        double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
        double fa = phi(a), fb = phi(b);
        for (int ls = 0; ls < 40; ++ls) {
            if (fa > fb) {
                lo = a;
                a = b;
                fa = fb;
                b = lo + gr * (hi - lo);
                fb = phi(b);
            } else {
                hi = b;
                b = a;
                fb = fa;
                a = hi - gr * (hi - lo);
                fa = phi(a);
            }
        }
        double t = 0.5 * (lo + hi);
        if (phi(t) >= rn - 1e-15) return;
        axpy(weights, t, dir);
        for (auto& w : weights) w = std::max(0.0, w);
        double s = 0.0;
        for (double w : weights) s += w;
        if (s > 0) for (auto& w : weights) w /= s;
    }
}

struct Candidate {
    MidpointCombination comb;
    double value = std::numeric_limits<double>::infinity();
};

}  // namespace

void check_combination(const SpaceSpec& spec, const MidpointCombination& c) {
    if (c.terms.empty()) fail(Errc::invariant_violation, "combination has no terms");
    if (!(c.alpha > 0.0) || c.alpha > 2.0)
        fail(Errc::invariant_violation, "alpha must lie in (0, 2]");
    double sum = 0.0;
    for (const auto& t : c.terms) {
        if (t.weight < -1e-12 || t.weight > 1.0 + 1e-12)
            fail(Errc::invariant_violation, "weight outside [0, 1]");
        sum += t.weight;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        fail(Errc::invariant_violation, "weights do not sum to 1 within 1e-12");
    for (const auto& t : c.terms) {
        if (norm(spec, t.u) > 1.0 + 1e-9 || norm(spec, t.v) > 1.0 + 1e-9)
            fail(Errc::invariant_violation, "pair endpoint outside the unit ball");
        if (norm(spec, sub(t.u, t.v)) < c.alpha - 1e-9)
            fail(Errc::invariant_violation, "pair separation below alpha");
    }
}

Vec combination_value(const SpaceSpec& spec, const MidpointCombination& c) {
    check_combination(spec, c);
    return combination_value_unchecked(c, spec.dim);
}

DistResult dist_to_midpoint_hull(const SpaceSpec& spec, const Vec& x, int n, double alpha,
                                 const SolverBudget& budget, const BallGeometry* geo) {
    if (n < 1) fail(Errc::invalid_point, "n must be >= 1");
    if (!(alpha > 0.0) || alpha > 2.0) fail(Errc::invalid_point, "alpha must lie in (0, 2]");
    if (norm(spec, x) > 1.0 + 1e-9) fail(Errc::invalid_point, "x must lie in the unit ball");

    BallGeometry local;
    if (!geo && is_polytopal(spec) && spec.dim <= budget.dim_budget) {
        local = ball_geometry(spec, budget);
        geo = &local;
    }
    const bool poly = geo != nullptr;

    // ---- candidate pair pool ------------------------------------------------
    std::vector<std::pair<Vec, Vec>> pool;
    Rng rng(derive_seed(budget.seed, 101));
    Vec xhat = is_zero(x, 1e-14) ? support_point(spec, rng.gaussian_vec(spec.dim))
                                 : project_to_sphere(spec, x);
    pool.push_back({xhat, scaled(xhat, -1.0)});  // antipodal pair through 0
    if (poly) {
        std::vector<std::pair<double, std::pair<Vec, Vec>>> ranked;
        const auto& vs = geo->vertices;
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                if (norm(spec, sub(vs[i], vs[j])) >= alpha - 1e-12)
                    ranked.push_back(
                        {norm(spec, sub(x, midpoint(vs[i], vs[j]))), {vs[i], vs[j]}});
        std::sort(ranked.begin(), ranked.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::size_t keep = std::min<std::size_t>(ranked.size(), 96);
        for (std::size_t k = 0; k < keep; ++k) pool.push_back(ranked[k].second);

        // Vertex-to-segment pairs: v slides along a chord between ball
        // vertices until |u - v| = alpha. These hit midpoint-set extreme
        // points that vertex pairs alone miss (separation exactly alpha).
        // Partners are chosen by Euclidean proximity to the anchor so that
        // polytope-edge chords are covered even when the space norm ties.
        std::vector<std::size_t> near_idx(vs.size());
        for (std::size_t i = 0; i < near_idx.size(); ++i) near_idx[i] = i;
        std::sort(near_idx.begin(), near_idx.end(), [&](std::size_t a, std::size_t b) {
            return norm(spec, sub(x, vs[a])) < norm(spec, sub(x, vs[b]));
        });
        std::size_t added = 0;
        std::size_t na = std::min<std::size_t>(near_idx.size(), 6);
        auto probe_segment = [&](const Vec& u, const Vec& a, const Vec& b) {
            auto gap = [&](double t) {
                return norm(spec, sub(u, add(scaled(a, 1.0 - t), scaled(b, t)))) - alpha;
            };
            const int grid = 8;
            double prevval = gap(0.0);
            if (std::abs(prevval) <= 1e-12) {
                pool.push_back({u, a});
                ++added;
            }
            for (int g = 1; g <= grid; ++g) {
                double t = static_cast<double>(g) / grid;
                double val = gap(t);
                if (std::abs(val) <= 1e-12) {
                    pool.push_back({u, add(scaled(a, 1.0 - t), scaled(b, t))});
                    ++added;
                } else if ((prevval < 0) != (val < 0)) {
                    double lo = static_cast<double>(g - 1) / grid, hi = t;
                    bool lo_neg = prevval < 0;
                    for (int it = 0; it < 50; ++it) {
                        double mid = 0.5 * (lo + hi);
                        if ((gap(mid) < 0) == lo_neg)
                            lo = mid;
                        else
                            hi = mid;
                    }
                    double tcross = lo_neg ? hi : lo;  // keep the side with gap >= 0
                    pool.push_back({u, add(scaled(a, 1.0 - tcross), scaled(b, tcross))});
                    ++added;
                }
                prevval = val;
            }
        };
        // Tight-facet sets identify polytope edges: u, v span an edge when
        // their common active normals have rank dim - 1.
        std::vector<std::vector<std::size_t>> tight(vs.size());
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t fi = 0; fi < geo->facets.size(); ++fi)
                if (std::abs(dot(geo->facets[fi].normal, vs[i]) - geo->facets[fi].offset) <= 1e-8)
                    tight[i].push_back(fi);
        auto common_rank = [&](std::size_t a, std::size_t b) {
            Matrix rows;
            std::size_t pa = 0, pb = 0;
            while (pa < tight[a].size() && pb < tight[b].size()) {
                if (tight[a][pa] == tight[b][pb]) {
                    rows.push_back(geo->facets[tight[a][pa]].normal);
                    ++pa;
                    ++pb;
                } else if (tight[a][pa] < tight[b][pb]) {
                    ++pa;
                } else {
                    ++pb;
                }
            }
            if (static_cast<int>(rows.size()) < spec.dim - 1) return -1;
            int r = 0;
            std::size_t d = rows[0].size();
            for (std::size_t col = 0; col < d && r < static_cast<int>(rows.size()); ++col) {
                std::size_t piv = r;
                for (std::size_t i = r; i < rows.size(); ++i)
                    if (std::abs(rows[i][col]) > std::abs(rows[piv][col])) piv = i;
                if (std::abs(rows[piv][col]) <= 1e-9) continue;
                std::swap(rows[r], rows[piv]);
                for (std::size_t i = r + 1; i < rows.size(); ++i) {
                    double f = rows[i][col] / rows[r][col];
                    for (std::size_t j = col; j < d; ++j) rows[i][j] -= f * rows[r][j];
                }
                ++r;
            }
            return r;
        };
        for (std::size_t ai = 0; ai < na && added < 500; ++ai) {
            std::size_t ui = near_idx[ai];
            const Vec& u = vs[ui];
            std::vector<std::size_t> edge_partners;
            for (std::size_t vi = 0; vi < vs.size(); ++vi)
                if (vi != ui && common_rank(ui, vi) == spec.dim - 1) edge_partners.push_back(vi);
            for (std::size_t vi : edge_partners) probe_segment(u, u, vs[vi]);
            // chords between the anchor's edge neighbours
            std::size_t nc = std::min<std::size_t>(edge_partners.size(), 7);
            for (std::size_t bi = 0; bi < nc; ++bi)
                for (std::size_t ci = bi + 1; ci < nc; ++ci)
                    probe_segment(u, vs[edge_partners[bi]], vs[edge_partners[ci]]);
        }
    }
    // straddle pairs centered near x
    for (int k = 0; k < std::max(8, budget.starts); ++k) {
        Vec w = rng.gaussian_vec(spec.dim);
        if (norm2(w) < 1e-12) w[0] = 1.0;
        w = scaled(project_to_sphere(spec, w), 0.5 * alpha);
        Vec u = project_to_ball(spec, add(x, w));
        Vec v = project_to_ball(spec, sub(x, w));
        if (restore_pair(spec, u, v, alpha, budget, rng)) pool.push_back({u, v});
    }

    std::vector<Vec> pool_mids;
    pool_mids.reserve(pool.size());
    for (const auto& pr : pool) pool_mids.push_back(midpoint(pr.first, pr.second));
    // rank by distance to x; break ties toward extremal midpoints, which make
    // better convex building blocks near the sphere
    std::vector<double> pool_dist(pool.size()), pool_mag(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        pool_dist[i] = norm(spec, sub(x, pool_mids[i]));
        pool_mag[i] = norm(spec, pool_mids[i]);
    }
    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (std::abs(pool_dist[a] - pool_dist[b]) > 1e-9) return pool_dist[a] < pool_dist[b];
        return pool_mag[a] > pool_mag[b];
    });

    // ---- starting subsets ---------------------------------------------------
    std::vector<std::vector<std::size_t>> starts;
    auto top_subset = [&](double distinct_tol) {
        std::vector<std::size_t> sel;
        for (std::size_t idx : order) {
            bool distinct = true;
            for (std::size_t s : sel)
                if (linf_dist(pool_mids[idx], pool_mids[s]) < distinct_tol) distinct = false;
            if (distinct) sel.push_back(idx);
            if (static_cast<int>(sel.size()) == n) break;
        }
        while (!sel.empty() && static_cast<int>(sel.size()) < n) sel.push_back(sel[0]);
        return sel;
    };
    starts.push_back(top_subset(0.0));
    starts.push_back(top_subset(0.1));
    starts.push_back(top_subset(0.4));
    Rng pick(derive_seed(budget.seed, 202));
    for (int k = 0; k < budget.starts; ++k) {
        std::vector<std::size_t> sel;
        for (int i = 0; i < n; ++i) sel.push_back(order[pick.index(std::min<std::size_t>(
            order.size(), std::max<std::size_t>(4, order.size() / 2)))]);
        starts.push_back(std::move(sel));
    }

    // ---- per-start optimization --------------------------------------------
    std::vector<Candidate> results(starts.size());
    parallel_for(starts.size(), budget.threads, [&](std::size_t si) {
        Rng srng(derive_seed(budget.seed, 303 + si));
        MidpointCombination comb;
        comb.alpha = alpha;
        for (std::size_t idx : starts[si])
            comb.terms.push_back({1.0 / starts[si].size(), pool[idx].first, pool[idx].second});

        auto mids_of = [&]() {
            std::vector<Vec> m;
            for (const auto& t : comb.terms) m.push_back(midpoint(t.u, t.v));
            return m;
        };
        auto resolve_weights = [&]() {
            auto mids = mids_of();
            Vec w;
            double val = 0.0;
            if (poly && solve_weights_lp(geo->facets, mids, x, w, val)) {
                for (std::size_t i = 0; i < comb.terms.size(); ++i) comb.terms[i].weight = w[i];
            } else {
                Vec l(comb.terms.size());
                for (std::size_t i = 0; i < l.size(); ++i) l[i] = comb.terms[i].weight;
                solve_weights_fw(spec, mids, x, l, budget);
                for (std::size_t i = 0; i < l.size(); ++i) comb.terms[i].weight = l[i];
            }
            // clean tiny negatives from the LP and renormalize
            double s = 0.0;
            for (auto& t : comb.terms) {
                t.weight = std::max(0.0, t.weight);
                s += t.weight;
            }
            if (s <= 0.0) {
                for (auto& t : comb.terms) t.weight = 1.0 / comb.terms.size();
            } else {
                for (auto& t : comb.terms) t.weight /= s;
            }
        };
        auto objective = [&]() {
            return norm(spec, sub(x, combination_value_unchecked(comb, spec.dim)));
        };

        resolve_weights();
        double cur = objective();

        // Greedy one-for-one exchange against a candidate list that mixes the
        // nearest pool pairs with geometrically spread ones; the weight
        // subproblem is re-solved exactly for each trial.
        auto run_exchange = [&]() {
            if (!poly || pool.size() <= 1) return;
            std::vector<std::size_t> exch(order.begin(),
                                          order.begin() + std::min<std::size_t>(order.size(), 8));
            while (exch.size() < std::min<std::size_t>(order.size(), 24)) {
                std::size_t pickidx = exch[0];
                double best_minsep = -1.0;
                for (std::size_t idx : order) {
                    double minsep = std::numeric_limits<double>::infinity();
                    for (std::size_t s : exch)
                        minsep = std::min(minsep, linf_dist(pool_mids[idx], pool_mids[s]));
                    if (minsep > best_minsep) {
                        best_minsep = minsep;
                        pickidx = idx;
                    }
                }
                if (best_minsep <= 1e-12) break;
                exch.push_back(pickidx);
            }
            for (std::size_t slot = 0; slot < comb.terms.size(); ++slot) {
                for (std::size_t c : exch) {
                    MidpointCombination trial = comb;
                    trial.terms[slot].u = pool[c].first;
                    trial.terms[slot].v = pool[c].second;
                    std::vector<Vec> mids;
                    for (const auto& t : trial.terms) mids.push_back(midpoint(t.u, t.v));
                    Vec w;
                    double val = 0.0;
                    if (!solve_weights_lp(geo->facets, mids, x, w, val)) continue;
                    if (val < cur - 1e-12) {
                        for (std::size_t i = 0; i < trial.terms.size(); ++i)
                            trial.terms[i].weight = std::max(0.0, w[i]);
                        double sw = 0.0;
                        for (auto& t : trial.terms) sw += t.weight;
                        for (auto& t : trial.terms) t.weight /= sw;
                        comb = trial;
                        cur = val;
                    }
                }
            }
            cur = objective();
        };
        run_exchange();

        int rounds = 6;
        int steps = std::max(8, budget.iterations / rounds);
        for (int round = 0; round < rounds; ++round) {
            // pairs: projected descent with restoration; tries the norm
            // subgradient and the raw residual as step directions
            double eta = 0.5;
            for (int it = 0; it < steps && eta > 1e-9; ++it) {
                Vec r = sub(x, combination_value_unchecked(comb, spec.dim));
                if (norm(spec, r) < 1e-13) break;
                bool improved = false;
                Vec dirs[2] = {norm_subgradient(spec, r), scaled(r, 1.0 / std::max(norm2(r), 1e-15))};
                for (const Vec& g : dirs) {
                    MidpointCombination trial = comb;
                    bool ok = true;
                    for (auto& t : trial.terms) {
                        if (t.weight < 1e-12) continue;
                        t.u = add(t.u, scaled(g, eta));
                        t.v = add(t.v, scaled(g, eta));
                        if (!restore_pair(spec, t.u, t.v, alpha, budget, srng)) ok = false;
                    }
                    double val = ok
                                     ? norm(spec, sub(x, combination_value_unchecked(trial, spec.dim)))
                                     : std::numeric_limits<double>::infinity();
                    if (val < cur - 1e-14) {
                        comb = trial;
                        cur = val;
                        improved = true;
                        break;
                    }
                }
                if (!improved) eta *= 0.5;
            }
            resolve_weights();
            double after = objective();
            if (after > cur + 1e-14) break;  // LP failure guard; keep the better state
            if (cur - after < 1e-12 && round > 1) {
                cur = after;
                break;
            }
            cur = after;
        }
        run_exchange();
        // validate, repair weight drift, record
        double s = 0.0;
        for (auto& t : comb.terms) s += t.weight;
        if (std::abs(s - 1.0) > 1e-13 && s > 0)
            for (auto& t : comb.terms) t.weight /= s;
        try {
            check_combination(spec, comb);
        } catch (const DomainError&) {
            return;  // leave candidate invalid
        }
        results[si].comb = comb;
        results[si].value = objective();
    });

    DistResult best;
    best.upper = std::numeric_limits<double>::infinity();
    for (const auto& cand : results) {
        if (cand.comb.terms.empty()) continue;
        if (cand.value < best.upper) {
            best.upper = cand.value;
            best.witness = cand.comb;
        }
    }
    if (best.witness.terms.empty())
        fail(Errc::solver_failure, "no feasible midpoint combination found");
    return best;
}

OracleBracket oracle_dist_2d(const SpaceSpec& spec, const Vec& x, int n, double alpha,
                             int resolution, const SolverBudget& budget) {
    if (spec.dim != 2) fail(Errc::unsupported_space, "oracle requires a 2D space");
    if (!(spec.kind == SpaceKind::lp || is_polytopal(spec)))
        fail(Errc::unsupported_space, "oracle requires a polytopal or lp space");
    if (resolution < 64) fail(Errc::resolution_too_low, "resolution must be >= 64");
    if (n < 1) fail(Errc::invalid_point, "n must be >= 1");
    if (!(alpha > 0.0) || alpha > 2.0) fail(Errc::invalid_point, "alpha must lie in (0, 2]");

    auto bnd = boundary_grid_2d(spec, resolution);
    double h = 0.0;
    for (std::size_t k = 0; k < bnd.size(); ++k)
        h = std::max(h, norm(spec, sub(bnd[(k + 1) % bnd.size()], bnd[k])));

    OracleBracket out;
    out.resolution = resolution;
    const std::size_t nb = bnd.size();

    if (n == 1) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = i + 1; j < nb; ++j) {
                if (norm(spec, sub(bnd[i], bnd[j])) < alpha - 1e-12) continue;
                best = std::min(best, norm(spec, sub(x, midpoint(bnd[i], bnd[j]))));
            }
        out.upper = best;
        out.slack = h;
        out.lower = std::max(0.0, best - out.slack);
        return out;
    }

    // midpoints as flat coordinate pairs, deduplicated on a grid whose cell
    // size is folded into the slack term
    using P2 = std::pair<double, double>;
    auto build_mids = [&](double c) {
        std::vector<P2> m;
        std::unordered_set<long long> seen;
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = i + 1; j < nb; ++j) {
                if (norm(spec, sub(bnd[i], bnd[j])) < alpha - 1e-12) continue;
                double mx = 0.5 * (bnd[i][0] + bnd[j][0]);
                double my = 0.5 * (bnd[i][1] + bnd[j][1]);
                long long kx = static_cast<long long>(std::floor(mx / c)) + (1LL << 20);
                long long ky = static_cast<long long>(std::floor(my / c)) + (1LL << 20);
                long long key = (kx << 21) ^ ky;
                if (seen.insert(key).second) m.push_back({mx, my});
            }
        return m;
    };
    if (n == 2) {
        double cell = h / 4.0;
        auto mids = build_mids(cell);
        while (mids.size() > 1400) {
            cell *= 2.0;
            mids = build_mids(cell);
        }
        int W = std::max(8, budget.weight_grid);
        double best = std::numeric_limits<double>::infinity();
        std::size_t M = mids.size();
        Vec y(2);
        for (std::size_t a = 0; a < M; ++a)
            for (std::size_t b = a; b < M; ++b)
                for (int w = 0; w <= W; ++w) {
                    double lam = static_cast<double>(w) / W;
                    y[0] = x[0] - (lam * mids[a].first + (1.0 - lam) * mids[b].first);
                    y[1] = x[1] - (lam * mids[a].second + (1.0 - lam) * mids[b].second);
                    best = std::min(best, norm(spec, y));
                }
        out.upper = best;
        out.slack = h + std::sqrt(2.0) * cell + 1.0 / W;
        out.lower = std::max(0.0, best - out.slack);
        return out;
    }

    // n >= 3: conv_n saturates at the full hull in the plane.
    double cell = h / 8.0;
    auto flat = build_mids(cell);
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    std::vector<Vec> hull;
    if (flat.size() <= 2) {
        for (const auto& p : flat) hull.push_back({p.first, p.second});
    } else {
        auto cross = [](const P2& o, const P2& a, const P2& b) {
            return (a.first - o.first) * (b.second - o.second) -
                   (a.second - o.second) * (b.first - o.first);
        };
        std::vector<P2> ch;
        std::size_t start = 1;
        for (const auto& p : flat) {
            while (ch.size() >= start + 1 && cross(ch[ch.size() - 2], ch.back(), p) <= 0)
                ch.pop_back();
            ch.push_back(p);
        }
        ch.pop_back();
        start = ch.size() + 1;
        for (auto it = flat.rbegin(); it != flat.rend(); ++it) {
            while (ch.size() >= start + 1 && cross(ch[ch.size() - 2], ch.back(), *it) <= 0)
                ch.pop_back();
            ch.push_back(*it);
        }
        ch.pop_back();
        if (ch.empty()) ch = flat;
        for (const auto& p : ch) hull.push_back({p.first, p.second});
    }
    double best = std::numeric_limits<double>::infinity();
    if (is_polytopal(spec)) {
        auto geo = ball_geometry(spec, budget);
        Vec w;
        double val = 0.0;
        if (solve_weights_lp(geo.facets, hull, x, w, val)) best = val;
    }
    if (!std::isfinite(best)) {
        // distance to each hull edge by golden section (convex along the edge)
        const double gr = 0.6180339887498949;
        for (std::size_t e = 0; e < hull.size(); ++e) {
            const Vec& a = hull[e];
            const Vec& b = hull[(e + 1) % hull.size()];
            auto phi = [&](double t) {
                return norm(spec, sub(x, add(scaled(a, 1.0 - t), scaled(b, t))));
            };
            double lo = 0.0, hi = 1.0;
            double ta = hi - gr * (hi - lo), tb = lo + gr * (hi - lo);
            double fa = phi(ta), fb = phi(tb);
            for (int it = 0; it < 60; ++it) {
                if (fa > fb) {
                    lo = ta;
                    ta = tb;
                    fa = fb;
                    tb = lo + gr * (hi - lo);
                    fb = phi(tb);
                } else {
                    hi = tb;
                    tb = ta;
                    fb = fa;
                    ta = hi - gr * (hi - lo);
                    fa = phi(ta);
                }
            }
            best = std::min(best, std::min({phi(0.0), phi(1.0), phi(0.5 * (lo + hi))}));
        }
        if (hull.size() == 1) best = norm(spec, sub(x, hull[0]));
    }
    out.upper = best;
    out.slack = h + std::sqrt(2.0) * cell;
    out.lower = std::max(0.0, best - out.slack);
    return out;
}

CnAlphaEstimate cn_alpha(const SpaceSpec& spec, int n, double alpha, const SolverBudget& budget) {
    if (n < 1) fail(Errc::invalid_point, "n must be >= 1");
    if (!(alpha > 0.0) || alpha > 2.0) fail(Errc::invalid_point, "alpha must lie in (0, 2]");

    BallGeometry geo;
    const BallGeometry* geop = nullptr;
    if (is_polytopal(spec) && spec.dim <= budget.dim_budget) {
        geo = ball_geometry(spec, budget);
        geop = &geo;
    }
    auto samples = sphere_sample(spec, budget.seed, budget.samples, budget);

    std::vector<DistResult> per(samples.size());
    parallel_for(samples.size(), budget.threads, [&](std::size_t i) {
        SolverBudget b = budget.with_seed(derive_seed(budget.seed, 1000 + i));
        per[i] = dist_to_midpoint_hull(spec, samples[i], n, alpha, b, geop);
    });

    CnAlphaEstimate est;
    est.space_id = spec.id();
    est.n = n;
    est.alpha = alpha;
    est.samples = static_cast<int>(samples.size());
    est.starts = budget.starts;
    est.iterations = budget.iterations;
    est.seed = budget.seed;
    est.empirical_value = -1.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (per[i].upper > est.empirical_value) {
            est.empirical_value = per[i].upper;
            est.witness_point = samples[i];
            est.witness_combination = per[i].witness;
        }
    }
    if (spec.dim == 2 && (spec.kind == SpaceKind::lp || is_polytopal(spec))) {
        est.certified_lower =
            oracle_dist_2d(spec, est.witness_point, n, alpha, budget.resolution, budget).lower;
    }
    return est;
}

MidpointCombination combine_lp_sum(const SpaceSpec& sum_spec, const Vec& x, const Vec& y,
                                   const MidpointCombination& combX,
                                   const MidpointCombination& combY) {
    if (sum_spec.kind != SpaceKind::sum || std::isinf(sum_spec.p))
        fail(Errc::unsupported_space, "combine_lp_sum needs a sum space with p < inf");
    const SpaceSpec& X = *sum_spec.left;
    const SpaceSpec& Y = *sum_spec.right;
    if (static_cast<int>(x.size()) != X.dim || static_cast<int>(y.size()) != Y.dim)
        fail(Errc::dimension_mismatch, "component sizes do not match the sum spec");
    if (std::abs(combX.alpha - combY.alpha) > 1e-12)
        fail(Errc::level_mismatch, "combinations are at different alpha levels");
    double nx = norm(X, x), ny = norm(Y, y);
    if (nx < 1e-12 || ny < 1e-12)
        fail(Errc::degenerate_component, "both components must be nonzero; perturb and retry");
    if (std::abs(norm(sum_spec, concat(x, y)) - 1.0) > 1e-9)
        fail(Errc::invalid_point, "(x, y) must lie on the unit sphere of the sum");
    check_combination(X, combX);
    check_combination(Y, combY);

    const double p = sum_spec.p;
    MidpointCombination out;
    out.alpha = combX.alpha;
    for (const auto& tx : combX.terms)
        for (const auto& ty : combY.terms)
            out.terms.push_back({tx.weight * ty.weight,
                                 concat(scaled(tx.u, nx), scaled(ty.u, ny)),
                                 concat(scaled(tx.v, nx), scaled(ty.v, ny))});

    // Postconditions, checked against actual norm evaluations.
    check_combination(sum_spec, out);
    Vec xu = scaled(x, 1.0 / nx), yu = scaled(y, 1.0 / ny);
    double errX = norm(X, sub(xu, combination_value_unchecked(combX, X.dim)));
    double errY = norm(Y, sub(yu, combination_value_unchecked(combY, Y.dim)));
    double err = norm(sum_spec, sub(concat(x, y), combination_value_unchecked(out, sum_spec.dim)));
    double bound = std::pow(std::pow(errX, p) + std::pow(errY, p), 1.0 / p);
    if (err > bound + 1e-9)
        fail(Errc::invariant_violation, "combined error exceeds the p-mean bound");
    return out;
}

}  // namespace slicegeo
