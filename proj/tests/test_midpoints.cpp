#include <doctest.h>

#include <cmath>

#include "slicegeo/midpoints.hpp"
#include "slicegeo/rng.hpp"

using namespace slicegeo;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

SolverBudget quick() {
    SolverBudget b;
    b.samples = 48;
    b.starts = 8;
    b.iterations = 60;
    b.resolution = 1024;
    return b;
}
}  // namespace

TEST_CASE("combination_value arithmetic and invariant checks") {
    auto l2 = lp_space(2, 2);
    MidpointCombination c{2.0, {{1.0, {1, 0}, {-1, 0}}}};
    auto v = combination_value(l2, c);
    CHECK(v[0] == doctest::Approx(0.0));
    CHECK(v[1] == doctest::Approx(0.0));

    auto linf = lp_space(2, kInf);
    MidpointCombination c2{2.0, {{0.5, {1, 1}, {1, -1}}, {0.5, {1, 1}, {-1, 1}}}};
    auto v2 = combination_value(linf, c2);
    CHECK(v2[0] == doctest::Approx(0.5));
    CHECK(v2[1] == doctest::Approx(0.5));

    MidpointCombination bad{2.0, {{1.0, {1, 0}, {0, 0}}}};  // separation 1 < alpha 2
    CHECK_THROWS_AS(combination_value(l2, bad), DomainError);
    MidpointCombination badsum{1.0, {{0.4, {1, 0}, {-1, 0}}}};  // weights sum to 0.4
    CHECK_THROWS_AS(combination_value(l2, badsum), DomainError);
}

TEST_CASE("dist_to_midpoint_hull: Euclidean ball of midpoints") {
    // S^alpha(l2^2) is the disk of radius sqrt(1 - alpha^2/4)
    auto l2 = lp_space(2, 2);
    auto r = dist_to_midpoint_hull(l2, {1, 0}, 1, 1.0, quick());
    CHECK(r.upper == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-3));
    check_combination(l2, r.witness);

    CHECK_THROWS_AS(dist_to_midpoint_hull(l2, {2, 0}, 1, 1.0, quick()), DomainError);
}

TEST_CASE("dist_to_midpoint_hull: max-norm cross and its 2-hull") {
    auto linf = lp_space(2, kInf);
    auto r1 = dist_to_midpoint_hull(linf, {1, 1}, 1, 2.0, quick());
    CHECK(r1.upper == doctest::Approx(1.0).epsilon(1e-3));
    auto r2 = dist_to_midpoint_hull(linf, {1, 1}, 2, 2.0, quick());
    CHECK(r2.upper == doctest::Approx(0.5).epsilon(1e-3));
    Vec v = combination_value(linf, r2.witness);
    CHECK(v[0] == doctest::Approx(0.5).epsilon(2e-3));
    CHECK(v[1] == doctest::Approx(0.5).epsilon(2e-3));
}

TEST_CASE("oracle_dist_2d brackets the closed forms") {
    auto l2 = lp_space(2, 2);
    auto br = oracle_dist_2d(l2, {1, 0}, 1, 1.0, 2048);
    double truth = 1.0 - std::sqrt(3.0) / 2.0;
    CHECK(br.lower <= truth + 1e-12);
    CHECK(br.upper >= truth - 1e-12);
    CHECK(br.upper - br.lower <= 0.01);

    auto linf = lp_space(2, kInf);
    auto br2 = oracle_dist_2d(linf, {1, 1}, 2, 2.0, 512);
    CHECK(br2.lower <= 0.5);
    CHECK(br2.upper >= 0.5 - 1e-12);
    CHECK(br2.upper <= 0.5 + 1e-9);  // the grid hits the exact cross midpoints

    // alpha = 2 on the disk: only antipodal pairs qualify, midpoint set {0}
    auto br3 = oracle_dist_2d(l2, {0, 1}, 1, 2.0, 512);
    CHECK(br3.lower <= 1.0);
    CHECK(br3.upper == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(oracle_dist_2d(lp_space(3, 2), {1, 0, 0}, 1, 1.0, 512), DomainError);
    CHECK_THROWS_AS(oracle_dist_2d(l2, {1, 0}, 1, 1.0, 32), DomainError);
}

TEST_CASE("oracle hull mode covers n >= 3") {
    auto l2 = lp_space(2, 2);
    auto br = oracle_dist_2d(l2, {1, 0}, 3, 1.0, 1024);
    double truth = 1.0 - std::sqrt(3.0) / 2.0;  // S^1 is already convex
    CHECK(br.lower <= truth);
    CHECK(br.upper >= truth - 1e-9);
    CHECK(br.upper - br.lower <= 0.02);

    auto linf = lp_space(2, kInf);
    auto br2 = oracle_dist_2d(linf, {1, 1}, 3, 2.0, 1024);
    CHECK(br2.upper == doctest::Approx(0.5).epsilon(1e-6));  // hull of the cross is the l1 ball
}

TEST_CASE("cn_alpha closed forms and the tiny-alpha limit") {
    auto b = quick();
    auto l2 = lp_space(2, 2);
    auto e = cn_alpha(l2, 3, 1.0, b);
    CHECK(e.empirical_value == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-3));
    REQUIRE(e.certified_lower.has_value());
    CHECK(*e.certified_lower <= e.empirical_value + 1e-9);
    CHECK(e.seed == b.seed);
    CHECK(e.samples >= b.samples);

    auto linf = lp_space(2, kInf);
    CHECK(cn_alpha(linf, 1, 2.0, b).empirical_value == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(cn_alpha(linf, 2, 2.0, b).empirical_value == doctest::Approx(0.5).epsilon(1e-3));

    SolverBudget tiny = b;
    tiny.samples = 16;
    CHECK(cn_alpha(l2, 1, 1e-6, tiny).empirical_value <= 1e-5);
}

TEST_CASE("cn_alpha respects the antipodal upper bound") {
    SolverBudget b = quick();
    b.samples = 24;
    b.starts = 4;
    b.iterations = 30;
    for (const auto& s : {lp_space(2, 2), lp_space(2, kInf), lp_space(2, 1), lp_space(3, 3)}) {
        for (double alpha : {0.5, 1.5, 2.0}) {
            auto e = cn_alpha(s, 1, alpha, b);
            CHECK(e.empirical_value <= 1.0 + 1e-9);
            CHECK(e.empirical_value >= 0.0);
        }
    }
}

TEST_CASE("cn_alpha is monotone in n and alpha (solver tolerance)") {
    SolverBudget b = quick();
    b.samples = 32;
    auto linf = lp_space(2, kInf);
    double prev = 2.0;
    for (int n = 1; n <= 4; ++n) {
        double v = cn_alpha(linf, n, 2.0, b).empirical_value;
        CHECK(v <= prev + 1e-3);
        prev = v;
    }
    double va = cn_alpha(linf, 2, 1.0, b).empirical_value;
    double vb = cn_alpha(linf, 2, 1.6, b).empirical_value;
    double vc = cn_alpha(linf, 2, 2.0, b).empirical_value;
    CHECK(va <= vb + 1e-3);  // S^beta within S^alpha for alpha <= beta
    CHECK(vb <= vc + 1e-3);
}

TEST_CASE("polytopal 3D sum: cube values at full separation") {
    // (R (+)_inf linf^2) is the cube; at alpha = 2 its midpoint set is the
    // union of the three coordinate hyperplane sections, so the corner sits
    // at distance 1 (n = 1) and 1/3 from the three-section average (n >= 3)
    auto box3 = sum_space(lp_space(1, 2), lp_space(2, kInf), kInf, "box3");
    SolverBudget b = quick();
    b.samples = 20;
    b.starts = 6;
    auto e1 = cn_alpha(box3, 1, 2.0, b);
    CHECK(e1.empirical_value == doctest::Approx(1.0).epsilon(1e-3));
    auto e4 = cn_alpha(box3, 4, 2.0, b);
    CHECK(e4.empirical_value == doctest::Approx(1.0 / 3.0).epsilon(2e-2));
    CHECK(e4.empirical_value <= e1.empirical_value + 1e-9);
}

TEST_CASE("Caratheodory stabilization in the plane") {
    SolverBudget b = quick();
    b.samples = 32;
    auto linf = lp_space(2, kInf);
    double v3 = cn_alpha(linf, 3, 2.0, b).empirical_value;
    double v4 = cn_alpha(linf, 4, 2.0, b).empirical_value;
    CHECK(std::abs(v4 - v3) <= 2e-3);
}

TEST_CASE("solver stays consistent with the oracle") {
    SolverBudget b = quick();
    auto linf = lp_space(2, kInf);
    for (double alpha : {1.0, 2.0}) {
        for (int n : {1, 2}) {
            auto r = dist_to_midpoint_hull(linf, {1, 1}, n, alpha, b);
            auto br = oracle_dist_2d(linf, {1, 1}, n, alpha, 2048, b);
            CHECK(r.upper >= br.lower - 1e-9);
            CHECK(r.upper - br.upper <= 5e-3);
        }
    }
}

TEST_CASE("combine_lp_sum: worked example and error paths") {
    auto X = lp_space(1, 2), Y = lp_space(1, 2);
    auto S = sum_space(X, Y, 2.0);
    double r = 1.0 / std::sqrt(2.0);
    MidpointCombination c1{2.0, {{1.0, {1}, {-1}}}};
    auto out = combine_lp_sum(S, {r}, {r}, c1, c1);
    REQUIRE(out.terms.size() == 1);
    CHECK(out.terms[0].u[0] == doctest::Approx(r));
    CHECK(out.terms[0].u[1] == doctest::Approx(r));
    CHECK(out.terms[0].v[0] == doctest::Approx(-r));
    auto val = combination_value(S, out);
    CHECK(std::abs(val[0]) <= 1e-12);
    CHECK(norm(S, sub(out.terms[0].u, out.terms[0].v)) >= 2.0 - 1e-9);

    MidpointCombination other{1.0, {{1.0, {1}, {-1}}}};
    CHECK_THROWS_AS(combine_lp_sum(S, {r}, {r}, c1, other), DomainError);
    CHECK_THROWS_AS(combine_lp_sum(S, {0}, {1}, c1, c1), DomainError);

    // exact component representations give a zero combined error
    auto Xi = lp_space(2, kInf);
    auto S2 = sum_space(Xi, Xi, 2.0);
    MidpointCombination cx{2.0, {{1.0, {1, 1}, {1, -1}}}};  // value (1, 0) exactly
    Vec x = {r, 0}, y = {r, 0};
    auto out2 = combine_lp_sum(S2, x, y, cx, cx);
    Vec v2 = combination_value(S2, out2);
    CHECK(norm(S2, sub(concat(x, y), v2)) <= 1e-12);
}

TEST_CASE("combine_lp_sum randomized postconditions") {
    Rng rng(606);
    SolverBudget b = quick();
    b.starts = 6;
    b.iterations = 40;
    std::vector<SpaceSpec> comps = {lp_space(2, 2), lp_space(2, kInf)};
    int done = 0;
    for (int trial = 0; trial < 12; ++trial) {
        double p = std::vector<double>{1.0, 2.0, 3.0}[trial % 3];
        const auto& X = comps[rng.index(comps.size())];
        const auto& Y = comps[rng.index(comps.size())];
        auto S = sum_space(X, Y, p);
        Vec xy = project_to_sphere(S, rng.gaussian_vec(S.dim));
        Vec x(xy.begin(), xy.begin() + X.dim);
        Vec y(xy.begin() + X.dim, xy.end());
        if (norm(X, x) < 0.05 || norm(Y, y) < 0.05) continue;
        double alpha = std::vector<double>{0.5, 1.0, 2.0}[rng.index(3)];
        auto cx = dist_to_midpoint_hull(X, project_to_sphere(X, x), 2, alpha, b).witness;
        auto cy = dist_to_midpoint_hull(Y, project_to_sphere(Y, y), 2, alpha, b).witness;
        auto out = combine_lp_sum(S, x, y, cx, cy);  // throws if any postcondition fails
        check_combination(S, out);
        ++done;
    }
    CHECK(done >= 8);
}
