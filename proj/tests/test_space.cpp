#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "slicegeo/rng.hpp"
#include "slicegeo/space.hpp"

using namespace slicegeo;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

SpaceSpec square_space() {
    return polytope_v_space({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}, "square");
}

SpaceSpec lip3_space() {
    // points {0, a, b}: d(0,a) = d(0,b) = 1, d(a,b) = 1/2
    Matrix m = {{0, 1, 1}, {1, 0, 0.5}, {1, 0.5, 0}};
    return lip_space(m, 0, "lip3");
}

bool contains_point(const std::vector<Vec>& set, const Vec& v, double tol = 1e-9) {
    return std::any_of(set.begin(), set.end(),
                       [&](const Vec& u) { return linf_dist(u, v) <= tol; });
}

std::vector<SpaceSpec> test_suite() {
    return {
        lp_space(2, 2, "l2"),
        lp_space(2, kInf, "linf"),
        lp_space(2, 1, "l1"),
        lp_space(3, 3, "l3-3d"),
        square_space(),
        lip3_space(),
        sum_space(lp_space(2, kInf), lp_space(1, 2), 1, "sum1"),
        sum_space(lp_space(1, 2), lp_space(2, 1), kInf, "suminf"),
    };
}

}  // namespace

TEST_CASE("validate accepts the symmetric square and rejects broken specs") {
    CHECK(validate(square_space()).ok);

    auto bad = polytope_v_space({{1, 0}, {0, 1}});
    auto rep = validate(bad);
    CHECK_FALSE(rep.ok);
    bool symmetry_issue = false;
    for (const auto& is : rep.issues) symmetry_issue |= is.invariant == "symmetry";
    CHECK(symmetry_issue);

    Matrix m = {{0, 5, 1}, {5, 0, 1}, {1, 1, 0}};  // d(a,b)=5 > d(a,c)+d(c,b)=2
    auto lrep = validate(lip_space(m, 0));
    CHECK_FALSE(lrep.ok);
    bool triangle_issue = false;
    for (const auto& is : lrep.issues) triangle_issue |= is.invariant == "triangle-inequality";
    CHECK(triangle_issue);

    for (const auto& s : test_suite()) CHECK(validate(s).ok);
}

TEST_CASE("norm closed-form examples") {
    CHECK(norm(lp_space(2, kInf), {1, 1}) == doctest::Approx(1.0));
    CHECK(norm(lip3_space(), {1, 0}) == doctest::Approx(2.0));  // pair (a,b) quotient 1/0.5
    auto s1 = sum_space(lp_space(1, 2), lp_space(1, 2), 1);
    CHECK(norm(s1, {3, 4}) == doctest::Approx(7.0));
    CHECK_THROWS_AS(norm(lp_space(2, 2), {1, 2, 3}), DomainError);
}

TEST_CASE("polytope_v gauge matches the max-norm on the square") {
    auto sq = square_space();
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        Vec x = rng.gaussian_vec(2);
        double expect = std::max(std::abs(x[0]), std::abs(x[1]));
        CHECK(norm(sq, x) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("dual norm examples") {
    CHECK(dual_norm(lp_space(2, 1), {3, -4}) == doctest::Approx(4.0));
    CHECK(dual_norm(square_space(), {1, 1}) == doctest::Approx(2.0));
    CHECK(dual_norm(lip3_space(), {0, 0}) == doctest::Approx(0.0));
}

TEST_CASE("pairing inequality on 1000 pairs per space") {
    for (const auto& s : test_suite()) {
        Rng rng(101);
        for (int t = 0; t < 1000; ++t) {
            Vec x = rng.gaussian_vec(s.dim);
            Vec f = rng.gaussian_vec(s.dim);
            double lhs = dot(f, x);
            double rhs = dual_norm(s, f) * norm(s, x);
            CHECK(lhs <= rhs + 1e-9);
        }
    }
}

TEST_CASE("support_point attains the dual norm") {
    for (const auto& s : test_suite()) {
        Rng rng(55);
        for (int t = 0; t < 100; ++t) {
            Vec f = rng.gaussian_vec(s.dim);
            Vec x = support_point(s, f);
            CHECK(norm(s, x) <= 1.0 + 1e-9);
            CHECK(dot(f, x) == doctest::Approx(dual_norm(s, f)).epsilon(1e-8));
        }
    }
}

TEST_CASE("norm_subgradient supports the norm from below") {
    for (const auto& s : test_suite()) {
        Rng rng(77);
        for (int t = 0; t < 100; ++t) {
            Vec x = rng.gaussian_vec(s.dim);
            Vec g = norm_subgradient(s, x);
            CHECK(dot(g, x) == doctest::Approx(norm(s, x)).epsilon(1e-8));
            CHECK(dual_norm(s, g) <= 1.0 + 1e-8);
        }
    }
}

TEST_CASE("project_to_sphere examples and precision") {
    Vec a = project_to_sphere(lp_space(2, 2), {3, 4});
    CHECK(a[0] == doctest::Approx(0.6));
    CHECK(a[1] == doctest::Approx(0.8));
    Vec b = project_to_sphere(lp_space(2, kInf), {2, 1});
    CHECK(b[0] == doctest::Approx(1.0));
    CHECK(b[1] == doctest::Approx(0.5));
    CHECK_THROWS_AS(project_to_sphere(lp_space(2, 2), {0, 0}), DomainError);

    for (const auto& s : test_suite()) {
        Rng rng(5);
        for (int t = 0; t < 50; ++t) {
            Vec x = rng.gaussian_vec(s.dim);
            if (norm2(x) < 1e-9) continue;
            CHECK(std::abs(norm(s, project_to_sphere(s, x)) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("ball_vertices: cross-polytope, lip example, smooth rejection") {
    auto cross = ball_vertices(lp_space(2, 1));
    REQUIRE(cross.size() == 4);
    CHECK(contains_point(cross, {1, 0}));
    CHECK(contains_point(cross, {-1, 0}));
    CHECK(contains_point(cross, {0, 1}));
    CHECK(contains_point(cross, {0, -1}));

    // H-enumeration of {|u| <= 1, |v| <= 1, |u - v| <= 1/2}
    auto lipv = ball_vertices(lip3_space());
    REQUIRE(lipv.size() == 6);
    for (Vec v : {Vec{1, 1}, Vec{1, 0.5}, Vec{0.5, 1}}) {
        CHECK(contains_point(lipv, v, 1e-10));
        CHECK(contains_point(lipv, scaled(v, -1.0), 1e-10));
    }

    CHECK_THROWS_AS(ball_vertices(lp_space(2, 2)), DomainError);
    try {
        ball_vertices(lp_space(2, 2));
    } catch (const DomainError& e) {
        CHECK(e.code() == Errc::not_polytopal);
    }

    SolverBudget tight;
    tight.dim_budget = 2;
    CHECK_THROWS_AS(ball_vertices(lp_space(3, 1), tight), DomainError);
}

TEST_CASE("ball vertices have norm one and dominate the dual norm LP") {
    for (const auto& s : test_suite()) {
        if (!is_polytopal(s)) continue;
        auto geo = ball_geometry(s);
        for (const auto& v : geo.vertices) CHECK(std::abs(norm(s, v) - 1.0) <= 1e-10);
        Rng rng(301);
        for (int t = 0; t < 50; ++t) {
            Vec f = rng.gaussian_vec(s.dim);
            double by_vertices = 0.0;
            for (const auto& v : geo.vertices) by_vertices = std::max(by_vertices, dot(f, v));
            CHECK(by_vertices == doctest::Approx(dual_norm(s, f)).epsilon(1e-9));
        }
    }
}

TEST_CASE("facets of the geometry reproduce the norm") {
    for (const auto& s : test_suite()) {
        if (!is_polytopal(s)) continue;
        auto geo = ball_geometry(s);
        Rng rng(17);
        for (int t = 0; t < 100; ++t) {
            Vec x = rng.gaussian_vec(s.dim);
            double m = 0.0;
            for (const auto& f : geo.facets) m = std::max(m, dot(f.normal, x) / f.offset);
            CHECK(m == doctest::Approx(norm(s, x)).epsilon(1e-9));
        }
    }
}

TEST_CASE("sum norms combine exactly") {
    auto X = lp_space(2, kInf);
    auto Y = lp_space(2, 1);
    Rng rng(9);
    for (double p : {1.0, 2.0, 3.0, kInf}) {
        auto s = sum_space(X, Y, p);
        for (int t = 0; t < 100; ++t) {
            Vec x = rng.gaussian_vec(2), y = rng.gaussian_vec(2);
            double nx = norm(X, x), ny = norm(Y, y);
            double expect = std::isinf(p) ? std::max(nx, ny)
                                          : std::pow(std::pow(nx, p) + std::pow(ny, p), 1.0 / p);
            CHECK(norm(s, concat(x, y)) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("lip norm vanishes only at zero") {
    auto s = lip3_space();
    CHECK(norm(s, {0, 0}) == 0.0);
    Rng rng(23);
    for (int t = 0; t < 200; ++t) {
        Vec x = rng.gaussian_vec(2);
        if (linf_dist(x, {0, 0}) > 1e-12) CHECK(norm(s, x) > 0.0);
    }
}

TEST_CASE("sphere_sample: vertices first, deterministic, normalized") {
    auto sq = square_space();
    auto s1 = sphere_sample(sq, 7, 10);
    REQUIRE(s1.size() == 10);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(norm(sq, s1[k]) - 1.0) <= 1e-10);
    CHECK(contains_point({s1.begin(), s1.begin() + 4}, {1, 1}));
    CHECK(contains_point({s1.begin(), s1.begin() + 4}, {-1, -1}));

    auto s2 = sphere_sample(sq, 7, 10);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) CHECK(linf_dist(s1[i], s2[i]) == 0.0);

    auto s3 = sphere_sample(lp_space(3, 2), 99, 1000);
    REQUIRE(s3.size() == 1000);
    for (const auto& v : s3) CHECK(std::abs(norm(lp_space(3, 2), v) - 1.0) <= 1e-12);
}

TEST_CASE("2D facet reconstruction from vertices") {
    auto facets = facets_from_vertices_2d({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
    CHECK(facets.size() == 4);
    auto sq = square_space();
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        Vec x = rng.gaussian_vec(2);
        double m = 0.0;
        for (const auto& f : facets) m = std::max(m, dot(f.normal, x) / f.offset);
        CHECK(m == doctest::Approx(norm(sq, x)).epsilon(1e-9));
    }
}

TEST_CASE("lip dim-8 grid metric stays within the enumeration budget") {
    // 9 equally spaced points on a line; only consecutive constraints survive
    // pruning, so enumeration sees 16 facets and finds the 256 sign vertices.
    int m = 9;
    Matrix metric(m, Vec(m, 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) metric[i][j] = std::abs(i - j) / 8.0;
    auto s = lip_space(metric, 0, "lip-grid8");
    REQUIRE(validate(s).ok);
    auto geo = ball_geometry(s);
    CHECK(geo.facets.size() == 16);
    CHECK(geo.vertices.size() == 256);
    for (const auto& v : geo.vertices) CHECK(std::abs(norm(s, v) - 1.0) <= 1e-10);
}
