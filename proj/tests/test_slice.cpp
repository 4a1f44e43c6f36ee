#include <doctest.h>

#include <cmath>

#include "slicegeo/rng.hpp"
#include "slicegeo/slice.hpp"

using namespace slicegeo;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double chord(double depth) { return 2.0 * std::sqrt(2.0 * depth - depth * depth); }

// A random origin-symmetric 2D polytope with vertices in a radius band.
SpaceSpec random_polytope_2d(std::uint64_t seed, int points = 5) {
    Rng rng(seed);
    std::vector<Vec> vs;
    for (int k = 0; k < points; ++k) {
        double th = rng.uniform(0, 3.14159265358979323846);
        double r = rng.uniform(0.5, 1.5);
        Vec v = {r * std::cos(th), r * std::sin(th)};
        vs.push_back(v);
        vs.push_back(scaled(v, -1.0));
    }
    return polytope_v_space(std::move(vs), "rand2d");
}

}  // namespace

TEST_CASE("make_slice normalizes and validates") {
    auto s = make_slice(lp_space(2, kInf), {2, 0}, 0.1);
    CHECK(s.functional[0] == doctest::Approx(1.0));  // l1 dual norm of (2,0) is 2
    CHECK(s.functional[1] == doctest::Approx(0.0));
    CHECK(s.depth == 0.1);

    CHECK_THROWS_AS(make_slice(lp_space(2, 2), {0, 0}, 0.1), DomainError);
    CHECK_THROWS_AS(make_slice(lp_space(2, 2), {1, 0}, 3.0), DomainError);
    CHECK_THROWS_AS(make_slice(lp_space(2, 2), {1, 0}, 0.0), DomainError);

    // open versus closed membership at the exact threshold
    auto t = make_slice(lp_space(2, kInf), {1, 0}, 0.25);
    CHECK_FALSE(t.contains({0.75, 0.0}));
    CHECK(t.contains_closed({0.75, 0.0}));
    CHECK(t.contains({0.8, 0.0}));
}

TEST_CASE("slice_diameter: exact polytopal values") {
    // cube slice x1 >= 0.9 keeps the full right edge
    auto s = make_slice(lp_space(2, kInf), {1, 0}, 0.1);
    auto d = slice_diameter(s);
    CHECK(d.exact);
    CHECK(d.upper == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(s.contains_closed(d.witness_u));
    CHECK(s.contains_closed(d.witness_v));
    CHECK(norm(s.space, sub(d.witness_u, d.witness_v)) == doctest::Approx(d.lower));

    // cross-polytope slice along the (1,1) face
    auto s2 = make_slice(lp_space(2, 1), {1, 1}, 0.05);
    auto d2 = slice_diameter(s2);
    CHECK(d2.exact);
    CHECK(d2.upper == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("slice_diameter: Euclidean chord law") {
    for (double depth : {0.1, 0.5, 1.0}) {
        auto s = make_slice(lp_space(2, 2), {1, 0}, depth);
        auto d = slice_diameter(s);
        CHECK_FALSE(d.exact);
        CHECK(d.upper == doctest::Approx(chord(depth)).epsilon(1e-6));
        CHECK(s.contains_closed(d.witness_u, 1e-9));
        CHECK(s.contains_closed(d.witness_v, 1e-9));
    }
    // rotated functional, same chord by symmetry
    auto s = make_slice(lp_space(2, 2), {3, -4}, 0.5);
    CHECK(slice_diameter(s).upper == doctest::Approx(chord(0.5)).epsilon(1e-6));
}

TEST_CASE("slice diameter matches boundary brute force on random 2D polytopes") {
    Rng rng(2024);
    for (int trial = 0; trial < 6; ++trial) {
        auto space = random_polytope_2d(900 + trial);
        REQUIRE(validate(space).ok);
        Vec f = rng.gaussian_vec(2);
        if (norm2(f) < 1e-6) f = {1, 0};
        double depth = rng.uniform(0.1, 0.5);
        auto s = make_slice(space, f, depth);
        auto d = slice_diameter(s);
        REQUIRE(d.exact);

        const int grid = 10000;
        std::vector<Vec> pts;
        double h = 0.0;
        Vec prev;
        for (int k = 0; k <= grid; ++k) {
            double th = 2.0 * 3.14159265358979323846 * k / grid;
            Vec b = project_to_sphere(space, {std::cos(th), std::sin(th)});
            if (k > 0) h = std::max(h, norm(space, sub(b, prev)));
            prev = b;
            if (k < grid && dot(s.functional, b) >= s.threshold()) pts.push_back(b);
        }
        double brute = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                brute = std::max(brute, norm(space, sub(pts[i], pts[j])));
        CHECK(d.upper >= brute - 1e-9);
        CHECK(d.upper <= brute + 2.0 * h + 1e-9);
    }
}

TEST_CASE("slice_diameter on lip and sum balls uses the exact path") {
    // lip ball is the hexagon {|u| <= 1, |v| <= 1, |u - v| <= 1/2}; the slice
    // u >= 0.9 has corners (1,1), (1,1/2), (0.9,1), (0.9,0.4); widest pairs
    // like (1,1/2) vs (0.9,1) differ by 0.6 across the d(a,b) = 1/2 leg: 1.2
    Matrix m = {{0, 1, 1}, {1, 0, 0.5}, {1, 0.5, 0}};
    auto lip = lip_space(m, 0, "lip3");
    auto s = make_slice(lip, {1, 0}, 0.1);
    auto d = slice_diameter(s);
    REQUIRE(d.exact);
    CHECK(s.contains_closed(d.witness_u));
    CHECK(s.contains_closed(d.witness_v));
    double expect = 0.0;
    std::vector<Vec> corners = {{1, 0.5}, {1, 1}, {0.9, 0.4}, {0.9, 1}};
    for (auto& a : corners)
        for (auto& b : corners) expect = std::max(expect, norm(lip, sub(a, b)));
    CHECK(expect == doctest::Approx(1.2));
    CHECK(d.upper == doctest::Approx(expect).epsilon(1e-9));

    // 3D box as an inf-sum: slicing along the first axis keeps a full 2D face
    auto box3 = sum_space(lp_space(1, 2), lp_space(2, kInf), kInf, "box3");
    auto s3 = make_slice(box3, {1, 0, 0}, 0.25);
    auto d3 = slice_diameter(s3);
    REQUIRE(d3.exact);
    CHECK(d3.upper == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("slice_diameter is monotone in depth") {
    std::vector<SpaceSpec> spaces = {lp_space(2, kInf), lp_space(2, 1), lp_space(2, 2),
                                     random_polytope_2d(31)};
    for (const auto& sp : spaces) {
        double prev = 0.0;
        for (double depth : {0.1, 0.3, 0.6, 1.0, 1.5, 2.0}) {
            auto d = slice_diameter(make_slice(sp, {0.7, 0.3}, depth));
            CHECK(prev <= d.upper + 1e-9);
            prev = d.upper;
        }
    }
}

TEST_CASE("min_slice_diameter: rotation-invariant disk and square corners") {
    SolverBudget b;
    b.starts = 6;
    b.iterations = 40;
    auto disk = min_slice_diameter(lp_space(2, 2), 0.5, b);
    CHECK(disk.upper == doctest::Approx(chord(0.5)).epsilon(1e-4));
    CHECK_FALSE(disk.upper_certified);

    auto square = min_slice_diameter(lp_space(2, kInf), 0.1, b);
    CHECK(square.upper_certified);
    CHECK(square.lower_resolution_qualified);
    CHECK(square.upper == doctest::Approx(0.2).epsilon(1e-3));
    CHECK(square.lower <= square.upper + 1e-12);

    // depth 2 turns every slice into the whole ball
    auto whole = min_slice_diameter(lp_space(2, 2), 2.0, b);
    CHECK(whole.upper == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("separating_slice on the Euclidean disk") {
    SolverBudget b;
    b.resolution = 1024;
    SUBCASE("wide level separates x0 with a small slice") {
        auto r = separating_slice(lp_space(2, 2), {1, 0}, 1.9, 0.1, b);
        REQUIRE(r.separated);
        CHECK(r.certified);
        // S^{1.8} is the disk of radius sqrt(1 - 0.81)
        CHECK(r.hull_distance_lower ==
              doctest::Approx(1.0 - std::sqrt(0.19)).epsilon(2e-2));
        CHECK(dot(r.slice.functional, Vec{1, 0}) > r.slice.threshold());
        double diam = chord(r.slice.depth);
        CHECK(diam <= 1.8 + 1e-3);
        auto d = slice_diameter(r.slice, b);
        CHECK(d.upper <= 1.8 + 1e-3);
    }
    SUBCASE("thin level fails at the default margin") {
        auto r = separating_slice(lp_space(2, 2), {1, 0}, 0.2, 0.1, b);
        CHECK_FALSE(r.separated);
    }
    SUBCASE("the origin is never separated") {
        auto r = separating_slice(lp_space(2, 2), {0, 0}, 1.5, 0.1, b);
        CHECK_FALSE(r.separated);
    }
}

TEST_CASE("separating_slice witnesses verify on random polytopes") {
    SolverBudget b;
    b.resolution = 700;
    int separated_count = 0;
    for (int trial = 0; trial < 8; ++trial) {
        auto space = random_polytope_2d(4000 + trial);
        Rng rng(50 + trial);
        Vec x0 = project_to_sphere(space, rng.gaussian_vec(2));
        double alpha = rng.uniform(1.2, 2.0);
        double eps = 0.1;
        auto r = separating_slice(space, x0, alpha, eps, b);
        if (!r.separated) continue;
        ++separated_count;
        CHECK(dot(r.slice.functional, x0) > r.slice.threshold());
        auto d = slice_diameter(r.slice, b);
        REQUIRE(d.exact);
        CHECK(d.upper <= alpha - eps + 1e-6);
    }
    CHECK(separated_count > 0);  // the family must produce some separations
}

TEST_CASE("slice_spread_witness finds wide pairs where they exist") {
    SUBCASE("max-norm slice holds a full-diameter pair") {
        auto s = make_slice(lp_space(2, kInf), {1, 0}, 0.2);
        auto w = slice_spread_witness(s, 2.0, 0.01);
        REQUIRE(w.found);
        CHECK(w.separation >= 1.99 - 1e-9);
        CHECK(s.contains_closed(w.u));
        CHECK(s.contains_closed(w.v));
        // success certifies the searched slice's diameter from below
        CHECK(slice_diameter(s).upper >= 1.99 - 1e-9);
    }
    SUBCASE("Euclidean slice cannot hold a near-antipodal midpoint") {
        auto s = make_slice(lp_space(2, 2), {1, 0}, 0.2);
        auto w = slice_spread_witness(s, 2.0, 0.01);
        CHECK_FALSE(w.found);
    }
    SUBCASE("moderate spread in a Euclidean slice") {
        auto s = make_slice(lp_space(2, 2), {1, 0}, 0.5);
        auto w = slice_spread_witness(s, 1.0, 0.05);
        REQUIRE(w.found);
        CHECK(w.separation >= 0.95 - 1e-9);
        CHECK(s.contains_closed(w.u));
        CHECK(s.contains_closed(w.v));
    }
}
