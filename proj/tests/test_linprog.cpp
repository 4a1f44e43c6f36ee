#include <doctest.h>

#include "slicegeo/linprog.hpp"
#include "slicegeo/rng.hpp"

using namespace slicegeo;

TEST_CASE("simplex solves a textbook LP") {
    // min -x - 2y  s.t. x + y <= 4, x <= 3, y <= 2, x,y >= 0  -> (2, 2), obj -6
    Matrix A = {{1, 1}, {1, 0}, {0, 1}};
    Vec b = {4, 3, 2};
    Vec c = {-1, -2};
    auto res = solve_lp(A, b, c, {Rel::LE, Rel::LE, Rel::LE});
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.objective == doctest::Approx(-6.0).epsilon(1e-9));
    CHECK(res.x[0] == doctest::Approx(2.0));
    CHECK(res.x[1] == doctest::Approx(2.0));
}

TEST_CASE("simplex detects infeasibility and unboundedness") {
    Matrix A = {{1, 0}, {-1, 0}};
    Vec b = {1, -3};  // x <= 1 and x >= 3
    auto res = solve_lp(A, b, {1, 0}, {Rel::LE, Rel::LE});
    CHECK(res.status == LpStatus::infeasible);

    Matrix A2 = {{1, 0}};
    auto res2 = solve_lp(A2, {1}, {0, -1}, {Rel::LE});  // y free upward
    CHECK(res2.status == LpStatus::unbounded);
}

TEST_CASE("equality constraints with phase 1") {
    // min x + y s.t. x + 2y = 4, x - y = 1 -> x = 2, y = 1
    Matrix A = {{1, 2}, {1, -1}};
    auto res = solve_lp(A, {4, 1}, {1, 1}, {Rel::EQ, Rel::EQ});
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.x[0] == doctest::Approx(2.0));
    CHECK(res.x[1] == doctest::Approx(1.0));
}

TEST_CASE("lp_max_linear over a box matches the sign-vector maximum") {
    Matrix A;
    Vec b;
    for (int i = 0; i < 3; ++i) {
        Vec e(3, 0.0);
        e[i] = 1.0;
        A.push_back(e);
        b.push_back(1.0);
        e[i] = -1.0;
        A.push_back(e);
        b.push_back(1.0);
    }
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        Vec f = rng.gaussian_vec(3);
        auto res = lp_max_linear(A, b, f);
        REQUIRE(res.status == LpStatus::optimal);
        double expect = std::abs(f[0]) + std::abs(f[1]) + std::abs(f[2]);
        CHECK(res.objective == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("random LPs agree with brute force over box vertices") {
    // max f.x over the cube [-1,1]^d cut by random halfspaces through the
    // interior; brute force checks all cube vertices that stay feasible give a
    // lower bound, and the LP value dominates each of them.
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 2 + static_cast<int>(rng.index(2));
        Matrix A;
        Vec b;
        for (int i = 0; i < d; ++i) {
            Vec e(d, 0.0);
            e[i] = 1.0;
            A.push_back(e);
            b.push_back(1.0);
            e[i] = -1.0;
            A.push_back(e);
            b.push_back(1.0);
        }
        for (int k = 0; k < 2; ++k) {
            Vec a = rng.gaussian_vec(d);
            A.push_back(a);
            b.push_back(0.5 + rng.next_double());
        }
        Vec f = rng.gaussian_vec(d);
        auto res = lp_max_linear(A, b, f);
        REQUIRE(res.status == LpStatus::optimal);
        for (const auto& row : A) {
            CHECK(dot(row, res.x) <= b[&row - &A[0]] + 1e-8);
        }
        for (int mask = 0; mask < (1 << d); ++mask) {
            Vec v(d);
            for (int i = 0; i < d; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
            bool feas = true;
            for (std::size_t r = 0; r < A.size(); ++r)
                if (dot(A[r], v) > b[r] + 1e-12) feas = false;
            if (feas) CHECK(res.objective >= dot(f, v) - 1e-8);
        }
    }
}
