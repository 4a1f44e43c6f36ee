#include <doctest.h>

#include <cmath>

#include "slicegeo/rng.hpp"
#include "slicegeo/stepfn.hpp"

using namespace slicegeo;

namespace {

// Seeded step function with dyadic values so every check is exact.
StepFunction random_dyadic_fn(Rng& rng, int max_coords = 2, int max_res = 4) {
    StepFunction f;
    f.coords = 1 + static_cast<int>(rng.index(max_coords));
    f.resolutions.clear();
    for (int j = 0; j < f.coords; ++j)
        f.resolutions.push_back(static_cast<int>(rng.index(max_res + 1)));
    f.values.resize(f.cell_count());
    for (auto& v : f.values)
        v = static_cast<double>(static_cast<long long>(rng.index(65)) - 32) / 8.0;
    return f;
}

}  // namespace

TEST_CASE("l1 norm of constants, scaled indicators and spikes") {
    CHECK(l1_norm(one_fn()) == 1.0);
    auto f = scale_fn(spike_fn(0.25), 0.5);  // 2 * indicator([0, 1/4])
    CHECK(l1_norm(f) == 0.5);
    CHECK(l1_norm(spike_fn(0.0625)) == 1.0);  // 16 * indicator([0, 1/16])
}

TEST_CASE("dm hand values are exact") {
    auto zero = constant_fn(0.0);
    auto f = scale_fn(spike_fn(0.25), 0.5);  // 2 on [0, 1/4]
    CHECK(dm(f, zero) == 0.25);

    for (double c : {0.3, 0.6, 0.9}) CHECK(dm(constant_fn(c), zero) == c);
    CHECK(dm(f, f) == 0.0);

    for (double s : {0.5, 0.25, 0.125, 0.0625}) CHECK(dm(spike_fn(s), zero) == s);
}

TEST_CASE("dm is a metric on seeded dyadic triples") {
    Rng rng(99);
    for (int t = 0; t < 1000; ++t) {
        auto f = random_dyadic_fn(rng);
        auto g = random_dyadic_fn(rng);
        auto h = random_dyadic_fn(rng);
        double fg = dm(f, g), gf = dm(g, f);
        CHECK(fg == gf);
        CHECK(dm(f, f) == 0.0);
        CHECK(fg <= dm(f, h) + dm(h, g) + 1e-15);
    }
}

TEST_CASE("dm calculus: subadditivity and scaling, no violations") {
    Rng rng(123);
    int total_violations = 0;
    for (int t = 0; t < 1000; ++t) {
        std::vector<StepFunction> fs = {random_dyadic_fn(rng), random_dyadic_fn(rng)};
        Vec lambdas = {rng.index(9) / 8.0, rng.index(9) / 8.0};
        auto rep = check_dm_calculus(fs, lambdas);
        total_violations += rep.violations;
        CHECK(rep.checks == 3);
    }
    CHECK(total_violations == 0);

    auto f = spike_fn(0.25);
    auto rep = check_dm_calculus({f, scale_fn(f, -1.0)}, {0.0, 1.0});
    CHECK(rep.violations == 0);
    CHECK(rep.min_subadditivity_margin >= 0.0);  // d(0,0) = 0 <= 2 d(f,0)
}

TEST_CASE("near-disjointness scan: the constant function is friendly") {
    auto rep = near_disjointness_scan({one_fn()}, 0.1, 8, 42);
    CHECK(rep.all_within_eps);
    CHECK(rep.delta > 0.0);
    for (const auto& rec : rep.log) CHECK(rec.worst_deficit <= 1e-12);
}

TEST_CASE("near-disjointness scan flags a sign-cancelling family") {
    auto rep = near_disjointness_scan({scale_fn(spike_fn(0.25), -1.0)}, 0.1, 10, 42);
    CHECK_FALSE(rep.all_within_eps);
    CHECK(rep.delta <= 0.25);  // collapses toward the probe floor
    double worst = 0.0;
    for (const auto& rec : rep.log) worst = std::max(worst, rec.worst_deficit);
    CHECK(worst >= 1.0);  // the matching-support probe cancels almost fully

    CHECK_THROWS_AS(near_disjointness_scan({}, 0.1, 4, 1), DomainError);
}

TEST_CASE("spike family: unit norm, positivity, exact distance to one") {
    for (double s : {0.5, 0.25, 0.125}) {
        auto fam = spike_family(s, 3);
        REQUIRE(fam.size() == 3);
        for (const auto& f : fam) {
            CHECK(l1_norm(f) == 1.0);
            for (double v : f.values) CHECK(v >= 0.0);
            CHECK(l1_norm(sub_fn(f, one_fn(f.coords))) == 2.0 - 2.0 * s);
        }
    }
    CHECK_THROWS_AS(spike_family(0.3, 2), DomainError);
    try {
        spike_family(0.3, 2);
    } catch (const DomainError& e) {
        CHECK(e.code() == Errc::non_dyadic_support);
    }
}

TEST_CASE("spike average deficit: worked values and path agreement") {
    CHECK(spike_average_deficit(0.5, 1).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spike_average_deficit(0.5, 2).value == doctest::Approx(0.5).epsilon(1e-14));

    for (double s : {0.5, 0.25}) {
        for (int n = 1; n <= 6; ++n) {
            auto d = spike_average_deficit(s, n);
            REQUIRE(d.grid_used);
            CHECK(std::abs(d.grid_value - d.oracle_value) <= 1e-12);
        }
    }
    auto d8 = spike_average_deficit(0.125, 6);
    REQUIRE(d8.grid_used);
    CHECK(std::abs(d8.grid_value - d8.oracle_value) <= 1e-12);

    // law of large numbers trend via the oracle
    CHECK(spike_deficit_binomial(0.25, 64) < spike_deficit_binomial(0.25, 4));

    CHECK_THROWS_AS(spike_deficit_grid(0.125, 12), DomainError);  // 2^36 cells
    auto big = spike_average_deficit(0.125, 64);                  // oracle-only mode
    CHECK_FALSE(big.grid_used);
    CHECK(big.value > 0.0);
}

TEST_CASE("grid-path deficit equals the generic step-function route") {
    for (double s : {0.5, 0.25}) {
        for (int n = 2; n <= 4; ++n) {
            auto fam = spike_family(s, n);
            StepFunction avg = scale_fn(fam[0], 1.0 / n);
            for (int j = 1; j < n; ++j) avg = add_fn(avg, scale_fn(fam[j], 1.0 / n));
            double generic = l1_norm(sub_fn(avg, one_fn(n)));
            CHECK(std::abs(generic - spike_deficit_grid(s, n)) <= 1e-13);
        }
    }
}

TEST_CASE("step function JSON round trip") {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        auto f = random_dyadic_fn(rng);
        auto g = stepfn_from_json(stepfn_to_json(f));
        CHECK(g.coords == f.coords);
        CHECK(g.resolutions == f.resolutions);
        CHECK(g.values == f.values);
    }
    CHECK_THROWS_AS(stepfn_from_json(R"({"coords":2,"resolutions":[1],"values":[0,0]})"),
                    DomainError);
}
