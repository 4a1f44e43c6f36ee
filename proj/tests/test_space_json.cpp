#include <doctest.h>

#include <limits>

#include "slicegeo/space.hpp"
#include "slicegeo/space_json.hpp"

using namespace slicegeo;

TEST_CASE("space JSON round-trip is identity") {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<SpaceSpec> specs = {
        lp_space(2, 2, "l2-2d"),
        lp_space(3, inf, "linf-3d"),
        polytope_v_space({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}, "square"),
        polytope_h_space(2, {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}}, "box"),
        lip_space({{0, 1, 1}, {1, 0, 0.5}, {1, 0.5, 0}}, 0, "lip3"),
        sum_space(lp_space(2, inf), lp_space(1, 2), 1, "sum-example"),
    };
    for (const auto& s : specs) {
        auto text = space_to_json(s);
        auto loaded = space_from_json(text);
        CHECK(same_spec(s, loaded));
        // load -> save -> load
        auto again = space_from_json(space_to_json(loaded));
        CHECK(same_spec(loaded, again));
    }
}

TEST_CASE("p accepts the string inf") {
    auto s = space_from_json(R"({"kind":"lp","dim":2,"p":"inf"})");
    CHECK(std::isinf(s.p));
    CHECK_THROWS_AS(space_from_json(R"({"kind":"lp","dim":2,"p":"huge"})"), DomainError);
    CHECK_THROWS_AS(space_from_json(R"({"kind":"mystery","dim":2})"), DomainError);
}
