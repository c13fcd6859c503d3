#include <stdexcept>
#include <set>

#include "doctest.h"
#include "uavclust/experiment.hpp"
#include "uavclust/seeds.hpp"

using namespace uavclust;

TEST_CASE("run seeds") {
    const auto r0 = derive_run_seeds(42, 0, Scheme::Proposed);
    const auto r1 = derive_run_seeds(42, 1, Scheme::Proposed);
    std::set<std::uint64_t> all{r0.mobility, r0.fading, r0.scheme, r1.mobility, r1.fading, r1.scheme};
    CHECK(all.size() == 6);

    const auto rnd = derive_run_seeds(42, 0, Scheme::Random);
    CHECK(rnd.mobility == r0.mobility);
    CHECK(rnd.fading == r0.fading);
    CHECK(rnd.scheme != r0.scheme);
    CHECK(derive_run_seeds(42, 0, Scheme::Proposed) == r0);
    CHECK(derive_run_seeds(43, 0, Scheme::Proposed) != r0);
}

TEST_CASE("link seeds are symmetric and slot specific") {
    const VehicleId a{3}, b{8};
    CHECK(link_seed(5, 10, a, b) == link_seed(5, 10, b, a));
    CHECK(link_seed(5, 10, a, b) != link_seed(5, 11, a, b));
    CHECK(link_seed(5, 10, a, b) != link_seed(6, 10, a, b));
    CHECK(link_seed(5, 10, a, b) != link_seed(5, 10, a, VehicleId{9}));
}

TEST_CASE("seed plan") {
    const std::vector<Scheme> schemes{Scheme::Proposed, Scheme::Vmasc};
    const auto plan = seed_plan(7, 3, schemes);
    REQUIRE(plan.size() == 6);
    CHECK(plan[0].scheme == Scheme::Proposed);
    CHECK(plan[3].scheme == Scheme::Vmasc);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(plan[i].run_index == i);
        CHECK(plan[i].seeds.mobility == plan[i + 3].seeds.mobility);
    }
    const auto again = seed_plan(7, 3, schemes);
    for (std::size_t i = 0; i < plan.size(); ++i) CHECK(again[i].seeds == plan[i].seeds);
}
