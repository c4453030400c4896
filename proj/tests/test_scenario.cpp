#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "rsep/reduction.hpp"
#include "rsep/scenario.hpp"

using namespace rsep;

TEST_CASE("generation is a pure function of the spec") {
    ScenarioSpec spec;
    spec.num_mvnos = 4;
    spec.num_bs = 5;
    spec.adjacency_density = 0.4;
    spec.load_fraction = 0.8;
    spec.seed = 12345;
    CHECK(generate(spec).to_json() == generate(spec).to_json());

    ScenarioSpec other = spec;
    other.seed = 12346;
    CHECK(generate(spec).to_json() != generate(other).to_json());
}

TEST_CASE("adjacency density endpoints") {
    ScenarioSpec spec;
    spec.num_bs = 6;
    spec.num_mvnos = 2;
    spec.seed = 9;

    spec.adjacency_density = 0.0;
    CHECK_FALSE(generate(spec).has_interference());

    spec.adjacency_density = 1.0;
    Instance complete = generate(spec);
    for (int b1 = 0; b1 < 6; ++b1)
        for (int b2 = 0; b2 < 6; ++b2)
            CHECK(complete.adjacent(b1, b2) == (b1 != b2 ? 1 : 0));
}

TEST_CASE("full load partitions the grid exactly, across 100 seeds") {
    ScenarioSpec spec;
    spec.num_mvnos = 3;
    spec.num_bs = 3;
    spec.load_fraction = 1.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        spec.seed = seed;
        Instance inst = generate(spec);
        for (int b = 0; b < inst.num_bs(); ++b)
            CHECK(inst.bs_load(b) == inst.grid_size());
    }
}

TEST_CASE("partial load never overloads") {
    ScenarioSpec spec;
    spec.num_mvnos = 4;
    spec.num_bs = 2;
    spec.load_fraction = 0.6;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        spec.seed = seed;
        Instance inst = generate(spec);
        CHECK(inst.overloaded_bs() == -1);
        for (int b = 0; b < inst.num_bs(); ++b)
            CHECK(inst.bs_load(b) == static_cast<int>(0.6 * inst.grid_size()));
    }
}

TEST_CASE("forcing aggregability rounds quotas to multiples of k") {
    ScenarioSpec spec;
    spec.num_mvnos = 3;
    spec.num_bs = 2;
    spec.n_rb = 6;
    spec.n_sf = 10;
    spec.force_aggregable_k = 2;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        spec.seed = seed;
        Instance inst = generate(spec);
        for (int m = 0; m < inst.num_mvnos(); ++m)
            for (int b = 0; b < inst.num_bs(); ++b)
                CHECK(inst.quota(m, b) % 2 == 0);
    }
}

TEST_CASE("spec validation rejects inconsistent settings") {
    ScenarioSpec spec;
    spec.n_rb = 3;
    spec.n_sf = 5;
    spec.n_frames = 1;
    spec.force_aggregable_k = 2; // divides neither 3 nor 5
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

    ScenarioSpec bad;
    bad.load_fraction = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.load_fraction = 1.0;
    bad.adjacency_density = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("spec JSON round trip") {
    ScenarioSpec spec;
    spec.num_mvnos = 5;
    spec.num_bs = 4;
    spec.n_rb = 2;
    spec.n_sf = 4;
    spec.adjacency_density = 0.25;
    spec.load_fraction = 0.5;
    spec.seed = 77;
    spec.force_aggregable_k = 2;
    ScenarioSpec back = ScenarioSpec::from_json(spec.to_json());
    CHECK(back.to_json() == spec.to_json());
}

TEST_CASE("fig1 fixed scenario") {
    Instance inst = fixed_scenario("fig1");
    CHECK(inst.num_mvnos() == 3);
    CHECK(inst.num_bs() == 2);
    CHECK(inst.grid_size() == 16);
    CHECK(inst.adjacent(0, 1) == 1);
    for (int b = 0; b < 2; ++b) CHECK(inst.bs_load(b) == 16);
}

TEST_CASE("appendix_shape fixed scenario is aggregable with K=2") {
    Instance inst = fixed_scenario("appendix_shape");
    CHECK(inst.num_mvnos() == 5);
    CHECK(inst.num_bs() == 4);
    CHECK(inst.num_subcarriers() == 2);
    CHECK(inst.num_slots() == 4);
    auto plan = plan_aggregation(inst);
    REQUIRE(plan.has_value());
    CHECK(plan->k == 2);
    // fully interfering
    for (int b1 = 0; b1 < 4; ++b1)
        for (int b2 = 0; b2 < 4; ++b2)
            CHECK(inst.adjacent(b1, b2) == (b1 != b2 ? 1 : 0));
    // deterministic
    CHECK(fixed_scenario("appendix_shape").to_json() == inst.to_json());
}

TEST_CASE("unknown scenario names are rejected") {
    CHECK_THROWS_AS(fixed_scenario("fig9"), std::invalid_argument);
}
