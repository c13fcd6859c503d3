#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "uavclust/experiment.hpp"
#include "uavclust/trace_io.hpp"

using namespace uavclust;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const char* name) {
    auto p = fs::temp_directory_path() / (std::string("uavclust_test_") + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("run_batch is independent of the worker count") {
    SimConfig cfg;
    cfg.duration = 210;
    const std::vector<Scheme> schemes{Scheme::Proposed, Scheme::Random};
    const auto plan = seed_plan(4, 6, schemes);
    const auto one = run_batch(cfg, plan, 1);
    const auto many = run_batch(cfg, plan, 8);
    REQUIRE(one.size() == plan.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(format_trace(one[i]) == format_trace(many[i]));
}

TEST_CASE("check rejects bad specs") {
    ExperimentSpec spec;
    spec.out = "x";
    spec.runs = 0;
    CHECK_THROWS_AS(check(spec), ConfigError);
    spec.runs = 1;
    spec.schemes = {Scheme::Proposed, Scheme::Proposed};
    CHECK_THROWS_AS(check(spec), ConfigError);
    spec.schemes = {Scheme::Proposed};
    spec.sweep = SweepVar::Vehicles;
    spec.values = {5, 4};
    CHECK_THROWS_AS(check(spec), ConfigError);
    spec.values = {2.5};
    CHECK_THROWS_AS(check(spec), ConfigError);
    spec.values = {5, 10};
    CHECK_NOTHROW(check(spec));
    spec.out.clear();
    CHECK_THROWS_AS(check(spec), ConfigError);
}

TEST_CASE("execute writes the output layout and reaggregate reproduces it") {
    const auto out = scratch("compare");
    ExperimentSpec spec;
    spec.base.duration = 140;
    spec.runs = 3;
    spec.seed = 42;
    spec.workers = 2;
    spec.out = out;
    const auto points = execute(spec);
    REQUIRE(points.size() == 1);
    CHECK_FALSE(points[0].value.has_value());
    CHECK(points[0].aggregate.schemes.size() == 3);
    CHECK(fs::exists(out / "config.echo"));
    for (const auto* s : {"proposed", "vmasc", "random"}) {
        CHECK(fs::exists(out / (std::string("aggregate.") + s + ".json")));
        for (int r = 0; r < 3; ++r) CHECK(fs::exists(out / "traces" / (std::string(s) + "-000" + std::to_string(r) + ".trace")));
    }
    for (const auto* p : {"reselections_per_cluster", "reselections_vs_time", "snr", "likelihood"}) {
        CHECK(fs::exists(out / "plots" / (std::string(p) + ".dat")));
    }
    const auto before = slurp(out / "aggregate.proposed.json");
    const auto again = scratch("reagg");
    const auto agg = reaggregate(out, again);
    CHECK(agg.schemes.size() == 3);
    CHECK(slurp(again / "aggregate.proposed.json") == before);

    // Rerunning into an existing experiment directory replaces it.
    CHECK_NOTHROW(execute(spec));
    CHECK(slurp(out / "aggregate.proposed.json") == before);
    fs::remove_all(out);
    fs::remove_all(again);
}

TEST_CASE("execute refuses to clobber foreign directories") {
    const auto out = scratch("foreign");
    fs::create_directories(out);
    { std::ofstream(out / "keep.txt") << "mine"; }
    ExperimentSpec spec;
    spec.base.duration = 70;
    spec.out = out;
    CHECK_THROWS(execute(spec));
    CHECK(fs::exists(out / "keep.txt"));
    fs::remove_all(out);
}

TEST_CASE("sweeps write one directory per point") {
    const auto out = scratch("sweep");
    ExperimentSpec spec;
    spec.base.duration = 70;
    spec.runs = 2;
    spec.sweep = SweepVar::Vehicles;
    spec.values = {5, 10};
    spec.out = out;
    const auto points = execute(spec);
    REQUIRE(points.size() == 2);
    CHECK(points[1].value == 10);
    CHECK(fs::exists(out / "vehicles-5" / "aggregate.random.json"));
    CHECK(fs::exists(out / "vehicles-10" / "traces"));
    const auto dat = slurp(out / "plots" / "reselections_vs_vehicles.dat");
    CHECK(dat.rfind("# vehicles", 0) == 0);
    fs::remove_all(out);
}

TEST_CASE("sweep values") {
    const SimConfig base;
    CHECK(with_sweep_value(base, SweepVar::Vehicles, 25).num_vehicles == 25);
    CHECK(with_sweep_value(base, SweepVar::Duration, 350).duration == 350);
    CHECK(parse_sweep_var("vehicles") == SweepVar::Vehicles);
    CHECK_FALSE(parse_sweep_var("speed").has_value());
}
