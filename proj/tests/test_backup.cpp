#include <stdexcept>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "uavclust/backup.hpp"

using namespace uavclust;

namespace {

BackupCandidate bc(std::uint32_t id, double gap, std::size_t n, double xi) { return {VehicleId{id}, gap, n, xi}; }

std::vector<VehicleId> order(const std::vector<BackupEntry>& list) {
    std::vector<VehicleId> out;
    for (const auto& e : list) out.push_back(e.vehicle);
    return out;
}

}  // namespace

TEST_CASE("rank scoring example") {
    const std::vector<BackupCandidate> c{bc(0, 1, 3, 400), bc(1, 2, 5, 100), bc(2, 3, 1, 600)};
    const auto list = build_backup_list(c, {0.5, 0.25, 0.25});
    REQUIRE(list.size() == 3);
    CHECK(order(list) == std::vector<VehicleId>{VehicleId{0}, VehicleId{1}, VehicleId{2}});
    CHECK(list[0].score == doctest::Approx(0.75));
    CHECK(list[1].score == doctest::Approx(0.50));
    CHECK(list[2].score == doctest::Approx(0.25));
}

TEST_CASE("single and tied candidates") {
    const std::vector<BackupCandidate> one{bc(4, 9, 0, -3)};
    const auto l1 = build_backup_list(one, {});
    REQUIRE(l1.size() == 1);
    CHECK(l1[0].score == 1.0);

    const std::vector<BackupCandidate> tie{bc(7, 1, 2, 3), bc(2, 1, 2, 3)};
    const auto l2 = build_backup_list(tie, {});
    CHECK(l2[0].score == l2[1].score);
    CHECK(order(l2) == std::vector<VehicleId>{VehicleId{2}, VehicleId{7}});
    CHECK(build_backup_list(std::vector<BackupCandidate>{}, {}).empty());
}

TEST_CASE("raw scoring is the weighted sum") {
    const std::vector<BackupCandidate> c{bc(0, 2, 4, 100), bc(1, 1, 1, 300)};
    const auto list = build_backup_list(c, {0.5, 0.25, 0.25}, BackupScoring::Raw);
    CHECK(list[0].vehicle == VehicleId{1});
    CHECK(list[0].score == doctest::Approx(0.5 + 0.25 + 75));
    CHECK(list[1].score == doctest::Approx(1 + 1 + 25));
}

TEST_CASE("ascending path order flips only the residual criterion") {
    const std::vector<BackupCandidate> c{bc(0, 1, 3, 400), bc(1, 2, 5, 100), bc(2, 3, 1, 600)};
    const auto list = build_backup_list(c, {0, 0, 1}, BackupScoring::Rank, PathOrder::SmallestFirst);
    CHECK(order(list) == std::vector<VehicleId>{VehicleId{1}, VehicleId{0}, VehicleId{2}});
    const auto mixed = build_backup_list(c, {0.5, 0.25, 0.25}, BackupScoring::Rank, PathOrder::SmallestFirst);
    // A: 0.5 + 0.125 + 0.125, B: 0.25 + 0.25 + 0.25, C: 0 + 0 + 0
    CHECK(mixed[0].vehicle == VehicleId{0});
    CHECK(mixed[0].score == doctest::Approx(0.75));
    CHECK(mixed[1].score == doctest::Approx(0.75));
    CHECK(mixed[2].vehicle == VehicleId{2});
    const auto raw = build_backup_list(c, {0, 0, 1}, BackupScoring::Raw, PathOrder::SmallestFirst);
    CHECK(raw[0].vehicle == VehicleId{1});
    CHECK(raw[0].score == doctest::Approx(-100));
}

TEST_CASE("pop_replacement") {
    const std::vector<BackupCandidate> c{bc(0, 1, 3, 400), bc(1, 2, 5, 100), bc(2, 3, 1, 600)};
    const auto list = build_backup_list(c, {0.5, 0.25, 0.25});
    const std::vector<VehicleId> all{VehicleId{0}, VehicleId{1}, VehicleId{2}};
    auto [a, rest] = pop_replacement(list, all);
    CHECK(a == VehicleId{0});
    CHECK(order(rest) == std::vector<VehicleId>{VehicleId{1}, VehicleId{2}});

    const std::vector<VehicleId> without_a{VehicleId{1}, VehicleId{2}};
    auto [b, rest2] = pop_replacement(list, without_a);
    CHECK(b == VehicleId{1});
    CHECK(order(rest2) == std::vector<VehicleId>{VehicleId{2}});

    auto [none, empty] = pop_replacement(std::vector<BackupEntry>{}, all);
    CHECK_FALSE(none.has_value());
    CHECK(empty.empty());

    auto [gone, drained] = pop_replacement(list, std::vector<VehicleId>{});
    CHECK_FALSE(gone.has_value());
    CHECK(drained.empty());
}

TEST_CASE("property: single-criterion reductions equal brute-force ranks") {
    std::mt19937_64 gen(12);
    std::uniform_int_distribution<int> size(1, 20), val(0, 6);
    for (int t = 0; t < 300; ++t) {
        const auto n = static_cast<std::size_t>(size(gen));
        std::vector<BackupCandidate> c;
        std::vector<double> gap, nb, xi;
        for (std::size_t i = 0; i < n; ++i) {
            c.push_back(bc(static_cast<std::uint32_t>(i * 7 % 23), val(gen), static_cast<std::size_t>(val(gen)), val(gen) * 50.0));
            gap.push_back(c.back().speed_gap);
            nb.push_back(static_cast<double>(c.back().neighbors));
            xi.push_back(c.back().residual);
        }
        const std::array<std::pair<AhpWeights, std::vector<double>>, 3> cases{
            std::pair{AhpWeights{1, 0, 0}, oracle::rank_scores(gap, false)},
            std::pair{AhpWeights{0, 1, 0}, oracle::rank_scores(nb, true)},
            std::pair{AhpWeights{0, 0, 1}, oracle::rank_scores(xi, true)}};
        for (const auto& [w, want] : cases) {
            const auto list = build_backup_list(c, w);
            REQUIRE(list.size() == n);
            for (const auto& e : list) {
                std::size_t i = 0;
                while (c[i].id != e.vehicle) ++i;
                CHECK(e.score == doctest::Approx(want[i]).epsilon(1e-12));
            }
            for (std::size_t k = 1; k < n; ++k) {
                CHECK((list[k - 1].score > list[k].score ||
                       (list[k - 1].score == list[k].score && list[k - 1].vehicle < list[k].vehicle)));
            }
        }
    }
}
