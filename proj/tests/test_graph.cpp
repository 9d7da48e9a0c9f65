#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "foon/graph.hpp"
#include "support/generators.hpp"

using namespace foon;

namespace {

FunctionalUnit freeze_unit(double rate) {
    return FunctionalUnit({ObjectNode("water", {"liquid"}),
                           ObjectNode("tray", {"empty"})},
                          MotionNode("freeze", rate), {ObjectNode("ice")});
}

std::set<std::string> key_set(const Foon &graph) {
    std::set<std::string> keys;
    for (const auto &unit : graph.units())
        keys.insert(unit.key());
    return keys;
}

} // namespace

TEST_CASE("build deduplicates identical units") {
    Foon graph = Foon::build({freeze_unit(0.9), freeze_unit(0.9)});
    CHECK(graph.unit_count() == 1);
}

TEST_CASE("duplicate rates are averaged, order independent") {
    // brute force over both permutations: mean(0.8, 0.4) = 0.6 either way
    Foon ab = Foon::build({freeze_unit(0.8), freeze_unit(0.4)});
    Foon ba = Foon::build({freeze_unit(0.4), freeze_unit(0.8)});
    REQUIRE(ab.unit_count() == 1);
    CHECK(ab.unit(0).motion().success_rate() == doctest::Approx(0.6));
    CHECK(ba.unit(0).motion().success_rate() == doctest::Approx(0.6));
}

TEST_CASE("three-way duplicates average over the whole class") {
    Foon graph =
        Foon::build({freeze_unit(0.3), freeze_unit(0.6), freeze_unit(0.9)});
    REQUIRE(graph.unit_count() == 1);
    CHECK(graph.unit(0).motion().success_rate() == doctest::Approx(0.6));
}

TEST_CASE("indexes map identities to ascending unit positions") {
    FunctionalUnit mix({ObjectNode("flour"), ObjectNode("egg")},
                       MotionNode("mix", 0.95), {ObjectNode("batter")});
    FunctionalUnit bake({ObjectNode("batter")}, MotionNode("bake", 0.8),
                        {ObjectNode("cake")});
    Foon graph = Foon::build({mix, bake});

    CHECK(graph.unit(0).source_index() == 0);
    CHECK(graph.unit(1).source_index() == 1);
    CHECK(graph.producer_indexes(ObjectNode("batter").identity()) ==
          std::vector<int>{0});
    CHECK(graph.consumer_indexes(ObjectNode("batter").identity()) ==
          std::vector<int>{1});
    CHECK(graph.producers_of(ObjectNode("nothing")).empty());

    auto producers = graph.producers_of(ObjectNode("cake"));
    REQUIRE(producers.size() == 1);
    CHECK(producers[0].motion().name() == "bake");
}

TEST_CASE("two producers of one identity keep file order") {
    FunctionalUnit a({ObjectNode("lettuce")}, MotionNode("mix", 0.8),
                     {ObjectNode("salad")});
    FunctionalUnit b({ObjectNode("cabbage")}, MotionNode("toss", 0.6),
                     {ObjectNode("salad")});
    Foon graph = Foon::build({a, b});
    CHECK(graph.producer_indexes(ObjectNode("salad").identity()) ==
          std::vector<int>{0, 1});
}

TEST_CASE("stats counts units and distinct node identities") {
    CHECK(Foon().stats() == GraphStats{0, 0, 0});
    Foon freeze = Foon::build({freeze_unit(0.9)});
    CHECK(freeze.stats() == GraphStats{1, 3, 1});
    CHECK(merge(freeze, freeze).stats() == freeze.stats());
}

TEST_CASE("merge has an identity element and is idempotent") {
    testsupport::Rng rng(7201);
    Foon graph = Foon::build(testsupport::random_unit_list(rng, 10));
    CHECK(key_set(merge(graph, Foon())) == key_set(graph));
    CHECK(key_set(merge(Foon(), graph)) == key_set(graph));
    CHECK(key_set(merge(graph, graph)) == key_set(graph));
}

TEST_CASE("merge is commutative and associative on unit sets") {
    testsupport::Rng rng(7202);
    for (int round = 0; round < 60; ++round) {
        Foon a = Foon::build(testsupport::random_unit_list(rng, 8));
        Foon b = Foon::build(testsupport::random_unit_list(rng, 8));
        Foon c = Foon::build(testsupport::random_unit_list(rng, 8));
        CHECK(key_set(merge(a, b)) == key_set(merge(b, a)));
        CHECK(key_set(merge(merge(a, b), c)) == key_set(merge(a, merge(b, c))));
    }
}

TEST_CASE("merge unit count never exceeds the sum of its parts") {
    testsupport::Rng rng(7203);
    for (int round = 0; round < 40; ++round) {
        Foon a = Foon::build(testsupport::random_unit_list(rng, 8));
        Foon b = Foon::build(testsupport::random_unit_list(rng, 8));
        CHECK(merge(a, b).unit_count() <= a.unit_count() + b.unit_count());
    }
}

TEST_CASE("producer and consumer indexes are exactly rebuildable") {
    testsupport::Rng rng(7204);
    for (int round = 0; round < 40; ++round) {
        Foon graph = Foon::build(testsupport::random_unit_list(rng, 12));
        Foon rebuilt = Foon::build(graph.units());
        REQUIRE(rebuilt.unit_count() == graph.unit_count());

        for (const auto &unit : graph.units()) {
            for (const auto &node : unit.outputs()) {
                const auto &indexes = graph.producer_indexes(node.identity());
                CHECK(std::is_sorted(indexes.begin(), indexes.end()));
                CHECK(std::count(indexes.begin(), indexes.end(),
                                 unit.source_index()) == 1);
                for (int index : indexes)
                    CHECK(graph.unit(index).has_output(node.identity()));
            }
            for (const auto &node : unit.inputs()) {
                const auto &indexes = graph.consumer_indexes(node.identity());
                CHECK(std::count(indexes.begin(), indexes.end(),
                                 unit.source_index()) == 1);
                for (int index : indexes)
                    CHECK(graph.unit(index).has_input(node.identity()));
            }
        }
    }
}
