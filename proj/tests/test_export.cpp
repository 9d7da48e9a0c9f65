#include <doctest.h>

#include <string>

#include "foon/export.hpp"
#include "foon/parser.hpp"
#include "support/generators.hpp"

using namespace foon;

namespace {

std::size_t count_occurrences(const std::string &text, const std::string &needle) {
    std::size_t count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++count;
    return count;
}

FunctionalUnit freeze_unit() {
    return FunctionalUnit({ObjectNode("water", {"liquid"}),
                           ObjectNode("tray", {"empty"})},
                          MotionNode("freeze", 0.9), {ObjectNode("ice")});
}

} // namespace

TEST_CASE("dot output has one ellipse per identity and one box per unit") {
    std::string dot = to_dot({freeze_unit()});
    CHECK(count_occurrences(dot, "shape=ellipse") == 3);
    CHECK(count_occurrences(dot, "shape=box") == 1);
    CHECK(count_occurrences(dot, "->") == 3);
    CHECK(dot.find("digraph foon {") == 0);
    CHECK(dot.find("freeze (0.9)") != std::string::npos);
}

TEST_CASE("empty unit list renders an empty digraph body") {
    CHECK(to_dot({}) == "digraph foon {\n}\n");
}

TEST_CASE("shared objects get one node, motions stay per unit") {
    FunctionalUnit boil({ObjectNode("water")}, MotionNode("boil", 1.0),
                        {ObjectNode("water", {"boiled"})});
    FunctionalUnit cool({ObjectNode("water", {"boiled"})},
                        MotionNode("cool", 1.0), {ObjectNode("water")});
    std::string dot = to_dot({boil, cool});
    CHECK(count_occurrences(dot, "shape=ellipse") == 2);
    CHECK(count_occurrences(dot, "shape=box") == 2);
}

TEST_CASE("dot output is byte-stable") {
    testsupport::Rng rng(7401);
    auto units = testsupport::random_unit_list(rng, 10);
    CHECK(to_dot(units) == to_dot(units));
}

TEST_CASE("tree json round-trips exactly") {
    ParseResult parsed = parse_foon("O\tflour\nO\tegg\nM\tmix\t0.95\nO\tbatter\n//\n"
                                    "O\tbatter\nM\tbake\t0.8\nO\tcake\n//\n");
    REQUIRE(parsed.diagnostics.empty());
    TaskTree tree{Algorithm::Ids, ObjectNode("cake"), 2, parsed.units};

    std::string json = tree_to_json(tree);
    CHECK(json.find("\"version\": 1") != std::string::npos);
    CHECK(json.find("\"algorithm\": \"IDS\"") != std::string::npos);

    TaskTree back = tree_from_json(json);
    CHECK(back.algorithm == tree.algorithm);
    CHECK(back.goal == tree.goal);
    CHECK(back.discovered_depth == 2);
    REQUIRE(back.steps.size() == 2);
    CHECK(unit_equals(back.steps[0], tree.steps[0]));
    CHECK(unit_equals(back.steps[1], tree.steps[1]));
    CHECK(back.steps[0].motion().success_rate() == doctest::Approx(0.95));

    // a re-parsed tree still validates against the original kitchen
    Kitchen kitchen;
    kitchen.add(ObjectNode("flour"));
    kitchen.add(ObjectNode("egg"));
    CHECK(validate_tree(back, kitchen).valid());

    // byte-stable second serialization
    CHECK(tree_to_json(back) == json);
}

TEST_CASE("empty tree serializes with an empty step list") {
    TaskTree tree{Algorithm::GbfsH1, ObjectNode("water"), 0, {}};
    std::string json = tree_to_json(tree);
    CHECK(json.find("\"steps\": []") != std::string::npos);
    TaskTree back = tree_from_json(json);
    CHECK(back.steps.empty());
    CHECK(back.algorithm == Algorithm::GbfsH1);
}

TEST_CASE("freeze tree json carries the step structure") {
    TaskTree tree{Algorithm::Ids, ObjectNode("ice"), 1, {freeze_unit()}};
    TaskTree back = tree_from_json(tree_to_json(tree));
    REQUIRE(back.steps.size() == 1);
    CHECK(back.steps[0].inputs().size() == 2);
    CHECK(back.steps[0].outputs().size() == 1);
}

TEST_CASE("malformed tree json is rejected") {
    CHECK_THROWS_AS(tree_from_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(tree_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(tree_from_json("{\"version\": 2}"), std::invalid_argument);
}

TEST_CASE("units json wraps the same step schema") {
    std::string json = units_to_json({freeze_unit()});
    CHECK(json.find("\"version\": 1") != std::string::npos);
    CHECK(json.find("\"units\"") != std::string::npos);
    CHECK(json.find("\"rate\": 0.9") != std::string::npos);
}
