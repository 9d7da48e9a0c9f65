#include <doctest.h>

#include <fstream>
#include <sstream>

#include "foon/parser.hpp"
#include "support/generators.hpp"

using namespace foon;

namespace {

std::string read_fixture(const std::string &name) {
    std::ifstream in(std::string(FOON_FIXTURE_DIR) + "/" + name,
                     std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

const char *kFreezeBlock =
    "O\twater\n"
    "S\tliquid\n"
    "O\ttray\n"
    "S\tempty\n"
    "M\tfreeze\t0.9\n"
    "O\tice\n"
    "//\n";

} // namespace

TEST_CASE("parses the freeze block") {
    ParseResult result = parse_foon(kFreezeBlock);
    CHECK(result.diagnostics.empty());
    REQUIRE(result.units.size() == 1);
    const FunctionalUnit &unit = result.units[0];
    REQUIRE(unit.inputs().size() == 2);
    CHECK(unit.inputs()[0] == ObjectNode("water", {"liquid"}));
    CHECK(unit.inputs()[1] == ObjectNode("tray", {"empty"}));
    CHECK(unit.motion().name() == "freeze");
    CHECK(unit.motion().success_rate() == doctest::Approx(0.9));
    REQUIRE(unit.outputs().size() == 1);
    CHECK(unit.outputs()[0] == ObjectNode("ice"));
}

TEST_CASE("empty document parses to nothing") {
    ParseResult result = parse_foon("");
    CHECK(result.units.empty());
    CHECK(result.diagnostics.empty());
}

TEST_CASE("motion before any object is a single error naming the M line") {
    ParseResult result = parse_foon("M\tstir\t0.5\nO\tsoup\n//\n");
    CHECK(result.units.empty());
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].line_number == 1);
    CHECK(result.diagnostics[0].severity == Severity::Error);
}

TEST_CASE("one bad block does not poison the rest of the file") {
    std::string text = "M\tstir\n//\n";
    text += kFreezeBlock;
    ParseResult result = parse_foon(text);
    CHECK(result.units.size() == 1);
    CHECK(result.error_count() == 1);
}

TEST_CASE("missing rate defaults to 1.0") {
    ParseResult result = parse_foon("O\twater\nM\tboil\nO\twater\nS\tboiled\n//\n");
    REQUIRE(result.units.size() == 1);
    CHECK(result.units[0].motion().success_rate() == doctest::Approx(1.0));
}

TEST_CASE("bad rates are rejected with the block") {
    for (const char *rate : {"1.5", "-0.1", "abc", "0.5x"}) {
        std::string text = std::string("O\twater\nM\tboil\t") + rate +
                           "\nO\tsteam\n//\n";
        ParseResult result = parse_foon(text);
        CHECK(result.units.empty());
        CHECK(result.error_count() == 1);
    }
}

TEST_CASE("comments, blank lines and CRLF endings are accepted") {
    std::string text = "# header comment\r\n"
                       "\r\n"
                       "O\twater\r\n"
                       "   \r\n"
                       "M\tboil\t1.0\r\n"
                       "O\tsteam\r\n"
                       "//\r\n";
    ParseResult result = parse_foon(text);
    CHECK(result.diagnostics.empty());
    REQUIRE(result.units.size() == 1);
    CHECK(result.units[0].motion().success_rate() == doctest::Approx(1.0));
}

TEST_CASE("structural problems produce one diagnostic per block") {
    SUBCASE("two motion lines") {
        ParseResult r = parse_foon("O\ta\nM\tx\nM\ty\nO\tb\n//\n");
        CHECK(r.units.empty());
        CHECK(r.error_count() == 1);
    }
    SUBCASE("no outputs") {
        ParseResult r = parse_foon("O\ta\nM\tx\n//\n");
        CHECK(r.units.empty());
        CHECK(r.error_count() == 1);
    }
    SUBCASE("state before any object") {
        ParseResult r = parse_foon("S\tchopped\nO\ta\nM\tx\nO\tb\n//\n");
        CHECK(r.units.empty());
        CHECK(r.error_count() == 1);
    }
    SUBCASE("duplicate input identity") {
        ParseResult r = parse_foon("O\ta\nO\ta\nM\tx\nO\tb\n//\n");
        CHECK(r.units.empty());
        CHECK(r.error_count() == 1);
    }
    SUBCASE("unterminated final unit") {
        ParseResult r = parse_foon("O\ta\nM\tx\nO\tb\n");
        CHECK(r.units.empty());
        REQUIRE(r.error_count() == 1);
        CHECK(r.diagnostics[0].line_number == 1);
    }
    SUBCASE("unknown record tag") {
        ParseResult r = parse_foon("X\ta\n//\n");
        CHECK(r.units.empty());
        CHECK(r.error_count() == 1);
    }
}

TEST_CASE("diagnostic line numbers point inside the offending block") {
    std::string text = kFreezeBlock;              // lines 1-7
    text += "O\tsoup\nM\tstir\t2.0\nO\tsoup\n//\n"; // lines 8-11, bad rate
    ParseResult result = parse_foon(text);
    CHECK(result.units.size() == 1);
    REQUIRE(result.error_count() == 1);
    CHECK(result.diagnostics[0].line_number >= 8);
    CHECK(result.diagnostics[0].line_number <= 11);
}

TEST_CASE("ingredients ride on state lines and merge across them") {
    ParseResult result = parse_foon(
        "O\tbowl\nS\tfull\t{tomato,lettuce}\nS\tmixed\t{onion}\n"
        "M\tserve\nO\tsalad\n//\n");
    REQUIRE(result.units.size() == 1);
    const ObjectNode &bowl = result.units[0].inputs()[0];
    CHECK(bowl.states() == std::vector<std::string>{"full", "mixed"});
    CHECK(bowl.ingredients() ==
          std::vector<std::string>{"lettuce", "onion", "tomato"});
}

TEST_CASE("malformed ingredient braces are rejected") {
    ParseResult result =
        parse_foon("O\tbowl\nS\tfull\ttomato\nM\tserve\nO\tsalad\n//\n");
    CHECK(result.units.empty());
    CHECK(result.error_count() == 1);
}

TEST_CASE("invalid UTF-8 is a document-level error") {
    ParseResult foon = parse_foon("O\twater\n//\nO\t\xFF\x20\n//\n");
    CHECK(foon.units.empty());
    REQUIRE(foon.error_count() == 1);
    CHECK(foon.diagnostics[0].line_number == 3);

    KitchenParseResult kitchen = parse_kitchen("O\t\xC0\x80\n//\n");
    CHECK(kitchen.kitchen.size() == 0);
    CHECK(kitchen.error_count() == 1);

    // multi-byte sequences are fine
    ParseResult ok = parse_foon("O\tjalape\xC3\xB1o\nM\tchop\nO\tsalsa\n//\n");
    CHECK(ok.diagnostics.empty());
    CHECK(ok.units.size() == 1);
}

TEST_CASE("kitchen files parse objects and reject motions") {
    SUBCASE("single item") {
        KitchenParseResult r = parse_kitchen("O\twater\nS\tliquid\n//\n");
        CHECK(r.diagnostics.empty());
        CHECK(r.kitchen.size() == 1);
        CHECK(r.kitchen.contains(ObjectNode("water", {"liquid"})));
    }
    SUBCASE("duplicates collapse silently") {
        KitchenParseResult r =
            parse_kitchen("O\twater\n//\nO\twater\n//\n");
        CHECK(r.diagnostics.empty());
        CHECK(r.kitchen.size() == 1);
    }
    SUBCASE("empty document is an empty kitchen") {
        KitchenParseResult r = parse_kitchen("");
        CHECK(r.kitchen.size() == 0);
        CHECK(r.diagnostics.empty());
    }
    SUBCASE("motion line drops the block") {
        KitchenParseResult r =
            parse_kitchen("O\twater\nM\tboil\n//\nO\tsalt\n//\n");
        CHECK(r.error_count() == 1);
        CHECK(r.kitchen.size() == 1);
        CHECK(r.kitchen.contains(ObjectNode("salt")));
    }
    SUBCASE("trailing block without separator is accepted") {
        KitchenParseResult r = parse_kitchen("O\twater\n//\nO\tsalt\n");
        CHECK(r.diagnostics.empty());
        CHECK(r.kitchen.size() == 2);
    }
}

TEST_CASE("serialization emits the canonical block") {
    FunctionalUnit unit({ObjectNode("water", {"liquid"}),
                         ObjectNode("tray", {"empty"})},
                        MotionNode("freeze", 0.9), {ObjectNode("ice")});
    CHECK(serialize_foon({unit}) == kFreezeBlock);
    CHECK(serialize_foon({}) == "");
}

TEST_CASE("serialization sorts states and puts ingredients on the first") {
    FunctionalUnit unit({ObjectNode("bowl", {"mixed", "full"},
                                    {"tomato", "lettuce"})},
                        MotionNode("serve", 1.0), {ObjectNode("salad")});
    CHECK(serialize_foon({unit}) == "O\tbowl\n"
                                    "S\tfull\t{lettuce,tomato}\n"
                                    "S\tmixed\n"
                                    "M\tserve\t1.0\n"
                                    "O\tsalad\n"
                                    "//\n");
}

TEST_CASE("serialization refuses grammar-unrepresentable units") {
    FunctionalUnit unit({ObjectNode("bowl", {}, {"tomato"})},
                        MotionNode("serve"), {ObjectNode("salad")});
    CHECK_THROWS_AS(serialize_foon({unit}), std::invalid_argument);
}

TEST_CASE("rate formatting trims zeros and keeps one decimal") {
    CHECK(format_rate(1.0) == "1.0");
    CHECK(format_rate(0.9) == "0.9");
    CHECK(format_rate(0.0) == "0.0");
    CHECK(format_rate(0.123456) == "0.123456");
    CHECK(format_rate(0.25) == "0.25");
}

TEST_CASE("round trip: parse after serialize reproduces every unit") {
    testsupport::Rng rng(7101);
    for (int round = 0; round < 200; ++round) {
        auto units = testsupport::random_unit_list(rng, 8);
        ParseResult reparsed = parse_foon(serialize_foon(units));
        REQUIRE(reparsed.diagnostics.empty());
        REQUIRE(reparsed.units.size() == units.size());
        for (std::size_t i = 0; i < units.size(); ++i)
            CHECK(unit_equals(units[i], reparsed.units[i]));
    }
}

TEST_CASE("normalization is idempotent on all fixtures") {
    for (const char *name : {"freeze_toy.foon", "cake_chain.foon",
                             "salad_fork.foon", "soup_pot.foon",
                             "bad_block.foon"}) {
        std::string text = read_fixture(name);
        std::string once = serialize_foon(parse_foon(text).units);
        std::string twice = serialize_foon(parse_foon(once).units);
        CHECK(once == twice);
    }
}
