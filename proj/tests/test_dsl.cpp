#include <catch2/catch_amalgamated.hpp>

#include <filtra/dsl/machine.hpp>
#include <filtra/dsl/parser.hpp>
#include <filtra/dsl/printer.hpp>

#include "support/fixtures.hpp"

using namespace filtra;

namespace {

const char* two_filtered_text = R"(
# weights 1 and 2 over a single base coordinate
bundle two_filtered {
  axes 1;
  degree (2);
  base x;
  coord Y weight (1);
  coord Z weight (2);
  charts U V;
  overlap U V;
  transition U -> V {
    x' = x;
    Y' = 2*Y + x;
    Z' = 3*Z + Y^2 + x*Y;
  }
  transition V -> U {
    x' = x;
    Y' = Y/2 - x/2;
    Z' = Z/3 - Y^2/12 + x^2/12;
  }
}
)";

dsl::Document reparse(const dsl::Document& doc) {
    return dsl::parse(dsl::print_document(doc));
}

} // namespace

TEST_CASE("bundle document parses to the hand-built fixture") {
    dsl::Document doc = dsl::parse(two_filtered_text);
    REQUIRE(doc.bundles.size() == 1);
    CHECK(doc.bundles[0] == fixtures::two_filtered());
    CHECK(validate_bundle(doc.bundles[0]).pass());
}

TEST_CASE("empty document") {
    dsl::Document doc = dsl::parse("  # nothing but a comment\n");
    CHECK(doc == dsl::Document{});
}

TEST_CASE("serialize then parse is the identity") {
    dsl::Document doc = dsl::parse(two_filtered_text);
    CHECK(reparse(doc) == doc);
    std::string once = dsl::print_document(doc);
    CHECK(dsl::print_document(dsl::parse(once)) == once);
}

TEST_CASE("morphism block binds charts, rules and the base inverse") {
    const char* text = R"(
bundle A {
  axes 1;
  degree (1);
  base x;
  coord Y weight (1);
  charts U;
}
bundle B {
  axes 1;
  degree (1);
  base u;
  coord W weight (1);
  charts V;
}
morphism phi : A -> B {
  chart U -> V;
  map {
    u' = 2*x;
    W' = Y + x^2;
  }
  inverse {
    x = u/2;
  }
}
)";
    dsl::Document doc = dsl::parse(text);
    REQUIRE(doc.morphisms.size() == 1);
    const FilteredMorphism& m = doc.morphisms[0];
    CHECK(m.source_bundle.name == "A");
    CHECK(m.target_bundle.name == "B");
    CHECK(m.source_chart == "U");
    CHECK(m.target_chart == "V");
    CHECK(m.map.base_rules[0] == BaseFunction::variable(1, 0) * BaseFunction::constant(1, 2));
    REQUIRE(m.base_inverse.has_value());
    CHECK((*m.base_inverse)[0] ==
          BaseFunction::variable(1, 0) * BaseFunction::constant(1, Rational(1, 2)));
    CHECK(validate_morphism(m).pass());
    CHECK(reparse(doc) == doc);
}

TEST_CASE("tower and filtration blocks round-trip") {
    const char* text = R"(
tower T {
  base x;
  coord y weight (1);
  coord z weight (2);
  charts U V;
  overlap U V;
  transition U -> V {
    x' = x;
    y' = y + x;
    z' = z + y^3;
  }
  transition V -> U {
    x' = x;
    y' = y - x;
    z' = z - (y - x)^3;
  }
}

filtration P {
  ambient z1 z2;
  bound 4;
  level 0: 1;
  level 1: 1, z1;
  level 2: 1, z1, z1^2, z2;
}
)";
    dsl::Document doc = dsl::parse(text);
    REQUIRE(doc.towers.size() == 1);
    REQUIRE(doc.filtrations.size() == 1);
    CHECK(validate_tower(doc.towers[0]).pass());
    CHECK(compute_rank(doc.filtrations[0].presentation) == std::vector<int>{1, 1});
    CHECK(reparse(doc) == doc);
    // declaration order is preserved block by block
    CHECK(doc.order[0].first == dsl::BlockKind::Tower);
    CHECK(doc.order[1].first == dsl::BlockKind::Filtration);
}

TEST_CASE("interleaved base and vertical declarations survive a round-trip") {
    const char* text = R"(
bundle E {
  axes 1;
  degree (1);
  base x;
  vertical v;
  base y;
  coord Y weight (1);
  charts U;
}
)";
    dsl::Document doc = dsl::parse(text);
    const auto& base = doc.bundles[0].frame->base();
    REQUIRE(base.size() == 3);
    CHECK_FALSE(base[0].vertical);
    CHECK(base[1].vertical);
    CHECK_FALSE(base[2].vertical);
    CHECK(reparse(doc) == doc);
}

TEST_CASE("diagnostics carry positions and the right category") {
    auto parse_fails = [](const char* text, auto tag, const char* needle) {
        using E = decltype(tag);
        try {
            dsl::parse(text);
            FAIL("expected a diagnostic");
        } catch (const E& e) {
            CHECK(std::string(e.what()).find("line") != std::string::npos);
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    const char* head = "bundle B { axes 1; degree (2); base x; coord Y weight (1); "
                       "coord Z weight (2); charts U V;\n";

    // forbidden division by a fiber-dependent expression
    std::string fiber_den = std::string(head) +
                            "transition U -> V { x' = x; Y' = Z / Y; Z' = Z; } }";
    parse_fails(fiber_den.c_str(), FiberDenominator{""}, "'Y'");

    std::string unknown = std::string(head) +
                          "transition U -> V { x' = x; Y' = q; Z' = Z; } }";
    parse_fails(unknown.c_str(), UndeclaredSymbol{""}, "'q'");

    std::string missing = std::string(head) + "transition U -> V { x' = x; Y' = Y; } }";
    parse_fails(missing.c_str(), SyntaxError{""}, "missing rule for 'Z'");

    std::string dup = "bundle B { axes 1; base x; coord x weight (1); }";
    parse_fails(dup.c_str(), SyntaxError{""}, "duplicate coordinate");

    std::string arity = "bundle B { axes 2; base x; coord Y weight (1); }";
    parse_fails(arity.c_str(), SyntaxError{""}, "components");

    std::string late_axes = "bundle B { degree (1); axes 2; base x; }";
    parse_fails(late_axes.c_str(), SyntaxError{""}, "axes");

    std::string base_fiber = std::string(head) +
                             "transition U -> V { x' = x + Y; Y' = Y; Z' = Z; } }";
    parse_fails(base_fiber.c_str(), SyntaxError{""}, "base coordinate");

    std::string div_zero = std::string(head) +
                           "transition U -> V { x' = x; Y' = Y/0; Z' = Z; } }";
    parse_fails(div_zero.c_str(), SyntaxError{""}, "division by zero");

    parse_fails("bundle B { axes 1; base x; charts U; overlap U W; }",
                UndeclaredSymbol{""}, "'W'");
    parse_fails("gadget G {}", SyntaxError{""}, "'gadget'");
    parse_fails("bundle B { axes 1; base x; } bundle B { axes 1; base x; }",
                SyntaxError{""}, "duplicate object name");
}

TEST_CASE("expressions fold rationals and respect precedence") {
    const char* text = R"(
bundle E {
  axes 1;
  degree (1);
  base x;
  coord Y weight (1);
  charts U V;
  transition U -> V {
    x' = (2 + 3) * x - 4 * x;
    Y' = -Y/-2 + (1/4 + 1/4) * Y;
  }
}
)";
    dsl::Document doc = dsl::parse(text);
    const ChartMap& m = doc.bundles[0].atlas.transitions[0].map;
    CHECK(m.base_rules[0] == BaseFunction::variable(1, 0));
    WeightedPolynomial y = WeightedPolynomial::fiber_variable(doc.bundles[0].frame, 0);
    CHECK(m.fiber_rules[0] == y);
}

TEST_CASE("machine rendering is stable and carries the schema tag") {
    dsl::Document doc = dsl::parse(two_filtered_text);
    dsl::json j = dsl::document_json(doc);
    CHECK(j["schema"] == "filtra-machine/1");
    REQUIRE(j["objects"].size() == 1);
    CHECK(j["objects"][0]["kind"] == "bundle");
    CHECK(j["objects"][0]["degree"] == dsl::json::array({2}));
    CHECK(j["objects"][0]["transitions"][0]["rules"][1]["expr"] == "2*Y + x");
    CHECK(dsl::machine_dump(j) == dsl::machine_dump(dsl::document_json(doc)));

    ValidationReport rep = validate_bundle(doc.bundles[0]);
    dsl::json r = dsl::report_json("two_filtered", rep);
    CHECK(r["pass"] == true);
    CHECK(r["kind"] == "report");
    CHECK(r["findings"].is_array());
    CHECK_FALSE(r["findings"].empty());
}
