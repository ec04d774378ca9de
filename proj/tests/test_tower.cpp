#include <catch2/catch_amalgamated.hpp>

#include <filtra/tower.hpp>

#include <functional>

#include "support/fixtures.hpp"

using namespace filtra;
using fixtures::wfib;

namespace {

using RuleBuilder = std::function<std::vector<WeightedPolynomial>(const FramePtr&)>;

// Two charts over one base coordinate, both transitions supplied by the
// builders so each test can state its rules over the canonical frame.
AffineTowerSpec two_chart_tower(std::vector<FiberCoord> fibers, int height,
                                const RuleBuilder& fwd, const RuleBuilder& bwd) {
    FramePtr f = make_frame(1, {{"x", false}}, std::move(fibers), Weight({height}));
    std::vector<BaseFunction> id = {BaseFunction::variable(1, 0)};
    AffineTowerSpec t;
    t.name = "tower";
    t.frame = f;
    t.atlas.charts = {"U", "V"};
    t.atlas.transitions = {{"U", "V", make_chart_map(f, f, id, fwd(f))},
                           {"V", "U", make_chart_map(f, f, id, bwd(f))}};
    t.atlas.overlaps = {{"U", "V"}};
    return t;
}

} // namespace

TEST_CASE("tower round-trip on the two-weight fixture") {
    FilteredBundleSpec b = fixtures::two_filtered();
    AffineTowerSpec t = tower_of(b);
    CHECK(validate_tower(t).pass());
    FilterabilityReport rep = check_filterable_atlas(t);
    CHECK(rep.pass());
    REQUIRE(rep.induced.has_value());
    CHECK(*rep.induced->frame == *b.frame);
    CHECK(rep.induced->atlas == b.atlas);
}

TEST_CASE("unipotent y-dependent level block is a pullback offender") {
    // z1' = z1 + y z2, z2' = z2: a perfectly good affine tower whose level-2
    // block depends on the level-1 coordinate, so no weight assignment works
    AffineTowerSpec t = two_chart_tower(
        {{"y", Weight({1})}, {"z1", Weight({2})}, {"z2", Weight({2})}}, 2,
        [](const FramePtr& f) {
            return std::vector<WeightedPolynomial>{
                wfib(f, 0), wfib(f, 1) + wfib(f, 0) * wfib(f, 2), wfib(f, 2)};
        },
        [](const FramePtr& f) {
            return std::vector<WeightedPolynomial>{
                wfib(f, 0), wfib(f, 1) - wfib(f, 0) * wfib(f, 2), wfib(f, 2)};
        });
    CHECK(validate_tower(t).pass());
    FilterabilityReport rep = check_filterable_atlas(t);
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(rep.induced.has_value());
    auto bad = rep.report.failures();
    REQUIRE(bad.size() == 2); // one per direction
    for (const auto& fd : bad) {
        CHECK(fd.check == "pullback");
        CHECK(fd.subject.find("L_2[z1][z2]") != std::string::npos);
        CHECK(fd.detail == "depends on y");
    }
}

TEST_CASE("cubic affine part violates the level degree") {
    auto cubic = [](const FramePtr& f, Rational sign) {
        WeightedPolynomial y3 = wfib(f, 0) * wfib(f, 0) * wfib(f, 0);
        return std::vector<WeightedPolynomial>{wfib(f, 0), wfib(f, 1) + y3 * sign};
    };
    AffineTowerSpec t = two_chart_tower(
        {{"y", Weight({1})}, {"z", Weight({2})}}, 2,
        [&](const FramePtr& f) { return cubic(f, Rational(1)); },
        [&](const FramePtr& f) { return cubic(f, Rational(-1)); });
    CHECK(validate_tower(t).pass());
    FilterabilityReport rep = check_filterable_atlas(t);
    CHECK_FALSE(rep.pass());
    auto bad = rep.report.failures();
    REQUIRE(bad.size() == 2);
    for (const auto& fd : bad) {
        CHECK(fd.check == "degree");
        CHECK(fd.subject.find("c_2[z]") != std::string::npos);
        CHECK(fd.detail == "weighted degree 3 exceeds 2");
    }
}

TEST_CASE("non-affine and level-crossing rules fail tower validation") {
    FramePtr g = make_frame(1, {{"x", false}},
                            {{"y", Weight({1})}, {"z", Weight({2})}}, Weight({2}));
    std::vector<BaseFunction> id = {BaseFunction::variable(1, 0)};

    AffineTowerSpec quad;
    quad.name = "quad";
    quad.frame = g;
    quad.atlas.charts = {"U", "V"};
    quad.atlas.transitions = {
        {"U", "V", make_chart_map(g, g, id, {wfib(g, 0), wfib(g, 1) * wfib(g, 1)})}};
    ValidationReport r1 = validate_tower(quad);
    REQUIRE_FALSE(r1.pass());
    CHECK(r1.failures()[0].check == "level-affine");
    CHECK(r1.failures()[0].subject.find("z") != std::string::npos);
    CHECK(r1.failures()[0].detail == "not affine in its own level");

    AffineTowerSpec cross;
    cross.name = "cross";
    cross.frame = g;
    cross.atlas.charts = {"U", "V"};
    cross.atlas.transitions = {
        {"U", "V", make_chart_map(g, g, id, {wfib(g, 0) + wfib(g, 1), wfib(g, 1)})}};
    ValidationReport r2 = validate_tower(cross);
    REQUIRE_FALSE(r2.pass());
    CHECK(r2.failures()[0].check == "level-affine");
    CHECK(r2.failures()[0].detail.find("references level 2 coordinate z") !=
          std::string::npos);

    AffineTowerSpec sing;
    sing.name = "sing";
    sing.frame = make_frame(1, {{"x", false}},
                            {{"z1", Weight({1})}, {"z2", Weight({1})}}, Weight({1}));
    const FramePtr& h = sing.frame;
    WeightedPolynomial s = wfib(h, 0) + wfib(h, 1);
    sing.atlas.charts = {"U", "V"};
    sing.atlas.transitions = {{"U", "V", make_chart_map(h, h, id, {s, s})}};
    ValidationReport r3 = validate_tower(sing);
    REQUIRE_FALSE(r3.pass());
    CHECK(r3.failures()[0].check == "level-block");
}

TEST_CASE("height-zero tower is trivially filterable") {
    FramePtr f = make_frame(1, {{"x", false}}, {}, Weight({0}));
    std::vector<BaseFunction> id = {BaseFunction::variable(1, 0)};
    FilteredBundleSpec b;
    b.name = "bare";
    b.frame = f;
    b.atlas.charts = {"U", "V"};
    b.atlas.transitions = {{"U", "V", make_chart_map(f, f, id, {})},
                           {"V", "U", make_chart_map(f, f, id, {})}};
    b.atlas.overlaps = {{"U", "V"}};
    REQUIRE(validate_bundle(b).pass());
    FilterabilityReport rep = check_filterable_atlas(tower_of(b));
    CHECK(rep.pass());
    REQUIRE(rep.induced.has_value());
    CHECK(rep.induced->atlas == b.atlas);
}

TEST_CASE("composite overlaps keep a passing verdict") {
    FilteredBundleSpec b = fixtures::three_chart(); // U -> W declared as the composite
    FilterabilityReport rep = check_filterable_atlas(tower_of(b));
    CHECK(rep.pass());
    REQUIRE(rep.induced.has_value());
    CHECK(rep.induced->atlas == b.atlas);
}
