#include <catch2/catch_amalgamated.hpp>

#include <filtra/bundle.hpp>
#include <filtra/invert.hpp>

#include "support/fixtures.hpp"
#include "support/naive_poly.hpp"

using namespace filtra;
using fixtures::wbase;
using fixtures::wfib;

TEST_CASE("hand-checked two-chart bundle validates") {
    FilteredBundleSpec b = fixtures::two_filtered();
    ValidationReport rep = validate_bundle(b);
    INFO(rep.summary());
    CHECK(rep.pass());
    // every advertised check kind actually fired
    bool saw_degree = false, saw_block = false, saw_inverse = false;
    for (const auto& f : rep.findings) {
        saw_degree |= f.check == "degree-respect";
        saw_block |= f.check == "linear-block";
        saw_inverse |= f.check == "inverse-pair";
    }
    CHECK(saw_degree);
    CHECK(saw_block);
    CHECK(saw_inverse);
}

TEST_CASE("weight-raising rule is flagged per coordinate") {
    FramePtr f = fixtures::two_filtered_frame();
    // Y' = Z puts a weight-2 term into a weight-1 slot
    ChartMap bad = make_chart_map(f, f, {BaseFunction::variable(1, 0)},
                                  {wfib(f, 1), wfib(f, 1)});
    FilteredBundleSpec b;
    b.name = "bad";
    b.frame = f;
    b.atlas.charts = {"U", "V"};
    b.atlas.transitions = {{"U", "V", bad}};
    ValidationReport rep = validate_bundle(b);
    CHECK_FALSE(rep.pass());
    int degree_failures = 0;
    for (const auto& fd : rep.failures())
        if (fd.check == "degree-respect")
            ++degree_failures;
    CHECK(degree_failures == 1); // only the Y slot, the Z slot is fine
}

TEST_CASE("singular weight block is flagged even when degrees respect") {
    FramePtr f = make_frame(1, {{"x", false}},
                            {{"Y", Weight({1})}, {"W", Weight({1})}}, Weight({1}));
    // both rules equal Y + W: degree fine, block determinant zero
    WeightedPolynomial s = wfib(f, 0) + wfib(f, 1);
    ChartMap m = make_chart_map(f, f, {BaseFunction::variable(1, 0)}, {s, s});
    FilteredBundleSpec b;
    b.name = "sing";
    b.frame = f;
    b.atlas.charts = {"U", "V"};
    b.atlas.transitions = {{"U", "V", m}};
    ValidationReport rep = validate_bundle(b);
    CHECK_FALSE(rep.pass());
    bool block_failed = false;
    for (const auto& fd : rep.failures())
        if (fd.check == "linear-block")
            block_failed = true;
    CHECK(block_failed);
}

TEST_CASE("declared cocycle triple holds and a perturbation is caught") {
    FilteredBundleSpec b = fixtures::three_chart();
    ValidationReport rep = validate_bundle(b);
    INFO(rep.summary());
    CHECK(rep.pass());

    // nudge the direct U -> W rule by a degree-legal constant
    for (auto& t : b.atlas.transitions)
        if (t.source_chart == "U" && t.target_chart == "W")
            t.map.fiber_rules[0] =
                t.map.fiber_rules[0] + WeightedPolynomial::constant(b.frame, 1);
    ValidationReport broken = validate_bundle(b);
    CHECK_FALSE(broken.pass());
    for (const auto& fd : broken.failures())
        CHECK(fd.check == "cocycle"); // degree and blocks still pass
}

TEST_CASE("missing reverse direction is a structural finding, not a throw") {
    FilteredBundleSpec b = fixtures::two_filtered();
    b.atlas.transitions.pop_back(); // drop V -> U
    ValidationReport rep = validate_bundle(b);
    CHECK_FALSE(rep.pass());
    REQUIRE(rep.failures().size() == 1);
    CHECK(rep.failures()[0].check == "atlas-shape");
}

TEST_CASE("composition agrees with a plain flattened evaluation") {
    FramePtr f = fixtures::two_filtered_frame();
    ChartMap fwd = fixtures::two_filtered_forward(f);
    ChartMap bwd = fixtures::two_filtered_backward(f);
    ChartMap round = compose(fwd, bwd);
    CHECK(round == identity_chart_map(f));

    // flatten U -> V through a naive substitution over [x, Y, Z]
    naive::Poly zrule(3);
    zrule.put({0, 0, 1}, Rational(3));
    zrule.put({0, 2, 0}, Rational(1));
    zrule.put({1, 1, 0}, Rational(1));
    naive::Poly yrule(3);
    yrule.put({0, 1, 0}, Rational(2));
    yrule.put({1, 0, 0}, Rational(1));
    naive::Poly xrule = naive::Poly::variable(3, 0);
    // compose with the backward rules, also flattened
    naive::Poly yb(3), zb(3);
    yb.put({0, 1, 0}, Rational(1, 2));
    yb.put({1, 0, 0}, Rational(-1, 2));
    zb.put({0, 0, 1}, Rational(1, 3));
    zb.put({0, 2, 0}, Rational(-1, 12));
    zb.put({2, 0, 0}, Rational(1, 12));
    naive::Poly yc = naive::substitute(yb, {xrule, yrule, zrule});
    naive::Poly zc = naive::substitute(zb, {xrule, yrule, zrule});
    CHECK(naive::eq(yc, naive::Poly::variable(3, 1)));
    CHECK(naive::eq(zc, naive::Poly::variable(3, 2)));
}

TEST_CASE("affine base inversion") {
    // x' = 2x + y + 1, y' = x + y
    std::vector<BaseFunction> rules = {
        BaseFunction::variable(2, 0) * BaseFunction::constant(2, 2) +
            BaseFunction::variable(2, 1) + BaseFunction::constant(2, 1),
        BaseFunction::variable(2, 0) + BaseFunction::variable(2, 1)};
    auto inv = try_invert_affine_base(2, rules);
    REQUIRE(inv.has_value());
    for (std::size_t a = 0; a < 2; ++a)
        CHECK(rules[a].substitute(*inv) == BaseFunction::variable(2, a));
    for (std::size_t b = 0; b < 2; ++b)
        CHECK((*inv)[b].substitute(rules) == BaseFunction::variable(2, b));

    // singular linear part
    std::vector<BaseFunction> sing = {
        BaseFunction::variable(2, 0) + BaseFunction::variable(2, 1),
        BaseFunction::variable(2, 0) + BaseFunction::variable(2, 1)};
    CHECK_FALSE(try_invert_affine_base(2, sing).has_value());

    // not affine
    std::vector<BaseFunction> quad = {
        BaseFunction::variable(2, 0) * BaseFunction::variable(2, 0),
        BaseFunction::variable(2, 1)};
    CHECK_FALSE(try_invert_affine_base(2, quad).has_value());
}

TEST_CASE("structured inversion recovers the hand-computed inverse") {
    FramePtr f = fixtures::two_filtered_frame();
    ChartMap fwd = fixtures::two_filtered_forward(f);
    std::vector<BaseFunction> base_inv = {BaseFunction::variable(1, 0)};
    ChartMap inv = invert_transition(f, fwd, base_inv);
    CHECK(inv == fixtures::two_filtered_backward(f));
}

TEST_CASE("structured inversion handles mixed blocks and nonconstant base") {
    // base x' = x + 1; fibres Y1, Y2 of weight 1 sharing a block, Z of weight 2
    FramePtr f = make_frame(
        1, {{"x", false}},
        {{"Y1", Weight({1})}, {"Y2", Weight({1})}, {"Z", Weight({2})}}, Weight({2}));
    std::vector<BaseFunction> base = {BaseFunction::variable(1, 0) +
                                      BaseFunction::constant(1, 1)};
    BaseFunction x = BaseFunction::variable(1, 0);
    WeightedPolynomial y1 = wfib(f, 0) + wfib(f, 1) * x + wbase(f, 0);
    WeightedPolynomial y2 = wfib(f, 1) * Rational(2);
    WeightedPolynomial z =
        wfib(f, 2) * Rational(5) + wfib(f, 0) * wfib(f, 1) + wbase(f, 0) * wfib(f, 0);
    ChartMap fwd = make_chart_map(f, f, base, {y1, y2, z});
    std::vector<BaseFunction> base_inv = {BaseFunction::variable(1, 0) -
                                          BaseFunction::constant(1, 1)};
    ChartMap inv = invert_transition(f, fwd, base_inv);
    CHECK(compose(fwd, inv) == identity_chart_map(f));
    CHECK(compose(inv, fwd) == identity_chart_map(f));
}

TEST_CASE("inversion rejects a wrong base inverse") {
    FramePtr f = fixtures::two_filtered_frame();
    ChartMap fwd = fixtures::two_filtered_forward(f);
    std::vector<BaseFunction> wrong = {BaseFunction::variable(1, 0) +
                                       BaseFunction::constant(1, 1)};
    CHECK_THROWS_AS(invert_transition(f, fwd, wrong), UnsupportedInput);
}
