#include <catch2/catch_amalgamated.hpp>

#include <filtra/weighted_poly.hpp>

#include "support/naive_poly.hpp"
#include "support/rng.hpp"

using namespace filtra;

namespace {

FramePtr yz_frame() {
    return make_frame(1, {{"x"}}, {{"Y", Weight({1})}, {"Z", Weight({2})}});
}

WeightedPolynomial random_wp(testsupport::Rng& rng, const FramePtr& fr, int max_monoms = 4,
                             bool polynomial_coeffs = true) {
    WeightedPolynomial p(fr);
    int n = rng.uniform(0, max_monoms);
    for (int t = 0; t < n; ++t) {
        WeightedPolynomial::Monomial m(fr->n_fibers(), 0);
        for (std::size_t j = 0; j < fr->n_fibers(); ++j)
            m[j] = rng.uniform(0, 2);
        BaseFunction c = polynomial_coeffs
                             ? BaseFunction::from_poly(rng.poly(fr->n_base(), 2, 2))
                             : rng.base_function(fr->n_base());
        p.add_term(m, c);
    }
    return p;
}

// Flatten a weighted polynomial with polynomial coefficients into a naive
// polynomial over [base..., fibers...].
naive::Poly flatten(const WeightedPolynomial& p) {
    std::size_t nb = p.frame()->n_base();
    std::size_t nf = p.frame()->n_fibers();
    naive::Poly r;
    r.n = nb + nf;
    for (const auto& [m, c] : p.terms()) {
        REQUIRE(c.is_polynomial());
        for (const auto& [bm, q] : c.num().terms()) {
            std::vector<int> key(nb + nf, 0);
            for (std::size_t i = 0; i < nb; ++i)
                key[i] = bm[i];
            for (std::size_t j = 0; j < nf; ++j)
                key[nb + j] = m[j];
            r.put(key, q / c.den().constant_value());
        }
    }
    return r;
}

} // namespace

TEST_CASE("weights of terms ignore base factors", "[weighted-poly]") {
    auto fr = yz_frame();
    auto x = WeightedPolynomial::base_variable(fr, 0);
    auto Y = WeightedPolynomial::fiber_variable(fr, 0);
    auto Z = WeightedPolynomial::fiber_variable(fr, 1);
    REQUIRE(*(x * Y).degree() == Weight({1}));
    REQUIRE(*(Y * Y).degree() == Weight({2}));
    REQUIRE(*(x * x * Z).degree() == Weight({2}));
    REQUIRE_FALSE(WeightedPolynomial(fr).degree().has_value());
}

TEST_CASE("homogeneous component keeps exact weight only", "[weighted-poly]") {
    auto fr = yz_frame();
    auto x = WeightedPolynomial::base_variable(fr, 0);
    auto Y = WeightedPolynomial::fiber_variable(fr, 0);
    auto Z = WeightedPolynomial::fiber_variable(fr, 1);
    auto p = Y * Y + Z + x * Y;
    REQUIRE(p.homogeneous_component(Weight({2})) == Y * Y + Z);
    REQUIRE(p.homogeneous_component(Weight({1})) == x * Y);
    REQUIRE(p.homogeneous_component(Weight({3})).is_zero());
    // Idempotence
    auto h = p.homogeneous_component(Weight({2}));
    REQUIRE(h.homogeneous_component(Weight({2})) == h);
}

TEST_CASE("ring operations agree with the flattened oracle", "[weighted-poly]") {
    testsupport::Rng rng(77);
    auto fr = yz_frame();
    for (int round = 0; round < 40; ++round) {
        auto p = random_wp(rng, fr);
        auto q = random_wp(rng, fr);
        REQUIRE(naive::eq(flatten(p * q), naive::mul(flatten(p), flatten(q))));
        REQUIRE(naive::eq(flatten(p + q), naive::add(flatten(p), flatten(q))));
        REQUIRE(naive::eq(flatten(p - q), naive::sub(flatten(p), flatten(q))));
    }
}

TEST_CASE("multiplication respects the filtration", "[weighted-poly]") {
    testsupport::Rng rng(88);
    auto fr = yz_frame();
    for (int round = 0; round < 60; ++round) {
        auto p = random_wp(rng, fr, 4, false);
        auto q = random_wp(rng, fr, 4, false);
        auto prod = p * q;
        if (p.is_zero() || q.is_zero() || prod.is_zero())
            continue;
        REQUIRE(prod.degree()->leq(*p.degree() + *q.degree()));
        auto sum = p + q;
        if (!sum.is_zero())
            REQUIRE(sum.degree()->leq(componentwise_max(*p.degree(), *q.degree())));
    }
}

TEST_CASE("substitution expands exactly", "[weighted-poly]") {
    auto fr = yz_frame();
    auto x = WeightedPolynomial::base_variable(fr, 0);
    auto Y = WeightedPolynomial::fiber_variable(fr, 0);
    // Y -> 2Y + x substituted into Y^2 gives 4Y^2 + 4xY + x^2.
    std::vector<BaseFunction> base_images = {BaseFunction::variable(1, 0)};
    std::vector<WeightedPolynomial> fiber_images = {
        Rational(2) * Y + x, WeightedPolynomial::fiber_variable(fr, 1)};
    auto img = (Y * Y).substitute(base_images, fiber_images, fr);
    REQUIRE(img == Rational(4) * Y * Y + Rational(4) * x * Y + x * x);
}

TEST_CASE("substitution agrees with the flattened oracle", "[weighted-poly]") {
    testsupport::Rng rng(4031);
    auto fr = yz_frame();
    std::vector<BaseFunction> base_images = {BaseFunction::variable(1, 0)};
    for (int round = 0; round < 25; ++round) {
        auto p = random_wp(rng, fr);
        std::vector<WeightedPolynomial> fiber_images = {random_wp(rng, fr, 2),
                                                        random_wp(rng, fr, 2)};
        auto lib = p.substitute(base_images, fiber_images, fr);
        std::vector<naive::Poly> images;
        images.push_back(naive::Poly::variable(3, 0)); // x
        images.push_back(flatten(fiber_images[0]));
        images.push_back(flatten(fiber_images[1]));
        REQUIRE(naive::eq(flatten(lib), naive::substitute(flatten(p), images)));
    }
}

TEST_CASE("fiber partial lowers degree by at least the fiber weight", "[weighted-poly]") {
    testsupport::Rng rng(11);
    auto fr = yz_frame();
    auto x = WeightedPolynomial::base_variable(fr, 0);
    auto Y = WeightedPolynomial::fiber_variable(fr, 0);
    auto Z = WeightedPolynomial::fiber_variable(fr, 1);
    REQUIRE((Y * Y * Z).fiber_partial(1) == Y * Y);
    REQUIRE((Y * Y * Z).fiber_partial(0) == Rational(2) * Y * Z);
    REQUIRE((x * Z).fiber_partial(0).is_zero());
    for (int round = 0; round < 40; ++round) {
        auto p = random_wp(rng, fr);
        for (std::size_t j = 0; j < 2; ++j) {
            auto d = p.fiber_partial(j);
            if (d.is_zero() || p.is_zero())
                continue;
            auto bound = *p.degree();
            auto wj = fr->fibers()[j].weight;
            REQUIRE((*d.degree() + wj).leq(bound));
        }
    }
}

TEST_CASE("base partial differentiates coefficients", "[weighted-poly]") {
    auto fr = yz_frame();
    auto x = WeightedPolynomial::base_variable(fr, 0);
    auto Y = WeightedPolynomial::fiber_variable(fr, 0);
    REQUIRE((x * x * Y).base_partial(0) == Rational(2) * x * Y);
}

TEST_CASE("frame mismatch is rejected", "[weighted-poly]") {
    auto fr = yz_frame();
    auto other = make_frame(1, {{"x"}}, {{"Y", Weight({1})}});
    auto p = WeightedPolynomial::fiber_variable(fr, 0);
    auto q = WeightedPolynomial::fiber_variable(other, 0);
    REQUIRE_THROWS_AS(p + q, FrameMismatch);
    REQUIRE_THROWS_AS(p * q, FrameMismatch);
}

TEST_CASE("base extraction", "[weighted-poly]") {
    auto fr = yz_frame();
    auto x = WeightedPolynomial::base_variable(fr, 0);
    auto Y = WeightedPolynomial::fiber_variable(fr, 0);
    REQUIRE((x * x).is_base());
    REQUIRE((x * x).as_base() == BaseFunction::variable(1, 0).pow(2));
    REQUIRE_FALSE((x * Y).is_base());
    REQUIRE_THROWS_AS((x * Y).as_base(), UnsupportedInput);
    REQUIRE(WeightedPolynomial(fr).as_base() == BaseFunction(1));
}

TEST_CASE("printing is deterministic and weight-graded", "[weighted-poly]") {
    auto fr = yz_frame();
    auto x = WeightedPolynomial::base_variable(fr, 0);
    auto Y = WeightedPolynomial::fiber_variable(fr, 0);
    auto Z = WeightedPolynomial::fiber_variable(fr, 1);
    auto p = x * Y + Rational(3) * Z + Y * Y - x * x;
    REQUIRE(p.to_string() == "Y^2 + 3*Z + x*Y - x^2");
    auto frac = WeightedPolynomial::from_base(
        fr, BaseFunction(BasePolynomial::constant(1, 1), BasePolynomial::variable(1, 0)));
    REQUIRE((frac * Z).to_string() == "(1)/(x)*Z");
}
