#include <doctest.h>

#include <cmath>
#include <random>

#include "nlsl2/dynsys.hpp"
#include "nlsl2/error.hpp"
#include "oracles.hpp"

using namespace nlsl2;
using doctest::Approx;

namespace {

CharFunc quadratic_with_delta(double delta, double t, double r) {
    return CharFunc::quadratic(t, r, (delta - (r - 1) * (r - 1)) / (4 * t));
}

bool has_stable_cycle(const CharFunc& f, std::size_t d) {
    for (const auto& c : find_cycles(f, d))
        if (c.stability == Stability::Stable) return true;
    return false;
}

}  // namespace

TEST_CASE("fixed points") {
    auto fp = fixed_points(CharFunc::quadratic(0.1, 1, 1));
    REQUIRE(fp.size() == 2);
    CHECK(fp[0].points[0] == Approx(std::sqrt(10.0)));
    CHECK(fp[1].points[0] == Approx(-std::sqrt(10.0)));

    fp = fixed_points(CharFunc::linear(2, 1));
    REQUIRE(fp.size() == 1);
    CHECK(fp[0].points[0] == Approx(1.0));
    CHECK(fp[0].multiplier == Approx(2.0));
    CHECK(fp[0].stability == Stability::Unstable);

    CHECK(fixed_points(CharFunc::quadratic(1, 1, -1)).empty());
    CHECK_THROWS(fixed_points(CharFunc::polynomial({3.0})));
}

TEST_CASE("find_cycles on the worked two-cycle") {
    const auto f = CharFunc::quadratic(1, 1, 1.1);
    const auto cyc = find_cycles(f, 2);
    REQUIRE(cyc.size() == 1);
    CHECK(cyc[0].points[0] == Approx(-0.683772).epsilon(1e-6));
    CHECK(cyc[0].points[1] == Approx(-1.316228).epsilon(1e-6));
    CHECK(cyc[0].stability == Stability::Stable);
    CHECK(std::abs(cyc[0].multiplier) < 1.0);
}

TEST_CASE("find_cycles d = 1 matches fixed_points") {
    const auto f = CharFunc::quadratic(0.7, -0.2, 1.3);
    const auto a = find_cycles(f, 1);
    const auto b = fixed_points(f);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].points[0] == b[i].points[0]);
}

TEST_CASE("find_cycles: no two-cycle while delta1 < 0") {
    const auto f = CharFunc::quadratic(0.1, 1, 1);
    CHECK(find_cycles(f, 2).empty());
    CHECK(oracle::normal_form_cycle_points(normal_form(f), 2).empty());
}

TEST_CASE("find_cycles rejects periods above the cap") {
    const auto f = CharFunc::quadratic(1, 0, 1.9);
    CHECK(max_cycle_period(f) == 10);
    CHECK_THROWS_AS(find_cycles(f, 11), PreconditionError);
}

TEST_CASE("classify_delta") {
    auto c = classify_delta(CharFunc::quadratic(0.1, 1, 1));
    CHECK(c.delta == Approx(0.4).epsilon(1e-12));
    CHECK(c.regime == Regime::StableOneCycle);
    c = classify_delta(CharFunc::quadratic(1, 1, 1.1));
    CHECK(c.delta == Approx(4.4));
    CHECK(c.delta1 == Approx(0.4));
    CHECK(c.regime == Regime::StableTwoCycle);
    c = classify_delta(CharFunc::quadratic(1, 1, 0));
    CHECK(c.regime == Regime::TangentFixedPoint);
    REQUIRE(c.tangent_point);
    CHECK(*c.tangent_point == 0.0);
    CHECK(classify_delta(CharFunc::quadratic(1, 1, -1)).regime == Regime::NoFixedPoint);
    CHECK(classify_delta(CharFunc::quadratic(1, 1, 1.6)).regime == Regime::HigherCycles);
    CHECK_THROWS(classify_delta(CharFunc::linear(2, 1)));
    CHECK_THROWS(classify_delta(CharFunc::quadratic(-1, 1, 1)));
}

TEST_CASE("normal_form") {
    CHECK(normal_form(CharFunc::quadratic(1, 1, 1)) == Approx(-0.75));
    CHECK(normal_form(CharFunc::quadratic(0.1, 1, 1)) == Approx(0.15));
    CHECK(normal_form(CharFunc::quadratic(1, 1, 1.5)) == Approx(-1.25));
}

TEST_CASE("property: normal form c equals (1 - delta)/4") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> t(0.05, 3.0), r(-3.0, 3.0), s(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const auto f = CharFunc::quadratic(t(rng), r(rng), s(rng));
        const auto cls = classify_delta(f);
        CHECK(std::abs(normal_form(f) - (1 - cls.delta) / 4) < 1e-12 * std::max(1.0, std::abs(cls.delta)));
        CHECK(cls.delta - cls.delta1 == Approx(4.0).epsilon(1e-12));
    }
}

TEST_CASE("allowed_region") {
    auto reg = allowed_region(CharFunc::quadratic(0.1, 1, 1));
    REQUIRE(reg);
    CHECK(reg->low == Approx(-3.16228).epsilon(1e-6));
    CHECK(reg->high == Approx(3.16228).epsilon(1e-6));
    CHECK(reg->exhaustive);

    reg = allowed_region(CharFunc::quadratic(1, 1, 1.1));
    REQUIRE(reg);
    CHECK(reg->low == Approx(-0.683772).epsilon(1e-6));
    CHECK(reg->high == Approx(1.04881).epsilon(1e-6));
    CHECK(reg->cycle_period == 2);

    CHECK_FALSE(allowed_region(CharFunc::quadratic(1, 1, -1)));

    // delta = 6.2 carries an attracting 4-cycle
    reg = allowed_region(quadratic_with_delta(6.2, 1, 1));
    REQUIRE(reg);
    CHECK(reg->cycle_period == 4);
    CHECK_FALSE(reg->exhaustive);
}

TEST_CASE("stable two-cycle exists exactly for 4 < delta < 6") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> t(0.2, 2.0), r(-2.0, 2.0);
    for (double delta : {3.9, 4.1, 5.9, 6.1}) {
        for (int k = 0; k < 4; ++k) {
            const auto f = quadratic_with_delta(delta, t(rng), r(rng));
            const bool expect = delta > 4 && delta < 6;
            CHECK_MESSAGE(has_stable_cycle(f, 2) == expect, "delta = " << delta);
        }
    }
}

TEST_CASE("property: two-cycles against the closed form and the chain rule") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> t(0.1, 2.0), r(-2.0, 2.0), delta(4.05, 9.0);
    for (int i = 0; i < 100; ++i) {
        const double tv = t(rng), rv = r(rng);
        const auto f = quadratic_with_delta(delta(rng), tv, rv);
        const auto want = oracle::two_cycle(tv, rv, f.s());
        const auto got = find_cycles(f, 2);
        REQUIRE(got.size() == 1);
        REQUIRE(want.size() == 2);
        CHECK(got[0].points[0] == Approx(want[0]).epsilon(1e-9));
        CHECK(got[0].points[1] == Approx(want[1]).epsilon(1e-9));
        const double chain = derivative(f, want[0]) * derivative(f, want[1]);
        CHECK(std::abs(got[0].multiplier - chain) < 1e-8);
    }
}

TEST_CASE("property: cycles agree with an independent scan of the normal form") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> t(0.2, 2.0), r(-2.0, 2.0);
    for (double c : {0.1, -0.5, -1.1, -1.3, -1.5, -1.77, -1.9}) {
        const double tv = t(rng), rv = r(rng);
        // choose s so that the normal-form parameter is c
        const auto f = CharFunc::quadratic(tv, rv, (0.5 * rv - 0.25 * rv * rv - c) / tv);
        for (int d = 1; d <= 6; ++d) {
            const auto ys = oracle::normal_form_cycle_points(c, d, 400000);
            std::vector<double> want;
            for (double y : ys) want.push_back((y - 0.5 * rv) / tv);
            std::sort(want.begin(), want.end());
            std::vector<double> got;
            for (const auto& cyc : find_cycles(f, static_cast<std::size_t>(d))) {
                CHECK(cyc.points.size() == static_cast<std::size_t>(d));
                CHECK(*std::max_element(cyc.points.begin(), cyc.points.end()) == cyc.points.front());
                for (std::size_t k = 0; k < cyc.points.size(); ++k) {
                    const double next = cyc.points[(k + 1) % cyc.points.size()];
                    CHECK(std::abs(eval(f, cyc.points[k]) - next) < 1e-10 * std::max(1.0, std::abs(next)));
                }
                got.insert(got.end(), cyc.points.begin(), cyc.points.end());
            }
            std::sort(got.begin(), got.end());
            REQUIRE_MESSAGE(got.size() == want.size(), "c = " << c << " d = " << d);
            for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - want[k]) < 1e-8);
        }
    }
}

TEST_CASE("high periods in the chaotic regime") {
    // c = -1.9: count prime-period points against the brute-force scan
    const double c = -1.9;
    const auto f = CharFunc::quadratic(1, 0, -c);
    for (int d : {7, 8}) {
        const auto want = oracle::normal_form_cycle_points(c, d, 4000000);
        std::size_t n = 0;
        for (const auto& cyc : find_cycles(f, static_cast<std::size_t>(d))) n += cyc.points.size();
        CHECK_MESSAGE(n == want.size(), "d = " << d);
    }
}

TEST_CASE("cobweb_trace") {
    const auto seg = cobweb_trace(CharFunc::linear(1, 1), 2.0, 5);
    REQUIRE(seg.size() == 10);
    CHECK(seg.front().kind == 'V');
    CHECK(seg.front().x_start == 2.0);
    CHECK(seg.front().y_start == 2.0);
    for (std::size_t i = 0; i < seg.size(); ++i) CHECK(seg[i].kind == (i % 2 == 0 ? 'V' : 'H'));
    CHECK(seg.back().x_end == -3.0);
    CHECK(seg.back().y_end == -3.0);

    CHECK(cobweb_trace(CharFunc::linear(1, 1), 2.0, 0).empty());

    const auto fixed = cobweb_trace(CharFunc::linear(2, 1), 1.0, 4);
    for (const auto& s : fixed) {
        CHECK(s.x_start == s.x_end);
        CHECK(s.y_start == s.y_end);
    }
}
