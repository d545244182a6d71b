#include <doctest.h>

#include <cmath>
#include <random>

#include "nlsl2/charfunc.hpp"
#include "nlsl2/error.hpp"
#include "nlsl2/qnumbers.hpp"

using namespace nlsl2;
using doctest::Approx;

TEST_CASE("eval on the worked points") {
    CHECK(eval(CharFunc::linear(1, 1), 2.0) == 1.0);
    CHECK(eval(CharFunc::linear(2, 1), 1.0) == 1.0);
    CHECK(eval(CharFunc::quadratic(0.1, 1, 1), 0.476105) == Approx(-0.501227).epsilon(1e-6));
}

TEST_CASE("eval rejects non-finite input") {
    const auto f = CharFunc::linear(1, 1);
    CHECK_THROWS_AS(eval(f, NAN), DomainError);
    CHECK_THROWS_AS(eval(f, INFINITY), DomainError);
}

TEST_CASE("quadratic requires t != 0") {
    CHECK_THROWS_AS(CharFunc::quadratic(0.0, 1, 1), DomainError);
    CHECK_NOTHROW(CharFunc::quadratic(-0.5, 1, 1));
}

TEST_CASE("low-degree polynomials agree with linear and quadratic forms") {
    const auto lin = CharFunc::linear(1.7, -0.3);
    const auto plin = CharFunc::polynomial({0.3, 1.7});
    const auto quad = CharFunc::quadratic(0.4, -1.2, 2.5);
    const auto pquad = CharFunc::polynomial({-2.5, -1.2, 0.4, 0.0});
    CHECK(lin.same_function(plin));
    CHECK(quad.same_function(pquad));
    CHECK(pquad.degree() == 2);
    for (double x = -7.0; x <= 7.0; x += 0.37) {
        CHECK(eval(lin, x) == eval(plin, x));
        CHECK(eval(quad, x) == eval(pquad, x));
    }
}

TEST_CASE("iterate") {
    const auto f = CharFunc::linear(1, 1);
    CHECK(iterate(f, 2.0, 5) == std::vector<double>{2, 1, 0, -1, -2, -3});
    CHECK(iterate(f, 2.5, 0) == std::vector<double>{2.5});
    const auto g = CharFunc::linear(2, 1);
    CHECK(iterate(g, 14.0 / 17.0, 4).back() == Approx(-31.0 / 17.0).epsilon(1e-14));
}

TEST_CASE("iterate reports the divergence index") {
    const auto f = CharFunc::quadratic(1, 0, -1);  // x^2 + 1
    try {
        iterate(f, 10.0, 20);
        FAIL("expected divergence");
    } catch (const DivergenceError& e) {
        // 10 -> 101 -> 10202 -> ~1.04e8 -> ~1.08e16
        CHECK(e.index() == 4);
        CHECK(std::abs(e.value()) > kEscapeBound);
    }
    const Orbit o = orbit(f, 10.0, 20);
    REQUIRE(o.escaped_at);
    CHECK(*o.escaped_at == 4);
    CHECK(o.values.size() == 5);
}

TEST_CASE("derivative") {
    CHECK(derivative(CharFunc::linear(-2.5, 3), 11.0) == -2.5);
    CHECK(derivative(CharFunc::linear(1, 1), 7.0) == 1.0);
    CHECK(derivative(CharFunc::quadratic(1, 1, 1.1), -0.683772) == Approx(-0.367544).epsilon(1e-6));
}

TEST_CASE("property: derivative matches a central difference") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coef(-2.0, 2.0), xs(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const auto f = CharFunc::polynomial({coef(rng), coef(rng), coef(rng), 0.2 * coef(rng)});
        const double x = xs(rng);
        const double h = 1e-6;
        const double fd = (eval(f, x + h) - eval(f, x - h)) / (2 * h);
        CHECK(std::abs(derivative(f, x) - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("property: iteration composes") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> t(-0.3, 0.3), r(-1.0, 1.0), s(-0.5, 0.5), x(-0.8, 0.8);
    std::uniform_int_distribution<int> n(0, 10);
    for (int i = 0; i < 200; ++i) {
        const auto f = CharFunc::quadratic(t(rng) == 0.0 ? 0.1 : t(rng), r(rng), s(rng));
        const double x0 = x(rng);
        const auto m = static_cast<std::size_t>(n(rng)), k = static_cast<std::size_t>(n(rng));
        const Orbit whole = orbit(f, x0, m + k);
        if (whole.escaped_at) continue;
        const double mid = iterate(f, x0, m).back();
        const double split = iterate(f, mid, k).back();
        CHECK(std::abs(whole.values.back() - split) <= 1e-10 * std::max(1.0, std::abs(split)));
    }
}

TEST_CASE("property: linear iterates follow the Gauss-number closed form") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> r(0.2, 2.0), s(-3.0, 3.0), x(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double rv = r(rng), sv = s(rng), x0 = x(rng);
        const auto seq = iterate(CharFunc::linear(rv, sv), x0, 12);
        for (std::size_t m = 0; m < seq.size(); ++m) {
            const double md = static_cast<double>(m);
            const double expect = std::pow(rv, md) * x0 - sv * gauss_number(md, rv);
            CHECK(std::abs(seq[m] - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
        }
    }
    const auto seq = iterate(CharFunc::linear(1, 0.75), 4.0, 9);
    for (std::size_t m = 0; m < seq.size(); ++m) CHECK(seq[m] == Approx(4.0 - 0.75 * m));
}
