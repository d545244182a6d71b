#include <doctest.h>

#include <cmath>
#include <random>

#include "nlsl2/roots.hpp"

using namespace nlsl2::roots;
using doctest::Approx;

namespace {

std::vector<double> from_roots(const std::vector<double>& roots) {
    std::vector<double> c{1.0};
    for (double z : roots) {
        std::vector<double> n(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            n[k + 1] += c[k];
            n[k] -= z * c[k];
        }
        c = n;
    }
    return c;
}

}  // namespace

TEST_CASE("polynomial_real_roots on products of known factors") {
    const std::vector<double> want{-3.5, -1.0, 0.25, 2.0, 4.75};
    const auto got = polynomial_real_roots(from_roots(want));
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(got[i] == Approx(want[i]).epsilon(1e-10));
}

TEST_CASE("polynomial_real_roots skips complex pairs and finds double roots") {
    // (x^2 + 1)(x - 2)
    auto r = polynomial_real_roots(std::vector<double>{-2.0, 1.0, -2.0, 1.0});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == Approx(2.0));
    // (x - 1)^2 (x + 2)
    r = polynomial_real_roots(from_roots({1.0, 1.0, -2.0}));
    REQUIRE(r.size() == 2);
    CHECK(r[0] == Approx(-2.0));
    CHECK(r[1] == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("polynomial_real_roots restricted to an interval") {
    const auto r = polynomial_real_roots(from_roots({-2.0, 0.5, 3.0}), 0.0, 2.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == Approx(0.5));
}

TEST_CASE("cauchy bound contains every root") {
    const auto c = from_roots({-7.0, 0.1, 6.5});
    const double b = cauchy_bound(c);
    CHECK(b >= 7.0);
}

TEST_CASE("scan_roots resolves a close root pair and a tangency") {
    // (x - 0.3)(x - 0.3 - 1e-5)(x + 0.7)^2 on a coarse grid
    auto g = [](double x) { return (x - 0.3) * (x - 0.30001) * (x + 0.7) * (x + 0.7); };
    auto dg = [&](double x) { return (g(x + 1e-7) - g(x - 1e-7)) / 2e-7; };
    ScanOptions opt;
    opt.uniform_intervals = 16;
    const auto r = scan_roots(g, dg, {}, -2.0, 2.0, opt);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == Approx(-0.7).epsilon(1e-6));
    CHECK(r[1] == Approx(0.3).epsilon(1e-9));
    CHECK(r[2] == Approx(0.30001).epsilon(1e-9));
}

TEST_CASE("property: random polynomials against their constructed roots") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> z(-5.0, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> want;
        for (int k = 0; k < 6; ++k) want.push_back(z(rng));
        std::sort(want.begin(), want.end());
        bool separated = true;
        for (std::size_t k = 1; k < want.size(); ++k) separated = separated && want[k] - want[k - 1] > 1e-3;
        if (!separated) continue;
        const auto got = polynomial_real_roots(from_roots(want));
        REQUIRE(got.size() == want.size());
        for (std::size_t k = 0; k < want.size(); ++k) CHECK(std::abs(got[k] - want[k]) < 1e-8);
    }
}
