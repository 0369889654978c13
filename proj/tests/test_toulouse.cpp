#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "usc/error.hpp"
#include "usc/toulouse.hpp"

using namespace usc;

TEST_SUITE("toulouse") {

TEST_CASE("w parameter") {
    CHECK(w_param({1.0, 1e8, 1.0}) == doctest::Approx(std::numbers::pi / 4e8));
    CHECK_THROWS_AS(w_param({1.0, 1e8, 0.0}), ValidationError);
    CHECK_THROWS_AS(s_toulouse(0.0), ValidationError);
}

TEST_CASE("amplitude is sub-unitary and tends to one at both ends") {
    for (int i = 0; i <= 400; ++i) {
        const double w = std::pow(10.0, -6.0 + 12.0 * i / 400.0);
        const auto s = s_toulouse(w);
        CHECK(std::abs(s) <= 1.0 + 1e-12);
        const double p1 = elastic_probability(s);
        CHECK(p1 >= 0.5);
        CHECK(p1 <= 1.0 + 1e-12);
    }
    CHECK(std::abs(s_toulouse(1e6) - 1.0) <= 1e-5);
    CHECK(std::abs(s_toulouse(1e-8) - 1.0) <= 1e-5);
}

TEST_CASE("inelastic probability against high-precision values") {
    const std::pair<double, double> ref[] = {
        {1e-8, 6.28315939772363e-8}, {1e-4, 0.000622031536522127}, {1.0, 0.00369462948969846},
        {3.0, 1.30794983730366e-5},  {7.99, 4.17648223399253e-8},  {8.0, 4.14548562656198e-8},
        {20.0, 1.72992710571467e-10}, {1e2, 1.11095239777615e-14}, {1e4, 1.1111110952381e-26},
    };
    for (const auto& [w, expected] : ref) {
        CAPTURE(w);
        CHECK(inelastic_probability(w) == doctest::Approx(expected).epsilon(1e-8));
    }
    for (double w : {1e-3, 0.3, 2.0}) CHECK(1.0 - elastic_probability(s_toulouse(w)) == doctest::Approx(inelastic_probability(w)).epsilon(1e-8));
    CHECK_THROWS_AS(inelastic_probability(0.0), ValidationError);
}

TEST_CASE("large-w series") {
    // s - 1 ~ -i/(4w) + O(w^-2) ... checked against the direct expression at moderate w
    const double w = 1e3;
    const auto s = s_toulouse(w);
    using namespace std::complex_literals;
    const std::complex<double> pref = 2.0i * w / (1.0 + 2.0i * w);
    const double angle = std::atan(1.0 / (2.0 * w)) + std::atan(w / (1.0 + 2.0 * w * w));
    const auto direct = 1.0 + pref * (2.0i * angle + std::log(w * w / (1.0 + w * w)));
    CHECK(std::abs(s - direct) <= 1e-12);
}

TEST_CASE("phase unwrapping") {
    const std::vector<double> raw{3.0, -3.0, -2.9, 3.1};
    const auto u = unwrap_phase(raw);
    CHECK(u[1] == doctest::Approx(-3.0 + 2.0 * std::numbers::pi));
    CHECK(u[3] == doctest::Approx(3.1));
    for (std::size_t i = 1; i < u.size(); ++i) CHECK(std::abs(u[i] - u[i - 1]) < std::numbers::pi);
}

TEST_CASE("comparison with the polaron curve") {
    const double wc = 1e8;
    const double scale = std::numbers::e / wc;
    std::vector<double> scan;
    for (int i = 0; i < 200; ++i) scan.push_back(scale * std::pow(10.0, -3.0 + 6.0 * i / 199.0));
    const auto cmp = compare_with_polaron_rwa(1.0, wc, scan);
    CHECK(cmp.delta_tilde == doctest::Approx(scale));
    for (const auto& p : cmp.points) {
        CHECK(p.R_rwa + p.T_rwa == doctest::Approx(1.0));
        CHECK(p.R_exact + p.T_exact == doctest::Approx(p.P1_exact));
    }
    const auto sc = compare_with_polaron_rwa(1.0, wc, scan, GapModel::SelfConsistent);
    CHECK(sc.delta_tilde > cmp.delta_tilde);
    std::vector<double> bad{2.0 * wc};
    CHECK_THROWS_AS(compare_with_polaron_rwa(1.0, wc, bad), ValidationError);
}

}
