#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "lingdetect/stats.hpp"

using namespace lingdetect;
using Catch::Matchers::ContainsSubstring;

// Reference W, t and p values computed with an independent implementation of
// the same published algorithms (Royston's AS R94 and the paired t test).

TEST_CASE("shapiro-wilk matches reference values", "[stats]") {
    {
        const auto r = shapiro_wilk({2.1, 3.4, 1.9, 4.2, 2.8, 3.1, 2.5, 3.9, 2.2, 3.0});
        CHECK(r.w == Catch::Approx(0.957686552338).margin(1e-9));
        CHECK(r.p_value == Catch::Approx(0.759205859643).margin(1e-6));
    }
    {
        const auto r = shapiro_wilk({0.5, 1.2, 0.8, 2.4, 3.1, 0.9, 1.5, 2.2, 1.1, 0.7,
                                     4.8, 1.9, 2.6, 1.4, 0.6, 3.3, 2.0, 1.6, 1.2, 2.9});
        CHECK(r.w == Catch::Approx(0.919231395721).margin(1e-9));
        CHECK(r.p_value == Catch::Approx(0.095767493918).margin(1e-6));
    }
    {
        const auto r = shapiro_wilk({1.0, 2.0, 4.0});
        CHECK(r.w == Catch::Approx(0.964285714286).margin(1e-9));
        CHECK(r.p_value == Catch::Approx(0.636886845029).margin(1e-6));
    }
    {
        const auto r = shapiro_wilk({12.4, 15.1, 9.8, 11.2, 14.6, 13.3,
                                     10.9, 12.8, 16.0, 11.7, 13.9, 12.1});
        CHECK(r.w == Catch::Approx(0.985981663377).margin(1e-9));
        CHECK(r.p_value == Catch::Approx(0.997659204081).margin(1e-6));
    }
    {
        const std::vector<double> e = {
            1.09793, 2.395641, 2.920032, 3.082235, 3.281415, 3.293912, 3.319687,
            3.351038, 3.372455, 3.638141, 3.668981, 3.975515, 4.143344, 4.18717,
            4.295733, 4.367515, 4.630275, 4.690941, 4.772105, 4.900148, 4.966398,
            5.132061, 5.135158, 5.233372, 5.255681, 5.437377, 5.447191, 5.464323,
            5.609434, 5.730888, 5.737502, 5.825465, 5.861642, 5.935019, 6.064618,
            6.086309, 6.231959, 6.301186, 6.357827, 6.486508, 6.500902, 6.555584,
            6.742858, 6.756901, 6.758796, 6.881129, 7.254482, 7.257945, 7.445083,
            9.283295};
        const auto r = shapiro_wilk(e);
        CHECK(r.w == Catch::Approx(0.984050490316).margin(1e-9));
        CHECK(r.p_value == Catch::Approx(0.730143811225).margin(1e-6));
    }
}

TEST_CASE("shapiro-wilk W is affine invariant", "[stats]") {
    std::vector<double> x = {2.1, 3.4, 1.9, 4.2, 2.8, 3.1, 2.5, 3.9, 2.2, 3.0};
    const auto base = shapiro_wilk(x);
    for (double& v : x) v = 3.5 * v + 11.0;
    const auto scaled = shapiro_wilk(x);
    CHECK(scaled.w == Catch::Approx(base.w).margin(1e-10));
    CHECK(scaled.p_value == Catch::Approx(base.p_value).margin(1e-8));
}

TEST_CASE("shapiro-wilk input validation", "[stats]") {
    CHECK_THROWS_WITH(shapiro_wilk({1.0, 2.0}), ContainsSubstring("3 <= n <= 50"));
    CHECK_THROWS_WITH(shapiro_wilk(std::vector<double>(51, 0.0)),
                      ContainsSubstring("3 <= n <= 50"));
    CHECK_THROWS_WITH(shapiro_wilk({2.0, 2.0, 2.0, 2.0}),
                      ContainsSubstring("zero-variance"));
}

TEST_CASE("paired t test matches reference values", "[stats]") {
    {
        const auto r = paired_t_test(
            {85.2, 90.1, 78.4, 92.3, 88.0, 76.5, 81.2, 89.9, 84.4, 91.0},
            {82.1, 88.4, 79.0, 90.2, 85.5, 77.8, 80.0, 88.1, 83.9, 89.5});
        CHECK(r.t == Catch::Approx(2.896206266248).margin(1e-9));
        CHECK(r.p_value == Catch::Approx(0.017704406831).margin(1e-9));
        CHECK(r.df == 9);
    }
    {
        const auto r = paired_t_test(
            {0.971, 0.968, 0.975, 0.962, 0.980, 0.973, 0.969, 0.977, 0.966, 0.974},
            {0.975, 0.971, 0.974, 0.970, 0.982, 0.978, 0.972, 0.979, 0.971, 0.976});
        CHECK(r.t == Catch::Approx(-4.337268747949).margin(1e-9));
        CHECK(r.p_value == Catch::Approx(0.001884970620).margin(1e-9));
    }
}

TEST_CASE("paired t test properties", "[stats]") {
    const std::vector<double> a = {1.2, 3.4, 2.2, 5.1, 4.4, 2.9};
    const std::vector<double> b = {1.0, 3.9, 2.0, 4.7, 4.9, 3.1};

    SECTION("antisymmetry") {
        const auto ab = paired_t_test(a, b);
        const auto ba = paired_t_test(b, a);
        CHECK(ab.t == Catch::Approx(-ba.t).margin(1e-12));
        CHECK(ab.p_value == Catch::Approx(ba.p_value).margin(1e-12));
    }
    SECTION("shift invariance of the difference") {
        std::vector<double> a2 = a, b2 = b;
        for (double& v : a2) v += 100.0;
        for (double& v : b2) v += 100.0;
        const auto base = paired_t_test(a, b);
        const auto shifted = paired_t_test(a2, b2);
        CHECK(shifted.t == Catch::Approx(base.t).margin(1e-9));
    }
    SECTION("identical samples give t=0, p=1") {
        const auto r = paired_t_test({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
        CHECK(r.t == 0.0);
        CHECK(r.p_value == 1.0);
        CHECK(r.df == 2);
    }
    SECTION("validation") {
        CHECK_THROWS_WITH(paired_t_test({1.0, 2.0}, {1.0}),
                          ContainsSubstring("length mismatch"));
        CHECK_THROWS_WITH(paired_t_test({1.0}, {2.0}),
                          ContainsSubstring("n >= 2"));
        CHECK_THROWS_WITH(paired_t_test({1.0, 2.0, 3.0}, {2.0, 3.0, 4.0}),
                          ContainsSubstring("zero variance"));
    }
}
