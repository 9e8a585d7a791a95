// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "alpharing/kernel.hpp"
#include "oracles.hpp"

using namespace alpharing;
namespace o = alpharing::oracle;

namespace
{
constexpr double kPi = std::numbers::pi;

double rel(double a, long double b) { return double(std::abs((a - b) / b)); }
} // namespace

TEST_SUITE("kernel")
{
    TEST_CASE("values at the origin")
    {
        CHECK(rel(kernel::f(0), o::f_series(0)) <= 1e-15);
        CHECK(kernel::f(0) == doctest::Approx(-1 / (8 * kPi)).epsilon(1e-15));
        CHECK(rel(kernel::f_prime(0), o::f_prime_series(0)) <= 1e-15);
        CHECK(kernel::f_prime(0) == doctest::Approx(1 / (12 * kPi)).epsilon(1e-15));
        const Alpha a(0.37);
        CHECK(rel(kernel::green_alpha(0, a), 1 / (4 * o::kPi * 0.37L)) <= 1e-15);
    }

    TEST_CASE("f against extended-precision oracles")
    {
        for (double z : {1e-8, 1e-4, 3e-3, 9.99e-3, 1e-2, 1.01e-2, 0.1, 0.5, 1.0, 2.0, 3.5})
        {
            CAPTURE(z);
            CHECK(rel(kernel::f(z), o::f_series(z)) <= 1e-13);
        }
        for (double z : {0.5, 1.0, 5.0, 20.0, 49.0, 50.0, 51.0, 200.0, 1e4})
        {
            CAPTURE(z);
            CHECK(rel(kernel::f(z), o::f_direct(z)) <= 1e-14);
        }
    }

    TEST_CASE("f_prime against extended-precision oracles")
    {
        for (double z : {1e-6, 1e-3, 0.1, 0.49, 0.5, 0.51, 1.0, 2.0, 3.0})
        {
            CAPTURE(z);
            CHECK(rel(kernel::f_prime(z), o::f_prime_series(z)) <= 1e-12);
        }
        // Closed form of f' in long double.
        auto fp = [](long double z) {
            return (2 - (2 + z * (2 + z)) * std::exp(-z)) / (4 * o::kPi * z * z * z);
        };
        for (double z : {3.0, 10.0, 30.0, 60.0, 500.0})
        {
            CAPTURE(z);
            CHECK(rel(kernel::f_prime(z), fp(z)) <= 1e-12);
        }
        CHECK(rel(kernel::f_prime(30), 1 / (2 * o::kPi * 27000)) <= 1e-10);
    }

    TEST_CASE("branch crossovers are continuous")
    {
        for (double zc : {kernel::kSeriesSwitch, kernel::kFarSwitch})
        {
            const double lo = std::nextafter(zc, 0.0);
            CAPTURE(zc);
            CHECK(rel(kernel::f(lo), o::f_direct(lo)) <= 1e-14);
            CHECK(rel(kernel::f(zc), o::f_direct(zc)) <= 1e-14);
            CHECK(rel(kernel::f(lo), kernel::f(zc)) <= 1e-14);
        }
        const double zc = kernel::kPrimeSeriesSwitch;
        CHECK(rel(kernel::f_prime(std::nextafter(zc, 0.0)), kernel::f_prime(zc)) <= 1e-14);
    }

    TEST_CASE("f_prime is the derivative of f")
    {
        for (double z : {0.3, 1.5, 4.0, 12.0})
        {
            const double h = 1e-5 * z;
            const double fd = (kernel::f(z + h) - kernel::f(z - h)) / (2 * h);
            CAPTURE(z);
            CHECK(rel(fd, kernel::f_prime(z)) <= 1e-8);
        }
    }

    TEST_CASE("far field decays like the classical kernel")
    {
        for (double z : {1.0, 5.0, 20.0, 40.0, 50.0})
        {
            // 4 pi z^2 f + 1 = (1 + z) e^{-z}, compared absolutely.
            const double lhs = 4 * kPi * z * z * kernel::f(z) + 1;
            CAPTURE(z);
            CHECK(std::abs(lhs - double((1 + z) * std::exp(-(long double)z))) <= 1e-12);
            CHECK(kernel::f(z) < 0);
        }
    }

    TEST_CASE("negative arguments are rejected")
    {
        CHECK_THROWS_AS(kernel::f(-1e-300), std::domain_error);
        CHECK_THROWS_AS(kernel::f_prime(-1.0), std::domain_error);
        CHECK_THROWS_AS(kernel::f_alpha(-1.0, Alpha(1.0)), std::domain_error);
    }

    TEST_CASE("alpha must be a positive finite number")
    {
        CHECK_THROWS_AS(Alpha(0.0), std::invalid_argument);
        CHECK_THROWS_AS(Alpha(-0.1), std::invalid_argument);
        CHECK_THROWS_AS(Alpha(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
        CHECK_THROWS_AS(Alpha(double(INFINITY)), std::invalid_argument);
        CHECK(Alpha(0.25).value() == 0.25);
    }

    TEST_CASE("scaled kernels")
    {
        for (double a : {0.01, 0.1, 1.0, 3.0})
        {
            const Alpha al(a);
            CAPTURE(a);
            CHECK(kernel::f_alpha(0, al) == doctest::Approx(-1 / (8 * kPi * a * a)).epsilon(1e-15));
            for (double s : {0.5 * a, 2 * a, 20 * a})
            {
                CHECK(kernel::f_alpha(s, al) == doctest::Approx(kernel::f(s / a) / (a * a)).epsilon(1e-15));
                const long double x = s / a;
                const long double g = o::green_series_unit(x) / (4 * o::kPi * a);
                if (x < 5)
                    CHECK(rel(kernel::green_alpha(s, al), g) <= 1e-12);
                // d/ds G_alpha = f_alpha.
                const double h = 1e-5 * s;
                const double fd =
                    (kernel::green_alpha(s + h, al) - kernel::green_alpha(s - h, al)) / (2 * h);
                CHECK(rel(fd, kernel::f_alpha(s, al)) <= 1e-7);
            }
            // G_alpha tends to the Newtonian 1/(4 pi s).
            const double s = 40 * a;
            CHECK(rel(kernel::green_alpha(s, al), 1 / (4 * o::kPi * s)) <= 1e-15);
        }
    }

    TEST_CASE("bound_scan constants")
    {
        const auto k = kernel::bound_scan();
        CHECK(k.m0 == doctest::Approx(1 / (8 * kPi)).epsilon(1e-14));
        CHECK(k.argmax_m0 == 0);
        CHECK(k.mf1 == doctest::Approx(1 / (12 * kPi)).epsilon(1e-14));
        CHECK(k.argmax_mf1 == 0);
        CHECK(k.argmax_m1 > 0.5);
        CHECK(k.argmax_m1 < 5);
        // m1 against a brute fine scan of z |f(z)| in long double.
        long double best = 0;
        for (int i = 1; i <= 200000; ++i)
        {
            const long double z = i * 1e-4L;
            best = std::max(best, -z * o::f_direct(z));
        }
        CHECK(rel(k.m1, best) <= 1e-8);
        CHECK(k.refinement_delta >= 0);
        CHECK(k.refinement_delta < 1e-6);

        const auto fine = kernel::bound_scan(4000);
        CHECK(std::abs(fine.m1 - k.m1) <= 1e-6 * k.m1);
        CHECK_THROWS_AS(kernel::bound_scan(5), std::invalid_argument);
    }
}
