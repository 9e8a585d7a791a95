// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "alpharing/profiles.hpp"
#include "alpharing/state.hpp"
#include "helpers.hpp"

using namespace alpharing;

namespace
{
constexpr double kPi = std::numbers::pi;

//! Int int g(r, z) 2 pi r dr dz by nested adaptive quadrature.
double profile_mass(const Profile& g, const Box& b)
{
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    return GK::integrate(
        [&](double r) {
            return 2 * kPi * r
                   * GK::integrate([&](double z) { return g(r, z); }, b.z_min, b.z_max, 10,
                                   1e-13);
        },
        b.r_min, b.r_max, 10, 1e-13);
}

double cloud_mass(const ParticleCloud& c)
{
    double s = 0;
    for (const auto& r : c.rings())
        s += r.weight();
    return s;
}
} // namespace

TEST_SUITE("state")
{
    TEST_CASE("zero profile gives an empty cloud")
    {
        GridSpec grid;
        const auto cloud = init_from_profile(make_profile("zero", {}), grid, Alpha(0.1));
        CHECK(cloud.empty());
        CHECK_THROWS_AS(lp_norm(cloud, 2), std::invalid_argument);
    }

    TEST_CASE("gaussian ring mass matches quadrature")
    {
        const double A = 2.0, R = 1.0, s = 0.1;
        const auto profile = make_profile("gaussian_ring",
                                          {{"amplitude", A}, {"radius", R}, {"sigma", s}});
        const Box box{R - 6 * s, R + 6 * s, -6 * s, 6 * s};
        const double exact = profile_mass(profile, box);
        CHECK(exact == doctest::Approx(2 * kPi * kPi * A * s * s * R).epsilon(1e-6));

        for (int n : {16, 32, 64})
        {
            const auto cloud = test::gaussian_ring_cloud(0.1, n, 16, A, R, s);
            const double err = std::abs(cloud_mass(cloud) - exact) / exact;
            CAPTURE(n);
            CHECK(err < 5e-3);
        }
        const auto c32 = test::gaussian_ring_cloud(0.1, 32, 16, A, R, s);
        const auto c64 = test::gaussian_ring_cloud(0.1, 64, 16, A, R, s);
        CHECK(std::abs(cloud_mass(c64) - cloud_mass(c32)) / cloud_mass(c64) < 1e-3);
    }

    TEST_CASE("support overflow is reported")
    {
        GridSpec grid;
        grid.box = {0.8, 1.2, -0.2, 0.2};
        grid.nr = grid.nz = 16;
        const auto profile = make_profile("gaussian_ring", {{"sigma", 0.2}});
        try
        {
            (void)init_from_profile(profile, grid, Alpha(0.1));
            FAIL("expected ProfileSupportError");
        }
        catch (const ProfileSupportError& e)
        {
            CHECK(e.overflow_fraction() > 1e-3);
            CHECK(e.overflow_fraction() < 1);
        }
    }

    TEST_CASE("grid and ring validation")
    {
        GridSpec grid;
        grid.n_theta = 7;
        CHECK_THROWS_AS(validate(grid), std::invalid_argument);
        grid.n_theta = 2;
        CHECK_THROWS_AS(validate(grid), std::invalid_argument);
        grid.n_theta = 8;
        grid.box.r_min = -0.1;
        CHECK_THROWS_AS(validate(grid), std::invalid_argument);

        CHECK_THROWS_AS(validate(VortexRing{-1, 0, 1, 1, 8}), std::invalid_argument);
        CHECK_THROWS_AS(validate(VortexRing{1, 0, 1, 0, 8}), std::invalid_argument);
        CHECK_THROWS_AS(validate(VortexRing{1, NAN, 1, 1, 8}), std::invalid_argument);
        CHECK_NOTHROW(validate(VortexRing{0, 0, 1, 1, 8}));
        CHECK_THROWS_AS(make_profile("nope", {}), std::invalid_argument);
        CHECK_THROWS_AS(make_profile("gaussian_ring", {{"radious", 1}}), std::invalid_argument);
    }

    TEST_CASE("lp norms")
    {
        std::vector<VortexRing> rings{{1, 0, 2, 0.5, 8}, {1.2, 0.1, -2, 1.5, 8}};
        const ParticleCloud cloud(rings, Alpha(0.1));
        CHECK(lp_norm(cloud, 1) == doctest::Approx(4.0));
        CHECK(lp_norm(cloud, 2) == doctest::Approx(std::sqrt(8.0)));
        CHECK(lp_norm(cloud, 3) == doctest::Approx(std::cbrt(16.0)));
        CHECK(lp_norm(cloud, INFINITY) == 2);
        CHECK_THROWS_AS(lp_norm(cloud, 0.5), std::domain_error);
        CHECK_THROWS_AS(lp_norm(cloud, NAN), std::domain_error);
    }

    TEST_CASE("sample points")
    {
        const VortexRing ring{2.0, 0.3, 1, 1, 8};
        const auto pts = sample_points(ring);
        REQUIRE(pts.size() == 8);
        Vec3 c;
        for (const auto& p : pts)
        {
            CHECK(radial(p) == doctest::Approx(2.0));
            CHECK(p.z == 0.3);
            c += p;
        }
        CHECK(std::abs(c.x) < 1e-14);
        CHECK(std::abs(c.y) < 1e-14);
        CHECK(pts[0].x == 2.0);
        CHECK(pts[0].y == 0.0);

        const auto axis = sample_points(VortexRing{0, 1, 1, 1, 4});
        for (const auto& p : axis)
            CHECK(p == Vec3{0, 0, 1});
    }

    TEST_CASE("moved keeps transported fields")
    {
        const auto cloud = test::random_cloud(10, 0.1, 8, 3);
        auto pos = cloud.positions();
        for (auto& p : pos)
            p.z += 1;
        const auto next = cloud.moved(pos, 0.5);
        CHECK(next.time() == 0.5);
        for (std::size_t j = 0; j < cloud.size(); ++j)
        {
            CHECK(next.rings()[j].g == cloud.rings()[j].g);
            CHECK(next.rings()[j].vol == cloud.rings()[j].vol);
            CHECK(next.rings()[j].z == pos[j].z);
        }
        pos[3].r = -1;
        CHECK_THROWS_AS((void)cloud.moved(pos, 1), std::invalid_argument);
        pos.pop_back();
        CHECK_THROWS_AS((void)cloud.moved(pos, 1), std::invalid_argument);
    }

    TEST_CASE("measure data")
    {
        const Box box{0.5, 1.5, -0.5, 0.5};
        const MeasureData d({{1, 0, 2}, {1.2, 0.1, -0.5}}, box);
        CHECK(d.total_variation() == 2.5);
        CHECK(d.signed_mass() == 1.5);
        CHECK_THROWS_AS(MeasureData({{2, 0, 1}}, box), std::invalid_argument);
        CHECK_THROWS_AS(MeasureData({{1, 0, NAN}}, box), std::invalid_argument);
    }
}
