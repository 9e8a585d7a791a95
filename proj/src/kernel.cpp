// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include "alpharing/kernel.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

namespace alpharing
{
Alpha::Alpha(double value) : value_(value)
{
    if (!(value > 0) || !std::isfinite(value))
        throw std::invalid_argument("alpha > 0 required (got "
                                    + std::to_string(value) + ")");
}

namespace kernel
{
namespace detail
{
void throw_negative_argument(const char* fn, double z)
{
    throw std::domain_error(std::string(fn) + ": argument must be >= 0 (got "
                            + std::to_string(z) + ")");
}
} // namespace detail

namespace
{
constexpr double kScanMin = 1e-6;
constexpr double kScanMax = 1e3;
constexpr int kScanDecades = 9;

struct GridMax
{
    double value = 0;
    double at = 0;
    int index = -1; // -1: attained at an endpoint limit or tail
};

struct ScanResult
{
    GridMax f, zf, fp;
    std::vector<double> grid;
};

ScanResult scan_grid(int points_per_decade)
{
    const int n = points_per_decade * kScanDecades;
    ScanResult res;
    res.grid.resize(n + 1);
    for (int i = 0; i <= n; ++i)
        res.grid[i] = kScanMin
                      * std::pow(10.0, kScanDecades * double(i) / double(n));

    // z -> 0 limits
    res.f = {std::abs(f_series(0)), 0, -1};
    res.zf = {0, 0, -1};
    res.fp = {std::abs(f_prime_series(0)), 0, -1};

    auto update = [](GridMax& m, double v, double z, int i) {
        if (v > m.value)
            m = {v, z, i};
    };
    for (int i = 0; i <= n; ++i)
    {
        const double z = res.grid[i];
        const double fz = f(z);
        update(res.f, std::abs(fz), z, i);
        update(res.zf, std::abs(z * fz), z, i);
        update(res.fp, std::abs(f_prime(z)), z, i);
    }

    // Tails beyond the grid: |f| <= 1/(4 pi z^2), |z f| <= 1/(4 pi z),
    // |f'| <= 1/(2 pi z^3); all decreasing, so the bound at kScanMax covers.
    const double z = kScanMax;
    update(res.f, kInvFourPi / (z * z), z, -1);
    update(res.zf, kInvFourPi / z, z, -1);
    update(res.fp, 2 * kInvFourPi / (z * z * z), z, -1);
    return res;
}

GridMax polish(const GridMax& m,
               const std::vector<double>& grid,
               const std::function<double(double)>& g)
{
    if (m.index <= 0 || m.index + 1 >= int(grid.size()))
        return m;
    const auto neg = [&](double z) { return -g(z); };
    const auto [zmax, negval] = boost::math::tools::brent_find_minima(
        neg, grid[m.index - 1], grid[m.index + 1],
        std::numeric_limits<double>::digits / 2 + 4);
    if (-negval > m.value)
        return {-negval, zmax, m.index};
    return m;
}

double rel_change(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}
} // namespace

KernelConstants bound_scan(int points_per_decade)
{
    if (points_per_decade < 10)
        throw std::invalid_argument("bound_scan: need >= 10 points per decade");

    const ScanResult coarse = scan_grid(points_per_decade);
    const ScanResult fine = scan_grid(2 * points_per_decade);

    KernelConstants c;
    c.refinement_delta = std::max({rel_change(coarse.f.value, fine.f.value),
                                   rel_change(coarse.zf.value, fine.zf.value),
                                   rel_change(coarse.fp.value, fine.fp.value)});
    if (c.refinement_delta > 1e-6)
        throw std::runtime_error(
            "bound_scan: constants not converged under 2x grid refinement "
            "(relative change "
            + std::to_string(c.refinement_delta) + ")");

    const auto m0 = polish(fine.f, fine.grid,
                           [](double z) { return std::abs(f(z)); });
    const auto m1 = polish(fine.zf, fine.grid,
                           [](double z) { return std::abs(z * f(z)); });
    const auto mf1 = polish(fine.fp, fine.grid,
                            [](double z) { return std::abs(f_prime(z)); });
    c.m0 = m0.value;
    c.argmax_m0 = m0.at;
    c.m1 = m1.value;
    c.argmax_m1 = m1.at;
    c.mf1 = mf1.value;
    c.argmax_mf1 = mf1.at;
    return c;
}

} // namespace kernel
} // namespace alpharing
