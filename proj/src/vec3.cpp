// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include "alpharing/vec3.hpp"

#include <algorithm>

namespace alpharing
{
double operator_norm(const Mat3& m) noexcept
{
    // Largest eigenvalue of the symmetric PSD matrix A = m^T m, closed form.
    double a[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
        {
            double s = 0;
            for (int k = 0; k < 3; ++k)
                s += m[k][i] * m[k][j];
            a[i][j] = s;
        }

    const double p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    const double q = (a[0][0] + a[1][1] + a[2][2]) / 3;
    if (p1 == 0)
        return std::sqrt(std::max({a[0][0], a[1][1], a[2][2], 0.0}));

    const double p2 = (a[0][0] - q) * (a[0][0] - q) + (a[1][1] - q) * (a[1][1] - q)
                      + (a[2][2] - q) * (a[2][2] - q) + 2 * p1;
    const double p = std::sqrt(p2 / 6);
    double b[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            b[i][j] = (a[i][j] - (i == j ? q : 0.0)) / p;
    const double detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
                        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
                        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    const double r = std::clamp(detb / 2, -1.0, 1.0);
    const double phi = std::acos(r) / 3;
    const double lmax = q + 2 * p * std::cos(phi);
    return std::sqrt(std::max(lmax, 0.0));
}
} // namespace alpharing
