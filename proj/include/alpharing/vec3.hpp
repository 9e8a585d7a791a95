// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file vec3.hpp
//! Small fixed-size vector and tensor types used throughout the solver.
#pragma once

#include <array>
#include <cmath>

namespace alpharing
{
//---------------------------------------------------------------------------//
struct Vec3
{
    double x = 0;
    double y = 0;
    double z = 0;

    constexpr double operator[](int i) const noexcept
    {
        return i == 0 ? x : (i == 1 ? y : z);
    }
    constexpr double& operator[](int i) noexcept
    {
        return i == 0 ? x : (i == 1 ? y : z);
    }

    constexpr Vec3& operator+=(const Vec3& o) noexcept
    {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3& operator-=(const Vec3& o) noexcept
    {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3& operator*=(double s) noexcept
    {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) noexcept { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) noexcept { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) noexcept { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) noexcept { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) noexcept { return a *= s; }

constexpr double dot(const Vec3& a, const Vec3& b) noexcept
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) noexcept
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) noexcept { return std::sqrt(dot(a, a)); }

//! Cylindrical radius sqrt(x^2 + y^2).
inline double radial(const Vec3& a) noexcept { return std::hypot(a.x, a.y); }

//---------------------------------------------------------------------------//
//! Row-major 3x3 matrix; for velocity gradients m[i][k] = d u_i / d x_k.
using Mat3 = std::array<std::array<double, 3>, 3>;

//! t[i][j][k] = d^2 u_i / (d x_j d x_k).
using Tensor3 = std::array<Mat3, 3>;

constexpr double trace(const Mat3& m) noexcept
{
    return m[0][0] + m[1][1] + m[2][2];
}

inline double frobenius(const Mat3& m) noexcept
{
    double s = 0;
    for (const auto& row : m)
        for (double v : row)
            s += v * v;
    return std::sqrt(s);
}

//! Largest singular value (spectral norm) of a 3x3 matrix.
double operator_norm(const Mat3& m) noexcept;

//! Meridional (r, z) pair: a ring centre or its velocity (u_r, u_z).
struct Meridional
{
    double r = 0;
    double z = 0;

    friend constexpr bool operator==(const Meridional&, const Meridional&) = default;
};

} // namespace alpharing
