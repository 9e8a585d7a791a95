// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file kernel.hpp
//! Scalar special functions of the smoothed (Euler-alpha) Biot-Savart law.
//!
//! The filtered velocity is recovered from the unfiltered vorticity q by
//!
//!   u(x) = int f_alpha(|x-y|) (x-y)/|x-y| x q(y) dy,
//!   f_alpha(s) = f(s/alpha) / alpha^2,
//!   f(z) = ((1+z) e^{-z} - 1) / (4 pi z^2),
//!
//! where f_alpha is the radial derivative of the Green function
//! G_alpha(s) = (1 - e^{-s/alpha}) / (4 pi s) of (1 - alpha^2 Lap) Lap.
//! f is bounded at the origin (f(0+) = -1/(8 pi)) and decays like the
//! Newtonian kernel -1/(4 pi z^2).
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alpharing
{
//---------------------------------------------------------------------------//
//! Regularization length; strictly positive and finite.
class Alpha
{
  public:
    explicit Alpha(double value);

    constexpr double value() const noexcept { return value_; }

    friend constexpr bool operator==(Alpha, Alpha) = default;

  private:
    double value_;
};

namespace kernel
{
inline constexpr double kInvFourPi = 0.25 * std::numbers::inv_pi;

//! Below this z, f is evaluated from its Taylor polynomial.
inline constexpr double kSeriesSwitch = 1e-2;
//! f' loses three digits per decade near zero, so it switches later.
inline constexpr double kPrimeSeriesSwitch = 0.5;
//! Above this z, (1+z)e^{-z} is below half an ulp of 1 and drops out exactly.
inline constexpr double kFarSwitch = 50.0;

namespace detail
{
constexpr double factorial(int n)
{
    double r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

//! 4 pi f(z) = sum_n a_n z^n, a_n = (-1)^{n+1} (n+1) / (n+2)!
template<int N>
constexpr std::array<double, N + 1> f_coefficients()
{
    std::array<double, N + 1> a{};
    for (int n = 0; n <= N; ++n)
        a[n] = (n % 2 == 0 ? -1.0 : 1.0) * (n + 1) / factorial(n + 2);
    return a;
}

//! 4 pi f'(z) = sum_m b_m z^m, b_m = (m+1) a_{m+1}
template<int N>
constexpr std::array<double, N + 1> f_prime_coefficients()
{
    auto a = f_coefficients<N + 1>();
    std::array<double, N + 1> b{};
    for (int m = 0; m <= N; ++m)
        b[m] = (m + 1) * a[m + 1];
    return b;
}

inline constexpr auto kFSeries = f_coefficients<8>();
inline constexpr auto kFPrimeSeries = f_prime_coefficients<16>();

template<std::size_t N>
constexpr double horner(const std::array<double, N>& c, double z) noexcept
{
    double r = c[N - 1];
    for (std::size_t i = N - 1; i-- > 0;)
        r = r * z + c[i];
    return r;
}

[[noreturn]] void throw_negative_argument(const char* fn, double z);
} // namespace detail

//---------------------------------------------------------------------------//
//! Degree-8 Taylor polynomial of f; accurate to ~1e-17 for z <= 1e-2.
constexpr double f_series(double z) noexcept
{
    return detail::horner(detail::kFSeries, z) * kInvFourPi;
}

//! Closed form of f for z > 0, with the small-z cancellation removed.
inline double f_closed(double z) noexcept
{
    double num;
    if (z < 1.0)
        num = (1.0 + z) * std::expm1(-z) + z;
    else if (z < kFarSwitch)
        num = (1.0 + z) * std::exp(-z) - 1.0;
    else
        num = -1.0;
    return num * kInvFourPi / (z * z);
}

//! f(z) = ((1+z)e^{-z} - 1)/(4 pi z^2), z >= 0.
inline double f(double z)
{
    if (!(z >= 0))
        detail::throw_negative_argument("f", z);
    return z < kSeriesSwitch ? f_series(z) : f_closed(z);
}

//! Degree-16 Taylor polynomial of f'.
constexpr double f_prime_series(double z) noexcept
{
    return detail::horner(detail::kFPrimeSeries, z) * kInvFourPi;
}

inline double f_prime_closed(double z) noexcept
{
    double num = z < kFarSwitch ? 2.0 - (2.0 + z * (2.0 + z)) * std::exp(-z)
                                : 2.0;
    return num * kInvFourPi / (z * z * z);
}

//! f'(z) = (2 - (2 + 2z + z^2)e^{-z})/(4 pi z^3), z >= 0.
inline double f_prime(double z)
{
    if (!(z >= 0))
        detail::throw_negative_argument("f_prime", z);
    return z < kPrimeSeriesSwitch ? f_prime_series(z) : f_prime_closed(z);
}

//! f_alpha(s) = f(s/alpha)/alpha^2.
inline double f_alpha(double s, Alpha alpha)
{
    const double a = alpha.value();
    return f(s / a) / (a * a);
}

//! d f_alpha / ds = f'(s/alpha)/alpha^3.
inline double f_alpha_prime(double s, Alpha alpha)
{
    const double a = alpha.value();
    return f_prime(s / a) / (a * a * a);
}

//! G_alpha(s) = (1 - e^{-s/alpha})/(4 pi s); G_alpha(0) = 1/(4 pi alpha).
inline double green_alpha(double s, Alpha alpha)
{
    if (!(s >= 0))
        detail::throw_negative_argument("green_alpha", s);
    const double a = alpha.value();
    const double z = s / a;
    if (z < 1e-8)
        return (1.0 - 0.5 * z) * kInvFourPi / a;
    return -std::expm1(-z) * kInvFourPi / s;
}

//---------------------------------------------------------------------------//
//! Suprema of the dimensionless kernel over z > 0.
struct KernelConstants
{
    double m0 = 0;  //!< sup |f|
    double m1 = 0;  //!< sup |z f|
    double mf1 = 0; //!< sup |f'|
    double argmax_m0 = 0;
    double argmax_m1 = 0;
    double argmax_mf1 = 0;
    //! Largest relative change of a grid supremum under 2x refinement.
    double refinement_delta = 0;
};

/*!
 * Compute the kernel bound constants by scanning a logarithmic grid on
 * (0, 1e3], joined with the z -> 0 limits and the analytic tail bounds,
 * then polishing each interior maximum with Brent's method.
 *
 * Throws std::runtime_error if doubling the grid density moves any grid
 * supremum by more than 1e-6 relative.
 */
KernelConstants bound_scan(int points_per_decade = 2000);

} // namespace kernel
} // namespace alpharing
